//! Thompson's group `F` as reduced pairs of rooted planar binary trees.
//!
//! A pair `(plus, minus)` of trees with the same number of leaves determines
//! the piecewise-linear homeomorphism of `[0,1]` mapping the standard dyadic
//! partition of the `plus` tree (the domain) linearly onto the partition of
//! the `minus` tree (the range).  Products are taken in diagram order:
//! `multiply(a, b)` is the element "first `a`, then `b`", so that
//! `apply(multiply(a, b), t) = apply(b, apply(a, t))`.  With this convention
//! the two defining relations `x2 x1 = x1 x3` and `x3 x1 = x1 x4` hold for
//! the generator pairs below, and `g(A, C) * g(C, B) = g(A, B)` whenever the
//! middle trees agree.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use rand_core::RngCore;

/// A rooted planar binary tree: a leaf, or a caret joining two subtrees.
/// The planar order matters; left and right children are not interchangeable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Tree {
    Leaf,
    Caret(Box<Tree>, Box<Tree>),
}

/// Convenience constructor for a caret.
pub fn caret(left: Tree, right: Tree) -> Tree {
    Tree::Caret(Box::new(left), Box::new(right))
}

impl Tree {
    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Caret(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn caret_count(&self) -> usize {
        self.leaf_count() - 1
    }

    /// Smallest common refinement of two trees (union of their dyadic
    /// partitions).
    pub fn union(a: &Tree, b: &Tree) -> Tree {
        match (a, b) {
            (Tree::Leaf, _) => b.clone(),
            (_, Tree::Leaf) => a.clone(),
            (Tree::Caret(al, ar), Tree::Caret(bl, br)) => {
                caret(Tree::union(al, bl), Tree::union(ar, br))
            }
        }
    }

    /// For `fine` a refinement of `self`, the subtree of `fine` hanging at
    /// each leaf of `self`, in leaf order.
    fn leaf_deltas(&self, fine: &Tree) -> Vec<Tree> {
        let mut out = Vec::with_capacity(self.leaf_count());
        fn rec(coarse: &Tree, fine: &Tree, out: &mut Vec<Tree>) {
            match (coarse, fine) {
                (Tree::Leaf, f) => out.push(f.clone()),
                (Tree::Caret(cl, cr), Tree::Caret(fl, fr)) => {
                    rec(cl, fl, out);
                    rec(cr, fr, out);
                }
                (Tree::Caret(..), Tree::Leaf) => {
                    unreachable!("leaf_deltas called with a non-refinement")
                }
            }
        }
        rec(self, fine, &mut out);
        out
    }

    /// Replaces leaf `i` by `subs[i]` for every leaf simultaneously.
    fn replace_leaves(&self, subs: &[Tree]) -> Tree {
        fn rec(t: &Tree, subs: &[Tree], next: &mut usize) -> Tree {
            match t {
                Tree::Leaf => {
                    let s = subs[*next].clone();
                    *next += 1;
                    s
                }
                Tree::Caret(l, r) => {
                    let nl = rec(l, subs, next);
                    let nr = rec(r, subs, next);
                    caret(nl, nr)
                }
            }
        }
        let mut next = 0;
        let out = rec(self, subs, &mut next);
        debug_assert_eq!(next, subs.len());
        out
    }

    /// Replaces leaf `i` by a caret.
    pub fn graft_at(&self, i: usize) -> Tree {
        let n = self.leaf_count();
        assert!(i < n, "leaf index out of range");
        let mut subs = vec![Tree::Leaf; n];
        subs[i] = caret(Tree::Leaf, Tree::Leaf);
        self.replace_leaves(&subs)
    }

    /// Leaf indices `i` such that leaves `i` and `i+1` are the two children
    /// of a single caret.
    pub fn sibling_leaf_pairs(&self) -> Vec<usize> {
        let mut out = Vec::new();
        fn rec(t: &Tree, off: usize, out: &mut Vec<usize>) -> usize {
            match t {
                Tree::Leaf => 1,
                Tree::Caret(l, r) => {
                    if matches!(**l, Tree::Leaf) && matches!(**r, Tree::Leaf) {
                        out.push(off);
                        2
                    } else {
                        let nl = rec(l, off, out);
                        nl + rec(r, off + nl, out)
                    }
                }
            }
        }
        rec(self, 0, &mut out);
        out
    }

    /// Collapses the caret whose children are leaves `i` and `i+1` back to a
    /// single leaf.
    fn contract_pair_at(&self, i: usize) -> Tree {
        fn rec(t: &Tree, off: usize, i: usize) -> Tree {
            match t {
                Tree::Leaf => Tree::Leaf,
                Tree::Caret(l, r) => {
                    if off == i && matches!(**l, Tree::Leaf) && matches!(**r, Tree::Leaf) {
                        return Tree::Leaf;
                    }
                    let nl = l.leaf_count();
                    // descend into whichever subtree holds both leaves i, i+1
                    if i + 1 <= off + nl - 1 {
                        caret(rec(l, off, i), (**r).clone())
                    } else {
                        caret((**l).clone(), rec(r, off + nl, i))
                    }
                }
            }
        }
        rec(self, 0, i)
    }

    /// Endpoints of the dyadic partition carried by the leaves, as `n + 1`
    /// increasing dyadics from 0 to 1.
    pub fn breakpoints(&self) -> Vec<Dyadic> {
        let mut out = vec![Dyadic::zero()];
        fn rec(t: &Tree, lo: Dyadic, hi: Dyadic, out: &mut Vec<Dyadic>) {
            match t {
                Tree::Leaf => out.push(hi),
                Tree::Caret(l, r) => {
                    let mid = Dyadic::midpoint(lo, hi);
                    rec(l, lo, mid, out);
                    rec(r, mid, hi, out);
                }
            }
        }
        rec(self, Dyadic::zero(), Dyadic::one(), &mut out);
        out
    }

    /// All trees with exactly `n` leaves, in a fixed deterministic order.
    pub fn enumerate(n: usize) -> Vec<Tree> {
        assert!(n >= 1);
        if n == 1 {
            return vec![Tree::Leaf];
        }
        let mut out = Vec::new();
        for k in 1..n {
            for l in Tree::enumerate(k) {
                for r in Tree::enumerate(n - k) {
                    out.push(caret(l.clone(), r));
                }
            }
        }
        out
    }

    /// Uniform random tree with `n` leaves (Remy-style grafting).
    pub fn random<R: RngCore + ?Sized>(rng: &mut R, n: usize) -> Tree {
        assert!(n >= 1);
        let mut t = Tree::Leaf;
        for k in 1..n {
            let nodes = 2 * k - 1;
            let j = (rng.next_u64() % nodes as u64) as usize;
            let new_on_left = rng.next_u64() & 1 == 0;
            t = graft_nth_node(&t, j, new_on_left).0;
        }
        t
    }

    /// Parses the `l` / `(L R)` text form.
    pub fn parse(text: &str) -> Result<Tree, ParseError> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let t = parse_tree_at(bytes, &mut pos)?;
        skip_ws(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(ParseError::new(pos, "trailing input after tree"));
        }
        Ok(t)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "l"),
            Tree::Caret(l, r) => write!(f, "({} {})", l, r),
        }
    }
}

fn parse_tree_at(bytes: &[u8], pos: &mut usize) -> Result<Tree, ParseError> {
    skip_ws(bytes, pos);
    match bytes.get(*pos) {
        Some(b'l') => {
            *pos += 1;
            Ok(Tree::Leaf)
        }
        Some(b'(') => {
            *pos += 1;
            let l = parse_tree_at(bytes, pos)?;
            let r = parse_tree_at(bytes, pos)?;
            skip_ws(bytes, pos);
            if bytes.get(*pos) != Some(&b')') {
                return Err(ParseError::new(*pos, "expected ')'"));
            }
            *pos += 1;
            Ok(caret(l, r))
        }
        _ => Err(ParseError::new(*pos, "expected 'l' or '('")),
    }
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while bytes.get(*pos).is_some_and(|b| b.is_ascii_whitespace()) {
        *pos += 1;
    }
}

/// Replaces the `j`-th node in preorder by a caret holding the old subtree
/// and a fresh leaf.  Returns `(new_tree, nodes_consumed)`.
fn graft_nth_node(t: &Tree, j: usize, new_on_left: bool) -> (Tree, usize) {
    fn rec(t: &Tree, j: &mut isize, new_on_left: bool) -> Option<Tree> {
        if *j == 0 {
            *j -= 1;
            return Some(if new_on_left {
                caret(Tree::Leaf, t.clone())
            } else {
                caret(t.clone(), Tree::Leaf)
            });
        }
        *j -= 1;
        match t {
            Tree::Leaf => None,
            Tree::Caret(l, r) => {
                if let Some(nl) = rec(l, j, new_on_left) {
                    return Some(caret(nl, (**r).clone()));
                }
                if *j < 0 {
                    return None;
                }
                rec(r, j, new_on_left).map(|nr| caret((**l).clone(), nr))
            }
        }
    }
    let mut jj = j as isize;
    let out = rec(t, &mut jj, new_on_left).expect("node index in range");
    (out, j)
}

/// A matched pair of trees representing an element of `F`.  `plus` carries
/// the domain partition, `minus` the range partition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TreePair {
    pub plus: Tree,
    pub minus: Tree,
}

impl TreePair {
    pub fn new(plus: Tree, minus: Tree) -> TreePair {
        assert_eq!(
            plus.leaf_count(),
            minus.leaf_count(),
            "tree pair must be matched"
        );
        TreePair { plus, minus }
    }

    pub fn identity() -> TreePair {
        TreePair::new(Tree::Leaf, Tree::Leaf)
    }

    pub fn leaves(&self) -> usize {
        self.plus.leaf_count()
    }

    pub fn is_identity(&self) -> bool {
        self.plus == self.minus
    }

    pub fn is_reduced(&self) -> bool {
        common_sibling(&self.plus, &self.minus).is_none()
    }

    /// Uniform random reduced pair obtained from two independent uniform
    /// trees with `n` leaves.
    pub fn random<R: RngCore + ?Sized>(rng: &mut R, n: usize) -> TreePair {
        reduce(&TreePair::new(Tree::random(rng, n), Tree::random(rng, n)))
    }
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.plus, self.minus)
    }
}

fn common_sibling(a: &Tree, b: &Tree) -> Option<usize> {
    let sa = a.sibling_leaf_pairs();
    let sb = b.sibling_leaf_pairs();
    let mut j = 0;
    for i in sa {
        while j < sb.len() && sb[j] < i {
            j += 1;
        }
        if j < sb.len() && sb[j] == i {
            return Some(i);
        }
    }
    None
}

/// Cancels opposing caret pairs (leftmost first) until none remain.  The
/// reduced form is unique, so the cancellation order does not matter.
pub fn reduce(p: &TreePair) -> TreePair {
    let mut plus = p.plus.clone();
    let mut minus = p.minus.clone();
    while let Some(i) = common_sibling(&plus, &minus) {
        plus = plus.contract_pair_at(i);
        minus = minus.contract_pair_at(i);
    }
    TreePair { plus, minus }
}

/// Replaces leaf `i` by a caret in both trees.  The result is unreduced and
/// represents the same group element.
pub fn pad_with_caret(p: &TreePair, i: usize) -> TreePair {
    assert!(i < p.leaves(), "leaf index out of range");
    TreePair {
        plus: p.plus.graft_at(i),
        minus: p.minus.graft_at(i),
    }
}

/// `(p.minus, p.plus)`: the inverse element.
pub fn invert(p: &TreePair) -> TreePair {
    TreePair {
        plus: p.minus.clone(),
        minus: p.plus.clone(),
    }
}

/// Product in diagram order: apply `a` first, then `b`.  Computed on the
/// common refinement of `a.minus` and `b.plus`; the result is reduced.
pub fn multiply(a: &TreePair, b: &TreePair) -> TreePair {
    let mid = Tree::union(&a.minus, &b.plus);
    let plus = a.plus.replace_leaves(&a.minus.leaf_deltas(&mid));
    let minus = b.minus.replace_leaves(&b.plus.leaf_deltas(&mid));
    reduce(&TreePair { plus, minus })
}

/// The reduced tree pair of the generator `x_k`.  For `k >= 2` it is
/// obtained by expanding `x_k = x0^{1-k} x1 x0^{k-1}`.
pub fn generator_pair(k: u32) -> TreePair {
    let l = || Tree::Leaf;
    match k {
        0 => TreePair::new(caret(caret(l(), l()), l()), caret(l(), caret(l(), l()))),
        1 => TreePair::new(
            caret(l(), caret(caret(l(), l()), l())),
            caret(l(), caret(l(), caret(l(), l()))),
        ),
        k => {
            let mut w: Word = Vec::new();
            w.push((0, 1 - k as i32));
            w.push((1, 1));
            w.push((0, k as i32 - 1));
            word_to_pair(&w)
        }
    }
}

/// A word in the generators: `(index, exponent)` tokens, exponent nonzero.
pub type Word = Vec<(u32, i32)>;

/// Left-to-right product of the generator pairs of a word.
pub fn word_to_pair(word: &Word) -> TreePair {
    let mut acc = TreePair::identity();
    for &(k, e) in word {
        let g = generator_pair(k);
        let step = if e < 0 { invert(&g) } else { g };
        for _ in 0..e.unsigned_abs() {
            acc = multiply(&acc, &step);
        }
    }
    acc
}

/// Rewrites every element of a list over one common range tree: returns the
/// domain trees `T^1_+, ..., T^r_+` and the shared tree `T_-`, the smallest
/// common refinement of all range trees.  Then `g_i g_j^{-1}` is the pair
/// `(T^i_+, T^j_+)`.
pub fn common_form(elements: &[TreePair]) -> (Vec<Tree>, Tree) {
    assert!(!elements.is_empty(), "common_form needs at least one element");
    let mut bottom = elements[0].minus.clone();
    for p in &elements[1..] {
        bottom = Tree::union(&bottom, &p.minus);
    }
    let tops = elements
        .iter()
        .map(|p| p.plus.replace_leaves(&p.minus.leaf_deltas(&bottom)))
        .collect();
    (tops, bottom)
}

/// All reduced pairs with exactly `n` leaves, in lexicographic order.
pub fn enumerate_reduced_pairs(n: usize, cap: usize) -> Result<Vec<TreePair>, CapExceeded> {
    if n > cap {
        return Err(CapExceeded { requested: n, cap });
    }
    let trees = Tree::enumerate(n);
    let mut out = Vec::new();
    for plus in &trees {
        for minus in &trees {
            let p = TreePair {
                plus: plus.clone(),
                minus: minus.clone(),
            };
            if p.is_reduced() {
                out.push(p);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CapExceeded {
    pub requested: usize,
    pub cap: usize,
}

impl fmt::Display for CapExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "size {} exceeds cap {}", self.requested, self.cap)
    }
}

/// A dyadic rational in `[0, 1]`, kept canonical: the numerator is odd, or
/// the value is 0 or 1 with exponent 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Dyadic {
    num: u64,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: u64, exp: u32) -> Dyadic {
        let mut d = Dyadic { num, exp };
        d.canonicalize();
        assert!(d.num <= 1u64 << d.exp.min(63) || d.exp == 0 && d.num <= 1);
        d
    }

    pub fn zero() -> Dyadic {
        Dyadic { num: 0, exp: 0 }
    }

    pub fn one() -> Dyadic {
        Dyadic { num: 1, exp: 0 }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    fn canonicalize(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && self.num % 2 == 0 {
            self.num /= 2;
            self.exp -= 1;
        }
    }

    fn scaled(&self, exp: u32) -> u128 {
        debug_assert!(exp >= self.exp);
        (self.num as u128) << (exp - self.exp)
    }

    pub fn midpoint(a: Dyadic, b: Dyadic) -> Dyadic {
        let e = a.exp.max(b.exp);
        let sum = a.scaled(e) + b.scaled(e);
        Dyadic::new(sum as u64, e + 1)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / (1u64 << self.exp.min(62)) as f64
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        let e = self.exp.max(other.exp);
        self.scaled(e).cmp(&other.scaled(e))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

/// Evaluates the homeomorphism of a pair at a dyadic point: the interval of
/// the `plus` partition containing `t` is mapped linearly onto the matching
/// interval of the `minus` partition.
pub fn apply(p: &TreePair, t: Dyadic) -> Dyadic {
    assert!(t <= Dyadic::one(), "argument outside [0,1]");
    let dom = p.plus.breakpoints();
    let ran = p.minus.breakpoints();
    let i = (0..dom.len() - 1)
        .find(|&i| dom[i] <= t && t <= dom[i + 1])
        .expect("point lies in some interval");
    // interval lengths are 1/2^a and 1/2^b
    let a = interval_exp(dom[i], dom[i + 1]);
    let b = interval_exp(ran[i], ran[i + 1]);
    // result = ran[i] + (t - dom[i]) * 2^(a-b)
    let e = t.exp.max(dom[i].exp);
    let diff_num = t.scaled(e) - dom[i].scaled(e);
    let (num, exp) = if a >= b {
        // scale up by 2^(a-b): subtract from the exponent
        let shift = a - b;
        if shift >= e {
            (diff_num << (shift - e), 0)
        } else {
            (diff_num, e - shift)
        }
    } else {
        (diff_num, e + (b - a))
    };
    let ee = exp.max(ran[i].exp);
    let total = (num << (ee - exp)) + ran[i].scaled(ee);
    Dyadic::new(total as u64, ee)
}

/// For consecutive breakpoints `lo < hi` with `hi - lo = 1/2^a`, returns `a`.
fn interval_exp(lo: Dyadic, hi: Dyadic) -> u32 {
    let e = lo.exp.max(hi.exp);
    let len = hi.scaled(e) - lo.scaled(e);
    debug_assert!(len.is_power_of_two());
    e - len.trailing_zeros()
}

/// Error from [`parse_word`] and [`Tree::parse`], with a byte offset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: &str) -> ParseError {
        ParseError {
            offset,
            message: String::from(message),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.offset, self.message)
    }
}

/// Parses a word over the generators.
///
/// Grammar: `word := WS* (term WS*)*`, `term := 'x' index exp?`,
/// `index := DIGITS | '_' DIGITS`, `exp := '^' '-'? DIGITS`.  No
/// simplification is performed; an exponent of 0 is rejected.
pub fn parse_word(text: &str) -> Result<Word, ParseError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut word = Word::new();
    skip_ws(bytes, &mut pos);
    while pos < bytes.len() {
        if bytes[pos] != b'x' {
            return Err(ParseError::new(pos, "expected generator 'x'"));
        }
        pos += 1;
        if bytes.get(pos) == Some(&b'_') {
            pos += 1;
        }
        let index = parse_digits(bytes, &mut pos, "generator index")?;
        let mut exponent: i32 = 1;
        if bytes.get(pos) == Some(&b'^') {
            pos += 1;
            let mut sign = 1i64;
            if bytes.get(pos) == Some(&b'-') {
                pos += 1;
                sign = -1;
            }
            let mag = parse_digits(bytes, &mut pos, "exponent")?;
            let value = sign * mag as i64;
            if value == 0 {
                return Err(ParseError::new(pos, "exponent must be nonzero"));
            }
            exponent = i32::try_from(value)
                .map_err(|_| ParseError::new(pos, "exponent out of range"))?;
        }
        word.push((index, exponent));
        skip_ws(bytes, &mut pos);
    }
    Ok(word)
}

fn parse_digits(bytes: &[u8], pos: &mut usize, what: &str) -> Result<u32, ParseError> {
    let start = *pos;
    while bytes.get(*pos).is_some_and(|b| b.is_ascii_digit()) {
        *pos += 1;
    }
    if *pos == start {
        let mut msg = String::from("expected ");
        msg.push_str(what);
        return Err(ParseError {
            offset: start,
            message: msg,
        });
    }
    core::str::from_utf8(&bytes[start..*pos])
        .unwrap()
        .parse::<u32>()
        .map_err(|_| ParseError::new(start, "number out of range"))
}
