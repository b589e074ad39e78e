//! The four invariants and their normalized functions on the group.
//!
//! Exact objects: proper-colouring counts by deletion-contraction, the Tutte
//! polynomial, the Kauffman bracket as an integer Laurent polynomial, and
//! Fox colouring counts via an integer Smith form.  Each normalized function
//! evaluates a representative pair exactly as given (no reduction), so the
//! caret well-definedness lemmas are exercised rather than assumed.
//!
//! For large common-form graphs the Gram machinery in [`crate::positivity`]
//! uses the spin-model contractions at the bottom of this module instead of
//! the exponential state sums; the two routes agree wherever both run, which
//! the test suites check.

use crate::diagram::{link_of_unreduced, LinkDiagram};
use crate::gamma::{gamma_graph, MultiGraph, Side, SignedPlaneGraph};
use crate::linalg::{nullspace_count_mod, UnionFind};
use crate::poly::{LaurentPoly, TuttePoly};
use crate::spin::{contract, Factor, WidthExceeded};
use crate::thompson::TreePair;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Float;

pub const BRACKET_CAP: usize = 26;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InvariantError {
    /// A state sum or enumeration would exceed its resource cap.
    CapExceeded { size: usize, cap: usize },
    /// Fox colourings need an odd modulus.
    EvenModulus(u32),
    /// Parameter outside the allowed domain (for example `Q < 2`).
    BadParameter,
    /// The loop value `-A^2 - A^{-2}` vanishes at this evaluation point.
    DegenerateLoopValue,
    /// Spin contraction ran out of width (graph too entangled).
    Width(WidthExceeded),
}

impl fmt::Display for InvariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantError::CapExceeded { size, cap } => {
                write!(f, "instance size {} exceeds cap {}", size, cap)
            }
            InvariantError::EvenModulus(q) => write!(f, "colouring modulus {} must be odd", q),
            InvariantError::BadParameter => write!(f, "parameter outside allowed domain"),
            InvariantError::DegenerateLoopValue => write!(f, "-A^2 - A^{{-2}} vanishes"),
            InvariantError::Width(w) => write!(f, "{}", w),
        }
    }
}

impl From<WidthExceeded> for InvariantError {
    fn from(w: WidthExceeded) -> Self {
        InvariantError::Width(w)
    }
}

// ---------------------------------------------------------------------------
// chromatic counts
// ---------------------------------------------------------------------------

/// Number of proper `q`-colourings, by deletion-contraction.  Parallel edges
/// collapse; a loop forces 0.
pub fn chromatic(g: &MultiGraph, q: u32) -> i128 {
    let mut edges: Vec<(usize, usize)> = g.edges.clone();
    edges.sort_unstable();
    edges.dedup();
    chromatic_rec(g.n, edges, q)
}

fn chromatic_rec(n: usize, edges: Vec<(usize, usize)>, q: u32) -> i128 {
    if edges.iter().any(|&(u, v)| u == v) {
        return 0;
    }
    let Some(&(u, v)) = edges.first() else {
        return (q as i128).pow(n as u32);
    };
    let deleted = edges[1..].to_vec();
    let mut contracted: Vec<(usize, usize)> = Vec::with_capacity(edges.len() - 1);
    for &(a, b) in &edges[1..] {
        let map = |w: usize| {
            let w = if w == v { u } else { w };
            if w > v {
                w - 1
            } else {
                w
            }
        };
        let (mut a, mut b) = (map(a), map(b));
        if a > b {
            core::mem::swap(&mut a, &mut b);
        }
        contracted.push((a, b));
    }
    contracted.sort_unstable();
    contracted.dedup();
    chromatic_rec(n, deleted, q) - chromatic_rec(n - 1, contracted, q)
}

/// The same count through the spin-model contraction; exact, and usable on
/// the large common-form graphs where deletion-contraction is not.
pub fn chromatic_spin(g: &MultiGraph, q: u32) -> Result<i128, InvariantError> {
    if g.edges.iter().any(|&(u, v)| u == v) {
        return Ok(0);
    }
    let mut edges = g.edges.clone();
    edges.sort_unstable();
    edges.dedup();
    let factors: Vec<Factor<i128>> = edges
        .iter()
        .map(|&(u, v)| Factor::on_edge(u, v, q, |s, t| i128::from(s != t)))
        .collect();
    Ok(contract(g.n, q, factors)?)
}

// ---------------------------------------------------------------------------
// Tutte polynomial
// ---------------------------------------------------------------------------

/// Tutte polynomial by deletion-contraction with memoization on a relabelled
/// edge-list key.  Bridges contribute a factor `x`, loops a factor `y`.
pub fn tutte(g: &MultiGraph) -> TuttePoly {
    let mut memo: BTreeMap<Vec<(usize, usize)>, TuttePoly> = BTreeMap::new();
    tutte_rec(g.n, g.edges.clone(), &mut memo)
}

fn tutte_rec(
    n: usize,
    mut edges: Vec<(usize, usize)>,
    memo: &mut BTreeMap<Vec<(usize, usize)>, TuttePoly>,
) -> TuttePoly {
    let mut loops = 0u32;
    edges.retain(|&(u, v)| {
        if u == v {
            loops += 1;
            false
        } else {
            true
        }
    });
    let mut y_factor = TuttePoly::one();
    for _ in 0..loops {
        y_factor = y_factor.mul(&TuttePoly::y());
    }
    if edges.is_empty() {
        return y_factor;
    }
    let key = canonical_key(n, &edges);
    if let Some(hit) = memo.get(&key) {
        return y_factor.mul(hit);
    }
    let bridges = bridge_flags(n, &edges);
    let value = if let Some(pos) = bridges.iter().position(|&b| !b) {
        let (u, v) = edges[pos];
        let mut deleted = edges.clone();
        deleted.remove(pos);
        let contracted = contract_edge(&edges, pos, u, v);
        tutte_rec(n, deleted, memo).add(&tutte_rec(n - 1, contracted, memo))
    } else {
        let mut p = TuttePoly::one();
        for _ in 0..edges.len() {
            p = p.mul(&TuttePoly::x());
        }
        p
    };
    memo.insert(key, value.clone());
    y_factor.mul(&value)
}

fn contract_edge(
    edges: &[(usize, usize)],
    skip: usize,
    u: usize,
    v: usize,
) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(edges.len() - 1);
    for (i, &(a, b)) in edges.iter().enumerate() {
        if i == skip {
            continue;
        }
        let map = |w: usize| {
            let w = if w == v { u } else { w };
            if w > v {
                w - 1
            } else {
                w
            }
        };
        let (mut a, mut b) = (map(a), map(b));
        if a > b {
            core::mem::swap(&mut a, &mut b);
        }
        out.push((a, b));
    }
    out
}

fn bridge_flags(n: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    (0..edges.len())
        .map(|skip| {
            let mut uf = UnionFind::new(n);
            for (i, &(u, v)) in edges.iter().enumerate() {
                if i != skip {
                    uf.union(u, v);
                }
            }
            uf.find(edges[skip].0) != uf.find(edges[skip].1)
        })
        .collect()
}

/// Relabels vertices by a degree-refined order.  Equal keys imply isomorphic
/// graphs, so the memo stays sound even when isomorphic inputs get distinct
/// keys.
fn canonical_key(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut deg = vec![0usize; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut rank: Vec<u64> = deg.iter().map(|&d| d as u64).collect();
    for _ in 0..2 {
        let mut sig: Vec<(u64, Vec<u64>, usize)> = (0..n)
            .map(|w| {
                let mut nb: Vec<u64> = edges
                    .iter()
                    .filter_map(|&(u, v)| {
                        if u == w {
                            Some(rank[v])
                        } else if v == w {
                            Some(rank[u])
                        } else {
                            None
                        }
                    })
                    .collect();
                nb.sort_unstable();
                (rank[w], nb, w)
            })
            .collect();
        sig.sort();
        let mut new_rank = vec![0u64; n];
        let mut r = 0u64;
        for i in 0..n {
            if i > 0 && (sig[i].0, &sig[i].1) != (sig[i - 1].0, &sig[i - 1].1) {
                r += 1;
            }
            new_rank[sig[i].2] = r;
        }
        rank = new_rank;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&w| (rank[w], w));
    let mut relabel = vec![0usize; n];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new;
    }
    let mut out: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (relabel[u], relabel[v]);
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    out.sort_unstable();
    out
}

/// Rank-nullity state sum `sum_S (x-1)^(c(S)-c(E)) (y-1)^(c(S)+|S|-|V|)`,
/// an independent route used to cross-check the recursion.
pub fn tutte_by_subsets(g: &MultiGraph) -> TuttePoly {
    let m = g.edges.len();
    assert!(m <= 24, "subset sum only for small graphs");
    let full_c = component_count_of(g.n, g.edges.iter().copied());
    let xm1 = TuttePoly::x().add(&TuttePoly::monomial(-1, 0, 0));
    let ym1 = TuttePoly::y().add(&TuttePoly::monomial(-1, 0, 0));
    let mut out = TuttePoly::zero();
    for mask in 0..(1u32 << m) {
        let sub = g
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        let c = component_count_of(g.n, sub);
        let size = mask.count_ones() as i64;
        let e1 = c as i64 - full_c as i64;
        let e2 = c as i64 + size - g.n as i64;
        debug_assert!(e1 >= 0 && e2 >= 0);
        let mut term = TuttePoly::one();
        for _ in 0..e1 {
            term = term.mul(&xm1);
        }
        for _ in 0..e2 {
            term = term.mul(&ym1);
        }
        out = out.add(&term);
    }
    out
}

fn component_count_of(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> usize {
    let mut uf = UnionFind::new(n);
    for (u, v) in edges {
        uf.union(u, v);
    }
    uf.component_count()
}

// ---------------------------------------------------------------------------
// Kauffman bracket
// ---------------------------------------------------------------------------

/// Full state sum over all `2^c` smoothings: each state contributes
/// `A^(#A - #B) * d^(loops - 1)` with `d = -A^2 - A^{-2}`, free loops
/// included in the loop count.
pub fn bracket(d: &LinkDiagram, cap: usize) -> Result<LaurentPoly, InvariantError> {
    let c = d.crossings.len();
    if c > cap {
        return Err(InvariantError::CapExceeded { size: c, cap });
    }
    let mut counts: BTreeMap<(i64, usize), i64> = BTreeMap::new();
    let mut uf = UnionFind::new(d.arc_count.max(1));
    for state in 0..(1u64 << c) {
        uf.reset();
        let mut merges = 0usize;
        for (i, cr) in d.crossings.iter().enumerate() {
            let a_smooth = state >> i & 1 == 0;
            for (s, t) in cr.smoothing_pairs(a_smooth) {
                if uf.union(cr.arcs[s], cr.arcs[t]) {
                    merges += 1;
                }
            }
        }
        let loops = d.arc_count - merges + d.free_loops;
        debug_assert!(loops >= 1);
        let a_count = c - state.count_ones() as usize;
        let exponent = a_count as i64 - (c - a_count) as i64;
        *counts.entry((exponent, loops - 1)).or_insert(0) += 1;
    }
    let dv = LaurentPoly::loop_value();
    let max_pow = counts.keys().map(|&(_, l)| l).max().unwrap_or(0);
    let mut d_pows = Vec::with_capacity(max_pow + 1);
    d_pows.push(LaurentPoly::one());
    for i in 1..=max_pow {
        let next = d_pows[i - 1].mul(&dv);
        d_pows.push(next);
    }
    let mut out = LaurentPoly::zero();
    for (&(e, l), &mult) in &counts {
        out = out.add(&d_pows[l].mul(&LaurentPoly::monomial(mult, e)));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Fox colourings
// ---------------------------------------------------------------------------

/// Arcs in the knot-theory sense are over-strand segments between
/// undercrossings, obtained here by gluing diagram arcs through the
/// over-slots.  Returns the crossing equations
/// `2 over - under_in - under_out = 0` and the number of variables.
pub fn fox_system(d: &LinkDiagram) -> (Vec<Vec<i128>>, usize) {
    if d.arc_count == 0 {
        return (Vec::new(), 0);
    }
    let mut uf = UnionFind::new(d.arc_count);
    for cr in &d.crossings {
        let (o1, o2) = cr.over_slots();
        uf.union(cr.arcs[o1], cr.arcs[o2]);
    }
    let mut var_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    for a in 0..d.arc_count {
        let r = uf.find(a);
        let next = var_of_root.len();
        var_of_root.entry(r).or_insert(next);
    }
    let nvars = var_of_root.len();
    let mut rows = Vec::with_capacity(d.crossings.len());
    for cr in &d.crossings {
        let (o1, _) = cr.over_slots();
        let (u1, u2) = cr.under_slots();
        let mut row = vec![0i128; nvars];
        row[var_of_root[&uf.find(cr.arcs[o1])]] += 2;
        row[var_of_root[&uf.find(cr.arcs[u1])]] -= 1;
        row[var_of_root[&uf.find(cr.arcs[u2])]] -= 1;
        rows.push(row);
    }
    (rows, nvars)
}

/// Number of Fox `q`-colourings (odd `q`): solutions of the crossing system
/// over `Z_q`, counted through a Smith diagonal form; each free loop
/// multiplies by `q`.
pub fn col_count(d: &LinkDiagram, q: u32) -> Result<u128, InvariantError> {
    if q == 0 || q % 2 == 0 {
        return Err(InvariantError::EvenModulus(q));
    }
    let (rows, nvars) = fox_system(d);
    let mut count = nullspace_count_mod(rows, nvars, q);
    for _ in 0..d.free_loops {
        count *= q as u128;
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// normalized functions on the group
// ---------------------------------------------------------------------------

fn big(i: i128) -> BigInt {
    BigInt::from(i)
}

/// `Chr(Gamma(p), q) / (q-1)^(n-1)`, evaluated on the representative as
/// given.
pub fn chr_fn(p: &TreePair, q: u32) -> Result<BigRational, InvariantError> {
    if q < 2 {
        return Err(InvariantError::BadParameter);
    }
    let n = p.leaves();
    let count = chromatic(&MultiGraph::from(&gamma_graph(p)), q);
    let denom = big(q as i128 - 1).pow(n as u32 - 1);
    Ok(BigRational::new(big(count), denom))
}

/// `T_Gamma(x, y) * (x+y)^(1-n)` at a floating point.
pub fn tutte_fn_f64(p: &TreePair, x: f64, y: f64) -> Result<f64, InvariantError> {
    if x + y == 0.0 {
        return Err(InvariantError::BadParameter);
    }
    let n = p.leaves();
    let t = tutte(&MultiGraph::from(&gamma_graph(p)));
    Ok(t.eval_f64(x, y) / (x + y).powi(n as i32 - 1))
}

/// Exact variant of [`tutte_fn_f64`] at rational points.
pub fn tutte_fn_rational(
    p: &TreePair,
    x: &BigRational,
    y: &BigRational,
) -> Result<BigRational, InvariantError> {
    use num_traits::Zero;
    let s = x + y;
    if s.is_zero() {
        return Err(InvariantError::BadParameter);
    }
    let n = p.leaves();
    let t = tutte(&MultiGraph::from(&gamma_graph(p)));
    let mut denom = BigRational::from_integer(big(1));
    for _ in 0..n - 1 {
        denom *= &s;
    }
    Ok(t.eval_rational(x, y) / denom)
}

/// `Col_q(L(p)) / q^n` on the representative as given.
pub fn colq_fn(p: &TreePair, q: u32) -> Result<BigRational, InvariantError> {
    let n = p.leaves();
    let count = col_count(&link_of_unreduced(p), q)?;
    Ok(BigRational::new(
        BigInt::from(count),
        big(q as i128).pow(n as u32),
    ))
}

/// `<L(p)>(A) / d^n` with `d = -A^2 - A^{-2}`, on the representative as
/// given.  Small diagrams evaluate the exact bracket; beyond that the de la
/// Harpe-Jones spin model takes over, which requires `A` to be a root of
/// `A^4 + sqrt(Q) A^2 + 1` for some integer `Q >= 2`.
pub fn bracket_fn(p: &TreePair, a: Complex64) -> Result<Complex64, InvariantError> {
    let d = -(a * a) - 1.0 / (a * a);
    if d.norm() < 1e-12 {
        return Err(InvariantError::DegenerateLoopValue);
    }
    let n = p.leaves();
    let diagram = link_of_unreduced(p);
    if diagram.crossing_count() <= 20 {
        let poly = bracket(&diagram, BRACKET_CAP)?;
        return Ok(poly.eval(a) / d.powi(n as i32));
    }
    if bracket_root_modulus(a).is_some() {
        let z = kauffman_spin(&gamma_graph(p), a)?;
        return Ok(z / d.powi(n as i32));
    }
    Err(InvariantError::CapExceeded {
        size: diagram.crossing_count(),
        cap: 20,
    })
}

/// Recognizes `A` as a root of `A^4 + sqrt(Q) A^2 + 1 = 0` for an integer
/// `Q >= 2` and returns `Q`.
pub fn bracket_root_modulus(a: Complex64) -> Option<u32> {
    let d = -(a * a) - 1.0 / (a * a);
    if d.im.abs() > 1e-9 || d.re <= 0.0 {
        return None;
    }
    let q = (d.re * d.re).round();
    if !(2.0..=1e6).contains(&q) || (d.re * d.re - q).abs() > 1e-9 {
        return None;
    }
    Some(q as u32)
}

// ---------------------------------------------------------------------------
// spin-model evaluations
// ---------------------------------------------------------------------------

/// Potts partition function `Z(G; q, k)` by exact contraction.
pub fn potts_spin(g: &MultiGraph, q: u32, k: f64) -> Result<f64, InvariantError> {
    let factors: Vec<Factor<f64>> = g
        .edges
        .iter()
        .map(|&(u, v)| Factor::on_edge(u, v, q, |s, t| if s == t { 1.0 } else { (-k).exp() }))
        .collect();
    Ok(contract(g.n, q, factors)?)
}

/// The de la Harpe-Jones vertex model on the signed graph, equal to the
/// bracket of the medial link at roots of `A^4 + sqrt(Q) A^2 + 1`:
/// `(1/sqrt(Q))^(|V|+1) sum_sigma prod w+ prod w-` with `w+ = -A^3` on equal
/// spins and `A^{-1}` otherwise on above-edges, and `w- = w+^{-1}` below.
pub fn kauffman_spin(g: &SignedPlaneGraph, a: Complex64) -> Result<Complex64, InvariantError> {
    let q = bracket_root_modulus(a).ok_or(InvariantError::BadParameter)?;
    let w_plus = |s: u32, t: u32| {
        if s == t {
            -(a * a * a)
        } else {
            1.0 / a
        }
    };
    let factors: Vec<Factor<Complex64>> = g
        .edges
        .iter()
        .map(|e| {
            let above = e.side == Side::Above;
            Factor::on_edge(e.u, e.v, q, |s, t| {
                let w = w_plus(s, t);
                if above {
                    w
                } else {
                    1.0 / w
                }
            })
        })
        .collect();
    let z = contract(g.n, q, factors)?;
    let root_q = (q as f64).sqrt();
    Ok(z * root_q.powi(-(g.n as i32 + 1)))
}
