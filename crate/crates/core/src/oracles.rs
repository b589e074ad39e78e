//! Independent brute-force re-derivations of every invariant.
//!
//! Everything here enumerates states directly from the defining formulas and
//! is kept separate from the production code paths so the two can be checked
//! against each other: indicator vectors whose pairings count colourings,
//! the Potts and de la Harpe-Jones partition functions as plain spin sums,
//! Fox colouring counts as state sums over diagram arcs, and the semi-link
//! vectors whose pairings factor the colouring count of a glued diagram.

use crate::diagram::{Crossing, CrossingType, LinkDiagram};
use crate::gamma::{gamma_half, MultiGraph, Side, SignedPlaneGraph};
use crate::invariants::chromatic;
use crate::linalg::UnionFind;
use crate::thompson::Tree;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;
use num_traits::Float;

/// States examined by one oracle call are capped at this count.
pub const STATE_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleError {
    CapExceeded { size: u64, cap: u64 },
    NotARoot,
    EvenModulus(u32),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::CapExceeded { size, cap } => {
                write!(f, "state count {} exceeds cap {}", size, cap)
            }
            OracleError::NotARoot => write!(f, "A is not a root of A^4 + sqrt(Q) A^2 + 1"),
            OracleError::EvenModulus(q) => write!(f, "modulus {} must be odd", q),
        }
    }
}

fn checked_pow(q: u64, n: u32) -> Result<u64, OracleError> {
    let mut out: u64 = 1;
    for _ in 0..n {
        out = out.checked_mul(q).ok_or(OracleError::CapExceeded {
            size: u64::MAX,
            cap: STATE_CAP,
        })?;
        if out > STATE_CAP {
            return Err(OracleError::CapExceeded {
                size: out,
                cap: STATE_CAP,
            });
        }
    }
    Ok(out)
}

/// Decodes state index `idx` into `n` spins in `0..q`, most significant
/// variable first.
fn decode(idx: u64, n: usize, q: u64, out: &mut [u32]) {
    let mut rest = idx;
    for i in (0..n).rev() {
        out[i] = (rest % q) as u32;
        rest /= q;
    }
}

/// 0/1 indicator vector over all spin assignments of `{0..q-1}` to the
/// vertices, marking the proper colourings of the dual tree of `t`.  The
/// euclidean pairing of two such vectors counts the colourings proper for
/// both, i.e. the chromatic count of the glued graph.
pub fn chromatic_vector(t: &Tree, q: u32) -> Result<Vec<i64>, OracleError> {
    let n = t.leaf_count();
    let size = checked_pow(q as u64, n as u32)?;
    let edges = gamma_half(t);
    let mut spins = vec![0u32; n];
    let mut out = Vec::with_capacity(size as usize);
    for idx in 0..size {
        decode(idx, n, q as u64, &mut spins);
        let proper = edges.iter().all(|&(u, v)| spins[u] != spins[v]);
        out.push(i64::from(proper));
    }
    Ok(out)
}

/// Brute-force Potts partition function
/// `Z = sum_sigma exp(-K * number of disagreeing edges)`.
pub fn potts_partition(g: &MultiGraph, q: u32, k: f64) -> Result<f64, OracleError> {
    let size = checked_pow(q as u64, g.n as u32)?;
    let mut spins = vec![0u32; g.n];
    let mut z = 0.0;
    for idx in 0..size {
        decode(idx, g.n, q as u64, &mut spins);
        let disagreements = g
            .edges
            .iter()
            .filter(|&&(u, v)| spins[u] != spins[v])
            .count();
        z += (-k * disagreements as f64).exp();
    }
    Ok(z)
}

fn require_root(q: u32, a: Complex64) -> Result<(), OracleError> {
    if q < 2 {
        return Err(OracleError::NotARoot);
    }
    let value = a.powi(4) + (q as f64).sqrt() * a * a + 1.0;
    if value.norm() > 1e-9 {
        return Err(OracleError::NotARoot);
    }
    Ok(())
}

fn w_plus(a: Complex64, s: u32, t: u32) -> Complex64 {
    if s == t {
        -(a * a * a)
    } else {
        1.0 / a
    }
}

/// Brute-force de la Harpe-Jones partition function on a signed graph:
/// `(1/sqrt(Q))^(|V|+1) sum_sigma prod_above w+ prod_below w-` with
/// `w+ = -A^3` on agreement, `A^{-1}` otherwise, and `w- = w+^{-1}`.
pub fn kauffman_partition(
    g: &SignedPlaneGraph,
    q: u32,
    a: Complex64,
) -> Result<Complex64, OracleError> {
    require_root(q, a)?;
    let size = checked_pow(q as u64, g.n as u32)?;
    let mut spins = vec![0u32; g.n];
    let mut z = Complex64::new(0.0, 0.0);
    for idx in 0..size {
        decode(idx, g.n, q as u64, &mut spins);
        let mut term = Complex64::new(1.0, 0.0);
        for e in &g.edges {
            let w = w_plus(a, spins[e.u], spins[e.v]);
            term *= match e.side {
                Side::Above => w,
                Side::Below => 1.0 / w,
            };
        }
        z += term;
    }
    Ok(z * (q as f64).sqrt().powi(-(g.n as i32 + 1)))
}

/// The vector whose component at a spin assignment is the product of the
/// `w+` weights over the dual-tree edges of `t`.  The Hermitian pairing of
/// two such vectors times `(1/sqrt(Q))^(n+1)` reproduces
/// [`kauffman_partition`] of the glued signed graph.
pub fn kauffman_vector(t: &Tree, q: u32, a: Complex64) -> Result<Vec<Complex64>, OracleError> {
    require_root(q, a)?;
    let n = t.leaf_count();
    let size = checked_pow(q as u64, n as u32)?;
    let edges = gamma_half(t);
    let mut spins = vec![0u32; n];
    let mut out = Vec::with_capacity(size as usize);
    for idx in 0..size {
        decode(idx, n, q as u64, &mut spins);
        let mut term = Complex64::new(1.0, 0.0);
        for &(u, v) in &edges {
            term *= w_plus(a, spins[u], spins[v]);
        }
        out.push(term);
    }
    Ok(out)
}

/// Fox colouring count as a state sum: colourings of the diagram arcs,
/// constant along over-strands, satisfying `2 over = under + under` at every
/// crossing; each free loop contributes a factor `q`.
pub fn colouring_partition(d: &LinkDiagram, q: u32) -> Result<u128, OracleError> {
    if q == 0 || q % 2 == 0 {
        return Err(OracleError::EvenModulus(q));
    }
    // the weight forces equal colours on the two over-slots, so enumerate
    // over the glued classes directly
    let mut class_of = vec![0usize; d.arc_count.max(1)];
    let nclasses = if d.arc_count == 0 {
        0
    } else {
        let mut uf = UnionFind::new(d.arc_count);
        for cr in &d.crossings {
            let (o1, o2) = cr.over_slots();
            uf.union(cr.arcs[o1], cr.arcs[o2]);
        }
        let mut ids: Vec<usize> = Vec::new();
        for arc in 0..d.arc_count {
            let r = uf.find(arc);
            let id = match ids.iter().position(|&x| x == r) {
                Some(i) => i,
                None => {
                    ids.push(r);
                    ids.len() - 1
                }
            };
            class_of[arc] = id;
        }
        ids.len()
    };
    let size = checked_pow(q as u64, nclasses as u32)?;
    let mut colours = vec![0u32; nclasses.max(1)];
    let mut count: u128 = 0;
    for idx in 0..size {
        decode(idx, nclasses, q as u64, &mut colours[..nclasses]);
        let ok = d.crossings.iter().all(|cr| {
            let (o1, _) = cr.over_slots();
            let (u1, u2) = cr.under_slots();
            let over = colours[class_of[cr.arcs[o1]]];
            let a = colours[class_of[cr.arcs[u1]]];
            let b = colours[class_of[cr.arcs[u2]]];
            (2 * over) % q == (a + b) % q
        });
        if ok {
            count += 1;
        }
    }
    for _ in 0..d.free_loops {
        count *= q as u128;
    }
    Ok(count)
}

/// The upper semi-link of a tree: the crossings of its dual-tree arcs in the
/// upper half-plane, cut along the base line.  Each vertex contributes two
/// boundary points, west and east, numbered left to right:
/// `west_0, east_0, west_1, east_1, ...`.
struct SemiLink {
    crossings: Vec<Crossing>,
    arc_count: usize,
    /// boundary points attached to each arc (0, 1 or 2 of them)
    boundary: Vec<Vec<usize>>,
}

fn upper_semilink(t: &Tree) -> SemiLink {
    let n = t.leaf_count();
    let edges = gamma_half(t);
    let ne = edges.len();
    // darts 2e at the left endpoint, 2e+1 at the right endpoint, angular
    // order at each vertex: rightward arcs innermost first, then leftward
    // arcs outermost first
    let mut order: Vec<Vec<(u8, i64, usize)>> = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        let span = (v - u) as i64;
        order[u].push((0, span, 2 * e));
        order[v].push((1, -span, 2 * e + 1));
    }
    let mut start_at = vec![usize::MAX; 2 * ne];
    let mut end_at = vec![usize::MAX; 2 * ne];
    let mut arc_count = 0;
    let mut boundary: Vec<Vec<usize>> = Vec::new();
    let mut new_arc = |boundary: &mut Vec<Vec<usize>>| {
        boundary.push(Vec::new());
        let id = boundary.len() - 1;
        id
    };
    for (w, darts) in order.iter_mut().enumerate() {
        darts.sort_unstable();
        let west = 2 * w;
        let east = 2 * w + 1;
        if darts.is_empty() {
            let a = new_arc(&mut boundary);
            boundary[a].push(west);
            boundary[a].push(east);
            arc_count += 1;
            continue;
        }
        // east boundary arc enters the clockwise side of the first dart
        let first = darts[0].2;
        let a = new_arc(&mut boundary);
        boundary[a].push(east);
        end_at[first] = a;
        arc_count += 1;
        for pair in darts.windows(2) {
            let a = new_arc(&mut boundary);
            start_at[pair[0].2] = a;
            end_at[pair[1].2] = a;
            arc_count += 1;
        }
        let last = darts[darts.len() - 1].2;
        let a = new_arc(&mut boundary);
        boundary[a].push(west);
        start_at[last] = a;
        arc_count += 1;
    }
    let crossings = (0..ne)
        .map(|e| Crossing {
            ty: CrossingType::Slash,
            arcs: [
                end_at[2 * e],
                start_at[2 * e + 1],
                end_at[2 * e + 1],
                start_at[2 * e],
            ],
        })
        .collect();
    SemiLink {
        crossings,
        arc_count,
        boundary,
    }
}

/// Component at each boundary colour tuple of the semi-link state sum: the
/// number of arc colourings extending the boundary colours with the Fox
/// weight at every crossing.  The pairing of two such vectors over matched
/// boundaries reproduces [`colouring_partition`] of the glued diagram.
pub fn fox_semilink_vector(t: &Tree, q: u32) -> Result<Vec<u64>, OracleError> {
    if q == 0 || q % 2 == 0 {
        return Err(OracleError::EvenModulus(q));
    }
    let n = t.leaf_count();
    let semi = upper_semilink(t);
    let out_size = checked_pow(q as u64, 2 * n as u32)?;
    let states = checked_pow(q as u64, semi.arc_count as u32)?;
    let mut out = vec![0u64; out_size as usize];
    let mut colours = vec![0u32; semi.arc_count];
    for idx in 0..states {
        decode(idx, semi.arc_count, q as u64, &mut colours);
        let ok = semi.crossings.iter().all(|cr| {
            let (o1, o2) = cr.over_slots();
            let (u1, u2) = cr.under_slots();
            let a = colours[cr.arcs[o1]];
            let b = colours[cr.arcs[o2]];
            let c = colours[cr.arcs[u1]];
            let d = colours[cr.arcs[u2]];
            a == b && (a + b) % q == (c + d) % q
        });
        if !ok {
            continue;
        }
        // scatter into the boundary tuple slot
        let mut tuple = vec![0u32; 2 * n];
        for (arc, points) in semi.boundary.iter().enumerate() {
            for &p in points {
                tuple[p] = colours[arc];
            }
        }
        let mut pos: u64 = 0;
        for &c in &tuple {
            pos = pos * q as u64 + c as u64;
        }
        out[pos as usize] += 1;
    }
    Ok(out)
}

/// Residuals `|exp(K |E|) Z(G; Q, K) - Chr(G, Q)| / max(Chr, 1)` for each
/// coupling in `ks`; for decreasing negative `K` these must shrink to 0.
pub fn chromatic_limit_check(
    g: &MultiGraph,
    q: u32,
    ks: &[f64],
) -> Result<Vec<(f64, f64)>, OracleError> {
    let chr = chromatic(g, q) as f64;
    let scale = chr.max(1.0);
    let mut out = Vec::with_capacity(ks.len());
    for &k in ks {
        let z = potts_partition(g, q, k)?;
        let scaled = (k * g.edges.len() as f64).exp() * z;
        out.push((k, (scaled - chr).abs() / scale));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::link_of_unreduced;
    use crate::gamma::gamma_graph;
    use crate::invariants::{bracket, col_count, potts_spin, tutte, BRACKET_CAP};
    use crate::thompson::{caret, parse_word, word_to_pair, Tree, TreePair};

    fn pair(a: &Tree, b: &Tree) -> TreePair {
        TreePair::new(a.clone(), b.clone())
    }

    fn dot(a: &[i64], b: &[i64]) -> i64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn chromatic_vector_basics() {
        let v = chromatic_vector(&caret(Tree::Leaf, Tree::Leaf), 2).unwrap();
        assert_eq!(v.iter().sum::<i64>(), 2);
        for n in 2..5 {
            for t in Tree::enumerate(n) {
                let v = chromatic_vector(&t, 4).unwrap();
                assert_eq!(dot(&v, &v) as i128, 4 * 3i128.pow(n as u32 - 1));
            }
        }
    }

    #[test]
    fn chromatic_vector_pairing_counts_glued_colourings() {
        let trees = Tree::enumerate(4);
        let mut values = alloc::collections::BTreeSet::new();
        for a in &trees {
            for b in &trees {
                let va = chromatic_vector(a, 4).unwrap();
                let vb = chromatic_vector(b, 4).unwrap();
                let glued = MultiGraph::from(&gamma_graph(&pair(a, b)));
                let chr = chromatic(&glued, 4);
                assert_eq!(dot(&va, &vb) as i128, chr);
                if a != b {
                    values.insert(chr);
                }
            }
        }
        for expect in [84, 72, 48] {
            assert!(values.contains(&expect), "missing pairing value {}", expect);
        }
    }

    #[test]
    fn potts_brute_force_values() {
        let g = MultiGraph::new(2, vec![(0, 1)]);
        let k = 1.3;
        let z = potts_partition(&g, 2, k).unwrap();
        assert!((z - (2.0 + 2.0 * (-k).exp())).abs() < 1e-12);
        assert!((potts_partition(&g, 3, 0.0).unwrap() - 9.0).abs() < 1e-12);
        // matches the contraction route
        let omega = word_to_pair(&parse_word("x1 x0^-1").unwrap());
        let gg = MultiGraph::from(&gamma_graph(&omega));
        for (q, k) in [(2u32, -0.5), (3, 0.7), (4, 1.3)] {
            let brute = potts_partition(&gg, q, k).unwrap();
            let fast = potts_spin(&gg, q, k).unwrap();
            assert!((brute - fast).abs() < 1e-9 * brute.abs().max(1.0));
        }
    }

    #[test]
    fn potts_tutte_identity() {
        let omega = word_to_pair(&parse_word("x1 x0^-1").unwrap());
        let g = MultiGraph::from(&gamma_graph(&omega));
        let t = tutte(&g);
        for (q, k) in [(2u32, -2.0), (3, 0.7), (4, 1.3)] {
            let y: f64 = k.exp();
            let x = (y + q as f64 - 1.0) / (y - 1.0);
            let z = potts_partition(&g, q, k).unwrap();
            let rhs = q as f64
                * (y - 1.0).powi(g.n as i32 - 1)
                * y.powi(-(g.edges.len() as i32))
                * t.eval_f64(x, y);
            assert!((z - rhs).abs() < 1e-9 * z.abs().max(1.0));
        }
    }

    #[test]
    fn kauffman_partition_unknot_and_pair() {
        let a = Complex64::from_polar(1.0, 3.0 * core::f64::consts::PI / 8.0);
        // single vertex, no edges: the unknot, bracket 1
        let g = SignedPlaneGraph {
            n: 1,
            edges: alloc::vec::Vec::new(),
        };
        let z = kauffman_partition(&g, 2, a).unwrap();
        assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        // (caret, caret): the 2-unlink, bracket d = sqrt(2) at this root
        let t = caret(Tree::Leaf, Tree::Leaf);
        let g = gamma_graph(&pair(&t, &t));
        let z = kauffman_partition(&g, 2, a).unwrap();
        assert!((z - Complex64::new(2.0f64.sqrt(), 0.0)).norm() < 1e-12);
        // wrong root rejected
        assert!(kauffman_partition(&g, 3, a).is_err());
    }

    #[test]
    fn kauffman_partition_equals_bracket() {
        let roots = [
            (2u32, Complex64::from_polar(1.0, 3.0 * core::f64::consts::PI / 8.0)),
            (3, Complex64::from_polar(1.0, 5.0 * core::f64::consts::PI / 12.0)),
            (4, Complex64::new(0.0, 1.0)),
        ];
        for n in 1..=4 {
            let trees = Tree::enumerate(n);
            for ta in &trees {
                for tb in &trees {
                    let p = pair(ta, tb);
                    let g = gamma_graph(&p);
                    let b = bracket(&link_of_unreduced(&p), BRACKET_CAP).unwrap();
                    for &(q, a) in &roots {
                        let z = kauffman_partition(&g, q, a).unwrap();
                        assert!((z - b.eval(a)).norm() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn kauffman_vector_pairing() {
        let a = Complex64::from_polar(1.0, 3.0 * core::f64::consts::PI / 8.0);
        let q = 2u32;
        for n in 2..=4 {
            let trees = Tree::enumerate(n);
            for ta in &trees {
                for tb in &trees {
                    let va = kauffman_vector(ta, q, a).unwrap();
                    let vb = kauffman_vector(tb, q, a).unwrap();
                    // w- = conj(w+) on the unit circle
                    let pairing: Complex64 = va
                        .iter()
                        .zip(&vb)
                        .map(|(x, y)| x * y.conj())
                        .sum::<Complex64>()
                        * (q as f64).sqrt().powi(-(n as i32 + 1));
                    let mut edges = Vec::new();
                    for (u, v) in gamma_half(ta) {
                        edges.push(crate::gamma::Edge {
                            u,
                            v,
                            side: Side::Above,
                        });
                    }
                    for (u, v) in gamma_half(tb) {
                        edges.push(crate::gamma::Edge {
                            u,
                            v,
                            side: Side::Below,
                        });
                    }
                    let z = kauffman_partition(&SignedPlaneGraph { n, edges }, q, a).unwrap();
                    assert!((pairing - z).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn w_minus_is_conjugate_on_unit_circle() {
        for (q, a) in [
            (2u32, Complex64::from_polar(1.0, 3.0 * core::f64::consts::PI / 8.0)),
            (3, Complex64::from_polar(1.0, 5.0 * core::f64::consts::PI / 12.0)),
            (4, Complex64::new(0.0, 1.0)),
        ] {
            require_root(q, a).unwrap();
            for (s, t) in [(0u32, 0u32), (0, 1)] {
                let w = w_plus(a, s, t);
                assert!((1.0 / w - w.conj()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn colouring_partition_examples() {
        let unknot = crate::diagram::link_of(&TreePair::identity());
        assert_eq!(colouring_partition(&unknot, 3).unwrap(), 3);
        let omega2 = word_to_pair(&parse_word("x1 x0^-1 x1 x0^-1").unwrap());
        let trefoil = crate::diagram::link_of(&omega2);
        assert_eq!(colouring_partition(&trefoil, 3).unwrap(), 9);
        assert!(colouring_partition(&unknot, 2).is_err());
    }

    #[test]
    fn colouring_partition_equals_col_count() {
        for n in 1..=4 {
            let trees = Tree::enumerate(n);
            for a in &trees {
                for b in &trees {
                    let d = link_of_unreduced(&pair(a, b));
                    for q in [3u32, 5] {
                        assert_eq!(
                            colouring_partition(&d, q).unwrap(),
                            col_count(&d, q).unwrap() as u128
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn semilink_single_leaf_vector() {
        // one strand crossing the line twice: entry 1 iff both ends agree
        let v = fox_semilink_vector(&Tree::Leaf, 3).unwrap();
        assert_eq!(v.len(), 9);
        for (idx, &val) in v.iter().enumerate() {
            let (w, e) = (idx / 3, idx % 3);
            assert_eq!(val, u64::from(w == e));
        }
    }

    #[test]
    fn semilink_caret_vector_is_crossing_weight() {
        let q = 3u32;
        let v = fox_semilink_vector(&caret(Tree::Leaf, Tree::Leaf), q).unwrap();
        assert_eq!(v.len(), 81);
        for (idx, &val) in v.iter().enumerate() {
            let digits = [
                (idx / 27) as u32 % 3, // west_0
                (idx / 9) as u32 % 3,  // east_0
                (idx / 3) as u32 % 3,  // west_1
                idx as u32 % 3,        // east_1
            ];
            let (w0, e0, w1, e1) = (digits[0], digits[1], digits[2], digits[3]);
            // over-strand joins the two east ends; unders are the wests
            let expect = e0 == e1 && (e0 + e1) % q == (w0 + w1) % q;
            assert_eq!(val, u64::from(expect), "tuple {:?}", digits);
        }
    }

    #[test]
    fn semilink_pairing_counts_colourings() {
        let q = 3u32;
        for n in 1..=3 {
            let trees = Tree::enumerate(n);
            for a in &trees {
                for b in &trees {
                    let va = fox_semilink_vector(a, q).unwrap();
                    let vb = fox_semilink_vector(b, q).unwrap();
                    let pairing: u128 = va
                        .iter()
                        .zip(&vb)
                        .map(|(&x, &y)| x as u128 * y as u128)
                        .sum();
                    let d = link_of_unreduced(&pair(a, b));
                    assert_eq!(
                        pairing,
                        col_count(&d, q).unwrap() as u128,
                        "пairing mismatch on ({}, {})",
                        a,
                        b
                    );
                }
            }
        }
    }

    #[test]
    fn chromatic_limit_monotone() {
        let omega = word_to_pair(&parse_word("x1 x0^-1").unwrap());
        let g = MultiGraph::from(&gamma_graph(&omega));
        let table = chromatic_limit_check(&g, 3, &[-5.0, -10.0, -20.0, -30.0]).unwrap();
        for w in table.windows(2) {
            assert!(w[1].1 <= w[0].1);
        }
        assert!(table.last().unwrap().1 < 1e-6);
        // K = 0 endpoint: scaled sum is just q^n, no convergence claim
        let endpoint = chromatic_limit_check(&g, 3, &[0.0]).unwrap();
        let chr = chromatic(&g, 3) as f64;
        let expect = (3.0f64.powi(g.n as i32) - chr).abs() / chr.max(1.0);
        assert!((endpoint[0].1 - expect).abs() < 1e-9);
    }

    #[test]
    fn caps_respected() {
        assert!(chromatic_vector(&Tree::enumerate(8)[0], 10).is_err());
    }
}
