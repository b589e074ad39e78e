//! The signed plane graph of a tree pair.
//!
//! Vertices `0..n-1` sit left-to-right on a horizontal line; each tree of the
//! pair contributes a laminar family of arcs, drawn above resp. below the
//! line.  A caret whose subtree spans leaves `a..=c` and whose right child
//! spans `s..=c` contributes the arc `(a, s)`; the arcs of one tree form a
//! spanning tree on the vertices.

use crate::thompson::{Tree, TreePair};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Side {
    Above,
    Below,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub side: Side,
}

/// A plane multigraph with vertices on a line and signed non-crossing arcs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedPlaneGraph {
    pub n: usize,
    pub edges: Vec<Edge>,
}

/// One arc per caret of `t`: the dual edges of the tree seen from the gaps
/// between its leaves.  The result is a spanning tree on `0..n-1`.
pub fn gamma_half(t: &Tree) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(t.caret_count());
    fn rec(t: &Tree, off: usize, edges: &mut Vec<(usize, usize)>) -> usize {
        match t {
            Tree::Leaf => 1,
            Tree::Caret(l, r) => {
                let nl = rec(l, off, edges);
                let nr = rec(r, off + nl, edges);
                edges.push((off, off + nl));
                nl + nr
            }
        }
    }
    rec(t, 0, &mut edges);
    edges.sort_unstable();
    edges
}

/// The signed graph of a pair.  The `minus` tree (range partition) is drawn
/// above the line, the `plus` tree (domain partition) below; this is the
/// side assignment pinned by the trefoil acceptance value.
pub fn gamma_graph(p: &TreePair) -> SignedPlaneGraph {
    let n = p.leaves();
    let mut edges = Vec::with_capacity(2 * (n - 1).max(0));
    for (u, v) in gamma_half(&p.minus) {
        edges.push(Edge {
            u,
            v,
            side: Side::Above,
        });
    }
    for (u, v) in gamma_half(&p.plus) {
        edges.push(Edge {
            u,
            v,
            side: Side::Below,
        });
    }
    SignedPlaneGraph { n, edges }
}

impl SignedPlaneGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges_on(&self, side: Side) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges
            .iter()
            .filter(move |e| e.side == side)
            .map(|e| (e.u, e.v))
    }

    /// Vertices with no incident edge.
    pub fn isolated_vertices(&self) -> usize {
        let mut deg = vec![0usize; self.n];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg.iter().filter(|&&d| d == 0).count()
    }

    /// Counterclockwise rotation system.  Darts are `2e` (at the left
    /// endpoint of edge `e`) and `2e + 1` (at the right endpoint).  At each
    /// vertex the cyclic order is: below-edges leaving rightward (outermost
    /// arc first), above-edges leaving rightward (innermost first),
    /// above-edges arriving from the left (outermost first), below-edges
    /// arriving (innermost first).
    pub fn rotation_system(&self) -> Vec<Vec<usize>> {
        let mut rot: Vec<Vec<(u8, i64, usize)>> = vec![Vec::new(); self.n];
        for (idx, e) in self.edges.iter().enumerate() {
            debug_assert!(e.u < e.v, "edges are stored with u < v");
            let span = (e.v - e.u) as i64;
            // (class, span key) per the ccw order documented above
            let (class_u, key_u) = match e.side {
                Side::Below => (0u8, -span),
                Side::Above => (1u8, span),
            };
            let (class_v, key_v) = match e.side {
                Side::Above => (2u8, -span),
                Side::Below => (3u8, span),
            };
            rot[e.u].push((class_u, key_u, 2 * idx));
            rot[e.v].push((class_v, key_v, 2 * idx + 1));
        }
        rot.into_iter()
            .map(|mut darts| {
                darts.sort_unstable();
                darts.into_iter().map(|(_, _, d)| d).collect()
            })
            .collect()
    }

    /// Checks that same-side arcs never interleave.
    pub fn is_laminar(&self) -> bool {
        for side in [Side::Above, Side::Below] {
            let arcs: Vec<(usize, usize)> = self.edges_on(side).collect();
            for (i, &(u1, v1)) in arcs.iter().enumerate() {
                for &(u2, v2) in &arcs[i + 1..] {
                    let crossing = (u1 < u2 && u2 < v1 && v1 < v2)
                        || (u2 < u1 && u1 < v2 && v2 < v1);
                    if crossing {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Plain multigraph view used by the chromatic / Tutte operations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MultiGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(n: usize, mut edges: Vec<(usize, usize)>) -> MultiGraph {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        MultiGraph { n, edges }
    }
}

impl From<&SignedPlaneGraph> for MultiGraph {
    fn from(g: &SignedPlaneGraph) -> MultiGraph {
        MultiGraph::new(g.n, g.edges.iter().map(|e| (e.u, e.v)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thompson::{
        caret, generator_pair, invert, multiply, pad_with_caret, parse_word, word_to_pair, Tree,
        TreePair,
    };
    use alloc::collections::BTreeSet;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn l() -> Tree {
        Tree::Leaf
    }

    #[test]
    fn half_of_single_leaf_is_empty() {
        assert_eq!(gamma_half(&l()), vec![]);
    }

    #[test]
    fn half_of_vines() {
        let right_vine = caret(l(), caret(l(), l()));
        assert_eq!(gamma_half(&right_vine), vec![(0, 1), (1, 2)]);
        let left_vine = caret(caret(l(), l()), l());
        assert_eq!(gamma_half(&left_vine), vec![(0, 1), (0, 2)]);
    }

    fn is_spanning_tree(n: usize, edges: &[(usize, usize)]) -> bool {
        if edges.len() != n - 1 {
            return false;
        }
        let mut uf = crate::linalg::UnionFind::new(n);
        for &(u, v) in edges {
            if !uf.union(u, v) {
                return false; // cycle
            }
        }
        true
    }

    #[test]
    fn halves_are_spanning_trees_exhaustive() {
        for n in 1..=8 {
            for t in Tree::enumerate(n) {
                let edges = gamma_half(&t);
                assert!(is_spanning_tree(n, &edges), "not a tree: {:?}", edges);
            }
        }
    }

    #[test]
    fn laminarity_exhaustive() {
        for n in 1..=6 {
            let trees = Tree::enumerate(n);
            for a in &trees {
                for b in &trees {
                    let g = gamma_graph(&TreePair::new(a.clone(), b.clone()));
                    assert!(g.is_laminar());
                    assert_eq!(g.edge_count(), 2 * (n - 1));
                }
            }
        }
    }

    #[test]
    fn smallest_pair_graph() {
        let g = gamma_graph(&TreePair::new(caret(l(), l()), caret(l(), l())));
        assert_eq!(g.n, 2);
        let mut sides: Vec<(usize, usize, Side)> =
            g.edges.iter().map(|e| (e.u, e.v, e.side)).collect();
        sides.sort();
        assert_eq!(
            sides,
            vec![(0, 1, Side::Above), (0, 1, Side::Below)]
        );
    }

    #[test]
    fn doubled_tree_for_identity_pairs() {
        for t in Tree::enumerate(5) {
            let g = gamma_graph(&TreePair::new(t.clone(), t.clone()));
            let above: BTreeSet<_> = g.edges_on(Side::Above).collect();
            let below: BTreeSet<_> = g.edges_on(Side::Below).collect();
            assert_eq!(above, below);
        }
    }

    #[test]
    fn omega_squared_graph_counts() {
        let omega2 = word_to_pair(&parse_word("x1 x0^-1 x1 x0^-1").unwrap());
        let g = gamma_graph(&omega2);
        assert_eq!(g.n, 5);
        assert_eq!(g.edges_on(Side::Above).count(), 4);
        assert_eq!(g.edges_on(Side::Below).count(), 4);
    }

    /// Padding a pair adds one new 2-valent vertex joined to the vertex on
    /// its left by a doubled edge, and shifts the rest.
    #[test]
    fn caret_addition_is_pendant_doubled_edge() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..40 {
            let p = TreePair::random(&mut rng, 5);
            let g = gamma_graph(&p);
            for i in 0..p.leaves() {
                let padded = gamma_graph(&pad_with_caret(&p, i));
                assert_eq!(padded.n, g.n + 1);
                // the new vertex is i+1; edges touching it are (i, i+1) twice
                let mut pendant = 0;
                let mut rest: Vec<Edge> = Vec::new();
                for e in &padded.edges {
                    if e.u == i + 1 || e.v == i + 1 {
                        assert_eq!((e.u, e.v), (i, i + 1));
                        pendant += 1;
                    } else {
                        rest.push(Edge {
                            u: e.u - usize::from(e.u > i),
                            v: e.v - usize::from(e.v > i),
                            side: e.side,
                        });
                    }
                }
                assert_eq!(pendant, 2);
                let mut expected = g.edges.clone();
                expected.sort();
                rest.sort();
                assert_eq!(rest, expected);
            }
        }
    }

    #[test]
    fn rotation_system_orders_darts() {
        // x0^{-1}: above = path (0,1),(1,2); below = star (0,1),(0,2)
        let p = invert(&generator_pair(0));
        let g = gamma_graph(&p);
        let rot = g.rotation_system();
        assert_eq!(rot.iter().map(|v| v.len()).sum::<usize>(), 8);
        for (w, darts) in rot.iter().enumerate() {
            let mut deg = 0;
            for e in &g.edges {
                if e.u == w || e.v == w {
                    deg += 1;
                }
            }
            assert_eq!(darts.len(), deg);
        }
    }

    #[test]
    fn multiply_then_graph_smoke() {
        let p = multiply(&generator_pair(0), &generator_pair(1));
        let g = gamma_graph(&p);
        assert!(g.is_laminar());
        assert_eq!(g.edge_count(), 2 * (p.leaves() - 1));
    }
}
