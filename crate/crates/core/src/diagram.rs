//! Unoriented link diagrams as medials of signed plane graphs.
//!
//! Each edge of the graph becomes one crossing; the arcs of the diagram are
//! the corners of the plane graph (consecutive darts in the rotation at a
//! vertex).  Crossing slots are stored counterclockwise starting at the
//! south-west end: `[SW, SE, NE, NW]`.  The two strands through a crossing
//! occupy the slot pairs `(SW, NE)` and `(SE, NW)`.
//!
//! Crossing geometry: at a `Slash` crossing (above-edges) the strand running
//! SW -> NE passes over; at a `Back` crossing (below-edges) the strand
//! running NW -> SE passes over.  Together with the side assignment in
//! [`crate::gamma::gamma_graph`] this is the convention under which the
//! 5-leaf element `(x1 x0^-1)^2` yields the bracket `1 - A^4 + A^-8`; it is
//! fixed once here and nowhere else.

use crate::gamma::{gamma_graph, Side, SignedPlaneGraph};
use crate::linalg::UnionFind;
use crate::thompson::{reduce, TreePair};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CrossingType {
    /// The SW -> NE strand is the over-strand.
    Slash,
    /// The NW -> SE strand is the over-strand.
    Back,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Crossing {
    pub ty: CrossingType,
    /// Arc identifiers in the slots `[SW, SE, NE, NW]`.
    pub arcs: [usize; 4],
}

impl Crossing {
    /// Slot indices of the over-strand ends.
    pub fn over_slots(&self) -> (usize, usize) {
        match self.ty {
            CrossingType::Slash => (0, 2),
            CrossingType::Back => (1, 3),
        }
    }

    /// Slot indices of the under-strand ends.
    pub fn under_slots(&self) -> (usize, usize) {
        match self.ty {
            CrossingType::Slash => (1, 3),
            CrossingType::Back => (0, 2),
        }
    }

    /// The two slot pairs joined by the A-smoothing (`a = true`) or the
    /// B-smoothing (`a = false`).
    pub fn smoothing_pairs(&self, a: bool) -> [(usize, usize); 2] {
        let slash_a = [(0, 3), (1, 2)];
        let slash_b = [(0, 1), (2, 3)];
        match (self.ty, a) {
            (CrossingType::Slash, true) | (CrossingType::Back, false) => slash_a,
            (CrossingType::Slash, false) | (CrossingType::Back, true) => slash_b,
        }
    }
}

/// A PD-style diagram: crossings with arc slots, plus a count of circle
/// components that meet no crossing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinkDiagram {
    pub crossings: Vec<Crossing>,
    pub arc_count: usize,
    pub free_loops: usize,
}

impl LinkDiagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Every arc identifier must occur in exactly two crossing slots.
    pub fn arc_slots_consistent(&self) -> bool {
        let mut seen = vec![0usize; self.arc_count];
        for c in &self.crossings {
            for &a in &c.arcs {
                if a >= self.arc_count {
                    return false;
                }
                seen[a] += 1;
            }
        }
        seen.iter().all(|&k| k == 2)
    }
}

/// The medial link of a signed plane graph: one crossing per edge, arcs from
/// the corners of the embedding, one free loop per isolated vertex.
pub fn medial_link(g: &SignedPlaneGraph) -> LinkDiagram {
    let rot = g.rotation_system();
    let ne = g.edges.len();
    // corner arcs: for consecutive darts (d, next) at a vertex, one arc that
    // starts (counterclockwise side) at d and ends (clockwise side) at next
    let mut start_at = vec![usize::MAX; 2 * ne];
    let mut end_at = vec![usize::MAX; 2 * ne];
    let mut arc_count = 0;
    let mut free_loops = 0;
    for darts in &rot {
        if darts.is_empty() {
            free_loops += 1;
            continue;
        }
        let k = darts.len();
        for i in 0..k {
            let d = darts[i];
            let dn = darts[(i + 1) % k];
            start_at[d] = arc_count;
            end_at[dn] = arc_count;
            arc_count += 1;
        }
    }
    let crossings = g
        .edges
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            let d_left = 2 * e;
            let d_right = 2 * e + 1;
            Crossing {
                ty: match edge.side {
                    Side::Above => CrossingType::Slash,
                    Side::Below => CrossingType::Back,
                },
                arcs: [
                    end_at[d_left],    // SW: clockwise corner at the left endpoint
                    start_at[d_right], // SE: counterclockwise corner at the right endpoint
                    end_at[d_right],   // NE
                    start_at[d_left],  // NW
                ],
            }
        })
        .collect();
    LinkDiagram {
        crossings,
        arc_count,
        free_loops,
    }
}

/// Diagram of the canonical (reduced) representative of an element.
pub fn link_of(p: &TreePair) -> LinkDiagram {
    medial_link(&gamma_graph(&reduce(p)))
}

/// Diagram of a pair as given, without reducing first.
pub fn link_of_unreduced(p: &TreePair) -> LinkDiagram {
    medial_link(&gamma_graph(p))
}

/// Swaps the crossing type everywhere; arcs are unchanged.
pub fn mirror(d: &LinkDiagram) -> LinkDiagram {
    LinkDiagram {
        crossings: d
            .crossings
            .iter()
            .map(|c| Crossing {
                ty: match c.ty {
                    CrossingType::Slash => CrossingType::Back,
                    CrossingType::Back => CrossingType::Slash,
                },
                arcs: c.arcs,
            })
            .collect(),
        arc_count: d.arc_count,
        free_loops: d.free_loops,
    }
}

/// Number of closed strands: arcs glued through crossings, plus free loops.
pub fn component_count(d: &LinkDiagram) -> usize {
    if d.arc_count == 0 {
        return d.free_loops;
    }
    let mut uf = UnionFind::new(d.arc_count);
    for c in &d.crossings {
        uf.union(c.arcs[0], c.arcs[2]);
        uf.union(c.arcs[1], c.arcs[3]);
    }
    uf.component_count() + d.free_loops
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thompson::{
        caret, generator_pair, invert, pad_with_caret, parse_word, word_to_pair, Tree, TreePair,
    };
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn l() -> Tree {
        Tree::Leaf
    }

    #[test]
    fn identity_is_unknot() {
        let d = link_of(&TreePair::identity());
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.free_loops, 1);
        assert_eq!(component_count(&d), 1);
    }

    #[test]
    fn smallest_pair_two_components() {
        let d = link_of_unreduced(&TreePair::new(caret(l(), l()), caret(l(), l())));
        assert_eq!(d.crossing_count(), 2);
        assert!(d.arc_slots_consistent());
        assert_eq!(component_count(&d), 2);
    }

    #[test]
    fn omega_squared_is_a_knot() {
        let omega2 = word_to_pair(&parse_word("x1 x0^-1 x1 x0^-1").unwrap());
        let d = link_of(&omega2);
        assert_eq!(d.crossing_count(), 8);
        assert!(d.arc_slots_consistent());
        assert_eq!(component_count(&d), 1);
    }

    /// The paper-matrix consistency check pins the 3-leaf diagram of
    /// `x0^{-1}` to a single unknotted component (its bracket is 1).
    #[test]
    fn x0_inverse_is_single_component() {
        let d = link_of(&invert(&generator_pair(0)));
        assert_eq!(d.crossing_count(), 4);
        assert_eq!(component_count(&d), 1);
    }

    #[test]
    fn x1_inverse_has_two_components() {
        let d = link_of(&invert(&generator_pair(1)));
        assert_eq!(d.crossing_count(), 6);
        assert_eq!(component_count(&d), 2);
    }

    #[test]
    fn identity_pairs_give_unlinks() {
        for n in 1..=6 {
            for t in Tree::enumerate(n) {
                let d = link_of_unreduced(&TreePair::new(t.clone(), t.clone()));
                assert_eq!(component_count(&d), n);
            }
        }
    }

    #[test]
    fn crossing_count_is_2n_minus_2() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let p = TreePair::random(&mut rng, 6);
            let d = link_of_unreduced(&p);
            assert_eq!(d.crossing_count(), 2 * (p.leaves() - 1));
            assert!(d.arc_slots_consistent());
        }
    }

    #[test]
    fn padding_adds_one_component() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let p = TreePair::random(&mut rng, 5);
            let base = component_count(&link_of_unreduced(&p));
            for i in 0..p.leaves() {
                let padded = pad_with_caret(&p, i);
                assert_eq!(component_count(&link_of_unreduced(&padded)), base + 1);
            }
        }
    }

    #[test]
    fn mirror_involution_and_components() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = TreePair::random(&mut rng, 6);
            let d = link_of_unreduced(&p);
            assert_eq!(mirror(&mirror(&d)), d);
            assert_eq!(component_count(&mirror(&d)), component_count(&d));
        }
    }

    #[test]
    fn smoothing_pairs_mirror_symmetry() {
        let slash = Crossing {
            ty: CrossingType::Slash,
            arcs: [0, 1, 2, 3],
        };
        let back = Crossing {
            ty: CrossingType::Back,
            arcs: [0, 1, 2, 3],
        };
        assert_eq!(slash.smoothing_pairs(true), back.smoothing_pairs(false));
        assert_eq!(slash.smoothing_pairs(false), back.smoothing_pairs(true));
        assert_eq!(slash.over_slots(), back.under_slots());
    }
}
