//! Elements of Thompson's group `F`, the plane graphs and unoriented link
//! diagrams attached to them, and a family of normalized invariants that are
//! of positive type on the group.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`thompson`] — group elements as reduced pairs of rooted planar binary
//!    trees, with multiplication, inversion, reduction and evaluation as
//!    piecewise-linear homeomorphisms of `[0,1]`.
//! 2. [`gamma`] — the signed plane graph of a tree pair: vertices on a
//!    horizontal line, one laminar family of arcs per tree.
//! 3. [`diagram`] — the medial construction turning the signed graph into an
//!    unoriented link diagram with one crossing per edge.
//! 4. [`invariants`] / [`positivity`] — chromatic counts, the Tutte
//!    polynomial, the Kauffman bracket and Fox colouring counts, their
//!    normalized functions on the group, and Gram matrices
//!    `(phi(g_i g_j^{-1}))` with exact or spectral positive-semidefiniteness
//!    verdicts.
//!
//! [`oracles`] holds independent brute-force partition functions and
//! Gram-vector constructions used to cross-check every production path.
//!
//! The crate is `no_std` (it requires `alloc`); all IO, serialization and the
//! command-line front end live in the companion `tlink` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod diagram;
pub mod gamma;
pub mod invariants;
pub mod linalg;
pub mod oracles;
pub mod poly;
pub mod positivity;
pub mod spin;
pub mod thompson;

pub use diagram::{component_count, link_of, link_of_unreduced, medial_link, mirror, LinkDiagram};
pub use gamma::{gamma_graph, gamma_half, Side, SignedPlaneGraph};
pub use poly::{LaurentPoly, TuttePoly};
pub use thompson::{parse_word, Dyadic, Tree, TreePair, Word};
