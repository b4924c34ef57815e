//! Affine self-linking toolkit: word problems in the fundamental groups of
//! Seifert-fibered spaces and torus bundles, the loop homomorphisms
//! `delta`, `Delta_aslk` and `Delta~_aslk`, framed Gauss codes in S³, and a
//! classifier for the number of framings of a knot.

pub mod classify;
pub mod framed_gauss;
pub mod loop_calculus;
pub mod manifold_groups;
pub mod words;

mod sign;
pub use sign::Sign;
