//! Foundations of matroids without large uniform minors.
//!
//! The crate computes the foundation of a matroid on at most 16 elements as a
//! tensor product of a head pasture in {F1pm, F2, F3, K} with copies of the
//! near-regular, dyadic and hexagonal partial fields, classifies the matroid
//! into one of twelve representation classes, answers representability and
//! morphism-count queries, and lifts orientations to dyadic representations.
//! An independent brute-force [`oracle`] enumerates representations over
//! finite pastures and serves as the ground truth for the pipeline.
//!
//! Module overview:
//!
//! - [`smallfield`]: table arithmetic for GF(q), q <= 9.
//! - [`matroid`]: basis-family matroids, minors, and minor-pattern detection.
//! - [`pasture`]: finite pastures, their constructions and morphisms.
//! - [`crossratio`]: Omega membership, hexagons of cross ratios, and
//!   Grassmann-Pluecker functions.
//! - [`foundation`]: relation harvesting, monodromy, decomposition and
//!   classification.
//! - [`oracle`]: exhaustive enumeration of representations and rescaling classes.
//! - [`cli`]: the JSON command-line front end.

pub mod bits;
pub mod cli;
pub mod crossratio;
pub mod foundation;
pub mod matroid;
pub mod oracle;
pub mod pasture;
pub mod smallfield;
