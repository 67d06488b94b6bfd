//! Computational laboratory for local groupoids.
//!
//! The crate has six parts:
//!
//! - [`geometry`]: spherical primitives (signed triangle areas, geodesic
//!   midpoints, the inscribed-tetrahedron fixture, triangulated simplices).
//! - [`groupoid`]: the partial-groupoid contract, finite table-backed
//!   groupoids with axiom validation, n-associativity checks, and a JSON
//!   file format.
//! - [`sphere`]: parametric groupoids of geodesic arrows on the sphere
//!   carrying an area coordinate, in reduced (mod 4π), windowed, and
//!   λ-coupled product flavors.
//! - [`ladder`]: a planar local group built from vector-field flows on a
//!   thickened ladder, with non-discrete associators.
//! - [`words`]: word calculus over any groupoid: parenthesization trees,
//!   contraction/expansion rewriting, bounded equivalence search, and
//!   associator detection.
//! - [`complexes`]: good 2-complexes built by expansion/contraction moves,
//!   boundary-path analysis, nerve maps, and the lace-sequence
//!   generator/verifier over triangulated simplices.
//! - [`exterior`]: exact exterior algebra on few generators with
//!   univariate rational-polynomial coefficients.

pub mod complexes;
pub mod exterior;
pub mod geometry;
pub mod groupoid;
pub mod ladder;
pub mod sphere;
pub mod words;
