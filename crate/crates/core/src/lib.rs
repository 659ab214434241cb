//! Exact computational algebra for framed chord diagrams and framed graphs.
//!
//! The crate realizes two quotient vector spaces as explicit linear algebra
//! over the rationals:
//!
//! * `M` — the space spanned by framed chord diagrams modulo the framed
//!   four-term relations, a Hopf module over the algebra `A` of ordinary
//!   chord diagrams;
//! * `H` — the space spanned by framed graphs modulo the framed graph
//!   four-term relations, a Hopf module over the graph algebra `G`.
//!
//! On top of the quotients it provides the structure maps (products,
//! coproducts, comodule maps, antipode), the intersection-graph map between
//! the two worlds, the framed chromatic polynomial, framed weight-system
//! constructors, and a reduction algorithm rewriting arbitrary elements as
//! combinations of black-by-white products.
//!
//! All arithmetic is exact: rational elimination for small orders, with
//! multi-prime modular ranks (certified by agreement across primes) for the
//! largest tables.

pub mod chromatic;
pub mod diagram;
pub mod dimensions;
pub mod error;
pub mod graph;
pub mod hopf;
pub mod intersection;
pub mod linalg;
pub mod lincomb;
pub mod reduction;
pub mod relations;
pub mod verify;

pub use chromatic::{classical_chromatic_oracle, framed_chromatic, BivarPoly, ChromaticEngine};
pub use diagram::FramedChordDiagram;
pub use dimensions::{Config, DimensionReport, SpaceTag};
pub use error::{Error, Result};
pub use graph::{FramedGraph, FramedMultigraph};
pub use intersection::intersection_graph;
pub use linalg::SparseExactMatrix;
pub use lincomb::LinComb;
pub use relations::RelationSet;

/// Exact rational scalar used throughout the crate.
pub type Q = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(num_bigint::BigInt::from(n))
}

/// Shorthand for a rational `n/d`.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(num_bigint::BigInt::from(n), num_bigint::BigInt::from(d))
}
