//! Exact occupancy fractions of the hard-core and monomer-dimer models on
//! regular graphs, the linear programs over local configurations that bound
//! them, and checkers for the explicit dual certificates of those programs.
//!
//! All model quantities are exact rationals. Floating point appears only in
//! display helpers and the monomer entropy table.

pub mod acceptance;
pub mod bounds;
pub mod certificate;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod graph;
pub mod hardcore_lp;
pub mod lp;
pub mod matching_lp;
pub mod polynomials;

pub use error::{Error, Result};
pub use exact::{IntPolynomial, Rational};
pub use graph::Graph;
