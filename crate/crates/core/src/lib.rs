//! Matroid intersection colouring: simplicial complexes and their
//! connectivity, hypergraph minors, matroid intersection, list colouring,
//! and a verification harness tying the bounds together.
//!
//! Sets of elements are bitmasks over `0..64` ([`ElementSet`]).

pub mod bound_engine;
pub mod coloring;
pub mod complex;
pub mod error;
pub mod harness;
pub mod homology;
pub mod hypergraph;
pub mod intersection;
pub mod io;
pub mod limits;
pub mod matroid;
pub mod nu;
pub mod set;

pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use homology::{CoefficientField, EtaValue};
pub use hypergraph::Hypergraph;
pub use limits::Limits;
pub use matroid::Matroid;
pub use num_rational::Ratio;
pub use set::{ElementSet, GroundSet};
