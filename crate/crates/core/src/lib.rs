//! Pebbling numbers of snarks: an exact solver, lower-bound constructions
//! and weight-function upper bounds over a built-in corpus.

pub mod bounds;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod lp;
pub mod pebbling;
pub mod retract;
pub mod solver;
pub mod wfl;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use pebbling::{snl_config, Configuration};
pub use solver::{is_solvable, pi, pi_target, Budget, PiOptions, PiResult, SolveResult, Verdict};

/// Exact rational used for every weight and bound.
pub type Rational = num_rational::BigRational;
