//! Numerical checks for Loewner-order inequalities on positive symmetric
//! matrices: spectral functional calculus, operator means, the
//! Mond–Pečarić ratio constants, hypothesis checkers, theorem checkers and a
//! seeded counterexample explorer.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod error;
pub mod explorer;
pub mod functions;
pub mod hypotheses;
pub mod interval;
pub mod matrix;
pub mod means;
pub mod report;
pub mod spectral;
pub mod suite;

pub use error::{Error, Result};
pub use functions::{Family, ScalarFunction};
pub use interval::Interval;
pub use matrix::SymMatrix;
pub use report::InequalityReport;
pub use spectral::{LoewnerVerdict, Relation, SpectralDecomposition};
pub use suite::Suite;
