//! Power deformations `K_c[f](z) = z (f(z)/z)^c` of normalized analytic
//! functions on the unit disk, the related integral operators, and numerical
//! checks of which exponents preserve univalence and spirallikeness.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod deform;
pub mod error;
pub mod function;
pub mod grid;
pub mod phase;
pub mod predicates;
pub mod quad;
pub mod region;
pub mod series;
pub mod verify;
pub mod zoo;

pub use error::{Error, Result};
pub use function::{AnalyticFunction, ExactEval};
pub use num_complex::Complex64;
pub use series::PowerSeries;
