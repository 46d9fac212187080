//! Extended precision evaluation of Viro systems, Newton refinement and
//! positive root counts.

pub mod certify;
pub mod newton;
pub mod real;
pub mod system;

pub use certify::{certified_positive_count, CertifiedCount, CountOptions, FacetFailure, Witness};
pub use newton::{newton_refine, NewtonFailure, NewtonOptions, Refined};
pub use real::{default_precision, to_f64, Arith, Real, PRECISION_ENV};
pub use system::{condition_number, Evaluation, LogPoint, NumericSystem};
