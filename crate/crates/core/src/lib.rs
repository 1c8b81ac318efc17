//! Clifford algebra, so(n) representations and conformally invariant
//! first-order operators, in exact and floating-point arithmetic.

pub mod error;
pub mod flatfield;
pub mod linalg;
pub mod multivector;
pub mod rarita;
pub mod represent;
pub mod sampling;
pub mod scalar;
pub mod spinor;
pub mod suite;

pub use error::{Error, Result};
pub use linalg::{Check, Defect, Matrix};
pub use multivector::{Metric, Multivector, Vector};
pub use num_complex::Complex64;
pub use scalar::{ComplexScalar, ExtIS2, QSqrt2, Rational, Scalar, ScalarMode};
pub use suite::{Perturbation, Report};
