//! Floating-point scalar abstraction.
//!
//! All core math is generic over [`Scalar`], so states, amplitude tables and
//! pointer distributions work for both `f32` and `f64`. Validation tolerances
//! scale with the precision of the scalar; the `f64` values are the reference
//! ones used throughout the test suite.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar usable for amplitudes, densities and readings.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Normalization defect accepted after construction/renormalization.
    fn norm_tol() -> Self;
    /// Entrywise tolerance for well-formed unitaries and orthonormal bases.
    fn ortho_tol() -> Self;
    /// Entrywise defect above which a matrix or basis is rejected outright.
    fn ortho_reject_tol() -> Self;
    /// Largest input normalization defect that is quietly renormalized.
    /// Anything worse is treated as a user mistake and rejected.
    fn input_norm_tol() -> Self;
    /// Post-selection probabilities at or below this count as dark.
    fn dark_tol() -> Self;
    /// Relative threshold on |Σ amplitudes| below which a weak value is
    /// flagged as diverged.
    fn divergence_tol() -> Self;
    /// Joint-distribution normalization defect above this is a quadrature
    /// failure.
    fn defect_tol() -> Self;

    /// Converts an `f64` literal. Panics if the value is not representable,
    /// which cannot happen for the in-range constants used by this crate.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable in scalar type")
    }
}

impl Scalar for f64 {
    fn norm_tol() -> Self {
        1e-12
    }
    fn ortho_tol() -> Self {
        1e-10
    }
    fn ortho_reject_tol() -> Self {
        1e-8
    }
    fn input_norm_tol() -> Self {
        1e-6
    }
    fn dark_tol() -> Self {
        1e-12
    }
    fn divergence_tol() -> Self {
        1e-10
    }
    fn defect_tol() -> Self {
        1e-6
    }
}

impl Scalar for f32 {
    fn norm_tol() -> Self {
        1e-5
    }
    fn ortho_tol() -> Self {
        1e-4
    }
    fn ortho_reject_tol() -> Self {
        1e-3
    }
    fn input_norm_tol() -> Self {
        1e-3
    }
    fn dark_tol() -> Self {
        1e-9
    }
    fn divergence_tol() -> Self {
        1e-5
    }
    fn defect_tol() -> Self {
        1e-3
    }
}

/// `e^{iθ}` as a complex scalar.
pub fn phase<T: Scalar>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}
