//! Simulation and analysis of pre- and post-selected quantum measurements
//! with tunable-strength von Neumann pointers.
//!
//! The library covers the full pipeline for small Hilbert spaces:
//!
//! * [`qcore`] — states, unitaries, orthonormal bases and observables;
//! * [`amplitudes`] — two-step and three-step transition amplitude tables;
//! * [`values`] — closed-form conditional values: accurate (ABL) means,
//!   complex weak values, and linear response to impulsive perturbations;
//! * [`pointer`] — exact joint outcome distributions `P(F_i, f)` for a
//!   pointer of arbitrary width, with conditional/unconditional mean
//!   readings, the momentum readout, and quadrature on explicit grids;
//! * [`scenarios`] — builders for the named constructions (two-level spin,
//!   three-path cancellation, interference-free baseline), random chains,
//!   and JSON scenario files;
//! * [`montecarlo`] — deterministic seeded sampling of individual trials
//!   from the exact joint density and the statistical estimators.
//!
//! All numerics are generic over the scalar type through [`scalar::Scalar`]
//! (`f64` is the reference precision; `f32` works with proportionally looser
//! validation tolerances). The aliases below fix the common concrete types.

pub mod amplitudes;
pub mod error;
pub mod montecarlo;
pub mod pointer;
pub mod qcore;
pub mod scalar;
pub mod scenarios;
pub mod values;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use num_complex::Complex;

/// Double-precision complex amplitude.
pub type C64 = Complex<f64>;
/// Single-precision complex amplitude.
pub type C32 = Complex<f32>;

/// Double-precision concrete types (the reference precision).
pub type StateVector64 = qcore::StateVector<f64>;
pub type UnitaryMatrix64 = qcore::UnitaryMatrix<f64>;
pub type Basis64 = qcore::Basis<f64>;
pub type Observable64 = qcore::Observable<f64>;
pub type MeasurementChain64 = amplitudes::MeasurementChain<f64>;
pub type PathAmplitudeTable64 = amplitudes::PathAmplitudeTable<f64>;
pub type PointerProfile64 = pointer::PointerProfile<f64>;
pub type QuadratureGrid64 = pointer::QuadratureGrid<f64>;
pub type JointDistribution64 = pointer::JointDistribution<f64>;
pub type Scenario64 = scenarios::Scenario<f64>;
pub type McEstimate64 = montecarlo::McEstimate<f64>;

/// Single-precision core types.
pub type StateVector32 = qcore::StateVector<f32>;
pub type UnitaryMatrix32 = qcore::UnitaryMatrix<f32>;
pub type Basis32 = qcore::Basis<f32>;
pub type Observable32 = qcore::Observable<f32>;
pub type MeasurementChain32 = amplitudes::MeasurementChain<f32>;
