//! Closed-form conditional values for pre/post-selected chains.
//!
//! The accurate-pointer mean is the probability-weighted average over
//! resolved paths (the Aharonov-Bergmann-Lebowitz value); the inaccurate
//! weak-pointer mean is the complex amplitude-weighted ratio. Both are
//! computed directly from a [`PathAmplitudeTable`] so the pointer quadrature
//! can be checked against them independently.

use num_complex::Complex;

use crate::amplitudes::{MeasurementChain, PathAmplitudeTable};
use crate::error::{Error, Result};
use crate::qcore::Observable;
use crate::scalar::Scalar;

/// Accurate (strong) conditional mean of an observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AblResult<T> {
    /// `Σ_j B_j |A_ij|^2 / Σ_j |A_ij|^2`; always within the eigenvalue range.
    pub value: T,
    /// Strong-measurement post-selection probability `Σ_j |A_ij|^2`.
    pub postselection_probability: T,
}

/// Complex weak value with divergence diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakValueResult<T> {
    /// `Σ_j B_j A_ij / Σ_j A_ij`; zero when `diverged` is set.
    pub value: Complex<T>,
    /// `|Σ_j A_ij|`, the magnitude of the renormalizing denominator.
    pub denominator_magnitude: T,
    /// Set when the denominator vanishes relative to `Σ_j |A_ij|` (dark
    /// final state); the weak value has no finite limit there.
    pub diverged: bool,
}

impl<T: Scalar> WeakValueResult<T> {
    /// The value when finite.
    pub fn finite(&self) -> Option<Complex<T>> {
        if self.diverged {
            None
        } else {
            Some(self.value)
        }
    }
}

/// Exact and first-order response of a detection probability to an
/// impulsive perturbation inserted at the intermediate time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseResult<T> {
    /// Unperturbed detection probability `P0 = |A(F_i <- I)|^2`.
    pub p0: T,
    /// `|<F_i|U(t2,t1) e^{-iV} U(t1)|I>|^2 - P0`, with the exact kick.
    pub delta_p_exact: T,
    /// First-order prediction `2 P0 Im<V>_W`.
    pub first_order_prediction: T,
}

fn check_index<T: Scalar>(table: &PathAmplitudeTable<T>, i: usize) -> Result<()> {
    if i >= table.dim() {
        return Err(Error::IndexOutOfRange {
            index: i,
            dim: table.dim(),
        });
    }
    Ok(())
}

fn check_eigenvalues<T: Scalar>(table: &PathAmplitudeTable<T>, eigenvalues: &[T]) -> Result<()> {
    if eigenvalues.len() != table.dim() {
        return Err(Error::DimensionMismatch {
            expected: table.dim(),
            got: eigenvalues.len(),
        });
    }
    Ok(())
}

/// Accurate conditional mean of `B` for final state `i` (the ABL rule).
///
/// Errors when the strong post-selection probability vanishes.
pub fn abl_value<T: Scalar>(
    table: &PathAmplitudeTable<T>,
    eigenvalues: &[T],
    i: usize,
) -> Result<AblResult<T>> {
    check_index(table, i)?;
    check_eigenvalues(table, eigenvalues)?;
    let mut weight = T::zero();
    let mut weighted = T::zero();
    for (a, &b) in table.row(i).iter().zip(eigenvalues) {
        let p = a.norm_sqr();
        weight += p;
        weighted += b * p;
    }
    if weight <= T::dark_tol() {
        return Err(Error::DarkFinalState {
            index: i,
            probability: weight.to_f64().unwrap_or(0.0),
        });
    }
    Ok(AblResult {
        value: weighted / weight,
        postselection_probability: weight,
    })
}

/// Complex weak value of `B` for final state `i`.
///
/// Divergence (a dark final state) sets the flag instead of erroring so that
/// strength sweeps can record it.
pub fn weak_value<T: Scalar>(
    table: &PathAmplitudeTable<T>,
    eigenvalues: &[T],
    i: usize,
) -> Result<WeakValueResult<T>> {
    check_index(table, i)?;
    check_eigenvalues(table, eigenvalues)?;
    let zero = Complex::new(T::zero(), T::zero());
    let denominator = table.row_sum(i);
    let scale = table.row_abs_sum(i);
    let denominator_magnitude = denominator.norm();
    let diverged = scale == T::zero() || denominator_magnitude < T::divergence_tol() * scale;
    let value = if diverged {
        zero
    } else {
        let numerator = table
            .row(i)
            .iter()
            .zip(eigenvalues)
            .fold(zero, |acc, (a, &b)| acc + *a * b);
        numerator / denominator
    };
    Ok(WeakValueResult {
        value,
        denominator_magnitude,
        diverged,
    })
}

/// Weak values of all N projectors `π_j` for final state `i`: the
/// renormalized path amplitudes `A_ij / Σ_k A_ik`. They sum to 1 when the
/// denominator does not vanish.
pub fn projector_weak_values<T: Scalar>(
    table: &PathAmplitudeTable<T>,
    i: usize,
) -> Result<Vec<WeakValueResult<T>>> {
    check_index(table, i)?;
    let denominator = table.row_sum(i);
    let scale = table.row_abs_sum(i);
    let denominator_magnitude = denominator.norm();
    let diverged = scale == T::zero() || denominator_magnitude < T::divergence_tol() * scale;
    let zero = Complex::new(T::zero(), T::zero());
    Ok(table
        .row(i)
        .iter()
        .map(|a| WeakValueResult {
            value: if diverged { zero } else { *a / denominator },
            denominator_magnitude,
            diverged,
        })
        .collect())
}

/// Response of the detection probability of final state `i` to an impulsive
/// perturbation `V` (diagonal in the chain's mid basis) at the intermediate
/// time.
///
/// The exact change uses the full kick `e^{-iV}`; the prediction is the
/// leading-order expression `2 P0 Im<V>_W`.
pub fn linear_response<T: Scalar>(
    chain: &MeasurementChain<T>,
    v: &Observable<T>,
    i: usize,
) -> Result<ResponseResult<T>> {
    if v.dim() != chain.dim() {
        return Err(Error::DimensionMismatch {
            expected: chain.dim(),
            got: v.dim(),
        });
    }
    let basis_gap = chain.mid_basis().max_distance(v.basis())?;
    if basis_gap > T::ortho_reject_tol() {
        return Err(Error::invalid_param(
            "perturbation",
            "observable must be diagonal in the chain's mid basis",
        ));
    }
    let unperturbed = chain.two_step_amplitude(i)?;
    let p0 = unperturbed.norm_sqr();
    if p0 <= T::dark_tol() {
        return Err(Error::VanishingProbability {
            probability: p0.to_f64().unwrap_or(0.0),
        });
    }

    let kick = v.impulsive_kick()?;
    let kicked = chain
        .u21()
        .apply(&kick.apply(&chain.u1().apply(chain.initial())?)?)?;
    let perturbed = crate::qcore::inner(chain.final_basis().vector(i), &kicked)?;
    let delta_p_exact = perturbed.norm_sqr() - p0;

    let table = chain.path_table()?;
    let wv = weak_value(&table, v.eigenvalues(), i)?;
    let two = T::of(2.0);
    let first_order_prediction = two * p0 * wv.value.im;

    Ok(ResponseResult {
        p0,
        delta_p_exact,
        first_order_prediction,
    })
}
