//! The von Neumann pointer at arbitrary measurement strength.
//!
//! The composite {system + pointer} transition amplitude for final state
//! `F_i` and reading `f` is
//!
//! ```text
//! A(F_i, f) = Σ_j G(f - β B_j) A(F_i <- b_j <- I)
//! ```
//!
//! and the joint density is its absolute square. All distribution-level
//! quantities (post-selection probabilities, conditional and unconditional
//! mean readings, marginals) are computed from this density by composite
//! Simpson quadrature on an explicit grid; the strong and weak limits are
//! explored by sweeping the width `Δf`, never taken symbolically.

mod grid;
mod profile;

pub use grid::{QuadratureGrid, MAX_POINTS, MIN_POINTS};
pub use profile::PointerProfile;

use num_complex::Complex;

use crate::amplitudes::{MeasurementChain, PathAmplitudeTable};
use crate::error::{Error, Result};
use crate::qcore::{inner, Observable, StateVector, UnitaryMatrix};
use crate::scalar::Scalar;

/// Gridded joint density `P(F_i, f)` with quadrature metadata.
#[derive(Debug, Clone)]
pub struct JointDistribution<T: Scalar> {
    dim: usize,
    grid: QuadratureGrid<T>,
    /// Pointer shifts `β B_j` per mid-basis index.
    shifts: Vec<T>,
    /// Row-major density, one row of `grid.points()` samples per final state.
    density: Vec<T>,
    /// `|Σ_i ∫ P(F_i, f) df - 1|` as measured on the grid.
    norm_defect: T,
    /// `∫ P(F_i, f) df` per final state.
    probabilities: Vec<T>,
}

impl<T: Scalar> JointDistribution<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grid(&self) -> &QuadratureGrid<T> {
        &self.grid
    }

    pub fn norm_defect(&self) -> T {
        self.norm_defect
    }

    /// Pointer shifts `β B_j` the distribution was built with.
    pub fn shifts(&self) -> &[T] {
        &self.shifts
    }

    /// Density samples for final state `i`.
    pub fn density_row(&self, i: usize) -> Result<&[T]> {
        self.check_index(i)?;
        let n = self.grid.points();
        Ok(&self.density[i * n..(i + 1) * n])
    }

    /// `P(F_i) = ∫ P(F_i, f) df`, the post-selection probability at this
    /// strength.
    pub fn postselection_probability(&self, i: usize) -> Result<T> {
        self.check_index(i)?;
        Ok(self.probabilities[i])
    }

    /// Marginal `P(f) = Σ_i P(F_i, f)` on the grid.
    pub fn marginal(&self) -> Vec<T> {
        let n = self.grid.points();
        let mut out = vec![T::zero(); n];
        for i in 0..self.dim {
            for (k, slot) in out.iter_mut().enumerate() {
                *slot += self.density[i * n + k];
            }
        }
        out
    }

    /// Mean reading conditional on post-selecting `F_i`.
    ///
    /// Errors when the post-selection probability is dark.
    pub fn conditional_mean_reading(&self, i: usize) -> Result<T> {
        self.check_index(i)?;
        let p = self.probabilities[i];
        if p <= T::dark_tol() {
            return Err(Error::DarkFinalState {
                index: i,
                probability: p.to_f64().unwrap_or(0.0),
            });
        }
        let weighted = self.grid.integrate_weighted(self.density_row(i)?)?;
        Ok(weighted / p)
    }

    /// `∫ f P(F_i, f) df`: the average reading normalized by total trials
    /// rather than by successful post-selections.
    pub fn unconditional_mean_reading(&self, i: usize) -> Result<T> {
        self.check_index(i)?;
        self.grid.integrate_weighted(self.density_row(i)?)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim,
            });
        }
        Ok(())
    }
}

/// Pointer shifts `β B_j` for an observable measured with a profile.
fn shifts<T: Scalar>(observable: &Observable<T>, profile: &PointerProfile<T>) -> Vec<T> {
    observable
        .eigenvalues()
        .iter()
        .map(|&b| profile.coupling() * b)
        .collect()
}

/// Largest gap between distinct pointer shifts (0 when all coincide).
fn max_shift_gap<T: Scalar>(shifts: &[T]) -> T {
    let mut lo = shifts[0];
    let mut hi = shifts[0];
    for &s in shifts {
        lo = lo.min(s);
        hi = hi.max(s);
    }
    hi - lo
}

/// Composite amplitude `A(F_i, f) = Σ_j G(f - β B_j) A_ij`.
pub fn composite_amplitude<T: Scalar>(
    table: &PathAmplitudeTable<T>,
    profile: &PointerProfile<T>,
    eigenvalues: &[T],
    i: usize,
    f: T,
) -> Result<Complex<T>> {
    if i >= table.dim() {
        return Err(Error::IndexOutOfRange {
            index: i,
            dim: table.dim(),
        });
    }
    if eigenvalues.len() != table.dim() {
        return Err(Error::DimensionMismatch {
            expected: table.dim(),
            got: eigenvalues.len(),
        });
    }
    let beta = profile.coupling();
    let mut acc = Complex::new(T::zero(), T::zero());
    for (a, &b) in table.row(i).iter().zip(eigenvalues) {
        acc += *a * profile.amplitude(f - beta * b);
    }
    Ok(acc)
}

fn check_observable_basis<T: Scalar>(
    chain: &MeasurementChain<T>,
    observable: &Observable<T>,
) -> Result<()> {
    let gap = chain.mid_basis().max_distance(observable.basis())?;
    if gap > T::ortho_reject_tol() {
        return Err(Error::invalid_param(
            "observable",
            "must be diagonal in the chain's mid basis",
        ));
    }
    Ok(())
}

/// Builds the joint density `P(F_i, f) = |A(F_i, f)|²` of a chain measured
/// by `observable` with a pointer `profile`, on `grid`.
///
/// The observable must be diagonal in the chain's mid basis, the grid must
/// cover every shifted packet, and the result is rejected when the measured
/// normalization defect exceeds the quadrature tolerance.
pub fn joint_distribution<T: Scalar>(
    chain: &MeasurementChain<T>,
    observable: &Observable<T>,
    profile: &PointerProfile<T>,
    grid: QuadratureGrid<T>,
) -> Result<JointDistribution<T>> {
    if observable.dim() != chain.dim() {
        return Err(Error::DimensionMismatch {
            expected: chain.dim(),
            got: observable.dim(),
        });
    }
    check_observable_basis(chain, observable)?;
    let table = chain.path_table()?;
    let shifts = shifts(observable, profile);
    let pad = T::of(8.0) * profile.width();
    let lo = shifts.iter().fold(shifts[0], |a, &b| a.min(b)) - pad;
    let hi = shifts.iter().fold(shifts[0], |a, &b| a.max(b)) + pad;
    if !grid.covers(lo, hi) {
        return Err(Error::invalid_param(
            "grid span",
            format!(
                "grid [{}, {}] does not cover the shifted packets (need [{}, {}])",
                grid.f_min().to_f64().unwrap_or(f64::NAN),
                grid.f_max().to_f64().unwrap_or(f64::NAN),
                lo.to_f64().unwrap_or(f64::NAN),
                hi.to_f64().unwrap_or(f64::NAN),
            ),
        ));
    }

    let dim = chain.dim();
    let n = grid.points();
    let mut density = vec![T::zero(); dim * n];
    let mut packets = vec![T::zero(); dim];
    for k in 0..n {
        let f = grid.value(k);
        for (g, &shift) in packets.iter_mut().zip(&shifts) {
            *g = profile.amplitude(f - shift);
        }
        for i in 0..dim {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (a, &g) in table.row(i).iter().zip(&packets) {
                acc += *a * g;
            }
            density[i * n + k] = acc.norm_sqr();
        }
    }

    let mut probabilities = Vec::with_capacity(dim);
    for i in 0..dim {
        probabilities.push(grid.integrate(&density[i * n..(i + 1) * n])?);
    }
    let total: T = probabilities.iter().fold(T::zero(), |a, &b| a + b);
    let norm_defect = (total - T::one()).abs();
    if norm_defect > T::defect_tol() {
        return Err(Error::GridTooCoarse {
            defect: norm_defect.to_f64().unwrap_or(f64::NAN),
            tolerance: T::defect_tol().to_f64().unwrap_or(f64::NAN),
        });
    }

    Ok(JointDistribution {
        dim,
        grid,
        shifts,
        density,
        norm_defect,
        probabilities,
    })
}

/// Joint distribution on an automatically sized grid.
pub fn joint_distribution_auto<T: Scalar>(
    chain: &MeasurementChain<T>,
    observable: &Observable<T>,
    profile: &PointerProfile<T>,
) -> Result<JointDistribution<T>> {
    let grid = QuadratureGrid::auto(&shifts(observable, profile), profile.width())?;
    joint_distribution(chain, observable, profile, grid)
}

/// Mean pointer momentum conditional on post-selecting `F_i`.
///
/// Works in the momentum representation, where the shift by `β B_j` becomes
/// the phase `e^{-i λ β B_j}`; in the weak regime the result tends to
/// `2 ∫ λ² G(λ)² dλ · Im<B>_W`.
pub fn momentum_mean_reading<T: Scalar>(
    chain: &MeasurementChain<T>,
    observable: &Observable<T>,
    profile: &PointerProfile<T>,
    i: usize,
) -> Result<T> {
    if observable.dim() != chain.dim() {
        return Err(Error::DimensionMismatch {
            expected: chain.dim(),
            got: observable.dim(),
        });
    }
    if i >= chain.dim() {
        return Err(Error::IndexOutOfRange {
            index: i,
            dim: chain.dim(),
        });
    }
    check_observable_basis(chain, observable)?;
    let table = chain.path_table()?;
    let shifts = shifts(observable, profile);
    let grid = profile.momentum_grid(max_shift_gap(&shifts))?;
    let n = grid.points();
    let row = table.row(i);

    let mut density = vec![T::zero(); n];
    for (k, slot) in density.iter_mut().enumerate() {
        let lambda = grid.value(k);
        let envelope = profile.momentum_amplitude(lambda)?;
        let mut acc = Complex::new(T::zero(), T::zero());
        for (a, &shift) in row.iter().zip(&shifts) {
            let phase = Complex::new((lambda * shift).cos(), -(lambda * shift).sin());
            acc += *a * phase;
        }
        *slot = envelope * envelope * acc.norm_sqr();
    }

    let p = grid.integrate(&density)?;
    if p <= T::dark_tol() {
        return Err(Error::DarkFinalState {
            index: i,
            probability: p.to_f64().unwrap_or(0.0),
        });
    }
    Ok(grid.integrate_weighted(&density)? / p)
}

/// Two-step reading density `P(f) = Σ_i G²(f - β B_i) P(F_i <- I)` for a
/// system prepared in `initial`, evolved by `u`, and measured once in the
/// observable's eigenbasis.
///
/// Its mean reading is `β Σ_i B_i P(F_i <- I)` at any width.
pub fn two_step_distribution<T: Scalar>(
    initial: &StateVector<T>,
    u: &UnitaryMatrix<T>,
    observable: &Observable<T>,
    profile: &PointerProfile<T>,
    grid: &QuadratureGrid<T>,
) -> Result<Vec<T>> {
    if u.dim() != initial.dim() || observable.dim() != initial.dim() {
        return Err(Error::DimensionMismatch {
            expected: initial.dim(),
            got: u.dim().max(observable.dim()),
        });
    }
    let evolved = u.apply(initial)?;
    let probabilities: Vec<T> = (0..initial.dim())
        .map(|i| Ok(inner(observable.basis().vector(i), &evolved)?.norm_sqr()))
        .collect::<Result<_>>()?;
    let beta = profile.coupling();
    let n = grid.points();
    let mut density = vec![T::zero(); n];
    for (i, &p) in probabilities.iter().enumerate() {
        let shift = beta * observable.eigenvalues()[i];
        for (k, slot) in density.iter_mut().enumerate() {
            let g = profile.amplitude(grid.value(k) - shift);
            *slot += g * g * p;
        }
    }
    Ok(density)
}

/// Mean reading of a density on a grid (`∫ f ρ df / ∫ ρ df`).
pub fn mean_reading<T: Scalar>(grid: &QuadratureGrid<T>, density: &[T]) -> Result<T> {
    let mass = grid.integrate(density)?;
    if mass <= T::dark_tol() {
        return Err(Error::VanishingProbability {
            probability: mass.to_f64().unwrap_or(0.0),
        });
    }
    Ok(grid.integrate_weighted(density)? / mass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::Basis;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn trivial_chain() -> MeasurementChain<f64> {
        MeasurementChain::new(
            StateVector::basis_state(1, 0).unwrap(),
            None,
            None,
            Basis::computational(1).unwrap(),
            Basis::computational(1).unwrap(),
        )
        .unwrap()
    }

    /// Two interfering paths with real amplitudes 0.8 and 0.6 into F1.
    fn two_path_chain() -> MeasurementChain<f64> {
        let mid = Basis::computational(2).unwrap();
        let fin = Basis::new(vec![
            StateVector::new(vec![c(0.8, 0.0), c(0.6, 0.0)]).unwrap(),
            StateVector::new(vec![c(-0.6, 0.0), c(0.8, 0.0)]).unwrap(),
        ])
        .unwrap();
        MeasurementChain::new(
            StateVector::new(vec![c(0.8, 0.0), c(0.6, 0.0)]).unwrap(),
            None,
            None,
            mid,
            fin,
        )
        .unwrap()
    }

    #[test]
    fn composite_amplitude_unshifted_profile_factors_out() {
        let chain = two_path_chain();
        let table = chain.path_table().unwrap();
        let profile = PointerProfile::gaussian(1.0).unwrap();
        for f in [-0.3, 0.0, 0.9] {
            let amp = composite_amplitude(&table, &profile, &[0.0, 0.0], 0, f).unwrap();
            let expected = table.row_sum(0) * profile.amplitude(f);
            assert_abs_diff_eq!((amp - expected).norm(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn composite_amplitude_single_path_is_shifted_packet() {
        let table = PathAmplitudeTable::from_entries(
            2,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        let profile = PointerProfile::gaussian(0.5).unwrap();
        let b = 1.7;
        for f in [0.0, 1.0, 2.0] {
            let amp = composite_amplitude(&table, &profile, &[b, 0.0], 0, f).unwrap();
            assert_abs_diff_eq!(amp.re, profile.amplitude(f - b), epsilon = 1e-15);
            assert_abs_diff_eq!(amp.im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn composite_amplitude_two_paths_sum() {
        let chain = two_path_chain();
        let table = chain.path_table().unwrap();
        let profile = PointerProfile::gaussian(0.8).unwrap();
        let f = 0.4;
        let amp = composite_amplitude(&table, &profile, &[1.0, 0.0], 0, f).unwrap();
        let expected = table.entry(0, 0) * profile.amplitude(f - 1.0)
            + table.entry(0, 1) * profile.amplitude(f);
        assert_abs_diff_eq!((amp - expected).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn trivial_joint_distribution_is_shifted_packet_square() {
        let chain = trivial_chain();
        let observable = Observable::new(Basis::computational(1).unwrap(), vec![2.0]).unwrap();
        let profile = PointerProfile::gaussian(0.3).unwrap();
        let jd = joint_distribution_auto(&chain, &observable, &profile).unwrap();
        assert!(jd.norm_defect() < 1e-10);
        assert_abs_diff_eq!(
            jd.postselection_probability(0).unwrap(),
            1.0,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            jd.conditional_mean_reading(0).unwrap(),
            2.0,
            epsilon = 1e-10
        );
        let mid = jd.grid().values()[jd.grid().points() / 2];
        let row = jd.density_row(0).unwrap();
        let g = profile.amplitude(mid - 2.0);
        assert_abs_diff_eq!(row[jd.grid().points() / 2], g * g, epsilon = 1e-12);
    }

    #[test]
    fn equal_eigenvalues_shift_rigidly() {
        let chain = two_path_chain();
        let observable = Observable::new(chain.mid_basis().clone(), vec![1.25, 1.25]).unwrap();
        for width in [0.05, 1.0, 40.0] {
            let profile = PointerProfile::gaussian(width).unwrap();
            let jd = joint_distribution_auto(&chain, &observable, &profile).unwrap();
            assert_abs_diff_eq!(
                jd.conditional_mean_reading(0).unwrap(),
                1.25,
                epsilon = 1e-8
            );
            // A degenerate observable never destroys interference, so the
            // destructively interfering final state stays dark at every
            // width. Its amplitudes are (-0.48, 0.48).
            assert!(matches!(
                jd.conditional_mean_reading(1),
                Err(Error::DarkFinalState { .. })
            ));
        }
    }

    #[test]
    fn zero_amplitude_path_gives_zero_unconditional_mean() {
        // F2 reachable only through b2 with eigenvalue 0: readings centred
        // at zero at every strength.
        let mid = Basis::computational(2).unwrap();
        let fin = Basis::computational(2).unwrap();
        let chain = MeasurementChain::new(
            StateVector::new(vec![c(0.6, 0.0), c(0.8, 0.0)]).unwrap(),
            None,
            None,
            mid.clone(),
            fin,
        )
        .unwrap();
        let observable = Observable::new(mid, vec![3.0, 0.0]).unwrap();
        for width in [0.01, 1.0, 100.0] {
            let profile = PointerProfile::gaussian(width).unwrap();
            let jd = joint_distribution_auto(&chain, &observable, &profile).unwrap();
            assert_abs_diff_eq!(
                jd.unconditional_mean_reading(1).unwrap(),
                0.0,
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn marginal_matches_two_step_distribution() {
        let chain = two_path_chain();
        let observable = Observable::new(chain.mid_basis().clone(), vec![1.0, -1.0]).unwrap();
        let profile = PointerProfile::gaussian(0.7).unwrap();
        let jd = joint_distribution_auto(&chain, &observable, &profile).unwrap();
        let marginal = jd.marginal();
        let erased = two_step_distribution(
            chain.initial(),
            chain.u1(),
            &observable,
            &profile,
            jd.grid(),
        )
        .unwrap();
        for (a, b) in marginal.iter().zip(&erased) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn strong_regime_humps_carry_path_weights() {
        let chain = two_path_chain();
        let table = chain.path_table().unwrap();
        let observable = Observable::new(chain.mid_basis().clone(), vec![1.0, 0.0]).unwrap();
        let profile = PointerProfile::gaussian(0.005).unwrap();
        let jd = joint_distribution_auto(&chain, &observable, &profile).unwrap();
        let grid = jd.grid();
        let row = jd.density_row(0).unwrap();
        // Integrate each hump over +-5 widths using a sub-grid.
        for (j, centre) in [(0usize, 1.0f64), (1, 0.0)] {
            let lo = centre - 5.0 * 0.005;
            let hi = centre + 5.0 * 0.005;
            let mut start = 0;
            while grid.value(start) < lo {
                start += 1;
            }
            let mut end = start;
            while end + 1 < grid.points() && grid.value(end + 1) <= hi {
                end += 1;
            }
            if (end - start) % 2 == 1 {
                end -= 1;
            }
            let h = grid.step();
            let mut acc = row[start] + row[end];
            for (offset, &s) in row[start + 1..end].iter().enumerate() {
                acc += if offset % 2 == 0 { 4.0 * s } else { 2.0 * s };
            }
            let mass = acc * h / 3.0;
            assert_abs_diff_eq!(mass, table.entry(0, j).norm_sqr(), epsilon = 1e-6);
        }
    }

    #[test]
    fn coarse_grid_rejected() {
        let chain = two_path_chain();
        let observable = Observable::new(chain.mid_basis().clone(), vec![1.0, 0.0]).unwrap();
        let profile = PointerProfile::gaussian(1e-3).unwrap();
        // Wide span with the minimum point count cannot resolve the packets.
        let grid = QuadratureGrid::new(-10.0, 11.0, MIN_POINTS).unwrap();
        let err = joint_distribution(&chain, &observable, &profile, grid);
        assert!(matches!(err, Err(Error::GridTooCoarse { .. })));
    }

    #[test]
    fn grid_must_cover_packets() {
        let chain = two_path_chain();
        let observable = Observable::new(chain.mid_basis().clone(), vec![5.0, 0.0]).unwrap();
        let profile = PointerProfile::gaussian(1.0).unwrap();
        let grid = QuadratureGrid::new(-4.0, 4.0, 1025).unwrap();
        assert!(joint_distribution(&chain, &observable, &profile, grid).is_err());
    }

    #[test]
    fn dark_final_state_errors_conditionally_only() {
        // I aligned with b1 and final basis = mid basis: F2 is unreachable.
        let mid = Basis::computational(2).unwrap();
        let chain = MeasurementChain::new(
            StateVector::basis_state(2, 0).unwrap(),
            None,
            None,
            mid.clone(),
            mid.clone(),
        )
        .unwrap();
        let observable = Observable::new(mid, vec![1.0, 0.0]).unwrap();
        let profile = PointerProfile::gaussian(0.5).unwrap();
        let jd = joint_distribution_auto(&chain, &observable, &profile).unwrap();
        assert!(matches!(
            jd.conditional_mean_reading(1),
            Err(Error::DarkFinalState { .. })
        ));
        // The unconditional mean is still defined (and zero).
        assert_abs_diff_eq!(
            jd.unconditional_mean_reading(1).unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn momentum_mean_vanishes_for_real_weak_value() {
        // All amplitudes real => Im<B>_W = 0 => weak momentum mean ~ 0.
        let chain = two_path_chain();
        let observable = Observable::new(chain.mid_basis().clone(), vec![1.0, 0.0]).unwrap();
        let profile = PointerProfile::gaussian(1000.0).unwrap();
        let m = momentum_mean_reading(&chain, &observable, &profile, 0).unwrap();
        assert_abs_diff_eq!(m, 0.0, epsilon = 1e-6);
    }

    #[test]
    fn two_step_mean_independent_of_width() {
        let initial = StateVector::new(vec![c(0.6, 0.0), c(0.8, 0.0)]).unwrap();
        let u = UnitaryMatrix::identity(2).unwrap();
        let basis = Basis::new(vec![
            StateVector::new(vec![c(0.8, 0.0), c(0.6, 0.0)]).unwrap(),
            StateVector::new(vec![c(-0.6, 0.0), c(0.8, 0.0)]).unwrap(),
        ])
        .unwrap();
        let observable = Observable::new(basis, vec![1.0, 0.0]).unwrap();
        // P(F1 <- I) = (0.8*0.6 + 0.6*0.8)^2 = 0.9216, so the mean reading
        // is 0.9216 regardless of the pointer width.
        let expected = 0.96f64 * 0.96;
        let mut means = Vec::new();
        for width in [0.01, 1.0, 100.0] {
            let profile = PointerProfile::gaussian(width).unwrap();
            let grid = QuadratureGrid::auto(&[0.0, 1.0], width).unwrap();
            let density =
                two_step_distribution(&initial, &u, &observable, &profile, &grid).unwrap();
            means.push(mean_reading(&grid, &density).unwrap());
        }
        for &m in &means {
            assert_abs_diff_eq!(m, expected, epsilon = 1e-8);
        }
        assert_abs_diff_eq!(means[0], means[1], epsilon = 1e-8);
        assert_abs_diff_eq!(means[1], means[2], epsilon = 1e-8);
    }

    #[test]
    fn two_step_symmetric_eigenvalues_mean_zero() {
        // Uniform superposition measured along +-1: symmetric bimodal.
        let initial = StateVector::new(vec![
            c(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            c(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ])
        .unwrap();
        let u = UnitaryMatrix::identity(2).unwrap();
        let observable =
            Observable::new(Basis::computational(2).unwrap(), vec![1.0, -1.0]).unwrap();
        let profile = PointerProfile::gaussian(0.4).unwrap();
        let grid = QuadratureGrid::auto(&[-1.0, 1.0], 0.4).unwrap();
        let density = two_step_distribution(&initial, &u, &observable, &profile, &grid).unwrap();
        assert_abs_diff_eq!(mean_reading(&grid, &density).unwrap(), 0.0, epsilon = 1e-10);
        let mass = grid.integrate(&density).unwrap();
        assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-10);
    }
}
