//! Builders for the named measurement scenarios plus file-defined chains.
//!
//! Spinor conventions for the spin scenarios: the up/down states along the
//! direction `(θ, φ)` are
//!
//! ```text
//! |n+> = (cos θ/2,  e^{iφ} sin θ/2)
//! |n-> = (sin θ/2, -e^{iφ} cos θ/2)
//! ```
//!
//! With this phase choice the row sums of the spin path table are exactly
//! `(cos θ'/2, sin θ'/2)` for all angles, and the dark state appears at
//! `θ' -> π` where the first row sum vanishes.

mod file;

pub use file::{load_scenario, load_scenario_str, save_scenario, save_scenario_string};

use std::collections::BTreeMap;

use num_complex::Complex;
use rand::Rng;

use crate::amplitudes::MeasurementChain;
use crate::error::{Error, Result};
use crate::qcore::{Basis, Observable, StateVector, UnitaryMatrix};
use crate::scalar::{phase, Scalar};

/// A chain bundled with the named observables that make sense for it.
#[derive(Debug, Clone)]
pub struct Scenario<T: Scalar> {
    pub name: String,
    pub chain: MeasurementChain<T>,
    /// Observables diagonal in the chain's mid basis, keyed by name.
    pub observables: BTreeMap<String, Observable<T>>,
}

impl<T: Scalar> Scenario<T> {
    /// Looks up a named observable, reporting the known names on failure.
    pub fn observable(&self, name: &str) -> Result<&Observable<T>> {
        self.observables.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.observables.keys().map(String::as_str).collect();
            Error::invalid_param(
                "observable",
                format!("unknown observable `{name}`; known: {}", known.join(", ")),
            )
        })
    }
}

/// Angles for the two-level spin scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinScenarioParams<T> {
    /// Polar angle of the intermediate measurement direction.
    pub theta: T,
    /// Polar angle of the final measurement direction.
    pub theta_prime: T,
    /// Azimuth of the intermediate direction.
    pub phi: T,
    /// Azimuth of the final direction.
    pub phi_prime: T,
}

impl<T: Scalar> SpinScenarioParams<T> {
    pub fn new(theta: T, theta_prime: T, phi: T, phi_prime: T) -> Self {
        Self {
            theta,
            theta_prime,
            phi,
            phi_prime,
        }
    }

    /// Convenience for the near-dark configuration `θ' = π - ε`.
    pub fn with_epsilon(mut self, epsilon: T) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon >= T::zero()) {
            return Err(Error::invalid_param("epsilon", "must be finite and >= 0"));
        }
        self.theta_prime = T::PI() - epsilon;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        for (name, angle) in [("theta", self.theta), ("theta_prime", self.theta_prime)] {
            if !(angle.is_finite() && angle >= T::zero() && angle <= T::PI()) {
                return Err(Error::invalid_param(name, "must lie in [0, pi]"));
            }
        }
        for (name, angle) in [("phi", self.phi), ("phi_prime", self.phi_prime)] {
            if !angle.is_finite() {
                return Err(Error::invalid_param(name, "must be finite"));
            }
        }
        Ok(())
    }
}

/// Amplitude pair for the three-path construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreePathParams<T> {
    /// Common amplitude `A` of the two cancelling paths.
    pub a: Complex<T>,
    /// Amplitude `A'` of the third path.
    pub a_prime: Complex<T>,
}

impl<T: Scalar> ThreePathParams<T> {
    pub fn new(a: Complex<T>, a_prime: Complex<T>) -> Self {
        Self { a, a_prime }
    }
}

/// Spin-up and spin-down states along `(θ, φ)` in the convention of this
/// module.
pub fn spin_pair<T: Scalar>(theta: T, phi: T) -> Result<(StateVector<T>, StateVector<T>)> {
    let half = theta / T::of(2.0);
    let c = half.cos();
    let s = half.sin();
    let up = StateVector::new(vec![Complex::new(c, T::zero()), phase(phi) * s])?;
    let down = StateVector::new(vec![Complex::new(s, T::zero()), -(phase(phi) * c)])?;
    Ok((up, down))
}

/// The two-level spin scenario: `|I> = |z+>`, intermediate basis along
/// `(θ, φ)`, final basis along `(θ', φ')`, identity evolutions.
pub fn build_spin_scenario<T: Scalar>(params: SpinScenarioParams<T>) -> Result<Scenario<T>> {
    params.validate()?;
    let (mid_up, mid_down) = spin_pair(params.theta, params.phi)?;
    let (fin_up, fin_down) = spin_pair(params.theta_prime, params.phi_prime)?;
    let mid_basis = Basis::new(vec![mid_up, mid_down])?;
    let final_basis = Basis::new(vec![fin_up, fin_down])?;
    let chain = MeasurementChain::new(
        StateVector::basis_state(2, 0)?,
        None,
        None,
        mid_basis.clone(),
        final_basis,
    )?;
    let mut observables = BTreeMap::new();
    observables.insert(
        "pi_1".to_string(),
        Observable::projector(mid_basis.clone(), 0)?,
    );
    observables.insert(
        "pi_2".to_string(),
        Observable::projector(mid_basis.clone(), 1)?,
    );
    observables.insert(
        "sigma_n".to_string(),
        Observable::new(mid_basis, vec![T::one(), -T::one()])?,
    );
    Ok(Scenario {
        name: "spin".to_string(),
        chain,
        observables,
    })
}

/// The three-path scenario: path amplitudes into the first final state
/// proportional to `(A, -A, A')`.
pub fn build_three_path<T: Scalar>(params: ThreePathParams<T>) -> Result<Scenario<T>> {
    let two = T::of(2.0);
    let norm_sq = two * params.a.norm_sqr() + params.a_prime.norm_sqr();
    if !norm_sq.is_finite() || norm_sq <= T::of(1e-12) {
        return Err(Error::invalid_param(
            "a, a_prime",
            "2|A|^2 + |A'|^2 must be positive",
        ));
    }
    let scale = norm_sq.sqrt();
    let initial = StateVector::new(vec![
        params.a / scale,
        -params.a / scale,
        params.a_prime / scale,
    ])?;
    let s3 = T::of(3.0).sqrt().recip();
    let s2 = two.sqrt().recip();
    let s6 = T::of(6.0).sqrt().recip();
    let zero = T::zero();
    let re = |x: T| Complex::new(x, zero);
    let final_basis = Basis::new(vec![
        StateVector::new(vec![re(s3), re(s3), re(s3)])?,
        StateVector::new(vec![re(s2), re(-s2), re(zero)])?,
        StateVector::new(vec![re(s6), re(s6), re(-two * s6)])?,
    ])?;
    let mid_basis = Basis::computational(3)?;
    let chain = MeasurementChain::new(initial, None, None, mid_basis.clone(), final_basis)?;
    let mut observables = BTreeMap::new();
    for (name, j) in [("pi_1", 0usize), ("pi_2", 1), ("pi_3", 2)] {
        observables.insert(
            name.to_string(),
            Observable::projector(mid_basis.clone(), j)?,
        );
    }
    observables.insert(
        "pi_1_union_2".to_string(),
        Observable::union_projector(mid_basis, &[0, 1])?,
    );
    Ok(Scenario {
        name: "three-path".to_string(),
        chain,
        observables,
    })
}

/// Interference-free baseline: identity evolutions, coinciding computational
/// bases and a uniform initial superposition, so the path table is diagonal
/// and accurate and weak conditional values agree everywhere.
pub fn build_identity_two_level<T: Scalar>() -> Result<Scenario<T>> {
    let h = T::of(2.0).sqrt().recip();
    let initial = StateVector::new(vec![Complex::new(h, T::zero()), Complex::new(h, T::zero())])?;
    let basis = Basis::computational(2)?;
    let chain = MeasurementChain::new(initial, None, None, basis.clone(), basis.clone())?;
    let mut observables = BTreeMap::new();
    observables.insert("pi_1".to_string(), Observable::projector(basis.clone(), 0)?);
    observables.insert("pi_2".to_string(), Observable::projector(basis.clone(), 1)?);
    observables.insert(
        "sigma_z".to_string(),
        Observable::new(basis, vec![T::one(), -T::one()])?,
    );
    Ok(Scenario {
        name: "identity-two-level".to_string(),
        chain,
        observables,
    })
}

/// A Haar-like random chain for randomized property checks: random initial
/// state, random unitaries and random mid/final bases, all from
/// Gram-Schmidt over complex normal draws.
pub fn random_chain<T: Scalar, R: Rng>(dim: usize, rng: &mut R) -> Result<MeasurementChain<T>> {
    let initial = random_state(dim, rng)?;
    let u1 = random_unitary(dim, rng)?;
    let u21 = random_unitary(dim, rng)?;
    let mid_basis = random_basis(dim, rng)?;
    let final_basis = random_basis(dim, rng)?;
    MeasurementChain::new(initial, Some(u1), Some(u21), mid_basis, final_basis)
}

/// Random unit vector with complex normal components.
pub fn random_state<T: Scalar, R: Rng>(dim: usize, rng: &mut R) -> Result<StateVector<T>> {
    loop {
        let raw: Vec<Complex<T>> = (0..dim).map(|_| random_normal_complex(rng)).collect();
        let norm = raw
            .iter()
            .map(|c| c.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt();
        if norm > T::of(1e-6) {
            let components = raw.into_iter().map(|c| c / norm).collect();
            return StateVector::new(components);
        }
    }
}

/// Random orthonormal basis.
pub fn random_basis<T: Scalar, R: Rng>(dim: usize, rng: &mut R) -> Result<Basis<T>> {
    Basis::new(random_orthonormal_columns(dim, rng)?)
}

/// Random unitary matrix.
pub fn random_unitary<T: Scalar, R: Rng>(dim: usize, rng: &mut R) -> Result<UnitaryMatrix<T>> {
    let columns = random_orthonormal_columns(dim, rng)?;
    let mut entries = vec![Complex::new(T::zero(), T::zero()); dim * dim];
    for (col, v) in columns.iter().enumerate() {
        for row in 0..dim {
            entries[row * dim + col] = v.component(row);
        }
    }
    UnitaryMatrix::new(dim, entries)
}

/// Modified Gram-Schmidt over complex normal draws, re-drawing on
/// near-degenerate columns.
fn random_orthonormal_columns<T: Scalar, R: Rng>(
    dim: usize,
    rng: &mut R,
) -> Result<Vec<StateVector<T>>> {
    let mut columns: Vec<Vec<Complex<T>>> = Vec::with_capacity(dim);
    while columns.len() < dim {
        let mut candidate: Vec<Complex<T>> = (0..dim).map(|_| random_normal_complex(rng)).collect();
        for existing in &columns {
            let overlap = existing
                .iter()
                .zip(&candidate)
                .map(|(e, c)| e.conj() * *c)
                .fold(Complex::new(T::zero(), T::zero()), |a, b| a + b);
            for (c, e) in candidate.iter_mut().zip(existing) {
                *c -= *e * overlap;
            }
        }
        let norm = candidate
            .iter()
            .map(|c| c.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt();
        if norm > T::of(1e-6) {
            columns.push(candidate.into_iter().map(|c| c / norm).collect());
        }
    }
    columns.into_iter().map(StateVector::new).collect()
}

/// Standard complex normal draw via Box-Muller on the rng's uniforms.
fn random_normal_complex<T: Scalar, R: Rng>(rng: &mut R) -> Complex<T> {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let angle = 2.0 * std::f64::consts::PI * u2;
    Complex::new(T::of(r * angle.cos()), T::of(r * angle.sin()))
}
