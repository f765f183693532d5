//! Pointer wavepacket profiles.
//!
//! The pointer starts in a real-valued state `G(f)` with unit square
//! integral and zero mean, characteristic width `Δf`, and couples with
//! strength `β`: in the scenario passing through `|b_j>` the packet is
//! displaced to `G(f - β B_j)`.
//!
//! The default profile is the Gaussian
//! `G(f) = (2π σ²)^(-1/4) exp(-f²/4σ²)` with `Δf ≡ σ`, so `G²` is a normal
//! density of standard deviation `σ`. Its momentum representation is the
//! Gaussian of width `1/(2σ)`, which gives the momentum readout an exact
//! reference. Custom profiles are supplied as samples and validated against
//! the unit-norm / zero-mean conditions at load.

use crate::error::{Error, Result};
use crate::pointer::grid::QuadratureGrid;
use crate::scalar::Scalar;

/// Validation tolerance for custom profile norm and mean (f64 reference).
const PROFILE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
enum ProfileKind<T: Scalar> {
    Gaussian,
    CustomSampled {
        grid: QuadratureGrid<T>,
        samples: Vec<T>,
        momentum: Option<(QuadratureGrid<T>, Vec<T>)>,
    },
}

/// Pointer profile: shape, width `Δf` and coupling `β`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointerProfile<T: Scalar> {
    kind: ProfileKind<T>,
    width: T,
    coupling: T,
}

impl<T: Scalar> PointerProfile<T> {
    /// Gaussian profile of width `Δf = width`, coupling 1.
    pub fn gaussian(width: T) -> Result<Self> {
        if !(width.is_finite() && width > T::zero()) {
            return Err(Error::invalid_param("width", "must be finite and positive"));
        }
        Ok(Self {
            kind: ProfileKind::Gaussian,
            width,
            coupling: T::one(),
        })
    }

    /// Custom profile from position-space samples with a declared width.
    ///
    /// Samples are interpolated linearly and treated as zero outside the
    /// sample grid. `∫G² = 1` and `∫f G² = 0` are enforced at load.
    pub fn custom_sampled(
        grid: QuadratureGrid<T>,
        samples: Vec<T>,
        declared_width: T,
    ) -> Result<Self> {
        if !(declared_width.is_finite() && declared_width > T::zero()) {
            return Err(Error::invalid_param("width", "must be finite and positive"));
        }
        if samples.len() != grid.points() {
            return Err(Error::DimensionMismatch {
                expected: grid.points(),
                got: samples.len(),
            });
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::NonFinite {
                what: "profile samples".to_string(),
            });
        }
        let sq: Vec<T> = samples.iter().map(|&s| s * s).collect();
        let norm = grid.integrate(&sq)?;
        let tol = T::of(PROFILE_TOL).max(T::norm_tol());
        if (norm - T::one()).abs() > tol {
            return Err(Error::invalid_param(
                "profile samples",
                format!(
                    "square integral {} deviates from 1",
                    norm.to_f64().unwrap_or(f64::NAN)
                ),
            ));
        }
        let mean = grid.integrate_weighted(&sq)?;
        if mean.abs() > tol {
            return Err(Error::invalid_param(
                "profile samples",
                format!("mean {} deviates from 0", mean.to_f64().unwrap_or(f64::NAN)),
            ));
        }
        Ok(Self {
            kind: ProfileKind::CustomSampled {
                grid,
                samples,
                momentum: None,
            },
            width: declared_width,
            coupling: T::one(),
        })
    }

    /// Attaches momentum-space samples to a custom profile, enabling the
    /// momentum readout for it.
    pub fn with_momentum_samples(
        mut self,
        grid: QuadratureGrid<T>,
        samples: Vec<T>,
    ) -> Result<Self> {
        match &mut self.kind {
            ProfileKind::Gaussian => Err(Error::invalid_param(
                "momentum samples",
                "gaussian profiles already have an analytic momentum representation",
            )),
            ProfileKind::CustomSampled { momentum, .. } => {
                if samples.len() != grid.points() {
                    return Err(Error::DimensionMismatch {
                        expected: grid.points(),
                        got: samples.len(),
                    });
                }
                if samples.iter().any(|s| !s.is_finite()) {
                    return Err(Error::NonFinite {
                        what: "momentum samples".to_string(),
                    });
                }
                let sq: Vec<T> = samples.iter().map(|&s| s * s).collect();
                let norm = grid.integrate(&sq)?;
                let tol = T::of(PROFILE_TOL).max(T::norm_tol());
                if (norm - T::one()).abs() > tol {
                    return Err(Error::invalid_param(
                        "momentum samples",
                        format!(
                            "square integral {} deviates from 1",
                            norm.to_f64().unwrap_or(f64::NAN)
                        ),
                    ));
                }
                *momentum = Some((grid, samples));
                Ok(self)
            }
        }
    }

    /// Sets the coupling strength `β`.
    pub fn with_coupling(mut self, beta: T) -> Result<Self> {
        if !(beta.is_finite() && beta > T::zero()) {
            return Err(Error::invalid_param(
                "coupling",
                "must be finite and positive",
            ));
        }
        self.coupling = beta;
        Ok(self)
    }

    pub fn width(&self) -> T {
        self.width
    }

    pub fn coupling(&self) -> T {
        self.coupling
    }

    pub fn is_gaussian(&self) -> bool {
        matches!(self.kind, ProfileKind::Gaussian)
    }

    /// `G(f)`.
    pub fn amplitude(&self, f: T) -> T {
        match &self.kind {
            ProfileKind::Gaussian => gaussian_amplitude(f, self.width),
            ProfileKind::CustomSampled { grid, samples, .. } => interpolate(grid, samples, f),
        }
    }

    /// Momentum-space amplitude `<λ|G>`, when available.
    pub fn momentum_amplitude(&self, lambda: T) -> Result<T> {
        match &self.kind {
            ProfileKind::Gaussian => {
                let half = T::of(0.5);
                Ok(gaussian_amplitude(lambda, half / self.width))
            }
            ProfileKind::CustomSampled { momentum, .. } => match momentum {
                Some((grid, samples)) => Ok(interpolate(grid, samples, lambda)),
                None => Err(Error::invalid_param(
                    "profile",
                    "custom profile lacks momentum-space samples",
                )),
            },
        }
    }

    /// Width of the momentum-space packet (`1/(2Δf)` for the Gaussian).
    pub fn momentum_width(&self) -> Result<T> {
        match &self.kind {
            ProfileKind::Gaussian => Ok(T::of(0.5) / self.width),
            ProfileKind::CustomSampled { momentum, .. } => match momentum {
                Some((grid, samples)) => {
                    let sq: Vec<T> = samples.iter().map(|&s| s * s).collect();
                    let second: Vec<T> = sq
                        .iter()
                        .enumerate()
                        .map(|(k, &s)| grid.value(k) * grid.value(k) * s)
                        .collect();
                    Ok(grid.integrate(&second)?.sqrt())
                }
                None => Err(Error::invalid_param(
                    "profile",
                    "custom profile lacks momentum-space samples",
                )),
            },
        }
    }

    /// `∫ λ² G(λ)² dλ`, the factor relating the weak-limit momentum mean to
    /// the imaginary part of the weak value. Equals `1/(4Δf²)` for the
    /// Gaussian.
    pub fn momentum_spread_sq(&self) -> Result<T> {
        let w = self.momentum_width()?;
        Ok(w * w)
    }

    /// Momentum grid for the momentum readout: the span covers the packet
    /// envelope, while the step also resolves the oscillation of period
    /// `2π/(β ΔB)` introduced by the shift phases.
    pub(crate) fn momentum_grid(&self, max_shift_gap: T) -> Result<QuadratureGrid<T>> {
        match &self.kind {
            ProfileKind::Gaussian => {
                let w = self.momentum_width()?;
                let span = T::of(20.0) * w;
                let mut step = w / T::of(48.0);
                if max_shift_gap > T::zero() {
                    let period = T::TAU() / max_shift_gap;
                    step = step.min(period / T::of(48.0));
                }
                let wanted = (span / step).ceil().to_f64().unwrap_or(f64::INFINITY);
                if !wanted.is_finite() || wanted > (crate::pointer::grid::MAX_POINTS - 1) as f64 {
                    return Err(Error::invalid_param(
                        "momentum grid",
                        "resolving the momentum oscillations needs too many points",
                    ));
                }
                let mut points = (wanted as usize).max(crate::pointer::grid::MIN_POINTS - 1) + 1;
                if points.is_multiple_of(2) {
                    points += 1;
                }
                QuadratureGrid::new(-(T::of(10.0) * w), T::of(10.0) * w, points)
            }
            ProfileKind::CustomSampled { momentum, .. } => match momentum {
                Some((grid, _)) => Ok(grid.clone()),
                None => Err(Error::invalid_param(
                    "profile",
                    "custom profile lacks momentum-space samples",
                )),
            },
        }
    }
}

fn gaussian_amplitude<T: Scalar>(f: T, sigma: T) -> T {
    let two = T::of(2.0);
    let four = T::of(4.0);
    let norm = (two * T::PI() * sigma * sigma).powf(T::of(-0.25));
    norm * (-(f * f) / (four * sigma * sigma)).exp()
}

fn interpolate<T: Scalar>(grid: &QuadratureGrid<T>, samples: &[T], f: T) -> T {
    if f < grid.f_min() || f > grid.f_max() {
        return T::zero();
    }
    let pos = (f - grid.f_min()) / grid.step();
    let idx = pos.floor().to_f64().unwrap_or(0.0) as usize;
    if idx + 1 >= samples.len() {
        return samples[samples.len() - 1];
    }
    let frac = pos - T::of(idx as f64);
    samples[idx] * (T::one() - frac) + samples[idx + 1] * frac
}
