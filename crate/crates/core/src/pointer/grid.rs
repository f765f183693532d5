//! Uniform quadrature grids with composite Simpson integration.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Minimum number of grid points; odd so composite Simpson applies directly.
pub const MIN_POINTS: usize = 513;

/// Hard cap protecting against absurd strong-regime resolutions.
pub const MAX_POINTS: usize = 4_000_001;

/// Grid points placed per pointer width when auto-sizing.
const POINTS_PER_WIDTH: f64 = 48.0;

/// Padding beyond the extreme pointer shifts, in units of the width.
const SPAN_PADDING_WIDTHS: f64 = 10.0;

/// Uniform grid on `[f_min, f_max]` with an odd number of points.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid<T: Scalar> {
    f_min: T,
    f_max: T,
    points: usize,
}

impl<T: Scalar> QuadratureGrid<T> {
    pub fn new(f_min: T, f_max: T, points: usize) -> Result<Self> {
        if !(f_min.is_finite() && f_max.is_finite()) || f_min >= f_max {
            return Err(Error::invalid_param(
                "grid span",
                "f_min must be finite and strictly below f_max",
            ));
        }
        if points < MIN_POINTS || points.is_multiple_of(2) {
            return Err(Error::invalid_param(
                "grid points",
                format!("need an odd point count >= {MIN_POINTS}, got {points}"),
            ));
        }
        if points > MAX_POINTS {
            return Err(Error::invalid_param(
                "grid points",
                format!("point count {points} exceeds cap {MAX_POINTS}"),
            ));
        }
        Ok(Self {
            f_min,
            f_max,
            points,
        })
    }

    /// Auto-sizes a grid for pointer shifts `shifts` and width `width`:
    /// the span covers every shift with 10-width padding and the step
    /// resolves the width with at least [`POINTS_PER_WIDTH`] points.
    pub fn auto(shifts: &[T], width: T) -> Result<Self> {
        if shifts.is_empty() {
            return Err(Error::EmptyInput {
                what: "pointer shifts".to_string(),
            });
        }
        if !(width.is_finite() && width > T::zero()) {
            return Err(Error::invalid_param("width", "must be finite and positive"));
        }
        let mut lo = shifts[0];
        let mut hi = shifts[0];
        for &s in shifts {
            if !s.is_finite() {
                return Err(Error::NonFinite {
                    what: "pointer shifts".to_string(),
                });
            }
            lo = lo.min(s);
            hi = hi.max(s);
        }
        let pad = T::of(SPAN_PADDING_WIDTHS) * width;
        let f_min = lo - pad;
        let f_max = hi + pad;
        let span = f_max - f_min;
        let step = width / T::of(POINTS_PER_WIDTH);
        let wanted = (span / step).ceil().to_f64().unwrap_or(f64::INFINITY);
        if !wanted.is_finite() || wanted > (MAX_POINTS - 1) as f64 {
            return Err(Error::invalid_param(
                "grid points",
                format!(
                    "resolving width {:e} over span {:e} needs more than {MAX_POINTS} points",
                    width.to_f64().unwrap_or(f64::NAN),
                    span.to_f64().unwrap_or(f64::NAN)
                ),
            ));
        }
        let mut points = (wanted as usize).max(MIN_POINTS - 1) + 1;
        if points.is_multiple_of(2) {
            points += 1;
        }
        Self::new(f_min, f_max, points)
    }

    pub fn f_min(&self) -> T {
        self.f_min
    }

    pub fn f_max(&self) -> T {
        self.f_max
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn step(&self) -> T {
        (self.f_max - self.f_min) / T::of((self.points - 1) as f64)
    }

    /// Coordinate of grid point `k`.
    pub fn value(&self, k: usize) -> T {
        self.f_min + self.step() * T::of(k as f64)
    }

    /// All grid coordinates.
    pub fn values(&self) -> Vec<T> {
        (0..self.points).map(|k| self.value(k)).collect()
    }

    /// True when `[lo, hi]` lies inside the grid span.
    pub fn covers(&self, lo: T, hi: T) -> bool {
        self.f_min <= lo && hi <= self.f_max
    }

    /// Composite Simpson integral of samples on this grid.
    pub fn integrate(&self, samples: &[T]) -> Result<T> {
        if samples.len() != self.points {
            return Err(Error::DimensionMismatch {
                expected: self.points,
                got: samples.len(),
            });
        }
        let mut acc = samples[0] + samples[self.points - 1];
        let four = T::of(4.0);
        let two = T::of(2.0);
        for (k, &s) in samples.iter().enumerate().take(self.points - 1).skip(1) {
            acc += if k % 2 == 1 { four * s } else { two * s };
        }
        Ok(acc * self.step() / T::of(3.0))
    }

    /// Composite Simpson integral of `f * samples(f)`.
    pub fn integrate_weighted(&self, samples: &[T]) -> Result<T> {
        if samples.len() != self.points {
            return Err(Error::DimensionMismatch {
                expected: self.points,
                got: samples.len(),
            });
        }
        let weighted: Vec<T> = samples
            .iter()
            .enumerate()
            .map(|(k, &s)| self.value(k) * s)
            .collect();
        self.integrate(&weighted)
    }
}
