//! Seeded Monte Carlo sampling of measurement trials.
//!
//! Trials are drawn i.i.d. from the exact joint density by inverse CDF over
//! the flattened (final state, grid cell) decomposition, with piecewise
//! linear densities inside cells. Sampling therefore targets the quadrature
//! density itself: discrepancies between Monte Carlo and quadrature isolate
//! statistical error from quadrature error. Streams are deterministic for a
//! fixed seed.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pointer::JointDistribution;
use crate::scalar::Scalar;

/// One measurement trial: detected final state and pointer reading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord<T> {
    pub final_index: usize,
    pub reading: T,
}

/// Which estimator family the readings feed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// Separated packets: classify each reading to the nearest eigenvalue
    /// shift and count.
    Strong,
    /// Overlapping packets: average raw readings.
    Weak,
}

/// Deterministic stream of trials drawn from a joint distribution.
pub struct TrialStream<T: Scalar> {
    rng: ChaCha8Rng,
    remaining: u64,
    seed: u64,
    f_min: T,
    step: T,
    /// Cumulative normalized cell masses.
    cdf: Vec<T>,
    /// (final index, grid interval, density at left edge, density at right
    /// edge) per cell.
    cells: Vec<(u32, u32, T, T)>,
}

impl<T: Scalar> TrialStream<T> {
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn remaining(&self) -> u64 {
        self.remaining
    }

    fn draw(&mut self) -> TrialRecord<T> {
        let u = T::of(self.rng.gen::<f64>());
        // First cell whose cumulative mass exceeds u.
        let mut lo = 0usize;
        let mut hi = self.cdf.len() - 1;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.cdf[mid] > u {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let (final_index, k, rho0, rho1) = self.cells[lo];
        let v = T::of(self.rng.gen::<f64>());
        let t = invert_linear_cell(rho0, rho1, v);
        let reading = self.f_min + self.step * (T::of(k as f64) + t);
        TrialRecord {
            final_index: final_index as usize,
            reading,
        }
    }
}

impl<T: Scalar> Iterator for TrialStream<T> {
    type Item = TrialRecord<T>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        Some(self.draw())
    }
}

/// Position `t` in [0, 1] such that the mass of the linear density
/// interpolating `rho0 -> rho1` left of `t` is the fraction `v` of the cell
/// mass.
fn invert_linear_cell<T: Scalar>(rho0: T, rho1: T, v: T) -> T {
    let total = rho0 + rho1;
    let d = rho1 - rho0;
    if total <= T::zero() {
        return v;
    }
    if d.abs() <= T::of(1e-12) * total {
        return v;
    }
    let disc = (rho0 * rho0 + d * v * total).max(T::zero()).sqrt();
    ((disc - rho0) / d).max(T::zero()).min(T::one())
}

/// Draws `trials` i.i.d. trials from `jd`, deterministically for the seed.
pub fn sample_trials<T: Scalar>(
    jd: &JointDistribution<T>,
    trials: u64,
    seed: u64,
) -> Result<TrialStream<T>> {
    if trials == 0 {
        return Err(Error::invalid_param("trials", "must be >= 1"));
    }
    if jd.norm_defect() > T::defect_tol() {
        return Err(Error::GridTooCoarse {
            defect: jd.norm_defect().to_f64().unwrap_or(f64::NAN),
            tolerance: T::defect_tol().to_f64().unwrap_or(f64::NAN),
        });
    }
    let grid = jd.grid();
    let n = grid.points();
    let half_step = grid.step() / T::of(2.0);
    let mut cells = Vec::with_capacity(jd.dim() * (n - 1));
    let mut masses = Vec::with_capacity(jd.dim() * (n - 1));
    let mut total = T::zero();
    for i in 0..jd.dim() {
        let row = jd.density_row(i)?;
        for k in 0..n - 1 {
            let mass = (row[k] + row[k + 1]) * half_step;
            cells.push((i as u32, k as u32, row[k], row[k + 1]));
            masses.push(mass);
            total += mass;
        }
    }
    if total <= T::zero() {
        return Err(Error::EmptyInput {
            what: "joint density mass".to_string(),
        });
    }
    let mut acc = T::zero();
    let cdf: Vec<T> = masses
        .iter()
        .map(|&m| {
            acc += m / total;
            acc
        })
        .collect();
    Ok(TrialStream {
        rng: ChaCha8Rng::seed_from_u64(seed),
        remaining: trials,
        seed,
        f_min: grid.f_min(),
        step: grid.step(),
        cdf,
        cells,
    })
}

/// Per-final-state Monte Carlo statistics.
#[derive(Debug, Clone, Serialize)]
pub struct PerFinalEstimate<T> {
    /// Number of trials post-selected on this final state.
    pub count: u64,
    /// `count / trials`.
    pub frequency: T,
    /// Mean raw reading (absent when the state was never selected).
    pub mean_reading: Option<T>,
    /// Standard error of the mean reading (0 for a single trial).
    pub mean_standard_error: Option<T>,
    /// Strong regime only: mean of nearest-eigenvalue classified readings,
    /// the counting estimator for the accurate conditional mean.
    pub counting_value: Option<T>,
    pub counting_standard_error: Option<T>,
    /// Average reading normalized by total trials rather than by
    /// post-selections.
    pub unconditional_mean: T,
    pub unconditional_standard_error: T,
}

/// Statistics of a complete Monte Carlo run.
#[derive(Debug, Clone, Serialize)]
pub struct McEstimate<T> {
    pub trials: u64,
    pub seed: u64,
    pub regime: Regime,
    pub per_final: Vec<PerFinalEstimate<T>>,
}

struct Accumulator<T> {
    count: u64,
    sum: T,
    sum_sq: T,
    class_sum: T,
    class_sum_sq: T,
}

/// Estimates per-final statistics from trial records.
///
/// `eigenvalues` are the measured values `B_j`; readings cluster around
/// `beta * B_j` in the strong regime and classification happens in reading
/// units while the counted values are the unscaled eigenvalues. Ties at a
/// classification midpoint go to the lower eigenvalue.
pub fn estimate<T: Scalar, I>(
    records: I,
    eigenvalues: &[T],
    beta: T,
    regime: Regime,
    seed: u64,
) -> Result<McEstimate<T>>
where
    I: IntoIterator<Item = TrialRecord<T>>,
{
    if eigenvalues.is_empty() {
        return Err(Error::EmptyInput {
            what: "eigenvalues".to_string(),
        });
    }
    let dim = eigenvalues.len();
    // Distinct eigenvalues in increasing order with their shifts; the
    // midpoints between neighbouring shifts classify readings.
    let mut distinct: Vec<T> = eigenvalues.to_vec();
    distinct.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    distinct.dedup_by(|a, b| *a == *b);
    let midpoints: Vec<T> = distinct
        .windows(2)
        .map(|w| beta * (w[0] + w[1]) / T::of(2.0))
        .collect();

    let zero = T::zero();
    let mut totals: Vec<Accumulator<T>> = (0..dim)
        .map(|_| Accumulator {
            count: 0,
            sum: zero,
            sum_sq: zero,
            class_sum: zero,
            class_sum_sq: zero,
        })
        .collect();
    let mut trials: u64 = 0;

    for record in records {
        if record.final_index >= dim {
            return Err(Error::IndexOutOfRange {
                index: record.final_index,
                dim,
            });
        }
        trials += 1;
        let acc = &mut totals[record.final_index];
        acc.count += 1;
        acc.sum += record.reading;
        acc.sum_sq += record.reading * record.reading;
        // Nearest-shift classification; ties go to the lower eigenvalue.
        let class = midpoints
            .iter()
            .take_while(|&&m| m < record.reading)
            .count();
        let b = distinct[class];
        acc.class_sum += b;
        acc.class_sum_sq += b * b;
    }
    if trials == 0 {
        return Err(Error::EmptyInput {
            what: "trial records".to_string(),
        });
    }

    let k = T::of(trials as f64);
    let per_final = totals
        .iter()
        .map(|acc| {
            let n = acc.count;
            let nf = T::of(n as f64);
            let (mean, se, class_mean, class_se) = if n == 0 {
                (None, None, None, None)
            } else {
                let mean = acc.sum / nf;
                let class_mean = acc.class_sum / nf;
                let (se, class_se) = if n >= 2 {
                    let var = ((acc.sum_sq - acc.sum * acc.sum / nf) / (nf - T::one())).max(zero);
                    let class_var = ((acc.class_sum_sq - acc.class_sum * acc.class_sum / nf)
                        / (nf - T::one()))
                    .max(zero);
                    ((var / nf).sqrt(), (class_var / nf).sqrt())
                } else {
                    (zero, zero)
                };
                (Some(mean), Some(se), Some(class_mean), Some(class_se))
            };
            // Per-total-trials estimator Σ f·1[final] / K; its variance is
            // taken over all K trials of the indicator-weighted reading.
            let unconditional_mean = acc.sum / k;
            let unconditional_standard_error = if trials >= 2 {
                let var = ((acc.sum_sq - acc.sum * acc.sum / k) / (k - T::one())).max(zero);
                (var / k).sqrt()
            } else {
                zero
            };
            PerFinalEstimate {
                count: n,
                frequency: nf / k,
                mean_reading: mean,
                mean_standard_error: se,
                counting_value: if regime == Regime::Strong {
                    class_mean
                } else {
                    None
                },
                counting_standard_error: if regime == Regime::Strong {
                    class_se
                } else {
                    None
                },
                unconditional_mean,
                unconditional_standard_error,
            }
        })
        .collect();

    Ok(McEstimate {
        trials,
        seed,
        regime,
        per_final,
    })
}

/// Writes trials as CSV with header `trial,final_index,reading`.
pub fn write_trials_csv<T: Scalar, I, W>(mut writer: W, records: I) -> std::io::Result<()>
where
    I: IntoIterator<Item = TrialRecord<T>>,
    W: Write,
{
    writeln!(writer, "trial,final_index,reading")?;
    for (t, record) in records.into_iter().enumerate() {
        writeln!(writer, "{},{},{}", t, record.final_index, record.reading)?;
    }
    Ok(())
}
