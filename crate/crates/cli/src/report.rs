//! Report payloads and their JSON / CSV renderings.
//!
//! JSON reports carry `"schema": 1` and frozen field names; CSV column
//! orders are fixed and documented in the README. Complex values render as
//! `[re, im]` in JSON and `re+imi` in CSV; divergent weak values render as
//! `divergent`, dark conditional quantities as `dark`.

use num_complex::Complex64;
use pointersim_core::montecarlo::{McEstimate, Regime};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridInfo {
    pub f_min: f64,
    pub f_max: f64,
    pub points: usize,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: &'static str,
    pub scenario: String,
    pub observable: String,
    pub delta_f: f64,
    pub beta: f64,
    pub grid: GridInfo,
    pub norm_defect: f64,
    pub finals: Vec<RunFinal>,
}

#[derive(Debug, Serialize)]
pub struct RunFinal {
    pub final_index: usize,
    /// Post-selection probability at the requested width.
    pub postselection_probability: f64,
    /// Accurate conditional mean; absent for a strongly dark state.
    pub abl_value: Option<f64>,
    /// Strong-limit post-selection probability.
    pub abl_probability: Option<f64>,
    /// `[re, im]`; absent when diverged.
    pub weak_value: Option<[f64; 2]>,
    pub weak_diverged: bool,
    pub weak_denominator_magnitude: f64,
    /// Mean reading at the requested width; absent for a dark state.
    pub conditional_mean: Option<f64>,
    /// Mean momentum at the requested width; absent for a dark state.
    pub momentum_mean: Option<f64>,
    /// `∫ f P(F_i, f) df`, normalized by all trials.
    pub unconditional_mean: f64,
}

#[derive(Debug, Serialize)]
pub struct SweepReport {
    pub schema: u32,
    pub command: &'static str,
    pub scenario: String,
    pub observable: String,
    pub beta: f64,
    /// Width-independent reference columns per final state.
    pub asymptotes: Vec<SweepAsymptote>,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Serialize)]
pub struct SweepAsymptote {
    pub final_index: usize,
    /// `β x` accurate conditional mean: the strong-limit reading.
    pub abl_reading: Option<f64>,
    /// `β Re<B>_W`: the weak-limit reading.
    pub weak_reading: Option<f64>,
    /// `|Σ_j A_ij|²`, the weak-limit detection probability.
    pub coherent_probability: f64,
    /// `Σ_j |A_ij|²`, the strong-limit detection probability.
    pub incoherent_probability: f64,
}

#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub delta_f: f64,
    pub norm_defect: f64,
    pub finals: Vec<SweepFinal>,
}

#[derive(Debug, Serialize)]
pub struct SweepFinal {
    pub final_index: usize,
    pub postselection_probability: f64,
    pub conditional_mean: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct McReport {
    pub schema: u32,
    pub command: &'static str,
    pub scenario: String,
    pub observable: String,
    pub delta_f: f64,
    pub beta: f64,
    pub trials: u64,
    pub seed: u64,
    pub regime: Regime,
    /// Quadrature and closed-form reference values per final state.
    pub oracle: Vec<McOracle>,
    pub estimate: McEstimate<f64>,
}

#[derive(Debug, Serialize)]
pub struct McOracle {
    pub final_index: usize,
    pub postselection_probability: f64,
    pub conditional_mean: Option<f64>,
    pub abl_value: Option<f64>,
    pub weak_value_re: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct ResponseReport {
    pub schema: u32,
    pub command: &'static str,
    pub scenario: String,
    pub observable: String,
    pub final_index: usize,
    pub rows: Vec<ResponseRow>,
}

#[derive(Debug, Serialize)]
pub struct ResponseRow {
    pub strength: f64,
    pub p0: f64,
    pub delta_p_exact: f64,
    pub first_order_prediction: f64,
    pub residual: f64,
    pub residual_at_half: f64,
    /// `residual / residual_at_half`; ~4 in the quadratic regime. Absent
    /// when the halved residual vanishes (zero perturbation).
    pub residual_ratio: Option<f64>,
}

pub fn complex_cell(value: Option<Complex64>) -> String {
    match value {
        None => "divergent".to_string(),
        Some(c) => format!("{}{:+}i", c.re, c.im),
    }
}

pub fn real_cell(value: Option<f64>) -> String {
    match value {
        None => "dark".to_string(),
        Some(x) => format!("{x}"),
    }
}

impl RunReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "final_index,postselection_probability,abl_value,abl_probability,weak_value,\
             weak_denominator,conditional_mean,momentum_mean,unconditional_mean\n",
        );
        for f in &self.finals {
            let weak = complex_cell(
                f.weak_value
                    .map(|[re, im]| Complex64::new(re, im))
                    .filter(|_| !f.weak_diverged),
            );
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                f.final_index,
                f.postselection_probability,
                real_cell(f.abl_value),
                real_cell(f.abl_probability),
                weak,
                f.weak_denominator_magnitude,
                real_cell(f.conditional_mean),
                real_cell(f.momentum_mean),
                f.unconditional_mean,
            ));
        }
        out
    }
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let n = self.asymptotes.len();
        let mut header = String::from("delta_f");
        for i in 0..n {
            header.push_str(&format!(",p_{i},mean_{i}"));
        }
        for i in 0..n {
            header.push_str(&format!(",abl_reading_{i}"));
        }
        for i in 0..n {
            header.push_str(&format!(",weak_reading_{i}"));
        }
        for i in 0..n {
            header.push_str(&format!(",coherent_{i},incoherent_{i}"));
        }
        let mut out = header;
        out.push('\n');
        for row in &self.rows {
            let mut line = format!("{}", row.delta_f);
            for f in &row.finals {
                line.push_str(&format!(
                    ",{},{}",
                    f.postselection_probability,
                    real_cell(f.conditional_mean)
                ));
            }
            for a in &self.asymptotes {
                line.push_str(&format!(",{}", real_cell(a.abl_reading)));
            }
            for a in &self.asymptotes {
                line.push_str(&format!(",{}", real_cell(a.weak_reading)));
            }
            for a in &self.asymptotes {
                line.push_str(&format!(
                    ",{},{}",
                    a.coherent_probability, a.incoherent_probability
                ));
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

impl McReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "final_index,count,frequency,mean_reading,mean_se,counting_value,counting_se,\
             unconditional_mean,unconditional_se,oracle_probability,oracle_mean,oracle_abl,\
             oracle_weak_re\n",
        );
        for (oracle, pf) in self.oracle.iter().zip(&self.estimate.per_final) {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                oracle.final_index,
                pf.count,
                pf.frequency,
                real_cell(pf.mean_reading),
                real_cell(pf.mean_standard_error),
                real_cell(pf.counting_value),
                real_cell(pf.counting_standard_error),
                pf.unconditional_mean,
                pf.unconditional_standard_error,
                oracle.postselection_probability,
                real_cell(oracle.conditional_mean),
                real_cell(oracle.abl_value),
                real_cell(oracle.weak_value_re),
            ));
        }
        out
    }
}

impl ResponseReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "strength,p0,delta_p_exact,first_order_prediction,residual,residual_at_half,\
             residual_ratio\n",
        );
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                row.strength,
                row.p0,
                row.delta_p_exact,
                row.first_order_prediction,
                row.residual,
                row.residual_at_half,
                row.residual_ratio
                    .map(|r| r.to_string())
                    .unwrap_or_else(|| "undefined".to_string()),
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_cells_render_sign_and_divergence() {
        assert_eq!(complex_cell(Some(Complex64::new(0.5, 0.25))), "0.5+0.25i");
        assert_eq!(complex_cell(Some(Complex64::new(1.0, -2.0))), "1-2i");
        assert_eq!(complex_cell(None), "divergent");
        assert_eq!(real_cell(None), "dark");
    }
}
