//! Strong/weak limit behaviour of the pointer quadrature, checked against
//! closed forms that never touch the grid machinery.

mod common;

use approx::assert_abs_diff_eq;
use common::{gaussian_oracle, max_marginal_defect, window_mass};
use pointersim_core::pointer::{
    joint_distribution, joint_distribution_auto, momentum_mean_reading, two_step_distribution,
    PointerProfile, QuadratureGrid,
};
use pointersim_core::scenarios::{build_spin_scenario, SpinScenarioParams};
use pointersim_core::values::{abl_value, weak_value};

/// Spin scenario with a complex projector weak value of moderate size.
fn spin_scenario() -> pointersim_core::Scenario64 {
    build_spin_scenario(SpinScenarioParams::new(
        std::f64::consts::FRAC_PI_2,
        2.0 * std::f64::consts::FRAC_PI_3,
        1.2,
        0.0,
    ))
    .unwrap()
}

#[test]
fn quadrature_matches_closed_form_across_strengths() {
    let scenario = spin_scenario();
    let observable = scenario.observable("pi_1").unwrap();
    let table = scenario.chain.path_table().unwrap();
    for sigma in [0.05, 0.3, 2.0, 50.0] {
        let profile = PointerProfile::gaussian(sigma).unwrap();
        let jd = joint_distribution_auto(&scenario.chain, observable, &profile).unwrap();
        for i in 0..2 {
            let oracle = gaussian_oracle(&table, observable.eigenvalues(), 1.0, sigma, i);
            assert_abs_diff_eq!(
                jd.postselection_probability(i).unwrap(),
                oracle.probability,
                epsilon = 1e-10
            );
            assert_abs_diff_eq!(
                jd.conditional_mean_reading(i).unwrap(),
                oracle.conditional_mean,
                epsilon = 1e-9
            );
            assert_abs_diff_eq!(
                jd.unconditional_mean_reading(i).unwrap(),
                oracle.weighted_reading,
                epsilon = 1e-10
            );
        }
    }
}

#[test]
fn strong_limit_recovers_abl_and_path_weights() {
    let scenario = spin_scenario();
    let observable = scenario.observable("pi_1").unwrap();
    let table = scenario.chain.path_table().unwrap();
    let sigma = 0.005; // 0.005 times the unit eigenvalue gap
    let profile = PointerProfile::gaussian(sigma).unwrap();
    let jd = joint_distribution_auto(&scenario.chain, observable, &profile).unwrap();
    for i in 0..2 {
        let abl = abl_value(&table, observable.eigenvalues(), i).unwrap();
        assert_abs_diff_eq!(
            jd.conditional_mean_reading(i).unwrap(),
            abl.value,
            epsilon = 1e-6
        );
        // Mass within +-5 widths of each shifted packet equals the resolved
        // path probability.
        let row = jd.density_row(i).unwrap();
        for (j, &b) in observable.eigenvalues().iter().enumerate() {
            let mass = window_mass(jd.grid(), row, b - 5.0 * sigma, b + 5.0 * sigma);
            assert_abs_diff_eq!(mass, table.entry(i, j).norm_sqr(), epsilon = 1e-6);
        }
    }
}

#[test]
fn weak_limit_mean_converges_monotonically_to_weak_value() {
    let scenario = spin_scenario();
    let observable = scenario.observable("pi_1").unwrap();
    let table = scenario.chain.path_table().unwrap();
    let wv = weak_value(&table, observable.eigenvalues(), 0).unwrap();
    assert!(wv.value.norm() <= 10.0);
    let mut errors = Vec::new();
    for sigma in [10.0, 1e2, 1e3, 1e4] {
        let profile = PointerProfile::gaussian(sigma).unwrap();
        let jd = joint_distribution_auto(&scenario.chain, observable, &profile).unwrap();
        errors.push((jd.conditional_mean_reading(0).unwrap() - wv.value.re).abs());
    }
    for pair in errors.windows(2) {
        assert!(
            pair[1] < pair[0],
            "weak-limit error should decrease: {errors:?}"
        );
    }
    assert!(errors[2] < 1e-4, "error at width 1e3: {}", errors[2]);
}

#[test]
fn weak_limit_momentum_reads_imaginary_part() {
    let scenario = spin_scenario();
    let observable = scenario.observable("pi_1").unwrap();
    let table = scenario.chain.path_table().unwrap();
    let wv = weak_value(&table, observable.eigenvalues(), 0).unwrap();
    let sigma = 1e3;
    let profile = PointerProfile::gaussian(sigma).unwrap();
    let m = momentum_mean_reading(&scenario.chain, observable, &profile, 0).unwrap();
    let expected = wv.value.im / (2.0 * sigma * sigma);
    assert!(
        (m - expected).abs() <= 0.05 * expected.abs(),
        "momentum mean {m} vs weak prediction {expected}"
    );
    // And against the closed form exactly.
    let oracle = gaussian_oracle(&table, observable.eigenvalues(), 1.0, sigma, 0);
    assert_abs_diff_eq!(m, oracle.momentum_mean, epsilon = 1e-12);
}

#[test]
fn momentum_reads_near_unit_imaginary_weak_value() {
    // Close to the double-dark configuration the projector weak value is
    // e^{i phi}; at phi = pi/2 it is purely imaginary, so the position mean
    // stays put while the momentum mean reads Im = 1.
    let delta = 0.01;
    let scenario = build_spin_scenario(SpinScenarioParams::new(
        std::f64::consts::PI - delta,
        std::f64::consts::PI - delta,
        std::f64::consts::FRAC_PI_2,
        0.0,
    ))
    .unwrap();
    let observable = scenario.observable("pi_1").unwrap();
    let table = scenario.chain.path_table().unwrap();
    let wv = weak_value(&table, observable.eigenvalues(), 0).unwrap();
    assert!((wv.value.im - 1.0).abs() < 1e-4);
    let sigma = 1e3;
    let profile = PointerProfile::gaussian(sigma).unwrap();
    let m = momentum_mean_reading(&scenario.chain, observable, &profile, 0).unwrap();
    let expected = 2.0 * (1.0 / (4.0 * sigma * sigma)) * wv.value.im;
    assert!(
        (m - expected).abs() <= 0.05 * expected.abs(),
        "momentum {m} vs {expected}"
    );
}

#[test]
fn momentum_beta_scaling_is_linear_in_weak_regime() {
    let scenario = spin_scenario();
    let observable = scenario.observable("pi_1").unwrap();
    let sigma = 1e3;
    let full = momentum_mean_reading(
        &scenario.chain,
        observable,
        &PointerProfile::gaussian(sigma).unwrap(),
        0,
    )
    .unwrap();
    let half = momentum_mean_reading(
        &scenario.chain,
        observable,
        &PointerProfile::gaussian(sigma)
            .unwrap()
            .with_coupling(0.5)
            .unwrap(),
        0,
    )
    .unwrap();
    assert!(
        (half / full - 0.5).abs() < 0.01,
        "halving beta should halve the weak momentum mean: {half} vs {full}"
    );
}

#[test]
fn unconditional_mean_strong_local_weak_nonlocal() {
    let scenario = spin_scenario();
    let observable = scenario.observable("pi_1").unwrap();
    let table = scenario.chain.path_table().unwrap();
    for i in 0..2 {
        let a1 = table.entry(i, 0);
        let a2 = table.entry(i, 1);
        // Strong limit: the average over all trials localizes on the path
        // the projector watches.
        let strong = joint_distribution_auto(
            &scenario.chain,
            observable,
            &PointerProfile::gaussian(0.005).unwrap(),
        )
        .unwrap();
        assert_abs_diff_eq!(
            strong.unconditional_mean_reading(i).unwrap(),
            a1.norm_sqr(),
            epsilon = 1e-4
        );
        // Weak limit: the other path's amplitude enters.
        let weak = joint_distribution_auto(
            &scenario.chain,
            observable,
            &PointerProfile::gaussian(1e3).unwrap(),
        )
        .unwrap();
        assert_abs_diff_eq!(
            weak.unconditional_mean_reading(i).unwrap(),
            (a1 * (a1 + a2).conj()).re,
            epsilon = 1e-4
        );
    }
}

#[test]
fn marginal_equals_erased_two_step_density_across_six_decades() {
    let scenario = spin_scenario();
    let observable = scenario.observable("pi_1").unwrap();
    for exponent in -3..=3 {
        let sigma = 10f64.powi(exponent);
        let profile = PointerProfile::gaussian(sigma).unwrap();
        let jd = joint_distribution_auto(&scenario.chain, observable, &profile).unwrap();
        assert!(
            jd.norm_defect() < 1e-8,
            "normalization defect {} at width {sigma}",
            jd.norm_defect()
        );
        let erased = two_step_distribution(
            scenario.chain.initial(),
            scenario.chain.u1(),
            observable,
            &profile,
            jd.grid(),
        )
        .unwrap();
        assert!(
            max_marginal_defect(&jd, &erased) < 1e-10,
            "marginalization defect at width {sigma}"
        );
    }
}

#[test]
fn beta_width_equivalence_congruent_distributions() {
    let scenario = spin_scenario();
    let observable = scenario.observable("pi_1").unwrap();
    let beta = 2.5;
    let sigma = 0.4;
    let scaled = PointerProfile::gaussian(sigma)
        .unwrap()
        .with_coupling(beta)
        .unwrap();
    let jd_beta = joint_distribution_auto(&scenario.chain, observable, &scaled).unwrap();

    // Same grid in rescaled reading units f' = f / beta.
    let grid_beta = jd_beta.grid();
    let grid_unit = QuadratureGrid::new(
        grid_beta.f_min() / beta,
        grid_beta.f_max() / beta,
        grid_beta.points(),
    )
    .unwrap();
    let unit = PointerProfile::gaussian(sigma / beta).unwrap();
    let jd_unit = joint_distribution(&scenario.chain, observable, &unit, grid_unit).unwrap();

    for i in 0..2 {
        let row_beta = jd_beta.density_row(i).unwrap();
        let row_unit = jd_unit.density_row(i).unwrap();
        for (a, b) in row_beta.iter().zip(row_unit) {
            // P_beta(f) df = P_unit(f/beta) d(f/beta)
            assert_abs_diff_eq!(a * beta, *b, epsilon = 1e-10);
        }
        let mean_beta = jd_beta.conditional_mean_reading(i).unwrap();
        let mean_unit = jd_unit.conditional_mean_reading(i).unwrap();
        assert_abs_diff_eq!(mean_beta, beta * mean_unit, epsilon = 1e-10);
    }
}

#[test]
fn custom_sampled_gaussian_reproduces_analytic_gaussian() {
    // A sampled Gaussian loaded as a custom profile must agree with the
    // analytic one through the whole pipeline.
    let scenario = spin_scenario();
    let observable = scenario.observable("pi_1").unwrap();
    let sigma = 0.8;
    let sample_grid = QuadratureGrid::new(-14.0 * sigma, 14.0 * sigma, 16385).unwrap();
    let gaussian = PointerProfile::gaussian(sigma).unwrap();
    let samples: Vec<f64> = sample_grid
        .values()
        .iter()
        .map(|&f| gaussian.amplitude(f))
        .collect();
    let custom = PointerProfile::custom_sampled(sample_grid, samples, sigma).unwrap();

    let grid = QuadratureGrid::auto(&[0.0, 1.0], sigma).unwrap();
    let jd_custom = joint_distribution(&scenario.chain, observable, &custom, grid.clone()).unwrap();
    let jd_gauss = joint_distribution(&scenario.chain, observable, &gaussian, grid).unwrap();
    for i in 0..2 {
        assert_abs_diff_eq!(
            jd_custom.conditional_mean_reading(i).unwrap(),
            jd_gauss.conditional_mean_reading(i).unwrap(),
            epsilon = 1e-6
        );
        assert_abs_diff_eq!(
            jd_custom.postselection_probability(i).unwrap(),
            jd_gauss.postselection_probability(i).unwrap(),
            epsilon = 1e-6
        );
    }
}
