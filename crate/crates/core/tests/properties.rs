//! Invariants checked over grids and random samples.

mod common;

use std::f64::consts::PI;
use std::sync::OnceLock;

use common::*;
use proptest::prelude::*;
use squeezeforce::bloch::sigma_y;
use squeezeforce::cli::{parse_args_with_env, render};
use squeezeforce::force::{averaged_force, local_force, signed_averaged_force};
use squeezeforce::quadrature::{composite, integrate, QuadratureOptions};
use squeezeforce::squeeze::validate_moments;
use squeezeforce::sweep::{
    evaluate_point, find_crossover, force_gap, CrossoverParams, Curve, Fig1Params, Fig2Params,
};
use squeezeforce::{
    AveragingMode, Axis, DriveParams, FieldGeometry, ForceRecord, OpoConfig, Quadrature, Scheme,
    SqueezeParams, SweepGrid, Sweeper, Workers,
};

fn geometry() -> FieldGeometry {
    FieldGeometry::default()
}

#[test]
fn ideal_identity_over_squeeze_factor() {
    for i in 0..1000 {
        let r = 5.0 * i as f64 / 999.0;
        let p = SqueezeParams::from_r(r, 0.0).unwrap();
        let (n, m) = (p.n_photons(), p.m_corr());
        assert!(
            rel_close(m * m, n * (n + 1.0), 1e-10) || (n == 0.0 && m == 0.0),
            "r = {r}"
        );
        assert!(p.is_ideal());
    }
}

#[test]
fn opo_spectrum_identity_grid() {
    for kappa in [0.5, 1.0, 2.0, 4.0] {
        for j in 1..=10 {
            let epsilon = kappa / 2.0 * j as f64 / 11.0;
            let cfg = OpoConfig::new(kappa, epsilon).unwrap();
            for i in 0..101 {
                let omega = -10.0 * kappa + 20.0 * kappa * i as f64 / 100.0;
                let s = cfg.spectrum(omega).unwrap();
                assert!(s.n >= 0.0 && s.m >= 0.0);
                assert!(
                    rel_close(s.m * s.m, s.n * (s.n + 1.0), 1e-10),
                    "k={kappa} e={epsilon} w={omega}"
                );
                let mirror = cfg.spectrum(-omega).unwrap();
                assert_eq!((s.n, s.m), (mirror.n, mirror.m));
            }
        }
    }
}

proptest! {
    #[test]
    fn decay_rate_product(r in 0.0f64..3.0, frac in 0.0f64..=1.0, n in 0.0f64..50.0) {
        let ideal = SqueezeParams::from_r(r, 0.0).unwrap().decay_rates();
        prop_assert!((ideal.gamma_x * ideal.gamma_y - 0.25).abs() <= 1e-10 * ideal.gamma_x.max(1.0));

        let m = frac * (n * (n + 1.0)).sqrt();
        let p = SqueezeParams::from_moments(n, m, 0.0).unwrap();
        let rates = p.decay_rates();
        prop_assert!(rates.gamma_y >= 0.0);
        prop_assert!(rates.gamma_x * rates.gamma_y >= 0.0);
    }

    #[test]
    fn degree_round_trip(s in 0.0f64..=0.99) {
        let p = SqueezeParams::from_degree(s, 0.0).unwrap();
        prop_assert!((p.degree() - s).abs() <= 1e-12);
    }

    #[test]
    fn moments_outside_bound_are_reported(n in 0.0f64..10.0, excess in 1e-6f64..1.0) {
        let m = (n * (n + 1.0) + excess).sqrt();
        prop_assert!(!validate_moments(n, m).unwrap().is_ok());
        prop_assert!(SqueezeParams::from_moments(n, m, 0.0).is_err());
    }
}

#[test]
fn bloch_bound_on_acceptance_grid() {
    for &degree in &[0.0, 0.25, 0.5, 0.75, 0.9, 0.95] {
        for k in 0..16 {
            let phi = 2.0 * PI * k as f64 / 16.0;
            let p = SqueezeParams::from_degree(degree, phi).unwrap();
            for b in 0..=40 {
                let beta = b as f64 * 0.5;
                for delta in [-0.9, -0.5, 0.0, 0.1, 0.5, 0.9] {
                    for quad in Quadrature::ALL {
                        let d = DriveParams::new(beta, delta, quad).unwrap();
                        for scheme in Scheme::ALL {
                            let s = sigma_y(scheme, &p, &d).unwrap().value;
                            assert!(
                                s.abs() <= 1.0,
                                "{scheme:?} s={degree} phi={phi} beta={beta} delta={delta}"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn local_force_is_half_wavelength_periodic() {
    let g = geometry();
    let lambda = g.wavelength();
    let p = SqueezeParams::from_degree(0.75, 0.8 * PI).unwrap();
    for (beta, delta) in [(1.0, 0.0), (10.0, 0.1), (3.0, -0.4)] {
        let d = DriveParams::new(beta, delta, Quadrature::Noisy).unwrap();
        for scheme in Scheme::ALL {
            for i in 0..200 {
                let x = lambda * i as f64 / 200.0;
                let a = local_force(&g, &p, &d, x, scheme).unwrap();
                let b = local_force(&g, &p, &d, x + lambda / 2.0, scheme).unwrap();
                assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "x={x}");
            }
        }
    }
}

#[test]
fn signed_force_averages_to_zero_over_a_period() {
    let g = geometry();
    let lambda = g.wavelength();
    let p = SqueezeParams::from_degree(0.75, 0.8 * PI).unwrap();
    for beta in [1.0, 10.0] {
        let d = DriveParams::new(beta, 0.1, Quadrature::Noisy).unwrap();
        for scheme in Scheme::ALL {
            let f = |x: f64| local_force(&g, &p, &d, x, scheme).unwrap();
            let total: f64 = (0..8)
                .map(|k| {
                    gl_integrate(
                        f,
                        k as f64 * lambda / 8.0,
                        (k + 1) as f64 * lambda / 8.0,
                        40,
                    )
                })
                .sum();
            assert!((total / lambda).abs() < 1e-12, "beta={beta} {scheme:?}");
        }
    }
}

#[test]
fn local_force_is_finite_everywhere() {
    let g = geometry();
    let k = g.k();
    let p = SqueezeParams::from_degree(0.95, 0.8 * PI).unwrap();
    let d = DriveParams::new(20.0, 0.0, Quadrature::Noisy).unwrap();
    let mut xs: Vec<f64> = (0..1_000_000)
        .map(|i| g.wavelength() * i as f64 / 1_000_000.0)
        .collect();
    for u in [PI / 2.0 - 1e-12, PI / 2.0, PI / 2.0 + 1e-12, PI, 0.0] {
        xs.push(u / k);
    }
    for scheme in Scheme::ALL {
        for &x in &xs {
            let f = local_force(&g, &p, &d, x, scheme).unwrap();
            assert!(f.is_finite(), "x={x}");
        }
    }
}

#[test]
fn quadrature_has_converged_at_reported_panels() {
    let g = geometry();
    let half = g.wavelength() / 2.0;
    let opts = QuadratureOptions::default();
    for &(degree, beta, delta) in &[
        (0.0, 1.0, 0.5),
        (0.75, 10.0, 0.0),
        (0.95, 20.0, 0.1),
        (0.5, 0.1, -0.3),
    ] {
        let p = SqueezeParams::from_degree(degree, 0.8 * PI).unwrap();
        let d = DriveParams::new(beta, delta, Quadrature::Noisy).unwrap();
        for scheme in Scheme::ALL {
            let mut f = |x: f64| local_force(&g, &p, &d, x, scheme).map(f64::abs);
            let r = integrate(&mut f, 0.0, half, &opts).unwrap();
            let coarse = composite(&mut f, 0.0, half, r.panels).unwrap();
            let fine = composite(&mut f, 0.0, half, 2 * r.panels).unwrap();
            assert!(
                (coarse - fine).abs() <= 1e-9 * fine.abs().max(f64::MIN_POSITIVE),
                "{scheme:?} s={degree}"
            );
        }
    }
}

#[test]
fn zero_detuning_needs_squeezing() {
    let g = geometry();
    let d = DriveParams::new(10.0, 0.0, Quadrature::Noisy).unwrap();
    let classical = SqueezeParams::from_degree(0.0, 0.8 * PI).unwrap();
    let squeezed = SqueezeParams::from_degree(0.75, 0.8 * PI).unwrap();
    for scheme in Scheme::ALL {
        let f0 = averaged_force(&g, &classical, &d, scheme, AveragingMode::AbsMean).unwrap();
        let f1 = averaged_force(&g, &squeezed, &d, scheme, AveragingMode::AbsMean).unwrap();
        assert!(f0.abs() < 1e-12, "{scheme:?}");
        assert!(f1 > 1e-3, "{scheme:?}");
    }
}

fn mixed_grid() -> SweepGrid {
    SweepGrid {
        degree: Axis::linspace(0.0, 0.9, 4),
        phi: Axis::periodic(0.0, 2.0 * PI, 5),
        delta: vec![0.0, 0.3],
        beta: Axis::linspace(0.0, 12.0, 7),
        curves: vec![Curve::SOLID, Curve::DOTTED, Curve::DASHED],
        averaging: AveragingMode::AbsMean,
        signed: false,
    }
}

fn mixed_rows() -> &'static [ForceRecord] {
    static ROWS: OnceLock<Vec<ForceRecord>> = OnceLock::new();
    ROWS.get_or_init(|| Sweeper::new(Workers::Fixed(4)).run(&mixed_grid()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn grid_rows_match_single_point_evaluation(index in 0usize..840) {
        let grid = mixed_grid();
        let rows = mixed_rows();
        prop_assert_eq!(rows.len(), 840);
        let pt = grid.point(index);
        let single = evaluate_point(&geometry(), &pt, grid.averaging, grid.signed).unwrap();
        prop_assert_eq!(&rows[index], &single);
    }
}

#[test]
fn crossover_changes_sign() {
    let g = geometry();
    let params = CrossoverParams::default();
    let found = find_crossover(&g, &params).unwrap();
    let p = SqueezeParams::from_degree(params.degree, params.phi).unwrap();
    let gap = |beta: f64| force_gap(&g, &p, params.delta, beta, params.averaging).unwrap();
    let (below, above) = (gap(found.beta_star - 0.01), gap(found.beta_star + 0.01));
    assert!(below * above < 0.0, "{below} {above}");
    assert!(gap(found.beta_star).abs() < 1e-10);
}

#[test]
fn signed_surface_is_odd_in_phase() {
    let g = geometry();
    for i in 0..8 {
        let degree = 0.9 * i as f64 / 7.0;
        for j in 0..8 {
            let phi = -PI + PI * (j as f64 + 0.5) / 8.0;
            let d = DriveParams::new(10.0, 0.0, Quadrature::Noisy).unwrap();
            for scheme in Scheme::ALL {
                let plus = SqueezeParams::from_degree(degree, -phi).unwrap();
                let minus = SqueezeParams::from_degree(degree, phi).unwrap();
                let a =
                    signed_averaged_force(&g, &plus, &d, scheme, AveragingMode::AbsMean).unwrap();
                let b =
                    signed_averaged_force(&g, &minus, &d, scheme, AveragingMode::AbsMean).unwrap();
                assert!(
                    (a + b).abs() <= 1e-9 * a.abs().max(1e-12),
                    "s={degree} phi={phi}: {a} {b}"
                );
            }
        }
    }
}

#[test]
fn fig2_rows_mirror_across_phase() {
    let params = Fig2Params {
        degree: Axis::linspace(0.0, 0.9, 8),
        phi: Axis::periodic(0.0, 2.0 * PI, 8),
        ..Fig2Params::default()
    };
    let rows = Sweeper::new(Workers::Fixed(2)).fig2(&params).unwrap();
    let curves = rows.len() / 64;
    let at = |i: usize, j: usize, c: usize| rows[(i * 8 + j) * curves + c].force;
    for i in 0..8 {
        for j in 1..8 {
            for c in 0..curves {
                let (a, b) = (at(i, j, c), at(i, 8 - j, c));
                assert!(
                    (a + b).abs() <= 1e-9 * a.abs() + 1e-12,
                    "row {i} col {j}: {a} {b}"
                );
            }
        }
    }
}

#[test]
fn detuned_curves_snapshot() {
    let sweeper = Sweeper::new(Workers::Fixed(1));
    let at = |delta: f64| {
        let params = Fig1Params {
            delta,
            beta: Axis::fixed(10.0),
            ..Fig1Params::default()
        };
        let rows = sweeper.fig1(&params).unwrap();
        let pick = |c: Curve| {
            rows.iter()
                .find(|r| r.scheme == c.scheme && r.quadrature == c.quadrature)
                .unwrap()
                .force
        };
        (pick(Curve::SOLID), pick(Curve::DOTTED), pick(Curve::DASHED))
    };
    let (solid0, dotted0, dashed0) = at(0.0);
    let (solid1, dotted1, dashed1) = at(0.1);
    assert!(solid1 > solid0);
    assert!(dashed1 > dashed0);
    assert!(rel_close(dotted0, 0.224_026_131_186_69, 1e-9), "{dotted0}");
    assert!(rel_close(dotted1, 0.055_968_503_471_47, 1e-9), "{dotted1}");
}

fn angle_text() -> impl Strategy<Value = String> {
    prop_oneof![
        (-2.0f64..2.0).prop_map(|c| format!("{c}pi")),
        (-7.0f64..7.0).prop_map(|x| x.to_string()),
        Just("pi".to_string()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fig1_config_survives_render(
        delta in -0.99f64..0.99,
        phi in angle_text(),
        degree in 0.0f64..0.99,
        beta_max in 0.0f64..50.0,
        count in 1usize..500,
        workers in prop_oneof![Just("auto".to_string()), (1usize..64).prop_map(|n| n.to_string())],
        unit in prop_oneof![Just("half"), Just("full")],
    ) {
        let argv = vec![
            "squeezeforce".to_string(), "fig1".into(),
            "--delta".into(), delta.to_string(),
            "--phi".into(), phi,
            "--degree".into(), degree.to_string(),
            "--beta-max".into(), beta_max.to_string(),
            "--beta-count".into(), count.to_string(),
            "--workers".into(), workers,
            "--unit".into(), unit.into(),
        ];
        let first = parse_args_with_env(&argv, None).unwrap();
        let again = parse_args_with_env(render(&first), None).unwrap();
        prop_assert_eq!(first, again);
    }

    #[test]
    fn sweep_config_survives_render(
        deltas in prop::collection::vec(-0.9f64..0.9, 1..5),
        signed in any::<bool>(),
        configs in prop_oneof![Just("sc"), Just("svsc"), Just("svsc,sc")],
    ) {
        let list: Vec<String> = deltas.iter().map(|d| d.to_string()).collect();
        let argv = vec![
            "squeezeforce".to_string(), "sweep".into(),
            "--delta".into(), list.join(","),
            "--signed".into(), signed.to_string(),
            "--configs".into(), configs.into(),
            "--averaging".into(), "quarter".into(),
        ];
        let first = parse_args_with_env(&argv, Some("3")).unwrap();
        let again = parse_args_with_env(render(&first), None).unwrap();
        prop_assert_eq!(first, again);
    }
}
