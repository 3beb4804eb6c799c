use bandsolve::bounds::{bounds_report, hyperbola_integral, Hyperbola};
use bandsolve::{
    extend_by_symmetry, integrate_ivp, normalize_lambda, reflect_sign, BvpProblem, IntegratorCtrl,
    ModelParams, ShootingOptions,
};
use proptest::prelude::*;

fn kappa() -> impl Strategy<Value = f64> {
    prop_oneof![-3.0..-0.1f64, 0.1..3.0f64]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sign_reflection_is_exact(k in kappa(), u0 in -5.0..5.0f64, r_max in 0.5..20.0f64) {
        let ctrl = IntegratorCtrl::default();
        let p = integrate_ivp(&ModelParams::new(k, u0), r_max, &ctrl).unwrap();
        let q = integrate_ivp(&ModelParams::new(k, -u0), r_max, &ctrl).unwrap();
        prop_assert_eq!(reflect_sign(&p), q);
    }

    #[test]
    fn first_integral_is_conserved(k in kappa(), u0 in -5.0..5.0f64, r_max in 0.5..20.0f64) {
        let p = integrate_ivp(&ModelParams::new(k, u0), r_max, &IntegratorCtrl::default()).unwrap();
        prop_assert!(p.max_first_integral_residual() < 1e-8);
        prop_assert!(p.samples().iter().all(|s| s.slope().abs() < 1.0));
    }

    #[test]
    fn even_extension_mirrors_samples(k in kappa(), u0 in -5.0..5.0f64) {
        let p = integrate_ivp(&ModelParams::new(k, u0), 3.0, &IntegratorCtrl::default()).unwrap();
        let full = extend_by_symmetry(&p).unwrap();
        for s in p.samples() {
            let m = full.eval(-s.r).unwrap();
            prop_assert_eq!(m.u, s.u);
            prop_assert_eq!(m.v, -s.v);
        }
    }

    #[test]
    fn sessile_estimates_hold(a in 0.2..3.0f64, beta in -3.0..3.0f64, k in 0.2..3.0f64) {
        prop_assume!(beta.abs() > 0.05);
        let rep = bounds_report(&BvpProblem::new(a, beta, k), &ShootingOptions::default()).unwrap();
        prop_assert!(rep.passed, "{:?}", rep.records);
    }

    #[test]
    fn integral_is_affine_in_offset(c in -10.0..10.0f64, m in 0.01..10.0f64, a in 0.01..10.0f64) {
        let f0 = hyperbola_integral(0.0, m, a).unwrap();
        let f = hyperbola_integral(c, m, a).unwrap();
        prop_assert!((f - f0 - a * c).abs() <= 1e-12 * f0.abs().max(a * c.abs()).max(1.0));
        let h = Hyperbola::new(c, m).unwrap();
        prop_assert_eq!(h.integral(a).unwrap(), f);
    }

    #[test]
    fn hyperbola_curvature_is_constant(c in -10.0..10.0f64, m in 0.05..10.0f64, r in -5.0..5.0f64) {
        let h = Hyperbola::new(c, m).unwrap();
        prop_assert!((h.curvature_at(r) * m - 1.0).abs() < 1e-10);
    }

    #[test]
    fn lambda_shift_preserves_equation(k in kappa(), lambda in -5.0..5.0f64, u0 in -3.0..3.0f64) {
        let (norm, shift) = normalize_lambda(&ModelParams::new(k, u0).with_lambda(lambda)).unwrap();
        prop_assert_eq!(norm.lambda, 0.0);
        // curvature k u_norm equals k (u_norm - shift) + lambda
        let u = norm.u0;
        prop_assert!((k * u - (k * (u - shift) + lambda)).abs() < 1e-12 * (1.0 + (k * u).abs() + lambda.abs()));
    }
}
