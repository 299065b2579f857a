use eiwe_core::gaussian::*;
use eiwe_core::thermo::*;
use eiwe_core::{Hp, Real};
use proptest::prelude::*;

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(f64::MIN_POSITIVE)
}

fn euler() -> impl Strategy<Value = Symplectic2> {
    euler_in::<f64>()
}

fn euler_in<T: Real>() -> impl Strategy<Value = Symplectic2<T>> {
    (0.0..std::f64::consts::TAU, -1.5..1.5f64, 0.0..std::f64::consts::TAU)
        .prop_map(|(t1, s, t2)| Symplectic2::euler(t1, s, t2))
}

/// Physical symmetric state with c2 = -c1: `a >= 1/2`, `a - c >= 1/2`.
fn symmetric_squeezed() -> impl Strategy<Value = StandardFormParams> {
    (0.5..5.0f64, 0.0..1.0f64).prop_map(|(a, frac)| {
        let c = (a - 0.5) * frac;
        StandardFormParams::symmetric(a, c, -c).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn local_symplectics_preserve_invariants(n in 0.0..2.0f64, r in 0.0..2.0f64, sa in euler_in::<Hp>(), sb in euler_in::<Hp>()) {
        // squeezed pure states cancel ~e^(8r) in det sigma, beyond f64
        let s = build_tms_thermal(Hp::from_f64(n), Hp::from_f64(r)).unwrap();
        let before = symplectic_invariants(&s);
        let after = symplectic_invariants(&apply_local_symplectic(&s, &sa, &sb));
        prop_assert!(rel(before.det_sigma.to_f64(), after.det_sigma.to_f64()) < 1e-9);
        prop_assert!(rel(before.delta.to_f64(), after.delta.to_f64()) < 1e-9);
    }

    #[test]
    fn mixing_term_equals_delta(p in symmetric_squeezed()) {
        let s = build_symmetric_state(&p).unwrap();
        let inv = symplectic_invariants(&s);
        prop_assert!((p.mixing_invariant() - inv.delta).abs() <= 1e-14 * inv.delta.abs().max(1.0));
    }

    #[test]
    fn invariant_determinant_matches_direct(p in symmetric_squeezed()) {
        let s = build_symmetric_state(&p).unwrap();
        let direct = conditional_state_after_b_measurement(&s, &GaussianMeasurement::heterodyne()).unwrap().det();
        let via = conditional_determinant_invariant_form(&symplectic_invariants(&s), p.a).unwrap();
        prop_assert!(rel(direct, via) < 1e-10, "{} vs {}", direct, via);
    }

    #[test]
    fn backaction_keeps_physicality(n in 0.0..3.0f64, r in 0.0..2.5f64, sa in euler(), sb in euler(),
                                    lambda in 0.1..10.0f64, phi in 0.0..std::f64::consts::TAU) {
        let s = apply_local_symplectic(&build_tms_thermal(n, r).unwrap(), &sa, &sb);
        let cond = conditional_state_after_b_measurement(&s, &GaussianMeasurement::new(lambda, phi).unwrap()).unwrap();
        prop_assert!(cond.is_physical());
        let mu = purity(&cond).unwrap();
        prop_assert!(mu > 0.0 && mu <= 1.0);
        prop_assert!(von_neumann_entropy(mu).unwrap() >= 0.0);
    }

    #[test]
    fn heterodyne_covariance_is_exact(phi in -100.0..100.0f64) {
        let g = measurement_covariance::<f64>(&GaussianMeasurement::heterodyne_rotated(phi).unwrap());
        prop_assert_eq!(*g.matrix(), [[0.5, 0.0], [0.0, 0.5]]);
    }

    #[test]
    fn work_is_bounded(beta in 0.2..120.0f64, r in 0.0..3.0f64) {
        let ctx = ThermalContext::from_beta(beta).unwrap();
        let w = extracted_work_exact(&ctx, r, &GaussianMeasurement::heterodyne()).unwrap();
        prop_assert!(w.w_over_hw >= 0.0);
        prop_assert!(w.w_over_hw <= w.s_ther / beta * (1.0 + 1e-12));
    }
}

#[test]
fn mixing_term_off_class_gap() {
    // b = a but c2 != -c1: the gap is exactly (c1 + c2)^2
    let p = StandardFormParams::symmetric(2.0, 0.9, -0.3).unwrap();
    let inv = symplectic_invariants(&build_symmetric_state(&p).unwrap());
    assert!((inv.delta - p.mixing_invariant() - 0.36).abs() < 1e-14);
}

#[test]
fn work_monotone_in_squeezing() {
    for beta in [0.5, 3.0, 20.0, 100.0] {
        let ctx = ThermalContext::from_beta(beta).unwrap();
        let mut prev = 0.0;
        for i in 0..=60 {
            let r = i as f64 * 0.05;
            let w = extracted_work_exact(&ctx, r, &GaussianMeasurement::heterodyne())
                .unwrap()
                .w_over_hw;
            if i == 0 {
                assert_eq!(w, 0.0);
            }
            assert!(w >= prev, "beta {beta}, r {r}");
            prev = w;
        }
    }
}

#[test]
fn entropy_forms_agree() {
    let mut n = 1e-6_f64;
    while n <= 100.0 {
        let nh = Hp::from_f64(n);
        let mu = Hp::one() / (Hp::one() + nh.clone() + nh);
        let s = von_neumann_entropy(mu).unwrap().to_f64();
        let thermal = (n + 1.0) * n.ln_1p() - n * n.ln();
        assert!(rel(s, thermal) < 1e-12, "n {n}: {s} vs {thermal}");
        n *= 1.7;
    }
}

#[test]
fn pure_tms_collapses_to_vacuum_when_heterodyned() {
    for i in 0..=50 {
        let r = i as f64 * 0.1;
        let cond = conditional_state_after_b_measurement(
            &build_tms_thermal(0.0, r).unwrap(),
            &GaussianMeasurement::heterodyne(),
        )
        .unwrap();
        let m = cond.matrix();
        assert!((m[0][0] - 0.5).abs() < 1e-12 && (m[1][1] - 0.5).abs() < 1e-12 && m[0][1].abs() < 1e-12);
    }
}

#[test]
fn negativity_of_pure_tms() {
    for r in [0.1, 0.5, 1.0, 2.0] {
        let e = log_negativity(&build_tms_thermal(0.0, r).unwrap()).unwrap();
        assert!((e - 2.0 * r).abs() < 1e-10);
    }
    let hot = log_negativity(&build_tms_thermal(0.5, 0.1).unwrap()).unwrap();
    let cold = log_negativity(&build_tms_thermal(0.0, 0.1).unwrap()).unwrap();
    assert!(hot < cold);
}
