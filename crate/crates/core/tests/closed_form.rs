use eiwe_core::gaussian::GaussianMeasurement;
use eiwe_core::thermo::{extracted_work_closed_form, extracted_work_exact, ThermalContext};

fn gap(beta: f64, r: f64) -> f64 {
    let ctx = ThermalContext::from_beta(beta).unwrap();
    let exact = extracted_work_exact(&ctx, r, &GaussianMeasurement::heterodyne())
        .unwrap()
        .w_over_hw;
    let closed = extracted_work_closed_form(&ctx, r).unwrap().w_over_hw;
    (exact - closed).abs() / closed
}

const BETAS: [f64; 6] = [50.0, 75.0, 100.0, 150.0, 200.0, 400.0];

fn r_grid() -> impl Iterator<Item = f64> {
    (0..=19).map(|i| 0.1 + 0.1 * i as f64)
}

#[test]
fn within_two_percent_when_cold() {
    for beta in BETAS {
        for r in r_grid() {
            let g = gap(beta, r);
            assert!(g < 0.02, "beta {beta}, r {r}: {g}");
        }
    }
}

#[test]
fn gap_shrinks_with_beta() {
    for r in r_grid() {
        let gaps: Vec<f64> = BETAS.iter().map(|&b| gap(b, r)).collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "r {r}: {gaps:?}");
    }
}

#[test]
fn gap_scales_like_inverse_beta() {
    for r in [0.5, 1.0, 2.0] {
        let c: Vec<f64> = BETAS.iter().map(|&b| gap(b, r) * b).collect();
        let (lo, hi) = c
            .iter()
            .fold((f64::INFINITY, 0.0_f64), |(l, h), &x| (l.min(x), h.max(x)));
        assert!(hi / lo < 1.5, "r {r}: beta * gap = {c:?}");
    }
}
