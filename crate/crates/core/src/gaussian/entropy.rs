use crate::error::{Error, Result};
use crate::gaussian::covariance::{SingleModeCovariance, TwoModeCovariance};
use crate::scalar::Real;

/// Computed purities in `(1, 1 + PURITY_CLAMP]` are rounding and clamp to 1.
pub const PURITY_CLAMP: f64 = 1e-9;

/// A Gaussian covariance matrix of some number of modes.
pub trait Covariance {
    type Scalar: Real;
    const MODES: u32;

    fn determinant(&self) -> Self::Scalar;
}

impl<T: Real> Covariance for SingleModeCovariance<T> {
    type Scalar = T;
    const MODES: u32 = 1;

    fn determinant(&self) -> T {
        self.det()
    }
}

impl<T: Real> Covariance for TwoModeCovariance<T> {
    type Scalar = T;
    const MODES: u32 = 2;

    fn determinant(&self) -> T {
        self.det()
    }
}

/// `mu = 1 / (2^n sqrt(det sigma))`.
pub fn purity<C: Covariance>(sigma: &C) -> Result<C::Scalar> {
    let det = sigma.determinant();
    if !(det > C::Scalar::zero()) {
        return Err(Error::InvalidState(format!(
            "covariance determinant {:e} is not positive",
            det.to_f64()
        )));
    }
    let scale = C::Scalar::from_f64(f64::from(1u32 << C::MODES));
    let mu = C::Scalar::one() / (scale * det.sqrt());
    clamp_purity(mu)
}

fn clamp_purity<T: Real>(mu: T) -> Result<T> {
    if mu <= T::one() {
        return Ok(mu);
    }
    if mu <= T::from_f64(1.0 + PURITY_CLAMP) {
        Ok(T::one())
    } else {
        Err(Error::PurityOutOfRange(mu.to_f64()))
    }
}

/// Von Neumann entropy (nats) of a single-mode Gaussian state from its purity:
///
/// `S = (1-mu)/(2 mu) ln((1+mu)/(1-mu)) - ln(2 mu/(1+mu))`.
///
/// Deficits `1 - mu` below [`Real::pure_threshold`] return exactly 0.
pub fn von_neumann_entropy<T: Real>(mu: T) -> Result<T> {
    if !(mu > T::zero()) || mu > T::one() {
        return Err(Error::PurityOutOfRange(mu.to_f64()));
    }
    let one = T::one();
    let deficit = one.clone() - mu.clone();
    if deficit < T::pure_threshold() {
        return Ok(T::zero());
    }
    let plus = one.clone() + mu.clone();
    let two_mu = mu.clone() + mu.clone();
    let first = deficit.clone() / two_mu.clone() * (plus.clone() / deficit).ln();
    let second = (two_mu / plus).ln();
    Ok((first - second).max(T::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Hp;
    use approx::assert_relative_eq;

    // Independent route: S = (nu + 1/2) ln(nu + 1/2) - (nu - 1/2) ln(nu - 1/2), nu = 1/(2 mu).
    fn entropy_symplectic_form(mu: f64) -> f64 {
        let nu = 0.5 / mu;
        let lo = nu - 0.5;
        let lo_term = if lo > 0.0 { lo * lo.ln() } else { 0.0 };
        (nu + 0.5) * (nu + 0.5).ln() - lo_term
    }

    fn thermal_entropy(n: f64) -> f64 {
        (n + 1.0) * (n + 1.0).ln() - n * n.ln()
    }

    #[test]
    fn vacuum_is_pure() {
        assert_eq!(purity(&SingleModeCovariance::<f64>::vacuum()).unwrap(), 1.0);
        assert_eq!(purity(&TwoModeCovariance::<f64>::vacuum()).unwrap(), 1.0);
        assert_eq!(von_neumann_entropy(1.0).unwrap(), 0.0);
    }

    #[test]
    fn thermal_purity() {
        for n in [0.0, 0.1, 1.0, 7.5] {
            let th = SingleModeCovariance::thermal(n).unwrap();
            assert_relative_eq!(purity(&th).unwrap(), 1.0 / (1.0 + 2.0 * n), max_relative = 1e-15);
        }
    }

    #[test]
    fn thermal_entropy_n_one() {
        let s = von_neumann_entropy(1.0 / 3.0).unwrap();
        assert_relative_eq!(s, 2.0 * 2f64.ln(), max_relative = 1e-13);
        assert_relative_eq!(s, 1.38629, epsilon = 1e-5);
        assert_relative_eq!(s, entropy_symplectic_form(1.0 / 3.0), epsilon = 1e-12);
    }

    #[test]
    fn purity_clamp_and_rejection() {
        let slightly = SingleModeCovariance::new_unchecked([[0.5 - 1e-12, 0.0], [0.0, 0.5 - 1e-12]]);
        assert_eq!(purity(&slightly).unwrap(), 1.0);
        let far = SingleModeCovariance::new_unchecked([[0.4, 0.0], [0.0, 0.4]]);
        assert!(matches!(purity(&far), Err(Error::PurityOutOfRange(_))));
        let zero = SingleModeCovariance::new_unchecked([[0.0, 0.0], [0.0, 1.0]]);
        assert!(matches!(purity(&zero), Err(Error::InvalidState(_))));
    }

    #[test]
    fn entropy_domain() {
        assert!(von_neumann_entropy(0.0).is_err());
        assert!(von_neumann_entropy(-0.1).is_err());
        assert!(von_neumann_entropy(1.0 + 1e-9).is_err());
        assert!(von_neumann_entropy(f64::NAN).is_err());
        assert_eq!(von_neumann_entropy(1.0 - 1e-13).unwrap(), 0.0);
    }

    #[test]
    fn entropy_matches_thermal_form_over_range() {
        let mut n = 1e-6;
        while n <= 100.0 {
            let s = von_neumann_entropy(1.0 / (1.0 + 2.0 * n)).unwrap();
            let want = thermal_entropy(n);
            assert!((s - want).abs() <= 1e-12 * want.max(1.0), "n = {n}: {s} vs {want}");
            n *= 1.7;
        }
    }

    #[test]
    fn extended_precision_resolves_tiny_deficits() {
        let n = 1e-40_f64;
        let mu = Hp::one() / (Hp::one() + Hp::from_f64(2.0 * n));
        let s = von_neumann_entropy(mu).unwrap().to_f64();
        let want = n * (1.0 - n.ln());
        assert_relative_eq!(s, want, max_relative = 1e-12);
    }

    #[test]
    fn entropy_is_monotone_in_purity() {
        let mut prev = f64::INFINITY;
        for k in 1..200 {
            let mu = k as f64 / 200.0;
            let s = von_neumann_entropy(mu).unwrap();
            assert!(s >= 0.0 && s < prev);
            prev = s;
        }
    }
}
