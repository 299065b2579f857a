use crate::error::{invalid, Error, Result};
use crate::gaussian::covariance::{add2, det2, mul2, sub2, transpose2, Mat2, SingleModeCovariance, TwoModeCovariance};
use crate::scalar::Real;

/// General-dyne Gaussian measurement on mode b.
///
/// `lambda` is the quadrature-noise ratio of the measurement seed state and
/// `phi` its rotation. `lambda = 1` is a projection onto coherent states
/// (heterodyne), which is what an unmonitored environment performs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianMeasurement {
    lambda: f64,
    phi: f64,
}

impl GaussianMeasurement {
    pub fn new(lambda: f64, phi: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(invalid("lambda", "measurement strength must be finite and positive"));
        }
        if !phi.is_finite() {
            return Err(invalid("phi", "rotation angle must be finite"));
        }
        Ok(Self { lambda, phi })
    }

    pub fn heterodyne() -> Self {
        Self { lambda: 1.0, phi: 0.0 }
    }

    /// Coherent-state projection in a rotated frame; identical covariance for every `phi`.
    pub fn heterodyne_rotated(phi: f64) -> Result<Self> {
        Self::new(1.0, phi)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn is_heterodyne(&self) -> bool {
        self.lambda == 1.0
    }
}

/// `gamma = R(phi) diag(lambda/2, 1/(2 lambda)) R(phi)^T`.
///
/// Written in terms of `(lambda + 1/lambda)` and `(lambda - 1/lambda)` so that
/// `lambda = 1` yields `diag(1/2, 1/2)` with no rounding for any `phi`.
pub fn measurement_covariance<T: Real>(meas: &GaussianMeasurement) -> SingleModeCovariance<T> {
    let lambda = T::from_f64(meas.lambda);
    let inv = T::one() / lambda.clone();
    let sum = (lambda.clone() + inv.clone()) * T::half();
    let diff = (lambda - inv) * T::half();
    let (s2, c2) = T::from_f64(2.0 * meas.phi).sin_cos();
    let xx = (sum.clone() + diff.clone() * c2.clone()) * T::half();
    let pp = (sum - diff.clone() * c2) * T::half();
    let xp = diff * s2 * T::half();
    SingleModeCovariance::new_unchecked([[xx, xp.clone()], [xp, pp]])
}

/// Closed-form inverse of a 2x2 block via its adjugate.
pub(crate) fn inverse2<T: Real>(m: &Mat2<T>) -> Result<Mat2<T>> {
    let det = det2(m);
    let scale = m[0][0].abs().max(m[1][1].abs()).to_f64().max(f64::MIN_POSITIVE);
    if !(det.to_f64() > 1e-300 * scale * scale) {
        return Err(Error::Singular(det.to_f64()));
    }
    Ok([
        [m[1][1].clone() / det.clone(), -m[0][1].clone() / det.clone()],
        [-m[1][0].clone() / det.clone(), m[0][0].clone() / det],
    ])
}

/// Covariance of mode a conditioned on a Gaussian measurement of mode b:
/// `sigma_a - C (sigma_b + gamma)^-1 C^T`.
///
/// The measured outcome only displaces the conditional state, so it does not
/// appear here.
pub fn conditional_state_after_b_measurement<T: Real>(
    sigma: &TwoModeCovariance<T>,
    meas: &GaussianMeasurement,
) -> Result<SingleModeCovariance<T>> {
    let gamma = measurement_covariance::<T>(meas);
    let denom = add2(&sigma.block_b(), gamma.matrix());
    let inv = inverse2(&denom)?;
    let c = sigma.block_c();
    let backaction = mul2(&mul2(&c, &inv), &transpose2(&c));
    let mut m = sub2(&sigma.block_a(), &backaction);
    // restore exact symmetry lost to rounding
    let off = (m[0][1].clone() + m[1][0].clone()) * T::half();
    m[0][1] = off.clone();
    m[1][0] = off;
    SingleModeCovariance::new(m)
}
