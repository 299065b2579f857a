use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian::covariance::{symplectic_form, TwoModeCovariance};
use crate::scalar::Real;

/// Symplectic eigenvalues `nu_- <= nu_+` of a positive-definite 4x4 covariance.
///
/// Computed as the positive eigenvalues of the Hermitian matrix
/// `i sigma^{1/2} Omega sigma^{1/2}`, which come in `±nu` pairs.
pub fn symplectic_eigenvalues(m: &[[f64; 4]; 4]) -> Result<[f64; 2]> {
    let sigma = Matrix4::from_fn(|i, j| m[i][j]);
    let eig = SymmetricEigen::new(sigma);
    if eig.eigenvalues.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::InvalidState("covariance matrix is not positive definite".into()));
    }
    let root =
        eig.eigenvectors * Matrix4::from_diagonal(&eig.eigenvalues.map(f64::sqrt)) * eig.eigenvectors.transpose();
    let omega = symplectic_form();
    let omega = Matrix4::from_fn(|i, j| omega[i][j]);
    let k = root * omega * root;
    let h = k.map(|v| Complex64::new(0.0, v));
    let mut vals: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    Ok([vals[2], vals[3]])
}

/// Partial transpose on mode b, `p_b -> -p_b`.
pub fn partial_transpose<T: Real>(sigma: &TwoModeCovariance<T>) -> [[f64; 4]; 4] {
    let m = sigma.to_f64();
    let sign = [1.0, 1.0, 1.0, -1.0];
    std::array::from_fn(|i| std::array::from_fn(|j| sign[i] * sign[j] * m.matrix()[i][j]))
}

/// Logarithmic negativity `max(0, -ln(2 nu~_-))` in nats, with `nu~_-` the
/// smallest symplectic eigenvalue of the partially transposed covariance.
pub fn log_negativity<T: Real>(sigma: &TwoModeCovariance<T>) -> Result<f64> {
    let [nu_min, _] = symplectic_eigenvalues(&partial_transpose(sigma))?;
    Ok((-(2.0 * nu_min).ln()).max(0.0))
}
