use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

/// Row-major 2x2 block.
pub type Mat2<T> = [[T; 2]; 2];
/// Row-major 4x4 matrix in `(x_a, p_a, x_b, p_b)` ordering.
pub type Mat4<T> = [[T; 4]; 4];

/// Smallest admissible eigenvalue of `sigma + i*Omega/2`.
pub const PHYSICALITY_TOL: f64 = 1e-10;

const SYMMETRY_TOL: f64 = 1e-12;

pub(crate) fn det2<T: Real>(m: &Mat2<T>) -> T {
    m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone()
}

pub(crate) fn add2<T: Real>(x: &Mat2<T>, y: &Mat2<T>) -> Mat2<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| x[i][j].clone() + y[i][j].clone()))
}

pub(crate) fn sub2<T: Real>(x: &Mat2<T>, y: &Mat2<T>) -> Mat2<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| x[i][j].clone() - y[i][j].clone()))
}

pub(crate) fn mul2<T: Real>(x: &Mat2<T>, y: &Mat2<T>) -> Mat2<T> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| x[i][0].clone() * y[0][j].clone() + x[i][1].clone() * y[1][j].clone())
    })
}

pub(crate) fn transpose2<T: Real>(x: &Mat2<T>) -> Mat2<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| x[j][i].clone()))
}

pub(crate) fn diag2<T: Real>(d0: T, d1: T) -> Mat2<T> {
    [[d0, T::zero()], [T::zero(), d1]]
}

fn det3<T: Real>(m: &[[T; 3]; 3]) -> T {
    m[0][0].clone() * (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone())
        - m[0][1].clone() * (m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone())
        + m[0][2].clone() * (m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone())
}

/// Cofactor expansion along the first row.
pub(crate) fn det4<T: Real>(m: &Mat4<T>) -> T {
    let mut total = T::zero();
    for col in 0..4 {
        let minor: [[T; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let src = if j < col { j } else { j + 1 };
                m[i + 1][src].clone()
            })
        });
        let term = m[0][col].clone() * det3(&minor);
        if col % 2 == 0 {
            total = total + term;
        } else {
            total = total - term;
        }
    }
    total
}

fn to_f64_4(m: &Mat4<impl Real>) -> [[f64; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].to_f64()))
}

/// Covariance matrix of a single bosonic mode (vacuum variance 1/2).
#[derive(Debug, Clone, PartialEq)]
pub struct SingleModeCovariance<T: Real = f64> {
    m: Mat2<T>,
}

impl<T: Real> SingleModeCovariance<T> {
    /// Checks symmetry and the uncertainty relation `det >= 1/4`.
    pub fn new(m: Mat2<T>) -> Result<Self> {
        let asym = (m[0][1].clone() - m[1][0].clone()).abs().to_f64();
        let scale = m[0][0].abs().to_f64().max(m[1][1].abs().to_f64()).max(1.0);
        if asym > SYMMETRY_TOL * scale {
            return Err(Error::NotSymmetric(asym));
        }
        let cov = Self { m };
        if !cov.is_physical() {
            return Err(Error::Unphysical {
                min_eigenvalue: cov.min_uncertainty_eigenvalue(),
            });
        }
        Ok(cov)
    }

    pub(crate) fn new_unchecked(m: Mat2<T>) -> Self {
        Self { m }
    }

    pub fn vacuum() -> Self {
        Self::new_unchecked(diag2(T::half(), T::half()))
    }

    /// Thermal state with mean occupation `n_bar`.
    pub fn thermal(n_bar: T) -> Result<Self> {
        if n_bar < T::zero() {
            return Err(invalid("n_bar", "must be non-negative"));
        }
        let v = n_bar + T::half();
        Ok(Self::new_unchecked(diag2(v.clone(), v)))
    }

    pub fn matrix(&self) -> &Mat2<T> {
        &self.m
    }

    pub fn det(&self) -> T {
        det2(&self.m)
    }

    pub fn is_physical(&self) -> bool {
        self.m[0][0] > T::zero() && self.det() >= T::from_f64(0.25 - PHYSICALITY_TOL)
    }

    /// Smallest eigenvalue of `m + i*Omega/2` for one mode, `(tr - sqrt(tr^2 - 4(det - 1/4)))/2`.
    pub fn min_uncertainty_eigenvalue(&self) -> f64 {
        let tr = self.m[0][0].to_f64() + self.m[1][1].to_f64();
        let d = self.det().to_f64() - 0.25;
        let disc = (tr * tr - 4.0 * d).max(0.0);
        0.5 * (tr - disc.sqrt())
    }
}

/// Two-mode covariance matrix, ordering `(x_a, p_a, x_b, p_b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeCovariance<T: Real = f64> {
    m: Mat4<T>,
}

impl<T: Real> TwoModeCovariance<T> {
    /// Validates symmetry and the bona fide condition `m + i*Omega/2 >= 0`.
    pub fn from_matrix(m: Mat4<T>) -> Result<Self> {
        let report = validate_physicality(&m)?;
        if !report.physical {
            return Err(Error::Unphysical {
                min_eigenvalue: report.min_eigenvalue,
            });
        }
        Ok(Self { m })
    }

    pub(crate) fn from_matrix_unchecked(m: Mat4<T>) -> Self {
        Self { m }
    }

    pub fn vacuum() -> Self {
        let mut m: Mat4<T> = std::array::from_fn(|_| std::array::from_fn(|_| T::zero()));
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = T::half();
        }
        Self { m }
    }

    pub fn matrix(&self) -> &Mat4<T> {
        &self.m
    }

    pub fn to_f64(&self) -> TwoModeCovariance<f64> {
        TwoModeCovariance { m: to_f64_4(&self.m) }
    }

    fn block(&self, row: usize, col: usize) -> Mat2<T> {
        std::array::from_fn(|i| std::array::from_fn(|j| self.m[row + i][col + j].clone()))
    }

    /// Reduced covariance of mode a.
    pub fn block_a(&self) -> Mat2<T> {
        self.block(0, 0)
    }

    /// Reduced covariance of mode b.
    pub fn block_b(&self) -> Mat2<T> {
        self.block(2, 2)
    }

    /// Correlation block between a (rows) and b (columns).
    pub fn block_c(&self) -> Mat2<T> {
        self.block(0, 2)
    }

    pub fn det(&self) -> T {
        det4(&self.m)
    }

    pub(crate) fn from_blocks(a: &Mat2<T>, b: &Mat2<T>, c: &Mat2<T>) -> Self {
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| match (i < 2, j < 2) {
                (true, true) => a[i][j].clone(),
                (true, false) => c[i][j - 2].clone(),
                (false, true) => c[j][i - 2].clone(),
                (false, false) => b[i - 2][j - 2].clone(),
            })
        });
        Self { m }
    }
}

/// Standard-form parameters `a, b, c1, c2`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardFormParams<T: Real = f64> {
    pub a: T,
    pub b: T,
    pub c1: T,
    pub c2: T,
}

impl<T: Real> StandardFormParams<T> {
    pub fn new(a: T, b: T, c1: T, c2: T) -> Result<Self> {
        let floor = T::from_f64(0.5 - PHYSICALITY_TOL);
        if a < floor {
            return Err(invalid("a", "diagonal noise must be at least 1/2"));
        }
        if b < floor {
            return Err(invalid("b", "diagonal noise must be at least 1/2"));
        }
        Ok(Self { a, b, c1, c2 })
    }

    /// Symmetric state with `b = a`.
    pub fn symmetric(a: T, c1: T, c2: T) -> Result<Self> {
        Self::new(a.clone(), a, c1, c2)
    }

    pub fn is_symmetric(&self) -> bool {
        self.a == self.b
    }

    /// `2a^2 - c1^2 - c2^2`; equals `Delta` exactly when `c2 = -c1`.
    pub fn mixing_invariant(&self) -> T {
        let a2 = self.a.clone() * self.a.clone();
        a2.clone() + a2 - self.c1.clone() * self.c1.clone() - self.c2.clone() * self.c2.clone()
    }
}

/// Assembles `[[diag(a,a), diag(c1,c2)], [diag(c1,c2), diag(b,b)]]` and checks physicality.
pub fn build_symmetric_state<T: Real>(p: &StandardFormParams<T>) -> Result<TwoModeCovariance<T>> {
    if !p.is_symmetric() {
        return Err(Error::UnsupportedState(
            "standard form with b != a is outside the symmetric class".into(),
        ));
    }
    let a = diag2(p.a.clone(), p.a.clone());
    let b = diag2(p.b.clone(), p.b.clone());
    let c = diag2(p.c1.clone(), p.c2.clone());
    TwoModeCovariance::from_matrix(TwoModeCovariance::from_blocks(&a, &b, &c).m)
}

/// Two-mode squeezed thermal state:
/// `a = b = (n_bar + 1/2) cosh 2r`, `c1 = -c2 = (n_bar + 1/2) sinh 2r`.
pub fn build_tms_thermal<T: Real>(n_bar: T, r: T) -> Result<TwoModeCovariance<T>> {
    if !n_bar.to_f64().is_finite() || n_bar < T::zero() {
        return Err(invalid("n_bar", "must be finite and non-negative"));
    }
    if !r.to_f64().is_finite() {
        return Err(invalid("r", "must be finite"));
    }
    let two_r = r.clone() + r;
    let v = n_bar + T::half();
    let a = v.clone() * two_r.cosh();
    let c = v * two_r.sinh();
    let diag = diag2(a.clone(), a);
    let corr = diag2(c.clone(), -c);
    Ok(TwoModeCovariance::from_blocks(&diag, &diag, &corr))
}

/// Outcome of the bona fide check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalityReport {
    pub physical: bool,
    pub min_eigenvalue: f64,
}

/// `Omega = diag(J, J)` with `J = [[0, 1], [-1, 0]]`.
pub fn symplectic_form() -> [[f64; 4]; 4] {
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
}

/// Passes iff the smallest eigenvalue of `m + i*Omega/2` is at least `-1e-10`.
/// The check runs in `f64` regardless of `T`.
pub fn validate_physicality<T: Real>(m: &Mat4<T>) -> Result<PhysicalityReport> {
    let m = to_f64_4(m);
    let mut scale = 1.0_f64;
    let mut asym = 0.0_f64;
    for i in 0..4 {
        for j in 0..4 {
            if !m[i][j].is_finite() {
                return Err(invalid("sigma", "entries must be finite"));
            }
            scale = scale.max(m[i][j].abs());
            asym = asym.max((m[i][j] - m[j][i]).abs());
        }
    }
    if asym > SYMMETRY_TOL * scale {
        return Err(Error::NotSymmetric(asym));
    }
    let omega = symplectic_form();
    let h = Matrix4::from_fn(|i, j| Complex64::new(m[i][j], 0.5 * omega[i][j]));
    let eig = SymmetricEigen::new(h);
    let min_eigenvalue = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(PhysicalityReport {
        physical: min_eigenvalue >= -PHYSICALITY_TOL,
        min_eigenvalue,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn diag4(d: f64) -> Mat4<f64> {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = d;
        }
        m
    }

    #[test]
    fn tms_zero_is_vacuum() {
        let s = build_tms_thermal(0.0, 0.0).unwrap();
        assert_eq!(s, TwoModeCovariance::vacuum());
    }

    #[test]
    fn tms_unsqueezed_half_occupation_is_identity() {
        let s = build_tms_thermal(0.5, 0.0).unwrap();
        assert_eq!(*s.matrix(), diag4(1.0));
    }

    #[test]
    fn tms_vacuum_entries() {
        let s = build_tms_thermal(0.0, 0.5).unwrap();
        let m = s.matrix();
        assert_relative_eq!(m[0][0], 1f64.cosh() / 2.0, epsilon = 1e-15);
        assert_relative_eq!(m[0][0], 0.771540317, epsilon = 1e-8);
        assert_relative_eq!(m[0][2], 0.587600596, epsilon = 1e-8);
        assert_relative_eq!(m[1][3], -m[0][2]);
        assert_eq!(m[2][2], m[0][0]);
    }

    #[test]
    fn tms_rejects_bad_inputs() {
        assert!(build_tms_thermal(-0.1, 0.3).is_err());
        assert!(build_tms_thermal(0.1, f64::NAN).is_err());
        assert!(build_tms_thermal(0.1, f64::INFINITY).is_err());
    }

    #[test]
    fn symmetric_state_examples() {
        let vac = build_symmetric_state(&StandardFormParams::symmetric(0.5, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(vac, TwoModeCovariance::vacuum());

        // nu = sqrt(a^2 - c^2) = sqrt(0.19) < 1/2
        let tight = StandardFormParams::symmetric(1.0, 0.9, -0.9).unwrap();
        assert!(matches!(build_symmetric_state(&tight), Err(Error::Unphysical { .. })));

        let ok = StandardFormParams::symmetric(1.0, 0.8, -0.8).unwrap();
        let s = build_symmetric_state(&ok).unwrap();
        let rep = validate_physicality(s.matrix()).unwrap();
        assert!(rep.physical && rep.min_eigenvalue > 0.0);

        let bad = StandardFormParams::symmetric(0.5, 0.5, -0.5).unwrap();
        match build_symmetric_state(&bad) {
            Err(Error::Unphysical { min_eigenvalue }) => assert!(min_eigenvalue < -0.1),
            other => panic!("expected unphysical, got {other:?}"),
        }
    }

    #[test]
    fn asymmetric_params_rejected() {
        let p = StandardFormParams::new(1.0, 2.0, 0.1, -0.1).unwrap();
        assert!(matches!(build_symmetric_state(&p), Err(Error::UnsupportedState(_))));
        assert!(StandardFormParams::new(0.3, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn physicality_examples() {
        let vac = validate_physicality(TwoModeCovariance::<f64>::vacuum().matrix()).unwrap();
        assert!(vac.physical);
        assert!(vac.min_eigenvalue.abs() < 1e-14);

        let tms = build_tms_thermal(0.1, 1.0).unwrap();
        assert!(validate_physicality(tms.matrix()).unwrap().physical);

        let low = validate_physicality(&diag4(0.1)).unwrap();
        assert!(!low.physical);
        assert_relative_eq!(low.min_eigenvalue, -0.4, epsilon = 1e-12);
    }

    #[test]
    fn nonsymmetric_rejected_before_eigen() {
        let mut m = diag4(1.0);
        m[0][2] = 0.3;
        assert!(matches!(validate_physicality(&m), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn det4_matches_product_for_block_diagonal() {
        let s = build_tms_thermal(0.2, 0.7).unwrap();
        let a = s.matrix()[0][0];
        let c = s.matrix()[0][2];
        assert_relative_eq!(s.det(), (a * a - c * c).powi(2), max_relative = 1e-12);
    }

    #[test]
    fn single_mode_uncertainty() {
        assert!(SingleModeCovariance::new([[0.5, 0.0], [0.0, 0.5]]).is_ok());
        assert!(SingleModeCovariance::new([[0.4, 0.0], [0.0, 0.5]]).is_err());
        assert!(SingleModeCovariance::new([[1.0, 0.2], [0.1, 1.0]]).is_err());
        let th = SingleModeCovariance::thermal(1.0).unwrap();
        assert_relative_eq!(th.min_uncertainty_eigenvalue(), 1.0);
    }
}
