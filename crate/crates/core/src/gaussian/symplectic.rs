use crate::error::{invalid, Error, Result};
use crate::gaussian::covariance::{det2, mul2, transpose2, Mat2, TwoModeCovariance};
use crate::scalar::Real;

const SYMPLECTIC_DET_TOL: f64 = 1e-12;

/// Element of Sp(2, R): a real 2x2 matrix with unit determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct Symplectic2<T: Real = f64> {
    m: Mat2<T>,
}

impl<T: Real> Symplectic2<T> {
    pub fn new(m: Mat2<T>) -> Result<Self> {
        let det = det2(&m).to_f64();
        if !det.is_finite() || (det - 1.0).abs() > SYMPLECTIC_DET_TOL {
            return Err(Error::NotSymplectic(det));
        }
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self {
            m: [[T::one(), T::zero()], [T::zero(), T::one()]],
        }
    }

    /// Phase-space rotation by `theta`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self {
            m: [[T::from_f64(c), T::from_f64(s)], [T::from_f64(-s), T::from_f64(c)]],
        }
    }

    /// Single-mode squeezer `diag(e^s, e^-s)`.
    pub fn squeeze(s: f64) -> Self {
        let e = T::from_f64(s).exp();
        Self {
            m: [[e.clone(), T::zero()], [T::zero(), T::one() / e]],
        }
    }

    /// Euler form `R(theta1) diag(e^s, e^-s) R(theta2)`; covers all of Sp(2, R).
    pub fn euler(theta1: f64, s: f64, theta2: f64) -> Self {
        let m = mul2(
            &mul2(Self::rotation(theta1).matrix(), Self::squeeze(s).matrix()),
            Self::rotation(theta2).matrix(),
        );
        Self { m }
    }

    pub fn matrix(&self) -> &Mat2<T> {
        &self.m
    }
}

/// `(S_a ⊕ S_b) sigma (S_a ⊕ S_b)^T`.
pub fn apply_local_symplectic<T: Real>(
    sigma: &TwoModeCovariance<T>,
    s_a: &Symplectic2<T>,
    s_b: &Symplectic2<T>,
) -> TwoModeCovariance<T> {
    let sandwich = |l: &Mat2<T>, x: &Mat2<T>, r: &Mat2<T>| mul2(&mul2(l, x), &transpose2(r));
    let a = sandwich(s_a.matrix(), &sigma.block_a(), s_a.matrix());
    let b = sandwich(s_b.matrix(), &sigma.block_b(), s_b.matrix());
    let c = sandwich(s_a.matrix(), &sigma.block_c(), s_b.matrix());
    let mut out = TwoModeCovariance::from_blocks(&a, &b, &c);
    symmetrize(&mut out);
    out
}

fn symmetrize<T: Real>(sigma: &mut TwoModeCovariance<T>) {
    let m = sigma.matrix();
    let sym = std::array::from_fn(|i| std::array::from_fn(|j| (m[i][j].clone() + m[j][i].clone()) * T::half()));
    *sigma = TwoModeCovariance::from_matrix_unchecked(sym);
}

/// The two Sp(4, R) invariants used by the work formula.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticInvariants<T: Real = f64> {
    /// `det sigma`.
    pub det_sigma: T,
    /// `det A + det B + 2 det C`.
    pub delta: T,
}

pub fn symplectic_invariants<T: Real>(sigma: &TwoModeCovariance<T>) -> SymplecticInvariants<T> {
    let det_c = det2(&sigma.block_c());
    SymplecticInvariants {
        det_sigma: sigma.det(),
        delta: det2(&sigma.block_a()) + det2(&sigma.block_b()) + det_c.clone() + det_c,
    }
}

/// Determinant of the heterodyne-conditioned mode-a covariance written through
/// the invariants, for states with `b = a` and `c2 = -c1`:
///
/// `(det sigma + (a/2) Delta + a^2/4) / (a + 1/2)^2`,
///
/// where `a` is the local invariant `sqrt(det sigma_a)`. Outside that class the
/// mixing term `2a^2 - c1^2 - c2^2` differs from `Delta` and the result is not
/// the conditional determinant.
pub fn conditional_determinant_invariant_form<T: Real>(inv: &SymplecticInvariants<T>, a: T) -> Result<T> {
    if a < T::from_f64(0.5 - 1e-10) {
        return Err(invalid("a", "local noise must be at least 1/2"));
    }
    let quarter = T::from_f64(0.25);
    let numerator = inv.det_sigma.clone() + a.clone() * T::half() * inv.delta.clone() + a.clone() * a.clone() * quarter;
    let denom = a + T::half();
    Ok(numerator / (denom.clone() * denom))
}
