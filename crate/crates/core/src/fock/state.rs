use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Largest anti-Hermitian part tolerated in a density matrix.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Most negative eigenvalue tolerated before a state is rejected.
pub const POSITIVITY_TOL: f64 = 1e-10;
/// Eigenvalues below this are dropped from entropy sums.
pub const EIGEN_CLIP: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    A,
    B,
}

/// Truncated single-mode density matrix on `|0>, ..., |n_cut>`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleModeFock {
    rho: DMatrix<Complex64>,
    n_cut: usize,
    trace_deficit: f64,
}

fn hermitian_gap(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut gap = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            gap = gap.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    gap
}

fn symmetrize(m: &mut DMatrix<Complex64>) {
    let n = m.nrows();
    for i in 0..n {
        m[(i, i)].im = 0.0;
        for j in i + 1..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
}

fn normalize(mut rho: DMatrix<Complex64>) -> Result<(DMatrix<Complex64>, f64)> {
    if rho.nrows() != rho.ncols() || rho.nrows() == 0 {
        return Err(Error::InvalidState(
            "density matrix must be square and non-empty".into(),
        ));
    }
    if rho.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidState("density matrix has non-finite entries".into()));
    }
    let gap = hermitian_gap(&rho);
    let scale = rho.iter().fold(0.0_f64, |acc, z| acc.max(z.norm())).max(1.0);
    if gap > HERMITIAN_TOL * scale {
        return Err(Error::InvalidState(format!("not Hermitian (gap {gap:e})")));
    }
    symmetrize(&mut rho);
    let trace = rho.trace().re;
    if !(trace > 0.0) {
        return Err(Error::InvalidState(format!("trace {trace:e} is not positive")));
    }
    rho /= Complex64::new(trace, 0.0);
    Ok((rho, 1.0 - trace))
}

fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `-sum p ln p` over eigenvalues above [`EIGEN_CLIP`].
pub fn shannon_of_spectrum(eigenvalues: &[f64]) -> f64 {
    let s: f64 = eigenvalues
        .iter()
        .filter(|&&p| p > EIGEN_CLIP)
        .map(|&p| -p * p.ln())
        .sum();
    s.max(0.0)
}

impl SingleModeFock {
    /// Validates Hermiticity and positivity and normalizes the trace. The
    /// deficit `1 - Tr rho` before normalization is recorded.
    pub fn new(rho: DMatrix<Complex64>) -> Result<Self> {
        let (rho, deficit) = normalize(rho)?;
        let n_cut = rho.nrows() - 1;
        let state = Self {
            rho,
            n_cut,
            trace_deficit: deficit,
        };
        let min = state.min_eigenvalue();
        if min < -POSITIVITY_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(state)
    }

    pub(crate) fn with_deficit(mut self, trace_deficit: f64) -> Self {
        self.trace_deficit = trace_deficit;
        self
    }

    /// Bose-Einstein weights `n^k / (n + 1)^(k + 1)` for `k <= n_cut`.
    pub fn thermal(n_bar: f64, n_cut: usize) -> Result<Self> {
        if !(n_bar.is_finite() && n_bar >= 0.0) {
            return Err(invalid("n_bar", "must be finite and non-negative"));
        }
        let q = n_bar / (n_bar + 1.0);
        let mut rho = DMatrix::zeros(n_cut + 1, n_cut + 1);
        let mut w = 1.0 / (n_bar + 1.0);
        for k in 0..=n_cut {
            rho[(k, k)] = Complex64::new(w, 0.0);
            w *= q;
        }
        Self::new(rho)
    }

    /// Pure state from amplitudes `psi[k] = <k|psi>`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let n = psi.len();
        let rho = DMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj());
        Self::new(rho)
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.rho
    }

    pub fn n_cut(&self) -> usize {
        self.n_cut
    }

    pub fn trace_deficit(&self) -> f64 {
        self.trace_deficit
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.rho)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn purity(&self) -> f64 {
        let mut p = 0.0;
        for z in self.rho.iter() {
            p += z.norm_sqr();
        }
        p
    }

    /// Von Neumann entropy from the spectrum.
    pub fn entropy(&self) -> f64 {
        shannon_of_spectrum(&self.eigenvalues())
    }

    /// `Tr(rho a^dag^p a^q)`.
    pub fn expect_normal(&self, p: usize, q: usize) -> Complex64 {
        // O|i> = coef |j>, so Tr(rho O) = sum_i coef <i|rho|j>
        let mut acc = Complex64::new(0.0, 0.0);
        for i in q..=self.n_cut {
            let j = i - q + p;
            if j > self.n_cut {
                continue;
            }
            let coef = ladder_coef(i, q, p);
            acc += self.rho[(i, j)] * coef;
        }
        acc
    }

    /// Mean quadratures `(<x>, <p>)` and covariance with vacuum variance 1/2.
    pub fn moments(&self) -> ([f64; 2], [[f64; 2]; 2]) {
        let ladder = LadderMoments {
            first: [self.expect_normal(0, 1)],
            second: [[self.expect_normal(0, 2)]],
            number: [[self.expect_normal(1, 1)]],
        };
        let (mean, cov) = ladder.quadratures();
        ([mean[0], mean[1]], [[cov[0][0], cov[0][1]], [cov[1][0], cov[1][1]]])
    }
}

/// Coefficient of `a^dag^p a^q |i>` on `|i - q + p>`.
pub(crate) fn ladder_coef(i: usize, q: usize, p: usize) -> f64 {
    let mut c = 1.0;
    for k in 0..q {
        c *= ((i - k) as f64).sqrt();
    }
    let lowered = i - q;
    for k in 0..p {
        c *= ((lowered + k + 1) as f64).sqrt();
    }
    c
}

/// Normally ordered ladder moments for `M` modes: `<a_i>`, `<a_i a_j>` and `<a_i^dag a_j>`.
pub(crate) struct LadderMoments<const M: usize> {
    pub first: [Complex64; M],
    pub second: [[Complex64; M]; M],
    pub number: [[Complex64; M]; M],
}

impl<const M: usize> LadderMoments<M> {
    /// Quadrature means and symmetrized covariance in `(x_1, p_1, x_2, p_2, ...)` order.
    pub fn quadratures(&self) -> (Vec<f64>, Vec<Vec<f64>>) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let i = Complex64::i();
        // R_k = u a + v a^dag
        let coeffs = |k: usize| -> (usize, Complex64, Complex64) {
            let mode = k / 2;
            if k % 2 == 0 {
                (mode, Complex64::new(s, 0.0), Complex64::new(s, 0.0))
            } else {
                (mode, -i * s, i * s)
            }
        };
        let n = 2 * M;
        let mean: Vec<f64> = (0..n)
            .map(|k| {
                let (m, u, v) = coeffs(k);
                (u * self.first[m] + v * self.first[m].conj()).re
            })
            .collect();
        let mut cov = vec![vec![0.0; n]; n];
        for k in 0..n {
            for l in 0..n {
                let (mk, uk, vk) = coeffs(k);
                let (ml, ul, vl) = coeffs(l);
                // <a_mk a_ml>, <a^dag a^dag>, and the symmetrized mixed terms
                let aa = self.second[mk][ml];
                let dd = aa.conj();
                let ad = self.number[mk][ml];
                let da = self.number[ml][mk];
                let comm = if mk == ml { 1.0 } else { 0.0 };
                // {R_k, R_l}/2 with a_k a^dag_l = a^dag_l a_k + delta
                let sym = uk * ul * aa + vk * vl * dd + uk * vl * (da + comm * 0.5) + vk * ul * (ad + comm * 0.5);
                let sym = sym.re;
                cov[k][l] = sym - mean[k] * mean[l];
            }
        }
        (mean, cov)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    Dense(DMatrix<Complex64>),
    /// Real blocks of fixed `k = n_a - n_b`, stored at index `k + n_cut` and
    /// indexed by `min(n_a, n_b)`.
    Sectors(Vec<DMatrix<f64>>),
}

/// Truncated two-mode density matrix on `n_a, n_b <= n_cut`, basis index
/// `n_a (n_cut + 1) + n_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    storage: Storage,
    n_cut: usize,
    trace_deficit: f64,
}

impl FockState {
    /// General dense two-mode state; checked and normalized as in [`SingleModeFock::new`].
    pub fn from_dense(rho: DMatrix<Complex64>, n_cut: usize) -> Result<Self> {
        let dim = (n_cut + 1) * (n_cut + 1);
        if rho.nrows() != dim || rho.ncols() != dim {
            return Err(Error::InvalidState(format!(
                "expected {dim}x{dim} matrix for n_cut = {n_cut}, got {}x{}",
                rho.nrows(),
                rho.ncols()
            )));
        }
        let (rho, deficit) = normalize(rho)?;
        let state = Self {
            storage: Storage::Dense(rho),
            n_cut,
            trace_deficit: deficit,
        };
        let min = state.min_eigenvalue();
        if min < -POSITIVITY_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(state)
    }

    /// Block-diagonal state from unnormalized real sector blocks.
    pub(crate) fn from_sectors(mut blocks: Vec<DMatrix<f64>>, n_cut: usize) -> Result<Self> {
        debug_assert_eq!(blocks.len(), 2 * n_cut + 1);
        let trace: f64 = blocks.iter().map(|b| b.trace()).sum();
        if !(trace > 0.0 && trace.is_finite()) {
            return Err(Error::InvalidState(format!("trace {trace:e} is not positive")));
        }
        for b in blocks.iter_mut() {
            let sym = (b.clone() + b.transpose()) * 0.5;
            *b = sym / trace;
        }
        let state = Self {
            storage: Storage::Sectors(blocks),
            n_cut,
            trace_deficit: 1.0 - trace,
        };
        let min = state.min_eigenvalue();
        if min < -POSITIVITY_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(state)
    }

    /// `rho_a (x) rho_b`.
    pub fn product(a: &SingleModeFock, b: &SingleModeFock) -> Result<Self> {
        if a.n_cut() != b.n_cut() {
            return Err(invalid("n_cut", "both modes must share the cutoff"));
        }
        let rho = a.matrix().kronecker(b.matrix());
        Self::from_dense(rho, a.n_cut())
    }

    pub fn n_cut(&self) -> usize {
        self.n_cut
    }

    pub fn dim(&self) -> usize {
        (self.n_cut + 1) * (self.n_cut + 1)
    }

    pub fn trace_deficit(&self) -> f64 {
        self.trace_deficit
    }

    /// True when only `n_a - n_b` conserving elements are stored.
    pub fn is_sector_diagonal(&self) -> bool {
        matches!(self.storage, Storage::Sectors(_))
    }

    pub fn index(&self, n_a: usize, n_b: usize) -> usize {
        n_a * (self.n_cut + 1) + n_b
    }

    /// `<n_a, n_b| rho |n_a', n_b'>`.
    pub fn element(&self, bra: (usize, usize), ket: (usize, usize)) -> Complex64 {
        match &self.storage {
            Storage::Dense(m) => m[(self.index(bra.0, bra.1), self.index(ket.0, ket.1))],
            Storage::Sectors(blocks) => {
                let k = bra.0 as isize - bra.1 as isize;
                if k != ket.0 as isize - ket.1 as isize {
                    return Complex64::new(0.0, 0.0);
                }
                let block = &blocks[(k + self.n_cut as isize) as usize];
                Complex64::new(block[(bra.0.min(bra.1), ket.0.min(ket.1))], 0.0)
            }
        }
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        match &self.storage {
            Storage::Dense(m) => m.clone(),
            Storage::Sectors(_) => {
                let n = self.n_cut + 1;
                DMatrix::from_fn(n * n, n * n, |i, j| self.element((i / n, i % n), (j / n, j % n)))
            }
        }
    }

    pub fn trace(&self) -> f64 {
        match &self.storage {
            Storage::Dense(m) => m.trace().re,
            Storage::Sectors(blocks) => blocks.iter().map(|b| b.trace()).sum(),
        }
    }

    /// Largest `|rho - rho^dag|` entry.
    pub fn hermitian_gap(&self) -> f64 {
        match &self.storage {
            Storage::Dense(m) => hermitian_gap(m),
            Storage::Sectors(blocks) => blocks.iter().map(|b| (b - b.transpose()).amax()).fold(0.0, f64::max),
        }
    }

    /// Ascending spectrum.
    pub fn eigenvalues(&self) -> Vec<f64> {
        match &self.storage {
            Storage::Dense(m) => hermitian_eigenvalues(m),
            Storage::Sectors(blocks) => {
                let mut ev: Vec<f64> = blocks
                    .iter()
                    .flat_map(|b| {
                        SymmetricEigen::new(b.clone())
                            .eigenvalues
                            .iter()
                            .copied()
                            .collect::<Vec<_>>()
                    })
                    .collect();
                ev.sort_by(f64::total_cmp);
                ev
            }
        }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn entropy(&self) -> f64 {
        shannon_of_spectrum(&self.eigenvalues())
    }

    /// Reduced state of `keep`.
    pub fn partial_trace(&self, keep: Mode) -> SingleModeFock {
        let n = self.n_cut + 1;
        let mut out = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for m in 0..n {
                    acc += match keep {
                        Mode::A => self.element((i, m), (j, m)),
                        Mode::B => self.element((m, i), (m, j)),
                    };
                }
                out[(i, j)] = acc;
            }
        }
        symmetrize(&mut out);
        SingleModeFock {
            rho: out,
            n_cut: self.n_cut,
            trace_deficit: self.trace_deficit,
        }
    }

    /// `Tr(rho a^dag^p a^q b^dag^s b^t)`.
    pub fn expect_normal(&self, p: usize, q: usize, s: usize, t: usize) -> Complex64 {
        let n = self.n_cut;
        let mut acc = Complex64::new(0.0, 0.0);
        for ia in q..=n {
            let ja = ia - q + p;
            if ja > n {
                continue;
            }
            let ca = ladder_coef(ia, q, p);
            for ib in t..=n {
                let jb = ib - t + s;
                if jb > n {
                    continue;
                }
                acc += self.element((ia, ib), (ja, jb)) * (ca * ladder_coef(ib, t, s));
            }
        }
        acc
    }

    /// Quadrature means and covariance in `(x_a, p_a, x_b, p_b)` order.
    pub fn moments(&self) -> ([f64; 4], [[f64; 4]; 4]) {
        let a = self.expect_normal(0, 1, 0, 0);
        let b = self.expect_normal(0, 0, 0, 1);
        let ab = self.expect_normal(0, 1, 0, 1);
        let ladder = LadderMoments {
            first: [a, b],
            second: [
                [self.expect_normal(0, 2, 0, 0), ab],
                [ab, self.expect_normal(0, 0, 0, 2)],
            ],
            number: [
                [self.expect_normal(1, 1, 0, 0), self.expect_normal(1, 0, 0, 1)],
                [self.expect_normal(0, 1, 1, 0), self.expect_normal(0, 0, 1, 1)],
            ],
        };
        let (mean, cov) = ladder.quadratures();
        let mut m = [[0.0; 4]; 4];
        for (i, row) in cov.iter().enumerate() {
            m[i].copy_from_slice(row);
        }
        ([mean[0], mean[1], mean[2], mean[3]], m)
    }
}
