use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::state::{FockState, Mode, SingleModeFock};

/// Conditional state of mode a after projecting mode b on `|beta>`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub state: SingleModeFock,
    /// Outcome density `<beta| rho_b |beta> / pi`; recorded, not used for work.
    pub husimi_q: f64,
}

/// `<m|beta>` for `m <= n_cut`.
pub fn coherent_amplitudes(beta: Complex64, n_cut: usize) -> Vec<Complex64> {
    let mut c = Vec::with_capacity(n_cut + 1);
    c.push(Complex64::new((-beta.norm_sqr() / 2.0).exp(), 0.0));
    for m in 1..=n_cut {
        let prev = c[m - 1];
        c.push(prev * beta / (m as f64).sqrt());
    }
    c
}

/// `rho_a = <beta|_b rho |beta>_b`, renormalized. Requires `|beta|^2 <= n_cut / 4`.
pub fn heterodyne_project_b(state: &FockState, beta: Complex64) -> Result<Projection> {
    let n_cut = state.n_cut();
    let amp = beta.norm_sqr();
    if !amp.is_finite() || amp > n_cut as f64 / 4.0 {
        return Err(Error::NotRepresentable {
            amplitude_sq: amp,
            n_cut,
        });
    }
    let c = coherent_amplitudes(beta, n_cut);
    let n = n_cut + 1;
    let mut rho = DMatrix::zeros(n, n);
    let sectored = state.is_sector_diagonal();
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..n {
                if sectored {
                    // only n_a - n_b = n_a' - n_b' survives
                    let mp = m as isize + j as isize - i as isize;
                    if mp < 0 || mp >= n as isize {
                        continue;
                    }
                    let mp = mp as usize;
                    acc += c[m].conj() * c[mp] * state.element((i, m), (j, mp));
                } else {
                    for mp in 0..n {
                        acc += c[m].conj() * c[mp] * state.element((i, m), (j, mp));
                    }
                }
            }
            rho[(i, j)] = acc;
        }
    }
    let prob = rho.trace().re;
    let conditional = SingleModeFock::new(rho)?.with_deficit(state.trace_deficit());
    Ok(Projection {
        state: conditional,
        husimi_q: prob / std::f64::consts::PI,
    })
}

/// Entropy of one mode of a two-mode state, by partial trace and diagonalization.
pub fn reduced_entropy(state: &FockState, mode: Mode) -> f64 {
    state.partial_trace(mode).entropy()
}
