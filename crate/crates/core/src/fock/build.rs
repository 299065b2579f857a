use nalgebra::DMatrix;

use crate::error::{invalid, Result};
use crate::fock::state::FockState;

/// Thermal weights below this fraction of the largest one are dropped.
const WEIGHT_FLOOR: f64 = 1e-24;

fn check_params(n_bar: f64, r: f64) -> Result<()> {
    if !(n_bar.is_finite() && n_bar >= 0.0) {
        return Err(invalid("n_bar", "must be finite and non-negative"));
    }
    if !(r.is_finite() && r >= 0.0) {
        return Err(invalid("r", "squeezing must be finite and non-negative"));
    }
    Ok(())
}

/// `exp(r (a^dag b^dag - a b))` restricted to the sector `n_a - n_b = +-k`,
/// basis `m -> |m + k, m>`, on `len` levels.
pub(crate) fn sector_squeezer(r: f64, k: usize, len: usize) -> DMatrix<f64> {
    let mut g = DMatrix::zeros(len, len);
    for m in 0..len.saturating_sub(1) {
        let c = r * (((m + k + 1) * (m + 1)) as f64).sqrt();
        g[(m + 1, m)] = c;
        g[(m, m + 1)] = -c;
    }
    g.exp()
}

/// `S(r) (rho_th (x) rho_th) S(r)^dag` on `n_a, n_b <= n_cut`.
///
/// Each sector is exponentiated on `n_cut + 1 - |k| + padding` levels and then
/// cut back to the box, so the box entries do not feel the artificial edge of
/// the generator. The discarded population is the trace deficit.
pub fn build_tms_thermal_fock_at(n_bar: f64, r: f64, n_cut: usize, padding: usize) -> Result<FockState> {
    check_params(n_bar, r)?;
    if n_cut < 1 {
        return Err(invalid("n_cut", "must be at least 1"));
    }
    let q = n_bar / (n_bar + 1.0);
    let p0 = 1.0 / (n_bar + 1.0);
    let mut blocks = Vec::with_capacity(2 * n_cut + 1);
    let mut cache: Vec<Option<DMatrix<f64>>> = vec![None; n_cut + 1];
    for k_signed in -(n_cut as isize)..=(n_cut as isize) {
        let k = k_signed.unsigned_abs();
        let size = n_cut + 1 - k;
        // pair weight p(m + k) p(m) = p0^2 q^(2m + k)
        let lead = p0 * p0 * q.powi(k as i32);
        if lead < WEIGHT_FLOOR * p0 * p0 || (k > 0 && n_bar == 0.0) {
            blocks.push(DMatrix::zeros(size, size));
            continue;
        }
        if cache[k].is_none() {
            let len = size + padding;
            let s = sector_squeezer(r, k, len);
            let mut weights = Vec::new();
            let mut w = lead;
            while weights.len() < len && (w >= WEIGHT_FLOOR * lead || weights.is_empty()) {
                weights.push(w);
                w *= q * q;
                if n_bar == 0.0 {
                    break;
                }
            }
            let cols = weights.len();
            let mut scaled = s.view((0, 0), (size, cols)).clone_owned();
            for (j, w) in weights.iter().enumerate() {
                scaled.column_mut(j).scale_mut(w.sqrt());
            }
            cache[k] = Some(&scaled * scaled.transpose());
        }
        blocks.push(cache[k].clone().unwrap_or_else(|| DMatrix::zeros(size, size)));
    }
    FockState::from_sectors(blocks, n_cut)
}
