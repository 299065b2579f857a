//! Discrete maximally entangled comparators. Both are conditioned on finding
//! the measured partner excited; the Gaussian case extracts its work for every
//! outcome.

use crate::error::{invalid, Error, Result};

/// Which energy quantum the work is counted in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaKind {
    /// Cavity mode, `hbar omega_a`.
    Cavity,
    /// Single-particle level spacing, `hbar omega_eg`.
    LevelSpacing,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteCaseParams {
    x: f64,
    omega_kind: OmegaKind,
    n_particles: u32,
}

impl DiscreteCaseParams {
    /// `x` is the Boltzmann weight of the single excitation.
    pub fn new(x: f64, omega_kind: OmegaKind, n_particles: u32) -> Result<Self> {
        if !(0.0..1.0).contains(&x) {
            return Err(invalid("x", "excitation probability must lie in [0, 1)"));
        }
        if n_particles == 0 {
            return Err(invalid("n_particles", "must be at least 1"));
        }
        Ok(Self {
            x,
            omega_kind,
            n_particles,
        })
    }

    /// `x = exp(-beta)` for `beta = hbar omega / (k_B T)`.
    pub fn from_beta(beta: f64, omega_kind: OmegaKind, n_particles: u32) -> Result<Self> {
        if !(beta > 0.0) {
            return Err(invalid("beta", "must be positive"));
        }
        Self::new((-beta).exp(), omega_kind, n_particles)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn omega_kind(&self) -> OmegaKind {
        self.omega_kind
    }

    pub fn n_particles(&self) -> u32 {
        self.n_particles
    }
}

/// Work (units of `hbar omega_a`) from `(|1,0> + |0,1>)/sqrt 2` in thermal
/// mixture with the vacuum, when the b-mode photon count reads 1: `W = x`.
pub fn discrete_number_state_work(p: &DiscreteCaseParams) -> Result<f64> {
    if p.omega_kind != OmegaKind::Cavity {
        return Err(Error::WrongCase(
            "number-state case counts work in cavity quanta".into(),
        ));
    }
    Ok(p.x)
}

/// Work (units of `hbar omega_eg`) from `N` symmetrized bosons in the Dicke
/// state `|N,1>` after one particle is found excited: `W = x`, independent of `N`.
pub fn dicke_symmetrization_work(p: &DiscreteCaseParams) -> Result<f64> {
    if p.omega_kind != OmegaKind::LevelSpacing {
        return Err(Error::WrongCase(
            "Dicke case counts work in level-spacing quanta".into(),
        ));
    }
    if p.n_particles < 2 {
        return Err(invalid("n_particles", "symmetrization needs at least two particles"));
    }
    Ok(p.x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermo::{extracted_work_closed_form, ThermalContext};

    #[test]
    fn number_state_examples() {
        let zero = DiscreteCaseParams::new(0.0, OmegaKind::Cavity, 1).unwrap();
        assert_eq!(discrete_number_state_work(&zero).unwrap(), 0.0);
        let p = DiscreteCaseParams::from_beta(5.0, OmegaKind::Cavity, 1).unwrap();
        let w = discrete_number_state_work(&p).unwrap();
        assert!((w - 6.7379e-3).abs() < 1e-7);
    }

    #[test]
    fn matches_maximal_entanglement_limit() {
        for x in [1e-6, 0.01, 0.2] {
            let p = DiscreteCaseParams::new(x, OmegaKind::Cavity, 1).unwrap();
            let ctx = ThermalContext::from_occupation(x).unwrap();
            let eiwe = extracted_work_closed_form(&ctx, 25.0).unwrap().w_over_hw;
            assert!((discrete_number_state_work(&p).unwrap() - eiwe).abs() <= 1e-12 * x);
        }
    }

    #[test]
    fn dicke_is_particle_number_independent() {
        let w100 =
            dicke_symmetrization_work(&DiscreteCaseParams::from_beta(5.0, OmegaKind::LevelSpacing, 100).unwrap())
                .unwrap();
        let w2 = dicke_symmetrization_work(&DiscreteCaseParams::from_beta(5.0, OmegaKind::LevelSpacing, 2).unwrap())
            .unwrap();
        assert_eq!(w100, (-5f64).exp());
        assert_eq!(w100, w2);
        let cav =
            discrete_number_state_work(&DiscreteCaseParams::from_beta(5.0, OmegaKind::Cavity, 1).unwrap()).unwrap();
        assert_eq!(w100, cav);
    }

    #[test]
    fn case_mismatches() {
        let cav = DiscreteCaseParams::new(0.1, OmegaKind::Cavity, 3).unwrap();
        assert!(matches!(dicke_symmetrization_work(&cav), Err(Error::WrongCase(_))));
        let lvl = DiscreteCaseParams::new(0.1, OmegaKind::LevelSpacing, 1).unwrap();
        assert!(matches!(discrete_number_state_work(&lvl), Err(Error::WrongCase(_))));
        assert!(dicke_symmetrization_work(&lvl).is_err());
        assert!(DiscreteCaseParams::new(1.0, OmegaKind::Cavity, 1).is_err());
        assert!(DiscreteCaseParams::new(0.1, OmegaKind::Cavity, 0).is_err());
    }
}
