use dicke_discord::{classify_phase, critical_coupling, DickeParams, Phase};
use nalgebra::{DMatrix, DVector};

use super::fock::{ground_state, kron, number, quadrature, variance};
use super::{check_converged, relative_change, FockTruncation, OracleError, OracleResult};

/// Two-mode quadratic Dicke Hamiltonian on a product Fock basis
/// (cavity ⊗ matter), with the cavity photon-number operator of the lab frame.
///
/// Normal phase: `ω a†a + ω₀ c†c + λ(a + a†)(c + c†)`.
/// Super-radiant phase, in the frame displaced by the mean fields:
/// `ω a†a + ω̃₀ c†c + η(c + c†)² + λ̃(a + a†)(c + c†)` with the photon number
/// `(a† + √α)(a + √α)`.
pub struct QuadraticModel {
    pub phase: Phase,
    pub hamiltonian: DMatrix<f64>,
    pub photon_number: DMatrix<f64>,
}

impl QuadraticModel {
    pub fn new(p: &DickeParams, trunc: &FockTruncation) -> Result<Self, OracleError> {
        let phase = classify_phase(p)?;
        let (ma, mc) = (trunc.cavity_cutoff, trunc.matter_cutoff);
        let ida = DMatrix::identity(ma + 1, ma + 1);
        let idc = DMatrix::identity(mc + 1, mc + 1);
        let (na, nc) = (number(ma), number(mc));
        let (xa, xc) = (quadrature(ma), quadrature(mc));
        let (w, w0, l) = (p.omega, p.omega0, p.lambda);

        let (hamiltonian, photon_number) = match phase {
            Phase::Normal => {
                let h = kron(&na, &idc) * w + kron(&ida, &nc) * w0 + kron(&xa, &xc) * l;
                (h, kron(&na, &idc))
            }
            Phase::SuperRadiant => {
                let lc = critical_coupling(p);
                let xi = lc * lc / (l * l);
                let w0_eff = w0 * (1.0 + xi) / (2.0 * xi);
                let l_eff = l * xi * (2.0 / (1.0 + xi)).sqrt();
                let eta = w0 * (1.0 - xi) * (3.0 + xi) / (8.0 * xi * (1.0 + xi));
                let j = p.atoms as f64 / 2.0;
                let sqrt_alpha = (2.0 * l / w) * (j / 2.0 * (1.0 - xi * xi)).sqrt();
                let h = kron(&na, &idc) * w
                    + kron(&ida, &nc) * w0_eff
                    + kron(&ida, &(&xc * &xc)) * eta
                    + kron(&xa, &xc) * l_eff;
                let shifted =
                    &na + &xa * sqrt_alpha + &ida * (sqrt_alpha * sqrt_alpha);
                (h, kron(&shifted, &idc))
            }
        };
        Ok(QuadraticModel { phase, hamiltonian, photon_number })
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.nrows()
    }

    pub fn ground_state(&self) -> (f64, DVector<f64>) {
        ground_state(&self.hamiltonian)
    }

    /// Ground-state photon-number variance at this truncation.
    pub fn fluctuation(&self) -> f64 {
        let (_, psi) = self.ground_state();
        variance(&self.photon_number, &psi)
    }

    /// Lowest `count` excitation energies above the ground state.
    pub fn excitation_gaps(&self, count: usize) -> Vec<f64> {
        let mut e: Vec<f64> = self.hamiltonian.clone().symmetric_eigenvalues().iter().copied().collect();
        e.sort_by(f64::total_cmp);
        e.iter().skip(1).take(count).map(|x| x - e[0]).collect()
    }
}

/// Photon-number variance of the quadratic Hamiltonian's ground state, with
/// convergence checked by halving each cutoff in turn.
pub fn gamma_quadratic_exact(
    p: &DickeParams,
    trunc: &FockTruncation,
    tolerance: f64,
) -> Result<OracleResult<f64>, OracleError> {
    let trunc = FockTruncation::new(trunc.cavity_cutoff, trunc.matter_cutoff)?;
    let value = QuadraticModel::new(p, &trunc)?.fluctuation();
    let estimate = [trunc.halve_cavity(), trunc.halve_matter()]
        .iter()
        .map(|t| QuadraticModel::new(p, t).map(|m| relative_change(value, m.fluctuation())))
        .try_fold(0.0f64, |acc, r| r.map(|v| acc.max(v)))?;
    check_converged(
        OracleResult { value, cutoff_used: trunc, convergence_estimate: estimate },
        tolerance,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::hermiticity_error;

    fn reference(lambda: f64) -> DickeParams {
        DickeParams::new(20.0, 0.05, lambda, 100_000).unwrap()
    }

    #[test]
    fn vacuum_at_zero_coupling() {
        for cut in [8, 12] {
            let t = FockTruncation::new(cut, cut).unwrap();
            let r = gamma_quadratic_exact(&reference(0.0), &t, 1e-12).unwrap();
            assert!(r.value.abs() < 1e-12);
        }
    }

    #[test]
    fn hamiltonians_are_symmetric() {
        let t = FockTruncation::new(8, 16).unwrap();
        for l in [0.1, 0.75] {
            let m = QuadraticModel::new(&reference(l), &t).unwrap();
            assert!(hermiticity_error(&m.hamiltonian) <= 1e-12);
            assert!(hermiticity_error(&m.photon_number) <= 1e-12);
        }
    }

    #[test]
    fn critical_point_rejected() {
        let t = FockTruncation::quadratic_default();
        assert!(matches!(
            gamma_quadratic_exact(&reference(0.5), &t, 1e-8),
            Err(OracleError::Model(dicke_discord::Error::CriticalPoint { .. }))
        ));
    }

    #[test]
    fn small_cutoffs_rejected() {
        assert!(FockTruncation::new(4, 40).is_err());
    }

    #[test]
    fn unconverged_is_reported() {
        let p = DickeParams::new(1.0, 1.0, 0.45, 10).unwrap();
        let t = FockTruncation::new(8, 8).unwrap();
        assert!(matches!(
            gamma_quadratic_exact(&p, &t, 1e-14),
            Err(OracleError::Unconverged { .. })
        ));
    }
}
