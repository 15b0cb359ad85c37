use dicke_discord::DickeParams;
use nalgebra::DMatrix;

use super::fock::{ground_state, kron, number, quadrature, variance};
use super::{check_converged, relative_change, FockTruncation, OracleError, OracleResult};

/// Largest atom number the dense finite-N oracle accepts.
pub const MAX_ATOMS: u64 = 64;

/// `J_z` and `J₊ + J₋` for spin `j = atoms/2` in the basis `m = −j, …, j`.
fn spin_operators(atoms: u64) -> (DMatrix<f64>, DMatrix<f64>) {
    let dim = atoms as usize + 1;
    let j = atoms as f64 / 2.0;
    let mut jz = DMatrix::zeros(dim, dim);
    let mut jx2 = DMatrix::zeros(dim, dim);
    for k in 0..dim {
        let m = k as f64 - j;
        jz[(k, k)] = m;
        if k + 1 < dim {
            let up = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
            jx2[(k + 1, k)] = up;
            jx2[(k, k + 1)] = up;
        }
    }
    (jz, jx2)
}

/// `ω a†a + ω₀J_z + (λ/√N)(a + a†)(J₊ + J₋)` on cavity ⊗ spin.
pub(crate) fn dicke_hamiltonian(p: &DickeParams, cavity_cutoff: usize) -> (DMatrix<f64>, DMatrix<f64>) {
    let (jz, jx2) = spin_operators(p.atoms);
    let ids = DMatrix::identity(jz.nrows(), jz.nrows());
    let ida = DMatrix::identity(cavity_cutoff + 1, cavity_cutoff + 1);
    let na = kron(&number(cavity_cutoff), &ids);
    let h = &na * p.omega
        + kron(&ida, &jz) * p.omega0
        + kron(&quadrature(cavity_cutoff), &jx2) * (p.lambda / (p.atoms as f64).sqrt());
    (h, na)
}

fn fluctuation(p: &DickeParams, cavity_cutoff: usize) -> f64 {
    let (h, na) = dicke_hamiltonian(p, cavity_cutoff);
    let (_, psi) = ground_state(&h);
    variance(&na, &psi)
}

/// Exact ground-state photon-number variance of the N-atom Dicke model.
/// Only the cavity is truncated; the spin multiplet is kept whole.
pub fn gamma_finite_n(
    p: &DickeParams,
    trunc: &FockTruncation,
    tolerance: f64,
) -> Result<OracleResult<f64>, OracleError> {
    p.validate()?;
    if p.atoms > MAX_ATOMS {
        return Err(OracleError::TooManyAtoms { atoms: p.atoms, max: MAX_ATOMS });
    }
    let trunc = FockTruncation::new(trunc.cavity_cutoff, trunc.matter_cutoff)?;
    let value = fluctuation(p, trunc.cavity_cutoff);
    let coarse = fluctuation(p, trunc.cavity_cutoff / 2);
    check_converged(
        OracleResult {
            value,
            cutoff_used: trunc,
            convergence_estimate: relative_change(value, coarse),
        },
        tolerance,
    )
}
