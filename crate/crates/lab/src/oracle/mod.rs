//! Brute-force reference computations.
//!
//! Everything here works from the Hamiltonians themselves (dense matrices in
//! a truncated Fock basis, or an explicit search over measurements) and never
//! calls the closed forms it is meant to check. Each result carries the
//! cutoff it was computed at and how much it moved when the cutoff was halved.

mod discord;
mod finite_n;
mod fock;
mod overlap;
mod quadratic;

pub use discord::{discord_bruteforce, BruteForceDiscord, MeasurementGrid};
pub use finite_n::{gamma_finite_n, MAX_ATOMS};
pub use fock::{annihilation, hermiticity_error, kron};
pub use overlap::{decoherence_overlap_exact, Overlap};
pub use quadratic::{gamma_quadratic_exact, QuadraticModel};

use thiserror::Error;

/// Fock-space cutoffs: highest occupation kept in each mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FockTruncation {
    pub cavity_cutoff: usize,
    /// Matter-mode cutoff for the two-mode quadratic Hamiltonians. Ignored by
    /// the finite-N oracle, which always keeps the full spin multiplet.
    pub matter_cutoff: usize,
}

impl FockTruncation {
    pub const MIN_CUTOFF: usize = 8;

    pub fn new(cavity_cutoff: usize, matter_cutoff: usize) -> Result<Self, OracleError> {
        if cavity_cutoff < Self::MIN_CUTOFF || matter_cutoff < Self::MIN_CUTOFF {
            return Err(OracleError::CutoffTooSmall { cavity_cutoff, matter_cutoff });
        }
        Ok(FockTruncation { cavity_cutoff, matter_cutoff })
    }

    /// Cutoffs used by the quadratic-Hamiltonian oracles unless told
    /// otherwise.
    pub fn quadratic_default() -> Self {
        FockTruncation { cavity_cutoff: 10, matter_cutoff: 48 }
    }

    pub fn finite_n_default() -> Self {
        FockTruncation { cavity_cutoff: 10, matter_cutoff: Self::MIN_CUTOFF }
    }

    pub fn halve_cavity(&self) -> Self {
        FockTruncation { cavity_cutoff: self.cavity_cutoff / 2, ..*self }
    }

    pub fn halve_matter(&self) -> Self {
        FockTruncation { matter_cutoff: self.matter_cutoff / 2, ..*self }
    }

    pub fn label(&self) -> String {
        format!("{}x{}", self.cavity_cutoff, self.matter_cutoff)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleResult<T> {
    pub value: T,
    pub cutoff_used: FockTruncation,
    /// Relative change of `value` when the cutoffs are halved (absolute when
    /// `value` is itself below 1e-14).
    pub convergence_estimate: f64,
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("cutoffs {cavity_cutoff}x{matter_cutoff} below the minimum of 8")]
    CutoffTooSmall { cavity_cutoff: usize, matter_cutoff: usize },
    #[error("not converged at cutoff {cutoff}: estimate {estimate:e} above tolerance {tolerance:e}")]
    Unconverged { cutoff: String, estimate: f64, tolerance: f64 },
    #[error("finite-N oracle limited to N <= {max}, got {atoms}")]
    TooManyAtoms { atoms: u64, max: u64 },
    #[error(transparent)]
    Model(#[from] dicke_discord::Error),
}

pub(crate) fn relative_change(value: f64, coarse: f64) -> f64 {
    let diff = (value - coarse).abs();
    if value.abs() < 1e-14 {
        diff
    } else {
        diff / value.abs()
    }
}

pub(crate) fn check_converged<T>(
    result: OracleResult<T>,
    tolerance: f64,
) -> Result<OracleResult<T>, OracleError> {
    if result.convergence_estimate <= tolerance {
        Ok(result)
    } else {
        Err(OracleError::Unconverged {
            cutoff: result.cutoff_used.label(),
            estimate: result.convergence_estimate,
            tolerance,
        })
    }
}
