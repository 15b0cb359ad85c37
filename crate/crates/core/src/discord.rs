//! Correlations of Bell-diagonal two-qubit states, in bits.
//!
//! A state with maximally mixed marginals and X-shaped density matrix is
//! fixed, up to local phases, by `c₃` and the two coherence moduli
//! `m = 4|ρ_{ee,gg}|`, `n = 4|ρ_{eg,ge}|`. The optimal local projective
//! measurement is along one of the coordinate axes, which gives the closed
//! form `χ = max(|c₃|, (m + n)/2)` for the classical correlation.

use core::f64::consts::LN_2;

use libm::{log1p, log2};

use crate::channel::{evolve_xstate, ChannelParams, TwoQubitDensity, XState};
use crate::error::{Error, Result};

/// Marginal and X-shape tolerance for the closed forms.
pub const STRUCTURE_TOL: f64 = 1e-9;
/// Initial discord below which `Γ` is undefined.
pub const MIN_INITIAL_DISCORD: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationReport {
    /// `¼(1+c₃±m)`, `¼(1−c₃±n)`.
    pub eigenvalues: [f64; 4],
    pub mutual_info: f64,
    pub classical_corr: f64,
    pub discord: f64,
    pub chi: f64,
}

fn plogp(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * log2(x)
    }
}

/// `(1+s)/2 · log₂(1+s)`, zero at `s = −1`.
fn half_weighted_log(s: f64) -> f64 {
    let w = 0.5 * (1.0 + s);
    if w <= 0.0 {
        0.0
    } else {
        w * log1p(s) / LN_2
    }
}

/// `(c₃, m, n)` of a Bell-diagonal state up to local phases.
fn x_parameters(rho: &TwoQubitDensity) -> Result<(f64, f64, f64)> {
    let deviation = rho.marginal_deviation();
    if deviation > STRUCTURE_TOL {
        return Err(Error::Marginal { deviation });
    }
    let off = rho.off_x_magnitude();
    if off > STRUCTURE_TOL {
        return Err(Error::NotXState { deviation: off });
    }
    let c3 = (rho.get(0, 0) + rho.get(3, 3) - rho.get(1, 1) - rho.get(2, 2)).re;
    Ok((c3, 4.0 * rho.get(0, 3).norm(), 4.0 * rho.get(1, 2).norm()))
}

fn eigenvalues(c3: f64, m: f64, n: f64) -> [f64; 4] {
    [
        0.25 * (1.0 + c3 + m),
        0.25 * (1.0 + c3 - m),
        0.25 * (1.0 - c3 + n),
        0.25 * (1.0 - c3 - n),
    ]
}

fn mutual_information_of(c3: f64, m: f64, n: f64) -> f64 {
    2.0 + eigenvalues(c3, m, n).iter().map(|&l| plogp(l)).sum::<f64>()
}

fn chi_of(c3: f64, m: f64, n: f64) -> f64 {
    c3.abs().max(0.5 * (m + n)).min(1.0)
}

fn classical_of(chi: f64) -> f64 {
    half_weighted_log(-chi) + half_weighted_log(chi)
}

/// `I = 2 + Σ λᵢ log₂ λᵢ`.
pub fn mutual_information(rho: &TwoQubitDensity) -> Result<f64> {
    let (c3, m, n) = x_parameters(rho)?;
    Ok(mutual_information_of(c3, m, n))
}

pub fn classical_correlation(rho: &TwoQubitDensity) -> Result<f64> {
    let (c3, m, n) = x_parameters(rho)?;
    Ok(classical_of(chi_of(c3, m, n)))
}

pub fn quantum_discord(rho: &TwoQubitDensity) -> Result<CorrelationReport> {
    let (c3, m, n) = x_parameters(rho)?;
    let mutual_info = mutual_information_of(c3, m, n);
    let chi = chi_of(c3, m, n);
    let classical_corr = classical_of(chi);
    Ok(CorrelationReport {
        eigenvalues: eigenvalues(c3, m, n),
        mutual_info,
        classical_corr,
        discord: mutual_info - classical_corr,
        chi,
    })
}

/// `Γ = D(t_f)/D(0)` for `x0` sent through `ch` up to `ch.t`.
pub fn amplification_rate(x0: &XState, ch: &ChannelParams, gamma: f64) -> Result<f64> {
    let initial = quantum_discord(&evolve_xstate(x0, &ch.at_time(0.0), gamma)?)?.discord;
    if !(initial > MIN_INITIAL_DISCORD) {
        return Err(Error::ZeroInitialDiscord(initial));
    }
    let last = quantum_discord(&evolve_xstate(x0, ch, gamma)?)?.discord;
    Ok(last / initial)
}
