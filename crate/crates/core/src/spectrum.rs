//! Thermodynamic-limit solution of the Dicke model.
//!
//! Below the critical coupling `λ_c = √(ωω₀)/2` the Holstein-Primakoff boson
//! `c` and the cavity mode `a` form two polaritons around the vacuum. Above
//! it both modes acquire macroscopic mean fields (`√α` for the cavity) and
//! the fluctuations are again a pair of polaritons in the displaced frame.
//! In both phases the cavity operator is expanded as
//! `a† = f₁d₁† + f₂d₁ + f₃d₂† + f₄d₂`, which is all that is needed for the
//! photon-number variance of the ground state.

use core::f64::consts::FRAC_PI_2;

use libm::{atan2, sqrt};

use crate::error::{Error, Result};

/// Relative distance from `λ_c` below which a coupling counts as critical.
pub const CRITICAL_REL_TOL: f64 = 1e-12;

/// Model parameters `(ω, ω₀, λ, N)` of the Dicke Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DickeParams {
    /// Effective cavity frequency ω (MHz).
    pub omega: f64,
    /// Two-level splitting ω₀ = k²/m (MHz).
    pub omega0: f64,
    /// Collective coupling λ (MHz).
    pub lambda: f64,
    /// Number of condensate atoms N.
    pub atoms: u64,
}

impl DickeParams {
    pub fn new(omega: f64, omega0: f64, lambda: f64, atoms: u64) -> Result<Self> {
        let p = DickeParams { omega, omega0, lambda, atoms };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::InvalidParameter("omega"));
        }
        if !(self.omega0.is_finite() && self.omega0 > 0.0) {
            return Err(Error::InvalidParameter("omega0"));
        }
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return Err(Error::InvalidParameter("lambda"));
        }
        if self.atoms == 0 {
            return Err(Error::InvalidParameter("atoms"));
        }
        Ok(())
    }

    /// Same model at a different coupling.
    pub fn with_lambda(&self, lambda: f64) -> Self {
        DickeParams { lambda, ..*self }
    }

    /// Collective spin length `j = N/2`.
    pub fn spin_length(&self) -> f64 {
        self.atoms as f64 / 2.0
    }
}

/// Pump and cavity parameters of the transversely pumped condensate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PumpParams {
    /// Maximal single-atom cavity coupling g₀ (MHz).
    pub g0: f64,
    /// Maximal pump Rabi frequency Ω_p (MHz).
    pub omega_p_rabi: f64,
    /// Atomic detuning Δ = ω_p − ω_A (MHz).
    pub delta: f64,
    /// Cavity detuning Δ_c = ω_p − ω_c (MHz).
    pub delta_c: f64,
    pub atoms: u64,
}

impl PumpParams {
    /// Light shift per atom, U₀ = g₀²/Δ.
    pub fn light_shift(&self) -> f64 {
        self.g0 * self.g0 / self.delta
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Normal,
    SuperRadiant,
}

impl Phase {
    pub fn as_str(&self) -> &'static str {
        match self {
            Phase::Normal => "normal",
            Phase::SuperRadiant => "superradiant",
        }
    }
}

/// Which super-radiant photon-number variance to evaluate.
///
/// `Symmetric` carries the same `2f₁²f₂²` term as the normal phase and is what
/// the exact diagonalization of the displaced quadratic Hamiltonian
/// reproduces. `AsPrinted` drops the factor 2 on that term and exists only
/// for comparison.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FluctuationVariant {
    #[default]
    Symmetric,
    AsPrinted,
}

/// Polariton frequencies and cavity-mode Bogoliubov coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BogoliubovSolution {
    pub phase: Phase,
    /// Soft polariton frequency ε₋ (MHz).
    pub eps_minus: f64,
    /// Hard polariton frequency ε₊ (MHz).
    pub eps_plus: f64,
    /// Mixing angle φ in [0, π/2].
    pub mixing_angle: f64,
    /// Cavity coefficients `[f₁, f₂, f₃, f₄]`.
    pub f: [f64; 4],
    /// `ξ = λ_c²/λ²`, super-radiant phase only.
    pub xi: Option<f64>,
    /// Cavity mean-field occupation α (zero in the normal phase).
    pub alpha: f64,
}

impl BogoliubovSolution {
    /// `f₁² − f₂² + f₃² − f₄²`, which equals one for a canonical transformation.
    pub fn symplectic_norm(&self) -> f64 {
        let [f1, f2, f3, f4] = self.f;
        (f1 * f1 - f2 * f2) + (f3 * f3 - f4 * f4)
    }

    /// Ground-state `⟨a†a⟩`, including the condensate displacement.
    pub fn mean_photon_number(&self) -> f64 {
        let [_, f2, _, f4] = self.f;
        f2 * f2 + f4 * f4 + self.alpha
    }

    /// Ground-state photon-number variance `⟨(a†a)²⟩ − ⟨a†a⟩²`.
    pub fn fluctuation(&self, variant: FluctuationVariant) -> f64 {
        let [f1, f2, f3, f4] = self.f;
        let first = match (self.phase, variant) {
            (Phase::SuperRadiant, FluctuationVariant::AsPrinted) => 1.0,
            _ => 2.0,
        };
        let cross = f1 * f4 + f2 * f3;
        let quadratic =
            first * f1 * f1 * f2 * f2 + 2.0 * f3 * f3 * f4 * f4 + cross * cross;
        let displaced = self.alpha * ((f1 + f2) * (f1 + f2) + (f3 + f4) * (f3 + f4));
        quadratic + displaced
    }
}

/// λ_c = √(ωω₀)/2.
pub fn critical_coupling(p: &DickeParams) -> f64 {
    sqrt(p.omega * p.omega0) / 2.0
}

pub fn classify_phase(p: &DickeParams) -> Result<Phase> {
    p.validate()?;
    let lambda_c = critical_coupling(p);
    if (p.lambda - lambda_c).abs() <= CRITICAL_REL_TOL * lambda_c {
        return Err(Error::CriticalPoint { lambda: p.lambda, lambda_c });
    }
    Ok(if p.lambda < lambda_c { Phase::Normal } else { Phase::SuperRadiant })
}

pub fn solve(p: &DickeParams) -> Result<BogoliubovSolution> {
    match classify_phase(p)? {
        Phase::Normal => solve_normal(p),
        Phase::SuperRadiant => solve_superradiant(p),
    }
}

pub fn solve_normal(p: &DickeParams) -> Result<BogoliubovSolution> {
    if classify_phase(p)? != Phase::Normal {
        return Err(Error::InvalidParameter("lambda"));
    }
    let (w, w0, l) = (p.omega, p.omega0, p.lambda);
    let lambda_c = critical_coupling(p);
    // 16λ²ωω₀ written through λ_c keeps the product ε₊²ε₋² = 4ωω₀(λ_c² − λ²)
    // free of cancellation.
    let coupling = 4.0 * l * sqrt(w * w0);
    let detuning = w0 * w0 - w * w;
    let product = 4.0 * w * w0 * (lambda_c - l) * (lambda_c + l);
    let (eps_minus, eps_plus) = polaritons(w * w + w0 * w0, detuning, coupling, product);
    let (cos_phi, sin_phi, phi) = mixing(coupling, detuning);
    Ok(BogoliubovSolution {
        phase: Phase::Normal,
        eps_minus,
        eps_plus,
        mixing_angle: phi,
        f: cavity_coefficients(w, eps_minus, eps_plus, cos_phi, sin_phi),
        xi: None,
        alpha: 0.0,
    })
}

pub fn solve_superradiant(p: &DickeParams) -> Result<BogoliubovSolution> {
    if classify_phase(p)? != Phase::SuperRadiant {
        return Err(Error::InvalidParameter("lambda"));
    }
    let (w, w0, l) = (p.omega, p.omega0, p.lambda);
    let lambda_c = critical_coupling(p);
    let xi = (lambda_c / l) * (lambda_c / l);
    let j = p.spin_length();
    let alpha = (2.0 * l / w) * (2.0 * l / w) * (j / 2.0) * (1.0 - xi) * (1.0 + xi);

    // The displaced matter mode oscillates at ω₀/ξ and couples with strength
    // 2ωω₀ (in the tan 2φ′ convention), independent of λ.
    let soft = w0 / xi;
    let coupling = 2.0 * w * w0;
    let detuning = soft * soft - w * w;
    let product = w * w * w0 * w0 * (1.0 - xi) * (1.0 + xi) / (xi * xi);
    let (eps_minus, eps_plus) = polaritons(w * w + soft * soft, detuning, coupling, product);
    let (cos_phi, sin_phi, phi) = mixing(coupling, detuning);
    Ok(BogoliubovSolution {
        phase: Phase::SuperRadiant,
        eps_minus,
        eps_plus,
        mixing_angle: phi,
        f: cavity_coefficients(w, eps_minus, eps_plus, cos_phi, sin_phi),
        xi: Some(xi),
        alpha,
    })
}

/// Photon-number fluctuation γ of the ground state (symmetric variant).
pub fn photon_number_fluctuation(p: &DickeParams) -> Result<f64> {
    photon_number_fluctuation_with(p, FluctuationVariant::Symmetric)
}

pub fn photon_number_fluctuation_with(
    p: &DickeParams,
    variant: FluctuationVariant,
) -> Result<f64> {
    Ok(solve(p)?.fluctuation(variant))
}

/// Maps pump settings onto the Dicke parameters.
///
/// `ω = −Δ_c + U₀N/2` and `λ = √N g₀Ω_p/(2Δ)`. The recoil splitting ω₀ is not
/// a pump property and is passed in.
pub fn pump_to_model(pp: &PumpParams, omega0: f64) -> Result<DickeParams> {
    if pp.delta == 0.0 || !pp.delta.is_finite() {
        return Err(Error::InvalidParameter("delta"));
    }
    if pp.atoms == 0 {
        return Err(Error::InvalidParameter("atoms"));
    }
    let n = pp.atoms as f64;
    let omega = -pp.delta_c + pp.light_shift() * n / 2.0;
    if !(omega > 0.0) {
        return Err(Error::NonPositiveFrequency(omega));
    }
    let lambda = (sqrt(n) * pp.g0 * pp.omega_p_rabi / (2.0 * pp.delta)).abs();
    DickeParams::new(omega, omega0, lambda, pp.atoms)
}

/// Pump Rabi frequency that produces coupling `lambda`, inverse of the λ map
/// in [`pump_to_model`].
pub fn model_to_pump_rabi(lambda: f64, g0: f64, delta: f64, atoms: u64) -> f64 {
    2.0 * delta * lambda / (sqrt(atoms as f64) * g0)
}

/// `(ε₋, ε₊)` from `ε±² = ½[sum ± √(detuning² + coupling²)]`, with ε₋²
/// taken from the product `ε₊²ε₋²` to avoid cancellation.
fn polaritons(sum: f64, detuning: f64, coupling: f64, product: f64) -> (f64, f64) {
    let root = libm::hypot(detuning, coupling);
    let plus_sq = 0.5 * (sum + root);
    let minus_sq = product / plus_sq;
    (sqrt(minus_sq), sqrt(plus_sq))
}

/// `(cos φ, sin φ, φ)` with `2φ = atan2(coupling, detuning) ∈ [0, π]`.
fn mixing(coupling: f64, detuning: f64) -> (f64, f64, f64) {
    let r = libm::hypot(coupling, detuning);
    if r == 0.0 {
        return (1.0, 0.0, 0.0);
    }
    let (cos2, sin2) = (detuning / r, coupling / r);
    let (c, s) = if cos2 >= 0.0 {
        let c = sqrt(0.5 * (1.0 + cos2));
        (c, sin2 / (2.0 * c))
    } else {
        let s = sqrt(0.5 * (1.0 - cos2));
        (sin2 / (2.0 * s), s)
    };
    let phi = 0.5 * atan2(coupling, detuning);
    (c, s, phi.clamp(0.0, FRAC_PI_2))
}

fn cavity_coefficients(w: f64, em: f64, ep: f64, cos_phi: f64, sin_phi: f64) -> [f64; 4] {
    let lo = cos_phi / (2.0 * sqrt(em * w));
    let hi = sin_phi / (2.0 * sqrt(ep * w));
    [lo * (w + em), lo * (w - em), hi * (w + ep), hi * (w - ep)]
}
