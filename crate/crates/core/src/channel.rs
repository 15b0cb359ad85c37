//! Phase-decoherence channel seen by two dispersively coupled qubits.
//!
//! Far from resonance each qubit only picks up a photon-number dependent
//! shift `δ = g²/Δ`. Tracing out the cavity-condensate ground state then damps
//! the two anti-diagonal coherences of a Bell-diagonal state by
//! `|D₁| = exp(−2γδ₁²t²)` and `|D₂| = exp(−2γδ₂²t²)` (short-time form) while
//! leaving the populations untouched.

use libm::exp;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// `|Δ|/g` below which the dispersive approximation is flagged.
pub const DISPERSIVE_RATIO: f64 = 10.0;
/// Largest `|δ|t` for which the Gaussian short-time decay is trusted.
pub const SHORT_TIME_LIMIT: f64 = 0.1;

/// Qubit-cavity coupling and bare splitting of one atomic qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitParams {
    /// g (MHz).
    pub g: f64,
    /// ω_A or ω_B (MHz).
    pub splitting: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DispersiveShift {
    /// δ = g²/Δ (MHz).
    pub shift: f64,
    /// Set when `|Δ| < 10 g`.
    pub outside_dispersive_regime: bool,
}

/// δ = g²/Δ with Δ = splitting − ω.
pub fn dispersive_shift(q: &QubitParams, cavity_omega: f64) -> Result<DispersiveShift> {
    if !(q.g >= 0.0) {
        return Err(Error::InvalidParameter("g"));
    }
    let detuning = q.splitting - cavity_omega;
    if detuning == 0.0 {
        return Err(Error::ZeroDetuning);
    }
    Ok(DispersiveShift {
        shift: q.g * q.g / detuning,
        outside_dispersive_regime: detuning.abs() < DISPERSIVE_RATIO * q.g,
    })
}

/// Shifts, shifted splittings and transit time of the qubit pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelParams {
    /// δ_A (MHz).
    pub delta_a: f64,
    /// δ_B (MHz).
    pub delta_b: f64,
    /// ω′_A = ω_A + δ_A (MHz).
    pub omega_a_shifted: f64,
    /// ω′_B = ω_B + δ_B (MHz).
    pub omega_b_shifted: f64,
    /// Interaction time (µs).
    pub t: f64,
}

impl ChannelParams {
    pub fn from_qubits(a: &QubitParams, b: &QubitParams, cavity_omega: f64, t: f64) -> Result<Self> {
        let da = dispersive_shift(a, cavity_omega)?.shift;
        let db = dispersive_shift(b, cavity_omega)?.shift;
        let ch = ChannelParams {
            delta_a: da,
            delta_b: db,
            omega_a_shifted: a.splitting + da,
            omega_b_shifted: b.splitting + db,
            t,
        };
        ch.validate()?;
        Ok(ch)
    }

    /// Channel with given δ₁ = δ_A + δ_B and δ₂ = δ_A − δ_B in the frame
    /// rotating with both qubits (ω′ = 0).
    pub fn from_sum_difference(delta1: f64, delta2: f64, t: f64) -> Self {
        ChannelParams {
            delta_a: 0.5 * (delta1 + delta2),
            delta_b: 0.5 * (delta1 - delta2),
            omega_a_shifted: 0.0,
            omega_b_shifted: 0.0,
            t,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t >= 0.0 && self.t.is_finite()) {
            return Err(Error::InvalidParameter("t"));
        }
        let finite = [self.delta_a, self.delta_b, self.omega_a_shifted, self.omega_b_shifted];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("channel"));
        }
        Ok(())
    }

    pub fn delta1(&self) -> f64 {
        self.delta_a + self.delta_b
    }

    pub fn delta2(&self) -> f64 {
        self.delta_a - self.delta_b
    }

    pub fn at_time(&self, t: f64) -> Self {
        ChannelParams { t, ..*self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecoherenceFactors {
    /// |D₁(t)|.
    pub d1: f64,
    /// |D₂(t)|.
    pub d2: f64,
    /// Set when `|δ₁|t` or `|δ₂|t` exceeds [`SHORT_TIME_LIMIT`].
    pub beyond_short_time: bool,
}

pub fn decoherence_factors(gamma: f64, ch: &ChannelParams) -> Result<DecoherenceFactors> {
    if !(gamma >= 0.0) {
        return Err(Error::InvalidParameter("gamma"));
    }
    ch.validate()?;
    let (x1, x2) = (ch.delta1() * ch.t, ch.delta2() * ch.t);
    Ok(DecoherenceFactors {
        d1: exp(-2.0 * gamma * x1 * x1),
        d2: exp(-2.0 * gamma * x2 * x2),
        beyond_short_time: x1.abs() > SHORT_TIME_LIMIT || x2.abs() > SHORT_TIME_LIMIT,
    })
}

/// Bell-diagonal state `¼(I + Σ cᵢ σᵢ⊗σᵢ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XState {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl XState {
    const TOL: f64 = 1e-12;

    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let x = XState { c1, c2, c3 };
        x.validate()?;
        Ok(x)
    }

    pub fn validate(&self) -> Result<()> {
        let XState { c1, c2, c3 } = *self;
        let ok = [c1, c2, c3].iter().all(|c| c.is_finite() && c.abs() <= 1.0 + Self::TOL)
            && (c1 - c2).abs() <= 1.0 + c3 + Self::TOL
            && (c1 + c2).abs() <= 1.0 - c3 + Self::TOL;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidState { c1, c2, c3 })
        }
    }

    /// The family `c₂ = 0`, `c₃ = c₁/2`.
    pub fn half_z(c1: f64) -> Result<Self> {
        XState::new(c1, 0.0, 0.5 * c1)
    }

    pub fn density(&self) -> TwoQubitDensity {
        let q = |v: f64| Complex64::new(0.25 * v, 0.0);
        TwoQubitDensity::x_shaped(
            [q(1.0 + self.c3), q(1.0 - self.c3), q(1.0 - self.c3), q(1.0 + self.c3)],
            q(self.c1 - self.c2),
            q(self.c1 + self.c2),
        )
    }
}

/// Two-qubit density matrix in the basis `{|ee⟩, |eg⟩, |ge⟩, |gg⟩}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitDensity {
    m: [[Complex64; 4]; 4],
}

impl TwoQubitDensity {
    /// Wraps a Hermitian, unit-trace 4×4 matrix. Positivity is not checked
    /// here.
    pub fn from_matrix(m: [[Complex64; 4]; 4]) -> Result<Self> {
        let rho = TwoQubitDensity { m };
        if rho.hermiticity_error() > 1e-12 || (rho.trace() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter("rho"));
        }
        Ok(rho)
    }

    fn x_shaped(diag: [Complex64; 4], outer: Complex64, inner: Complex64) -> Self {
        let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (i, d) in diag.into_iter().enumerate() {
            m[i][i] = d;
        }
        m[0][3] = outer;
        m[3][0] = outer.conj();
        m[1][2] = inner;
        m[2][1] = inner.conj();
        TwoQubitDensity { m }
    }

    pub fn matrix(&self) -> &[[Complex64; 4]; 4] {
        &self.m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.m[row][col]
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.m[i][i].re).sum()
    }

    /// max |ρ − ρ†|.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.m[i][j] - self.m[j][i].conj()).norm());
            }
        }
        worst
    }

    /// Reduced state of qubit A (the first tensor factor).
    pub fn marginal_a(&self) -> [[Complex64; 2]; 2] {
        let m = &self.m;
        [
            [m[0][0] + m[1][1], m[0][2] + m[1][3]],
            [m[2][0] + m[3][1], m[2][2] + m[3][3]],
        ]
    }

    /// Reduced state of qubit B.
    pub fn marginal_b(&self) -> [[Complex64; 2]; 2] {
        let m = &self.m;
        [
            [m[0][0] + m[2][2], m[0][1] + m[2][3]],
            [m[1][0] + m[3][2], m[1][1] + m[3][3]],
        ]
    }

    /// Largest entry-wise distance of either marginal from `I/2`.
    pub fn marginal_deviation(&self) -> f64 {
        let half = Complex64::new(0.5, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let target = [[half, zero], [zero, half]];
        [self.marginal_a(), self.marginal_b()]
            .iter()
            .flat_map(|r| (0..2).flat_map(move |i| (0..2).map(move |j| (i, j, r))))
            .map(|(i, j, r)| (r[i][j] - target[i][j]).norm())
            .fold(0.0, f64::max)
    }

    /// Largest modulus among entries off the diagonal and anti-diagonal.
    pub fn off_x_magnitude(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 {
                    worst = worst.max(self.m[i][j].norm());
                }
            }
        }
        worst
    }

    /// Eigenvalues of an X-shaped matrix from its two 2×2 blocks,
    /// `[outer+, outer−, inner+, inner−]`. `None` if entries off the X are
    /// nonzero.
    pub fn x_eigenvalues(&self) -> Option<[f64; 4]> {
        if self.off_x_magnitude() > 1e-12 {
            return None;
        }
        let block = |a: f64, d: f64, b: Complex64| {
            let mid = 0.5 * (a + d);
            let half = libm::hypot(0.5 * (a - d), b.norm());
            (mid + half, mid - half)
        };
        let (o1, o2) = block(self.m[0][0].re, self.m[3][3].re, self.m[0][3]);
        let (i1, i2) = block(self.m[1][1].re, self.m[2][2].re, self.m[1][2]);
        Some([o1, o2, i1, i2])
    }
}

/// Applies the channel to a Bell-diagonal initial state.
///
/// Populations `(1 ± c₃)/4` are unchanged; the coherences become
/// `¼μ(t)|D₁|` and `¼ν(t)|D₂|` with `μ = (c₁−c₂)e^{−i(ω′_A+ω′_B)t}` and
/// `ν = (c₁+c₂)e^{−i(ω′_A−ω′_B)t}`.
pub fn evolve_xstate(x: &XState, ch: &ChannelParams, gamma: f64) -> Result<TwoQubitDensity> {
    x.validate()?;
    let factors = decoherence_factors(gamma, ch)?;
    let t = ch.t;
    let mu = Complex64::from_polar(x.c1 - x.c2, -(ch.omega_a_shifted + ch.omega_b_shifted) * t);
    let nu = Complex64::from_polar(x.c1 + x.c2, -(ch.omega_a_shifted - ch.omega_b_shifted) * t);
    let q = |v: f64| Complex64::new(0.25 * v, 0.0);
    Ok(TwoQubitDensity::x_shaped(
        [q(1.0 + x.c3), q(1.0 - x.c3), q(1.0 - x.c3), q(1.0 + x.c3)],
        0.25 * mu * factors.d1,
        0.25 * nu * factors.d2,
    ))
}
