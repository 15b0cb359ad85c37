use std::f64::consts::PI;

use dicke_discord::TwoQubitDensity;
use nalgebra::Matrix4;
use num_complex::Complex64;

/// Search grid over Bloch directions `(θ, φ)` of the measured qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementGrid {
    /// Intervals on θ ∈ [0, π]; the grid has `theta_steps + 1` rows.
    pub theta_steps: usize,
    /// Points on φ ∈ [0, 2π).
    pub phi_steps: usize,
    /// Refinement stops once the step falls below this (radians).
    pub angular_tol: f64,
    /// How many of the best grid points are refined.
    pub seeds: usize,
}

impl Default for MeasurementGrid {
    fn default() -> Self {
        MeasurementGrid { theta_steps: 32, phi_steps: 64, angular_tol: 1e-6, seeds: 3 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BruteForceDiscord {
    pub discord: f64,
    pub mutual_info: f64,
    pub classical_corr: f64,
    /// Optimal measurement direction on qubit B.
    pub theta: f64,
    pub phi: f64,
    /// False when refinement hit its iteration cap and the best point found
    /// so far was returned.
    pub refined: bool,
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Entropy of a 2×2 Hermitian matrix with trace `tr` (not necessarily one),
/// returned as `−Σ λ log₂ λ`.
fn entropy_2x2(m: &[[Complex64; 2]; 2]) -> f64 {
    let (a, d) = (m[0][0].re, m[1][1].re);
    let mid = 0.5 * (a + d);
    let half = (0.5 * (a - d)).hypot(m[0][1].norm());
    -(xlog2x(mid + half) + xlog2x(mid - half))
}

fn entropy_4x4(rho: &TwoQubitDensity) -> f64 {
    let m = rho.matrix();
    let mat = Matrix4::from_fn(|i, j| m[i][j]);
    let eig = mat.symmetric_eigenvalues();
    -eig.iter().map(|&l| xlog2x(l)).sum::<f64>()
}

/// `Σ_k p_k S(ρ_A|k)` for the projective measurement of B along `(θ, φ)`.
fn conditional_entropy(rho: &TwoQubitDensity, theta: f64, phi: f64) -> f64 {
    let m = rho.matrix();
    let (st, ct) = theta.sin_cos();
    let n = [st * phi.cos(), st * phi.sin(), ct];
    let mut total = 0.0;
    for sign in [1.0, -1.0] {
        // P = (I + s n·σ)/2 on qubit B, index 0 = |e⟩.
        let proj = [
            [Complex64::new(0.5 * (1.0 + sign * n[2]), 0.0), Complex64::new(0.5 * sign * n[0], -0.5 * sign * n[1])],
            [Complex64::new(0.5 * sign * n[0], 0.5 * sign * n[1]), Complex64::new(0.5 * (1.0 - sign * n[2]), 0.0)],
        ];
        // (σ_k)_{a a'} = Σ_{b b'} ρ_{(a b),(a' b')} P_{b' b}
        let mut cond = [[Complex64::new(0.0, 0.0); 2]; 2];
        for a in 0..2 {
            for ap in 0..2 {
                for b in 0..2 {
                    for bp in 0..2 {
                        cond[a][ap] += m[2 * a + b][2 * ap + bp] * proj[bp][b];
                    }
                }
            }
        }
        let p = cond[0][0].re + cond[1][1].re;
        if p > 1e-15 {
            // S(σ/p) = (S_unnormalized(σ) + p log₂ p) / p, weighted by p
            total += entropy_2x2(&cond) + xlog2x(p);
        }
    }
    total
}

/// Discord `I − C` with `C` maximized over rank-one projective measurements
/// on qubit B, by grid search followed by a compass refinement.
pub fn discord_bruteforce(rho: &TwoQubitDensity, grid: &MeasurementGrid) -> BruteForceDiscord {
    let s_a = entropy_2x2(&rho.marginal_a());
    let s_b = entropy_2x2(&rho.marginal_b());
    let s_ab = entropy_4x4(rho);
    let mutual_info = s_a + s_b - s_ab;

    let d_theta = PI / grid.theta_steps as f64;
    let d_phi = 2.0 * PI / grid.phi_steps as f64;
    let mut candidates: Vec<(f64, f64, f64)> = Vec::with_capacity((grid.theta_steps + 1) * grid.phi_steps);
    for i in 0..=grid.theta_steps {
        for k in 0..grid.phi_steps {
            let (theta, phi) = (i as f64 * d_theta, k as f64 * d_phi);
            candidates.push((conditional_entropy(rho, theta, phi), theta, phi));
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut best = candidates[0];
    let mut refined = true;
    for &(value, theta, phi) in candidates.iter().take(grid.seeds.max(1)) {
        let (v, t, p, ok) = refine(rho, value, theta, phi, d_theta.max(d_phi), grid.angular_tol);
        refined &= ok;
        if v < best.0 {
            best = (v, t, p);
        }
    }

    let classical_corr = s_a - best.0;
    BruteForceDiscord {
        discord: mutual_info - classical_corr,
        mutual_info,
        classical_corr,
        theta: best.1,
        phi: best.2,
        refined,
    }
}

fn refine(rho: &TwoQubitDensity, mut value: f64, mut theta: f64, mut phi: f64, start: f64, tol: f64) -> (f64, f64, f64, bool) {
    const MAX_ITER: usize = 20_000;
    let mut step = start;
    for _ in 0..MAX_ITER {
        if step < tol {
            return (value, theta, phi, true);
        }
        let mut moved = false;
        for (dt, dp) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let (t, p) = (theta + dt, phi + dp);
            let v = conditional_entropy(rho, t, p);
            if v < value {
                (value, theta, phi, moved) = (v, t, p, true);
                break;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    (value, theta, phi, false)
}
