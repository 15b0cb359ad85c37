use dicke_discord::{ChannelParams, DickeParams};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::quadratic::QuadraticModel;
use super::{check_converged, FockTruncation, OracleError, OracleResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overlap {
    /// Uses δ₁ = δ_A + δ_B.
    D1,
    /// Uses δ₂ = δ_A − δ_B.
    D2,
}

/// `e^{−iHt}` applied to a complex vector, with `H = V diag(E) Vᵀ`.
fn propagate(values: &DVector<f64>, vectors: &DMatrix<f64>, t: f64, v: &DVector<Complex64>) -> DVector<Complex64> {
    let re = vectors.transpose() * v.map(|z| z.re);
    let im = vectors.transpose() * v.map(|z| z.im);
    let rotated = DVector::from_fn(values.len(), |k, _| {
        Complex64::new(re[k], im[k]) * Complex64::from_polar(1.0, -values[k] * t)
    });
    let out_re = vectors * rotated.map(|z| z.re);
    let out_im = vectors * rotated.map(|z| z.im);
    DVector::from_fn(values.len(), |k, _| Complex64::new(out_re[k], out_im[k]))
}

fn overlap_at(p: &DickeParams, delta: f64, t: f64, trunc: &FockTruncation) -> Result<Complex64, OracleError> {
    let model = QuadraticModel::new(p, trunc)?;
    let (_, ground) = model.ground_state();
    let shift = &model.photon_number * delta;
    let upper = (&model.hamiltonian + &shift).symmetric_eigen();
    let lower = (&model.hamiltonian - &shift).symmetric_eigen();

    let psi = ground.map(|x| Complex64::new(x, 0.0));
    // e^{iH_ee t} e^{−iH_gg t}|G⟩
    let after_lower = propagate(&lower.eigenvalues, &lower.eigenvectors, t, &psi);
    let after_upper = propagate(&upper.eigenvalues, &upper.eigenvectors, -t, &after_lower);
    Ok(psi.iter().zip(after_upper.iter()).map(|(a, b)| a.conj() * b).sum())
}

/// `⟨G|e^{i(H₁+δn)t} e^{−i(H₁−δn)t}|G⟩` for the quadratic Hamiltonian of the
/// current phase, including its phase.
pub fn decoherence_overlap_exact(
    p: &DickeParams,
    ch: &ChannelParams,
    trunc: &FockTruncation,
    which: Overlap,
    tolerance: f64,
) -> Result<OracleResult<Complex64>, OracleError> {
    ch.validate()?;
    let trunc = FockTruncation::new(trunc.cavity_cutoff, trunc.matter_cutoff)?;
    let delta = match which {
        Overlap::D1 => ch.delta1(),
        Overlap::D2 => ch.delta2(),
    };
    let value = overlap_at(p, delta, ch.t, &trunc)?;
    let mut estimate = 0.0f64;
    for coarse in [trunc.halve_cavity(), trunc.halve_matter()] {
        let c = overlap_at(p, delta, ch.t, &coarse)?;
        estimate = estimate.max((value - c).norm() / value.norm().max(1e-300));
    }
    check_converged(
        OracleResult { value, cutoff_used: trunc, convergence_estimate: estimate },
        tolerance,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference(lambda: f64) -> DickeParams {
        DickeParams::new(20.0, 0.05, lambda, 100_000).unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let ch = ChannelParams::from_sum_difference(0.5, 0.1, 0.0);
        let t = FockTruncation::new(8, 24).unwrap();
        let d = decoherence_overlap_exact(&reference(0.25), &ch, &t, Overlap::D1, 1e-10).unwrap();
        assert!((d.value - Complex64::new(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn zero_shift_keeps_unit_modulus() {
        let t = FockTruncation::new(8, 24).unwrap();
        for time in [0.01, 1.0, 20.0] {
            let ch = ChannelParams::from_sum_difference(0.0, 0.3, time);
            let d = decoherence_overlap_exact(&reference(0.3), &ch, &t, Overlap::D1, 1e-8).unwrap();
            assert!((d.value.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn modulus_bounded_by_one() {
        let t = FockTruncation::new(8, 24).unwrap();
        for (l, time) in [(0.25, 0.3), (0.45, 3.0), (0.75, 0.05)] {
            let ch = ChannelParams::from_sum_difference(0.2, 0.05, time);
            for which in [Overlap::D1, Overlap::D2] {
                let d = decoherence_overlap_exact(&reference(l), &ch, &t, which, 1e-6).unwrap();
                assert!(d.value.norm() <= 1.0 + 1e-12);
            }
        }
    }
}
