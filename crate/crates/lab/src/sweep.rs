//! Parameter sweeps behind the `pnf-sweep` and `discord-sweep` commands.
//!
//! Grid points are evaluated on a bounded rayon pool; results are collected
//! in grid order before anything is written, so the CSV body does not
//! depend on the worker count.

use std::io::Write;

use dicke_discord::{
    amplification_rate, critical_coupling, decoherence_factors, evolve_xstate,
    photon_number_fluctuation, quantum_discord, solve, Error as ModelError, XState,
};
use log::warn;
use rayon::prelude::*;

use crate::config::{linspace, SweepConfig};
use crate::LabError;

/// A grid point moved off the critical coupling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Nudge {
    pub index: usize,
    pub from: f64,
    pub to: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaGrid {
    pub values: Vec<f64>,
    pub nudges: Vec<Nudge>,
}

/// The λ grid of `cfg`, with any point on `λ_c` shifted by half a step
/// (towards the interior of the grid).
pub fn lambda_grid(cfg: &SweepConfig) -> Result<LambdaGrid, LabError> {
    let m = &cfg.model;
    let mut values = linspace(m.lambda_min, m.lambda_max, m.points);
    let lc = critical_coupling(&cfg.model_at(0.0));
    let step = if m.points > 1 { (m.lambda_max - m.lambda_min) / (m.points - 1) as f64 } else { 0.0 };
    let mut nudges = Vec::new();
    for (index, value) in values.iter_mut().enumerate() {
        if (*value - lc).abs() <= dicke_discord::spectrum::CRITICAL_REL_TOL * lc {
            if step == 0.0 {
                return Err(LabError::Config(format!(
                    "single-point grid sits on the critical coupling {lc} MHz"
                )));
            }
            let to = if index + 1 == m.points { *value - 0.5 * step } else { *value + 0.5 * step };
            warn!("lambda grid point {index} moved from {value} to {to} MHz (critical coupling)");
            nudges.push(Nudge { index, from: *value, to });
            *value = to;
        }
    }
    Ok(LambdaGrid { values, nudges })
}

/// Shortest representation that parses back to the same `f64`.
pub fn format_f64(v: f64) -> String {
    format!("{v:?}")
}

fn map_ordered<T, U, F>(workers: Option<usize>, items: &[T], f: F) -> Result<Vec<U>, LabError>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U, LabError> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| LabError::Config(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<U, LabError>> = pool.install(|| items.par_iter().map(&f).collect());
    results.into_iter().collect()
}

fn numerical(lambda: f64, e: ModelError) -> LabError {
    LabError::Numerical { lambda, reason: e.to_string() }
}

fn finite(lambda: f64, name: &str, v: f64) -> Result<f64, LabError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(LabError::Numerical { lambda, reason: format!("{name} = {v}") })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PnfRow {
    pub lambda: f64,
    pub lambda_over_omega0: f64,
    pub phase: &'static str,
    pub eps_minus: f64,
    pub eps_plus: f64,
    pub gamma: f64,
    pub log10_gamma: f64,
}

pub const PNF_HEADER: [&str; 7] =
    ["lambda_mhz", "lambda_over_omega0", "phase", "eps_minus", "eps_plus", "gamma", "log10_gamma"];

pub fn pnf_sweep(cfg: &SweepConfig) -> Result<Vec<PnfRow>, LabError> {
    let grid = lambda_grid(cfg)?;
    map_ordered(cfg.workers, &grid.values, |&lambda| {
        let s = solve(&cfg.model_at(lambda)).map_err(|e| numerical(lambda, e))?;
        let gamma = finite(lambda, "gamma", s.fluctuation(Default::default()))?;
        Ok(PnfRow {
            lambda,
            lambda_over_omega0: lambda / cfg.model.omega0,
            phase: s.phase.as_str(),
            eps_minus: finite(lambda, "eps_minus", s.eps_minus)?,
            eps_plus: finite(lambda, "eps_plus", s.eps_plus)?,
            gamma,
            log10_gamma: gamma.log10(),
        })
    })
}

pub fn write_pnf_csv<W: Write>(rows: &[PnfRow], out: W) -> Result<(), LabError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(PNF_HEADER)?;
    for r in rows {
        w.write_record([
            format_f64(r.lambda),
            format_f64(r.lambda_over_omega0),
            r.phase.to_string(),
            format_f64(r.eps_minus),
            format_f64(r.eps_plus),
            format_f64(r.gamma),
            format_f64(r.log10_gamma),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscordRow {
    pub lambda: f64,
    pub state: XState,
    pub gamma: f64,
    pub d1_mod: f64,
    pub d2_mod: f64,
    pub discord_initial: f64,
    pub discord_final: f64,
    /// `None` when the initial discord vanishes.
    pub amplification_rate: Option<f64>,
}

pub const DISCORD_HEADER: [&str; 10] = [
    "lambda_mhz",
    "c1",
    "c2",
    "c3",
    "gamma",
    "d1_mod",
    "d2_mod",
    "discord_initial",
    "discord_final",
    "amplification_rate",
];

pub const UNDEFINED: &str = "undefined";

/// One row per `(λ, c₁)`, λ-major.
pub fn discord_sweep(cfg: &SweepConfig) -> Result<Vec<DiscordRow>, LabError> {
    let grid = lambda_grid(cfg)?;
    let states = cfg.states()?;
    let ch = cfg.channel()?;
    let points: Vec<(f64, XState)> = grid
        .values
        .iter()
        .flat_map(|&l| states.iter().map(move |&x| (l, x)))
        .collect();
    map_ordered(cfg.workers, &points, |&(lambda, state)| {
        let gamma = photon_number_fluctuation(&cfg.model_at(lambda)).map_err(|e| numerical(lambda, e))?;
        let factors = decoherence_factors(gamma, &ch).map_err(|e| numerical(lambda, e))?;
        let initial = evolve_xstate(&state, &ch.at_time(0.0), gamma)
            .and_then(|rho| quantum_discord(&rho))
            .map_err(|e| numerical(lambda, e))?
            .discord;
        let last = evolve_xstate(&state, &ch, gamma)
            .and_then(|rho| quantum_discord(&rho))
            .map_err(|e| numerical(lambda, e))?
            .discord;
        let rate = match amplification_rate(&state, &ch, gamma) {
            Ok(r) => Some(finite(lambda, "amplification_rate", r)?),
            Err(ModelError::ZeroInitialDiscord(_)) => None,
            Err(e) => return Err(numerical(lambda, e)),
        };
        Ok(DiscordRow {
            lambda,
            state,
            gamma: finite(lambda, "gamma", gamma)?,
            d1_mod: factors.d1,
            d2_mod: factors.d2,
            discord_initial: finite(lambda, "discord_initial", initial)?,
            discord_final: finite(lambda, "discord_final", last)?,
            amplification_rate: rate,
        })
    })
}

pub fn write_discord_csv<W: Write>(rows: &[DiscordRow], out: W) -> Result<(), LabError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(DISCORD_HEADER)?;
    for r in rows {
        w.write_record([
            format_f64(r.lambda),
            format_f64(r.state.c1),
            format_f64(r.state.c2),
            format_f64(r.state.c3),
            format_f64(r.gamma),
            format_f64(r.d1_mod),
            format_f64(r.d2_mod),
            format_f64(r.discord_initial),
            format_f64(r.discord_final),
            r.amplification_rate.map_or_else(|| UNDEFINED.to_string(), format_f64),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Time (µs) to cross a cavity waist of `waist_um` µm at `velocity_mps` m/s.
pub fn transit_time(waist_um: f64, velocity_mps: f64) -> Result<f64, LabError> {
    if !(waist_um > 0.0 && waist_um.is_finite()) {
        return Err(LabError::NonPositiveInput("waist_um"));
    }
    if !(velocity_mps > 0.0 && velocity_mps.is_finite()) {
        return Err(LabError::NonPositiveInput("velocity_mps"));
    }
    // µm / (m/s) = 1e-6 s = 1 µs
    Ok(waist_um / velocity_mps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ModelConfig;

    fn cfg(min: f64, max: f64, points: usize) -> SweepConfig {
        SweepConfig {
            model: ModelConfig { omega: 20.0, omega0: 0.05, atoms: 100_000, lambda_min: min, lambda_max: max, points },
            qubits: None,
            state: None,
            output: None,
            workers: Some(2),
        }
    }

    #[test]
    fn nudges_the_critical_point() {
        let g = lambda_grid(&cfg(0.0, 1.0, 2001)).unwrap();
        assert_eq!(g.nudges.len(), 1);
        let n = g.nudges[0];
        assert_eq!(n.index, 1000);
        assert!((n.to - n.from - 0.00025).abs() < 1e-15);
        assert!(lambda_grid(&cfg(0.5, 0.5, 1)).is_err());
        let end = lambda_grid(&cfg(0.0, 0.5, 11)).unwrap();
        assert!(end.values[10] < 0.5);
    }

    #[test]
    fn zero_coupling_row() {
        let rows = pnf_sweep(&cfg(0.0, 0.0, 1)).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].gamma, 0.0);
        assert_eq!(rows[0].phase, "normal");
        let mut buf = Vec::new();
        write_pnf_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "lambda_mhz,lambda_over_omega0,phase,eps_minus,eps_plus,gamma,log10_gamma\n\
             0.0,0.0,normal,0.05,20.0,0.0,-inf\n"
        );
    }

    #[test]
    fn transit_times() {
        assert_eq!(transit_time(25.0, 1.0).unwrap(), 25.0);
        assert!((transit_time(25.0, 0.025).unwrap() - 1000.0).abs() < 1e-9);
        assert!(matches!(transit_time(0.0, 1.0), Err(LabError::NonPositiveInput(_))));
        assert!(transit_time(25.0, -2.0).is_err());
    }

    #[test]
    fn float_format_round_trips() {
        for v in [0.1, 1e-7, 112.98644783997177, 2.0 / 3.0, 1e300] {
            assert_eq!(format_f64(v).parse::<f64>().unwrap(), v);
        }
    }
}
