//! The `validate` command: closed forms against pinned oracle values, and
//! pinned values against freshly recomputed oracles.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use dicke_discord::{
    decoherence_factors, photon_number_fluctuation, quantum_discord, ChannelParams, XState,
};
use log::info;

use crate::golden::{self, GoldenFile, GoldenRecord};
use crate::LabError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Closed forms against the pinned oracle values.
    Formulas,
    /// Pinned values against recomputed oracles.
    Oracles,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "formulas" => Ok(Suite::Formulas),
            "oracles" => Ok(Suite::Oracles),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite `{s}` (expected formulas, oracles or all)")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Formulas => "formulas",
            Suite::Oracles => "oracles",
            Suite::All => "all",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
        }
        let failed = self.failures().count();
        s.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        s
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }
}

#[derive(Clone, Debug)]
pub struct ValidateOptions {
    pub suite: Suite,
    pub golden_dir: PathBuf,
    /// Recompute the oracles and overwrite the golden file first.
    pub pin: bool,
}

/// Closed-form γ against the quadratic oracle.
pub const GAMMA_REL_TOL: f64 = 1e-6;
/// Closed-form discord against the measurement search.
pub const DISCORD_ABS_TOL: f64 = 1e-9;
/// Pinned values against recomputation.
pub const PIN_REL_TOL: f64 = 1e-9;

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale < 1e-15 {
        (a - b).abs()
    } else {
        (a - b).abs() / scale
    }
}

fn lookup<'a>(g: &'a GoldenFile, name: &str, report: &mut Report) -> Option<&'a GoldenRecord> {
    let r = g.get(name);
    if r.is_none() {
        report.push(name, false, "missing from golden file");
    }
    r
}

fn model_failure(lambda: f64) -> impl Fn(dicke_discord::Error) -> LabError {
    move |e| LabError::Numerical { lambda, reason: e.to_string() }
}

fn formula_checks(g: &GoldenFile, report: &mut Report) -> Result<(), LabError> {
    for &l in &golden::QUADRATIC_LAMBDAS {
        let name = golden::quadratic_name(l);
        if let Some(rec) = lookup(g, &name, report) {
            let closed = photon_number_fluctuation(&golden::reference_model(l, 100_000)).map_err(model_failure(l))?;
            let err = rel(closed, rec.value);
            report.push(name, err <= GAMMA_REL_TOL, format!("closed {closed:e}, oracle {:e}, rel {err:.2e}", rec.value));
        }
    }

    // Finite N: the relative gap to the thermodynamic limit closes as 1/N.
    let l = golden::FINITE_N_LAMBDA;
    let limit = photon_number_fluctuation(&golden::reference_model(l, 100_000)).map_err(model_failure(l))?;
    let mut gaps = Vec::new();
    for &n in &golden::FINITE_N_ATOMS {
        match lookup(g, &golden::finite_n_name(n, l), report) {
            Some(rec) => gaps.push((n, rel(rec.value, limit))),
            None => return Ok(()),
        }
    }
    let ratios: Vec<f64> = gaps.windows(2).map(|w| w[0].1 / w[1].1).collect();
    let trend = ratios.iter().all(|r| (1.5..=2.5).contains(r));
    report.push(
        format!("gamma_finite_n trend (lambda={l:?})"),
        trend,
        format!(
            "gaps {} ; halving ratios {:?}",
            gaps.iter().map(|(n, e)| format!("N={n}: {e:.3e}")).collect::<Vec<_>>().join(", "),
            ratios.iter().map(|r| format!("{r:.3}")).collect::<Vec<_>>()
        ),
    );

    // Short-time decoherence: the exponent error shrinks as t².
    let l = golden::OVERLAP_LAMBDA;
    let gamma = photon_number_fluctuation(&golden::reference_model(l, 100_000)).map_err(model_failure(l))?;
    let mut errs = Vec::new();
    for &t in &golden::OVERLAP_TIMES {
        let name = golden::overlap_name(t);
        let Some(rec) = lookup(g, &name, report) else { return Ok(()) };
        let exact = rec.value.hypot(rec.value_im.unwrap_or(0.0));
        let closed = decoherence_factors(gamma, &ChannelParams::from_sum_difference(golden::OVERLAP_DELTA1, 0.0, t))
            .map_err(model_failure(l))?
            .d1;
        let err = rel(exact.ln(), closed.ln());
        report.push(name, exact <= 1.0 + 1e-12, format!("|D| exact {exact:.15}, short-time {closed:.15}, exponent rel {err:.3e}"));
        errs.push(err);
    }
    let ratios: Vec<f64> = errs.windows(2).map(|w| w[0] / w[1]).collect();
    report.push(
        "overlap_d1 short-time order",
        ratios.iter().all(|r| (3.0..=5.0).contains(r)),
        format!("exponent error ratio per halving of t: {:?}", ratios.iter().map(|r| format!("{r:.3}")).collect::<Vec<_>>()),
    );

    let (c1, c2, c3) = (0.6, 0.0, 0.3);
    let fixed = XState::new(c1, c2, c3).map_err(|e| LabError::Config(e.to_string()))?.density();
    for (name, rho) in [(golden::DISCORD_STATIC_NAME, fixed), (golden::DISCORD_EVOLVED_NAME, golden::evolved_state()?)] {
        if let Some(rec) = lookup(g, name, report) {
            let closed = quantum_discord(&rho).map_err(model_failure(golden::OVERLAP_LAMBDA))?.discord;
            let err = (closed - rec.value).abs();
            report.push(name, err <= DISCORD_ABS_TOL, format!("closed {closed:.12}, search {:.12}, abs {err:.2e}", rec.value));
        }
    }
    Ok(())
}

fn oracle_checks(g: &GoldenFile, fresh: &GoldenFile, report: &mut Report) {
    for f in &fresh.records {
        let Some(rec) = lookup(g, &f.name, report) else { continue };
        let im = match (rec.value_im, f.value_im) {
            (None, None) => 0.0,
            (Some(a), Some(b)) => rel(a, b),
            _ => f64::INFINITY,
        };
        let err = rel(rec.value, f.value).max(im);
        let ok = err <= PIN_REL_TOL && rec.cutoff == f.cutoff;
        report.push(
            format!("pinned {}", f.name),
            ok,
            format!("pinned {:?}, recomputed {:?} at {}, rel {err:.2e}", rec.value, f.value, f.cutoff),
        );
    }
    for rec in &g.records {
        if fresh.get(&rec.name).is_none() {
            report.push(format!("pinned {}", rec.name), false, "unknown record in golden file");
        }
    }
}

pub fn golden_path(dir: &Path) -> PathBuf {
    dir.join(golden::GOLDEN_FILE)
}

pub fn run(opts: &ValidateOptions) -> Result<Report, LabError> {
    let path = golden_path(&opts.golden_dir);
    let mut fresh = None;
    let pinned = if opts.pin {
        let computed = golden::compute_all()?;
        computed.save(&path)?;
        info!("pinned {} oracle values to {}", computed.records.len(), path.display());
        fresh = Some(computed.clone());
        computed
    } else {
        if !path.exists() {
            return Err(LabError::Config(format!(
                "golden file {} not found; run `validate --pin` to create it",
                path.display()
            )));
        }
        GoldenFile::load(&path)?
    };

    let mut report = Report::default();
    if matches!(opts.suite, Suite::Formulas | Suite::All) {
        formula_checks(&pinned, &mut report)?;
    }
    if matches!(opts.suite, Suite::Oracles | Suite::All) {
        let fresh = match fresh {
            Some(f) => f,
            None => golden::compute_all()?,
        };
        oracle_checks(&pinned, &fresh, &mut report);
    }
    Ok(report)
}
