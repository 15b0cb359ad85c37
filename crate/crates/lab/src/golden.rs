//! Pinned oracle values.
//!
//! One record per line, `#` starts a comment:
//!
//! ```text
//! gamma_quadratic(lambda=0.25) value=0.0001797 cutoff=10x48 convergence=3e-15
//! overlap_d1(lambda=0.45,delta1=0.5,t=0.002) value=0.99 value_im=-0.01 cutoff=10x48 convergence=1e-16
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use dicke_discord::{evolve_xstate, photon_number_fluctuation, ChannelParams, DickeParams, XState};

use crate::oracle::{
    decoherence_overlap_exact, discord_bruteforce, gamma_finite_n, gamma_quadratic_exact, FockTruncation,
    MeasurementGrid, Overlap,
};
use crate::LabError;

pub const GOLDEN_FILE: &str = "oracles.txt";

/// `golden/` at the workspace root.
pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoldenRecord {
    pub name: String,
    pub value: f64,
    pub value_im: Option<f64>,
    /// Cutoff label, or `-` for oracles without a Fock truncation.
    pub cutoff: String,
    pub convergence: f64,
}

impl GoldenRecord {
    fn line(&self) -> String {
        let mut s = format!("{} value={:?}", self.name, self.value);
        if let Some(im) = self.value_im {
            let _ = write!(s, " value_im={im:?}");
        }
        let _ = write!(s, " cutoff={} convergence={:?}", self.cutoff, self.convergence);
        s
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GoldenFile {
    pub records: Vec<GoldenRecord>,
}

impl GoldenFile {
    pub fn parse(text: &str, path: &Path) -> Result<Self, LabError> {
        let bad = |line: usize, reason: String| LabError::Golden {
            path: path.to_path_buf(),
            reason: format!("line {line}: {reason}"),
        };
        let mut records = Vec::new();
        let mut seen = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let name = tokens.next().unwrap_or_default().to_string();
            let (mut value, mut value_im, mut cutoff, mut convergence) = (None, None, None, None);
            for tok in tokens {
                let (key, v) = tok.split_once('=').ok_or_else(|| bad(i + 1, format!("expected key=value, got `{tok}`")))?;
                let num = || v.parse::<f64>().map_err(|_| bad(i + 1, format!("`{v}` is not a number")));
                match key {
                    "value" => value = Some(num()?),
                    "value_im" => value_im = Some(num()?),
                    "cutoff" => cutoff = Some(v.to_string()),
                    "convergence" => convergence = Some(num()?),
                    _ => return Err(bad(i + 1, format!("unknown key `{key}`"))),
                }
            }
            if !seen.insert(name.clone()) {
                return Err(bad(i + 1, format!("duplicate record `{name}`")));
            }
            records.push(GoldenRecord {
                value: value.ok_or_else(|| bad(i + 1, "missing value".into()))?,
                value_im,
                cutoff: cutoff.ok_or_else(|| bad(i + 1, "missing cutoff".into()))?,
                convergence: convergence.ok_or_else(|| bad(i + 1, "missing convergence".into()))?,
                name,
            });
        }
        Ok(GoldenFile { records })
    }

    pub fn load(path: &Path) -> Result<Self, LabError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| LabError::Read { path: path.to_path_buf(), source })?;
        Self::parse(&text, path)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from(
            "# Reference values from the brute-force oracles.\n\
             # Regenerate with `qpt-sweep validate --suite oracles --pin`.\n",
        );
        for r in &self.records {
            s.push_str(&r.line());
            s.push('\n');
        }
        s
    }

    pub fn save(&self, path: &Path) -> Result<(), LabError> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&GoldenRecord> {
        self.records.iter().find(|r| r.name == name)
    }
}

/// Coupling values at which the quadratic oracle is pinned.
pub const QUADRATIC_LAMBDAS: [f64; 6] = [0.1, 0.25, 0.45, 0.55, 0.75, 1.0];
/// Atom numbers for the finite-N trend at λ = 0.25 MHz.
pub const FINITE_N_ATOMS: [u64; 3] = [8, 16, 32];
pub const FINITE_N_LAMBDA: f64 = 0.25;

/// `(N, λ)` pairs for the finite-N oracle: a single atom at weak coupling,
/// then the trend in N.
pub fn finite_n_cases() -> Vec<(u64, f64)> {
    std::iter::once((1, 0.05)).chain(FINITE_N_ATOMS.iter().map(|&a| (a, FINITE_N_LAMBDA))).collect()
}
/// Short-time overlap grid: λ = 0.45 MHz, δ₁ = 0.5 MHz.
pub const OVERLAP_LAMBDA: f64 = 0.45;
pub const OVERLAP_DELTA1: f64 = 0.5;
pub const OVERLAP_TIMES: [f64; 3] = [0.008, 0.004, 0.002];
/// Channel used for the evolved brute-force discord case.
pub const EVOLVED_STATE: (f64, f64, f64) = (0.5, -0.2, 0.3);
pub const EVOLVED_DELTA1: f64 = 0.05;
pub const EVOLVED_T: f64 = 1.0;

/// Model parameters of the reference experiment (MHz) at coupling `lambda`.
pub fn reference_model(lambda: f64, atoms: u64) -> DickeParams {
    DickeParams { omega: 20.0, omega0: 0.05, lambda, atoms }
}

pub fn quadratic_name(lambda: f64) -> String {
    format!("gamma_quadratic(lambda={lambda:?})")
}

pub fn finite_n_name(atoms: u64, lambda: f64) -> String {
    format!("gamma_finite_n(atoms={atoms},lambda={lambda:?})")
}

pub fn overlap_name(t: f64) -> String {
    format!("overlap_d1(lambda={OVERLAP_LAMBDA:?},delta1={OVERLAP_DELTA1:?},t={t:?})")
}

pub const DISCORD_STATIC_NAME: &str = "discord_bruteforce(c1=0.6,c2=0.0,c3=0.3)";
pub const DISCORD_EVOLVED_NAME: &str =
    "discord_bruteforce(c1=0.5,c2=-0.2,c3=0.3,lambda=0.45,delta1=0.05,t=1.0)";

/// The density matrix behind [`DISCORD_EVOLVED_NAME`].
pub fn evolved_state() -> Result<dicke_discord::TwoQubitDensity, LabError> {
    let (c1, c2, c3) = EVOLVED_STATE;
    let x = XState::new(c1, c2, c3).map_err(|e| LabError::Config(e.to_string()))?;
    let gamma = photon_number_fluctuation(&reference_model(OVERLAP_LAMBDA, 100_000))
        .map_err(|e| LabError::Numerical { lambda: OVERLAP_LAMBDA, reason: e.to_string() })?;
    let ch = ChannelParams { omega_a_shifted: 0.3, omega_b_shifted: -0.1, ..ChannelParams::from_sum_difference(EVOLVED_DELTA1, 0.0, EVOLVED_T) };
    evolve_xstate(&x, &ch, gamma).map_err(|e| LabError::Numerical { lambda: OVERLAP_LAMBDA, reason: e.to_string() })
}

/// Relative convergence demanded of the Fock-space oracles.
pub const ORACLE_TOLERANCE: f64 = 1e-6;

/// Runs every oracle case, in file order.
pub fn compute_all() -> Result<GoldenFile, LabError> {
    let mut records = Vec::new();
    let quadratic = FockTruncation::quadratic_default();
    for &l in &QUADRATIC_LAMBDAS {
        let r = gamma_quadratic_exact(&reference_model(l, 100_000), &quadratic, ORACLE_TOLERANCE)?;
        records.push(GoldenRecord {
            name: quadratic_name(l),
            value: r.value,
            value_im: None,
            cutoff: r.cutoff_used.label(),
            convergence: r.convergence_estimate,
        });
    }
    let finite = FockTruncation::finite_n_default();
    for (atoms, l) in finite_n_cases() {
        let r = gamma_finite_n(&reference_model(l, atoms), &finite, ORACLE_TOLERANCE)?;
        records.push(GoldenRecord {
            name: finite_n_name(atoms, l),
            value: r.value,
            value_im: None,
            cutoff: r.cutoff_used.label(),
            convergence: r.convergence_estimate,
        });
    }
    for &t in &OVERLAP_TIMES {
        let ch = ChannelParams::from_sum_difference(OVERLAP_DELTA1, 0.0, t);
        let r = decoherence_overlap_exact(
            &reference_model(OVERLAP_LAMBDA, 100_000),
            &ch,
            &quadratic,
            Overlap::D1,
            ORACLE_TOLERANCE,
        )?;
        records.push(GoldenRecord {
            name: overlap_name(t),
            value: r.value.re,
            value_im: Some(r.value.im),
            cutoff: r.cutoff_used.label(),
            convergence: r.convergence_estimate,
        });
    }
    let grid = MeasurementGrid::default();
    let fixed = XState::new(0.6, 0.0, 0.3).map_err(|e| LabError::Config(e.to_string()))?.density();
    for (name, rho) in [(DISCORD_STATIC_NAME, fixed), (DISCORD_EVOLVED_NAME, evolved_state()?)] {
        let b = discord_bruteforce(&rho, &grid);
        records.push(GoldenRecord {
            name: name.to_string(),
            value: b.discord,
            value_im: None,
            cutoff: "-".into(),
            convergence: if b.refined { grid.angular_tol } else { f64::INFINITY },
        });
    }
    Ok(GoldenFile { records })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let f = GoldenFile {
            records: vec![
                GoldenRecord { name: "a(x=1.0)".into(), value: 0.1, value_im: None, cutoff: "10x48".into(), convergence: 1e-15 },
                GoldenRecord { name: "b".into(), value: -2.5e-9, value_im: Some(0.25), cutoff: "-".into(), convergence: 0.0 },
            ],
        };
        let back = GoldenFile::parse(&f.to_text(), Path::new("x")).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn rejects_malformed() {
        let p = Path::new("x");
        assert!(GoldenFile::parse("a value=1 cutoff=- convergence=0\na value=2 cutoff=- convergence=0", p).is_err());
        assert!(GoldenFile::parse("a value=one cutoff=- convergence=0", p).is_err());
        assert!(GoldenFile::parse("a value=1 convergence=0", p).is_err());
        assert!(GoldenFile::parse("a value=1 cutoff=- convergence=0 extra=3", p).is_err());
        assert!(GoldenFile::parse("# only a comment\n\n", p).unwrap().records.is_empty());
    }
}
