use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A parameter violates its domain (name of the offending field).
    InvalidParameter(&'static str),
    /// `λ` sits on the critical coupling, where the soft mode is gapless.
    CriticalPoint { lambda: f64, lambda_c: f64 },
    /// The mapped cavity frequency `ω` is not positive.
    NonPositiveFrequency(f64),
    /// A qubit is resonant with the cavity, so `g²/Δ` is undefined.
    ZeroDetuning,
    /// The Bell-diagonal parameters do not describe a positive state.
    InvalidState { c1: f64, c2: f64, c3: f64 },
    /// A single-qubit marginal is not maximally mixed.
    Marginal { deviation: f64 },
    /// Entries outside the diagonal and anti-diagonal are nonzero.
    NotXState { deviation: f64 },
    /// The amplification rate is undefined because `D(0) = 0`.
    ZeroInitialDiscord(f64),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(name) => write!(f, "invalid parameter `{name}`"),
            Error::CriticalPoint { lambda, lambda_c } => write!(
                f,
                "coupling {lambda} MHz is at the critical point {lambda_c} MHz"
            ),
            Error::NonPositiveFrequency(w) => {
                write!(f, "effective cavity frequency {w} MHz is not positive")
            }
            Error::ZeroDetuning => write!(f, "qubit is resonant with the cavity"),
            Error::InvalidState { c1, c2, c3 } => {
                write!(f, "({c1}, {c2}, {c3}) is not a valid Bell-diagonal state")
            }
            Error::Marginal { deviation } => write!(
                f,
                "single-qubit marginal deviates from I/2 by {deviation:e}"
            ),
            Error::NotXState { deviation } => {
                write!(f, "density matrix is not X-shaped (off-X entry {deviation:e})")
            }
            Error::ZeroInitialDiscord(d) => {
                write!(f, "initial discord {d:e} is zero, amplification undefined")
            }
        }
    }
}

impl core::error::Error for Error {}
