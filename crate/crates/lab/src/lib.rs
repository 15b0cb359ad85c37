//! Reference oracles, parameter sweeps and validation for `dicke-discord`.

pub mod config;
pub mod error;
pub mod golden;
pub mod oracle;
pub mod sweep;
pub mod validate;

pub use error::LabError;
