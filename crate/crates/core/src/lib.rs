//! Thermodynamic-limit Dicke model statics and the two-qubit discord they
//! drive.
//!
//! A Bose-Einstein condensate in an optical cavity realizes the Dicke model
//! `H = ω a†a + ω₀ J_z + (λ/√N)(a + a†)(J₊ + J₋)`. Two far-detuned atomic
//! qubits crossing the cavity see it as a pure dephasing environment whose
//! strength is set by the cavity photon-number fluctuation `γ` of the
//! Dicke ground state. This crate provides
//!
//! * [`spectrum`]: phase classification, polariton frequencies, Bogoliubov
//!   coefficients and `γ` in the normal and super-radiant phases,
//! * [`channel`]: dispersive shifts, decoherence factors and the evolved
//!   Bell-diagonal (X) density matrix,
//! * [`discord`]: mutual information, classical correlation, quantum discord
//!   and the discord amplification rate.
//!
//! Everything is a pure function of plain values; the crate is `no_std` and
//! does not allocate. Frequencies are in MHz (ħ = 1), times in µs.
#![no_std]

#[cfg(test)]
extern crate std;

pub mod channel;
pub mod discord;
pub mod error;
pub mod spectrum;

pub use channel::{
    decoherence_factors, dispersive_shift, evolve_xstate, ChannelParams, DecoherenceFactors,
    DispersiveShift, QubitParams, TwoQubitDensity, XState,
};
pub use discord::{
    amplification_rate, classical_correlation, mutual_information, quantum_discord,
    CorrelationReport,
};
pub use error::{Error, Result};
pub use spectrum::{
    classify_phase, critical_coupling, model_to_pump_rabi, photon_number_fluctuation,
    photon_number_fluctuation_with, pump_to_model, solve, solve_normal, solve_superradiant,
    BogoliubovSolution, DickeParams, FluctuationVariant, Phase, PumpParams,
};

pub use num_complex::Complex64;
