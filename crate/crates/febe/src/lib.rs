//! Simulation of the quantum interaction between a modulated free-electron
//! wave packet and a two-level system.
//!
//! The library covers the full chain from the electron--atom coupling
//! coefficient through PINEM-style wave-function modulation, second-order
//! scattering (atom perturbation, EELS spectrum change, energy bookkeeping),
//! two-atom entanglement by momentum post-selection, and the driven dynamics
//! of a two-level system under a dilute electron beam.
//!
//! All internal quantities are SI; unit conversion from lab units (keV, nm,
//! ns, mA) is the caller's responsibility and is done in one place by the
//! `febe` CLI.

pub mod beam;
pub mod bessel;
pub mod constants;
pub mod entanglement;
pub mod error;
pub mod kinematics;
pub mod linalg;
pub mod scattering;
pub mod wavepacket;

pub use error::{Error, Result};

pub type Complex = num_complex::Complex64;
