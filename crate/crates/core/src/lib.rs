//! Desk-scale quantum-foundations toolkit.
//!
//! Builds maximally entangled states and their partner observables, checks
//! the perfect-correlation identity, proves the non-existence of
//! non-contextual value maps by exhaustive search (ray colorings and the
//! two-qubit magic square), and simulates contextual pilot-wave spin
//! measurements.
//!
//! Everything runs on dense complex matrices of dimension at most ~64;
//! ensembles and sweeps are data-parallel when the `parallel` feature is
//! enabled (the default) and fall back to plain iterators otherwise.

pub mod bohm;
pub mod entangle;
pub mod exec;
pub mod hilbert;
pub mod measure;
pub mod nogo;
pub mod report;
pub mod sampling;
pub mod stats;

pub use num_complex::Complex64;
