//! Spacer-qubit error avoidance for registers with always-on pair interaction.
//!
//! Qubits on a 1D grid interact all the time through a diagonal, data-dependent
//! coupling that decays as a power of distance. Interleaving every logical
//! qubit with `m − 1` idle spacer qubits in `|0⟩` pushes data qubits `m` sites
//! apart, which cuts the entangling coupling by `m³` at the cost of `m×` more
//! qubits and at most `(2m − 1)×` more gate steps.
//!
//! The crate provides
//! - the pair interaction model and its coupling law ([`interaction`]),
//! - the spacer encoding compiler pass ([`encoder`]) and circuit file format ([`format`]),
//! - an exact dense simulator plus a compressed data-only engine ([`simulator`]),
//! - dispersion/quality formulas, sweeps and power-law fits ([`analysis`], [`sweep`]).
//!
//! Numerics are generic over [`Scalar`] (`f32` or `f64`); the `*64` aliases
//! below fix the double-precision instantiation used by the CLI.

// `!(x > 0)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod basis;
pub mod circuit;
pub mod encoder;
pub mod error;
pub mod format;
pub mod gates;
pub mod interaction;
pub mod scalar;
pub mod simulator;
pub mod state;
pub mod sweep;

pub use basis::{BasisState, MAX_QUBITS};
pub use circuit::{Encoding, LogicalCircuit, LogicalGate, PhysicalCircuit, PhysicalGate};
pub use encoder::{EncodingParams, ResourceReport};
pub use error::{Error, Result};
pub use gates::{Mat2, Mat4, Matrix};
pub use interaction::{CouplingLaw, InteractionParams, PairHamiltonian, RegisterLayout};
pub use scalar::{Complex, Scalar};
pub use simulator::{ErrorModel, ErrorSchedule, RunResult, SolutionSet};
pub use state::StateVector;

pub type StateVector64 = StateVector<f64>;
pub type StateVector32 = StateVector<f32>;
pub type LogicalCircuit64 = LogicalCircuit<f64>;
pub type PhysicalCircuit64 = PhysicalCircuit<f64>;
pub type ErrorModel64 = ErrorModel<f64>;
pub type CouplingLaw64 = CouplingLaw<f64>;
pub type Complex64 = Complex<f64>;
pub type QualityCurve64 = analysis::QualityCurve<f64>;
pub type SweepConfig64 = sweep::SweepConfig<f64>;
