//! Construction, circuit realization, simulation, and information metrics of
//! arbitrary single-qubit quantum channels.
//!
//! A channel is described by four Kraus operators drawn from a five-parameter
//! family (a convex combination of two two-Kraus "quasiextreme" maps). The
//! crate rewrites those Kraus operators as linear combinations of the
//! unitaries {I, Z, X, ZX}, realizes the combination as a two-ancilla
//! controlled circuit, simulates it exactly or with finite shots, compiles it
//! to the single-qubit + CNOT basis, exports OpenQASM 2.0, and evaluates
//! entropy, fidelity, coherent information, and one-shot quantum capacity.

pub mod channel;
pub mod circuit;
pub mod compile;
pub mod error;
pub mod lcu;
pub mod matrix;
pub mod metrics;
pub mod qasm;
pub mod sampling;
pub mod testkit;

pub use channel::{ChannelSpec, QubitChannel, TransferMatrix, UniversalParams};
pub use circuit::{BranchOutcome, Circuit, Gate, GateKind, QubitRole};
pub use error::{Error, Result};
pub use lcu::{FourUnitaryDecomposition, LcuPlan};
pub use matrix::{Complex64, ComplexMatrix, StateVector};
pub use metrics::CapacityResult;
