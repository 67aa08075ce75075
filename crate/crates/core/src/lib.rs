//! Sparse Pauli-basis simulation of matchgate + ZZ circuits.
//!
//! A single-qubit `Z_j` measurement is conjugated gate by gate through the
//! circuit as a sparse vector over Pauli strings, then contracted against a
//! product input state. Matchgates keep the vector inside a fixed Majorana
//! degree; each parity-preserving non-matchgate can raise the degree by two.

pub mod bounds;
pub mod builders;
pub mod circuit;
pub mod engine;
pub mod error;
pub mod gates;
pub mod observable;
pub mod oracle;
pub mod pauli;
pub mod rotation;
pub mod scalar;

pub use circuit::Circuit;
pub use engine::{EngineConfig, Mode, RankProfile};
pub use error::{Error, Result};
pub use gates::{GateClass, GateSpec, NamedKind};
pub use observable::{ProductState, SparseObservable};
pub use pauli::{Pauli, PauliKey};
pub use rotation::RotationBlocks;
pub use scalar::Real;

/// Double-precision observable.
pub type Observable = SparseObservable<f64>;
/// Single-precision observable.
pub type Observable32 = SparseObservable<f32>;
pub type Rotation = RotationBlocks<f64>;
pub type Rotation32 = RotationBlocks<f32>;
