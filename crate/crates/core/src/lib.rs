//! Density matrices, Kraus channels, Bloch-sphere maps and diagrams of
//! states for registers of up to ten qubits.

pub mod angle;
pub mod bloch;
pub mod channels;
pub mod cli;
pub mod composite;
pub mod diagram;
pub mod error;
pub mod kraus;
pub mod linalg;
pub mod matrix;
pub mod purify;
pub mod sample;
pub mod state;

pub use error::{Error, Result};

/// Largest register any operation accepts (1024-line diagrams).
pub const MAX_QUBITS: usize = 10;
/// Default tolerance for algebraic identities (trace, Hermiticity, unitarity).
pub const TOL_ALGEBRAIC: f64 = 1e-12;
/// Default tolerance for spectral results.
pub const TOL_SPECTRAL: f64 = 1e-10;
