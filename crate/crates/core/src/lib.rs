//! Reversible logic from a noisy two-probe device.
//!
//! - [`gate`]: words, permutation gates, composition and inversion.
//! - [`library`]: the CL, Toffoli, X and I gates plus small helpers.
//! - [`derivation`]: fixing ancilla lines and naming the connectives that result.
//! - [`device`]: the seeded stochastic cantilever model.
//! - [`machine`]: normalization functions that read the device as a gate.
//! - [`energy`]: Shannon entropy and Landauer bounds.
//! - [`cli`]: the `revlogic` command.

pub mod cli;
pub mod derivation;
pub mod device;
pub mod energy;
pub mod gate;
pub mod library;
pub mod machine;

pub use derivation::{derived_connectives, restrict, ConnectiveName, Fixing};
pub use device::{DeviceConfig, ProbeState};
pub use gate::{Gate, GateError, Word};
pub use library::{build, GateId};
pub use machine::{verify_conclusion, NormalizationId};
