//! Fermionic Hawking channels and their coherent superposition.
//!
//! A black hole acts on a mode held by an observer hovering above its horizon
//! as a two-Kraus-operator amplification channel. This crate builds that
//! channel, applies it to a shared Bell pair, and compares two ways of
//! combining two such channels: a classical mixture, and a coherent
//! superposition heralded by measuring a control qubit in the `{|+>, |->}`
//! basis.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, configuration and
//! the command-line frontend live in the `hawking` companion crate.
//!
//! # Conventions
//!
//! * Matrices are dense and row-major.
//! * In a tensor product the leftmost factor is subsystem 0 and its index
//!   varies slowest. The two-party basis is therefore
//!   `|0_A 0_R>, |0_A 1_R>, |1_A 0_R>, |1_A 1_R>`, and the heralded
//!   three-party state is ordered Alice, Rob, control.
//! * Angles are radians. Entropies are in bits.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod channel;
mod error;
pub mod linop;
pub mod metrics;
pub mod protocol;
pub mod sweep;
pub mod tol;

pub use channel::{
    apply_channel, cross_term, dilation_oracle, kraus_pair, squeezing_from_geometry,
    BlackHoleGeometry, ChannelParams, KrausPair,
};
pub use error::{Error, Result};
pub use linop::{ComplexMatrix, DensityMatrix, C64};
pub use metrics::{Direction, MetricReport, SuperpositionReport};
pub use protocol::{BranchStatistics, ProtocolConfig};
pub use sweep::{Metric, SweepGrid, SweepSpec};
