//! Deterministic multi-agent simulator and library for distributed spectral
//! shape classification.
//!
//! A swarm of communication-limited agents, placed in a bounded 2-D arena,
//! estimates the second eigenvalue of its communication-graph Laplacian by
//! running synchronized diffusion sessions, fitting the exponential decay of
//! per-agent states, gossiping the estimates to a consensus value, and
//! classifying the arena shape with a nearest-centroid rule.
//!
//! The crate is organized around five layers:
//!
//! * [`geometry`] — the seven arena shapes, area normalization, containment
//!   and placement utilities.
//! * [`spectral`] — the exact ground-truth oracle: communication graphs,
//!   Laplacian spectra, Fiedler partitions, connectivity and Cheeger bounds.
//! * [`protocol`] — the per-agent state machine: handshake, diffusion,
//!   decay-slope estimation with a divergence guard, gossip averaging and
//!   nearest-centroid classification.
//! * [`sim`] — the deterministic discrete-time engine: kilotick clock, stage
//!   scheduler, run-and-tumble motion, lossy range-limited broadcast channel.
//! * [`experiments`] — centroid generation, classification campaigns with
//!   confusion matrices, (N, σ) regime sweeps and dispersion-mode studies.
//!
//! Every run is a pure function of its configuration (including the seed):
//! identical inputs produce bit-identical results, in single-threaded and
//! parallel execution alike.
//!
//! See the crate's `examples/` directory for one runnable program per major
//! capability, and the `swarmlap` binary for a file-driven interface.

pub mod cli;
pub mod experiments;
pub mod geometry;
pub mod protocol;
pub mod sim;
pub mod spectral;

pub use geometry::{Arena, Point, ShapeKind};
pub use protocol::{CentroidTable, LedColor, ProtocolParams};
pub use sim::{RunResult, SimConfig};
pub use spectral::CommGraph;

/// Mixes a base seed with stream tags into an independent 64-bit seed.
///
/// Used everywhere a family of runs (per shape, per cell, per run index)
/// must draw reproducible, order-independent random streams from one base
/// seed. SplitMix64 finalizer applied per tag.
pub fn derive_seed(base: u64, tags: &[u64]) -> u64 {
    let mut z = base;
    for &tag in tags {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(tag);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
    }
    z
}
