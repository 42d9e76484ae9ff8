//! Statevector simulator for a cyclic quantum Turing machine.
//!
//! A ring of M memory pseudo-spins is sequentially coupled to one head spin
//! by pulsed unitaries: each cycle alternates a local head rotation with a
//! zero-controlled pi-pulse onto the next memory cell. The crate evolves the
//! full 2^(M+1)-dimensional statevector exactly and cross-checks it against
//! closed-form correlation predictions, periodicity rules, the decision-tree
//! ensemble equivalence ("quantum parallelism") and measurement-postponement
//! identities.
//!
//! Module map:
//! - [`statespace`]: product Hilbert space, single-index encoding, reduced
//!   one-subsystem descriptions;
//! - [`clusterops`]: SU(2) generators, cluster operators Q, expectation
//!   values K, operator coefficients and unitary transform entries;
//! - [`gates`]: the head rotation, the conditioned pi-pulse and projective
//!   collapse;
//! - [`machine`]: the cycle sequencer, pulse schedule and period detection;
//! - [`analytic`]: closed-form end-of-cycle predictions (the linear-in-M
//!   fast path) and the web-of-correlations identity;
//! - [`histories`]: the 2^M decision-tree ensemble, tape readout and
//!   measurement postponement;
//! - [`records`], [`config`], [`verify`]: serialization, configuration and
//!   the differential verification suite behind the CLI.

pub mod analytic;
pub mod clusterops;
pub mod config;
pub mod error;
pub mod gates;
pub mod histories;
pub mod machine;
pub mod records;
pub mod statespace;
pub mod verify;

pub use error::{Error, Result};
