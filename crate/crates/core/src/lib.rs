//! # qur-shadows
//!
//! A desk-scale simulator for coherence-based quantum uncertainty relations
//! (QURs) on a single qubit, with state purity estimated by the classical
//! shadow algorithm instead of full tomography.
//!
//! The crate is split into four layers:
//!
//! - [`statekit`]: exact qubit algebra. The `ρ(τ) = τ|+⟩⟨+| + (1−τ)I/2` state
//!   family, measurement bases `J(θ) = cosθ·Z + sinθ·X`, Born probabilities,
//!   entropies, purity, overlaps and the optical preparation chain.
//! - [`shadows`]: seeded Monte Carlo sampling of random Pauli-basis snapshots,
//!   the `3|k⟩⟨k| − I` snapshot inversion, the pairwise U-statistic purity
//!   estimator and a linear-inversion tomography baseline.
//! - [`coherence_bounds`]: relative-entropy, l1-norm and formation coherence
//!   and the six lower bounds they are tested against.
//! - [`harness`]: experiment orchestration, CSV/JSON/SVG emission and the CLI.
//!
//! All entropies are in bits.

#![forbid(unsafe_code)]

pub mod coherence_bounds;
pub mod harness;
pub mod shadows;
pub mod statekit;

pub use coherence_bounds::{BoundError, BoundInputs, BoundKind, QurReport};
pub use shadows::{CountsTable, ShadowError, ShadowRun, Snapshot, SnapshotMatrix};
pub use statekit::{Hermitian2, MeasBasis, Pauli, QubitState, SpectralDecomp, StateError};
