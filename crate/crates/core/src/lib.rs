//! Exact verification of state-independent contextuality for identical
//! bosonic and fermionic qudits.
//!
//! The crate rebuilds, in exact integer and rational arithmetic, every
//! object needed to show that a fixed set of yes-no tests on identical
//! particles violates a noncontextuality inequality for *every* state:
//!
//! - [`symmetrizer`]: dimensions of the symmetric and antisymmetric
//!   subspaces, scenario classification, explicit subspace bases and the
//!   permutation action used to verify them.
//! - [`kssets`]: the Kochen-Specker sets S4, S6 (symmetric two-qutrit space)
//!   and A3 (antisymmetric two-qutrit space), plus a small text format.
//! - [`frames`]: contexts (complete orthogonal frames) and the KS colouring
//!   decision.
//! - [`inequality`]: the 17-triad inequality, its noncontextual bound and
//!   its exact, state-independent quantum value.
//! - [`exactvec`]: canonical integer rays and rational matrices underneath.
//!
//! [`commands`] and [`reproduce`] tie these together for the `sic` binary
//! and the runnable examples.
//!
//! ```
//! use sic_core::{frames, inequality, kssets};
//!
//! let a3 = kssets::build_a3();
//! let contexts = frames::enumerate_frames(&a3);
//! assert_eq!(contexts.len(), 17);
//! let bound = inequality::noncontextual_bound(&contexts).unwrap();
//! assert_eq!(bound.value, 17);
//! ```

pub mod commands;
pub mod exactvec;
pub mod frames;
pub mod inequality;
pub mod kssets;
pub mod report;
pub mod reproduce;
pub mod symmetrizer;

pub use exactvec::{canonicalize, Direction, RationalMatrix, RationalVector};
pub use frames::{ColorabilityResult, Frame};
pub use inequality::{Assignment, BetaInequality, QuantumState, Sign};
pub use kssets::{BuiltinSet, VectorSet};
pub use symmetrizer::{Scenario, ScenarioClass, Statistics, SubspaceBasis};
