//! Quantum teleportation between an inertial sender and a uniformly
//! accelerated receiver, computed in a truncated Fock space.
//!
//! The receiver's half of the shared Bell pair lives in a single Rindler
//! mode. Its Minkowski vacuum and one-particle states are two-mode squeezed
//! expansions over Rindler regions I and II ([`rindler`]); the receiver only
//! sees region I, so every state it holds is a partial trace. [`teleport`]
//! runs the protocol (closed form and full state-vector pipeline) and
//! [`entropy`] reports von Neumann entropies and information gain.
//!
//! ```
//! use unruh_core::teleport::{fidelity_closed_form, outcome_coefficients, rob_state_analytic};
//! use unruh_core::{auto_cutoff, info_gain, InputState, Outcome, SqueezeParam};
//!
//! let p = SqueezeParam::from_r(0.8)?;
//! let s = InputState::from_angle(0.3);
//! let o = outcome_coefficients(Outcome::ALL[1], &s);
//! let rob = rob_state_analytic(&o, &p, auto_cutoff(&p))?;
//! let f = rob.rho.fidelity_pure(&o.target(rob.cutoff)?)?;
//! assert!((f - fidelity_closed_form(&o, &p)).abs() < 1e-12);
//!
//! let report = info_gain(&p, auto_cutoff(&p))?;
//! assert!(report.gain > 0.0 && report.gain < 1.0);
//! # Ok::<(), unruh_core::Error>(())
//! ```

pub mod constants;
pub mod eigen;
pub mod entropy;
pub mod error;
pub mod fock;
pub mod rindler;
pub mod teleport;

/// Library version recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use entropy::{info_gain, two_state_model_gain, von_neumann_entropy, EntropyReport};
pub use error::{Error, Result};
pub use fock::{DensityOp, FockKet, Ladder, ModeSpec, Tolerances};
pub use rindler::{auto_cutoff, SqueezeParam, TruncatedState, WorldlineEvent};
pub use teleport::{InputState, Outcome, OutcomeCoeffs, Provenance, RobState};
