//! Variance-aware optimistic online learning under heavy-tailed rewards.
//!
//! The crate implements two agents built around per-observation adaptive
//! pseudo-Huber regression:
//!
//! - [`adaoful::AdaOful`] — an optimistic linear-bandit agent whose regret
//!   scales with the observed conditional variances rather than with raw
//!   moments, so a single huge outlier cannot drag the estimate around.
//! - [`vara::Vara`] — an episodic linear-MDP agent that layers reward,
//!   squared-reward and transition regression on top of the same robust
//!   estimator, with rare-switching monotone optimistic/pessimistic value
//!   functions.
//!
//! Supporting machinery: the pseudo-Huber scalar kernel ([`robust_loss`]),
//! incremental SPD precision matrices with Sherman–Morrison inverses
//! ([`precision`]), an accelerated projected-gradient solver over Euclidean
//! balls ([`solver`]), synthetic heavy-tailed bandit environments
//! ([`bandit_env`]), ground-truth linear MDP instances with exact
//! dynamic-programming oracles ([`mdp_env`]), least-squares and truncation
//! baselines ([`baselines`]), and seeded parallel experiment fan-out
//! ([`runner`]).
//!
//! Everything is deterministic given a seed: randomness flows through named
//! counter-based streams (see [`rng`]), and independent seeds may run in
//! parallel (enabled by the default `parallel` feature).

pub mod adaoful;
pub mod bandit_env;
pub mod baselines;
pub mod error;
pub mod mdp_env;
pub mod precision;
pub mod rng;
pub mod robust_loss;
pub mod runner;
pub mod solver;
pub mod vara;

pub use error::{Error, Result};
