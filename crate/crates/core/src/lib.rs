//! Influence-map hero agent for a deterministic single-lane MOBA simulator,
//! with the experiment harness used to evaluate it.
//!
//! The crate is organised bottom-up:
//!
//! - [`grid`]: the uniform cell grid, best-cell search and heatmap export.
//! - [`influence`]: per-feature influence equations and the layered composer.
//! - [`sim`]: the fixed-timestep lane simulation and its replay log.
//! - [`agent`]: navigation, target selection and the orbwalker.
//! - [`config`]: the match configuration document.
//! - [`experiments`]: match runner, suites, ablations and canned scenarios.
//! - [`cli`]: the `lanecraft` command line.

pub mod agent;
pub mod cli;
pub mod config;
pub mod experiments;
pub mod grid;
pub mod influence;
pub mod sim;
