//! Quantum strategies for two-player games.
//!
//! Players equipped with a pair of entangled quantum coins can condition
//! their play on measurement outcomes, the way classical players condition
//! on shared random variables. This crate implements both sides of that
//! comparison for finite two-player games: complex state algebra and
//! measurement distributions, classical environments and correlated
//! equilibria, games of private information with behavioral strategies, the
//! one-parameter equilibrium search for balanced payoff structures, and the
//! worked pricing scenarios with their welfare accounting.

pub mod acceptance;
pub mod classical;
pub mod error;
pub mod lp;
pub mod private_info;
pub mod quantum;
pub mod scenarios;
pub mod schema;
pub mod search;

pub use error::{Error, Result};
