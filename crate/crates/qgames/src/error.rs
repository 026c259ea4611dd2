use thiserror::Error;

/// Errors produced by construction and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("state amplitudes must not all be zero")]
    ZeroState,

    #[error("not a special unitary: |p|^2 + |q|^2 = {norm_sqr}")]
    NotUnitary { norm_sqr: f64 },

    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    #[error("invalid probability vector: {reason}")]
    BadDistribution { reason: String },

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("player {player} variable index {index} outside environment (has {len} variables)")]
    VariableOutsideEnvironment {
        player: usize,
        index: usize,
        len: usize,
    },

    #[error("payoff structure is not balanced")]
    Unbalanced,

    #[error("strategy sets must be binary for quantum play, got {got}")]
    StrategyArity { got: usize },

    #[error("linear program solver failed: {0}")]
    Solver(String),

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("unknown scenario `{0}`; expected `cats_dogs` or `airline`")]
    UnknownScenario(String),

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
