//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by game construction, behavior algebra, witness
/// construction, and the LP solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: expected action counts {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: Vec<usize>,
        found: Vec<usize>,
    },

    #[error("player index {player} out of range for {num_players} players")]
    PlayerOutOfRange { player: usize, num_players: usize },

    #[error("action {action} out of range for player {player} ({count} actions)")]
    ActionOutOfRange {
        player: usize,
        action: usize,
        count: usize,
    },

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error(
        "cannot condition on action {action} of player {player}: marginal probability is zero"
    )]
    ZeroProbabilityCondition { player: usize, action: usize },

    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),

    #[error("profile {profile:?} is not a pure Nash equilibrium")]
    NotAPureNashEquilibrium { profile: Vec<usize> },

    #[error("profile {profile:?} is not a strict pure Nash equilibrium")]
    NotStrictPne { profile: Vec<usize> },

    #[error("the two profiles must be distinct")]
    ProfilesEqual,

    #[error("operation requires exactly {required} players, game has {found}")]
    UnsupportedPlayerCount { required: usize, found: usize },

    #[error("axiom {axiom} cannot be audited against a {kind} solution map")]
    IncompatibleAxiom { axiom: String, kind: String },

    #[error("game family produced no games")]
    EmptyFamily,

    #[error("malformed linear program: {0}")]
    MalformedProgram(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
