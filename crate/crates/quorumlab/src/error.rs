use thiserror::Error;

/// Errors produced by game construction and analysis operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    /// A coalition or matrix does not match the game's player count.
    #[error("player-count mismatch: expected {expected}, got {got}")]
    WidthMismatch { expected: u32, got: u32 },

    /// An exhaustive operation was asked to enumerate more players than the
    /// configured cap allows.
    #[error("{players} players exceeds the enumeration cap of {cap} (raise the cap to opt in)")]
    CapacityExceeded { players: u32, cap: u32 },

    /// A winning set violates the simple-game axioms.
    #[error("invalid game: {0}")]
    InvalidGame(String),

    /// A parameter is outside the operation's domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A named catalogue entry does not exist.
    #[error("unknown coalition name {name:?} (for chamber size n={n})")]
    UnknownCoalition { name: String, n: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
