use thiserror::Error;

use crate::coalition::MAX_PLAYERS;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("player {player} out of range for a game on {n} players")]
    PlayerOutOfRange { player: usize, n: usize },

    #[error("{n} players exceeds the cap of {cap}")]
    TooManyPlayers { n: usize, cap: usize },

    /// The desirability relation is not total; `i` and `j` are incomparable.
    #[error("game is not complete: players {i} and {j} are incomparable")]
    NotComplete { i: usize, j: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_player_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::TooManyPlayers { n, cap })
    } else {
        Ok(())
    }
}

pub(crate) fn check_players(n: usize) -> Result<()> {
    check_player_cap(n, MAX_PLAYERS)
}
