//! Simple games: weightedness, certificates of non-weightedness, dimension
//! bounds and Boolean representations, all with exact rational arithmetic.

pub mod boolean;
pub mod certificates;
pub mod coalition;
pub mod desirability;
pub mod dimension;
pub mod error;
pub mod game;
pub mod hierarchical;
pub mod io;
pub mod lpsep;
pub mod report;
pub mod repro;
pub mod simplex;

pub use coalition::Coalition;
pub use error::{Error, Result};
pub use game::SimpleGame;
