//! Array files, threaded sphere scans, CSV export and the `arraydir` command.

pub mod cli;
pub mod error;
pub mod export;
pub mod io;
pub mod parallel;
pub mod random;
pub mod validate;

pub use error::{AppError, AppResult};
