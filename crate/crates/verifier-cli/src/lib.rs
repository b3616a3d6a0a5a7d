//! Instance files in, reports and exit codes out.

pub mod error;
pub mod instance;
pub mod run;
pub mod selftest;
pub mod table;

pub use error::{RunError, Status};
pub use instance::{InstanceSpec, Mode};
pub use run::{run, Outcome, RunOptions, RunReport};
