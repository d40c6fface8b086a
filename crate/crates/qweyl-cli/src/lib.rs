//! Command implementations behind the `qweyl` binary, exposed as a library
//! so integration tests can drive them without spawning processes.

pub mod commands;
pub mod latex;
pub mod reference;
pub mod report;
