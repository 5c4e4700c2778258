//! Library backing the `casimir` command-line tool.

pub mod config;
pub mod figures;
pub mod output;
pub mod validate;
