//! Command implementations behind the `banach-mp` binary.

pub mod commands;
pub mod failure;
pub mod matrix_file;
pub mod suite;
