//! Command line front end and HTTP service for the `toric-core` kernel.

pub mod cli;
pub mod server;

pub use cli::run;
