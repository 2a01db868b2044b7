//! Support code for the `rholab` command-line tool.

pub mod commands;
pub mod demo;
pub mod expected;
pub mod report;
pub mod scenario;
