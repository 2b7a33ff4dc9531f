//! Report schemas for the `orbimap` command-line tool.
//!
//! The binary lives in `main.rs`; this library exposes the JSON shapes it
//! prints so downstream code can parse reports with the exact schema.

pub mod reports;
