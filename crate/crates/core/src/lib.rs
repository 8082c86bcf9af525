//! Exact solver and experimentation workbench for the (s,d)-spy game on
//! finite graphs.
//!
//! A spy moving up to `s` edges per round tries to escape to distance
//! greater than `d` from a team of `k` guards who each move up to one edge
//! per round. This crate computes exact winners by retrograde analysis
//! ([`solver`]), evaluates the closed-form guard numbers known for paths,
//! unions, joins, spiders, and graph products ([`formulas`]), decomposes
//! graphs with few induced four-vertex paths to obtain guard numbers by
//! structure ([`primeval`]), builds the set-cover gadget graphs that make
//! the guard problem hard ([`reduction`]), and plays out strategies move by
//! move ([`strategy`]).

#![forbid(unsafe_code)]

pub mod census;
pub mod error;
pub mod expr;
pub mod formulas;
pub mod game;
pub mod graph;
pub mod primeval;
pub mod reduction;
pub mod solver;
pub mod strategy;

pub use error::{Error, Result};
