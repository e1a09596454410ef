//! Toolkit for particle methods treated as abstract machines.
//!
//! The crate provides:
//!
//! - a generic execution engine for particle methods ([`engine`]), plus a
//!   literal nested-loop transcription of the same semantics for
//!   differential testing ([`nested_loop`]);
//! - deterministic one-tape Turing machines ([`turing`]) and two compilers
//!   from machines to restricted particle methods: one with index-addressed
//!   cells ([`t1`]) and one with constant-size particles and neighbor-only
//!   marker passing ([`t2`]), each with translation maps and lock-step
//!   co-simulation checks;
//! - a restriction checker that verifies the equational properties those
//!   constructions rely on, by exhaustive enumeration or seeded sampling
//!   ([`check`]);
//! - a halting decider for finite-state, non-producing particle methods
//!   ([`halt`]);
//! - machine file parsing, trace rendering, and a command-line front end
//!   ([`textio`], [`cli`]).

pub mod check;
pub mod cli;
pub mod cosim;
pub mod engine;
pub mod fixtures;
pub mod halt;
pub mod nested_loop;
pub mod t1;
pub mod t2;
pub mod table;
pub mod textio;
pub mod turing;

pub use engine::{ParticleMethod, PmState};
pub use turing::{Configuration, TuringMachine};
