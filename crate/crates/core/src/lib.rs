//! Turing machines seen as symbolic dynamical systems.
//!
//! The crate simulates one-head machines in three views (moving head `T`,
//! marked tape `T_H`, moving tape `T_T`), enumerates the languages of the
//! trace subshifts `S_T` and `S_H` by exhaustive search, analyses head
//! movement (cycles, zigzags, n-cycles, preperiodicity, window stability)
//! and builds window DFAs, one-way-stack DPDAs and their assemblies as
//! recognizers for those languages.

pub mod automata;
pub mod error;
pub mod head;
pub mod machine;
pub mod sh;
pub mod st;
pub mod tape;
pub mod trace;

pub use error::{Error, Result};
pub use machine::{fixture, Action, Fixture, Move, State, Symbol, TuringMachine};
pub use tape::{Cell, Configuration, Head, MarkedTape, Tape, TapeStatePair};
