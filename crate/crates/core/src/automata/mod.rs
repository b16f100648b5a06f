//! Finite automata, the pushdown model with a bottom marker, and unary
//! eventually-periodic sets.

pub mod dfa;
pub mod dot;
pub mod dpda;
pub mod nfa;
pub mod unary;

pub use dfa::{Dfa, DfaFile};
pub use dot::{dfa_dot, dpda_dot, DpdaRender};
pub use dpda::{Acceptance, Dpda, DpdaBuilder, DpdaFile, Id, Stack, StackSym, StepOutcome};
pub use nfa::{nfa_concat_union, Expr, Nfa};
pub use unary::{unary_fit, UnaryEventuallyPeriodicSet};
