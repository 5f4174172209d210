//! A microKanren engine with a framework for symbolic constraints.
//!
//! The crate is layered:
//!
//! * [`terms`]: terms, substitutions and unification with occurs check.
//! * [`engine`]: goals, lazily interleaving streams, `call_fresh`, `conj`,
//!   `disj`, relations, `ifte`, `once` and query running.
//! * [`framework`]: constraint stores and [`ConstraintSystem`], which turns a
//!   set of relation names and violation predicates into goal constructors
//!   and a satisfiability check.
//! * [`stdlib`]: the standard constraints `=/=`, `absento`, `symbolo`,
//!   `not-pairo`, `booleano` and `listo`.
//! * [`frontend`]: an s-expression program format, its evaluator, store
//!   printing and the command-line runner.

pub mod engine;
pub mod error;
pub mod framework;
pub mod frontend;
pub mod stdlib;
pub mod terms;

pub use engine::{
    call_fresh, call_initial_state, conj, conj_all, defrel, disj, disj_all, fail, ifte, once,
    succeed, Goal, Relation, State, Stream,
};
pub use error::Error;
pub use framework::{ConstraintStore, ConstraintSystem, RelationId, StoreView, ViolationPredicate};
pub use stdlib::{standard_system, Standard};
pub use terms::{Substitution, Term, Var};
