//! The program format, its evaluator, store printing and the command-line
//! runner.

pub mod ast;
pub mod cli;
pub mod eval;
pub mod print;
pub mod sexpr;

use thiserror::Error;

pub use ast::{parse, parse_with, Count, GoalExpr, Program, Query, RelationDef, TermExpr};
pub use eval::{eval_program, Answer, Answers, Interpreter};
pub use print::print_store;
pub use sexpr::Pos;

/// A syntax or static-checking error with its source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>) -> ParseError {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}
