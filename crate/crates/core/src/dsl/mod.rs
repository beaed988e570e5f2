//! The textual front-end: a small s-expression dialect whose forms mirror
//! the pattern functions (`defontology`, `defclass`, `defoproperty`,
//! `deftier`, `defpartition`, `as-facet`, `defgem`).
//!
//! Evaluation is strictly sequential: a symbol must be defined by an
//! earlier form before it is referenced.

mod eval;
mod parse;

pub use eval::{
    compile_str, eval_program, evaluate, expand_trace, DslError, DslErrorKind, EvalEnv, Evaluation,
    TraceEntry,
};
pub use parse::{parse, Form, FormKind, ParseError, ParseErrorKind, Pos};
