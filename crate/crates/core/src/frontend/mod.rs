//! Tensor-expression front end: symmetry definitions, expression parsing,
//! merging a monomial into one indexed object, and the two-stage
//! canonicalization pipeline.

mod defs;
mod merge;
mod parse;
mod pipeline;

use thiserror::Error;

pub use defs::{parse_definitions, Registry, TensorSymbol};
pub use merge::{g_from_configuration, merge_monomial, Commutation, MergedTensor};
pub use parse::{parse_expression, Expression, Index, IndexedFactor};
pub use pipeline::{
    canonicalize, canonicalize_merged, canonicalize_traced, render, translate_dummy_group, BaseChoice,
    CanonOptions, DummyTranslation, Trace,
};
pub(crate) use pipeline::canonicalize_merged_timed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos} near '{token}': {msg}")]
    Syntax { pos: usize, token: String, msg: String },
    #[error("unknown tensor symbol '{0}'")]
    UnknownSymbol(String),
    #[error("'{name}' has rank {expected} but got {got} indices")]
    Arity { name: String, expected: usize, got: usize },
    #[error("index '{name}' appears {count} times")]
    Repeated { name: String, count: usize },
    #[error("dummy index '{0}' must appear once up and once down when the metric is 'none'")]
    SameVariance(String),
    #[error("definitions line {line}: {msg}")]
    Definitions { line: usize, msg: String },
}

/// Natural ordering key: digit runs compare numerically, so `d2 < d10`.
pub(crate) fn natural_key(name: &str) -> Vec<(u8, u64, String)> {
    let mut out = Vec::new();
    let mut chars = name.chars().peekable();
    while let Some(&c) = chars.peek() {
        let digits = c.is_ascii_digit();
        let mut run = String::new();
        while let Some(&c) = chars.peek() {
            if c.is_ascii_digit() != digits {
                break;
            }
            run.push(c);
            chars.next();
        }
        if digits {
            out.push((1, run.parse().unwrap_or(u64::MAX), run));
        } else {
            out.push((0, 0, run));
        }
    }
    out
}
