//! Line-oriented text format for optical circuits (`.qnd` files).
//!
//! ```text
//! modes s,i
//! opa OPA1 s i g=1
//! mod s eps=0.001 delta=0.001
//! phase i phi=pi
//! opa OPA2 s i g=5
//! homodyne X_s s angle=0
//! ```

mod ast;
mod error;
mod lower;
mod parser;
mod render;

pub use ast::{AngleExpr, CircuitAst, ElementAst, ElementKind, Ident, ReadoutAst, Sign, Span};
pub use error::{ParseError, ParseErrorKind};
pub use lower::to_circuit;
pub use parser::parse;
pub use render::{format_number, render};

use crate::circuit::Circuit;
use crate::scalar::Real;

/// Parses and lowers in one step.
pub fn parse_circuit<T: Real>(text: &str) -> crate::error::Result<Circuit<T>> {
    to_circuit(&parse(text)?)
}

/// Shipped description of a built-in scheme at default parameters.
pub fn builtin_source(id: crate::schemes::SchemeId) -> &'static str {
    use crate::schemes::SchemeId as S;
    match id {
        S::Direct => include_str!("../../circuits/direct.qnd"),
        S::BeamSplit => include_str!("../../circuits/beam_split.qnd"),
        S::OpaSplit => include_str!("../../circuits/opa_split.qnd"),
        S::DenseCoding => include_str!("../../circuits/dense_coding.qnd"),
        S::Sui => include_str!("../../circuits/sui.qnd"),
        S::SuiSplit3 => include_str!("../../circuits/sui_split3.qnd"),
        S::PostDetection => include_str!("../../circuits/post_detection.qnd"),
        S::DualBeam => include_str!("../../circuits/dual_beam.qnd"),
        S::DbDc => include_str!("../../circuits/db_dc.qnd"),
    }
}
