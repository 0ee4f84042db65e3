//! Expression language: AST, parser, and forward-mode jet evaluation.

pub mod ast;
pub mod eval;
pub mod jet;
pub mod parser;

pub use ast::{ScalarExpr, Var, VectorExpr};
pub use eval::{eval_jet, eval_vector_jet, EvalError};
pub use jet::{Jet, JetVec3};
pub use parser::{parse_curve, parse_scalar, parse_scene, parse_vector, ParseError};
