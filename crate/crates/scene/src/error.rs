use harmonica::GeomError;
use thiserror::Error;

use crate::ast::{Kind, Pos};

/// Parse and static-check failures. Every variant carries a 1-based position
/// inside the offending token.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SceneError {
    #[error("{pos}: syntax error: found {found}, expected {}", expected.join(" or "))]
    Syntax { pos: Pos, found: String, expected: Vec<String> },
    #[error("{pos}: unknown identifier `{name}`")]
    UnknownIdentifier { pos: Pos, name: String },
    #[error("{pos}: `{name}` is a {found}, expected a {expected}")]
    TypeMismatch { pos: Pos, name: String, expected: Kind, found: Kind },
    #[error("{pos}: `{name}` is already declared at {first}")]
    Redeclaration { pos: Pos, name: String, first: Pos },
}

impl SceneError {
    pub fn pos(&self) -> Pos {
        match self {
            SceneError::Syntax { pos, .. }
            | SceneError::UnknownIdentifier { pos, .. }
            | SceneError::TypeMismatch { pos, .. }
            | SceneError::Redeclaration { pos, .. } => *pos,
        }
    }
}

/// A construction failed while evaluating a declaration.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("{pos}: cannot construct `{name}`: {source}")]
    Construction { pos: Pos, name: String, source: GeomError },
    #[error("{pos}: decimal literal in a scene evaluated with the exact backend")]
    DecimalInExactScene { pos: Pos },
}

impl EvalError {
    pub fn pos(&self) -> Pos {
        match self {
            EvalError::Construction { pos, .. } | EvalError::DecimalInExactScene { pos } => *pos,
        }
    }
}
