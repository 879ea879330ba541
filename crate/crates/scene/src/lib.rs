//! Scene files (`.hgeo`): points, lines and polygons declared by coordinates
//! or by construction, followed by assertions about them.
//!
//! ```
//! use harmonica::suite::Backend;
//! use harmonica_scene::{evaluate, parse};
//!
//! let scene = parse("
//!     point A = (0, 0)
//!     point B = (2, 0)
//!     point X = (1, 0)
//!     point Y = conjugate(A, B; X)
//!     assert harmonic(A, B; X, Y)
//! ").unwrap();
//! assert!(evaluate(&scene, Backend::Exact).unwrap().report.passed);
//! ```

pub mod ast;
pub mod error;
pub mod eval;
pub mod export;
pub mod format;
pub mod lexer;
pub mod parser;
pub mod sample;

pub use ast::{Kind, Number, OrderSpec, PointExpr, LineExpr, Pos, Predicate, Product, Scene, Statement};
pub use error::{EvalError, SceneError};
pub use eval::{evaluate, evaluate_with, Evaluation, Figure, SceneReport};
pub use format::format;
pub use parser::parse;
