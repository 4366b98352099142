//! Test-me! exam DSL and the editor tooling around it.
//!
//! - [`builder`]: the Function Sequence frontend that turns a sentence of
//!   calls into a [`TestModel`], recording each call site.
//! - [`model`], [`scoring`], [`codec`]: the exam model, its rules, scoring
//!   and the canonical `.testme.json` format.
//! - [`diagnostics`]: origin tracking and `file:line` error reports.
//! - [`editor`]: templates, folds, guarded sections, completion and noise
//!   analysis for host-language sentence files.
//! - [`lsp`]: the editor features served over the Language Server Protocol.
//! - [`compiler`]: the self-contained HTML test page.

pub mod biology;
pub mod builder;
pub mod codec;
pub mod compiler;
pub mod conformance;
pub mod diagnostics;
pub mod editor;
pub mod lsp;
pub mod model;
pub mod scoring;

pub use builder::{Call, CallKind, Composed, Phase, Sentence, TestBuilder};
pub use codec::{decode_model, parse_model, serialize_model, CodecError};
pub use compiler::{emit_html, CompileError, RunnerAssets};
pub use diagnostics::{format_diagnostic, Code, Diagnostic, ObjectId, OriginRegistry, Severity, SourceLocation};
pub use model::{total_points, validate_test, Answer, Pair, Question, QuestionKind, TestModel};
pub use scoring::{score, Response, ResponseSet, Score, ScoreError};
