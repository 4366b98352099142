//! Editor-independent customization engine: templates, folds, guarded
//! sections, completion and noise analysis over plain text documents.

pub mod completion;
pub mod document;
pub mod folds;
pub mod lexer;
pub mod noise;
pub mod profile;
pub mod sentence;
pub mod template;

pub use completion::{call_skeleton, complete, CompletionError, CompletionItem, Completions};
pub use document::{Document, DocumentError, Edit, Position, Region};
pub use folds::{check_edit, compute_folds, editable_regions, guarded_regions, EditCheck, FoldAnalysis, FoldSpec};
pub use noise::{analyze_noise, NoiseError, NoiseReport};
pub use profile::{CallSyntax, HostProfile, ProfileError};
pub use sentence::{render_call, scan_calls, validate_document, ScannedCall};
pub use template::{testme_skeleton, TemplateDef, TemplateError};
