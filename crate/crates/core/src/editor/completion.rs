//! Sequence-aware completion.
//!
//! The calls written before the cursor are replayed through the builder's
//! transition table; the calls legal in the resulting phase are offered as
//! `relevant`, everything else in the vocabulary as `other`.

use thiserror::Error;

use super::document::{Document, DocumentError, Position, Region};
use super::folds::compute_folds;
use super::profile::{CallSyntax, HostProfile};
use super::sentence::scan_calls;
use crate::builder::{next_valid_calls, transition, CallDescriptor, ParamType, Phase, DESCRIPTORS};
use crate::diagnostics::{Code, Diagnostic};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionItem {
    pub descriptor: &'static CallDescriptor,
    /// Call skeleton with `…` standing for each argument.
    pub insert_text: String,
    /// The same skeleton in tab-stop snippet syntax (`${1:role}`).
    pub snippet: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completions {
    pub phase: Phase,
    pub relevant: Vec<CompletionItem>,
    pub other: Vec<CompletionItem>,
    pub warning: Option<Diagnostic>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("position is inside the guarded region {0}")]
    Guarded(Region),
    #[error(transparent)]
    Document(#[from] DocumentError),
}

/// Call skeletons for `descriptor` in the host's call syntax.
pub fn call_skeleton(descriptor: &CallDescriptor, profile: &HostProfile) -> (String, String) {
    let quote = profile.quote();
    let mut plain = Vec::new();
    let mut snippet = Vec::new();
    for (i, param) in descriptor.params.iter().enumerate() {
        let stop = format!("${{{}:{}}}", i + 1, param.role);
        match param.ty {
            ParamType::Text => {
                plain.push(format!("{quote}…{quote}"));
                snippet.push(format!("{quote}{stop}{quote}"));
            }
            ParamType::Integer => {
                plain.push("…".to_owned());
                snippet.push(stop);
            }
        }
    }
    let (plain, snippet) = (plain.join(", "), snippet.join(", "));
    match profile.call_syntax {
        CallSyntax::Parenthesized => {
            let end = profile.statement_terminator.map(String::from).unwrap_or_default();
            (
                format!("{}({plain}){end}", descriptor.name),
                format!("{}({snippet}){end}", descriptor.name),
            )
        }
        CallSyntax::Bare if descriptor.params.is_empty() => (descriptor.name.to_owned(), descriptor.name.to_owned()),
        CallSyntax::Bare => (
            format!("{} {plain}", descriptor.name),
            format!("{} {snippet}", descriptor.name),
        ),
    }
}

fn item(descriptor: &'static CallDescriptor, profile: &HostProfile) -> CompletionItem {
    let (insert_text, snippet) = call_skeleton(descriptor, profile);
    CompletionItem {
        descriptor,
        insert_text,
        snippet,
    }
}

/// Phase reached by the calls written before `position`. Out-of-sequence
/// calls reset the phase to `InTest` and produce a warning.
pub fn phase_before(doc: &Document, position: Position, profile: &HostProfile) -> (Phase, Option<Diagnostic>) {
    let mut phase = Phase::Empty;
    let mut warning = None;
    for call in scan_calls(doc, profile, Some(position)) {
        phase = match transition(phase, call.kind) {
            Some(next) => next,
            None => {
                if warning.is_none() {
                    warning = Some(
                        Diagnostic::warning(
                            Code::UnparsablePrefix,
                            format!("'{}' is out of sequence; suggestions assume an open test", call.kind),
                        )
                        .at(Some(call.site(&doc.uri))),
                    );
                }
                Phase::InTest
            }
        };
    }
    (phase, warning)
}

pub fn complete(doc: &Document, position: Position, profile: &HostProfile) -> Result<Completions, CompletionError> {
    if !doc.contains(position) {
        return Err(DocumentError::OutOfBounds(position).into());
    }
    let guards = compute_folds(doc, profile).guarded_regions();
    if let Some(region) = guards.into_iter().find(|r| r.start < position && position < r.end) {
        return Err(CompletionError::Guarded(region));
    }
    let (phase, warning) = phase_before(doc, position, profile);
    let relevant: Vec<CompletionItem> = next_valid_calls(phase).into_iter().map(|d| item(d, profile)).collect();
    let mut rest: Vec<&'static CallDescriptor> = DESCRIPTORS
        .iter()
        .filter(|d| !relevant.iter().any(|r| r.descriptor.kind == d.kind))
        .collect();
    rest.sort_by_key(|d| d.name);
    Ok(Completions {
        phase,
        relevant,
        other: rest.into_iter().map(|d| item(d, profile)).collect(),
        warning,
    })
}
