//! Domain diagnostics, call-site origins and their textual rendering.
//!
//! Every model object created by a sentence is registered in an
//! [`OriginRegistry`] under the call site that created it, so a rule
//! violation found later can point back at the line the author wrote:
//!
//! ```text
//! The answer 'Sheep' is a duplicate, in file BiologyTest.java, line 16.
//! /w/BiologyTest.java:16
//! ```
//!
//! The second line is the `path:line` form that terminals and IDE output
//! windows turn into a navigational link.

use std::collections::BTreeMap;
use std::fmt;
use std::panic::Location;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Where a piece of sentence source lives. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SourceLocation {
    file: String,
    line: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    column: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocationError {
    #[error("line numbers start at 1")]
    ZeroLine,
    #[error("column numbers start at 1")]
    ZeroColumn,
}

impl SourceLocation {
    pub fn new(file: impl Into<String>, line: u32) -> Result<Self, LocationError> {
        if line == 0 {
            return Err(LocationError::ZeroLine);
        }
        Ok(Self {
            file: file.into(),
            line,
            column: None,
        })
    }

    pub fn with_column(mut self, column: u32) -> Result<Self, LocationError> {
        if column == 0 {
            return Err(LocationError::ZeroColumn);
        }
        self.column = Some(column);
        Ok(self)
    }

    /// Location of a `#[track_caller]` call site.
    pub fn from_caller(caller: &Location<'_>) -> Self {
        Self {
            file: caller.file().to_owned(),
            line: caller.line().max(1),
            column: Some(caller.column().max(1)),
        }
    }

    pub fn file(&self) -> &str {
        &self.file
    }

    pub fn line(&self) -> u32 {
        self.line
    }

    pub fn column(&self) -> Option<u32> {
        self.column
    }

    /// Final path component of `file`, accepting both `/` and `\` separators.
    pub fn basename(&self) -> &str {
        self.file.rsplit(['/', '\\']).next().unwrap_or(&self.file)
    }
}

impl fmt::Display for SourceLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.file, self.line)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

/// Machine identifiers for every rule the toolkit reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Code {
    EmptyTitle,
    ThresholdOutOfRange,
    EmptyTest,
    EmptyQuestionText,
    ZeroPoints,
    TooFewAnswers,
    NoCorrectAnswer,
    SingleChoiceMultipleCorrect,
    EmptyAnswerText,
    DuplicateAnswer,
    EmptyExpectedAnswer,
    EmptyPairing,
    EmptyPairSide,
    DuplicatePairLeft,
    DuplicatePairRight,
    DuplicateQuestion,
    OutOfSequence,
    NotFinalized,
    UnmatchedMarker,
    NestedFold,
    OverlappingFold,
    GuardModified,
    UnparsablePrefix,
    MalformedCall,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::EmptyTitle => "empty-title",
            Code::ThresholdOutOfRange => "threshold-out-of-range",
            Code::EmptyTest => "empty-test",
            Code::EmptyQuestionText => "empty-question-text",
            Code::ZeroPoints => "zero-points",
            Code::TooFewAnswers => "too-few-answers",
            Code::NoCorrectAnswer => "no-correct-answer",
            Code::SingleChoiceMultipleCorrect => "single-choice-multiple-correct",
            Code::EmptyAnswerText => "empty-answer-text",
            Code::DuplicateAnswer => "duplicate-answer",
            Code::EmptyExpectedAnswer => "empty-expected-answer",
            Code::EmptyPairing => "empty-pairing",
            Code::EmptyPairSide => "empty-pair-side",
            Code::DuplicatePairLeft => "duplicate-pair-left",
            Code::DuplicatePairRight => "duplicate-pair-right",
            Code::DuplicateQuestion => "duplicate-question",
            Code::OutOfSequence => "out-of-sequence",
            Code::NotFinalized => "not-finalized",
            Code::UnmatchedMarker => "unmatched-marker",
            Code::NestedFold => "nested-fold",
            Code::OverlappingFold => "overlapping-fold",
            Code::GuardModified => "guard-modified",
            Code::UnparsablePrefix => "unparsable-prefix",
            Code::MalformedCall => "malformed-call",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub location: Option<SourceLocation>,
}

impl Diagnostic {
    pub fn error(code: Code, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Error,
            code,
            message: message.into(),
            location: None,
        }
    }

    pub fn warning(code: Code, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Warning,
            code,
            message: message.into(),
            location: None,
        }
    }

    pub fn at(mut self, location: Option<SourceLocation>) -> Self {
        self.location = location;
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_diagnostic(self))
    }
}

pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(Diagnostic::is_error)
}

/// Renders a diagnostic in the report-stream format.
///
/// With a location the output is two lines: the message followed by
/// `, in file <basename>, line <n>.`, then `<path>:<line>` on its own line.
/// Without one it is the bare message.
pub fn format_diagnostic(diagnostic: &Diagnostic) -> String {
    match &diagnostic.location {
        Some(location) => format!(
            "{}, in file {}, line {}.\n{}:{}",
            diagnostic.message,
            location.basename(),
            location.line(),
            location.file(),
            location.line()
        ),
        None => diagnostic.message.clone(),
    }
}

/// Identity of a model object: its position in construction order, not its
/// value. Two equal answers created by different calls get different ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObjectId {
    Test,
    Question(usize),
    Answer { question: usize, answer: usize },
    Pair { question: usize, pair: usize },
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectId::Test => write!(f, "test"),
            ObjectId::Question(q) => write!(f, "question {q}"),
            ObjectId::Answer { question, answer } => write!(f, "answer {answer} of question {question}"),
            ObjectId::Pair { question, pair } => write!(f, "pair {pair} of question {question}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OriginError {
    #[error("{0} already has a registered origin")]
    AlreadyRegistered(ObjectId),
}

/// Call-site provenance for model objects.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OriginRegistry {
    entries: BTreeMap<ObjectId, SourceLocation>,
}

impl OriginRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, id: ObjectId, site: SourceLocation) -> Result<(), OriginError> {
        if self.entries.contains_key(&id) {
            return Err(OriginError::AlreadyRegistered(id));
        }
        self.entries.insert(id, site);
        Ok(())
    }

    pub fn lookup(&self, id: ObjectId) -> Option<&SourceLocation> {
        self.entries.get(&id)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ObjectId, &SourceLocation)> {
        self.entries.iter().map(|(id, loc)| (*id, loc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loc(file: &str, line: u32) -> SourceLocation {
        SourceLocation::new(file, line).unwrap()
    }

    #[test]
    fn register_then_lookup() {
        let mut registry = OriginRegistry::new();
        let a1 = ObjectId::Answer { question: 0, answer: 1 };
        registry.register(a1, loc("BiologyTest.java", 14)).unwrap();
        assert_eq!(registry.lookup(a1).map(SourceLocation::line), Some(14));
    }

    #[test]
    fn unregistered_lookup_is_absent() {
        let registry = OriginRegistry::new();
        assert!(registry.lookup(ObjectId::Test).is_none());
        assert!(registry.is_empty());
    }

    #[test]
    fn double_registration_is_rejected() {
        let mut registry = OriginRegistry::new();
        registry.register(ObjectId::Question(2), loc("a.rb", 3)).unwrap();
        let err = registry.register(ObjectId::Question(2), loc("a.rb", 9)).unwrap_err();
        assert_eq!(err, OriginError::AlreadyRegistered(ObjectId::Question(2)));
        assert_eq!(registry.lookup(ObjectId::Question(2)).unwrap().line(), 3);
    }

    #[test]
    fn equal_values_keep_distinct_origins() {
        let mut registry = OriginRegistry::new();
        let first = ObjectId::Answer { question: 0, answer: 1 };
        let second = ObjectId::Answer { question: 0, answer: 3 };
        registry.register(first, loc("BiologyTest.java", 14)).unwrap();
        registry.register(second, loc("BiologyTest.java", 16)).unwrap();
        assert_eq!(registry.lookup(second).unwrap().line(), 16);
        assert_eq!(registry.len(), 2);
    }

    #[test]
    fn rejects_zero_line_and_column() {
        assert_eq!(SourceLocation::new("x", 0), Err(LocationError::ZeroLine));
        assert_eq!(loc("x", 1).with_column(0), Err(LocationError::ZeroColumn));
    }

    #[test]
    fn duplicate_sheep_matches_report_shape() {
        let d = Diagnostic::error(Code::DuplicateAnswer, "The answer 'Sheep' is a duplicate")
            .at(Some(loc("/w/BiologyTest.java", 16)));
        let text = format_diagnostic(&d);
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("The answer 'Sheep' is a duplicate, in file BiologyTest.java, line 16.")
        );
        assert_eq!(lines.next(), Some("/w/BiologyTest.java:16"));
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn no_location_renders_message_only() {
        let d = Diagnostic::error(Code::EmptyTest, "The test has no questions");
        assert_eq!(format_diagnostic(&d), "The test has no questions");
    }

    #[test]
    fn basename_handles_both_separators() {
        assert_eq!(loc(r"C:\w\BiologyTest.java", 1).basename(), "BiologyTest.java");
        assert_eq!(loc("src/biology.rs", 1).basename(), "biology.rs");
        assert_eq!(loc("plain.rb", 1).basename(), "plain.rb");
    }

    #[test]
    fn clickable_line_present_iff_location() {
        let bare = Diagnostic::warning(Code::DuplicateQuestion, "m");
        assert!(!format_diagnostic(&bare).contains('\n'));
        let located = bare.clone().at(Some(loc("f.rb", 2)));
        assert!(format_diagnostic(&located).ends_with("\nf.rb:2"));
    }
}
