//! Canonical `.testme.json` interchange format.
//!
//! Keys are written in a fixed order: `title`, `pass_threshold_percent`,
//! `questions`, and per question `kind`, `text`, `points`, then the variant
//! payload (`answers`, `expected` or `pairs`).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagnostics::{has_errors, Diagnostic, OriginRegistry};
use crate::model::{validate_test, Answer, Pair, Question, QuestionKind, TestModel};

pub const MODEL_EXTENSION: &str = ".testme.json";

const KNOWN_KINDS: [&str; 4] = ["multiple_choice", "single_choice", "open_answer", "pairing"];

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("malformed model document: {0}")]
    Malformed(String),
    #[error("unknown question kind '{kind}' (question {index})")]
    UnknownVariant { index: usize, kind: String },
    #[error("model violates its invariants: {}", .0.first().map(|d| d.message.as_str()).unwrap_or("?"))]
    InvariantViolation(Vec<Diagnostic>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireModel {
    title: String,
    pass_threshold_percent: u32,
    questions: Vec<WireQuestion>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum WireQuestion {
    MultipleChoice {
        text: String,
        points: u32,
        answers: Vec<WireAnswer>,
    },
    SingleChoice {
        text: String,
        points: u32,
        answers: Vec<WireAnswer>,
    },
    OpenAnswer {
        text: String,
        points: u32,
        expected: String,
    },
    Pairing {
        text: String,
        points: u32,
        pairs: Vec<WirePair>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireAnswer {
    text: String,
    correct: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WirePair {
    left: String,
    right: String,
}

impl From<&TestModel> for WireModel {
    fn from(model: &TestModel) -> Self {
        let answers = |answers: &[Answer]| {
            answers
                .iter()
                .map(|a| WireAnswer {
                    text: a.text.clone(),
                    correct: a.correct,
                })
                .collect()
        };
        let questions = model
            .questions
            .iter()
            .map(|q| {
                let (text, points) = (q.text.clone(), q.points);
                match &q.kind {
                    QuestionKind::MultipleChoice { answers: a } => WireQuestion::MultipleChoice {
                        text,
                        points,
                        answers: answers(a),
                    },
                    QuestionKind::SingleChoice { answers: a } => WireQuestion::SingleChoice {
                        text,
                        points,
                        answers: answers(a),
                    },
                    QuestionKind::OpenAnswer { expected } => WireQuestion::OpenAnswer {
                        text,
                        points,
                        expected: expected.clone(),
                    },
                    QuestionKind::Pairing { pairs } => WireQuestion::Pairing {
                        text,
                        points,
                        pairs: pairs
                            .iter()
                            .map(|p| WirePair {
                                left: p.left.clone(),
                                right: p.right.clone(),
                            })
                            .collect(),
                    },
                }
            })
            .collect();
        WireModel {
            title: model.title.clone(),
            pass_threshold_percent: model.pass_threshold_percent,
            questions,
        }
    }
}

impl From<WireModel> for TestModel {
    fn from(wire: WireModel) -> Self {
        let answers = |answers: Vec<WireAnswer>| {
            answers
                .into_iter()
                .map(|a| Answer {
                    text: a.text,
                    correct: a.correct,
                })
                .collect()
        };
        let questions = wire
            .questions
            .into_iter()
            .map(|q| match q {
                WireQuestion::MultipleChoice {
                    text,
                    points,
                    answers: a,
                } => Question {
                    text,
                    points,
                    kind: QuestionKind::MultipleChoice { answers: answers(a) },
                },
                WireQuestion::SingleChoice {
                    text,
                    points,
                    answers: a,
                } => Question {
                    text,
                    points,
                    kind: QuestionKind::SingleChoice { answers: answers(a) },
                },
                WireQuestion::OpenAnswer { text, points, expected } => Question {
                    text,
                    points,
                    kind: QuestionKind::OpenAnswer { expected },
                },
                WireQuestion::Pairing { text, points, pairs } => Question {
                    text,
                    points,
                    kind: QuestionKind::Pairing {
                        pairs: pairs.into_iter().map(|p| Pair::new(p.left, p.right)).collect(),
                    },
                },
            })
            .collect();
        TestModel {
            title: wire.title,
            pass_threshold_percent: wire.pass_threshold_percent,
            questions,
        }
    }
}

/// Canonical text: two-space indented JSON followed by a newline.
pub fn serialize_model(model: &TestModel) -> String {
    let mut text = serde_json::to_string_pretty(&WireModel::from(model)).expect("model serialization cannot fail");
    text.push('\n');
    text
}

/// Compact single-line form, used where the model is embedded in other documents.
pub fn serialize_model_compact(model: &TestModel) -> String {
    serde_json::to_string(&WireModel::from(model)).expect("model serialization cannot fail")
}

/// Decodes the structure of a model document without checking invariants.
pub fn decode_model(text: &str) -> Result<TestModel, CodecError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CodecError::Malformed(e.to_string()))?;
    if let Some(questions) = value.get("questions").and_then(|q| q.as_array()) {
        for (index, question) in questions.iter().enumerate() {
            if let Some(kind) = question.get("kind").and_then(|k| k.as_str()) {
                if !KNOWN_KINDS.contains(&kind) {
                    return Err(CodecError::UnknownVariant {
                        index,
                        kind: kind.to_owned(),
                    });
                }
            }
        }
    }
    let wire: WireModel = serde_json::from_value(value).map_err(|e| CodecError::Malformed(e.to_string()))?;
    Ok(wire.into())
}

/// Decodes a model document and rejects it if any invariant is violated.
pub fn parse_model(text: &str) -> Result<TestModel, CodecError> {
    let model = decode_model(text)?;
    let diagnostics = validate_test(&model, &OriginRegistry::new());
    if has_errors(&diagnostics) {
        return Err(CodecError::InvariantViolation(
            diagnostics.into_iter().filter(Diagnostic::is_error).collect(),
        ));
    }
    Ok(model)
}
