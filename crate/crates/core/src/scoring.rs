//! All-or-nothing scoring of a student's responses.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{QuestionKind, TestModel};

/// A student's answer to one question.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Response {
    /// Indices of the selected answers.
    Choice(BTreeSet<usize>),
    Open(String),
    /// Left index to the right index it was matched with.
    Pairing(BTreeMap<usize, usize>),
}

/// Responses keyed by question index. Absent keys are unanswered questions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ResponseSet(pub BTreeMap<usize, Response>);

impl ResponseSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn answer(&mut self, question: usize, response: Response) -> &mut Self {
        self.0.insert(question, response);
        self
    }

    /// Responses that earn every question its points.
    pub fn all_correct(model: &TestModel) -> Self {
        let mut set = Self::new();
        for (qi, q) in model.questions.iter().enumerate() {
            set.answer(qi, correct_response(&q.kind));
        }
        set
    }
}

pub fn correct_response(kind: &QuestionKind) -> Response {
    match kind {
        QuestionKind::MultipleChoice { answers } | QuestionKind::SingleChoice { answers } => Response::Choice(
            answers
                .iter()
                .enumerate()
                .filter(|(_, a)| a.correct)
                .map(|(i, _)| i)
                .collect(),
        ),
        QuestionKind::OpenAnswer { expected } => Response::Open(expected.clone()),
        QuestionKind::Pairing { pairs } => Response::Pairing((0..pairs.len()).map(|i| (i, i)).collect()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Score {
    pub earned: u64,
    pub total: u64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScoreError {
    #[error("response for question {0}, but the test has no such question")]
    NoSuchQuestion(usize),
    #[error("question {question} has no option {index}")]
    IndexOutOfRange { question: usize, index: usize },
    #[error("response to question {0} does not fit its question kind")]
    KindMismatch(usize),
}

/// Open answers match when equal after trimming, ignoring case.
pub fn open_answer_matches(given: &str, expected: &str) -> bool {
    given.trim().to_lowercase() == expected.trim().to_lowercase()
}

/// Whether `response` fully answers the question, after checking indices.
pub fn is_correct(question: usize, kind: &QuestionKind, response: &Response) -> Result<bool, ScoreError> {
    match (kind, response) {
        (
            QuestionKind::MultipleChoice { answers } | QuestionKind::SingleChoice { answers },
            Response::Choice(selected),
        ) => {
            if let Some(&index) = selected.iter().find(|&&i| i >= answers.len()) {
                return Err(ScoreError::IndexOutOfRange { question, index });
            }
            let key: BTreeSet<usize> = answers
                .iter()
                .enumerate()
                .filter(|(_, a)| a.correct)
                .map(|(i, _)| i)
                .collect();
            Ok(*selected == key)
        }
        (QuestionKind::OpenAnswer { expected }, Response::Open(given)) => Ok(open_answer_matches(given, expected)),
        (QuestionKind::Pairing { pairs }, Response::Pairing(matching)) => {
            if let Some((&l, &r)) = matching.iter().find(|(&l, &r)| l >= pairs.len() || r >= pairs.len()) {
                let index = if l >= pairs.len() { l } else { r };
                return Err(ScoreError::IndexOutOfRange { question, index });
            }
            Ok(matching.len() == pairs.len() && matching.iter().all(|(l, r)| l == r))
        }
        _ => Err(ScoreError::KindMismatch(question)),
    }
}

/// Scores `responses` against `model`.
///
/// A question earns its full points only when its response matches the key
/// exactly. The test is passed when `earned / total * 100` reaches the pass
/// threshold; a test worth nothing is never passed.
pub fn score(model: &TestModel, responses: &ResponseSet) -> Result<Score, ScoreError> {
    if let Some((&question, _)) = responses.0.range(model.questions.len()..).next() {
        return Err(ScoreError::NoSuchQuestion(question));
    }
    let mut earned = 0u64;
    for (qi, question) in model.questions.iter().enumerate() {
        if let Some(response) = responses.0.get(&qi) {
            if is_correct(qi, &question.kind, response)? {
                earned += u64::from(question.points);
            }
        }
    }
    let total = model.total_points();
    let passed = total > 0 && earned * 100 >= u64::from(model.pass_threshold_percent) * total;
    Ok(Score { earned, total, passed })
}
