//! The Test-me! exam model and its validation rules.

use std::collections::{BTreeSet, HashSet};

use crate::diagnostics::{Code, Diagnostic, ObjectId, OriginRegistry};

/// An exam: a title, the minimum passing percentage and its questions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestModel {
    pub title: String,
    pub pass_threshold_percent: u32,
    pub questions: Vec<Question>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Question {
    pub text: String,
    pub points: u32,
    pub kind: QuestionKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuestionKind {
    MultipleChoice { answers: Vec<Answer> },
    SingleChoice { answers: Vec<Answer> },
    OpenAnswer { expected: String },
    Pairing { pairs: Vec<Pair> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Answer {
    pub text: String,
    pub correct: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pair {
    pub left: String,
    pub right: String,
}

impl Answer {
    pub fn correct(text: impl Into<String>) -> Self {
        Self {
            text: text.into(),
            correct: true,
        }
    }

    pub fn incorrect(text: impl Into<String>) -> Self {
        Self {
            text: text.into(),
            correct: false,
        }
    }
}

impl Pair {
    pub fn new(left: impl Into<String>, right: impl Into<String>) -> Self {
        Self {
            left: left.into(),
            right: right.into(),
        }
    }
}

impl QuestionKind {
    /// Wire tag of the variant.
    pub fn tag(&self) -> &'static str {
        match self {
            QuestionKind::MultipleChoice { .. } => "multiple_choice",
            QuestionKind::SingleChoice { .. } => "single_choice",
            QuestionKind::OpenAnswer { .. } => "open_answer",
            QuestionKind::Pairing { .. } => "pairing",
        }
    }

    pub fn answers(&self) -> Option<&[Answer]> {
        match self {
            QuestionKind::MultipleChoice { answers } | QuestionKind::SingleChoice { answers } => Some(answers),
            _ => None,
        }
    }
}

impl TestModel {
    pub fn total_points(&self) -> u64 {
        total_points(self)
    }
}

pub fn total_points(model: &TestModel) -> u64 {
    model.questions.iter().map(|q| u64::from(q.points)).sum()
}

fn blank(text: &str) -> bool {
    text.trim().is_empty()
}

/// Checks every model invariant and returns all violations.
///
/// Each diagnostic carries the origin of the offending object when
/// `origins` holds one. Test-level findings come first, then per-question
/// findings ordered by question index and rule code.
pub fn validate_test(model: &TestModel, origins: &OriginRegistry) -> Vec<Diagnostic> {
    let at = |id: ObjectId| origins.lookup(id).cloned();
    let mut test_level = Vec::new();

    if blank(&model.title) {
        test_level.push(Diagnostic::error(Code::EmptyTitle, "The test title is empty").at(at(ObjectId::Test)));
    }
    if model.pass_threshold_percent == 0 || model.pass_threshold_percent > 100 {
        test_level.push(
            Diagnostic::error(
                Code::ThresholdOutOfRange,
                format!(
                    "The pass threshold {}% is outside 1..=100",
                    model.pass_threshold_percent
                ),
            )
            .at(at(ObjectId::Test)),
        );
    }
    if model.questions.is_empty() {
        test_level.push(Diagnostic::error(Code::EmptyTest, "The test has no questions").at(at(ObjectId::Test)));
    }
    test_level.sort_by_key(|d| d.code.as_str());

    let mut seen_questions = HashSet::new();
    let mut per_question: Vec<(usize, Diagnostic)> = Vec::new();
    for (qi, question) in model.questions.iter().enumerate() {
        let mut found = check_question(qi, question, origins);
        if !blank(&question.text) && !seen_questions.insert(question.text.trim()) {
            found.push(
                Diagnostic::warning(
                    Code::DuplicateQuestion,
                    format!("The question '{}' appears more than once", question.text.trim()),
                )
                .at(at(ObjectId::Question(qi))),
            );
        }
        per_question.extend(found.into_iter().map(|d| (qi, d)));
    }
    per_question.sort_by(|(qa, a), (qb, b)| qa.cmp(qb).then(a.code.as_str().cmp(b.code.as_str())));

    test_level.extend(per_question.into_iter().map(|(_, d)| d));
    test_level
}

fn check_question(qi: usize, question: &Question, origins: &OriginRegistry) -> Vec<Diagnostic> {
    let at = |id: ObjectId| origins.lookup(id).cloned();
    let here = at(ObjectId::Question(qi));
    let mut out = Vec::new();

    if blank(&question.text) {
        out.push(
            Diagnostic::error(Code::EmptyQuestionText, format!("Question {} has no text", qi + 1)).at(here.clone()),
        );
    }
    if question.points == 0 {
        out.push(
            Diagnostic::error(
                Code::ZeroPoints,
                format!("The question '{}' must be worth at least 1 point", question.text.trim()),
            )
            .at(here.clone()),
        );
    }

    match &question.kind {
        QuestionKind::MultipleChoice { answers } | QuestionKind::SingleChoice { answers } => {
            if answers.len() < 2 {
                out.push(
                    Diagnostic::error(
                        Code::TooFewAnswers,
                        format!("The question '{}' needs at least 2 answers", question.text.trim()),
                    )
                    .at(here.clone()),
                );
            }
            let correct = answers.iter().filter(|a| a.correct).count();
            if correct == 0 {
                out.push(
                    Diagnostic::error(
                        Code::NoCorrectAnswer,
                        format!("The question '{}' has no correct answer", question.text.trim()),
                    )
                    .at(here.clone()),
                );
            }
            if matches!(question.kind, QuestionKind::SingleChoice { .. }) && correct > 1 {
                // Point at the first surplus correct answer.
                let surplus = answers
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.correct)
                    .nth(1)
                    .map(|(ai, _)| ai);
                let location = surplus
                    .and_then(|ai| {
                        at(ObjectId::Answer {
                            question: qi,
                            answer: ai,
                        })
                    })
                    .or_else(|| here.clone());
                out.push(
                    Diagnostic::error(
                        Code::SingleChoiceMultipleCorrect,
                        format!(
                            "The single choice question '{}' has {} correct answers, but allows only one",
                            question.text.trim(),
                            correct
                        ),
                    )
                    .at(location),
                );
            }
            let mut seen = HashSet::new();
            for (ai, answer) in answers.iter().enumerate() {
                let answer_site = at(ObjectId::Answer {
                    question: qi,
                    answer: ai,
                });
                if blank(&answer.text) {
                    out.push(
                        Diagnostic::error(
                            Code::EmptyAnswerText,
                            format!("An answer of the question '{}' is empty", question.text.trim()),
                        )
                        .at(answer_site),
                    );
                } else if !seen.insert(answer.text.trim()) {
                    out.push(
                        Diagnostic::error(
                            Code::DuplicateAnswer,
                            format!("The answer '{}' is a duplicate", answer.text.trim()),
                        )
                        .at(answer_site),
                    );
                }
            }
        }
        QuestionKind::OpenAnswer { expected } => {
            if blank(expected) {
                out.push(
                    Diagnostic::error(
                        Code::EmptyExpectedAnswer,
                        format!("The open question '{}' has no expected answer", question.text.trim()),
                    )
                    .at(here.clone()),
                );
            }
        }
        QuestionKind::Pairing { pairs } => {
            if pairs.is_empty() {
                out.push(
                    Diagnostic::error(
                        Code::EmptyPairing,
                        format!("The pairing question '{}' has no pairs", question.text.trim()),
                    )
                    .at(here.clone()),
                );
            }
            let mut lefts = BTreeSet::new();
            let mut rights = BTreeSet::new();
            for (pi, pair) in pairs.iter().enumerate() {
                let pair_site = at(ObjectId::Pair { question: qi, pair: pi });
                if blank(&pair.left) || blank(&pair.right) {
                    out.push(
                        Diagnostic::error(
                            Code::EmptyPairSide,
                            format!("A pair of the question '{}' has an empty side", question.text.trim()),
                        )
                        .at(pair_site.clone()),
                    );
                }
                if !blank(&pair.left) && !lefts.insert(pair.left.trim()) {
                    out.push(
                        Diagnostic::error(
                            Code::DuplicatePairLeft,
                            format!("The pair item '{}' is a duplicate", pair.left.trim()),
                        )
                        .at(pair_site.clone()),
                    );
                }
                if !blank(&pair.right) && !rights.insert(pair.right.trim()) {
                    out.push(
                        Diagnostic::error(
                            Code::DuplicatePairRight,
                            format!("The pair item '{}' is a duplicate", pair.right.trim()),
                        )
                        .at(pair_site),
                    );
                }
            }
        }
    }
    out
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// The Biology test sentence as plain data.
    pub fn biology() -> TestModel {
        TestModel {
            title: "Biology test".into(),
            pass_threshold_percent: 20,
            questions: vec![
                Question {
                    text: "Which of the following are herbivores?".into(),
                    points: 10,
                    kind: QuestionKind::MultipleChoice {
                        answers: vec![
                            Answer::incorrect("Lion"),
                            Answer::correct("Sheep"),
                            Answer::incorrect("Bear"),
                            Answer::correct("Cow"),
                        ],
                    },
                },
                Question {
                    text: "What does a cat say?".into(),
                    points: 20,
                    kind: QuestionKind::OpenAnswer {
                        expected: "Meow".into(),
                    },
                },
                Question {
                    text: "Combine males and females:".into(),
                    points: 10,
                    kind: QuestionKind::Pairing {
                        pairs: vec![
                            Pair::new("Lion", "Lioness"),
                            Pair::new("Bull", "Cow"),
                            Pair::new("Tiger", "Tigress"),
                        ],
                    },
                },
            ],
        }
    }
}
