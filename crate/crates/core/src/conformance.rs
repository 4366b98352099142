//! Scoring conformance corpus.
//!
//! A fixed, seeded set of (model, responses, expected score) cases. Any
//! scorer for compiled pages, whatever its language, must reproduce every
//! expected score.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::biology::biology_model;
use crate::codec::{decode_model, serialize_model_compact};
use crate::diagnostics::{has_errors, OriginRegistry};
use crate::model::{validate_test, Answer, Pair, Question, QuestionKind, TestModel};
use crate::scoring::{correct_response, score, Response, ResponseSet, Score};

pub const CORPUS_SIZE: usize = 200;
const SEED: u64 = 0x7e57_3e00;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConformanceCase {
    pub id: String,
    /// Canonical model JSON.
    pub model: serde_json::Value,
    pub responses: ResponseSet,
    pub expected: Score,
}

impl ConformanceCase {
    pub fn test_model(&self) -> TestModel {
        decode_model(&self.model.to_string()).expect("corpus models are canonical")
    }
}

fn case(id: usize, model: &TestModel, responses: ResponseSet) -> ConformanceCase {
    let expected = score(model, &responses).expect("generated responses fit their model");
    ConformanceCase {
        id: format!("case-{id:03}"),
        model: serde_json::from_str(&serialize_model_compact(model)).expect("canonical JSON"),
        responses,
        expected,
    }
}

const WORDS: [&str; 12] = [
    "Lion",
    "Sheep",
    "Bear",
    "Cow",
    "Hen",
    "Rooster",
    "Meow",
    "Ünïcödé",
    "<b>bold</b>",
    "a & b",
    "x\"y",
    "ok",
];

fn text(rng: &mut ChaCha8Rng, prefix: &str, i: usize) -> String {
    format!("{prefix} {i} {}", WORDS.choose(rng).expect("non-empty"))
}

fn random_model(rng: &mut ChaCha8Rng) -> TestModel {
    let count = rng.random_range(1..=6);
    let questions = (0..count)
        .map(|qi| {
            let points = rng.random_range(1..=25);
            let kind = match rng.random_range(0..4) {
                k @ (0 | 1) => {
                    let n = rng.random_range(2..=5);
                    let right = rng.random_range(0..n);
                    let answers = (0..n)
                        .map(|j| Answer {
                            text: text(rng, "Option", j),
                            correct: j == right || (k == 0 && rng.random_bool(0.4)),
                        })
                        .collect();
                    if k == 0 {
                        QuestionKind::MultipleChoice { answers }
                    } else {
                        QuestionKind::SingleChoice { answers }
                    }
                }
                2 => QuestionKind::OpenAnswer {
                    expected: WORDS.choose(rng).expect("non-empty").to_string(),
                },
                _ => QuestionKind::Pairing {
                    pairs: (0..rng.random_range(1..=4))
                        .map(|j| Pair::new(text(rng, "Left", j), text(rng, "Right", j)))
                        .collect(),
                },
            };
            Question {
                text: text(rng, "Question", qi),
                points,
                kind,
            }
        })
        .collect();
    TestModel {
        title: format!("Generated {}", rng.random_range(0..1000)),
        pass_threshold_percent: rng.random_range(0..=100),
        questions,
    }
}

fn vary_case(rng: &mut ChaCha8Rng, s: &str) -> String {
    let cased: String = s
        .chars()
        .map(|c| {
            if rng.random_bool(0.5) {
                c.to_uppercase().next().unwrap_or(c)
            } else {
                c
            }
        })
        .collect();
    format!(
        "{}{cased}{}",
        " ".repeat(rng.random_range(0..3)),
        "\t".repeat(rng.random_range(0..2))
    )
}

fn random_response(rng: &mut ChaCha8Rng, kind: &QuestionKind) -> Response {
    if rng.random_bool(0.4) {
        return match (correct_response(kind), kind) {
            (Response::Open(expected), _) => Response::Open(vary_case(rng, &expected)),
            (r, _) => r,
        };
    }
    match kind {
        QuestionKind::MultipleChoice { answers } | QuestionKind::SingleChoice { answers } => {
            Response::Choice((0..answers.len()).filter(|_| rng.random_bool(0.4)).collect())
        }
        QuestionKind::OpenAnswer { expected } => Response::Open(if rng.random_bool(0.5) {
            format!("{expected}!")
        } else {
            String::new()
        }),
        QuestionKind::Pairing { pairs } => {
            let n = pairs.len();
            let mut matched = std::collections::BTreeMap::new();
            for left in 0..n {
                if rng.random_bool(0.8) {
                    matched.insert(left, rng.random_range(0..n));
                }
            }
            Response::Pairing(matched)
        }
    }
}

/// The corpus. Case 0 answers the Biology test perfectly, case 1 leaves it
/// blank; the rest are generated from a fixed seed.
pub fn generate_corpus() -> Vec<ConformanceCase> {
    let biology = biology_model();
    let mut cases = vec![
        case(0, &biology, ResponseSet::all_correct(&biology)),
        case(1, &biology, ResponseSet::new()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    while cases.len() < CORPUS_SIZE {
        let model = random_model(&mut rng);
        if has_errors(&validate_test(&model, &OriginRegistry::new())) {
            continue;
        }
        let mut responses = ResponseSet::new();
        for (qi, q) in model.questions.iter().enumerate() {
            if rng.random_bool(0.85) {
                responses.answer(qi, random_response(&mut rng, &q.kind));
            }
        }
        cases.push(case(cases.len(), &model, responses));
    }
    cases
}

/// The corpus as one pretty-printed JSON document.
pub fn corpus_json() -> String {
    let mut out =
        serde_json::to_string_pretty(&serde_json::json!({ "cases": generate_corpus() })).expect("corpus serializes");
    out.push('\n');
    out
}
