#![allow(dead_code)]

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use testme_core::builder::transition;
use testme_core::editor::{Document, Edit, Region};
use testme_core::{Answer, CallKind, Pair, Phase, Question, QuestionKind, TestModel};

const PIECES: [&str; 14] = [
    "Lion",
    "Sheep",
    "What does a cat say?",
    "é",
    "😀",
    "</script>",
    "<b>",
    "a & b",
    "\"quoted\"",
    "back\\slash",
    "tab\there",
    "line\nbreak",
    "  padded  ",
    "Ω≈ç√",
];

pub fn text(rng: &mut impl Rng) -> String {
    let n = rng.random_range(1..=3);
    let mut parts: Vec<String> = (0..n).map(|_| PIECES.choose(rng).unwrap().to_string()).collect();
    if rng.random_bool(0.3) {
        parts.push(rng.random_range(0..100_000).to_string());
    }
    parts.join(" ")
}

/// A model satisfying every invariant.
pub fn valid_model(rng: &mut impl Rng) -> TestModel {
    let count = rng.random_range(1..=8);
    let questions = (0..count)
        .map(|qi| {
            let kind = match rng.random_range(0..4) {
                k @ (0 | 1) => {
                    let n = rng.random_range(2..=6);
                    let right = rng.random_range(0..n);
                    let answers = (0..n)
                        .map(|j| Answer {
                            text: format!("{} #{j}", text(rng)),
                            correct: j == right || (k == 0 && rng.random_bool(0.3)),
                        })
                        .collect();
                    if k == 0 {
                        QuestionKind::MultipleChoice { answers }
                    } else {
                        QuestionKind::SingleChoice { answers }
                    }
                }
                2 => QuestionKind::OpenAnswer { expected: text(rng) },
                _ => QuestionKind::Pairing {
                    pairs: (0..rng.random_range(1..=5))
                        .map(|j| Pair::new(format!("{} <{j}", text(rng)), format!("{} >{j}", text(rng))))
                        .collect(),
                },
            };
            Question {
                text: format!("{} ({qi})", text(rng)),
                points: rng.random_range(1..=u32::MAX / 16),
                kind,
            }
        })
        .collect();
    TestModel {
        title: text(rng),
        pass_threshold_percent: rng.random_range(1..=100),
        questions,
    }
}

pub fn valid_model_from_seed(seed: u64) -> TestModel {
    valid_model(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Every legal call sequence of length 1..=max_len, by brute force over the
/// transition table.
pub fn legal_sequences(max_len: usize) -> Vec<Vec<CallKind>> {
    let mut out = Vec::new();
    let mut frontier = vec![(Vec::new(), Phase::Empty)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (seq, phase) in &frontier {
            for kind in CallKind::ALL {
                if let Some(p) = transition(*phase, kind) {
                    let mut s: Vec<CallKind> = seq.clone();
                    s.push(kind);
                    out.push(s.clone());
                    next.push((s, p));
                }
            }
        }
        frontier = next;
    }
    out
}

/// Character offset of each position in `doc`, counting line breaks.
fn char_offset(doc: &Document, line: u32, column: u32) -> usize {
    doc.lines()
        .take(line as usize)
        .map(|l| l.chars().count() + 1)
        .sum::<usize>()
        + column as usize
}

/// The first region `edit` touches, checked cell by cell: a replacement
/// conflicts when it covers any character of a region, an insertion when
/// it lands between two characters of one.
pub fn brute_force_conflict(doc: &Document, regions: &[Region], edit: &Edit) -> Option<Region> {
    let a = char_offset(doc, edit.range.start.line, edit.range.start.column);
    let b = char_offset(doc, edit.range.end.line, edit.range.end.column);
    regions.iter().copied().find(|r| {
        let s = char_offset(doc, r.start.line, r.start.column);
        let e = char_offset(doc, r.end.line, r.end.column);
        if a == b {
            (s + 1..e).contains(&a)
        } else {
            (a..b).any(|cell| (s..e).contains(&cell))
        }
    })
}

/// The call sentence that builds `model`.
pub fn model_calls(model: &TestModel) -> Vec<testme_core::Call> {
    use testme_core::Call;
    let mut calls = vec![Call::CreateTest {
        title: model.title.clone(),
        pass_threshold_percent: model.pass_threshold_percent,
    }];
    for q in &model.questions {
        let (text, points) = (q.text.clone(), q.points);
        match &q.kind {
            QuestionKind::MultipleChoice { answers } | QuestionKind::SingleChoice { answers } => {
                calls.push(if matches!(q.kind, QuestionKind::MultipleChoice { .. }) {
                    Call::MultipleChoiceQuestion { text, points }
                } else {
                    Call::SingleChoiceQuestion { text, points }
                });
                for a in answers {
                    let text = a.text.clone();
                    calls.push(if a.correct {
                        Call::CorrectAnswer { text }
                    } else {
                        Call::IncorrectAnswer { text }
                    });
                }
            }
            QuestionKind::OpenAnswer { expected } => calls.push(Call::OpenAnswerQuestion {
                text,
                points,
                expected: expected.clone(),
            }),
            QuestionKind::Pairing { pairs } => {
                calls.push(Call::PairingQuestion { text, points });
                for p in pairs {
                    calls.push(Call::Pair {
                        left: p.left.clone(),
                        right: p.right.clone(),
                    });
                }
            }
        }
    }
    calls.push(Call::RunTest);
    calls
}
