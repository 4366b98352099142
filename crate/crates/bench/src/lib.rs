//! Input generators shared by the benchmarks.

use testme_core::editor::{testme_skeleton, Document};
use testme_core::{Answer, Pair, Question, QuestionKind, TestModel};

/// A valid model with `questions` questions cycling through every kind.
pub fn synthetic_model(questions: usize) -> TestModel {
    let questions = (0..questions)
        .map(|i| {
            let text = format!("Question {i}");
            let kind = match i % 4 {
                0 => QuestionKind::MultipleChoice {
                    answers: (0..4)
                        .map(|j| Answer {
                            text: format!("A{j}"),
                            correct: j % 2 == 0,
                        })
                        .collect(),
                },
                1 => QuestionKind::SingleChoice {
                    answers: (0..3)
                        .map(|j| Answer {
                            text: format!("S{j}"),
                            correct: j == 1,
                        })
                        .collect(),
                },
                2 => QuestionKind::OpenAnswer {
                    expected: format!("answer {i}"),
                },
                _ => QuestionKind::Pairing {
                    pairs: (0..3).map(|j| Pair::new(format!("L{j}"), format!("R{j}"))).collect(),
                },
            };
            Question {
                text,
                points: 1 + (i % 10) as u32,
                kind,
            }
        })
        .collect();
    TestModel {
        title: "Synthetic".into(),
        pass_threshold_percent: 50,
        questions,
    }
}

/// The Java skeleton with `extra` further choice questions in its body.
pub fn long_java_document(extra: usize) -> Document {
    let skeleton = testme_skeleton("Long", "bench");
    let marker = "        correct_answer(\"Sheep\");\n";
    let mut body = String::from(marker);
    for i in 0..extra {
        body.push_str(&format!(
            "        multiple_choice_question(\"Question {i}\", 5);\n        correct_answer(\"Yes\");\n        incorrect_answer(\"No\");\n"
        ));
    }
    Document::new("mem://Long.java", skeleton.replacen(marker, &body, 1))
}
