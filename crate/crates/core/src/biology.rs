//! The Biology test, written as a sentence in Rust.

use crate::builder::{Call, Sentence, TestBuilder};
use crate::model::TestModel;

pub struct BiologyTest;

impl Sentence for BiologyTest {
    fn define(&self, t: &mut TestBuilder) {
        t.create_test("Biology test", 20);

        t.multiple_choice_question("Which of the following are herbivores?", 10);
        t.incorrect_answer("Lion");
        t.correct_answer("Sheep");
        t.incorrect_answer("Bear");
        t.correct_answer("Cow");

        t.open_answer_question("What does a cat say?", 20, "Meow");

        t.pairing_question("Combine males and females:", 10);
        t.pair("Lion", "Lioness");
        t.pair("Bull", "Cow");
        t.pair("Tiger", "Tigress");

        t.run_test();
    }
}

/// The composed Biology test.
pub fn biology_model() -> TestModel {
    BiologyTest.compose().expect("the Biology sentence is valid").model
}

/// The Biology sentence as data, in call order, ending with `run_test`.
pub fn biology_calls() -> Vec<Call> {
    let text = |s: &str| s.to_owned();
    vec![
        Call::CreateTest {
            title: text("Biology test"),
            pass_threshold_percent: 20,
        },
        Call::MultipleChoiceQuestion {
            text: text("Which of the following are herbivores?"),
            points: 10,
        },
        Call::IncorrectAnswer { text: text("Lion") },
        Call::CorrectAnswer { text: text("Sheep") },
        Call::IncorrectAnswer { text: text("Bear") },
        Call::CorrectAnswer { text: text("Cow") },
        Call::OpenAnswerQuestion {
            text: text("What does a cat say?"),
            points: 20,
            expected: text("Meow"),
        },
        Call::PairingQuestion {
            text: text("Combine males and females:"),
            points: 10,
        },
        Call::Pair {
            left: text("Lion"),
            right: text("Lioness"),
        },
        Call::Pair {
            left: text("Bull"),
            right: text("Cow"),
        },
        Call::Pair {
            left: text("Tiger"),
            right: text("Tigress"),
        },
        Call::RunTest,
    ]
}
