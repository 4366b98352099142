use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The nine words of the Test-me! vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CallKind {
    CreateTest,
    MultipleChoiceQuestion,
    SingleChoiceQuestion,
    OpenAnswerQuestion,
    PairingQuestion,
    CorrectAnswer,
    IncorrectAnswer,
    Pair,
    RunTest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamType {
    Text,
    Integer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Param {
    pub role: &'static str,
    pub ty: ParamType,
}

/// Static description of one vocabulary call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CallDescriptor {
    pub kind: CallKind,
    pub name: &'static str,
    pub params: &'static [Param],
    pub doc: &'static str,
}

impl CallDescriptor {
    pub fn arity(&self) -> usize {
        self.params.len()
    }
}

const fn text(role: &'static str) -> Param {
    Param {
        role,
        ty: ParamType::Text,
    }
}

const fn int(role: &'static str) -> Param {
    Param {
        role,
        ty: ParamType::Integer,
    }
}

pub static DESCRIPTORS: [CallDescriptor; 9] = [
    CallDescriptor {
        kind: CallKind::CreateTest,
        name: "create_test",
        params: &[text("title"), int("pass threshold percent")],
        doc: "Starts the test with its title and the percentage needed to pass.",
    },
    CallDescriptor {
        kind: CallKind::MultipleChoiceQuestion,
        name: "multiple_choice_question",
        params: &[text("question"), int("points")],
        doc: "Starts a question where any number of answers can be correct.",
    },
    CallDescriptor {
        kind: CallKind::SingleChoiceQuestion,
        name: "single_choice_question",
        params: &[text("question"), int("points")],
        doc: "Starts a question with exactly one correct answer.",
    },
    CallDescriptor {
        kind: CallKind::OpenAnswerQuestion,
        name: "open_answer_question",
        params: &[text("question"), int("points"), text("expected answer")],
        doc: "Adds a question the student answers by typing the expected text.",
    },
    CallDescriptor {
        kind: CallKind::PairingQuestion,
        name: "pairing_question",
        params: &[text("question"), int("points")],
        doc: "Starts a question where the student matches pairs.",
    },
    CallDescriptor {
        kind: CallKind::CorrectAnswer,
        name: "correct_answer",
        params: &[text("answer")],
        doc: "Adds a correct answer to the current choice question.",
    },
    CallDescriptor {
        kind: CallKind::IncorrectAnswer,
        name: "incorrect_answer",
        params: &[text("answer")],
        doc: "Adds a wrong answer to the current choice question.",
    },
    CallDescriptor {
        kind: CallKind::Pair,
        name: "pair",
        params: &[text("left"), text("right")],
        doc: "Adds a matching pair to the current pairing question.",
    },
    CallDescriptor {
        kind: CallKind::RunTest,
        name: "run_test",
        params: &[],
        doc: "Finishes the test.",
    },
];

impl CallKind {
    pub const ALL: [CallKind; 9] = [
        CallKind::CreateTest,
        CallKind::MultipleChoiceQuestion,
        CallKind::SingleChoiceQuestion,
        CallKind::OpenAnswerQuestion,
        CallKind::PairingQuestion,
        CallKind::CorrectAnswer,
        CallKind::IncorrectAnswer,
        CallKind::Pair,
        CallKind::RunTest,
    ];

    pub fn descriptor(self) -> &'static CallDescriptor {
        &DESCRIPTORS[self as usize]
    }

    pub fn name(self) -> &'static str {
        self.descriptor().name
    }

    pub fn from_name(name: &str) -> Option<CallKind> {
        DESCRIPTORS.iter().find(|d| d.name == name).map(|d| d.kind)
    }

    pub fn starts_question(self) -> bool {
        matches!(
            self,
            CallKind::MultipleChoiceQuestion
                | CallKind::SingleChoiceQuestion
                | CallKind::OpenAnswerQuestion
                | CallKind::PairingQuestion
        )
    }
}

impl fmt::Display for CallKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn vocabulary() -> impl Iterator<Item = &'static str> {
    DESCRIPTORS.iter().map(|d| d.name)
}

/// An argument value as written in a sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArgValue {
    Text(String),
    Integer(i64),
}

/// A fully typed vocabulary call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Call {
    CreateTest {
        title: String,
        pass_threshold_percent: u32,
    },
    MultipleChoiceQuestion {
        text: String,
        points: u32,
    },
    SingleChoiceQuestion {
        text: String,
        points: u32,
    },
    OpenAnswerQuestion {
        text: String,
        points: u32,
        expected: String,
    },
    PairingQuestion {
        text: String,
        points: u32,
    },
    CorrectAnswer {
        text: String,
    },
    IncorrectAnswer {
        text: String,
    },
    Pair {
        left: String,
        right: String,
    },
    RunTest,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArgError {
    #[error("{call} takes {expected} argument(s), got {found}")]
    Arity {
        call: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("argument '{role}' of {call} must be {expected}")]
    Type {
        call: &'static str,
        role: &'static str,
        expected: &'static str,
    },
    #[error("argument '{role}' of {call} is out of range: {value}")]
    Range {
        call: &'static str,
        role: &'static str,
        value: i64,
    },
}

impl Call {
    pub fn kind(&self) -> CallKind {
        match self {
            Call::CreateTest { .. } => CallKind::CreateTest,
            Call::MultipleChoiceQuestion { .. } => CallKind::MultipleChoiceQuestion,
            Call::SingleChoiceQuestion { .. } => CallKind::SingleChoiceQuestion,
            Call::OpenAnswerQuestion { .. } => CallKind::OpenAnswerQuestion,
            Call::PairingQuestion { .. } => CallKind::PairingQuestion,
            Call::CorrectAnswer { .. } => CallKind::CorrectAnswer,
            Call::IncorrectAnswer { .. } => CallKind::IncorrectAnswer,
            Call::Pair { .. } => CallKind::Pair,
            Call::RunTest => CallKind::RunTest,
        }
    }

    /// Builds a typed call from loosely typed arguments, checking them
    /// against the descriptor's arity and parameter types.
    /// Arguments in descriptor order; the inverse of [`Call::from_args`].
    pub fn args(&self) -> Vec<ArgValue> {
        let text = |s: &String| ArgValue::Text(s.clone());
        let int = |n: &u32| ArgValue::Integer(i64::from(*n));
        match self {
            Call::CreateTest {
                title,
                pass_threshold_percent,
            } => vec![text(title), int(pass_threshold_percent)],
            Call::MultipleChoiceQuestion { text: t, points }
            | Call::SingleChoiceQuestion { text: t, points }
            | Call::PairingQuestion { text: t, points } => vec![text(t), int(points)],
            Call::OpenAnswerQuestion {
                text: t,
                points,
                expected,
            } => vec![text(t), int(points), text(expected)],
            Call::CorrectAnswer { text: t } | Call::IncorrectAnswer { text: t } => vec![text(t)],
            Call::Pair { left, right } => vec![text(left), text(right)],
            Call::RunTest => Vec::new(),
        }
    }

    pub fn from_args(kind: CallKind, args: Vec<ArgValue>) -> Result<Call, ArgError> {
        let descriptor = kind.descriptor();
        if args.len() != descriptor.arity() {
            return Err(ArgError::Arity {
                call: descriptor.name,
                expected: descriptor.arity(),
                found: args.len(),
            });
        }
        let mut texts = Vec::new();
        let mut ints = Vec::new();
        for (param, arg) in descriptor.params.iter().zip(args) {
            match (param.ty, arg) {
                (ParamType::Text, ArgValue::Text(s)) => texts.push(s),
                (ParamType::Integer, ArgValue::Integer(n)) => {
                    let n = u32::try_from(n).map_err(|_| ArgError::Range {
                        call: descriptor.name,
                        role: param.role,
                        value: n,
                    })?;
                    ints.push(n)
                }
                (ParamType::Text, _) => {
                    return Err(ArgError::Type {
                        call: descriptor.name,
                        role: param.role,
                        expected: "text",
                    })
                }
                (ParamType::Integer, _) => {
                    return Err(ArgError::Type {
                        call: descriptor.name,
                        role: param.role,
                        expected: "a whole number",
                    })
                }
            }
        }
        let mut texts = texts.into_iter();
        let mut next_text = || texts.next().unwrap_or_default();
        let first_int = ints.first().copied().unwrap_or_default();
        Ok(match kind {
            CallKind::CreateTest => Call::CreateTest {
                title: next_text(),
                pass_threshold_percent: first_int,
            },
            CallKind::MultipleChoiceQuestion => Call::MultipleChoiceQuestion {
                text: next_text(),
                points: first_int,
            },
            CallKind::SingleChoiceQuestion => Call::SingleChoiceQuestion {
                text: next_text(),
                points: first_int,
            },
            CallKind::OpenAnswerQuestion => Call::OpenAnswerQuestion {
                text: next_text(),
                points: first_int,
                expected: next_text(),
            },
            CallKind::PairingQuestion => Call::PairingQuestion {
                text: next_text(),
                points: first_int,
            },
            CallKind::CorrectAnswer => Call::CorrectAnswer { text: next_text() },
            CallKind::IncorrectAnswer => Call::IncorrectAnswer { text: next_text() },
            CallKind::Pair => Call::Pair {
                left: next_text(),
                right: next_text(),
            },
            CallKind::RunTest => Call::RunTest,
        })
    }

    /// A representative call of `kind` with placeholder arguments.
    pub fn sample(kind: CallKind) -> Call {
        match kind {
            CallKind::CreateTest => Call::CreateTest {
                title: "Sample test".into(),
                pass_threshold_percent: 50,
            },
            CallKind::MultipleChoiceQuestion => Call::MultipleChoiceQuestion {
                text: "Sample question?".into(),
                points: 10,
            },
            CallKind::SingleChoiceQuestion => Call::SingleChoiceQuestion {
                text: "Sample question?".into(),
                points: 10,
            },
            CallKind::OpenAnswerQuestion => Call::OpenAnswerQuestion {
                text: "Sample question?".into(),
                points: 10,
                expected: "answer".into(),
            },
            CallKind::PairingQuestion => Call::PairingQuestion {
                text: "Sample question?".into(),
                points: 10,
            },
            CallKind::CorrectAnswer => Call::CorrectAnswer { text: "yes".into() },
            CallKind::IncorrectAnswer => Call::IncorrectAnswer { text: "no".into() },
            CallKind::Pair => Call::Pair {
                left: "left".into(),
                right: "right".into(),
            },
            CallKind::RunTest => Call::RunTest,
        }
    }
}
