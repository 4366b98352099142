//! Function Sequence frontend of the Test-me! language.
//!
//! A sentence is an ordered list of vocabulary calls:
//!
//! ```text
//! create_test (question answer*)* run_test
//! ```
//!
//! [`TestBuilder`] tracks where in that grammar the sentence is, appends
//! model objects as calls arrive and records every object's call site so
//! domain errors can link back to the line that caused them.
//!
//! ```
//! use testme_core::builder::TestBuilder;
//!
//! let mut t = TestBuilder::new();
//! t.create_test("Biology test", 20);
//! t.open_answer_question("What does a cat say?", 20, "Meow");
//! t.run_test();
//! let composed = t.compose().unwrap();
//! assert_eq!(composed.model.total_points(), 20);
//! ```

mod calls;

use std::panic::Location;

pub use calls::{vocabulary, ArgError, ArgValue, Call, CallDescriptor, CallKind, Param, ParamType, DESCRIPTORS};

use crate::diagnostics::{has_errors, Code, Diagnostic, ObjectId, OriginRegistry, SourceLocation};
use crate::model::{validate_test, Answer, Pair, Question, QuestionKind, TestModel};

/// Where a sentence is in the call grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    Empty,
    InTest,
    InChoice,
    InPairing,
    Finalized,
}

impl Phase {
    pub const ALL: [Phase; 5] = [
        Phase::Empty,
        Phase::InTest,
        Phase::InChoice,
        Phase::InPairing,
        Phase::Finalized,
    ];
}

/// The phase reached by `call` from `phase`, or `None` when the call is
/// out of sequence.
pub fn transition(phase: Phase, call: CallKind) -> Option<Phase> {
    use CallKind::*;
    use Phase::*;
    match (phase, call) {
        (Empty, CreateTest) => Some(InTest),
        (InTest | InChoice | InPairing, MultipleChoiceQuestion | SingleChoiceQuestion) => Some(InChoice),
        (InTest | InChoice | InPairing, OpenAnswerQuestion) => Some(InTest),
        (InTest | InChoice | InPairing, PairingQuestion) => Some(InPairing),
        (InChoice, CorrectAnswer | IncorrectAnswer) => Some(InChoice),
        (InPairing, Pair) => Some(InPairing),
        (InTest | InChoice | InPairing, RunTest) => Some(Finalized),
        _ => None,
    }
}

const QUESTION_STARTERS: [CallKind; 4] = [
    CallKind::MultipleChoiceQuestion,
    CallKind::SingleChoiceQuestion,
    CallKind::OpenAnswerQuestion,
    CallKind::PairingQuestion,
];

/// Calls accepted in `phase`: continuations of the current question first,
/// then new questions, then `run_test`.
pub fn next_valid_calls(phase: Phase) -> Vec<&'static CallDescriptor> {
    let kinds: Vec<CallKind> = match phase {
        Phase::Empty => vec![CallKind::CreateTest],
        Phase::Finalized => vec![],
        Phase::InTest | Phase::InChoice | Phase::InPairing => {
            let mut kinds = match phase {
                Phase::InChoice => vec![CallKind::CorrectAnswer, CallKind::IncorrectAnswer],
                Phase::InPairing => vec![CallKind::Pair],
                _ => vec![],
            };
            kinds.extend(QUESTION_STARTERS);
            kinds.push(CallKind::RunTest);
            kinds
        }
    };
    kinds.into_iter().map(CallKind::descriptor).collect()
}

/// A composed sentence: the model plus the origins of its objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composed {
    pub model: TestModel,
    pub origins: OriginRegistry,
    pub warnings: Vec<Diagnostic>,
}

/// Accumulates a sentence call by call.
#[derive(Debug, Clone)]
pub struct TestBuilder {
    phase: Phase,
    model: TestModel,
    origins: OriginRegistry,
    errors: Vec<Diagnostic>,
}

impl Default for TestBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl TestBuilder {
    pub fn new() -> Self {
        Self {
            phase: Phase::Empty,
            model: TestModel {
                title: String::new(),
                pass_threshold_percent: 0,
                questions: Vec::new(),
            },
            origins: OriginRegistry::new(),
            errors: Vec::new(),
        }
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn origins(&self) -> &OriginRegistry {
        &self.origins
    }

    /// The model as built so far.
    pub fn partial_model(&self) -> &TestModel {
        &self.model
    }

    /// Sequencing and argument errors recorded by the fluent methods.
    pub fn errors(&self) -> &[Diagnostic] {
        &self.errors
    }

    pub fn next_valid_calls(&self) -> Vec<&'static CallDescriptor> {
        next_valid_calls(self.phase)
    }

    fn register(&mut self, id: ObjectId, site: &SourceLocation) {
        self.origins
            .register(id, site.clone())
            .expect("builder hands out each object id once");
    }

    /// Applies one call made at `site`. An out-of-sequence call leaves the
    /// builder unchanged.
    pub fn apply(&mut self, call: Call, site: SourceLocation) -> Result<(), Diagnostic> {
        let kind = call.kind();
        let Some(next) = transition(self.phase, kind) else {
            return Err(self.out_of_sequence(kind, site));
        };
        let question_index = self.model.questions.len();
        match call {
            Call::CreateTest {
                title,
                pass_threshold_percent,
            } => {
                self.model.title = title;
                self.model.pass_threshold_percent = pass_threshold_percent;
                self.register(ObjectId::Test, &site);
            }
            Call::MultipleChoiceQuestion { text, points } => {
                self.start_question(text, points, QuestionKind::MultipleChoice { answers: vec![] }, &site)
            }
            Call::SingleChoiceQuestion { text, points } => {
                self.start_question(text, points, QuestionKind::SingleChoice { answers: vec![] }, &site)
            }
            Call::OpenAnswerQuestion { text, points, expected } => {
                self.start_question(text, points, QuestionKind::OpenAnswer { expected }, &site)
            }
            Call::PairingQuestion { text, points } => {
                self.start_question(text, points, QuestionKind::Pairing { pairs: vec![] }, &site)
            }
            Call::CorrectAnswer { text } => self.add_answer(Answer::correct(text), &site),
            Call::IncorrectAnswer { text } => self.add_answer(Answer::incorrect(text), &site),
            Call::Pair { left, right } => {
                let question = question_index - 1;
                if let Some(QuestionKind::Pairing { pairs }) = self.model.questions.last_mut().map(|q| &mut q.kind) {
                    pairs.push(Pair::new(left, right));
                    let pair = pairs.len() - 1;
                    self.register(ObjectId::Pair { question, pair }, &site);
                }
            }
            Call::RunTest => {}
        }
        self.phase = next;
        Ok(())
    }

    /// Like [`apply`](Self::apply), for arguments that still need checking
    /// against the call's descriptor.
    pub fn apply_args(&mut self, kind: CallKind, args: Vec<ArgValue>, site: SourceLocation) -> Result<(), Diagnostic> {
        if transition(self.phase, kind).is_none() {
            return Err(self.out_of_sequence(kind, site));
        }
        match Call::from_args(kind, args) {
            Ok(call) => self.apply(call, site),
            Err(e) => Err(Diagnostic::error(Code::MalformedCall, e.to_string()).at(Some(site))),
        }
    }

    fn start_question(&mut self, text: String, points: u32, kind: QuestionKind, site: &SourceLocation) {
        self.model.questions.push(Question { text, points, kind });
        let id = ObjectId::Question(self.model.questions.len() - 1);
        self.register(id, site);
    }

    fn add_answer(&mut self, answer: Answer, site: &SourceLocation) {
        let question = self.model.questions.len() - 1;
        if let Some(QuestionKind::MultipleChoice { answers } | QuestionKind::SingleChoice { answers }) =
            self.model.questions.last_mut().map(|q| &mut q.kind)
        {
            answers.push(answer);
            let answer = answers.len() - 1;
            self.register(ObjectId::Answer { question, answer }, site);
        }
    }

    fn out_of_sequence(&self, kind: CallKind, site: SourceLocation) -> Diagnostic {
        let message = match self.phase {
            Phase::Empty => format!("'{kind}' cannot be used before create_test"),
            Phase::Finalized => format!("'{kind}' cannot be used after run_test"),
            _ => {
                let expected: Vec<&str> = self.next_valid_calls().iter().map(|d| d.name).collect();
                format!("'{kind}' is not allowed here; expected one of: {}", expected.join(", "))
            }
        };
        Diagnostic::error(Code::OutOfSequence, message).at(Some(site))
    }

    fn record(&mut self, call: Call, site: SourceLocation) -> &mut Self {
        if let Err(diagnostic) = self.apply(call, site) {
            self.errors.push(diagnostic);
        }
        self
    }

    #[track_caller]
    pub fn create_test(&mut self, title: &str, pass_threshold_percent: u32) -> &mut Self {
        let site = SourceLocation::from_caller(Location::caller());
        self.record(
            Call::CreateTest {
                title: title.to_owned(),
                pass_threshold_percent,
            },
            site,
        )
    }

    #[track_caller]
    pub fn multiple_choice_question(&mut self, text: &str, points: u32) -> &mut Self {
        let site = SourceLocation::from_caller(Location::caller());
        self.record(
            Call::MultipleChoiceQuestion {
                text: text.to_owned(),
                points,
            },
            site,
        )
    }

    #[track_caller]
    pub fn single_choice_question(&mut self, text: &str, points: u32) -> &mut Self {
        let site = SourceLocation::from_caller(Location::caller());
        self.record(
            Call::SingleChoiceQuestion {
                text: text.to_owned(),
                points,
            },
            site,
        )
    }

    #[track_caller]
    pub fn open_answer_question(&mut self, text: &str, points: u32, expected: &str) -> &mut Self {
        let site = SourceLocation::from_caller(Location::caller());
        self.record(
            Call::OpenAnswerQuestion {
                text: text.to_owned(),
                points,
                expected: expected.to_owned(),
            },
            site,
        )
    }

    #[track_caller]
    pub fn pairing_question(&mut self, text: &str, points: u32) -> &mut Self {
        let site = SourceLocation::from_caller(Location::caller());
        self.record(
            Call::PairingQuestion {
                text: text.to_owned(),
                points,
            },
            site,
        )
    }

    #[track_caller]
    pub fn correct_answer(&mut self, text: &str) -> &mut Self {
        let site = SourceLocation::from_caller(Location::caller());
        self.record(Call::CorrectAnswer { text: text.to_owned() }, site)
    }

    #[track_caller]
    pub fn incorrect_answer(&mut self, text: &str) -> &mut Self {
        let site = SourceLocation::from_caller(Location::caller());
        self.record(Call::IncorrectAnswer { text: text.to_owned() }, site)
    }

    #[track_caller]
    pub fn pair(&mut self, left: &str, right: &str) -> &mut Self {
        let site = SourceLocation::from_caller(Location::caller());
        self.record(
            Call::Pair {
                left: left.to_owned(),
                right: right.to_owned(),
            },
            site,
        )
    }

    #[track_caller]
    pub fn run_test(&mut self) -> &mut Self {
        let site = SourceLocation::from_caller(Location::caller());
        self.record(Call::RunTest, site)
    }

    /// Finishes the sentence. Yields the model when the sentence was
    /// finalized with `run_test` and validation found no errors; otherwise
    /// every recorded and validation diagnostic.
    pub fn compose(self) -> Result<Composed, Vec<Diagnostic>> {
        let mut diagnostics = self.errors;
        if self.phase == Phase::Empty {
            diagnostics.push(Diagnostic::error(
                Code::NotFinalized,
                "The sentence is empty; start it with create_test",
            ));
            return Err(diagnostics);
        }
        if self.phase != Phase::Finalized {
            diagnostics.push(Diagnostic::error(
                Code::NotFinalized,
                "The test is not finished; end it with run_test",
            ));
        }
        diagnostics.extend(validate_test(&self.model, &self.origins));
        if has_errors(&diagnostics) {
            return Err(diagnostics);
        }
        Ok(Composed {
            model: self.model,
            origins: self.origins,
            warnings: diagnostics,
        })
    }
}

/// A sentence written as host-language code, in the style of a class
/// overriding `define()`.
pub trait Sentence {
    fn define(&self, t: &mut TestBuilder);

    fn compose(&self) -> Result<Composed, Vec<Diagnostic>> {
        let mut builder = TestBuilder::new();
        self.define(&mut builder);
        builder.compose()
    }
}
