mod common;

use common::gen::{brute_force_conflict, legal_sequences};
use proptest::prelude::*;
use testme_core::builder::{next_valid_calls, transition, Call};
use testme_core::editor::lexer::tokenize_line;
use testme_core::editor::noise::is_significant;
use testme_core::editor::{
    analyze_noise, check_edit, complete, compute_folds, editable_regions, render_call, testme_skeleton, Document, Edit,
    EditCheck, HostProfile, Position, Region,
};
use testme_core::{CallKind, Phase};

const RUBY_SENTENCE: &str = include_str!("../fixtures/biology.rb");
const JAVA_SENTENCE: &str = include_str!("../fixtures/BiologyTest.java");

fn skeleton() -> Document {
    Document::new("mem://BiologyTest.java", testme_skeleton("BiologyTest", "test"))
}

#[test]
fn noise_on_the_fixtures() {
    let ruby = analyze_noise(&Document::new("biology.rb", RUBY_SENTENCE), &HostProfile::ruby()).unwrap();
    assert_eq!(ruby.surrounding_loc, 1);
    let java = analyze_noise(&Document::new("BiologyTest.java", JAVA_SENTENCE), &HostProfile::java()).unwrap();
    assert_eq!(java.surrounding_loc, 11);
    assert!(java.interlacing_tokens > ruby.interlacing_tokens);
}

#[test]
fn skeleton_hides_ten_significant_lines_behind_two_descriptions() {
    let doc = skeleton();
    let java = HostProfile::java();
    let analysis = compute_folds(&doc, &java);
    assert!(analysis.diagnostics.is_empty());
    let guards: Vec<_> = analysis.folds.iter().filter(|f| f.guarded).collect();
    assert_eq!(guards.len(), 2);
    assert!(guards.iter().all(|f| f.default_collapsed));
    let hidden: usize = guards
        .iter()
        .map(|f| {
            (f.first_line..=f.last_line)
                .filter(|&l| is_significant(&tokenize_line(doc.line(l).unwrap(), &java)))
                .count()
        })
        .sum();
    assert_eq!(hidden, 10);
    assert_eq!(guards.iter().filter(|f| !f.description.is_empty()).count(), 2);
}

#[test]
fn body_is_the_only_editable_region() {
    let doc = skeleton();
    let guards = compute_folds(&doc, &HostProfile::java()).guarded_regions();
    let editable = editable_regions(&doc, &guards);
    assert_eq!(editable.len(), 1);
    let body = doc.slice(editable[0]).unwrap();
    assert!(body.starts_with("        create_test(\"My test\", 50);"));
    assert!(body.ends_with("correct_answer(\"Sheep\");\n"));
}

fn position(doc: &Document, raw: (u32, u32)) -> Position {
    let line = raw.0 % doc.line_count();
    Position::new(line, raw.1 % (doc.line_len(line).unwrap() + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn guard_check_agrees_with_brute_force(a in (0u32..64, 0u32..128), b in (0u32..64, 0u32..128), insert in any::<bool>()) {
        let doc = skeleton();
        let java = HostProfile::java();
        let (p, q) = (position(&doc, a), position(&doc, b));
        let range = if insert { Region::new(p, p) } else { Region::new(p.min(q), p.max(q)) };
        let edit = Edit { range, new_text: "x".into() };
        let guards = compute_folds(&doc, &java).guarded_regions();
        let expected = match brute_force_conflict(&doc, &guards, &edit) {
            Some(region) => EditCheck::GuardViolation { region },
            None => EditCheck::Allowed,
        };
        prop_assert_eq!(check_edit(&doc, &edit, &java).unwrap(), expected);
    }
}

fn sentence_text(kinds: &[CallKind], profile: &HostProfile) -> String {
    kinds
        .iter()
        .map(|k| render_call(&Call::sample(*k), profile) + "\n")
        .collect()
}

#[test]
fn completion_follows_the_transition_table() {
    for profile in [HostProfile::java(), HostProfile::ruby()] {
        for seq in legal_sequences(6) {
            let doc = Document::new("mem://s", sentence_text(&seq, &profile));
            let c = complete(&doc, doc.end(), &profile).unwrap();
            let phase = seq.iter().fold(Phase::Empty, |p, k| transition(p, *k).unwrap());
            assert_eq!(c.phase, phase);
            let names: Vec<_> = c.relevant.iter().map(|i| i.descriptor.kind).collect();
            let expected: Vec<_> = next_valid_calls(phase).iter().map(|d| d.kind).collect();
            assert_eq!(names, expected, "{seq:?}");
            assert_eq!(c.relevant.len() + c.other.len(), CallKind::ALL.len());
        }
    }
}

#[test]
fn completion_in_a_blank_document_and_after_run_test() {
    let java = HostProfile::java();
    let empty = Document::new("mem://e", "");
    let c = complete(&empty, Position::new(0, 0), &java).unwrap();
    assert_eq!(c.relevant.len(), 1);
    assert_eq!(c.relevant[0].descriptor.kind, CallKind::CreateTest);
    let done = Document::new(
        "mem://d",
        sentence_text(
            &[CallKind::CreateTest, CallKind::OpenAnswerQuestion, CallKind::RunTest],
            &java,
        ),
    );
    assert!(complete(&done, done.end(), &java).unwrap().relevant.is_empty());
}
