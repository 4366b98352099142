//! Builds the Biology test, prints its canonical JSON and scores a few
//! attempts.

use std::collections::BTreeSet;

use testme_core::biology::BiologyTest;
use testme_core::{score, serialize_model, Response, ResponseSet, Sentence};

fn main() {
    let composed = match BiologyTest.compose() {
        Ok(c) => c,
        Err(diagnostics) => {
            for d in diagnostics {
                eprintln!("{}", testme_core::format_diagnostic(&d));
            }
            std::process::exit(1);
        }
    };
    let model = composed.model;
    print!("{}", serialize_model(&model));

    let mut partial = ResponseSet::new();
    partial
        .answer(0, Response::Choice(BTreeSet::from([1, 3])))
        .answer(1, Response::Open(" meow ".into()));
    for (label, responses) in [
        ("all correct", ResponseSet::all_correct(&model)),
        ("two of three", partial),
        ("blank", ResponseSet::new()),
    ] {
        let s = score(&model, &responses).expect("responses fit the model");
        let verdict = if s.passed { "passed" } else { "not passed" };
        println!("{label}: {}/{} {verdict}", s.earned, s.total);
    }
}
