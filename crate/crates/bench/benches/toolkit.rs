use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use testme_bench::{long_java_document, synthetic_model};
use testme_core::compiler::{emit_html, RunnerAssets};
use testme_core::editor::{analyze_noise, complete, compute_folds, validate_document, HostProfile};
use testme_core::{biology::BiologyTest, parse_model, serialize_model, Sentence};

fn builder(c: &mut Criterion) {
    c.bench_function("compose biology sentence", |b| {
        b.iter(|| black_box(BiologyTest.compose()))
    });
}

fn codec(c: &mut Criterion) {
    let model = synthetic_model(200);
    let json = serialize_model(&model);
    c.bench_function("serialize 200 questions", |b| {
        b.iter(|| serialize_model(black_box(&model)))
    });
    c.bench_function("parse 200 questions", |b| {
        b.iter(|| parse_model(black_box(&json)).unwrap())
    });
    let assets = RunnerAssets::bundled();
    c.bench_function("emit html 200 questions", |b| {
        b.iter(|| emit_html(black_box(&model), &assets).unwrap())
    });
}

fn editor(c: &mut Criterion) {
    let java = HostProfile::java();
    let doc = long_java_document(300);
    let end = doc.end();
    c.bench_function("folds 900-line document", |b| {
        b.iter(|| compute_folds(black_box(&doc), &java))
    });
    c.bench_function("validate 900-line document", |b| {
        b.iter(|| validate_document(black_box(&doc), &java))
    });
    c.bench_function("noise 900-line document", |b| {
        b.iter(|| analyze_noise(black_box(&doc), &java).unwrap())
    });
    let line = end.line.saturating_sub(8);
    c.bench_function("complete near end", |b| {
        b.iter(|| complete(black_box(&doc), testme_core::editor::Position::new(line, 0), &java).unwrap())
    });
}

criterion_group!(benches, builder, codec, editor);
criterion_main!(benches);
