//! Compiles a validated test into one self-contained HTML page.
//!
//! The page carries the canonical model as JSON in
//! `<script type="application/json" id="testme-model">`, inlines the runner
//! script and style, and marks every question `q<i>` and every answer
//! control `q<i>a<j>` (0-based). Output depends only on the model and the
//! assets: compiling the same pair twice gives identical bytes.

mod assets;

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::codec::{decode_model, serialize_model_compact, CodecError};
use crate::diagnostics::{Diagnostic, OriginRegistry};
use crate::model::{validate_test, QuestionKind, TestModel};

pub use assets::{asset_hash, RunnerAssets};

pub const MODEL_ELEMENT_ID: &str = "testme-model";

#[derive(Debug, Error)]
pub enum CompileError {
    #[error("refusing to compile an invalid test: {0}")]
    Invalid(Box<Diagnostic>),
    #[error("runner assets are stale: recorded hash {recorded}, actual {actual}")]
    StaleAssets { recorded: String, actual: String },
    #[error("runner assets cannot be inlined: {0}")]
    UnsafeAsset(&'static str),
    #[error("no embedded test model found")]
    MissingModel,
    #[error("embedded test model is unreadable: {0}")]
    Embedded(#[from] CodecError),
}

/// Escapes text for element content and quoted attributes.
pub fn escape_html(text: &str) -> String {
    html_escape::encode_quoted_attribute(text).into_owned()
}

/// Canonical JSON made safe for a script element. `<`, `>` and `&` only
/// occur inside JSON strings, where the `\u` escapes decode to the same text.
fn embeddable_json(model: &TestModel) -> String {
    serialize_model_compact(model)
        .replace('<', "\\u003c")
        .replace('>', "\\u003e")
        .replace('&', "\\u0026")
}

/// Order in which the right-hand sides of each pairing question are
/// offered. Seeded from the model so the order is stable across builds.
fn pairing_orders(model: &TestModel) -> Vec<Vec<usize>> {
    let seed: [u8; 32] = Sha256::digest(serialize_model_compact(model).as_bytes()).into();
    let mut rng = ChaCha8Rng::from_seed(seed);
    model
        .questions
        .iter()
        .map(|q| match &q.kind {
            QuestionKind::Pairing { pairs } => {
                let mut order: Vec<usize> = (0..pairs.len()).collect();
                order.shuffle(&mut rng);
                order
            }
            _ => Vec::new(),
        })
        .collect()
}

fn points_label(points: u32) -> String {
    if points == 1 {
        "1 point".to_owned()
    } else {
        format!("{points} points")
    }
}

pub fn emit_html(model: &TestModel, assets: &RunnerAssets) -> Result<String, CompileError> {
    if let Some(first) = validate_test(model, &OriginRegistry::new())
        .into_iter()
        .find(Diagnostic::is_error)
    {
        return Err(CompileError::Invalid(Box::new(first)));
    }
    let title = escape_html(&model.title);
    let orders = pairing_orders(model);
    let mut h = String::new();
    h.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n");
    h.push_str("<meta name=\"viewport\" content=\"width=device-width, initial-scale=1\">\n");
    let _ = writeln!(h, "<meta name=\"testme-assets\" content=\"{}\">", assets.asset_hash());
    let _ = writeln!(h, "<title>{title}</title>");
    let _ = writeln!(h, "<style>\n{}</style>", assets.style());
    h.push_str("</head>\n<body>\n<main id=\"testme\">\n");
    let _ = writeln!(h, "<h1>{title}</h1>");
    let _ = writeln!(
        h,
        "<p class=\"threshold\">Pass mark: {}%</p>",
        model.pass_threshold_percent
    );
    h.push_str("<form id=\"testme-form\">\n");
    for (i, q) in model.questions.iter().enumerate() {
        let _ = writeln!(
            h,
            "<section class=\"question\" id=\"q{i}\" data-kind=\"{}\" data-points=\"{}\">",
            q.kind.tag(),
            q.points
        );
        let _ = writeln!(
            h,
            "<h2>{}. {} <span class=\"points\">({})</span></h2>",
            i + 1,
            escape_html(&q.text),
            points_label(q.points)
        );
        match &q.kind {
            QuestionKind::MultipleChoice { answers } | QuestionKind::SingleChoice { answers } => {
                let input = if matches!(q.kind, QuestionKind::MultipleChoice { .. }) {
                    "checkbox"
                } else {
                    "radio"
                };
                h.push_str("<ul class=\"answers\">\n");
                for (j, a) in answers.iter().enumerate() {
                    let _ = writeln!(
                        h,
                        "<li><label><input type=\"{input}\" name=\"q{i}\" value=\"{j}\" id=\"q{i}a{j}\"> {}</label></li>",
                        escape_html(&a.text)
                    );
                }
                h.push_str("</ul>\n");
            }
            QuestionKind::OpenAnswer { .. } => {
                let _ = writeln!(
                    h,
                    "<p><input type=\"text\" name=\"q{i}\" id=\"q{i}a0\" autocomplete=\"off\" aria-label=\"Answer\"></p>"
                );
            }
            QuestionKind::Pairing { pairs } => {
                for (j, p) in pairs.iter().enumerate() {
                    let _ = write!(
                        h,
                        "<div class=\"pair\"><label for=\"q{i}a{j}\">{}</label> <select id=\"q{i}a{j}\" name=\"q{i}a{j}\"><option value=\"\">Choose</option>",
                        escape_html(&p.left)
                    );
                    for &k in &orders[i] {
                        let _ = write!(h, "<option value=\"{k}\">{}</option>", escape_html(&pairs[k].right));
                    }
                    h.push_str("</select></div>\n");
                }
            }
        }
        h.push_str("</section>\n");
    }
    h.push_str("<button type=\"submit\" id=\"testme-submit\">Evaluate</button>\n</form>\n");
    h.push_str("<p id=\"testme-result\" role=\"status\"></p>\n</main>\n");
    let _ = writeln!(
        h,
        "<script type=\"application/json\" id=\"{MODEL_ELEMENT_ID}\">{}</script>",
        embeddable_json(model)
    );
    let _ = writeln!(h, "<script>\n{}</script>", assets.script());
    h.push_str("</body>\n</html>\n");
    Ok(h)
}

/// Reads back the model embedded by [`emit_html`].
pub fn extract_embedded_model(html: &str) -> Result<TestModel, CompileError> {
    let open = format!("<script type=\"application/json\" id=\"{MODEL_ELEMENT_ID}\">");
    let start = html.find(&open).ok_or(CompileError::MissingModel)? + open.len();
    let len = html[start..].find("</script>").ok_or(CompileError::MissingModel)?;
    Ok(decode_model(&html[start..start + len])?)
}
