//! Syntactic noise measurement.
//!
//! A line is significant when it holds code: it is neither blank nor a
//! comment alone. The sentence span is the smallest run of lines holding
//! every vocabulary call. Significant lines outside the span are
//! surrounding noise; inside it, each code token is either domain content
//! (call names, string contents, numbers) or interlacing noise (quotes,
//! parentheses, commas, terminators and any other host syntax).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::document::Document;
use super::lexer::{tokenize_line, Token, TokenKind};
use super::profile::HostProfile;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoiseReport {
    pub surrounding_loc: u32,
    pub interlacing_tokens: u32,
    pub domain_tokens: u32,
    pub total_significant_loc: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NoiseError {
    #[error("no Test-me! sentence found: the document contains no vocabulary call")]
    NoSentence,
}

pub fn is_significant(tokens: &[Token]) -> bool {
    tokens.iter().any(Token::is_code)
}

pub fn analyze_noise(doc: &Document, profile: &HostProfile) -> Result<NoiseReport, NoiseError> {
    let lines: Vec<Vec<Token>> = doc.lines().map(|l| tokenize_line(l, profile)).collect();
    let is_call = |t: &Token| t.kind == TokenKind::Ident && profile.is_vocabulary(&t.text);
    let call_lines: Vec<usize> = lines
        .iter()
        .enumerate()
        .filter(|(_, tokens)| tokens.iter().any(is_call))
        .map(|(i, _)| i)
        .collect();
    let (Some(&first), Some(&last)) = (call_lines.first(), call_lines.last()) else {
        return Err(NoiseError::NoSentence);
    };

    let mut report = NoiseReport::default();
    for (index, tokens) in lines.iter().enumerate() {
        if !is_significant(tokens) {
            continue;
        }
        report.total_significant_loc += 1;
        if index < first || index > last {
            report.surrounding_loc += 1;
            continue;
        }
        for token in tokens.iter().filter(|t| t.is_code()) {
            match token.kind {
                TokenKind::Ident if is_call(token) => report.domain_tokens += 1,
                TokenKind::Number => report.domain_tokens += 1,
                TokenKind::Str { terminated } => {
                    report.interlacing_tokens += if terminated { 2 } else { 1 };
                    if token.string_value().is_some_and(|s| !s.is_empty()) {
                        report.domain_tokens += 1;
                    }
                }
                _ => report.interlacing_tokens += 1,
            }
        }
    }
    Ok(report)
}

impl fmt::Display for NoiseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "surrounding_loc: {}", self.surrounding_loc)?;
        writeln!(f, "interlacing_tokens: {}", self.interlacing_tokens)?;
        writeln!(f, "domain_tokens: {}", self.domain_tokens)?;
        writeln!(f, "total_significant_loc: {}", self.total_significant_loc)
    }
}

pub const CSV_HEADER: [&str; 6] = [
    "file",
    "profile",
    "surrounding_loc",
    "interlacing_tokens",
    "domain_tokens",
    "total_significant_loc",
];

/// Writes reports as CSV with a header row.
pub fn write_csv<W: std::io::Write>(out: W, rows: &[(&str, &str, NoiseReport)]) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for (file, profile, r) in rows {
        writer.write_record([
            file.to_string(),
            profile.to_string(),
            r.surrounding_loc.to_string(),
            r.interlacing_tokens.to_string(),
            r.domain_tokens.to_string(),
            r.total_significant_loc.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}
