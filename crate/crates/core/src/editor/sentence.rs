//! Recovers the vocabulary calls written in a host document.

use super::document::{Document, Position};
use super::lexer::{tokenize_line, Token, TokenKind};
use super::profile::{CallSyntax, HostProfile};
use crate::builder::{ArgValue, Call, CallKind, TestBuilder};
use crate::diagnostics::{Code, Diagnostic, SourceLocation};

/// One vocabulary call found in a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScannedCall {
    pub kind: CallKind,
    /// Position of the call name.
    pub position: Position,
    /// Arguments, or why they could not be read.
    pub args: Result<Vec<ArgValue>, String>,
}

impl ScannedCall {
    pub fn site(&self, uri: &str) -> SourceLocation {
        SourceLocation::new(uri, self.position.line + 1)
            .and_then(|l| l.with_column(self.position.column + 1))
            .expect("1-based")
    }
}

/// Vocabulary calls in document order whose names start before `until`.
pub fn scan_calls(doc: &Document, profile: &HostProfile, until: Option<Position>) -> Vec<ScannedCall> {
    let mut calls = Vec::new();
    for (index, line) in doc.lines().enumerate() {
        let index = index as u32;
        if until.is_some_and(|p| index > p.line) {
            break;
        }
        let tokens: Vec<Token> = tokenize_line(line, profile)
            .into_iter()
            .filter(Token::is_code)
            .collect();
        for (i, token) in tokens.iter().enumerate() {
            if token.kind != TokenKind::Ident {
                continue;
            }
            let Some(kind) = CallKind::from_name(&token.text) else {
                continue;
            };
            let position = Position::new(index, token.start);
            if until.is_some_and(|p| position >= p) {
                break;
            }
            calls.push(ScannedCall {
                kind,
                position,
                args: read_args(&tokens[i + 1..], profile),
            });
        }
    }
    calls
}

fn read_args(tokens: &[Token], profile: &HostProfile) -> Result<Vec<ArgValue>, String> {
    let is_punct = |t: &Token, c: char| t.kind == TokenKind::Punct && t.text.starts_with(c);
    let mut rest = tokens;
    let parenthesized = match profile.call_syntax {
        CallSyntax::Parenthesized => true,
        CallSyntax::Bare => rest.first().is_some_and(|t| is_punct(t, '(')),
    };
    if parenthesized {
        match rest.first() {
            Some(t) if is_punct(t, '(') => rest = &rest[1..],
            _ => return Err("expected '(' after the call name".into()),
        }
    }

    let mut args = Vec::new();
    let mut expect_value = true;
    loop {
        let Some(token) = rest.first() else {
            if parenthesized {
                return Err("missing ')'".into());
            }
            break;
        };
        if parenthesized && is_punct(token, ')') {
            if expect_value && !args.is_empty() {
                return Err("missing argument after ','".into());
            }
            break;
        }
        if !parenthesized && profile.statement_terminator.is_some_and(|c| is_punct(token, c)) {
            break;
        }
        if expect_value {
            let (value, used) = match token.kind {
                TokenKind::Str { terminated: true } => (ArgValue::Text(token.string_value().unwrap_or_default()), 1),
                TokenKind::Str { terminated: false } => return Err("unterminated text".into()),
                TokenKind::Number => (
                    ArgValue::Integer(token.text.parse().map_err(|_| "number too large")?),
                    1,
                ),
                TokenKind::Punct if token.text == "-" && rest.get(1).is_some_and(|t| t.kind == TokenKind::Number) => {
                    let n: i64 = rest[1].text.parse().map_err(|_| "number too large")?;
                    (ArgValue::Integer(-n), 2)
                }
                _ => {
                    if !parenthesized && args.is_empty() {
                        // A bare call with no arguments followed by other code.
                        break;
                    }
                    return Err(format!("unexpected '{}'", token.text));
                }
            };
            args.push(value);
            rest = &rest[used..];
            expect_value = false;
        } else if is_punct(token, ',') {
            rest = &rest[1..];
            expect_value = true;
        } else {
            return Err(format!("expected ',' but found '{}'", token.text));
        }
    }
    Ok(args)
}

fn quote_text(text: &str, quote: char) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push(quote);
    for c in text.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if c == quote => {
                out.push('\\');
                out.push(c);
            }
            c => out.push(c),
        }
    }
    out.push(quote);
    out
}

/// Writes `call` as one statement in the host's syntax.
pub fn render_call(call: &Call, profile: &HostProfile) -> String {
    let quote = profile.quote();
    let args: Vec<String> = call
        .args()
        .iter()
        .map(|a| match a {
            ArgValue::Text(t) => quote_text(t, quote),
            ArgValue::Integer(n) => n.to_string(),
        })
        .collect();
    let name = call.kind().name();
    match profile.call_syntax {
        CallSyntax::Parenthesized => {
            let end = profile.statement_terminator.map(String::from).unwrap_or_default();
            format!("{name}({}){end}", args.join(", "))
        }
        CallSyntax::Bare if args.is_empty() => name.to_owned(),
        CallSyntax::Bare => format!("{name} {}", args.join(", ")),
    }
}

/// Builds the sentence found in `doc` and reports sequencing, argument and
/// domain errors, each located at the offending call.
///
/// Host programs finalize a sentence when it ends, so a missing `run_test`
/// is supplied at the last call.
pub fn validate_document(doc: &Document, profile: &HostProfile) -> Vec<Diagnostic> {
    let calls = scan_calls(doc, profile, None);
    if calls.is_empty() {
        return Vec::new();
    }
    let mut builder = TestBuilder::new();
    let mut diagnostics = Vec::new();
    for call in &calls {
        let site = call.site(&doc.uri);
        let result = match &call.args {
            Ok(args) => builder.apply_args(call.kind, args.clone(), site),
            Err(reason) => Err(Diagnostic::error(
                Code::MalformedCall,
                format!("Cannot read the call to {}: {reason}", call.kind),
            )
            .at(Some(site))),
        };
        if let Err(d) = result {
            diagnostics.push(d);
        }
    }
    if !matches!(
        builder.phase(),
        crate::builder::Phase::Finalized | crate::builder::Phase::Empty
    ) {
        let last = calls.last().expect("non-empty").site(&doc.uri);
        let _ = builder.apply(crate::builder::Call::RunTest, last);
    }
    match builder.compose() {
        Ok(composed) => diagnostics.extend(composed.warnings),
        Err(found) => diagnostics.extend(found),
    }
    diagnostics
}
