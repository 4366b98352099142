//! Single-line tokenizer driven by a [`HostProfile`].
//!
//! Only the lexical facts the editor features need are recognized: line
//! comments, string literals, identifiers, integers and single-character
//! punctuation. Columns are character indices within the line.

use super::profile::HostProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Number,
    /// A string literal; `terminated` is false when the line ends first.
    Str {
        terminated: bool,
    },
    Punct,
    Comment,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// Source text of the token, quotes and comment leader included.
    pub text: String,
    pub start: u32,
    pub end: u32,
}

impl Token {
    pub fn is_code(&self) -> bool {
        self.kind != TokenKind::Comment
    }

    /// Comment body after the comment leader.
    pub fn comment_body<'a>(&'a self, profile: &HostProfile) -> Option<&'a str> {
        match self.kind {
            TokenKind::Comment => self.text.strip_prefix(profile.line_comment.as_str()),
            _ => None,
        }
    }

    /// Unescaped contents of a string literal.
    pub fn string_value(&self) -> Option<String> {
        let TokenKind::Str { terminated } = self.kind else {
            return None;
        };
        let mut chars: Vec<char> = self.text.chars().skip(1).collect();
        if terminated {
            chars.pop();
        }
        let mut out = String::with_capacity(chars.len());
        let mut iter = chars.into_iter();
        while let Some(c) = iter.next() {
            if c == '\\' {
                match iter.next() {
                    Some('n') => out.push('\n'),
                    Some('t') => out.push('\t'),
                    Some(other) => out.push(other),
                    None => out.push('\\'),
                }
            } else {
                out.push(c);
            }
        }
        Some(out)
    }
}

fn starts_with_at(chars: &[char], at: usize, needle: &[char]) -> bool {
    !needle.is_empty() && chars.len() >= at + needle.len() && chars[at..at + needle.len()] == *needle
}

pub fn tokenize_line(line: &str, profile: &HostProfile) -> Vec<Token> {
    let chars: Vec<char> = line.chars().collect();
    let comment: Vec<char> = profile.line_comment.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let text = |from: usize, to: usize| chars[from..to].iter().collect::<String>();

    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let kind = if c.is_whitespace() {
            i += 1;
            continue;
        } else if starts_with_at(&chars, i, &comment) {
            i = chars.len();
            TokenKind::Comment
        } else if profile.string_delimiters.contains(&c) {
            i += 1;
            let mut terminated = false;
            while i < chars.len() {
                if chars[i] == '\\' {
                    i += 2;
                    continue;
                }
                if chars[i] == c {
                    i += 1;
                    terminated = true;
                    break;
                }
                i += 1;
            }
            i = i.min(chars.len());
            TokenKind::Str { terminated }
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            TokenKind::Ident
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            TokenKind::Number
        } else {
            i += 1;
            TokenKind::Punct
        };
        tokens.push(Token {
            kind,
            text: text(start, i),
            start: start as u32,
            end: i as u32,
        });
    }
    tokens
}
