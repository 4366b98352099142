use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::builder::vocabulary;

/// How vocabulary calls are written in the host language.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CallSyntax {
    /// `name("text", 10);`
    #[default]
    Parenthesized,
    /// `name "text", 10`
    Bare,
}

/// Lexical facts about a host language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HostProfile {
    pub name: String,
    pub line_comment: String,
    pub string_delimiters: Vec<char>,
    pub statement_terminator: Option<char>,
    #[serde(default)]
    pub call_syntax: CallSyntax,
    pub dsl_vocabulary: BTreeSet<String>,
}

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("invalid profile JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("profile '{0}' has an empty line comment")]
    EmptyLineComment(String),
    #[error("profile '{name}' vocabulary does not match the language: missing {missing:?}, unknown {unknown:?}")]
    Vocabulary {
        name: String,
        missing: Vec<String>,
        unknown: Vec<String>,
    },
    #[error("no built-in profile named '{0}' (available: java, ruby)")]
    UnknownBuiltin(String),
}

const JAVA: &str = include_str!("../../profiles/java.json");
const RUBY: &str = include_str!("../../profiles/ruby.json");

impl HostProfile {
    pub fn from_json(text: &str) -> Result<Self, ProfileError> {
        let profile: HostProfile = serde_json::from_str(text)?;
        profile.check()?;
        Ok(profile)
    }

    fn check(&self) -> Result<(), ProfileError> {
        if self.line_comment.is_empty() {
            return Err(ProfileError::EmptyLineComment(self.name.clone()));
        }
        let expected: BTreeSet<String> = vocabulary().map(str::to_owned).collect();
        if self.dsl_vocabulary != expected {
            return Err(ProfileError::Vocabulary {
                name: self.name.clone(),
                missing: expected.difference(&self.dsl_vocabulary).cloned().collect(),
                unknown: self.dsl_vocabulary.difference(&expected).cloned().collect(),
            });
        }
        Ok(())
    }

    pub fn java() -> Self {
        Self::from_json(JAVA).expect("bundled java profile is valid")
    }

    pub fn ruby() -> Self {
        Self::from_json(RUBY).expect("bundled ruby profile is valid")
    }

    pub fn builtin(name: &str) -> Result<Self, ProfileError> {
        match name {
            "java" => Ok(Self::java()),
            "ruby" => Ok(Self::ruby()),
            other => Err(ProfileError::UnknownBuiltin(other.to_owned())),
        }
    }

    pub fn is_vocabulary(&self, word: &str) -> bool {
        self.dsl_vocabulary.contains(word)
    }

    /// Quote character used when generating string arguments.
    pub fn quote(&self) -> char {
        self.string_delimiters.first().copied().unwrap_or('"')
    }
}
