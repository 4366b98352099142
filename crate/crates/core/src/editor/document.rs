use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Zero-based line and column. Columns count Unicode scalar values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Position {
    pub line: u32,
    pub column: u32,
}

impl Position {
    pub const fn new(line: u32, column: u32) -> Self {
        Self { line, column }
    }
}

impl Ord for Position {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.line, self.column).cmp(&(other.line, other.column))
    }
}

impl PartialOrd for Position {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// End-exclusive span between two positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Region {
    pub start: Position,
    pub end: Position,
}

impl Region {
    pub fn new(start: Position, end: Position) -> Self {
        debug_assert!(start <= end, "region start after end");
        Self { start, end }
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edit {
    pub range: Region,
    pub new_text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("position {0} is outside the document")]
    OutOfBounds(Position),
    #[error("range {0} ends before it starts")]
    Inverted(Region),
    #[error("version {new} does not follow {current}")]
    StaleVersion { current: u64, new: u64 },
}

/// A text document. Lines are separated by `\n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub uri: String,
    text: String,
    version: u64,
}

impl Document {
    pub fn new(uri: impl Into<String>, text: impl Into<String>) -> Self {
        Self::with_version(uri, text, 0)
    }

    pub fn with_version(uri: impl Into<String>, text: impl Into<String>, version: u64) -> Self {
        Self {
            uri: uri.into(),
            text: text.into(),
            version,
        }
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn lines(&self) -> impl Iterator<Item = &str> {
        self.text.split('\n')
    }

    pub fn line_count(&self) -> u32 {
        self.text.matches('\n').count() as u32 + 1
    }

    pub fn line(&self, line: u32) -> Option<&str> {
        self.lines().nth(line as usize)
    }

    pub fn line_len(&self, line: u32) -> Option<u32> {
        self.line(line).map(|l| l.chars().count() as u32)
    }

    /// Position just past the last character.
    pub fn end(&self) -> Position {
        let last = self.line_count() - 1;
        Position::new(last, self.line_len(last).unwrap_or(0))
    }

    pub fn contains(&self, position: Position) -> bool {
        self.line_len(position.line).is_some_and(|len| position.column <= len)
    }

    /// Byte offset of `position`.
    pub fn offset(&self, position: Position) -> Result<usize, DocumentError> {
        let mut start = 0;
        for (index, line) in self.text.split('\n').enumerate() {
            if index as u32 == position.line {
                let column = position.column as usize;
                return match line.char_indices().nth(column) {
                    Some((byte, _)) => Ok(start + byte),
                    None if line.chars().count() == column => Ok(start + line.len()),
                    None => Err(DocumentError::OutOfBounds(position)),
                };
            }
            start += line.len() + 1;
        }
        Err(DocumentError::OutOfBounds(position))
    }

    pub fn check_range(&self, range: Region) -> Result<(), DocumentError> {
        if range.start > range.end {
            return Err(DocumentError::Inverted(range));
        }
        for p in [range.start, range.end] {
            if !self.contains(p) {
                return Err(DocumentError::OutOfBounds(p));
            }
        }
        Ok(())
    }

    pub fn slice(&self, range: Region) -> Result<&str, DocumentError> {
        self.check_range(range)?;
        Ok(&self.text[self.offset(range.start)?..self.offset(range.end)?])
    }

    /// Replaces `edit.range` and bumps the version.
    pub fn apply_edit(&mut self, edit: &Edit) -> Result<(), DocumentError> {
        self.check_range(edit.range)?;
        let start = self.offset(edit.range.start)?;
        let end = self.offset(edit.range.end)?;
        self.text.replace_range(start..end, &edit.new_text);
        self.version += 1;
        Ok(())
    }

    /// Replaces the whole text with a newer version.
    pub fn replace(&mut self, text: String, version: u64) -> Result<(), DocumentError> {
        if version <= self.version {
            return Err(DocumentError::StaleVersion {
                current: self.version,
                new: version,
            });
        }
        self.text = text;
        self.version = version;
        Ok(())
    }
}
