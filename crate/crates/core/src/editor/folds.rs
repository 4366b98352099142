//! Fold markers and the guarded (read-only) sections derived from them.
//!
//! Two marker dialects are recognized inside host line comments:
//!
//! ```text
//! // <editor-fold desc="Start defining test here" defaultstate="collapsed">
//! ...
//! // </editor-fold>
//!
//! // EDSLAddon_start_fold "Start defining test here"
//! ...
//! // EDSLAddon_end_fold
//! ```
//!
//! `EDSLAddon` folds are guarded and always collapsed by default. A fold
//! covers its marker lines inclusive, line break of the last line included.
//! Folds never nest or overlap: a start marker inside an open fold of the
//! same dialect is rejected, and an `editor-fold` overlapping a guarded fold
//! is dropped in favor of the guarded one.

use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::document::{Document, DocumentError, Edit, Position, Region};
use super::lexer::{tokenize_line, TokenKind};
use super::profile::HostProfile;
use crate::diagnostics::{Code, Diagnostic, SourceLocation};

static ATTRIBUTE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r#"([A-Za-z_-]+)\s*=\s*"([^"]*)""#).unwrap());

const GUARD_START: &str = "EDSLAddon_start_fold";
const GUARD_END: &str = "EDSLAddon_end_fold";
const FOLD_START: &str = "<editor-fold";
const FOLD_END: &str = "</editor-fold>";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldSpec {
    pub region: Region,
    pub first_line: u32,
    pub last_line: u32,
    pub description: String,
    pub default_collapsed: bool,
    pub guarded: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FoldAnalysis {
    pub folds: Vec<FoldSpec>,
    pub diagnostics: Vec<Diagnostic>,
}

impl FoldAnalysis {
    pub fn guarded_regions(&self) -> Vec<Region> {
        self.folds.iter().filter(|f| f.guarded).map(|f| f.region).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dialect {
    EditorFold,
    Guarded,
}

enum Marker {
    Start {
        dialect: Dialect,
        description: String,
        collapsed: bool,
    },
    End(Dialect),
}

fn parse_marker(body: &str) -> Option<Marker> {
    let body = body.trim();
    if let Some(rest) = body.strip_prefix(GUARD_START) {
        let rest = rest.trim();
        let description = rest
            .strip_prefix('"')
            .and_then(|r| r.split_once('"'))
            .map(|(d, _)| d.to_owned())
            .unwrap_or_else(|| rest.to_owned());
        return Some(Marker::Start {
            dialect: Dialect::Guarded,
            description,
            collapsed: true,
        });
    }
    if body.starts_with(GUARD_END) {
        return Some(Marker::End(Dialect::Guarded));
    }
    if body.starts_with(FOLD_END) {
        return Some(Marker::End(Dialect::EditorFold));
    }
    if let Some(rest) = body.strip_prefix(FOLD_START) {
        let mut description = String::new();
        let mut collapsed = false;
        for caps in ATTRIBUTE.captures_iter(rest) {
            match &caps[1] {
                "desc" => description = caps[2].to_owned(),
                "defaultstate" => collapsed = &caps[2] == "collapsed",
                _ => {}
            }
        }
        return Some(Marker::Start {
            dialect: Dialect::EditorFold,
            description,
            collapsed,
        });
    }
    None
}

fn marker_site(doc: &Document, line: u32, column: u32) -> SourceLocation {
    SourceLocation::new(doc.uri.clone(), line + 1)
        .and_then(|l| l.with_column(column + 1))
        .expect("1-based")
}

/// Region of whole lines `first..=last`, including the final line break
/// when one follows.
pub fn line_span(doc: &Document, first: u32, last: u32) -> Region {
    let end = if last + 1 < doc.line_count() {
        Position::new(last + 1, 0)
    } else {
        Position::new(last, doc.line_len(last).unwrap_or(0))
    };
    Region::new(Position::new(first, 0), end)
}

struct OpenFold {
    line: u32,
    column: u32,
    description: String,
    collapsed: bool,
}

pub fn compute_folds(doc: &Document, profile: &HostProfile) -> FoldAnalysis {
    let mut analysis = FoldAnalysis::default();
    let mut open: [Option<OpenFold>; 2] = [None, None];
    let mut guarded = Vec::new();
    let mut plain = Vec::new();

    for (index, line) in doc.lines().enumerate() {
        let index = index as u32;
        let Some(comment) = tokenize_line(line, profile)
            .into_iter()
            .find(|t| t.kind == TokenKind::Comment)
        else {
            continue;
        };
        let Some(marker) = comment.comment_body(profile).and_then(parse_marker) else {
            continue;
        };
        match marker {
            Marker::Start {
                dialect,
                description,
                collapsed,
            } => {
                let slot = &mut open[dialect as usize];
                if let Some(outer) = slot {
                    analysis.diagnostics.push(
                        Diagnostic::error(
                            Code::NestedFold,
                            format!(
                                "Folds cannot be nested; the fold opened on line {} is still open",
                                outer.line + 1
                            ),
                        )
                        .at(Some(marker_site(doc, index, comment.start))),
                    );
                } else {
                    *slot = Some(OpenFold {
                        line: index,
                        column: comment.start,
                        description,
                        collapsed,
                    });
                }
            }
            Marker::End(dialect) => match open[dialect as usize].take() {
                Some(start) => {
                    let fold = FoldSpec {
                        region: line_span(doc, start.line, index),
                        first_line: start.line,
                        last_line: index,
                        description: start.description,
                        default_collapsed: start.collapsed,
                        guarded: dialect == Dialect::Guarded,
                    };
                    match dialect {
                        Dialect::Guarded => guarded.push(fold),
                        Dialect::EditorFold => plain.push(fold),
                    }
                }
                None => analysis.diagnostics.push(
                    Diagnostic::error(
                        Code::UnmatchedMarker,
                        "This fold end marker has no matching start marker",
                    )
                    .at(Some(marker_site(doc, index, comment.start))),
                ),
            },
        }
    }
    for start in open.into_iter().flatten() {
        analysis.diagnostics.push(
            Diagnostic::error(Code::UnmatchedMarker, "This fold start marker is never closed").at(Some(marker_site(
                doc,
                start.line,
                start.column,
            ))),
        );
    }

    for fold in plain {
        let clash = guarded
            .iter()
            .any(|g: &FoldSpec| fold.first_line <= g.last_line && g.first_line <= fold.last_line);
        if clash {
            analysis.diagnostics.push(
                Diagnostic::warning(
                    Code::OverlappingFold,
                    "This fold overlaps a guarded fold and is ignored",
                )
                .at(Some(marker_site(doc, fold.first_line, 0))),
            );
        } else {
            analysis.folds.push(fold);
        }
    }
    analysis.folds.extend(guarded);
    analysis.folds.sort_by_key(|f| f.first_line);
    analysis
        .diagnostics
        .sort_by_key(|d| d.location.as_ref().map(SourceLocation::line));
    analysis
}

/// Guarded regions, or the marker errors that prevent computing them reliably.
pub fn guarded_regions(doc: &Document, profile: &HostProfile) -> Result<Vec<Region>, Vec<Diagnostic>> {
    let analysis = compute_folds(doc, profile);
    if crate::diagnostics::has_errors(&analysis.diagnostics) {
        return Err(analysis.diagnostics);
    }
    Ok(analysis.guarded_regions())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EditCheck {
    Allowed,
    GuardViolation { region: Region },
}

/// Whether `edit` would touch a guarded region.
///
/// A replacement conflicts when its range overlaps a region. A pure
/// insertion conflicts only when it lands strictly inside one, so typing
/// right before or right after a guarded section is fine.
pub fn edit_conflict(regions: &[Region], edit: &Edit) -> Option<Region> {
    let range = edit.range;
    regions.iter().copied().find(|region| {
        if range.is_empty() {
            region.start < range.start && range.start < region.end
        } else {
            range.start < region.end && region.start < range.end
        }
    })
}

pub fn check_edit(doc: &Document, edit: &Edit, profile: &HostProfile) -> Result<EditCheck, DocumentError> {
    doc.check_range(edit.range)?;
    let regions = compute_folds(doc, profile).guarded_regions();
    Ok(match edit_conflict(&regions, edit) {
        Some(region) => EditCheck::GuardViolation { region },
        None => EditCheck::Allowed,
    })
}

/// Maximal non-empty spans not covered by any guarded region.
pub fn editable_regions(doc: &Document, guarded: &[Region]) -> Vec<Region> {
    let mut sorted = guarded.to_vec();
    sorted.sort_by_key(|r| r.start);
    let mut out = Vec::new();
    let mut cursor = Position::new(0, 0);
    for region in sorted {
        if cursor < region.start {
            out.push(Region::new(cursor, region.start));
        }
        cursor = cursor.max(region.end);
    }
    if cursor < doc.end() {
        out.push(Region::new(cursor, doc.end()));
    }
    out
}
