//! File templates with `${IDENT}` placeholders.
//!
//! A template on disk is a text file plus a sidecar manifest named
//! `<template>.manifest.json` naming its required placeholders:
//!
//! ```json
//! { "placeholders": ["NAME", "PACKAGE"] }
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

static PLACEHOLDER: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\$\{([^}]*)\}").unwrap());
static IDENT: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^[A-Za-z_][A-Za-z0-9_]*$").unwrap());

const TESTME_JAVA: &str = include_str!("../../templates/testme-java.template");
const TESTME_JAVA_MANIFEST: &str = include_str!("../../templates/testme-java.template.manifest.json");

#[derive(Debug, Error)]
pub enum TemplateError {
    #[error("no value given for placeholder {0}")]
    MissingValue(String),
    #[error("value given for unknown placeholder {0}")]
    UnknownPlaceholder(String),
    #[error("template uses placeholder {0} that its manifest does not declare")]
    Undeclared(String),
    #[error("'{0}' is not a valid placeholder name")]
    InvalidName(String),
    #[error("value of {0} contains placeholder syntax")]
    NestedPlaceholder(String),
    #[error("invalid template manifest: {0}")]
    Manifest(#[from] serde_json::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Serialize, Deserialize)]
struct Manifest {
    placeholders: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateDef {
    body: String,
    required: BTreeSet<String>,
}

impl TemplateDef {
    pub fn new(body: impl Into<String>, required: BTreeSet<String>) -> Result<Self, TemplateError> {
        let body = body.into();
        for name in &required {
            if !IDENT.is_match(name) {
                return Err(TemplateError::InvalidName(name.clone()));
            }
        }
        for caps in PLACEHOLDER.captures_iter(&body) {
            let name = &caps[1];
            if !IDENT.is_match(name) {
                return Err(TemplateError::InvalidName(name.to_owned()));
            }
            if !required.contains(name) {
                return Err(TemplateError::Undeclared(name.to_owned()));
            }
        }
        Ok(Self { body, required })
    }

    /// A template whose required placeholders are exactly those in `body`.
    pub fn from_body(body: impl Into<String>) -> Result<Self, TemplateError> {
        let body = body.into();
        let required = PLACEHOLDER.captures_iter(&body).map(|c| c[1].to_owned()).collect();
        Self::new(body, required)
    }

    pub fn from_parts(body: &str, manifest_json: &str) -> Result<Self, TemplateError> {
        let manifest: Manifest = serde_json::from_str(manifest_json)?;
        Self::new(body, manifest.placeholders)
    }

    pub fn manifest_path(template: &Path) -> PathBuf {
        let mut name = template.as_os_str().to_owned();
        name.push(".manifest.json");
        PathBuf::from(name)
    }

    /// Loads a template and its sidecar manifest.
    pub fn load(path: &Path) -> Result<Self, TemplateError> {
        let read = |p: &Path| {
            std::fs::read_to_string(p).map_err(|source| TemplateError::Io {
                path: p.to_owned(),
                source,
            })
        };
        let body = read(path)?;
        let manifest = read(&Self::manifest_path(path))?;
        Self::from_parts(&body, &manifest)
    }

    /// The bundled Java-hosted Test-me! sentence skeleton.
    pub fn testme_java() -> Self {
        Self::from_parts(TESTME_JAVA, TESTME_JAVA_MANIFEST).expect("bundled template is valid")
    }

    pub fn body(&self) -> &str {
        &self.body
    }

    pub fn required(&self) -> &BTreeSet<String> {
        &self.required
    }

    pub fn instantiate(&self, values: &BTreeMap<String, String>) -> Result<String, TemplateError> {
        if let Some(missing) = self.required.iter().find(|name| !values.contains_key(*name)) {
            return Err(TemplateError::MissingValue(missing.clone()));
        }
        if let Some(unknown) = values.keys().find(|name| !self.required.contains(*name)) {
            return Err(TemplateError::UnknownPlaceholder(unknown.clone()));
        }
        if let Some((name, _)) = values.iter().find(|(_, v)| PLACEHOLDER.is_match(v)) {
            return Err(TemplateError::NestedPlaceholder(name.clone()));
        }
        Ok(PLACEHOLDER
            .replace_all(&self.body, |caps: &regex::Captures<'_>| values[&caps[1]].clone())
            .into_owned())
    }
}

/// The bundled skeleton instantiated for class `name` in package `package`.
pub fn testme_skeleton(name: &str, package: &str) -> String {
    let values = BTreeMap::from([
        ("NAME".to_owned(), name.to_owned()),
        ("PACKAGE".to_owned(), package.to_owned()),
    ]);
    TemplateDef::testme_java()
        .instantiate(&values)
        .expect("bundled template placeholders are NAME and PACKAGE")
}
