//! JSON-RPC dispatch and the document store.

use std::collections::BTreeMap;
use std::io::{BufReader, Read, Write};

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::framing::{read_message, write_message};
use crate::builder::{CallKind, DESCRIPTORS};
use crate::diagnostics::{Code, Diagnostic, Severity};
use crate::editor::lexer::{tokenize_line, TokenKind};
use crate::editor::{
    check_edit, complete, compute_folds, validate_document, CompletionError, Document, Edit, EditCheck, HostProfile,
    Position, Region, TemplateDef,
};

pub const PARSE_ERROR: i64 = -32700;
pub const INVALID_REQUEST: i64 = -32600;
pub const METHOD_NOT_FOUND: i64 = -32601;
pub const INVALID_PARAMS: i64 = -32602;
pub const SERVER_NOT_INITIALIZED: i64 = -32002;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lifecycle {
    Uninitialized,
    Running,
    ShutDown,
}

struct OpenDocument {
    doc: Document,
    profile: HostProfile,
    /// Content hashes of the guarded sections as first opened.
    baseline: Vec<String>,
}

/// One language server session. Feed it decoded messages with
/// [`Server::handle`]; it returns the messages to send back.
pub struct Server {
    state: Lifecycle,
    documents: BTreeMap<String, OpenDocument>,
    exit_code: Option<i32>,
}

struct RpcError {
    code: i64,
    message: String,
}

impl RpcError {
    fn new(code: i64, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn invalid_params(message: impl Into<String>) -> Self {
        Self::new(INVALID_PARAMS, message)
    }
}

type RpcResult = Result<Value, RpcError>;

#[derive(Deserialize)]
struct LspPosition {
    line: u32,
    character: u32,
}

#[derive(Deserialize)]
struct LspRange {
    start: LspPosition,
    end: LspPosition,
}

#[derive(Deserialize)]
struct DocumentId {
    uri: String,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct OpenItem {
    uri: String,
    #[serde(default)]
    language_id: String,
    version: i64,
    text: String,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct DidOpenParams {
    text_document: OpenItem,
}

#[derive(Deserialize)]
struct VersionedId {
    uri: String,
    version: i64,
}

#[derive(Deserialize)]
struct ContentChange {
    range: Option<LspRange>,
    text: String,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct DidChangeParams {
    text_document: VersionedId,
    content_changes: Vec<ContentChange>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct DocumentParams {
    text_document: DocumentId,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct PositionParams {
    text_document: DocumentId,
    position: LspPosition,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct GuardCheckParams {
    uri: String,
    range: LspRange,
    new_text: String,
}

#[derive(Deserialize)]
struct NewFromTemplateParams {
    #[allow(dead_code)]
    uri: String,
    placeholders: BTreeMap<String, String>,
}

fn params<T: DeserializeOwned>(message: &Value) -> Result<T, RpcError> {
    let params = message.get("params").cloned().unwrap_or(Value::Null);
    serde_json::from_value(params).map_err(|e| RpcError::invalid_params(e.to_string()))
}

/// Converts a UTF-16 protocol position to a character position, clamping
/// past-the-end lines and columns to the document.
fn to_core(doc: &Document, p: &LspPosition) -> Position {
    let Some(line) = doc.line(p.line) else {
        return doc.end();
    };
    let mut units = 0;
    let mut column = 0;
    for c in line.chars() {
        if units >= p.character as usize {
            break;
        }
        units += c.len_utf16();
        column += 1;
    }
    Position::new(p.line, column)
}

fn to_lsp(doc: &Document, p: Position) -> Value {
    let units: usize = doc
        .line(p.line)
        .map(|l| l.chars().take(p.column as usize).map(char::len_utf16).sum())
        .unwrap_or(0);
    json!({ "line": p.line, "character": units })
}

fn range_to_lsp(doc: &Document, r: Region) -> Value {
    json!({ "start": to_lsp(doc, r.start), "end": to_lsp(doc, r.end) })
}

fn region_of(doc: &Document, r: &LspRange) -> Result<Region, RpcError> {
    let (start, end) = (to_core(doc, &r.start), to_core(doc, &r.end));
    if end < start {
        return Err(RpcError::invalid_params(format!(
            "range end {end} precedes start {start}"
        )));
    }
    Ok(Region::new(start, end))
}

fn profile_for(language_id: &str, uri: &str) -> HostProfile {
    match language_id {
        "ruby" => HostProfile::ruby(),
        "java" => HostProfile::java(),
        _ if uri.ends_with(".rb") => HostProfile::ruby(),
        _ => HostProfile::java(),
    }
}

/// Content hashes of the guarded sections, in document order.
pub fn guard_baseline(doc: &Document, profile: &HostProfile) -> Vec<String> {
    guard_hashes(doc, profile).into_iter().map(|(_, h)| h).collect()
}

fn guard_hashes(doc: &Document, profile: &HostProfile) -> Vec<(Region, String)> {
    compute_folds(doc, profile)
        .guarded_regions()
        .into_iter()
        .map(|r| {
            let digest = Sha256::digest(doc.slice(r).unwrap_or_default().as_bytes());
            (r, hex::encode(digest))
        })
        .collect()
}

/// Marker, validation and guard diagnostics for one document, each with
/// the range it covers.
pub fn document_diagnostics(doc: &Document, profile: &HostProfile, baseline: &[String]) -> Vec<(Region, Diagnostic)> {
    let line_range = |d: &Diagnostic| {
        let Some(loc) = &d.location else {
            return Region::new(Position::new(0, 0), Position::new(0, 0));
        };
        let line = loc.line() - 1;
        let len = doc.line_len(line).unwrap_or(0);
        let start = loc.column().map_or(0, |c| (c - 1).min(len));
        Region::new(Position::new(line, start), Position::new(line, len))
    };
    let mut out: Vec<(Region, Diagnostic)> = compute_folds(doc, profile)
        .diagnostics
        .into_iter()
        .chain(validate_document(doc, profile))
        .map(|d| (line_range(&d), d))
        .collect();
    let current = guard_hashes(doc, profile);
    for (i, (region, hash)) in current.iter().enumerate() {
        if baseline.get(i) != Some(hash) {
            out.push((
                *region,
                Diagnostic::error(
                    Code::GuardModified,
                    "This guarded section was modified; it must stay as generated",
                ),
            ));
        }
    }
    if current.len() < baseline.len() {
        out.push((
            Region::new(Position::new(0, 0), Position::new(0, 0)),
            Diagnostic::error(Code::GuardModified, "A guarded section was removed"),
        ));
    }
    out
}

fn diagnostic_to_lsp(doc: &Document, region: Region, d: &Diagnostic) -> Value {
    json!({
        "range": range_to_lsp(doc, region),
        "severity": match d.severity { Severity::Error => 1, Severity::Warning => 2 },
        "code": d.code.as_str(),
        "source": "testme",
        "message": d.message,
    })
}

fn notification(method: &str, params: Value) -> Value {
    json!({ "jsonrpc": "2.0", "method": method, "params": params })
}

fn response(id: Value, result: RpcResult) -> Value {
    match result {
        Ok(result) => json!({ "jsonrpc": "2.0", "id": id, "result": result }),
        Err(e) => json!({ "jsonrpc": "2.0", "id": id, "error": { "code": e.code, "message": e.message } }),
    }
}

fn signature(kind: CallKind) -> String {
    let d = kind.descriptor();
    let roles: Vec<&str> = d.params.iter().map(|p| p.role).collect();
    format!("{}({})", d.name, roles.join(", "))
}

impl Default for Server {
    fn default() -> Self {
        Self::new()
    }
}

impl Server {
    pub fn new() -> Self {
        Self {
            state: Lifecycle::Uninitialized,
            documents: BTreeMap::new(),
            exit_code: None,
        }
    }

    /// Set once `exit` has been received.
    pub fn exit_code(&self) -> Option<i32> {
        self.exit_code
    }

    /// Text of an open document.
    pub fn document(&self, uri: &str) -> Option<&Document> {
        self.documents.get(uri).map(|d| &d.doc)
    }

    /// Handles one undecoded message body.
    pub fn handle_bytes(&mut self, body: &[u8]) -> Vec<Value> {
        match serde_json::from_slice::<Value>(body) {
            Ok(message) => self.handle(message),
            Err(e) => vec![response(Value::Null, Err(RpcError::new(PARSE_ERROR, e.to_string())))],
        }
    }

    pub fn handle(&mut self, message: Value) -> Vec<Value> {
        let Some(object) = message.as_object() else {
            return vec![response(
                Value::Null,
                Err(RpcError::new(INVALID_REQUEST, "expected a JSON object")),
            )];
        };
        let id = object.get("id").cloned();
        let method = object.get("method").and_then(Value::as_str).map(str::to_owned);
        let valid_id = id
            .as_ref()
            .is_none_or(|v| v.is_string() || v.is_i64() || v.is_u64() || v.is_null());
        if object.get("jsonrpc").and_then(Value::as_str) != Some("2.0") || !valid_id {
            return vec![response(
                id.unwrap_or(Value::Null),
                Err(RpcError::new(INVALID_REQUEST, "not a JSON-RPC 2.0 message")),
            )];
        }
        let Some(method) = method else {
            if object.contains_key("result") || object.contains_key("error") {
                // A client response; this server sends no requests.
                return Vec::new();
            }
            return vec![response(
                id.unwrap_or(Value::Null),
                Err(RpcError::new(INVALID_REQUEST, "missing method")),
            )];
        };
        match id {
            Some(id) => {
                let mut out = Vec::new();
                let result = self.request(&method, &message);
                out.push(response(id, result));
                out
            }
            None => self.notify(&method, &message),
        }
    }

    fn request(&mut self, method: &str, message: &Value) -> RpcResult {
        match (self.state, method) {
            (Lifecycle::Uninitialized, "initialize") => {
                self.state = Lifecycle::Running;
                Ok(Self::capabilities())
            }
            (Lifecycle::Uninitialized, _) => Err(RpcError::new(SERVER_NOT_INITIALIZED, "server not initialized")),
            (_, "initialize") => Err(RpcError::new(INVALID_REQUEST, "already initialized")),
            (Lifecycle::ShutDown, _) => Err(RpcError::new(INVALID_REQUEST, "server is shutting down")),
            (Lifecycle::Running, "shutdown") => {
                self.state = Lifecycle::ShutDown;
                Ok(Value::Null)
            }
            (Lifecycle::Running, "textDocument/foldingRange") => self.folding_range(params(message)?),
            (Lifecycle::Running, "textDocument/completion") => self.completion(params(message)?),
            (Lifecycle::Running, "textDocument/hover") => self.hover(params(message)?),
            (Lifecycle::Running, "edsl/guardCheck") => self.guard_check(params(message)?),
            (Lifecycle::Running, "edsl/newFromTemplate") => Self::new_from_template(params(message)?),
            _ => Err(RpcError::new(METHOD_NOT_FOUND, format!("unknown method {method}"))),
        }
    }

    fn notify(&mut self, method: &str, message: &Value) -> Vec<Value> {
        if method == "exit" {
            self.exit_code = Some(if self.state == Lifecycle::ShutDown { 0 } else { 1 });
            return Vec::new();
        }
        if self.state != Lifecycle::Running {
            return Vec::new();
        }
        let outcome = match method {
            "textDocument/didOpen" => params(message).map(|p| self.did_open(p)),
            "textDocument/didChange" => params(message).map(|p| self.did_change(p)),
            "textDocument/didClose" => params(message).map(|p| self.did_close(p)),
            _ => Ok(Vec::new()),
        };
        outcome.unwrap_or_else(|e| vec![Self::log(1, &format!("{method}: {}", e.message))])
    }

    fn log(kind: u8, message: &str) -> Value {
        notification("window/logMessage", json!({ "type": kind, "message": message }))
    }

    fn capabilities() -> Value {
        json!({
            "capabilities": {
                "textDocumentSync": { "openClose": true, "change": 2 },
                "foldingRangeProvider": true,
                "completionProvider": { "resolveProvider": false },
                "hoverProvider": true,
                "experimental": { "edsl": { "guardCheck": true, "newFromTemplate": true } }
            },
            "serverInfo": { "name": "testme-lsp", "version": env!("CARGO_PKG_VERSION") }
        })
    }

    fn open(&self, uri: &str) -> Result<&OpenDocument, RpcError> {
        self.documents
            .get(uri)
            .ok_or_else(|| RpcError::invalid_params(format!("document {uri} is not open")))
    }

    fn publish(&self, uri: &str) -> Value {
        let Some(open) = self.documents.get(uri) else {
            return notification(
                "textDocument/publishDiagnostics",
                json!({ "uri": uri, "diagnostics": [] }),
            );
        };
        let diagnostics: Vec<Value> = document_diagnostics(&open.doc, &open.profile, &open.baseline)
            .iter()
            .map(|(r, d)| diagnostic_to_lsp(&open.doc, *r, d))
            .collect();
        notification(
            "textDocument/publishDiagnostics",
            json!({ "uri": uri, "version": open.doc.version(), "diagnostics": diagnostics }),
        )
    }

    fn did_open(&mut self, p: DidOpenParams) -> Vec<Value> {
        let item = p.text_document;
        let profile = profile_for(&item.language_id, &item.uri);
        let doc = Document::with_version(item.uri.clone(), item.text, item.version.max(0) as u64);
        let baseline = guard_baseline(&doc, &profile);
        self.documents
            .insert(item.uri.clone(), OpenDocument { doc, profile, baseline });
        vec![self.publish(&item.uri)]
    }

    fn did_change(&mut self, p: DidChangeParams) -> Vec<Value> {
        let uri = p.text_document.uri;
        let Some(open) = self.documents.get_mut(&uri) else {
            return vec![Self::log(1, &format!("didChange for unopened document {uri}"))];
        };
        let version = p.text_document.version;
        if version < 0 || version as u64 <= open.doc.version() {
            return vec![Self::log(
                2,
                &format!(
                    "ignoring change to {uri}: version {version} is not newer than {}",
                    open.doc.version()
                ),
            )];
        }
        let mut scratch = open.doc.clone();
        for change in &p.content_changes {
            match &change.range {
                Some(range) => {
                    let (start, end) = (to_core(&scratch, &range.start), to_core(&scratch, &range.end));
                    let edit = Edit {
                        range: Region::new(start.min(end), end.max(start)),
                        new_text: change.text.clone(),
                    };
                    if let Err(e) = scratch.apply_edit(&edit) {
                        return vec![Self::log(1, &format!("ignoring change to {uri}: {e}"))];
                    }
                }
                None => scratch = Document::new(uri.clone(), change.text.clone()),
            }
        }
        open.doc = Document::with_version(uri.clone(), scratch.text().to_owned(), version as u64);
        vec![self.publish(&uri)]
    }

    fn did_close(&mut self, p: DocumentParams) -> Vec<Value> {
        let uri = p.text_document.uri;
        self.documents.remove(&uri);
        vec![self.publish(&uri)]
    }

    fn folding_range(&self, p: DocumentParams) -> RpcResult {
        let open = self.open(&p.text_document.uri)?;
        let ranges: Vec<Value> = compute_folds(&open.doc, &open.profile)
            .folds
            .iter()
            .map(|f| {
                json!({
                    "startLine": f.first_line,
                    "endLine": f.last_line,
                    "kind": "region",
                    "collapsedText": f.description,
                })
            })
            .collect();
        Ok(Value::Array(ranges))
    }

    fn completion(&self, p: PositionParams) -> RpcResult {
        let open = self.open(&p.text_document.uri)?;
        let position = to_core(&open.doc, &p.position);
        let completions = match complete(&open.doc, position, &open.profile) {
            Ok(c) => c,
            Err(CompletionError::Guarded(_)) => return Ok(json!({ "isIncomplete": false, "items": [] })),
            Err(CompletionError::Document(e)) => return Err(RpcError::invalid_params(e.to_string())),
        };
        let relevant = completions
            .relevant
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("0{i:02}"), c));
        let other = completions
            .other
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("1{i:02}"), c));
        let items: Vec<Value> = relevant
            .chain(other)
            .map(|(sort, c)| {
                json!({
                    "label": c.descriptor.name,
                    "kind": 3,
                    "detail": signature(c.descriptor.kind),
                    "documentation": c.descriptor.doc,
                    "sortText": sort,
                    "filterText": c.descriptor.name,
                    "insertText": c.snippet,
                    "insertTextFormat": 2,
                })
            })
            .collect();
        Ok(json!({ "isIncomplete": false, "items": items }))
    }

    fn hover(&self, p: PositionParams) -> RpcResult {
        let open = self.open(&p.text_document.uri)?;
        let position = to_core(&open.doc, &p.position);
        let line = open.doc.line(position.line).unwrap_or_default();
        let found = tokenize_line(line, &open.profile)
            .into_iter()
            .find(|t| t.kind == TokenKind::Ident && t.start <= position.column && position.column < t.end);
        let Some(kind) = found.as_ref().and_then(|t| CallKind::from_name(&t.text)) else {
            return Ok(Value::Null);
        };
        let token = found.expect("matched above");
        let d = DESCRIPTORS
            .iter()
            .find(|d| d.kind == kind)
            .expect("every kind has a descriptor");
        Ok(json!({
            "contents": { "kind": "plaintext", "value": format!("{}\n{}", signature(kind), d.doc) },
            "range": range_to_lsp(&open.doc, Region::new(
                Position::new(position.line, token.start),
                Position::new(position.line, token.end),
            )),
        }))
    }

    fn guard_check(&self, p: GuardCheckParams) -> RpcResult {
        let open = self.open(&p.uri)?;
        let edit = Edit {
            range: region_of(&open.doc, &p.range)?,
            new_text: p.new_text,
        };
        match check_edit(&open.doc, &edit, &open.profile) {
            Ok(EditCheck::Allowed) => Ok(json!({ "allowed": true })),
            Ok(EditCheck::GuardViolation { region }) => Ok(json!({
                "allowed": false,
                "violatedRegion": range_to_lsp(&open.doc, region),
            })),
            Err(e) => Err(RpcError::invalid_params(e.to_string())),
        }
    }

    fn new_from_template(p: NewFromTemplateParams) -> RpcResult {
        TemplateDef::testme_java()
            .instantiate(&p.placeholders)
            .map(Value::String)
            .map_err(|e| RpcError::invalid_params(e.to_string()))
    }
}

/// Runs a session over `input` and `output` until `exit` or end of input.
/// Returns 0 after an orderly shutdown, 1 otherwise.
pub fn serve<R: Read, W: Write>(input: R, mut output: W) -> i32 {
    let mut reader = BufReader::new(input);
    let mut server = Server::new();
    loop {
        let replies = match read_message(&mut reader) {
            Ok(Some(body)) => server.handle_bytes(&body),
            Ok(None) => break,
            Err(e) if e.is_recoverable() => {
                vec![response(Value::Null, Err(RpcError::new(PARSE_ERROR, e.to_string())))]
            }
            Err(_) => break,
        };
        for reply in replies {
            let body = serde_json::to_vec(&reply).expect("values serialize");
            if write_message(&mut output, &body).is_err() {
                return 1;
            }
        }
        if let Some(code) = server.exit_code() {
            return code;
        }
    }
    if server.state == Lifecycle::ShutDown {
        0
    } else {
        1
    }
}
