#![allow(dead_code)]

pub mod gen;

use std::io::Read;

use serde_json::{json, Value};
use testme_core::editor::testme_skeleton;
use testme_core::lsp::framing::write_message;

pub const SKELETON_URI: &str = "file:///work/test/BiologyTest.java";

pub fn frame(messages: &[Value]) -> Vec<u8> {
    let mut out = Vec::new();
    for m in messages {
        write_message(&mut out, serde_json::to_string(m).unwrap().as_bytes()).unwrap();
    }
    out
}

/// Decodes a framed byte stream into its JSON bodies.
pub fn unframe(mut bytes: &[u8]) -> Vec<Value> {
    let mut out = Vec::new();
    while let Some(body) = testme_core::lsp::framing::read_message(&mut bytes).unwrap() {
        out.push(serde_json::from_slice(&body).unwrap());
    }
    out
}

pub fn request(id: i64, method: &str, params: Value) -> Value {
    json!({ "jsonrpc": "2.0", "id": id, "method": method, "params": params })
}

pub fn notify(method: &str, params: Value) -> Value {
    json!({ "jsonrpc": "2.0", "method": method, "params": params })
}

pub fn skeleton_text() -> String {
    testme_skeleton("BiologyTest", "test")
}

pub fn open_skeleton() -> Value {
    notify(
        "textDocument/didOpen",
        json!({ "textDocument": { "uri": SKELETON_URI, "languageId": "java", "version": 1, "text": skeleton_text() } }),
    )
}

fn range(l1: u32, c1: u32, l2: u32, c2: u32) -> Value {
    json!({ "start": { "line": l1, "character": c1 }, "end": { "line": l2, "character": c2 } })
}

/// Open the templated skeleton, fold it, probe the guards, complete in
/// the body, then shut down cleanly.
pub fn skeleton_session() -> Vec<Value> {
    vec![
        request(
            1,
            "initialize",
            json!({ "processId": null, "rootUri": null, "capabilities": {} }),
        ),
        notify("initialized", json!({})),
        open_skeleton(),
        request(
            2,
            "textDocument/foldingRange",
            json!({ "textDocument": { "uri": SKELETON_URI } }),
        ),
        request(
            3,
            "edsl/guardCheck",
            json!({ "uri": SKELETON_URI, "range": range(3, 0, 3, 6), "newText": "" }),
        ),
        request(
            4,
            "edsl/guardCheck",
            json!({ "uri": SKELETON_URI, "range": range(12, 0, 12, 0), "newText": "        " }),
        ),
        request(
            5,
            "textDocument/completion",
            json!({ "textDocument": { "uri": SKELETON_URI }, "position": { "line": 15, "character": 0 } }),
        ),
        request(6, "shutdown", Value::Null),
        notify("exit", Value::Null),
    ]
}

/// Protocol errors and an exit without shutdown.
pub fn lifecycle_session() -> Vec<Value> {
    vec![
        request(
            1,
            "textDocument/foldingRange",
            json!({ "textDocument": { "uri": SKELETON_URI } }),
        ),
        request(2, "initialize", json!({ "capabilities": {} })),
        request(3, "textDocument/formatting", json!({})),
        request(4, "textDocument/foldingRange", json!({ "textDocument": 7 })),
        request(
            5,
            "edsl/guardCheck",
            json!({ "uri": "file:///nowhere.java", "range": range(0, 0, 0, 0), "newText": "" }),
        ),
        notify("$/cancelRequest", json!({ "id": 1 })),
        notify("exit", Value::Null),
    ]
}

/// Edits that break a guard and add a duplicate answer.
pub fn edit_session() -> Vec<Value> {
    vec![
        request(1, "initialize", json!({ "capabilities": {} })),
        open_skeleton(),
        notify(
            "textDocument/didChange",
            json!({
                "textDocument": { "uri": SKELETON_URI, "version": 2 },
                "contentChanges": [{ "range": range(13, 0, 13, 0), "text": "        correct_answer(\"Sheep\");\n" }]
            }),
        ),
        notify(
            "textDocument/didChange",
            json!({
                "textDocument": { "uri": SKELETON_URI, "version": 3 },
                "contentChanges": [{ "range": range(1, 8, 1, 12), "text": "biology" }]
            }),
        ),
        notify(
            "textDocument/didChange",
            json!({
                "textDocument": { "uri": SKELETON_URI, "version": 3 },
                "contentChanges": [{ "text": "stale" }]
            }),
        ),
        request(
            2,
            "edsl/newFromTemplate",
            json!({ "uri": "file:///work/p/Zoo.java", "placeholders": { "NAME": "Zoo", "PACKAGE": "p" } }),
        ),
        request(
            3,
            "edsl/newFromTemplate",
            json!({ "uri": "file:///work/p/Zoo.java", "placeholders": { "NAME": "Zoo" } }),
        ),
        notify(
            "textDocument/didClose",
            json!({ "textDocument": { "uri": SKELETON_URI } }),
        ),
        request(4, "shutdown", Value::Null),
        notify("exit", Value::Null),
    ]
}

/// A reader handing out at most the next chunk size per call.
pub struct ChunkedReader<'a> {
    data: &'a [u8],
    sizes: Vec<usize>,
    next: usize,
}

impl<'a> ChunkedReader<'a> {
    pub fn new(data: &'a [u8], sizes: Vec<usize>) -> Self {
        Self { data, sizes, next: 0 }
    }
}

impl Read for ChunkedReader<'_> {
    fn read(&mut self, buf: &mut [u8]) -> std::io::Result<usize> {
        let size = if self.sizes.is_empty() {
            1
        } else {
            self.sizes[self.next % self.sizes.len()].max(1)
        };
        self.next += 1;
        let n = size.min(buf.len()).min(self.data.len());
        buf[..n].copy_from_slice(&self.data[..n]);
        self.data = &self.data[n..];
        Ok(n)
    }
}

/// Runs a session and returns (exit code, raw output).
pub fn run(messages: &[Value]) -> (i32, Vec<u8>) {
    let input = frame(messages);
    let mut output = Vec::new();
    let code = testme_core::lsp::serve(&input[..], &mut output);
    (code, output)
}
