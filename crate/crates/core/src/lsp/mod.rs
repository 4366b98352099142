//! Language server exposing the editor engine over JSON-RPC on stdio.
//!
//! Besides the standard lifecycle, document sync, folding ranges,
//! completion and hover, two custom requests are served:
//!
//! - `edsl/guardCheck` `{uri, range, newText}` answers
//!   `{allowed, violatedRegion?}` for a proposed edit;
//! - `edsl/newFromTemplate` `{uri, placeholders}` answers the instantiated
//!   skeleton text.
//!
//! The protocol cannot veto edits, so changes to a guarded section are also
//! reported as error diagnostics.

pub mod framing;
mod server;

pub use server::{
    document_diagnostics, guard_baseline, serve, Server, INVALID_PARAMS, INVALID_REQUEST, METHOD_NOT_FOUND,
    PARSE_ERROR, SERVER_NOT_INITIALIZED,
};
