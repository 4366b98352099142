//! `Content-Length` message framing.

use std::io::{self, BufRead, Write};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FramingError {
    #[error("header block without Content-Length")]
    MissingLength,
    #[error("invalid header line {0:?}")]
    BadHeader(String),
    #[error("stream ended inside a message")]
    Truncated,
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl FramingError {
    /// Whether reading can continue with the next message.
    pub fn is_recoverable(&self) -> bool {
        matches!(self, Self::MissingLength | Self::BadHeader(_))
    }
}

/// Reads one message body. `Ok(None)` means the stream ended cleanly
/// between messages. After a recoverable error the whole header block has
/// been consumed.
pub fn read_message<R: BufRead>(reader: &mut R) -> Result<Option<Vec<u8>>, FramingError> {
    let mut length = None;
    let mut bad = None;
    let mut seen_any = false;
    let mut raw = Vec::new();
    loop {
        raw.clear();
        if reader.read_until(b'\n', &mut raw)? == 0 {
            return if seen_any {
                Err(FramingError::Truncated)
            } else {
                Ok(None)
            };
        }
        seen_any = true;
        if !raw.ends_with(b"\r\n") {
            if raw.ends_with(b"\n") {
                bad.get_or_insert_with(|| String::from_utf8_lossy(&raw).into_owned());
                continue;
            }
            return Err(FramingError::Truncated);
        }
        let line = &raw[..raw.len() - 2];
        if line.is_empty() {
            break;
        }
        let text = String::from_utf8_lossy(line);
        match text.split_once(':') {
            Some((name, value)) if name.trim().eq_ignore_ascii_case("content-length") => {
                match value.trim().parse::<usize>() {
                    Ok(n) => length = Some(n),
                    Err(_) => {
                        bad.get_or_insert_with(|| text.clone().into_owned());
                    }
                }
            }
            Some(_) => {}
            None => {
                bad.get_or_insert_with(|| text.clone().into_owned());
            }
        }
    }
    if let Some(line) = bad {
        return Err(FramingError::BadHeader(line));
    }
    let length = length.ok_or(FramingError::MissingLength)?;
    let mut body = vec![0; length];
    reader.read_exact(&mut body).map_err(|e| match e.kind() {
        io::ErrorKind::UnexpectedEof => FramingError::Truncated,
        _ => FramingError::Io(e),
    })?;
    Ok(Some(body))
}

/// Frames `body` and writes it in one call.
pub fn write_message<W: Write>(writer: &mut W, body: &[u8]) -> io::Result<()> {
    let mut frame = format!("Content-Length: {}\r\n\r\n", body.len()).into_bytes();
    frame.extend_from_slice(body);
    writer.write_all(&frame)?;
    writer.flush()
}
