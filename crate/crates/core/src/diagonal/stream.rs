//! Streams of machine indices asserted to compute total functions.

use std::io::Read;

use num_bigint::BigUint;
use thiserror::Error;

use crate::machine::{constant_machine, encode_machine};
use crate::words::{parse_natural, BinaryWord};

const BUILTIN_CONSTANTS: &str = "builtin:constants:";

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("cannot read stream {source_name}: {error}")]
    Io {
        source_name: String,
        error: std::io::Error,
    },
    #[error("line {line}: {text:?} is not a machine index")]
    Parse { line: usize, text: String },
    #[error("unknown builtin stream {0:?}")]
    Builtin(String),
}

/// Indices of the constant machines `C_s` for the first `count` words `s`.
pub fn builtin_constants(count: u64) -> Vec<BigUint> {
    (0..count)
        .map(|j| encode_machine(constant_machine(&BinaryWord::from_index_u64(j)).machine()))
        .collect()
}

fn builtin(spec: &str) -> Result<Vec<BigUint>, StreamError> {
    spec.strip_prefix(BUILTIN_CONSTANTS)
        .and_then(|count| count.parse().ok())
        .map(builtin_constants)
        .ok_or_else(|| StreamError::Builtin(spec.to_string()))
}

/// One index per line. Blank lines and `#` comments are skipped, and a
/// `builtin:constants:N` line expands in place.
pub fn parse_stream(text: &str) -> Result<Vec<BigUint>, StreamError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with("builtin:") {
            out.extend(builtin(line)?);
            continue;
        }
        out.push(parse_natural(line).ok_or_else(|| StreamError::Parse {
            line: n + 1,
            text: line.to_string(),
        })?);
    }
    Ok(out)
}

/// Reads a stream from a `builtin:` spec, `-` (standard input) or a file path.
pub fn read_stream(source: &str) -> Result<Vec<BigUint>, StreamError> {
    if source.starts_with("builtin:") {
        return builtin(source);
    }
    let io_err = |error| StreamError::Io {
        source_name: source.to_string(),
        error,
    };
    let text = if source == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(io_err)?;
        buf
    } else {
        std::fs::read_to_string(source).map_err(io_err)?
    };
    parse_stream(&text)
}
