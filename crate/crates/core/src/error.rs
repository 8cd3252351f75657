use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {}: {source}", path.display())]
    Load { path: PathBuf, source: io::Error },

    #[error("empty input")]
    EmptyInput,

    #[error("position {pos} out of range {min}..={max}")]
    OutOfBounds { pos: u64, min: u64, max: u64 },

    #[error("symbol {symbol:#04x} occurs fewer than {occurrence} times")]
    NotFound { symbol: u8, occurrence: u64 },

    #[error("symbol {0:#04x} is not tracked for rank/select")]
    UnsupportedSymbol(u8),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid tree: {0}")]
    Invalid(String),

    #[error(transparent)]
    Format(#[from] FormatError),

    #[error("worker failed: {0}")]
    Worker(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Errors raised while decoding a serialized tree.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("bad magic bytes")]
    BadMagic,
    #[error("unsupported format version {0}")]
    Version(u16),
    #[error("truncated input")]
    Truncated,
    #[error("checksum mismatch (stored {stored:#010x}, computed {computed:#010x})")]
    Checksum { stored: u32, computed: u32 },
    #[error("trailing bytes after tree")]
    Trailing,
    #[error("inconsistent tree: {0}")]
    Inconsistent(String),
}
