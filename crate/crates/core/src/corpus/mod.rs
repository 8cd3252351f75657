//! Input texts, naive query oracles, the LZ77 oracle and a synthetic
//! repetitive-corpus generator.

pub mod lz77;
pub mod naive;
pub mod synth;

use std::fs;
use std::ops::Deref;
use std::path::Path;

use crate::error::{Error, Result};

/// An immutable, non-empty byte text with its symbol histogram.
#[derive(Clone, PartialEq, Eq)]
pub struct Text {
    bytes: Vec<u8>,
    histogram: Box<[u64; 256]>,
    sigma: usize,
}

impl Text {
    pub fn new(bytes: Vec<u8>) -> Result<Self> {
        if bytes.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut histogram = Box::new([0u64; 256]);
        for &b in &bytes {
            histogram[b as usize] += 1;
        }
        let sigma = histogram.iter().filter(|&&c| c > 0).count();
        Ok(Self {
            bytes,
            histogram,
            sigma,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = fs::read(path).map_err(|source| Error::Load {
            path: path.to_owned(),
            source,
        })?;
        Self::new(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    /// Number of distinct byte values present.
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn histogram(&self) -> &[u64; 256] {
        &self.histogram
    }

    /// Byte values with a nonzero count, ascending.
    pub fn symbols(&self) -> Vec<u8> {
        (0..=255u8)
            .filter(|&c| self.histogram[c as usize] > 0)
            .collect()
    }
}

impl Deref for Text {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.bytes
    }
}

impl AsRef<[u8]> for Text {
    fn as_ref(&self) -> &[u8] {
        &self.bytes
    }
}

impl std::fmt::Debug for Text {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Text")
            .field("n", &self.bytes.len())
            .field("sigma", &self.sigma)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_text_statistics() {
        let t = Text::new(b"abrainadrain".to_vec()).unwrap();
        assert_eq!(t.len(), 12);
        assert_eq!(t.sigma(), 6);
        assert_eq!(t.histogram().iter().sum::<u64>(), 12);
        assert_eq!(t.symbols(), b"abdinr".to_vec());
    }

    #[test]
    fn single_and_unary() {
        let t = Text::new(b"a".to_vec()).unwrap();
        assert_eq!((t.len(), t.sigma()), (1, 1));
        let t = Text::new(b"aaaa".to_vec()).unwrap();
        assert_eq!((t.len(), t.sigma()), (4, 1));
        assert_eq!(t.histogram()[b'a' as usize], 4);
    }

    #[test]
    fn empty_rejected() {
        assert!(matches!(Text::new(Vec::new()), Err(Error::EmptyInput)));
    }

    #[test]
    fn load_reports_path() {
        let dir = std::env::temp_dir().join("blocktree-missing-dir-xyz");
        let err = Text::load(dir.join("nope.txt")).unwrap_err();
        assert!(err.to_string().contains("nope.txt"));
    }

    #[test]
    fn load_file() {
        let path = std::env::temp_dir().join(format!("blocktree-load-{}.txt", std::process::id()));
        fs::write(&path, b"abrainadrain").unwrap();
        let t = Text::load(&path).unwrap();
        fs::remove_file(&path).ok();
        assert_eq!(t.as_bytes(), b"abrainadrain");
        assert_eq!(t.sigma(), 6);
    }
}
