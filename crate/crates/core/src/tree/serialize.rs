//! Canonical little-endian byte format.
//!
//! ```text
//! "PBT1" | version u16 | n u64 | s u32 | tau u32 | leaf_cutoff u32 | levels u16
//! per level:  blocks u64 | block_len u64 | marked bits (packed, byte padded)
//!             | per unmarked block: target u64, offset u32
//!             | run breaks: count u64, block indices u64…
//! leaf bytes: len u64 | bytes
//! augmentation: symbols u16 | per symbol: symbol u8, then per level
//!             prefix u64×blocks, internal u64×blocks, offset u64×unmarked
//! crc32 of everything before, u32
//! ```
//!
//! Block positions are not stored: they follow from `n`, `s`, `τ` and the
//! marked bits, and are rebuilt on load.

use std::io::{self, Read, Write};

use super::augment::{LevelCounts, RankAugmentation};
use super::layout::{nominal_block_len, Layout};
use super::{BackRef, BitVec, BlockTree, Level};
use crate::error::{Error, FormatError, Result};

pub const MAGIC: &[u8; 4] = b"PBT1";
pub const VERSION: u16 = 1;

struct Sink<W: Write> {
    inner: W,
    crc: crc32fast::Hasher,
    written: u64,
}

impl<W: Write> Sink<W> {
    fn put(&mut self, bytes: &[u8]) -> io::Result<()> {
        self.crc.update(bytes);
        self.written += bytes.len() as u64;
        self.inner.write_all(bytes)
    }

    fn u16(&mut self, v: u16) -> io::Result<()> {
        self.put(&v.to_le_bytes())
    }

    fn u32(&mut self, v: u32) -> io::Result<()> {
        self.put(&v.to_le_bytes())
    }

    fn u64(&mut self, v: u64) -> io::Result<()> {
        self.put(&v.to_le_bytes())
    }

    fn u64s(&mut self, vs: &[u64]) -> io::Result<()> {
        let mut buf = Vec::with_capacity(vs.len().min(1 << 16) * 8);
        for chunk in vs.chunks(1 << 16) {
            buf.clear();
            for v in chunk {
                buf.extend_from_slice(&v.to_le_bytes());
            }
            self.put(&buf)?;
        }
        Ok(())
    }
}

struct Source<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Source<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8], FormatError> {
        let end = self.pos.checked_add(k).ok_or(FormatError::Truncated)?;
        let out = self
            .bytes
            .get(self.pos..end)
            .ok_or(FormatError::Truncated)?;
        self.pos = end;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8, FormatError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, FormatError> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32, FormatError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, FormatError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    /// A length read from the stream, bounded by the bytes left.
    fn count(&mut self, item_size: usize) -> Result<usize, FormatError> {
        let k = self.u64()?;
        let left = (self.bytes.len() - self.pos) as u64;
        if k.saturating_mul(item_size as u64) > left {
            return Err(FormatError::Truncated);
        }
        Ok(k as usize)
    }

    fn u64s(&mut self, k: usize) -> Result<Vec<u64>, FormatError> {
        let raw = self.take(k.checked_mul(8).ok_or(FormatError::Truncated)?)?;
        Ok(raw
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }
}

fn inconsistent(msg: impl Into<String>) -> FormatError {
    FormatError::Inconsistent(msg.into())
}

impl BlockTree {
    /// Writes the tree; returns the number of bytes written.
    pub fn serialize<W: Write>(&self, sink: W) -> io::Result<u64> {
        let mut w = Sink {
            inner: sink,
            crc: crc32fast::Hasher::new(),
            written: 0,
        };
        w.put(MAGIC)?;
        w.u16(VERSION)?;
        w.u64(self.n)?;
        w.u32(self.s)?;
        w.u32(self.tau)?;
        w.u32(self.leaf_cutoff)?;
        w.u16(self.levels.len() as u16)?;
        for level in &self.levels {
            w.u64(level.len() as u64)?;
            w.u64(level.block_len)?;
            w.put(&level.marked.to_bytes())?;
            for r in &level.refs {
                w.u64(r.target)?;
                w.u32(r.offset)?;
            }
            w.u64(level.run_breaks.len() as u64)?;
            w.u64s(&level.run_breaks)?;
        }
        w.u64(self.leaf_bytes.len() as u64)?;
        w.put(&self.leaf_bytes)?;
        let symbols = self.aug.symbols();
        w.u16(symbols.len() as u16)?;
        for (k, &c) in symbols.iter().enumerate() {
            w.put(&[c])?;
            for counts in &self.aug.all_counts()[k] {
                w.u64s(&counts.prefix)?;
                w.u64s(&counts.internal)?;
                w.u64s(&counts.offset)?;
            }
        }
        let crc = w.crc.clone().finalize();
        w.inner.write_all(&crc.to_le_bytes())?;
        Ok(w.written + 4)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.serialize(&mut out)
            .expect("writing to a Vec cannot fail");
        out
    }

    /// Size of the serialized form, without materializing it.
    pub fn serialized_size(&self) -> u64 {
        self.serialize(io::sink()).expect("sink cannot fail")
    }

    pub fn deserialize<R: Read>(mut source: R) -> Result<Self> {
        let mut bytes = Vec::new();
        source.read_to_end(&mut bytes).map_err(Error::Io)?;
        Ok(Self::from_bytes(&bytes)?)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, FormatError> {
        if bytes.len() < MAGIC.len() + 2 {
            return Err(FormatError::Truncated);
        }
        if &bytes[..4] != MAGIC {
            return Err(FormatError::BadMagic);
        }
        let version = u16::from_le_bytes([bytes[4], bytes[5]]);
        if version != VERSION {
            return Err(FormatError::Version(version));
        }
        if bytes.len() < 10 {
            return Err(FormatError::Truncated);
        }
        let (body, tail) = bytes.split_at(bytes.len() - 4);
        let stored = u32::from_le_bytes(tail.try_into().unwrap());
        let computed = crc32fast::hash(body);
        if stored != computed {
            return Err(FormatError::Checksum { stored, computed });
        }

        let mut src = Source {
            bytes: body,
            pos: 6,
        };
        let n = src.u64()?;
        let s = src.u32()?;
        let tau = src.u32()?;
        let leaf_cutoff = src.u32()?;
        let level_count = src.u16()? as usize;
        if n == 0 || s == 0 || tau < 2 || leaf_cutoff == 0 || level_count == 0 {
            return Err(inconsistent("bad header parameters"));
        }

        let mut levels: Vec<Level> = Vec::with_capacity(level_count);
        let mut layout = Layout::top(n, s);
        for depth in 0..level_count {
            if depth > 0 {
                let prev = &levels[depth - 1];
                layout = prev.layout.children(tau, |i| prev.marked.get(i));
            }
            let blocks = src.u64()?;
            if blocks != layout.len() as u64 {
                return Err(inconsistent(format!("level {depth}: block count")));
            }
            let block_len = src.u64()?;
            if block_len != nominal_block_len(n, s, tau, depth) {
                return Err(inconsistent(format!("level {depth}: block length")));
            }
            let marked = BitVec::from_bytes(src.take(layout.len().div_ceil(8))?, layout.len());
            let unmarked = layout.len() - marked.count_ones();
            let mut refs = Vec::with_capacity(unmarked);
            for _ in 0..unmarked {
                let target = src.u64()?;
                let offset = src.u32()?;
                refs.push(BackRef { target, offset });
            }
            let breaks = src.count(8)?;
            let run_breaks = src.u64s(breaks)?;
            let level = Level::new(block_len, layout.clone(), marked, refs, tau);
            if level.run_breaks != run_breaks {
                return Err(inconsistent(format!("level {depth}: run breaks")));
            }
            levels.push(level);
        }
        let leaf_len = src.count(1)?;
        let leaf_bytes = src.take(leaf_len)?.to_vec();

        let symbol_count = src.u16()? as usize;
        let mut symbols = Vec::with_capacity(symbol_count);
        let mut counts = Vec::with_capacity(symbol_count);
        for _ in 0..symbol_count {
            symbols.push(src.u8()?);
            let mut per_level = Vec::with_capacity(levels.len());
            for level in &levels {
                per_level.push(LevelCounts {
                    prefix: src.u64s(level.len())?,
                    internal: src.u64s(level.len())?,
                    offset: src.u64s(level.refs.len())?,
                });
            }
            counts.push(per_level);
        }
        if src.pos != body.len() {
            return Err(FormatError::Trailing);
        }
        if symbols.windows(2).any(|w| w[0] >= w[1]) {
            return Err(inconsistent("tracked symbols not strictly ascending"));
        }

        let mut tree = BlockTree {
            n,
            s,
            tau,
            leaf_cutoff,
            levels,
            leaf_bytes,
            leaf_offsets: Vec::new(),
            aug: RankAugmentation::from_parts(symbols, counts),
        };
        super::validate::check_structure(&tree).map_err(FormatError::Inconsistent)?;
        tree.index_leaves();
        Ok(tree)
    }
}
