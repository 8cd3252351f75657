//! access, rank and select by top-down descent.
//!
//! Inside a marked block the descent moves to the child holding the
//! position; inside an unmarked block it jumps to the back-referenced source
//! on the same level, which lies in marked blocks. Each step either goes one
//! level down or turns an unmarked block into a marked one, so a query takes
//! at most two steps per level.

use super::augment::LevelCounts;
use super::layout::{child_count, part_of};
use super::BlockTree;
use crate::error::{Error, Result};

impl BlockTree {
    #[inline]
    fn top_block(&self, pos: u64) -> usize {
        let parts = (self.s as u64).min(self.n);
        part_of(self.n, parts, pos) as usize
    }

    /// Child of marked block `j` on `depth` containing text position `pos`.
    #[inline]
    fn child_at(&self, depth: usize, j: usize, pos: u64) -> usize {
        let level = &self.levels[depth];
        let len = level.layout.lens[j];
        let parts = child_count(len, self.tau) as u64;
        let first = level.link[j] as usize;
        first + part_of(len as u64, parts, pos - level.layout.starts[j]) as usize
    }

    fn is_leaf_level(&self, depth: usize) -> bool {
        depth + 1 == self.levels.len()
    }

    /// Character at 0-based position `pos`.
    pub(crate) fn access0(&self, mut pos: u64) -> u8 {
        let mut depth = 0;
        let mut j = self.top_block(pos);
        loop {
            let level = &self.levels[depth];
            let start = level.layout.starts[j];
            if self.is_leaf_level(depth) {
                return self.leaf_bytes[(self.leaf_offsets[j] + pos - start) as usize];
            }
            if level.marked.get(j) {
                j = self.child_at(depth, j, pos);
                depth += 1;
            } else {
                let r = level.refs[level.link[j] as usize];
                let t = r.target as usize;
                pos = level.layout.starts[t] + r.offset as u64 + (pos - start);
                j = if pos < level.layout.end(t) { t } else { t + 1 };
            }
        }
    }

    /// Character at 1-based position `i`.
    pub fn access(&self, i: u64) -> Result<u8> {
        if i == 0 || i > self.n {
            return Err(Error::OutOfBounds {
                pos: i,
                min: 1,
                max: self.n,
            });
        }
        Ok(self.access0(i - 1))
    }

    fn counts_for(&self, c: u8) -> Result<&[LevelCounts]> {
        self.aug.counts(c).ok_or(Error::UnsupportedSymbol(c))
    }

    /// Occurrences of `c` in the first `m` characters of block `j` on `depth`.
    fn count_prefix(
        &self,
        counts: &[LevelCounts],
        c: u8,
        mut depth: usize,
        mut j: usize,
        mut m: u64,
    ) -> u64 {
        // wrapping: offset counts are subtracted before the matching
        // additions; the final value is exact
        let mut acc = 0u64;
        loop {
            let level = &self.levels[depth];
            let len = level.layout.lens[j] as u64;
            if m == 0 {
                return acc;
            }
            if m == len {
                return acc.wrapping_add(counts[depth].internal[j]);
            }
            let start = level.layout.starts[j];
            if self.is_leaf_level(depth) {
                let off = self.leaf_offsets[j] as usize;
                let seen = self.leaf_bytes[off..off + m as usize]
                    .iter()
                    .filter(|&&b| b == c)
                    .count() as u64;
                return acc.wrapping_add(seen);
            }
            if level.marked.get(j) {
                let first = level.link[j] as usize;
                let x = self.child_at(depth, j, start + m - 1);
                let child_starts = &self.levels[depth + 1].layout.starts;
                let below = &counts[depth + 1].prefix;
                acc = acc.wrapping_add(below[x] - below[first]);
                m -= child_starts[x] - start;
                j = x;
                depth += 1;
            } else {
                let k = level.link[j] as usize;
                let r = level.refs[k];
                let t = r.target as usize;
                let t_len = level.layout.lens[t] as u64;
                acc = acc.wrapping_sub(counts[depth].offset[k]);
                let end = r.offset as u64 + m;
                if end <= t_len {
                    j = t;
                    m = end;
                } else {
                    acc = acc.wrapping_add(counts[depth].internal[t]);
                    j = t + 1;
                    m = end - t_len;
                }
            }
        }
    }

    /// Occurrences of `c` among the first `i` characters.
    pub fn rank(&self, c: u8, i: u64) -> Result<u64> {
        let counts = self.counts_for(c)?;
        if i > self.n {
            return Err(Error::OutOfBounds {
                pos: i,
                min: 0,
                max: self.n,
            });
        }
        if i == 0 {
            return Ok(0);
        }
        let j = self.top_block(i - 1);
        let start = self.levels[0].layout.starts[j];
        Ok(counts[0].prefix[j] + self.count_prefix(counts, c, 0, j, i - start))
    }

    /// Offset inside block `j` of its `r`-th occurrence of `c`
    /// (`1 ≤ r ≤ internal count`).
    fn select_in(
        &self,
        counts: &[LevelCounts],
        c: u8,
        mut depth: usize,
        mut j: usize,
        mut r: u64,
    ) -> u64 {
        let mut acc = 0u64;
        loop {
            let level = &self.levels[depth];
            let start = level.layout.starts[j];
            if self.is_leaf_level(depth) {
                let off = self.leaf_offsets[j] as usize;
                let len = level.layout.lens[j] as usize;
                let p = self.leaf_bytes[off..off + len]
                    .iter()
                    .enumerate()
                    .filter(|&(_, &b)| b == c)
                    .nth((r - 1) as usize)
                    .map(|(p, _)| p as u64)
                    .expect("count invariant");
                return acc.wrapping_add(p);
            }
            if level.marked.get(j) {
                let first = level.link[j] as usize;
                let count = child_count(level.layout.lens[j], self.tau) as usize;
                let below = &counts[depth + 1];
                let base = below.prefix[first];
                let x = (first..first + count)
                    .find(|&x| below.prefix[x] - base + below.internal[x] >= r)
                    .expect("count invariant");
                r -= below.prefix[x] - base;
                acc = acc.wrapping_add(self.levels[depth + 1].layout.starts[x] - start);
                j = x;
                depth += 1;
            } else {
                let k = level.link[j] as usize;
                let rf = level.refs[k];
                let t = rf.target as usize;
                let wanted = r + counts[depth].offset[k];
                let in_target = counts[depth].internal[t];
                if wanted <= in_target {
                    acc = acc.wrapping_sub(rf.offset as u64);
                    j = t;
                    r = wanted;
                } else {
                    acc = acc.wrapping_add(level.layout.lens[t] as u64 - rf.offset as u64);
                    j = t + 1;
                    r = wanted - in_target;
                }
            }
        }
    }

    /// 1-based position of the `j`-th occurrence of `c`.
    pub fn select(&self, c: u8, j: u64) -> Result<u64> {
        let counts = self.counts_for(c)?;
        let top = &counts[0];
        let last = top.prefix.len() - 1;
        let total = top.prefix[last] + top.internal[last];
        if j == 0 {
            return Err(Error::OutOfBounds {
                pos: 0,
                min: 1,
                max: u64::MAX,
            });
        }
        if j > total {
            return Err(Error::NotFound {
                symbol: c,
                occurrence: j,
            });
        }
        let b = top.prefix.partition_point(|&p| p < j) - 1;
        let start = self.levels[0].layout.starts[b];
        Ok(start + self.select_in(counts, c, 0, b, j - top.prefix[b]) + 1)
    }

    /// Total occurrences of a tracked symbol.
    pub fn occurrences(&self, c: u8) -> Result<u64> {
        let top = &self.counts_for(c)?[0];
        let last = top.prefix.len() - 1;
        Ok(top.prefix[last] + top.internal[last])
    }
}
