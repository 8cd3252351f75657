use super::Level;

/// Per-level occurrence counts for one tracked symbol.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LevelCounts {
    /// Occurrences in the level's blocks before block `i` (cumulative over
    /// the level in block order; on the top level this is the text prefix).
    pub prefix: Vec<u64>,
    /// Occurrences inside block `i`.
    pub internal: Vec<u64>,
    /// For the `k`-th unmarked block: occurrences in the first `offset`
    /// characters of its target block.
    pub offset: Vec<u64>,
}

/// Rank/select counts for the tracked symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankAugmentation {
    symbols: Vec<u8>,
    slot: Box<[u16; 256]>,
    counts: Vec<Vec<LevelCounts>>,
}

const NO_SLOT: u16 = u16::MAX;

impl Default for RankAugmentation {
    fn default() -> Self {
        Self {
            symbols: Vec::new(),
            slot: Box::new([NO_SLOT; 256]),
            counts: Vec::new(),
        }
    }
}

impl RankAugmentation {
    pub(crate) fn from_parts(symbols: Vec<u8>, counts: Vec<Vec<LevelCounts>>) -> Self {
        let mut slot = Box::new([NO_SLOT; 256]);
        for (k, &c) in symbols.iter().enumerate() {
            slot[c as usize] = k as u16;
        }
        Self {
            symbols,
            slot,
            counts,
        }
    }

    pub(crate) fn build(text: &[u8], levels: &[Level], symbols: Vec<u8>) -> Self {
        if symbols.is_empty() {
            return Self::default();
        }
        let mut aug = Self::from_parts(symbols, Vec::new());
        let width = aug.symbols.len();
        aug.counts = vec![Vec::with_capacity(levels.len()); width];

        let mut local = vec![0u64; width];
        let count_into = |range: &[u8], local: &mut [u64], slot: &[u16; 256]| {
            local.fill(0);
            for &b in range {
                let k = slot[b as usize];
                if k != NO_SLOT {
                    local[k as usize] += 1;
                }
            }
        };

        for level in levels {
            let layout = &level.layout;
            let blocks = layout.len();
            let mut per_symbol: Vec<LevelCounts> = (0..width)
                .map(|_| LevelCounts {
                    prefix: Vec::with_capacity(blocks),
                    internal: Vec::with_capacity(blocks),
                    offset: Vec::with_capacity(level.refs.len()),
                })
                .collect();
            let mut running = vec![0u64; width];
            for j in 0..blocks {
                let start = layout.starts[j] as usize;
                let end = layout.end(j) as usize;
                count_into(&text[start..end], &mut local, &aug.slot);
                for k in 0..width {
                    per_symbol[k].prefix.push(running[k]);
                    per_symbol[k].internal.push(local[k]);
                    running[k] += local[k];
                }
            }
            for r in &level.refs {
                let start = layout.starts[r.target as usize] as usize;
                count_into(
                    &text[start..start + r.offset as usize],
                    &mut local,
                    &aug.slot,
                );
                for k in 0..width {
                    per_symbol[k].offset.push(local[k]);
                }
            }
            for (k, c) in per_symbol.into_iter().enumerate() {
                aug.counts[k].push(c);
            }
        }
        aug
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn is_tracked(&self, c: u8) -> bool {
        self.slot[c as usize] != NO_SLOT
    }

    /// Counts of a tracked symbol, one entry per level.
    pub fn counts(&self, c: u8) -> Option<&[LevelCounts]> {
        let k = self.slot[c as usize];
        (k != NO_SLOT).then(|| self.counts[k as usize].as_slice())
    }

    pub(crate) fn all_counts(&self) -> &[Vec<LevelCounts>] {
        &self.counts
    }
}
