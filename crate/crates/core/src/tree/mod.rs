//! The block tree: per-level marked bits and back-references, explicit leaf
//! text and optional rank/select counts.

mod augment;
pub mod bits;
pub mod layout;
mod query;
mod serialize;
pub mod stats;
pub mod validate;

pub use augment::RankAugmentation;
pub use bits::BitVec;
pub use layout::Layout;
pub use stats::{LevelStats, TreeStats};

use crate::corpus::Text;
use crate::error::{Error, Result};

/// Which symbols get rank/select support.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Tracking {
    /// Every symbol present in the text when σ ≤ 16, none otherwise.
    #[default]
    Auto,
    /// All 256 byte values.
    All,
    None,
    Symbols(Vec<u8>),
}

impl Tracking {
    pub fn resolve(&self, text: &Text) -> Vec<u8> {
        let mut symbols = match self {
            Tracking::Auto if text.sigma() <= 16 => text.symbols(),
            Tracking::Auto | Tracking::None => Vec::new(),
            Tracking::All => (0..=255).collect(),
            Tracking::Symbols(s) => s.clone(),
        };
        symbols.sort_unstable();
        symbols.dedup();
        symbols
    }
}

/// Knobs of the optional pruning pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PruneOptions {
    /// Repeat the bottom-up pass until nothing changes.
    pub fixpoint: bool,
    /// Only demote a block when the serialized tree cannot grow.
    pub size_guard: bool,
}

impl Default for PruneOptions {
    fn default() -> Self {
        Self {
            fixpoint: false,
            size_guard: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeParams {
    /// Out-degree of the root.
    pub s: u32,
    /// Out-degree of every other inner node.
    pub tau: u32,
    /// Levels whose blocks are at most this long are stored explicitly.
    pub leaf_cutoff: u32,
    pub tracking: Tracking,
    pub prune: PruneOptions,
}

impl TreeParams {
    pub fn new(s: u32, tau: u32, leaf_cutoff: u32) -> Self {
        Self {
            s,
            tau,
            leaf_cutoff,
            tracking: Tracking::Auto,
            prune: PruneOptions::default(),
        }
    }

    /// `s = max(8, ⌈n / 2^20⌉)`, `τ = 8` and the default leaf cutoff.
    pub fn defaults_for(text: &Text) -> Self {
        let n = text.len() as u64;
        let s = n.div_ceil(1 << 20).max(8) as u32;
        Self::new(s, 8, default_leaf_cutoff(n, text.sigma()))
    }

    pub fn with_tracking(mut self, tracking: Tracking) -> Self {
        self.tracking = tracking;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.s < 1 {
            return Err(Error::InvalidParams("s must be at least 1".into()));
        }
        if self.tau < 2 {
            return Err(Error::InvalidParams("tau must be at least 2".into()));
        }
        if self.leaf_cutoff < 1 {
            return Err(Error::InvalidParams(
                "leaf cutoff must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// `max(4, ⌈log₂ n / log₂ max(2, σ)⌉)`
pub fn default_leaf_cutoff(n: u64, sigma: usize) -> u32 {
    let log_n = (n.max(1) as f64).log2();
    let log_sigma = (sigma.max(2) as f64).log2();
    ((log_n / log_sigma).ceil() as u32).max(4)
}

/// Where an unmarked block's content starts: `offset` characters into block
/// `target` of the same level, possibly running on into `target + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BackRef {
    pub target: u64,
    pub offset: u32,
}

/// One level of the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub(crate) block_len: u64,
    pub(crate) layout: Layout,
    pub(crate) marked: BitVec,
    /// One per unmarked block, in block order.
    pub(crate) refs: Vec<BackRef>,
    pub(crate) run_breaks: Vec<u64>,
    /// Marked block: index of its first child; unmarked block: index into
    /// `refs`.
    pub(crate) link: Vec<u32>,
}

impl Level {
    pub(crate) fn new(
        block_len: u64,
        layout: Layout,
        marked: BitVec,
        refs: Vec<BackRef>,
        tau: u32,
    ) -> Self {
        let run_breaks = layout.run_breaks();
        let mut level = Self {
            block_len,
            layout,
            marked,
            refs,
            run_breaks,
            link: Vec::new(),
        };
        level.relink(tau);
        level
    }

    pub(crate) fn relink(&mut self, tau: u32) {
        let mut link = Vec::with_capacity(self.layout.len());
        let (mut child, mut unmarked) = (0u32, 0u32);
        for i in 0..self.layout.len() {
            if self.marked.get(i) {
                link.push(child);
                child += layout::child_count(self.layout.lens[i], tau);
            } else {
                link.push(unmarked);
                unmarked += 1;
            }
        }
        self.link = link;
    }

    pub fn block_len(&self) -> u64 {
        self.block_len
    }

    pub fn len(&self) -> usize {
        self.layout.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layout.is_empty()
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn is_marked(&self, block: usize) -> bool {
        self.marked.get(block)
    }

    pub fn marked_count(&self) -> usize {
        self.marked.count_ones()
    }

    pub fn back_refs(&self) -> &[BackRef] {
        &self.refs
    }

    /// Back-reference of an unmarked block.
    pub fn back_ref(&self, block: usize) -> Option<BackRef> {
        (!self.marked.get(block)).then(|| self.refs[self.link[block] as usize])
    }

    pub fn run_breaks(&self) -> &[u64] {
        &self.run_breaks
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTree {
    pub(crate) n: u64,
    pub(crate) s: u32,
    pub(crate) tau: u32,
    pub(crate) leaf_cutoff: u32,
    pub(crate) levels: Vec<Level>,
    pub(crate) leaf_bytes: Vec<u8>,
    /// Offset of every last-level block inside `leaf_bytes`.
    pub(crate) leaf_offsets: Vec<u64>,
    pub(crate) aug: RankAugmentation,
}

impl BlockTree {
    pub(crate) fn assemble(
        n: u64,
        params: &TreeParams,
        levels: Vec<Level>,
        leaf_bytes: Vec<u8>,
        aug: RankAugmentation,
    ) -> Self {
        let mut tree = Self {
            n,
            s: params.s,
            tau: params.tau,
            leaf_cutoff: params.leaf_cutoff,
            levels,
            leaf_bytes,
            leaf_offsets: Vec::new(),
            aug,
        };
        tree.index_leaves();
        tree
    }

    pub(crate) fn index_leaves(&mut self) {
        let last = self.levels.last().expect("tree has a level");
        let mut offsets = Vec::with_capacity(last.len());
        let mut acc = 0u64;
        for &l in &last.layout.lens {
            offsets.push(acc);
            acc += l as u64;
        }
        self.leaf_offsets = offsets;
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    pub fn leaf_cutoff(&self) -> u32 {
        self.leaf_cutoff
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn leaf_bytes(&self) -> &[u8] {
        &self.leaf_bytes
    }

    pub fn tracked_symbols(&self) -> &[u8] {
        self.aug.symbols()
    }

    pub fn augmentation(&self) -> &RankAugmentation {
        &self.aug
    }

    pub fn total_blocks(&self) -> usize {
        self.levels.iter().map(Level::len).sum()
    }

    /// Rebuilds the text by expanding every block left to right. A
    /// back-reference always points strictly left, so its source is already
    /// written when it is copied.
    pub fn reconstruct(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.n as usize);
        let top = &self.levels[0];
        for j in 0..top.len() {
            self.expand_block(0, j, &mut out);
        }
        out
    }

    fn expand_block(&self, depth: usize, j: usize, out: &mut Vec<u8>) {
        let level = &self.levels[depth];
        let len = level.layout.lens[j] as usize;
        if depth + 1 == self.levels.len() {
            let off = self.leaf_offsets[j] as usize;
            out.extend_from_slice(&self.leaf_bytes[off..off + len]);
        } else if level.marked.get(j) {
            let first = level.link[j] as usize;
            let count = layout::child_count(len as u32, self.tau) as usize;
            for c in first..first + count {
                self.expand_block(depth + 1, c, out);
            }
        } else {
            let r = level.refs[level.link[j] as usize];
            let src = (level.layout.starts[r.target as usize] + r.offset as u64) as usize;
            for k in 0..len {
                let b = out[src + k];
                out.push(b);
            }
        }
    }
}
