use serde::Serialize;

use super::BlockTree;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelStats {
    pub block_len: u64,
    pub blocks: usize,
    pub marked: usize,
    pub unmarked: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeStats {
    pub n: u64,
    pub levels: Vec<LevelStats>,
    pub total_blocks: usize,
    pub leaf_bytes: usize,
    pub serialized_size: u64,
    /// Serialized size divided by the text length.
    pub ratio: f64,
    pub lz77_factors: Option<usize>,
    /// Non-top levels with more than `3zτ` blocks.
    pub levels_over_bound: Vec<usize>,
}

impl TreeStats {
    /// `name=value` lines.
    pub fn to_lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("n={}", self.n),
            format!("levels={}", self.levels.len()),
            format!("total_blocks={}", self.total_blocks),
            format!("leaf_bytes={}", self.leaf_bytes),
            format!("serialized_size={}", self.serialized_size),
            format!("ratio={:.6}", self.ratio),
        ];
        for (k, l) in self.levels.iter().enumerate() {
            out.push(format!("level{k}_block_len={}", l.block_len));
            out.push(format!("level{k}_blocks={}", l.blocks));
            out.push(format!("level{k}_marked={}", l.marked));
            out.push(format!("level{k}_unmarked={}", l.unmarked));
        }
        if let Some(z) = self.lz77_factors {
            out.push(format!("lz77_z={z}"));
            let over: Vec<String> = self
                .levels_over_bound
                .iter()
                .map(|k| k.to_string())
                .collect();
            out.push(format!("levels_over_3z_tau={}", over.join(",")));
        }
        out
    }
}

impl BlockTree {
    /// Per-level counts and size; with `z` given, also the non-top levels
    /// holding more than `3zτ` blocks.
    pub fn stats(&self, z: Option<usize>) -> TreeStats {
        let levels: Vec<LevelStats> = self
            .levels
            .iter()
            .map(|l| {
                let marked = l.marked_count();
                LevelStats {
                    block_len: l.block_len,
                    blocks: l.len(),
                    marked,
                    unmarked: l.len() - marked,
                }
            })
            .collect();
        let serialized_size = self.serialized_size();
        let levels_over_bound = match z {
            Some(z) => {
                let bound = 3 * z as u64 * self.tau as u64;
                levels
                    .iter()
                    .enumerate()
                    .skip(1)
                    .filter(|(_, l)| l.blocks as u64 > bound)
                    .map(|(k, _)| k)
                    .collect()
            }
            None => Vec::new(),
        };
        TreeStats {
            n: self.n,
            total_blocks: levels.iter().map(|l| l.blocks).sum(),
            levels,
            leaf_bytes: self.leaf_bytes.len(),
            serialized_size,
            ratio: serialized_size as f64 / self.n as f64,
            lz77_factors: z,
            levels_over_bound,
        }
    }
}
