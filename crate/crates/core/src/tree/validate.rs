//! Structural and text-level consistency checks.

use super::layout::{child_count, nominal_block_len};
use super::BlockTree;
use crate::error::{Error, Result};

/// Invariants that hold for any well-formed tree, checked without the text.
pub(crate) fn check_structure(tree: &BlockTree) -> std::result::Result<(), String> {
    let levels = &tree.levels;
    let last = levels.len() - 1;
    for (depth, level) in levels.iter().enumerate() {
        let layout = &level.layout;
        if layout.is_empty() {
            return Err(format!("level {depth} is empty"));
        }
        if level.block_len != nominal_block_len(tree.n, tree.s, tree.tau, depth) {
            return Err(format!("level {depth}: block length {}", level.block_len));
        }
        let is_leaf = level.block_len <= tree.leaf_cutoff as u64;
        if is_leaf != (depth == last) {
            return Err(format!("level {depth}: leaf cutoff disagrees with height"));
        }
        if depth == last && level.marked.count_ones() != layout.len() {
            return Err("last level has unmarked blocks".into());
        }
        if depth < last {
            let children: u64 = (0..layout.len())
                .filter(|&i| level.marked.get(i))
                .map(|i| child_count(layout.lens[i], tree.tau) as u64)
                .sum();
            if children != levels[depth + 1].len() as u64 {
                return Err(format!("level {depth}: child count mismatch"));
            }
        }
        for j in 0..layout.len() {
            let Some(r) = level.back_ref(j) else { continue };
            let t = r.target as usize;
            if t >= j {
                return Err(format!(
                    "level {depth} block {j}: reference not to the left"
                ));
            }
            if !level.marked.get(t) {
                return Err(format!("level {depth} block {j}: target {t} unmarked"));
            }
            if r.offset >= layout.lens[t] {
                return Err(format!("level {depth} block {j}: offset past target"));
            }
            let occ = layout.starts[t] + r.offset as u64;
            let occ_end = occ + layout.lens[j] as u64;
            if occ >= layout.starts[j] {
                return Err(format!(
                    "level {depth} block {j}: source not strictly earlier"
                ));
            }
            if occ_end > layout.end(t) {
                let spill = t + 1;
                if !layout.adjacent(t) || !level.marked.get(spill) || occ_end > layout.end(spill) {
                    return Err(format!("level {depth} block {j}: bad spill into {spill}"));
                }
            }
        }
    }
    if tree.leaf_bytes.len() as u64 != levels[last].layout.covered() {
        return Err("leaf byte count mismatch".into());
    }
    if levels[0].layout.covered() != tree.n {
        return Err("top level does not cover the text".into());
    }

    for (k, per_level) in tree.aug.all_counts().iter().enumerate() {
        let c = tree.aug.symbols()[k];
        if per_level.len() != levels.len() {
            return Err(format!("symbol {c:#04x}: level count"));
        }
        for (depth, counts) in per_level.iter().enumerate() {
            let level = &levels[depth];
            let layout = &level.layout;
            let m = layout.len();
            if counts.prefix.len() != m
                || counts.internal.len() != m
                || counts.offset.len() != level.refs.len()
            {
                return Err(format!("symbol {c:#04x} level {depth}: array lengths"));
            }
            if counts.prefix[0] != 0 {
                return Err(format!(
                    "symbol {c:#04x} level {depth}: nonzero first prefix"
                ));
            }
            for j in 0..m {
                if counts.internal[j] > layout.lens[j] as u64 {
                    return Err(format!(
                        "symbol {c:#04x} level {depth}: count exceeds block"
                    ));
                }
                if j + 1 < m && counts.prefix[j + 1] != counts.prefix[j] + counts.internal[j] {
                    return Err(format!("symbol {c:#04x} level {depth}: prefix counts"));
                }
            }
            if depth == last {
                let mut offset = 0usize;
                for j in 0..m {
                    let len = layout.lens[j] as usize;
                    let seen = tree.leaf_bytes[offset..offset + len]
                        .iter()
                        .filter(|&&b| b == c)
                        .count();
                    if seen as u64 != counts.internal[j] {
                        return Err(format!("symbol {c:#04x}: leaf count"));
                    }
                    offset += len;
                }
                continue;
            }
            let below = &per_level[depth + 1];
            for j in 0..m {
                let link = level.link[j] as usize;
                if level.marked.get(j) {
                    let count = child_count(layout.lens[j], tree.tau) as usize;
                    let sum: u64 = below.internal[link..link + count].iter().sum();
                    if sum != counts.internal[j] {
                        return Err(format!("symbol {c:#04x} level {depth}: children sum"));
                    }
                } else {
                    let r = level.refs[link];
                    let t = r.target as usize;
                    let before = counts.offset[link];
                    if before > counts.internal[t] {
                        return Err(format!("symbol {c:#04x} level {depth}: offset count"));
                    }
                    let avail = counts.internal[t] - before
                        + if t + 1 < m { counts.internal[t + 1] } else { 0 };
                    if counts.internal[j] > avail {
                        return Err(format!("symbol {c:#04x} level {depth}: source count"));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Full check against the original text: structure, byte equality of every
/// back-reference with its source, leaf bytes, counts and reconstruction.
pub fn validate(tree: &BlockTree, text: &[u8]) -> Result<()> {
    let fail = |msg: String| Err(Error::Invalid(msg));
    if tree.n != text.len() as u64 {
        return fail(format!(
            "tree length {} != text length {}",
            tree.n,
            text.len()
        ));
    }
    check_structure(tree).map_err(Error::Invalid)?;
    let last = tree.levels.len() - 1;
    for (depth, level) in tree.levels.iter().enumerate() {
        let layout = &level.layout;
        for j in 0..layout.len() {
            let start = layout.starts[j] as usize;
            let len = layout.lens[j] as usize;
            if depth == last {
                let off = tree.leaf_offsets[j] as usize;
                if tree.leaf_bytes[off..off + len] != text[start..start + len] {
                    return fail(format!("leaf block {j} differs from text"));
                }
            } else if let Some(r) = level.back_ref(j) {
                let src = (layout.starts[r.target as usize] + r.offset as u64) as usize;
                if text[src..src + len] != text[start..start + len] {
                    return fail(format!("level {depth} block {j}: source bytes differ"));
                }
            }
        }
    }
    for &c in tree.aug.symbols() {
        let counts = tree.aug.counts(c).expect("tracked");
        for (depth, level) in tree.levels.iter().enumerate() {
            let layout = &level.layout;
            for j in 0..layout.len() {
                let start = layout.starts[j] as usize;
                let seen = text[start..start + layout.lens[j] as usize]
                    .iter()
                    .filter(|&&b| b == c)
                    .count() as u64;
                if seen != counts[depth].internal[j] {
                    return fail(format!("symbol {c:#04x} level {depth} block {j}: count"));
                }
            }
            for (k, r) in level.refs.iter().enumerate() {
                let start = layout.starts[r.target as usize] as usize;
                let seen = text[start..start + r.offset as usize]
                    .iter()
                    .filter(|&&b| b == c)
                    .count() as u64;
                if seen != counts[depth].offset[k] {
                    return fail(format!("symbol {c:#04x} level {depth}: offset count"));
                }
            }
        }
    }
    if tree.reconstruct() != text {
        return fail("reconstruction differs from text".into());
    }
    Ok(())
}
