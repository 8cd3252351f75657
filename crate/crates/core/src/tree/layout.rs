//! Block geometry of a level.
//!
//! The top level splits the text into `min(s, n)` blocks and every marked
//! block of length `m` is split into `min(τ, m)` children. Splits are
//! balanced: part lengths differ by at most one, longer parts first. All
//! blocks of a level therefore have length `L` or `L - 1`, so a window as
//! long as a block never spans more than two blocks.

/// Start positions (0-based) and lengths of the blocks of one level, in text
/// order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Layout {
    pub starts: Vec<u64>,
    pub lens: Vec<u32>,
}

/// Lengths of the balanced split of `len` into `parts` pieces.
#[inline]
pub(crate) fn split_lengths(len: u64, parts: u64) -> impl Iterator<Item = u64> {
    let q = len / parts;
    let r = len % parts;
    (0..parts).map(move |i| if i < r { q + 1 } else { q })
}

/// Index of the part containing `offset` in the balanced split.
#[inline]
pub(crate) fn part_of(len: u64, parts: u64, offset: u64) -> u64 {
    let q = len / parts;
    let r = len % parts;
    let long = r * (q + 1);
    if offset < long {
        offset / (q + 1)
    } else {
        r + (offset - long) / q
    }
}

#[inline]
pub(crate) fn child_count(len: u32, tau: u32) -> u32 {
    len.min(tau)
}

impl Layout {
    pub fn top(n: u64, s: u32) -> Self {
        let parts = (s as u64).min(n);
        let mut layout = Layout::default();
        layout.push_split(0, n, parts);
        layout
    }

    /// Children of the blocks selected by `marked`, in order.
    pub fn children(&self, tau: u32, marked: impl Fn(usize) -> bool) -> Self {
        let mut next = Layout::default();
        for i in 0..self.len() {
            if marked(i) {
                let len = self.lens[i];
                next.push_split(self.starts[i], len as u64, child_count(len, tau) as u64);
            }
        }
        next
    }

    fn push_split(&mut self, start: u64, len: u64, parts: u64) {
        let mut pos = start;
        for l in split_lengths(len, parts) {
            self.starts.push(pos);
            self.lens.push(l as u32);
            pos += l;
        }
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    #[inline]
    pub fn end(&self, i: usize) -> u64 {
        self.starts[i] + self.lens[i] as u64
    }

    /// Block `i + 1` starts where block `i` ends.
    #[inline]
    pub fn adjacent(&self, i: usize) -> bool {
        i + 1 < self.len() && self.end(i) == self.starts[i + 1]
    }

    /// Block containing text position `pos`, if the level covers it.
    pub fn block_at(&self, pos: u64) -> Option<usize> {
        let i = self.starts.partition_point(|&s| s <= pos);
        (i > 0 && pos < self.end(i - 1)).then(|| i - 1)
    }

    /// Maximal ranges `[a, b)` of blocks adjacent in the text.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let mut runs = Vec::new();
        let mut a = 0;
        for i in 0..self.len() {
            if !self.adjacent(i) {
                runs.push((a, i + 1));
                a = i + 1;
            }
        }
        runs
    }

    /// Indices `i > 0` where blocks `i - 1` and `i` are not adjacent.
    pub fn run_breaks(&self) -> Vec<u64> {
        (1..self.len())
            .filter(|&i| !self.adjacent(i - 1))
            .map(|i| i as u64)
            .collect()
    }

    pub fn covered(&self) -> u64 {
        self.lens.iter().map(|&l| l as u64).sum()
    }
}

/// Largest block length on level `k` of a tree over `n` characters.
pub(crate) fn nominal_block_len(n: u64, s: u32, tau: u32, level: usize) -> u64 {
    let mut b = n.div_ceil((s as u64).min(n));
    for _ in 0..level {
        b = b.div_ceil(tau as u64);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn figure_layout() {
        let top = Layout::top(12, 2);
        assert_eq!(top.starts, vec![0, 6]);
        assert_eq!(top.lens, vec![6, 6]);
        let l1 = top.children(3, |_| true);
        assert_eq!(l1.lens, vec![2; 6]);
        let l2 = l1.children(3, |i| i != 5);
        assert_eq!(l2.lens, vec![1; 10]);
        assert_eq!(l2.run_breaks(), Vec::<u64>::new());
        assert_eq!(l1.children(3, |i| i != 2).run_breaks(), vec![4]);
    }

    #[test]
    fn balanced_parts() {
        assert_eq!(split_lengths(7, 3).collect::<Vec<_>>(), vec![3, 2, 2]);
        assert_eq!(split_lengths(2, 2).collect::<Vec<_>>(), vec![1, 1]);
        let top = Layout::top(3, 8);
        assert_eq!(top.lens, vec![1, 1, 1]);
    }

    #[test]
    fn block_lookup() {
        let l = Layout::top(10, 3).children(2, |i| i != 1);
        // top: [0,4) [4,7) [7,10); children of 0 and 2
        assert_eq!(l.starts, vec![0, 2, 7, 9]);
        assert_eq!(l.block_at(3), Some(1));
        assert_eq!(l.block_at(5), None);
        assert_eq!(l.block_at(9), Some(3));
        assert_eq!(l.runs(), vec![(0, 2), (2, 4)]);
    }

    proptest! {
        #[test]
        fn part_of_agrees_with_split(len in 1u64..500, parts in 1u64..20) {
            prop_assume!(parts <= len);
            let mut offset = 0;
            for (i, l) in split_lengths(len, parts).enumerate() {
                prop_assert!(l >= 1);
                for o in offset..offset + l {
                    prop_assert_eq!(part_of(len, parts, o), i as u64);
                }
                offset += l;
            }
        }

        #[test]
        fn lengths_on_a_level_differ_by_at_most_one(n in 1u64..5000, s in 1u32..10, tau in 2u32..9, mask in any::<u64>()) {
            let mut layout = Layout::top(n, s);
            for level in 0..6 {
                let max = *layout.lens.iter().max().unwrap() as u64;
                let min = *layout.lens.iter().min().unwrap() as u64;
                prop_assert!(max - min <= 1);
                prop_assert!(max <= nominal_block_len(n, s, tau, level));
                if max == 1 { break; }
                layout = layout.children(tau, |i| i == 0 || (mask >> (i % 64)) & 1 == 1);
            }
        }
    }
}
