//! Greedy LZ77 factorization with self-referential sources.
//!
//! Each factor is the longest prefix of the unparsed suffix that also starts
//! at an earlier position (the occurrence may overlap the factor), or a single
//! literal when no earlier occurrence exists. Among equally long sources the
//! smallest start is reported.
//!
//! Factor lengths come from the suffix array: the longest previous factor at
//! `i` is the longer of the common prefixes with the nearest suffixes (in
//! suffix-array order) that start before `i`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Literal(u8),
    /// `len` characters copied from 0-based `source`.
    Copy {
        source: usize,
        len: usize,
    },
}

impl Factor {
    pub fn len(&self) -> usize {
        match *self {
            Factor::Literal(_) => 1,
            Factor::Copy { len, .. } => len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Factor::Literal(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lz77Factorization {
    pub factors: Vec<Factor>,
}

impl Lz77Factorization {
    /// Number of factors.
    pub fn z(&self) -> usize {
        self.factors.len()
    }

    /// Start position (0-based) of every factor.
    pub fn starts(&self) -> Vec<usize> {
        let mut pos = 0;
        self.factors
            .iter()
            .map(|f| {
                let p = pos;
                pos += f.len();
                p
            })
            .collect()
    }

    /// Decodes the factorization back into the text.
    pub fn expand(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for f in &self.factors {
            match *f {
                Factor::Literal(b) => out.push(b),
                Factor::Copy { source, len } => {
                    // byte by byte: the source may overlap the factor
                    for k in 0..len {
                        let b = out[source + k];
                        out.push(b);
                    }
                }
            }
        }
        out
    }
}

pub fn lz77_factorize(text: &[u8]) -> Result<Lz77Factorization> {
    if text.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = text.len();
    let sa = suffix_array(text);
    let mut rank = vec![0u32; n];
    for (r, &p) in sa.iter().enumerate() {
        rank[p as usize] = r as u32;
    }
    let lcp = lcp_array(text, &sa, &rank);
    let (psv, nsv) = nearest_smaller_positions(&sa);

    let mut factors = Vec::new();
    let mut i = 0;
    while i < n {
        let r = rank[i] as usize;
        let mut best = 0;
        for cand in [psv[r], nsv[r]] {
            if cand != NONE {
                best = best.max(common_prefix(text, i, sa[cand as usize] as usize));
            }
        }
        if best == 0 {
            factors.push(Factor::Literal(text[i]));
            i += 1;
            continue;
        }
        // every suffix sharing `best` characters with suffix i lies in one
        // contiguous lcp interval around rank r; take its smallest start
        let mut source = usize::MAX;
        let mut lo = r;
        while lo > 0 && lcp[lo] as usize >= best {
            lo -= 1;
            source = source.min(sa[lo] as usize);
        }
        let mut hi = r;
        while hi + 1 < n && lcp[hi + 1] as usize >= best {
            hi += 1;
            source = source.min(sa[hi] as usize);
        }
        debug_assert!(source < i);
        factors.push(Factor::Copy { source, len: best });
        i += best;
    }
    Ok(Lz77Factorization { factors })
}

const NONE: u32 = u32::MAX;

fn common_prefix(text: &[u8], i: usize, j: usize) -> usize {
    text[i..]
        .iter()
        .zip(&text[j..])
        .take_while(|(a, b)| a == b)
        .count()
}

/// Prefix doubling, `O(n log² n)`.
pub(crate) fn suffix_array(text: &[u8]) -> Vec<u32> {
    let n = text.len();
    let mut sa: Vec<u32> = (0..n as u32).collect();
    let mut rank: Vec<u32> = text.iter().map(|&b| b as u32).collect();
    let mut next = vec![0u32; n];
    let mut k = 1;
    loop {
        let key = |i: u32, rank: &[u32]| -> u64 {
            let i = i as usize;
            let second = if i + k < n { rank[i + k] as u64 + 1 } else { 0 };
            ((rank[i] as u64) << 32) | second
        };
        sa.sort_unstable_by_key(|&i| key(i, &rank));
        next[sa[0] as usize] = 0;
        for w in 1..n {
            let bump = (key(sa[w - 1], &rank) != key(sa[w], &rank)) as u32;
            next[sa[w] as usize] = next[sa[w - 1] as usize] + bump;
        }
        std::mem::swap(&mut rank, &mut next);
        if rank[sa[n - 1] as usize] as usize == n - 1 || k >= n {
            break;
        }
        k *= 2;
    }
    sa
}

/// Kasai et al.; `lcp[r]` is the common prefix of suffixes `sa[r-1]`, `sa[r]`.
fn lcp_array(text: &[u8], sa: &[u32], rank: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && text[i + h] == text[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

/// For each rank, the nearest rank to the left and to the right whose suffix
/// starts earlier in the text.
fn nearest_smaller_positions(sa: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let n = sa.len();
    let mut psv = vec![NONE; n];
    let mut nsv = vec![NONE; n];
    let mut stack: Vec<u32> = Vec::new();
    for r in 0..n {
        while let Some(&top) = stack.last() {
            if sa[top as usize] > sa[r] {
                nsv[top as usize] = r as u32;
                stack.pop();
            } else {
                break;
            }
        }
        psv[r] = stack.last().copied().unwrap_or(NONE);
        stack.push(r as u32);
    }
    (psv, nsv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Quadratic greedy parse straight from the definition.
    fn naive_lz77(text: &[u8]) -> Vec<Factor> {
        let n = text.len();
        let mut out = Vec::new();
        let mut i = 0;
        while i < n {
            let (mut best, mut src) = (0, 0);
            for j in 0..i {
                let l = common_prefix(text, i, j);
                if l > best {
                    best = l;
                    src = j;
                }
            }
            if best == 0 {
                out.push(Factor::Literal(text[i]));
                i += 1;
            } else {
                out.push(Factor::Copy {
                    source: src,
                    len: best,
                });
                i += best;
            }
        }
        out
    }

    #[test]
    fn unary_text() {
        let f = lz77_factorize(b"aaaa").unwrap();
        assert_eq!(
            f.factors,
            vec![Factor::Literal(b'a'), Factor::Copy { source: 0, len: 3 }]
        );
        assert_eq!(f.z(), 2);
    }

    #[test]
    fn no_repeats() {
        let f = lz77_factorize(b"ab").unwrap();
        assert_eq!(
            f.factors,
            vec![Factor::Literal(b'a'), Factor::Literal(b'b')]
        );
    }

    #[test]
    fn period_two() {
        let f = lz77_factorize(b"abab").unwrap();
        assert_eq!(
            f.factors,
            vec![
                Factor::Literal(b'a'),
                Factor::Literal(b'b'),
                Factor::Copy { source: 0, len: 2 }
            ]
        );
        assert_eq!(f.starts(), vec![0, 1, 2]);
    }

    #[test]
    fn figure_text() {
        let t = b"abrainadrain";
        let f = lz77_factorize(t).unwrap();
        assert_eq!(f.factors, naive_lz77(t));
        assert_eq!(f.expand(), t);
    }

    #[test]
    fn empty_rejected() {
        assert!(lz77_factorize(b"").is_err());
    }

    #[test]
    fn suffix_array_sorted() {
        let t = b"mississippi";
        let sa = suffix_array(t);
        for w in sa.windows(2) {
            assert!(t[w[0] as usize..] < t[w[1] as usize..]);
        }
    }

    proptest! {
        #[test]
        fn matches_quadratic_parse(text in proptest::collection::vec(0u8..3, 1..300)) {
            let f = lz77_factorize(&text).unwrap();
            prop_assert_eq!(&f.factors, &naive_lz77(&text));
        }

        #[test]
        fn round_trip(text in proptest::collection::vec(any::<u8>(), 1..500)) {
            let f = lz77_factorize(&text).unwrap();
            prop_assert_eq!(f.expand(), text.clone());
            for (start, factor) in f.starts().into_iter().zip(&f.factors) {
                if let Factor::Copy { source, .. } = *factor {
                    prop_assert!(source < start);
                }
            }
        }

        #[test]
        fn round_trip_repetitive(seed in proptest::collection::vec(0u8..4, 1..40), reps in 1usize..20) {
            let text: Vec<u8> = seed.iter().copied().cycle().take(seed.len() * reps).collect();
            let f = lz77_factorize(&text).unwrap();
            prop_assert_eq!(f.expand(), text.clone());
            prop_assert_eq!(&f.factors, &naive_lz77(&text));
        }
    }
}
