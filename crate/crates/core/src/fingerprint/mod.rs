//! Karp-Rabin fingerprints with `q = 2^32` and `r = 33`.
//!
//! `φ(s..e) = Σ T[i]·r^(e-i) mod q`. The modulus is the natural wraparound of
//! `u32` arithmetic, so no explicit reduction appears anywhere. A fingerprint
//! carries its window length: windows of different lengths never compare
//! equal. Equal fingerprints do not imply equal strings; every caller
//! confirms a match by comparing bytes.

mod blocked;

pub use blocked::{blocked_windows_into, BlockedWindows};

use crate::error::{Error, Result};

/// Base multiplier `r`.
pub const BASE: u32 = 33;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub value: u32,
    pub len: u32,
}

/// `r^k mod q`, by squaring.
pub fn power(mut k: u64) -> u32 {
    let mut base = BASE;
    let mut acc = 1u32;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.wrapping_mul(base);
        }
        base = base.wrapping_mul(base);
        k >>= 1;
    }
    acc
}

/// Table of `r^k mod q` for `k ≤ max_len`.
#[derive(Debug, Clone)]
pub struct FingerprintParams {
    powers: Vec<u32>,
}

impl FingerprintParams {
    pub fn new(max_len: usize) -> Self {
        let mut powers = Vec::with_capacity(max_len + 1);
        powers.push(1u32);
        for k in 1..=max_len {
            powers.push(powers[k - 1].wrapping_mul(BASE));
        }
        Self { powers }
    }

    pub fn max_len(&self) -> usize {
        self.powers.len() - 1
    }

    /// `r^k`, falling back to squaring beyond the table.
    pub fn pow(&self, k: usize) -> u32 {
        self.powers
            .get(k)
            .copied()
            .unwrap_or_else(|| power(k as u64))
    }
}

/// Horner evaluation over a whole slice.
#[inline]
pub fn fingerprint(bytes: &[u8]) -> Fingerprint {
    let value = bytes
        .iter()
        .fold(0u32, |h, &b| h.wrapping_mul(BASE).wrapping_add(b as u32));
    Fingerprint {
        value,
        len: bytes.len() as u32,
    }
}

/// Fingerprint of the concatenation `a·b` from the parts.
#[inline]
pub fn concat(a: Fingerprint, b: Fingerprint) -> Fingerprint {
    Fingerprint {
        value: a
            .value
            .wrapping_mul(power(b.len as u64))
            .wrapping_add(b.value),
        len: a.len + b.len,
    }
}

fn check_range(n: usize, s: u64, e: u64) -> Result<()> {
    if s == 0 || s > n as u64 {
        return Err(Error::OutOfBounds {
            pos: s,
            min: 1,
            max: n as u64,
        });
    }
    if e < s || e > n as u64 {
        return Err(Error::OutOfBounds {
            pos: e,
            min: s,
            max: n as u64,
        });
    }
    Ok(())
}

/// Evaluates the defining sum for the 1-based inclusive range `s..=e`, one
/// power per term. Reference for every other routine in this module.
pub fn fp_direct(text: &[u8], s: u64, e: u64, params: &FingerprintParams) -> Result<Fingerprint> {
    check_range(text.len(), s, e)?;
    let mut value = 0u32;
    for i in s..=e {
        let term = (text[(i - 1) as usize] as u32).wrapping_mul(params.pow((e - i) as usize));
        value = value.wrapping_add(term);
    }
    Ok(Fingerprint {
        value,
        len: (e - s + 1) as u32,
    })
}

/// Slides a window one character right: drops `out_char`, appends `in_char`.
/// `top_power` is `r^len`.
#[inline]
pub fn fp_roll(prev: Fingerprint, out_char: u8, in_char: u8, top_power: u32) -> Fingerprint {
    let value = prev
        .value
        .wrapping_mul(BASE)
        .wrapping_sub((out_char as u32).wrapping_mul(top_power))
        .wrapping_add(in_char as u32);
    Fingerprint {
        value,
        len: prev.len,
    }
}

/// Scalar stream of all length-`ell` window fingerprints of a slice: one
/// direct evaluation, then rolling updates.
pub struct RollingWindows<'a> {
    bytes: &'a [u8],
    ell: usize,
    next: usize,
    top_power: u32,
    current: Fingerprint,
}

impl<'a> RollingWindows<'a> {
    pub fn new(bytes: &'a [u8], ell: usize) -> Self {
        assert!(ell > 0, "window length must be positive");
        let current = if bytes.len() >= ell {
            fingerprint(&bytes[..ell])
        } else {
            Fingerprint {
                value: 0,
                len: ell as u32,
            }
        };
        Self {
            bytes,
            ell,
            next: 0,
            top_power: power(ell as u64),
            current,
        }
    }
}

impl Iterator for RollingWindows<'_> {
    type Item = Fingerprint;

    #[inline]
    fn next(&mut self) -> Option<Fingerprint> {
        let p = self.next;
        if p + self.ell > self.bytes.len() {
            return None;
        }
        if p > 0 {
            self.current = fp_roll(
                self.current,
                self.bytes[p - 1],
                self.bytes[p + self.ell - 1],
                self.top_power,
            );
        }
        self.next += 1;
        Some(self.current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.bytes.len() + 1).saturating_sub(self.ell + self.next);
        (left, Some(left))
    }
}

/// Appends the values of all length-`ell` windows of `bytes` using the
/// scalar rolling relation.
pub fn scalar_windows_into(bytes: &[u8], ell: usize, out: &mut Vec<u32>) {
    out.extend(RollingWindows::new(bytes, ell).map(|f| f.value));
}

fn check_windows(n: usize, ell: usize, lo: u64, hi: u64) -> Result<()> {
    if ell == 0 {
        return Err(Error::InvalidParams(
            "window length must be positive".into(),
        ));
    }
    check_range(n, lo, hi)?;
    if (ell as u64) > hi - lo + 1 {
        return Err(Error::InvalidParams(format!(
            "window length {ell} exceeds range {lo}..={hi}"
        )));
    }
    Ok(())
}

/// Fingerprints of `T[p..p+ell-1]` for `p = lo ..= hi-ell+1` (1-based),
/// scalar rolling path.
pub fn fp_all_windows(text: &[u8], ell: usize, lo: u64, hi: u64) -> Result<Vec<Fingerprint>> {
    check_windows(text.len(), ell, lo, hi)?;
    Ok(RollingWindows::new(&text[(lo - 1) as usize..hi as usize], ell).collect())
}

/// Same contract as [`fp_all_windows`], computed by the blocked 16-lane kernel.
pub fn fp_blocked_windows(text: &[u8], ell: usize, lo: u64, hi: u64) -> Result<Vec<Fingerprint>> {
    check_windows(text.len(), ell, lo, hi)?;
    let mut values = Vec::new();
    blocked_windows_into(&text[(lo - 1) as usize..hi as usize], ell, &mut values);
    Ok(values
        .into_iter()
        .map(|value| Fingerprint {
            value,
            len: ell as u32,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::synth;

    #[test]
    fn single_char() {
        let p = FingerprintParams::new(4);
        let f = fp_direct(b"a", 1, 1, &p).unwrap();
        assert_eq!(f, Fingerprint { value: 97, len: 1 });
    }

    #[test]
    fn two_chars() {
        let p = FingerprintParams::new(4);
        assert_eq!(fp_direct(b"ab", 1, 2, &p).unwrap().value, 97 * 33 + 98);
        assert_eq!(fp_direct(b"ab", 1, 2, &p).unwrap().value, 3299);
    }

    #[test]
    fn repeated_block_in_figure_text() {
        let p = FingerprintParams::new(16);
        let t = b"abrainadrain";
        assert_eq!(
            fp_direct(t, 3, 4, &p).unwrap(),
            fp_direct(t, 9, 10, &p).unwrap()
        );
    }

    #[test]
    fn direct_rejects_bad_ranges() {
        let p = FingerprintParams::new(4);
        assert!(fp_direct(b"abc", 0, 1, &p).is_err());
        assert!(fp_direct(b"abc", 2, 1, &p).is_err());
        assert!(fp_direct(b"abc", 1, 4, &p).is_err());
    }

    #[test]
    fn power_table_matches_squaring() {
        let p = FingerprintParams::new(300);
        for k in 0..=300 {
            assert_eq!(p.pow(k), power(k as u64));
        }
        assert_eq!(p.pow(1000), power(1000));
        assert_eq!(p.pow(0), 1);
    }

    #[test]
    fn roll_ab_to_br() {
        let p = FingerprintParams::new(4);
        let t = b"abr";
        let ab = fp_direct(t, 1, 2, &p).unwrap();
        let br = fp_roll(ab, b'a', b'r', p.pow(2));
        let expect = 3299u32
            .wrapping_mul(33)
            .wrapping_sub(97 * 33 * 33)
            .wrapping_add(114);
        assert_eq!(br.value, expect);
        assert_eq!(br, fp_direct(t, 2, 3, &p).unwrap());
    }

    #[test]
    fn roll_constant_on_unary() {
        let values: Vec<_> = RollingWindows::new(b"aaaa", 2).collect();
        assert_eq!(values.len(), 3);
        assert!(values.iter().all(|&f| f == values[0]));
    }

    #[test]
    fn roll_matches_direct_everywhere() {
        let t = synth::random(256, 256, 3);
        let p = FingerprintParams::new(32);
        let got: Vec<_> = RollingWindows::new(&t, 17).collect();
        assert_eq!(got.len(), 240);
        for (i, f) in got.iter().enumerate() {
            let s = i as u64 + 1;
            assert_eq!(*f, fp_direct(&t, s, s + 16, &p).unwrap());
        }
    }

    #[test]
    fn all_windows_examples() {
        let w = fp_all_windows(b"abab", 2, 1, 4).unwrap();
        assert_eq!(w[0], w[2]);
        assert_ne!(w[0], w[1]);
        let w = fp_all_windows(b"abrainadrain", 2, 1, 12).unwrap();
        assert_eq!(w[2], w[8]);
        assert_eq!(w[4], w[10]);
    }

    #[test]
    fn all_windows_subrange_and_errors() {
        let t = synth::random(4096, 256, 9);
        let p = FingerprintParams::new(64);
        let w = fp_all_windows(&t, 64, 1, 4096).unwrap();
        assert_eq!(w.len(), 4033);
        for (i, f) in w.iter().enumerate() {
            let s = i as u64 + 1;
            assert_eq!(*f, fp_direct(&t, s, s + 63, &p).unwrap());
        }
        let w = fp_all_windows(&t, 5, 100, 110).unwrap();
        assert_eq!(w.len(), 7);
        assert_eq!(w[0], fp_direct(&t, 100, 104, &p).unwrap());
        assert!(fp_all_windows(&t, 0, 1, 10).is_err());
        assert!(fp_all_windows(&t, 11, 1, 10).is_err());
        assert!(fp_all_windows(&t, 2, 1, 5000).is_err());
    }

    #[test]
    fn concat_matches_whole() {
        let t = b"abrainadrain";
        assert_eq!(
            concat(fingerprint(&t[..5]), fingerprint(&t[5..])),
            fingerprint(t)
        );
    }
}
