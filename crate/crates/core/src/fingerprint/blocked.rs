//! Blocked window fingerprints, 16 lanes per iteration.
//!
//! For windows longer than 16 characters every iteration advances 16 windows
//! at once:
//!
//! ```text
//! φ(s..e) = φ(s-16..e-16)·r^16 − φ(s-16..s-1)·r^(e-s+1) + φ(e-15..e)
//! ```
//!
//! The 16-gram hashes `φ(i..i+15)` are produced by a pipeline that builds
//! pair hashes (weights `(r, 1)`), then 4-gram hashes (weights `(r², 1)`),
//! then 8- and 16-grams, carrying the previous iteration's 4- and 8-gram
//! vectors forward. Leading 16-grams are cached in a ring buffer until the
//! window start reaches them; for very long windows a second pipeline
//! recomputes the trailing 16-grams instead of caching them. Windows of at
//! most 16 characters are hashed directly from the characters.
//!
//! Every lane loop is plain fixed-size array code over `u32` with wrapping
//! arithmetic, which the compiler vectorizes. On x86-64 the same code is
//! also compiled with AVX2 enabled and picked at runtime, since the baseline
//! target has no 32-bit vector multiply. Output is bit-identical to the
//! scalar rolling path.

use super::{power, BASE};

const LANES: usize = 16;
const R2: u32 = BASE * BASE;
const R4: u32 = R2 * R2;
const R8: u32 = R4.wrapping_mul(R4);
const R16: u32 = R8.wrapping_mul(R8);

/// Ring buffers above this many 16-gram slots switch to recomputation.
const RING_LIMIT: usize = 1 << 16;

type Lanes = [u32; LANES];

#[inline(always)]
fn load<const N: usize>(bytes: &[u8], base: usize) -> [u32; N] {
    let mut c = [0u32; N];
    if let Some(src) = bytes.get(base..base + N) {
        for (slot, &b) in c.iter_mut().zip(src) {
            *slot = b as u32;
        }
    } else {
        for (k, slot) in c.iter_mut().enumerate() {
            *slot = bytes.get(base + k).map_or(0, |&b| b as u32);
        }
    }
    c
}

/// 4-gram hashes at positions `base..base+16`. Positions past the end see
/// zero padding.
#[inline(always)]
fn hash4(bytes: &[u8], base: usize) -> Lanes {
    let c: [u32; 19] = load(bytes, base);
    let mut pair = [0u32; 18];
    for j in 0..18 {
        pair[j] = c[j] * BASE + c[j + 1];
    }
    let mut h4 = [0u32; LANES];
    for j in 0..LANES {
        h4[j] = pair[j] * R2 + pair[j + 2];
    }
    h4
}

/// `out[j] = a[j]·w + (a ++ b)[j + shift]`
#[inline(always)]
fn combine(a: &Lanes, b: &Lanes, w: u32, shift: usize) -> Lanes {
    let mut joined = [0u32; 2 * LANES];
    joined[..LANES].copy_from_slice(a);
    joined[LANES..].copy_from_slice(b);
    let mut out = [0u32; LANES];
    for j in 0..LANES {
        out[j] = a[j].wrapping_mul(w).wrapping_add(joined[j + shift]);
    }
    out
}

/// Produces 16-gram hashes block by block (block `m` = positions
/// `16m..16m+16`).
struct Hash16Pipeline {
    block: usize,
    h4_next: Lanes,
    h8_cur: Lanes,
}

impl Hash16Pipeline {
    fn new(bytes: &[u8], block: usize) -> Self {
        let h4_cur = hash4(bytes, block * LANES);
        let h4_next = hash4(bytes, (block + 1) * LANES);
        Self {
            block,
            h4_next,
            h8_cur: combine(&h4_cur, &h4_next, R4, 4),
        }
    }

    #[inline(always)]
    fn advance(&mut self, bytes: &[u8]) -> Lanes {
        let h4_after = hash4(bytes, (self.block + 2) * LANES);
        let h8_next = combine(&self.h4_next, &h4_after, R4, 4);
        let h16 = combine(&self.h8_cur, &h8_next, R8, 8);
        self.h4_next = h4_after;
        self.h8_cur = h8_next;
        self.block += 1;
        h16
    }
}

/// Power-of-two ring of 16-gram hashes followed by a copy of its first 16
/// slots, so any 16 consecutive entries can be read as one slice.
#[allow(clippy::large_enum_variant)]
enum Ring {
    Inline([u32; 64 + LANES]),
    Heap(Vec<u32>),
}

impl Ring {
    fn slots(&mut self) -> &mut [u32] {
        match self {
            Ring::Inline(a) => a,
            Ring::Heap(v) => v,
        }
    }
}

enum Trailing {
    /// Leading 16-grams cached until the window start catches up.
    Ring {
        ring: Ring,
        mask: usize,
        upto: usize,
    },
    /// Trailing 16-grams recomputed; the leading pipeline keeps two blocks
    /// to serve unaligned reads.
    Recompute {
        trail: Hash16Pipeline,
        lead_cur: Lanes,
        lead_next: Lanes,
    },
}

struct LongState {
    lead: Hash16Pipeline,
    top: u32,
    prev: Lanes,
    trailing: Trailing,
}

enum Mode {
    Short,
    Long(Box<LongState>),
}

/// Streaming blocked fingerprints of every length-`ell` window of a slice.
pub struct BlockedWindows<'a> {
    bytes: &'a [u8],
    ell: usize,
    count: usize,
    emitted: usize,
    mode: Mode,
}

impl<'a> BlockedWindows<'a> {
    pub fn new(bytes: &'a [u8], ell: usize) -> Self {
        assert!(ell > 0, "window length must be positive");
        let count = (bytes.len() + 1).saturating_sub(ell);
        let mode = if ell <= LANES || count == 0 {
            Mode::Short
        } else {
            let trailing = if ell + 2 * LANES <= RING_LIMIT {
                let cap = (ell + 2 * LANES).next_power_of_two();
                let ring = if cap <= 64 {
                    Ring::Inline([0; 64 + LANES])
                } else {
                    Ring::Heap(vec![0; cap + LANES])
                };
                Trailing::Ring {
                    ring,
                    mask: cap - 1,
                    upto: 0,
                }
            } else {
                Trailing::Recompute {
                    trail: Hash16Pipeline::new(bytes, 0),
                    lead_cur: [0; LANES],
                    lead_next: [0; LANES],
                }
            };
            let lead_block = match trailing {
                Trailing::Ring { .. } => 0,
                Trailing::Recompute { .. } => ell / LANES,
            };
            Mode::Long(Box::new(LongState {
                lead: Hash16Pipeline::new(bytes, lead_block),
                top: power(ell as u64),
                prev: [0; LANES],
                trailing,
            }))
        };
        let mut me = Self {
            bytes,
            ell,
            count,
            emitted: 0,
            mode,
        };
        if let Mode::Long(state) = &mut me.mode {
            if let Trailing::Recompute {
                lead_cur,
                lead_next,
                ..
            } = &mut state.trailing
            {
                *lead_cur = state.lead.advance(bytes);
                *lead_next = state.lead.advance(bytes);
            }
        }
        me
    }

    pub fn window_len(&self) -> usize {
        self.ell
    }

    pub fn remaining(&self) -> usize {
        self.count - self.emitted
    }

    /// Appends roughly `max` more fingerprints (rounded up to a whole block
    /// of 16, capped by what is left). Returns the number appended.
    pub fn fill(&mut self, out: &mut Vec<u32>, max: usize) -> usize {
        #[cfg(target_arch = "x86_64")]
        if std::is_x86_feature_detected!("avx2") {
            // SAFETY: the CPU supports AVX2, checked just above.
            return unsafe { self.fill_avx2(out, max) };
        }
        self.fill_lanes(out, max)
    }

    #[cfg(target_arch = "x86_64")]
    #[target_feature(enable = "avx2")]
    unsafe fn fill_avx2(&mut self, out: &mut Vec<u32>, max: usize) -> usize {
        self.fill_lanes(out, max)
    }

    #[inline(always)]
    fn fill_lanes(&mut self, out: &mut Vec<u32>, max: usize) -> usize {
        let before = out.len();
        while self.emitted < self.count && out.len() - before < max.max(1) {
            let lanes = match &mut self.mode {
                Mode::Short => short_block(self.bytes, self.emitted, self.ell),
                Mode::Long(state) => long_block(state, self.bytes, self.emitted, self.ell),
            };
            let take = LANES.min(self.count - self.emitted);
            out.extend_from_slice(&lanes[..take]);
            self.emitted += take;
        }
        out.len() - before
    }
}

/// Windows `p..p+16` of length ≤ 16, each computed from its characters.
#[inline(always)]
fn short_block(bytes: &[u8], p: usize, ell: usize) -> Lanes {
    let c: [u32; 2 * LANES] = load(bytes, p);
    let mut acc = [0u32; LANES];
    for k in 0..ell {
        for j in 0..LANES {
            acc[j] = acc[j].wrapping_mul(BASE).wrapping_add(c[j + k]);
        }
    }
    acc
}

#[inline(always)]
fn long_block(state: &mut LongState, bytes: &[u8], p: usize, ell: usize) -> Lanes {
    if p == 0 {
        return first_block(state, bytes, ell);
    }

    let top = state.top;
    let mut out = [0u32; LANES];
    match &mut state.trailing {
        Trailing::Ring { ring, mask, upto } => {
            let slots = ring.slots();
            let cap = *mask + 1;
            while *upto < p + ell {
                let h16 = state.lead.advance(bytes);
                let at = *upto & *mask;
                slots[at..at + LANES].copy_from_slice(&h16);
                if at == 0 {
                    slots[cap..cap + LANES].copy_from_slice(&h16);
                }
                *upto += LANES;
            }
            let old = (p - LANES) & *mask;
            let new = (p - LANES + ell) & *mask;
            let old = &slots[old..old + LANES];
            let new = &slots[new..new + LANES];
            for j in 0..LANES {
                out[j] = state.prev[j]
                    .wrapping_mul(R16)
                    .wrapping_sub(old[j].wrapping_mul(top))
                    .wrapping_add(new[j]);
            }
        }
        Trailing::Recompute {
            trail,
            lead_cur,
            lead_next,
        } => {
            let old = trail.advance(bytes);
            let shift = (p - LANES + ell) % LANES;
            let fresh = if shift == 0 {
                *lead_cur
            } else {
                let mut joined = [0u32; 2 * LANES];
                joined[..LANES].copy_from_slice(lead_cur);
                joined[LANES..].copy_from_slice(lead_next);
                let mut f = [0u32; LANES];
                f.copy_from_slice(&joined[shift..shift + LANES]);
                f
            };
            for j in 0..LANES {
                out[j] = state.prev[j]
                    .wrapping_mul(R16)
                    .wrapping_sub(old[j].wrapping_mul(top))
                    .wrapping_add(fresh[j]);
            }
            *lead_cur = *lead_next;
            *lead_next = state.lead.advance(bytes);
        }
    }
    state.prev = out;
    out
}

/// The first 16 windows: one Horner pass, then scalar rolls.
#[cold]
fn first_block(state: &mut LongState, bytes: &[u8], ell: usize) -> Lanes {
    {
        let mut h = [0u32; LANES];
        let n = bytes.len();
        let mut cur = super::fingerprint(&bytes[..ell.min(n)]).value;
        h[0] = cur;
        for j in 1..LANES {
            if j + ell > n {
                break;
            }
            cur = cur
                .wrapping_mul(BASE)
                .wrapping_sub((bytes[j - 1] as u32).wrapping_mul(state.top))
                .wrapping_add(bytes[j + ell - 1] as u32);
            h[j] = cur;
        }
        state.prev = h;
        h
    }
}

/// Appends the values of all length-`ell` windows of `bytes`.
pub fn blocked_windows_into(bytes: &[u8], ell: usize, out: &mut Vec<u32>) {
    let mut w = BlockedWindows::new(bytes, ell);
    out.reserve(w.remaining());
    w.fill(out, usize::MAX);
}
