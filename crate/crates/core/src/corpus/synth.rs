//! Synthetic repetitive corpora: a random seed text repeated to the target
//! length, each copy independently mutated by point substitutions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthConfig {
    pub total_len: usize,
    pub seed_len: usize,
    /// Probability that a character of a copy is replaced.
    pub mutation_rate: f64,
    /// Symbols are drawn from `0..alphabet` (capped at 256).
    pub alphabet: u16,
    pub rng_seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            total_len: 32 << 20,
            seed_len: 16 << 10,
            mutation_rate: 0.001,
            alphabet: 256,
            rng_seed: 0x5eed,
        }
    }
}

pub fn repetitive(cfg: &SynthConfig) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let alphabet = cfg.alphabet.clamp(1, 256) as u32;
    let seed_len = cfg.seed_len.max(1);
    let seed: Vec<u8> = (0..seed_len)
        .map(|_| rng.gen_range(0..alphabet) as u8)
        .collect();

    let mut out = Vec::with_capacity(cfg.total_len);
    // first copy is the seed itself
    while out.len() < cfg.total_len {
        let take = seed_len.min(cfg.total_len - out.len());
        let from = out.len();
        out.extend_from_slice(&seed[..take]);
        if from == 0 || cfg.mutation_rate <= 0.0 {
            continue;
        }
        for b in &mut out[from..] {
            if rng.gen_bool(cfg.mutation_rate.min(1.0)) {
                *b = rng.gen_range(0..alphabet) as u8;
            }
        }
    }
    out
}

/// Uniform random bytes over `0..alphabet`.
pub fn random(len: usize, alphabet: u16, rng_seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let alphabet = alphabet.clamp(1, 256) as u32;
    (0..len).map(|_| rng.gen_range(0..alphabet) as u8).collect()
}
