//! Throughput benchmarks with CSV output. The column layout is part of the
//! interface; see [`FP_HEADER`] and [`BUILD_HEADER`].

use std::hint::black_box;
use std::io::Write;
use std::path::Path;
use std::thread;
use std::time::{Duration, Instant};

use blocktree::alloc_track;
use blocktree::corpus::synth::{random, repetitive, SynthConfig};
use blocktree::fingerprint::{blocked_windows_into, scalar_windows_into};
use blocktree::{build_parallel, Text};

use crate::commands::{build_config, tree_params};
use crate::{BuildArgs, CmdResult, Failure, SynthArgs};

pub const FP_HEADER: &str = "kernel,ell,bytes,repeats,best_seconds,mib_per_s";

pub const BUILD_HEADER: &str = "source,n,synth_len,synth_seed_len,synth_mutation,synth_alphabet,synth_rng_seed,\
s,tau,leaf_cutoff,prune,workers,queue_capacity,repeat,seconds,mib_per_s,peak_heap_bytes,peak_heap_pct,serialized_bytes";

type Kernel = fn(&[u8], usize, &mut Vec<u32>);

fn mib_per_s(bytes: usize, time: Duration) -> f64 {
    bytes as f64 / (1 << 20) as f64 / time.as_secs_f64().max(1e-9)
}

pub fn bench_fp(
    input: Option<&Path>,
    len: usize,
    ells: &[usize],
    repeats: usize,
    out: &mut dyn Write,
) -> CmdResult {
    let text = match input {
        Some(path) => Text::load(path)?.into_bytes(),
        None => random(len, 256, 1),
    };
    if ells.iter().any(|&e| e == 0 || e > text.len()) {
        return Err(Failure::usage(format!(
            "window lengths must be in 1..={}",
            text.len()
        )));
    }
    writeln!(out, "{FP_HEADER}")?;
    let mut buf = Vec::with_capacity(text.len());
    for &ell in ells {
        let kernels: [(&str, Kernel); 2] = [
            ("scalar", scalar_windows_into),
            ("blocked", blocked_windows_into),
        ];
        for (name, kernel) in kernels {
            let mut best = Duration::MAX;
            for _ in 0..repeats.max(1) {
                buf.clear();
                let started = Instant::now();
                kernel(&text, ell, &mut buf);
                black_box(&buf);
                best = best.min(started.elapsed());
            }
            writeln!(
                out,
                "{name},{ell},{},{},{:.6},{:.1}",
                text.len(),
                repeats.max(1),
                best.as_secs_f64(),
                mib_per_s(text.len(), best)
            )?;
        }
    }
    Ok(())
}

/// Worker counts 1, 2, 4, ... up to `max`, always ending at `max`.
pub fn worker_series(max: usize) -> Vec<usize> {
    let max = max.max(1);
    let mut series: Vec<usize> = std::iter::successors(Some(1usize), |w| Some(w * 2))
        .take_while(|&w| w < max)
        .collect();
    series.push(max);
    series
}

pub fn bench_build(
    input: Option<&Path>,
    args: &BuildArgs,
    synth: &SynthArgs,
    max_workers: Option<usize>,
    repeats: usize,
    out: &mut dyn Write,
) -> CmdResult {
    let (text, source, synth_cols) = match input {
        Some(path) => (
            Text::load(path)?,
            path.display().to_string(),
            ",,,,".to_string(),
        ),
        None => {
            let cfg = SynthConfig {
                total_len: synth.synth_len,
                seed_len: synth.synth_seed_len,
                mutation_rate: synth.synth_mutation,
                alphabet: synth.synth_alphabet,
                rng_seed: synth.synth_rng_seed,
            };
            let cols = format!(
                "{},{},{},{},{}",
                cfg.total_len, cfg.seed_len, cfg.mutation_rate, cfg.alphabet, cfg.rng_seed
            );
            (Text::new(repetitive(&cfg))?, "synthetic".to_string(), cols)
        }
    };
    let params = tree_params(&text, args);
    let series = match args.workers {
        Some(w) => vec![w],
        None => worker_series(
            max_workers.unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get())),
        ),
    };
    writeln!(out, "{BUILD_HEADER}")?;
    for workers in series {
        let mut config = build_config(args);
        config.workers = workers;
        for repeat in 0..repeats.max(1) {
            let base = alloc_track::current();
            alloc_track::reset_peak();
            let started = Instant::now();
            let tree = build_parallel(&text, &params, &config)?;
            let wall = started.elapsed();
            let peak = alloc_track::peak().saturating_sub(base);
            writeln!(
                out,
                "{source},{},{synth_cols},{},{},{},{},{workers},{},{repeat},{:.4},{:.2},{peak},{:.1},{}",
                text.len(),
                params.s,
                params.tau,
                params.leaf_cutoff,
                config.prune,
                config.queue_capacity,
                wall.as_secs_f64(),
                mib_per_s(text.len(), wall),
                peak as f64 / text.len() as f64 * 100.0,
                tree.serialized_size()
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series() {
        assert_eq!(worker_series(1), [1]);
        assert_eq!(worker_series(4), [1, 2, 4]);
        assert_eq!(worker_series(6), [1, 2, 4, 6]);
    }
}
