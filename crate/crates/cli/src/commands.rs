use std::fs::{self, File};
use std::io::{BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use blocktree::build::par::build_parallel_with_report;
use blocktree::tree::validate::validate;
use blocktree::{lz77_factorize, BlockTree, BuildConfig, Error, Text, TreeParams};

use crate::query::{answer, format_symbol, parse_query};
use crate::{BuildArgs, CmdResult, Failure, EXIT_FAILURE};

/// Queries checked against the text by `verify`, per query kind.
const VERIFY_SAMPLES: u64 = 1000;

pub fn tree_params(text: &Text, args: &BuildArgs) -> TreeParams {
    let mut params = TreeParams::defaults_for(text);
    if let Some(s) = args.s {
        params.s = s;
    }
    if let Some(tau) = args.tau {
        params.tau = tau;
    }
    if let Some(leaf) = args.leaf_cutoff {
        params.leaf_cutoff = leaf;
    }
    params.with_tracking(args.track.clone())
}

pub fn build_config(args: &BuildArgs) -> BuildConfig {
    let mut config = BuildConfig {
        queue_capacity: args.queue_capacity,
        prune: args.prune,
        ..BuildConfig::default()
    };
    if let Some(w) = args.workers {
        config.workers = w;
    }
    config
}

pub fn load_tree(path: &Path) -> Result<BlockTree, Failure> {
    let bytes = fs::read(path).map_err(|source| Error::Load {
        path: path.to_owned(),
        source,
    })?;
    BlockTree::from_bytes(&bytes)
        .map_err(|e| Failure::new(EXIT_FAILURE, format!("{}: {e}", path.display())))
}

pub fn build(
    input: &Path,
    args: &BuildArgs,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let text = Text::load(input)?;
    let params = tree_params(&text, args);
    let config = build_config(args);
    let started = Instant::now();
    let (tree, report) = build_parallel_with_report(&text, &params, &config)?;
    let wall = started.elapsed();

    let output = output.map_or_else(|| default_output(input), Path::to_path_buf);
    let mut file = BufWriter::new(File::create(&output)?);
    let size = tree.serialize(&mut file)?;
    file.flush()?;
    if let Some(path) = &args.report {
        fs::write(path, report.to_json_lines())?;
    }
    writeln!(
        out,
        "n={} levels={} size={} ratio={:.4} wall_ms={:.1} workers={}",
        tree.n(),
        tree.levels().len(),
        size,
        size as f64 / tree.n() as f64,
        wall.as_secs_f64() * 1e3,
        config.workers
    )?;
    Ok(())
}

fn default_output(input: &Path) -> PathBuf {
    let mut name = input.as_os_str().to_owned();
    name.push(".pbt");
    PathBuf::from(name)
}

pub fn query(
    tree: &Path,
    queries: &[String],
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
) -> CmdResult {
    let tree = load_tree(tree)?;
    let mut run = |spec: &str| -> CmdResult {
        let q = parse_query(spec).map_err(Failure::usage)?;
        writeln!(out, "{}", answer(&tree, q)?)?;
        Ok(())
    };
    if queries.is_empty() {
        for line in stdin.lines() {
            let line = line?;
            if !line.trim().is_empty() {
                run(&line)?;
            }
        }
    } else {
        for spec in queries {
            run(spec)?;
        }
    }
    Ok(())
}

pub fn stats(tree: &Path, lz77: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    let tree = load_tree(tree)?;
    let z = match lz77 {
        Some(path) => Some(lz77_factorize(&Text::load(path)?)?.z()),
        None => None,
    };
    for line in tree.stats(z).to_lines() {
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn verify(tree_path: &Path, input: &Path, out: &mut dyn Write) -> CmdResult {
    let tree = load_tree(tree_path)?;
    let text = Text::load(input)?;
    verify_tree(&tree, &text).map_err(|m| Failure::new(EXIT_FAILURE, m))?;
    writeln!(out, "ok")?;
    Ok(())
}

/// Structural validation, reconstruction, and sampled access/rank/select
/// answers compared with a direct scan of the text. Returns the first
/// failing check.
pub fn verify_tree(tree: &BlockTree, text: &Text) -> Result<(), String> {
    validate(tree, text).map_err(|e| e.to_string())?;
    let bytes = text.as_bytes();
    let n = bytes.len() as u64;
    let step = (n / VERIFY_SAMPLES).max(1);
    let tracked = tree.tracked_symbols();

    let mut counts = [0u64; 256];
    let mut next_sample = step;
    let mut seen = [0u64; 256];
    for (idx, &b) in bytes.iter().enumerate() {
        let i = idx as u64 + 1;
        counts[b as usize] += 1;
        if i == next_sample || i == n {
            let got = tree.access(i).map_err(|e| e.to_string())?;
            if got != b {
                return Err(format!(
                    "access({i}) = {} but text has {}",
                    format_symbol(got),
                    format_symbol(b)
                ));
            }
            for &c in tracked {
                let got = tree.rank(c, i).map_err(|e| e.to_string())?;
                if got != counts[c as usize] {
                    return Err(format!(
                        "rank({}, {i}) = {got}, expected {}",
                        format_symbol(c),
                        counts[c as usize]
                    ));
                }
            }
            next_sample += step;
        }
        if tracked.binary_search(&b).is_ok() {
            seen[b as usize] += 1;
            let total = text.histogram()[b as usize];
            let j = seen[b as usize];
            if j == 1 || j == total || j % (total / VERIFY_SAMPLES).max(1) == 0 {
                let got = tree.select(b, j).map_err(|e| e.to_string())?;
                if got != i {
                    return Err(format!(
                        "select({}, {j}) = {got}, expected {i}",
                        format_symbol(b)
                    ));
                }
            }
        }
    }
    Ok(())
}
