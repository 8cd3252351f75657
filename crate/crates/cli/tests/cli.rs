use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

const DRAIN: &[u8] = b"abrainadrain";

fn pbt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbt"))
        .args(args)
        .output()
        .unwrap()
}

fn pbt_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pbt"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Fixture {
    _dir: TempDir,
    input: PathBuf,
    tree: PathBuf,
}

fn drain_tree() -> Fixture {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("drain.txt");
    let tree = dir.path().join("drain.pbt");
    fs::write(&input, DRAIN).unwrap();
    let out = pbt(&[
        "build",
        s(&input),
        "--s",
        "2",
        "--tau",
        "3",
        "--leaf-cutoff",
        "1",
        "--output",
        s(&tree),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    Fixture {
        _dir: dir,
        input,
        tree,
    }
}

#[test]
fn build_prints_summary() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("drain.txt");
    fs::write(&input, DRAIN).unwrap();
    let out = pbt(&["build", s(&input), "--s", "2", "--tau", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let line = stdout(&out);
    assert!(line.starts_with("n=12 levels="), "{line}");
    let ratio: f64 = line
        .split_whitespace()
        .find_map(|kv| kv.strip_prefix("ratio="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(ratio > 1.0);
    assert!(dir.path().join("drain.txt.pbt").exists());
}

#[test]
fn worker_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("rep.txt");
    let text: Vec<u8> = DRAIN
        .iter()
        .copied()
        .cycle()
        .take(5000)
        .chain(b"xyz".iter().copied())
        .collect();
    fs::write(&input, text).unwrap();
    let one = dir.path().join("one.pbt");
    let four = dir.path().join("four.pbt");
    for (w, out) in [("1", &one), ("4", &four)] {
        let o = pbt(&[
            "build",
            s(&input),
            "--workers",
            w,
            "--prune",
            "--output",
            s(out),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    assert_eq!(fs::read(one).unwrap(), fs::read(four).unwrap());
}

#[test]
fn empty_input_fails() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("empty.txt");
    fs::write(&input, b"").unwrap();
    let out = pbt(&["build", s(&input)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("empty input"));
}

#[test]
fn missing_input_names_path() {
    let out = pbt(&["build", "/nonexistent/text.txt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("/nonexistent/text.txt"));
}

#[test]
fn queries_on_drain_example() {
    let f = drain_tree();
    let out = pbt(&[
        "query",
        s(&f.tree),
        "access:10",
        "rank:a:0",
        "rank:a:12",
        "select:r:2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "a\n0\n4\n9\n");
}

#[test]
fn batch_queries_from_stdin() {
    let f = drain_tree();
    let out = pbt_stdin(
        &["query", s(&f.tree)],
        "access:1\n\nrank:n:12\nselect:a:1\n",
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "a\n2\n1\n");
}

#[test]
fn query_exit_codes() {
    let f = drain_tree();
    assert_eq!(
        pbt(&["query", s(&f.tree), "select:z:1"]).status.code(),
        Some(3)
    );
    assert_eq!(pbt(&["query", s(&f.tree), "rank:a"]).status.code(), Some(2));
    assert_eq!(
        pbt(&["query", s(&f.tree), "access:13"]).status.code(),
        Some(2)
    );
    assert_eq!(pbt(&["query"]).status.code(), Some(2));
}

#[test]
fn stats_lists_levels() {
    let f = drain_tree();
    let out = pbt(&["stats", s(&f.tree), "--lz77", s(&f.input)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in [
        "n=12",
        "levels=3",
        "level1_blocks=6",
        "level2_blocks=10",
        "levels_over_3z_tau=",
    ] {
        assert!(text.lines().any(|l| l == line), "missing {line} in\n{text}");
    }
}

#[test]
fn verify_accepts_fresh_build() {
    let f = drain_tree();
    let out = pbt(&["verify", s(&f.tree), s(&f.input)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "ok\n");
}

#[test]
fn verify_rejects_corruption_and_mismatch() {
    let f = drain_tree();
    let mut bytes = fs::read(&f.tree).unwrap();
    bytes[20] ^= 0x40;
    let bad = f.tree.with_extension("bad");
    fs::write(&bad, &bytes).unwrap();
    assert_eq!(
        pbt(&["verify", s(&bad), s(&f.input)]).status.code(),
        Some(1)
    );

    let other = f.input.with_extension("other");
    fs::write(&other, b"abrainadraix").unwrap();
    let out = pbt(&["verify", s(&f.tree), s(&other)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!stderr(&out).is_empty());
}

fn first_line(o: &Output) -> String {
    stdout(o).lines().next().unwrap_or_default().to_string() + "\n"
}

#[test]
fn bench_fp_header_is_stable() {
    let out = pbt(&[
        "bench-fp",
        "--len",
        "4096",
        "--ell",
        "16,64",
        "--repeats",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let golden = include_str!("golden/bench_fp_header.csv");
    assert_eq!(first_line(&out), golden);
    let rows: Vec<String> = stdout(&out).lines().skip(1).map(String::from).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].starts_with("scalar,16,4096,1,"));
    assert!(rows[1].starts_with("blocked,16,4096,1,"));
}

#[test]
fn bench_build_header_is_stable() {
    let out = pbt(&[
        "bench-build",
        "--synth-len",
        "65536",
        "--synth-seed-len",
        "1024",
        "--max-workers",
        "2",
        "--prune",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let golden = include_str!("golden/bench_build_header.csv");
    assert_eq!(first_line(&out), golden);
    let columns = golden.trim().split(',').count();
    let rows: Vec<String> = stdout(&out).lines().skip(1).map(String::from).collect();
    assert_eq!(rows.len(), 2);
    for row in &rows {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells.len(), columns, "{row}");
        assert_eq!(cells[0], "synthetic");
        assert_eq!(cells[2], "65536");
        let peak: u64 = cells[16].parse().unwrap();
        assert!(peak > 0, "tracking allocator should be active");
    }
    let sizes: Vec<&str> = rows.iter().map(|r| r.rsplit(',').next().unwrap()).collect();
    assert_eq!(sizes[0], sizes[1]);
}
