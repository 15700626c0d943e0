//! Command-line front end. Exit codes: 0 pass, 1 refuted, 2 usage or input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::counterexample::unreachability_oracle;
use crate::dynamic::{parse_ring_kind, AnyMatrix, RandomShape, Strategy, TextRows};
use crate::error::{Error, Result};
use crate::format::{certificate_from_json, certificate_to_json, matrix_from_json, matrix_to_json, report_to_json};
use crate::scalar::RingKind;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "commprod",
    version,
    about = "Factor square matrices into products of commutators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a commutator certificate for a matrix file (or every *.json in a directory).
    Factor {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Strategy::Auto)]
        strategy: Strategy,
        /// Ring for files without a "ring" field: Q, GF(p), H_Q, C(Q), C(GF(p)).
        #[arg(long, value_parser = parse_ring_arg)]
        ring: Option<RingKind>,
        /// Output file, or output directory in batch mode. Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for batch mode.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check a certificate file.
    Verify { certificate: PathBuf },
    /// Exhaustive dimension bound over the counterexample ring with base GF(2).
    Counterexample {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Span of all products [a, x]·[a, y].
    Span {
        input: PathBuf,
        #[arg(long, value_parser = parse_ring_arg)]
        ring: Option<RingKind>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write x as a sum of products [a, p]·[a, q].
    DecomposeFixed {
        a: PathBuf,
        x: PathBuf,
        #[arg(long, value_parser = parse_ring_arg)]
        ring: Option<RingKind>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a seeded random matrix file.
    Random {
        #[arg(long, value_parser = parse_ring_arg)]
        ring: RingKind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = RandomShape::Any)]
        shape: RandomShape,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_ring_arg(s: &str) -> std::result::Result<RingKind, String> {
    parse_ring_kind(s).map_err(|e| e.to_string())
}

/// Failure of a command: an exit code and a message for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: format!("error[{}]: {e}", e.code()),
        }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Error::Parse(e.to_string())),
    }
}

fn line(w: &mut dyn Write, s: &str) {
    let _ = writeln!(w, "{s}");
}

/// Factors one file; returns the certificate text and a status line.
fn factor_one(input: &Path, strategy: Strategy, ring: Option<RingKind>) -> Result<(String, String, bool)> {
    let m = matrix_from_json(&read(input)?, ring)?;
    let cert = m.factor(strategy)?;
    let report = cert.verify();
    let tag = cert.construction().map_or("none", |c| c.tag());
    let status = format!("{tag}, {} pairs, {report}", cert.pair_count());
    Ok((certificate_to_json(&cert), status, report.passed()))
}

fn cmd_factor(
    input: &Path,
    strategy: Strategy,
    ring: Option<RingKind>,
    out_path: Option<&Path>,
    jobs: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    if !input.is_dir() {
        let (text, status, passed) = factor_one(input, strategy, ring)?;
        emit(out, out_path, &text)?;
        line(err, &status);
        return Ok(if passed { EXIT_PASS } else { EXIT_FAIL });
    }
    let out_dir = out_path.ok_or_else(|| Error::Parse("batch mode needs --out <directory>".into()))?;
    fs::create_dir_all(out_dir).map_err(|e| Error::Parse(format!("{}: {e}", out_dir.display())))?;
    let mut files: Vec<PathBuf> = fs::read_dir(input)
        .map_err(|e| Error::Parse(format!("{}: {e}", input.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();

    let results: Vec<Mutex<Option<(String, i32)>>> = files.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let work = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        let Some(file) = files.get(i) else { break };
        let name = file.file_name().unwrap_or_default().to_string_lossy().into_owned();
        let outcome = factor_one(file, strategy, ring).and_then(|(text, status, passed)| {
            let stem = file.file_stem().unwrap_or_default().to_string_lossy();
            let target = out_dir.join(format!("{stem}.cert.json"));
            fs::write(&target, text).map_err(|e| Error::Parse(format!("{}: {e}", target.display())))?;
            Ok((status, if passed { EXIT_PASS } else { EXIT_FAIL }))
        });
        let entry = match outcome {
            Ok((status, code)) => (format!("{name}: {status}"), code),
            Err(e) => (format!("{name}: error[{}]: {e}", e.code()), EXIT_USAGE),
        };
        *results[i].lock().expect("no panics while held") = Some(entry);
    };
    std::thread::scope(|s| {
        for _ in 0..jobs.max(1) {
            s.spawn(work);
        }
    });
    let mut code = EXIT_PASS;
    for r in results {
        let (status, c) = r
            .into_inner()
            .expect("no panics while held")
            .expect("every file processed");
        line(out, &status);
        code = code.max(c);
    }
    Ok(code)
}

fn cmd_verify(path: &Path, out: &mut dyn Write) -> CmdResult {
    let cert = certificate_from_json(&read(path)?)?;
    let report = cert.verify();
    line(out, &report.to_string());
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}

#[derive(Serialize)]
struct PairRows {
    p: TextRows,
    q: TextRows,
}

#[derive(Serialize)]
struct DecompositionDoc {
    ring: RingKind,
    n: usize,
    pairs: Vec<PairRows>,
}

fn load_matrix(path: &Path, ring: Option<RingKind>) -> Result<AnyMatrix> {
    matrix_from_json(&read(path)?, ring)
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match cli.command {
        Command::Factor {
            input,
            strategy,
            ring,
            out: out_path,
            jobs,
        } => cmd_factor(&input, strategy, ring, out_path.as_deref(), jobs, out, err),
        Command::Verify { certificate } => cmd_verify(&certificate, out),
        Command::Counterexample { n_max, out: out_path } => {
            let report = unreachability_oracle(n_max)?;
            if let Some(p) = out_path.as_deref() {
                emit(out, Some(p), &report_to_json(&report))?;
            }
            for level in &report.levels {
                line(
                    out,
                    &format!(
                        "n = {}: {} tuples, {} with zero product, max dim W = {}",
                        level.n, level.tuples, level.zero_product_tuples, level.max_dim
                    ),
                );
            }
            line(out, &report.summary());
            Ok(if report.unreachable { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Span {
            input,
            ring,
            out: out_path,
        } => {
            let summary = load_matrix(&input, ring)?.span_report()?;
            if let Some(p) = out_path.as_deref() {
                emit(out, Some(p), &report_to_json(&summary))?;
            }
            line(out, &summary.line());
            Ok(EXIT_PASS)
        }
        Command::DecomposeFixed {
            a,
            x,
            ring,
            out: out_path,
        } => {
            let a = load_matrix(&a, ring)?;
            let x = load_matrix(&x, ring)?;
            let pairs = a.decompose_fixed(&x)?;
            let doc = DecompositionDoc {
                ring: a.kind(),
                n: a.n(),
                pairs: pairs.into_iter().map(|(p, q)| PairRows { p, q }).collect(),
            };
            let text = report_to_json(&doc);
            emit(out, out_path.as_deref(), &text)?;
            line(err, &format!("{} pairs reconstruct x", doc.pairs.len()));
            Ok(EXIT_PASS)
        }
        Command::Random {
            ring,
            n,
            shape,
            seed,
            out: out_path,
        } => {
            let m = AnyMatrix::random(ring, n, shape, seed)?;
            emit(out, out_path.as_deref(), &matrix_to_json(&m))?;
            Ok(EXIT_PASS)
        }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_PASS;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            line(err, &f.message);
            f.code
        }
    }
}
