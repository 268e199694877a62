//! `sdf`: build, analyze, extend and search self-dual codes, and reproduce
//! the published tables.
//!
//! Exit status: 0 success, 1 a claim or precondition failed, 2 bad input,
//! usage error, or work refused without `--deep`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sdf_core::analysis::{analyze, AnalyzeRequest};
use sdf_core::binary::BinaryCode;
use sdf_core::code::{ExtensionParams, LiftMode, RingCode, Theorem};
use sdf_core::harness::search::{
    classify_four_circulant_f4, extension_search, lift_search, ExtensionSearch, LiftSearch, LiftSearchMode,
};
use sdf_core::harness::{embedded_library, reproduce_table, table_info, ReproduceOptions, RowStatus, TABLES};
use sdf_core::report::{Report, Timing};
use sdf_core::ring::{parse_element, units_square_one, RingVector};
use sdf_core::spec::{build_from_text, CodeFile, Library};
use sdf_core::{run_with_jobs, Error};

#[derive(Parser)]
#[command(name = "sdf", version, about = "Self-dual codes over F2, F4, F2+uF2 and F4+uF4")]
struct Cli {
    /// Worker threads (output does not depend on this).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Extra directory of *.sdf spec files for resolving names.
    #[arg(long, global = true, value_name = "DIR")]
    lib: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code from a spec file and write it as JSON.
    Build {
        spec: PathBuf,
        /// Code to build (default: the last section).
        #[arg(long)]
        name: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Analyze a code file, spec file, library name or binary matrix.
    Analyze(AnalyzeArgs),
    /// Extend a self-dual code by two coordinates.
    Extend {
        code: String,
        #[arg(long)]
        theorem: Theorem,
        #[arg(long)]
        x: String,
        #[arg(long)]
        c: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Rebuild and check the rows of one or more tables.
    Reproduce {
        #[arg(long, required_unless_present = "all")]
        table: Vec<u8>,
        #[arg(long, conflicts_with = "table")]
        all: bool,
        #[arg(long)]
        deep: bool,
        /// Full 2^k scans instead of the low-weight census (k <= scan bound).
        #[arg(long)]
        full_scan: bool,
        /// Resume file; finished rows are stored and skipped on rerun.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Restrict to these row labels.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
    },
    /// Search lifts or extensions of a base code.
    Search(SearchArgs),
    /// All four-circulant F4 seeds of block size n whose image reaches min-d.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        min_d: usize,
    },
    /// List the reproducible tables.
    Tables,
}

#[derive(Args)]
struct AnalyzeArgs {
    code: String,
    /// Input is a 0/1 matrix file.
    #[arg(long)]
    matrix: bool,
    #[arg(long)]
    self_dual: bool,
    #[arg(long = "type")]
    code_type: bool,
    #[arg(long)]
    mindist: bool,
    /// Exact weight counts through WMAX.
    #[arg(long, value_name = "WMAX")]
    census: Option<usize>,
    /// Enumerator family and beta/gamma/alpha (lengths 64, 68, 80, 88, 96).
    #[arg(long)]
    params: bool,
    /// Pair invariant, e.g. I16.
    #[arg(long, value_name = "Iw")]
    invariant: Option<String>,
    /// T W: is the weight-W support set a T-design?
    #[arg(long, num_args = 2, value_names = ["T", "W"])]
    design: Option<Vec<usize>>,
    #[arg(long)]
    expect_d: Option<usize>,
    #[arg(long)]
    expect_beta: Option<i64>,
    #[arg(long)]
    expect_gamma: Option<i64>,
    #[arg(long)]
    expect_alpha: Option<i64>,
    #[arg(long)]
    deep: bool,
    #[arg(long)]
    full_scan: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchMode {
    Lifts,
    Extensions,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    mode: SearchMode,
    #[arg(long)]
    base: String,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    budget: u64,
    /// First candidate index (extensions, exhaustive lifts).
    #[arg(long, default_value_t = 0)]
    start: u64,
    #[arg(long)]
    target_d: Option<usize>,
    /// Walk lifts in lexicographic order instead of sampling.
    #[arg(long)]
    exhaustive: bool,
    /// Explicit lift seeds "rA;rB" (repeatable).
    #[arg(long = "candidate")]
    candidates: Vec<String>,
    /// Skip the projection bound filter.
    #[arg(long)]
    no_filter: bool,
    #[arg(long, default_value = "A")]
    theorem: Theorem,
    /// Units c to cycle through (default: every unit with c^2 = 1).
    #[arg(long, value_delimiter = ',')]
    c: Option<Vec<String>>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::from(e).into()
    }
}

/// Precondition violations are claim failures, not input errors.
fn precondition(e: Error) -> Failure {
    let code = match e {
        Error::BadExtensionVector { .. }
        | Error::BadUnit(_)
        | Error::NotSelfDual
        | Error::NotSystematic
        | Error::LengthMismatch { .. } => 1,
        _ => 2,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

type Outcome = Result<(Report, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let jobs = cli.jobs;
    let timing = cli.timing;
    let result = match run_with_jobs(jobs, move || run(cli)) {
        Ok(r) => r,
        Err(e) => Err(e.into()),
    };
    match result {
        Ok((mut report, ok)) => {
            if timing {
                report.timing = Some(Timing {
                    seconds: started.elapsed().as_secs_f64(),
                });
            }
            // a closed pipe (e.g. `| head`) is not an error worth a panic
            let _ = writeln!(std::io::stdout().lock(), "{}", report.to_json());
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let lib = library(cli.lib.as_deref())?;
    match cli.command {
        Command::Build { spec, name, out } => build(&lib, &spec, name.as_deref(), out.as_deref()),
        Command::Analyze(a) => cmd_analyze(&lib, &a),
        Command::Extend {
            code,
            theorem,
            x,
            c,
            out,
        } => extend(&lib, &code, theorem, &x, &c, out.as_deref()),
        Command::Reproduce {
            table,
            all,
            deep,
            full_scan,
            checkpoint,
            only,
        } => {
            let tables = if all {
                TABLES.iter().map(|t| t.id).collect()
            } else {
                table
            };
            let opts = ReproduceOptions {
                deep,
                full_scan,
                checkpoint,
                only,
            };
            reproduce(&lib, &tables, &opts)
        }
        Command::Search(s) => search(&lib, &s),
        Command::Classify { n, min_d } => classify(n, min_d),
        Command::Tables => {
            let mut report = Report::new("tables", json!({}));
            for t in &TABLES {
                report.push(&json!({"table": t.id, "title": t.title}))?;
            }
            Ok((report, true))
        }
    }
}

fn library(dir: Option<&Path>) -> Result<Library, Failure> {
    let mut lib = embedded_library();
    if let Some(dir) = dir {
        lib.add_dir(dir)?;
    }
    Ok(lib)
}

/// A code JSON file, a spec file, a library name, or an expression such as
/// `psi_f4u(L6)`.
fn load_code(lib: &Library, arg: &str) -> Result<RingCode, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path)?;
        if text.trim_start().starts_with('{') {
            return Ok(CodeFile::from_json(&text)?.to_code()?);
        }
        return Ok(build_from_text(&text, None, Some(lib))?);
    }
    Ok(lib.build(arg)?)
}

fn write_code(command: &str, code: &RingCode, out: Option<&Path>) -> Outcome {
    let file = CodeFile::from_code(code);
    let mut report = Report::new(command, json!({}));
    if let Some(out) = out {
        fs::write(out, file.to_json())?;
        report.inputs = json!({"out": out});
    }
    report.push(&json!({
        "name": code.name,
        "ring": code.ring(),
        "length": code.length(),
        "rows": code.generator().rows(),
        "self_dual": code.is_self_dual(),
        "code": if out.is_none() { Some(&file) } else { None },
    }))?;
    Ok((report, true))
}

fn build(lib: &Library, spec: &Path, name: Option<&str>, out: Option<&Path>) -> Outcome {
    let text = fs::read_to_string(spec)?;
    let code = build_from_text(&text, name, Some(lib))?;
    let (mut report, ok) = write_code("build", &code, out)?;
    report.inputs["spec"] = json!(spec);
    Ok((report, ok))
}

fn cmd_analyze(lib: &Library, a: &AnalyzeArgs) -> Outcome {
    let invariant = match &a.invariant {
        None => None,
        Some(s) => Some(
            s.strip_prefix('I')
                .and_then(|w| w.parse().ok())
                .ok_or_else(|| Error::Invalid(format!("invariant {s:?} is not of the form I<w>")))?,
        ),
    };
    let req = AnalyzeRequest {
        self_dual: a.self_dual,
        code_type: a.code_type,
        mindist: a.mindist,
        census: a.census,
        params: a.params,
        invariant,
        design: a.design.as_ref().map(|v| (v[0], v[1])),
        expect_d: a.expect_d,
        expect_beta: a.expect_beta,
        expect_gamma: a.expect_gamma,
        expect_alpha: a.expect_alpha,
        deep: a.deep,
        full_scan: a.full_scan,
    };
    let (image, ring_sd, name) = if a.matrix {
        (BinaryCode::parse_matrix(&fs::read_to_string(&a.code)?)?, None, None)
    } else {
        let code = load_code(lib, &a.code)?;
        (code.binary_image()?, Some(code.is_self_dual()), code.name.clone())
    };
    let analysis = analyze(&image, ring_sd, &req)?;
    let mut report = Report::new("analyze", json!({"code": a.code, "matrix": a.matrix}));
    report.push(&json!({"name": name, "analysis": analysis}))?;
    for c in analysis.checks.iter().filter(|c| !c.ok) {
        report
            .anomalies
            .push(format!("{}: expected {}, found {}", c.name, c.expected, c.found));
    }
    Ok((report, analysis.ok()))
}

fn extend(lib: &Library, code: &str, theorem: Theorem, x: &str, c: &str, out: Option<&Path>) -> Outcome {
    let base = load_code(lib, code)?;
    let params = ExtensionParams {
        theorem,
        x: RingVector::parse(x, base.ring())?,
        c: parse_element(c, base.ring())?,
    };
    let extended = base.extend(&params).map_err(precondition)?;
    let (mut report, ok) = write_code("extend", &extended, out)?;
    report.inputs["code"] = json!(code);
    report.inputs["theorem"] = json!(theorem.to_string());
    report.inputs["x"] = json!(x);
    report.inputs["c"] = json!(c);
    Ok((report, ok))
}

fn reproduce(lib: &Library, tables: &[u8], opts: &ReproduceOptions) -> Outcome {
    for &t in tables {
        table_info(t)?;
    }
    let mut report = Report::new(
        "reproduce",
        json!({"tables": tables, "deep": opts.deep, "full_scan": opts.full_scan, "only": opts.only}),
    );
    let mut ok = true;
    for &t in tables {
        let table = reproduce_table(t, lib, opts, &mut |row| {
            let status = match row.status {
                RowStatus::Pass => "pass",
                RowStatus::Fail => "FAIL",
                RowStatus::Flagged => "flagged",
                RowStatus::Error => "ERROR",
            };
            eprintln!("{:<10} {status}", row.label);
        })?;
        let s = &table.summary;
        eprintln!(
            "table {t}: {} pass, {} fail, {} flagged, {} error",
            s.pass, s.fail, s.flagged, s.error
        );
        ok &= table.ok();
        report.anomalies.extend(table.anomalies.iter().cloned());
        report.push(&table)?;
    }
    Ok((report, ok))
}

fn search(lib: &Library, s: &SearchArgs) -> Outcome {
    let base = load_code(lib, &s.base)?;
    let mut report = Report::new(
        "search",
        json!({
            "base": s.base, "seed": s.seed, "budget": s.budget, "start": s.start,
            "target_d": s.target_d,
        }),
    );
    let result = match s.mode {
        SearchMode::Lifts => {
            report.inputs["mode"] = json!("lifts");
            let target_d = s
                .target_d
                .ok_or_else(|| Error::Invalid("--target-d is required for lift searches".into()))?;
            let lifted = base
                .ring()
                .lifted()
                .ok_or_else(|| Error::Invalid(format!("{} has no lift", base.ring())))?;
            let mode = if !s.candidates.is_empty() {
                let pairs = s
                    .candidates
                    .iter()
                    .map(|c| {
                        let (a, b) = c
                            .split_once(';')
                            .ok_or_else(|| Error::Invalid(format!("candidate {c:?} is not \"rA;rB\"")))?;
                        Ok((
                            RingVector::parse(a.trim(), lifted)?,
                            RingVector::parse(b.trim(), lifted)?,
                        ))
                    })
                    .collect::<Result<Vec<_>, Error>>()?;
                LiftSearchMode::Directed(pairs)
            } else if s.exhaustive {
                LiftSearchMode::Enumerate(LiftMode::Exhaustive {
                    start: s.start,
                    end: Some(s.start.saturating_add(s.budget)),
                })
            } else {
                LiftSearchMode::Enumerate(LiftMode::Random {
                    seed: s.seed,
                    budget: s.budget,
                })
            };
            lift_search(
                &base,
                &LiftSearch {
                    target_d,
                    mode,
                    skip_filter: s.no_filter,
                },
            )
        }
        SearchMode::Extensions => {
            report.inputs["mode"] = json!("extensions");
            report.inputs["theorem"] = json!(s.theorem.to_string());
            let c_set = match &s.c {
                Some(list) => list
                    .iter()
                    .map(|t| parse_element(t, base.ring()))
                    .collect::<Result<Vec<_>, Error>>()?,
                None => units_square_one(base.ring()),
            };
            extension_search(
                &base,
                &ExtensionSearch {
                    theorem: s.theorem,
                    c_set,
                    seed: s.seed,
                    budget: s.budget,
                    start: s.start,
                },
            )
        }
    }
    .map_err(precondition)?;
    eprintln!("{} candidates, {} hits", result.candidates_examined, result.hits.len());
    report.anomalies.extend(result.notes.iter().cloned());
    report.push(&result)?;
    Ok((report, true))
}

fn classify(n: usize, min_d: usize) -> Outcome {
    let codes = classify_four_circulant_f4(n, min_d)?;
    let mut report = Report::new("classify", json!({"n": n, "min_d": min_d}));
    eprintln!("{} seed pairs", codes.len());
    for code in &codes {
        let (ra, rb) = code
            .four_circulant_seeds()
            .expect("classified codes are four-circulant");
        report.push(&json!({"rA": ra.to_token_string(), "rB": rb.to_token_string()}))?;
    }
    Ok((report, true))
}
