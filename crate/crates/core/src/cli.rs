//! The `msym` command line.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on bad
//! arguments or unreadable input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use crate::fibration::{run_suite, FibrationSuiteConfig, FibrationSuiteReport, FIBER_TOL, ROUNDTRIP_TOL};
use crate::genfun::{betti_sum_sym, poincare_sym, Genus};
use crate::homology::{from_json, CwFile};
use crate::mcheck::{all_supported_are_m, check, check_decomposition, sweep, MVarietyReport, Verdict};
use crate::realmodels::{model_by_name, real_decomposition, DecompositionFile, MODEL_NAMES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping sweep parallelism.
pub const THREADS_ENV: &str = "MSYM_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Md,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "msym", version, about = "Betti numbers of symmetric products of real M-curves")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "md", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Betti sum of Sym^n of a genus-g surface.
    BettiSym {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
        /// Also print the Poincaré polynomial.
        #[arg(long)]
        poly: bool,
    },
    /// Per-piece Betti table of the real locus of Sym^2 or Sym^3.
    RealBetti {
        #[arg(long)]
        g: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=3))]
        n: u32,
    },
    /// Compare real and complex Betti sums.
    CheckM(CheckArgs),
    /// Betti vector of a CW complex in the JSON exchange format.
    Homology {
        #[arg(long)]
        file: PathBuf,
    },
    /// Randomized check of the Sym^3(S^1) bundle formulas.
    VerifyFibration {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Round-trip tolerance.
        #[arg(long, default_value_t = ROUNDTRIP_TOL)]
        tol: f64,
        /// Tolerance for landing in the fibre over 1.
        #[arg(long, default_value_t = FIBER_TOL)]
        fiber_tol: f64,
    },
    /// Write one of the built-in CW models as JSON.
    ExportModel {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(MODEL_NAMES))]
        name: String,
        #[arg(long, default_value_t = 1)]
        g: u32,
    },
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, conflicts_with_all = ["sweep", "decomposition"], requires = "n")]
    g: Option<u32>,
    #[arg(long, conflicts_with_all = ["sweep", "decomposition"], requires = "g")]
    n: Option<u32>,
    /// Check every 0 <= g <= gmax and 1 <= n <= nmax.
    #[arg(long, requires_all = ["gmax", "nmax"], conflicts_with = "decomposition")]
    sweep: bool,
    #[arg(long, requires = "sweep")]
    gmax: Option<u32>,
    #[arg(long, requires = "sweep")]
    nmax: Option<u32>,
    /// Decomposition file to check instead of the built-in models.
    #[arg(long)]
    decomposition: Option<PathBuf>,
}

/// Runs the command line with `args` (including the program name) and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn failed(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_FAILED, message: message.into() }
}

fn io_failure(e: std::io::Error) -> Failure {
    failed(format!("write failed: {e}"))
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let format = cli.format;
    match cli.command {
        Command::BettiSym { g, n, poly } => betti_sym(g, n, poly, format, out),
        Command::RealBetti { g, n } => real_betti(g, n, format, out),
        Command::CheckM(args) => check_m(args, format, out, err),
        Command::Homology { file } => homology(&file, format, out),
        Command::VerifyFibration { samples, seed, tol, fiber_tol } => {
            let config = FibrationSuiteConfig { samples, seed, roundtrip_tol: tol, fiber_tol };
            verify_fibration(config, format, out)
        }
        Command::ExportModel { name, g } => {
            let model = model_by_name(&name, Genus::new(g)).ok_or_else(|| usage(format!("--name: unknown model {name:?}")))?;
            let text = serde_json::to_string_pretty(&CwFile::from_complex(&model)).expect("serializable");
            writeln!(out, "{text}").map_err(io_failure)?;
            Ok(EXIT_OK)
        }
    }
}

/// A header plus rows of already formatted cells.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    fn markdown(&self) -> String {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|i| {
                self.rows
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain([self.header[i].chars().count(), 3])
                    .max()
                    .unwrap_or(3)
            })
            .collect();
        let line = |cells: Vec<String>| -> String {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            format!("| {} |\n", padded.join(" | "))
        };
        let mut s = line(self.header.iter().map(|h| h.to_string()).collect());
        s += &line(widths.iter().map(|&w| "-".repeat(w)).collect());
        for row in &self.rows {
            s += &line(row.clone());
        }
        s
    }

    fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
        let text = match format {
            Format::Csv => self.csv(),
            Format::Md => self.markdown(),
            Format::Json => unreachable!("json is written from typed values"),
        };
        out.write_all(text.as_bytes()).map_err(io_failure)
    }
}

fn write_json<T: Serialize>(value: &T, out: &mut dyn Write) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    writeln!(out, "{text}").map_err(io_failure)
}

fn betti_sym(g: u32, n: u32, poly: bool, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let g = Genus::new(g);
    let sum = betti_sum_sym(g, n);
    let p = poly.then(|| poincare_sym(g, n));
    if format == Format::Json {
        let mut value = json!({ "g": g, "n": n, "betti_sum": sum });
        if let Some(p) = &p {
            let coeffs: Vec<String> = p.coeffs().iter().map(BigUint::to_string).collect();
            value["poincare"] = json!(coeffs);
        }
        write_json(&value, out)?;
        return Ok(EXIT_OK);
    }
    let mut header = vec!["g", "n", "betti_sum"];
    let mut row = vec![g.to_string(), n.to_string(), sum.to_string()];
    if let Some(p) = &p {
        header.push("poincare");
        row.push(p.to_string());
    }
    let mut table = Table::new(header);
    table.push(row);
    table.write(format, out)?;
    Ok(EXIT_OK)
}

fn real_betti(g: u32, n: u32, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let g = Genus::new(g);
    let d = real_decomposition(g, n).ok_or_else(|| usage(format!("--n: expected 2 or 3, got {n}")))?;
    let pieces = d.betti_table();
    let total: BigUint = pieces.iter().map(|p| p.subtotal()).sum();
    if format == Format::Json {
        write_json(&json!({ "g": g, "n": n, "pieces": pieces, "total": total.to_string() }), out)?;
        return Ok(EXIT_OK);
    }
    let mut table = Table::new(vec!["piece", "multiplicity", "betti", "subtotal"]);
    for p in &pieces {
        table.push(vec![
            p.name.clone(),
            p.multiplicity.to_string(),
            p.betti.to_string(),
            p.subtotal().to_string(),
        ]);
    }
    table.push(vec!["total".into(), String::new(), String::new(), total.to_string()]);
    table.write(format, out)?;
    Ok(EXIT_OK)
}

fn threads_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(Some(k)),
            _ => Err(usage(format!("{THREADS_ENV}: expected a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(None),
    }
}

fn check_m(args: CheckArgs, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let rows = if let Some(path) = &args.decomposition {
        let text = read_file(path, "--decomposition")?;
        let file: DecompositionFile = serde_json::from_str(&text)
            .map_err(|e| usage(format!("--decomposition {}: {e}", path.display())))?;
        let d = file
            .to_decomposition()
            .map_err(|e| usage(format!("--decomposition {}: {e}", path.display())))?;
        vec![check_decomposition(&d).map_err(|e| failed(e.to_string()))?]
    } else if args.sweep {
        let (gmax, nmax) = (args.gmax.expect("required by clap"), args.nmax.expect("required by clap"));
        sweep(gmax, nmax, threads_from_env()?).map_err(|e| failed(e.to_string()))?
    } else {
        match (args.g, args.n) {
            (Some(g), Some(n)) => vec![check(Genus::new(g), n).map_err(|e| failed(e.to_string()))?],
            _ => return Err(usage("check-m: give --g and --n, --sweep with --gmax and --nmax, or --decomposition")),
        }
    };
    write_reports(&rows, format, out)?;
    for r in rows.iter().filter(|r| r.verdict == Verdict::UnsupportedRange) {
        let _ = writeln!(
            err,
            "warning: g={} n={} is outside n = 2, 3 and n >= 2g-1; no verdict",
            r.g, r.n
        );
    }
    Ok(if all_supported_are_m(&rows) { EXIT_OK } else { EXIT_FAILED })
}

fn write_reports(rows: &[MVarietyReport], format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    if format == Format::Json {
        return write_json(&rows, out);
    }
    let mut table = Table::new(MVarietyReport::CSV_HEADER.split(',').collect());
    for r in rows {
        table.push(r.csv_row().split(',').map(String::from).collect());
    }
    table.write(format, out)
}

fn read_file(path: &Path, flag: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{flag} {}: {e}", path.display())))
}

fn homology(path: &Path, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let text = read_file(path, "--file")?;
    let complex = from_json(&text).map_err(|e| usage(format!("--file {}: {e}", path.display())))?;
    let betti = complex.betti();
    if format == Format::Json {
        write_json(&json!({ "betti": betti, "sum": betti.sum(), "euler": betti.euler() }), out)?;
        return Ok(EXIT_OK);
    }
    let mut table = Table::new(vec!["k", "b_k"]);
    for (k, b) in betti.0.iter().enumerate() {
        table.push(vec![k.to_string(), b.to_string()]);
    }
    table.write(format, out)?;
    Ok(EXIT_OK)
}

fn verify_fibration(config: FibrationSuiteConfig, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    if config.samples == 0 {
        return Err(usage("--samples: must be positive"));
    }
    for (flag, v) in [("--tol", config.roundtrip_tol), ("--fiber-tol", config.fiber_tol)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(usage(format!("{flag}: expected a positive number, got {v}")));
        }
    }
    let report = run_suite(config);
    let code = if report.passed() { EXIT_OK } else { EXIT_FAILED };
    if format == Format::Json {
        write_json(&report, out)?;
        return Ok(code);
    }
    fibration_table(&report).write(format, out)?;
    Ok(code)
}

fn fibration_table(r: &FibrationSuiteReport) -> Table {
    let status = |ok: bool| if ok { "pass" } else { "FAIL" }.to_string();
    let sci = |x: f64| format!("{x:.3e}");
    let mut t = Table::new(vec!["check", "value", "bound", "status"]);
    let c = &r.config;
    t.push(vec![
        "roundtrip_error".into(),
        sci(r.max_roundtrip_error),
        sci(c.roundtrip_tol),
        status(r.max_roundtrip_error < c.roundtrip_tol),
    ]);
    t.push(vec![
        "fiber_error".into(),
        sci(r.max_fiber_error),
        sci(c.fiber_tol),
        status(r.max_fiber_error < c.fiber_tol),
    ]);
    t.push(vec![
        "trivialization_error".into(),
        sci(r.max_trivialization_error),
        sci(c.roundtrip_tol),
        status(r.max_trivialization_error < c.roundtrip_tol),
    ]);
    t.push(vec![
        "boundary_agreement".into(),
        format!("{}/{}", r.boundary_agreements, r.boundary_checks),
        format!("{}/{}", r.boundary_checks, r.boundary_checks),
        status(r.boundary_agreements == r.boundary_checks),
    ]);
    t.push(vec![
        "order_invariance_failures".into(),
        r.order_invariance_failures.to_string(),
        "0".into(),
        status(r.order_invariance_failures == 0),
    ]);
    t.push(vec![
        "a1_meets_a2_prime".into(),
        r.a1_meets_a2_prime.to_string(),
        "1".into(),
        status(r.a1_meets_a2_prime == 1),
    ]);
    t.push(vec![
        "a1_meets_a1_prime".into(),
        r.a1_meets_a1_prime.to_string(),
        "2".into(),
        status(r.a1_meets_a1_prime == 2),
    ]);
    t
}
