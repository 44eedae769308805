//! Command-line front end: argument parsing and command dispatch.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use sgweil_core::density::{
    asymptotic_limit, density_series, prime_series, DensityOptions, DEFAULT_CHECKPOINTS,
};
use sgweil_core::quadforms::class_number;
use sgweil_core::report::{
    emit, emit_certificate, emit_svg, CertificateDocument, ClassNumberRow, DensityRow, Format,
    LimitRow, QuadrupleRow, SeriesRow, TripleRow,
};
use sgweil_core::weil::{
    certify_report, check_p2, find_smallest, scan_quadruples, solve_general_p1m,
    sophie_germain_list, Dimension, P1mOutcome,
};
use sgweil_core::{arith::PrimeSieve, Error};

pub const DEFAULT_P_MAX: u64 = 100_000;

#[derive(Debug, Parser)]
#[command(name = "sgweil", version, about = "Weil quadruples, certificates and density experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format: csv, json or markdown.
    #[arg(long, global = true, default_value = "csv", value_parser = parse_format)]
    pub format: Format,

    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The quadruple (g, p, a, s) with the smallest qualifying prime p.
    Find {
        #[arg(long)]
        g: u64,
        #[arg(long, default_value_t = DEFAULT_P_MAX, value_parser = parse_count)]
        p_max: u64,
    },
    /// Every triple (p, a, s) with p ≤ p-max for a fixed g.
    Scan {
        #[arg(long)]
        g: u64,
        #[arg(long, value_parser = parse_count)]
        p_max: u64,
        /// Solve X² − 4Y^(g−2m) = −(2g+1)Z² instead of using (P1) directly.
        #[arg(long)]
        m: Option<u64>,
        /// Largest s tried per prime with --m.
        #[arg(long, value_parser = parse_count)]
        s_bound: Option<u64>,
    },
    /// Smallest-prime quadruples for every Sophie Germain 5 ≤ g ≤ g-max.
    Table2 {
        #[arg(long, default_value_t = 509)]
        g_max: u64,
        #[arg(long, default_value_t = DEFAULT_P_MAX, value_parser = parse_count)]
        p_max: u64,
    },
    /// f_g(x) and its distance to the limit at each checkpoint.
    Density {
        #[arg(long)]
        g: u64,
        /// Comma-separated ascending checkpoints (default 100,150,200,1e3,1e4,1e5,1e6).
        #[arg(long, value_delimiter = ',', value_parser = parse_count)]
        checkpoints: Option<Vec<u64>>,
        /// Largest x; the default checkpoints are cut at x-max, which is added.
        #[arg(long, value_parser = parse_count)]
        x_max: Option<u64>,
        /// Also write the per-prime (p, f_g(p)) stream to this file.
        #[arg(long)]
        series: Option<PathBuf>,
    },
    /// h(−8g−4) and the limit of f_g.
    Limit {
        #[arg(long)]
        g: u64,
    },
    /// Verify the full certificate for (g, p).
    Certify {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        p: u64,
    },
    /// Class number of a negative discriminant.
    Classnum {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// SVG scatter of (p, f_g(p)) with the limit line.
    Plot {
        #[arg(long)]
        g: u64,
        #[arg(long, default_value_t = 1_000_000, value_parser = parse_count)]
        x_max: u64,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Accepts plain integers and `NeK` shorthand such as `1e6`.
fn parse_count(s: &str) -> Result<u64, String> {
    let s = s.trim().replace('_', "");
    if let Some((mantissa, exp)) = s.split_once(['e', 'E']) {
        let m: u64 = mantissa.parse().map_err(|_| format!("invalid number `{s}`"))?;
        let e: u32 = exp.parse().map_err(|_| format!("invalid exponent in `{s}`"))?;
        return 10u64
            .checked_pow(e)
            .and_then(|p| p.checked_mul(m))
            .ok_or_else(|| format!("`{s}` overflows"));
    }
    s.parse().map_err(|_| format!("invalid number `{s}`"))
}

/// How a command ended.
#[derive(Debug)]
pub enum Failure {
    /// A requested check did not pass.
    Check(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Core(Error::Io(e))
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Check(msg) => f.write_str(msg),
            Failure::Core(e) => e.fmt(f),
        }
    }
}

impl Failure {
    /// 1 for a failed check or I/O, 2 for bad arguments, 3 for resource limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Check(_) => 1,
            Failure::Core(Error::Argument(_)) => 2,
            Failure::Core(Error::Resource(_)) => 3,
            Failure::Core(_) => 1,
        }
    }
}

fn open_output(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path).map(BufWriter::new).map_err(|e| {
        Failure::Core(Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
    })
}

/// Run a parsed command, writing to `--out` if given and to `stdout` otherwise.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => {
            let mut file = open_output(path)?;
            let result = dispatch(cli, &mut file);
            file.flush()?;
            result
        }
        None => dispatch(cli, stdout),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Find { g, p_max } => {
            let dim = Dimension::new(*g)?;
            let w = find_smallest(dim, *p_max)
                .ok_or_else(|| Failure::Check(format!("no prime found for g = {g} with p ≤ {p_max}")))?;
            emit(format, &[QuadrupleRow::from(&w)], out)?;
        }
        Command::Scan { g, p_max, m: None, .. } => {
            let rows: Vec<TripleRow> =
                scan_quadruples(Dimension::new(*g)?, *p_max)?.iter().map(TripleRow::from).collect();
            emit(format, &rows, out)?;
        }
        Command::Scan { g, p_max, m: Some(m), s_bound } => {
            let dim = Dimension::new(*g)?;
            let mut rows = Vec::new();
            let mut exhausted = Vec::new();
            for p in PrimeSieve::new((*p_max).max(2))?.iter() {
                if p == dim.modulus() || !check_p2(dim, p) {
                    continue;
                }
                match solve_general_p1m(dim, p, *m, *s_bound)? {
                    P1mOutcome::Found { a, s } => rows.push(P1mRow { p, a: a.to_string(), s }),
                    P1mOutcome::NoSolution => {}
                    P1mOutcome::BoundExhausted { .. } => exhausted.push(p),
                }
            }
            emit(format, &rows, out)?;
            if !exhausted.is_empty() {
                eprintln!(
                    "note: s-bound exhausted for {} prime(s) without deciding solvability, first {}",
                    exhausted.len(),
                    exhausted[0]
                );
            }
        }
        Command::Table2 { g_max, p_max } => {
            if *g_max < 5 {
                return Err(Error::Argument(format!("g-max must be at least 5, got {g_max}")).into());
            }
            let mut rows = Vec::new();
            for g in sophie_germain_list(*g_max).into_iter().filter(|&g| g >= 5) {
                let w = find_smallest(Dimension::new(g)?, *p_max)
                    .ok_or_else(|| Failure::Check(format!("no prime found for g = {g} with p ≤ {p_max}")))?;
                rows.push(QuadrupleRow::from(&w));
            }
            emit(format, &rows, out)?;
        }
        Command::Density { g, checkpoints, x_max, series } => {
            let dim = Dimension::new(*g)?;
            let checkpoints = resolve_checkpoints(checkpoints.as_deref(), *x_max)?;
            let result = density_series(dim, &checkpoints)?;
            let rows: Vec<DensityRow> = result.records.iter().map(DensityRow::from).collect();
            emit(format, &rows, &mut *out)?;
            if let Some(path) = series {
                let x_last = *checkpoints.last().expect("nonempty");
                let points = prime_series(dim, x_last, DensityOptions::default())?;
                let rows: Vec<SeriesRow> = points.iter().map(SeriesRow::from).collect();
                let mut file = open_output(path)?;
                emit(format, &rows, &mut file)?;
                file.flush()?;
            }
        }
        Command::Limit { g } => {
            let dim = Dimension::new(*g)?;
            let h = class_number(-8 * *g as i64 - 4)?;
            emit(format, &[LimitRow::new(*g, h, &asymptotic_limit(dim)?)], out)?;
        }
        Command::Certify { g, p } => {
            let report = certify_report(*g, *p);
            emit_certificate(format, &CertificateDocument::from(&report), &mut *out)?;
            if let Some(failed) = report.first_failure() {
                return Err(Failure::Check(format!(
                    "certificate for ({g}, {p}) failed at {}: {}",
                    failed.name, failed.detail
                )));
            }
        }
        Command::Classnum { disc } => {
            let h = class_number(*disc)?;
            emit(format, &[ClassNumberRow { discriminant: *disc, class_number: h }], out)?;
        }
        Command::Plot { g, x_max } => {
            let dim = Dimension::new(*g)?;
            let points = prime_series(dim, *x_max, DensityOptions::default())?;
            emit_svg(*g, &points, &asymptotic_limit(dim)?, out)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, serde::Serialize)]
struct P1mRow {
    p: u64,
    a: String,
    s: u64,
}

impl sgweil_core::report::Table for P1mRow {
    const HEADER: &'static [&'static str] = &["p", "a", "s"];
}

fn resolve_checkpoints(explicit: Option<&[u64]>, x_max: Option<u64>) -> Result<Vec<u64>, Failure> {
    match (explicit, x_max) {
        (Some(list), None) => Ok(list.to_vec()),
        (Some(list), Some(x)) => Ok(list.iter().copied().filter(|&c| c < x).chain([x]).collect()),
        (None, Some(x)) => Ok(DEFAULT_CHECKPOINTS.iter().copied().filter(|&c| c < x).chain([x]).collect()),
        (None, None) => Ok(DEFAULT_CHECKPOINTS.to_vec()),
    }
}
