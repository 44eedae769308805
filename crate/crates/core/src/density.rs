//! The prime-density experiment: how often a prime lands in `P_g`.
//!
//! For `x` ranging over checkpoints, `f_g(x) = |{p ≤ x : p ∈ P_g}| / π(x)`.
//! Primes satisfying (P1) split into `S′ = P_g` and
//! `S″ = {p ≡ 1 (mod 2g+1)}`; the limit of `f_g` is
//! `1/(2·h(−8g−4)) · (1 − 1/g)`.
//!
//! Classification costs `O(√(p/(2g+1)))` perfect-square tests per prime and
//! runs data-parallel over chunks of the prime list; counts are merged in
//! ascending order so the output never depends on the chunking.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{PrimeSieve, Rational, DEFAULT_SIEVE_BUDGET};
use crate::error::{Error, Result};
use crate::quadforms::class_number;
use crate::weil::{check_p1, check_p2, Dimension};

/// Checkpoints of the reference convergence table.
pub const DEFAULT_CHECKPOINTS: [u64; 7] = [100, 150, 200, 1_000, 10_000, 100_000, 1_000_000];

/// Fractional digits in rendered decimals.
pub const DECIMAL_PLACES: u32 = 8;

/// `1/(2·h(−8g−4)) · (1 − 1/g)`.
pub fn asymptotic_limit(g: Dimension) -> Result<Rational> {
    let d = -8 * g.get() as i64 - 4;
    let h = class_number(d)?;
    let g = g.get() as i64;
    Ok(Rational::new(1, 2 * h as i64) * Rational::new(g - 1, g))
}

/// Lower bound for the density of all admissible characteristics; the same
/// value as [`asymptotic_limit`], since `P_g` is a subset.
pub fn lower_bound_density(g: Dimension) -> Result<Rational> {
    asymptotic_limit(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeClass {
    /// Fails (P1).
    NotP1,
    /// (P1) and (P2): a member of `P_g`.
    Pg,
    /// (P1) and `p ≡ 1 (mod 2g+1)`: splits completely in `L(ζ_{2g+1})`.
    SplitCompletely,
}

pub fn classify(g: Dimension, p: u64) -> PrimeClass {
    match check_p1(g, p) {
        None => PrimeClass::NotP1,
        Some(_) if check_p2(g, p) => PrimeClass::Pg,
        Some(_) => PrimeClass::SplitCompletely,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityOptions {
    /// Primes per parallel work unit.
    pub chunk_size: usize,
    pub sieve_budget: u64,
}

impl Default for DensityOptions {
    fn default() -> Self {
        DensityOptions { chunk_size: 4096, sieve_budget: DEFAULT_SIEVE_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityRecord {
    pub x: u64,
    /// `|S′(x)| = |P_g ∩ [2, x]|`.
    pub count_pg: u64,
    /// `|S″(x)|`.
    pub count_split_all: u64,
    /// `|S(x)|`, primes up to `x` satisfying (P1).
    pub count_p1: u64,
    /// `π(x)`.
    pub count_p: u64,
    pub f: Rational,
    /// `limit − f`.
    pub diff: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensitySeries {
    pub g: Dimension,
    pub checkpoints: Vec<u64>,
    pub records: Vec<DensityRecord>,
    pub limit: Rational,
}

fn classify_all(g: Dimension, primes: &[u64], chunk_size: usize) -> Vec<PrimeClass> {
    primes
        .par_chunks(chunk_size.max(1))
        .flat_map_iter(|chunk| chunk.iter().map(move |&p| classify(g, p)))
        .collect()
}

fn sieve_to(limit: u64, budget: u64) -> Result<PrimeSieve> {
    PrimeSieve::with_budget(limit.max(2), budget)
}

pub fn density_series(g: Dimension, checkpoints: &[u64]) -> Result<DensitySeries> {
    density_series_with(g, checkpoints, DensityOptions::default())
}

/// One record per checkpoint from a single sieve pass.
pub fn density_series_with(
    g: Dimension,
    checkpoints: &[u64],
    opts: DensityOptions,
) -> Result<DensitySeries> {
    let Some(&x_max) = checkpoints.last() else {
        return Err(Error::argument("at least one checkpoint is required"));
    };
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::argument("checkpoints must be strictly ascending"));
    }
    if checkpoints[0] < 2 {
        return Err(Error::argument("checkpoints must be at least 2"));
    }
    let limit = asymptotic_limit(g)?;
    let primes = sieve_to(x_max, opts.sieve_budget)?.primes();
    let classes = classify_all(g, &primes, opts.chunk_size);

    let mut records = Vec::with_capacity(checkpoints.len());
    let (mut count_pg, mut count_split_all, mut count_p) = (0u64, 0u64, 0u64);
    let mut next = primes.iter().zip(&classes).peekable();
    for &x in checkpoints {
        while let Some((_, class)) = next.next_if(|(&p, _)| p <= x) {
            count_p += 1;
            match class {
                PrimeClass::Pg => count_pg += 1,
                PrimeClass::SplitCompletely => count_split_all += 1,
                PrimeClass::NotP1 => {}
            }
        }
        let f = Rational::new(count_pg, count_p);
        records.push(DensityRecord {
            x,
            count_pg,
            count_split_all,
            count_p1: count_pg + count_split_all,
            count_p,
            diff: &limit - &f,
            f,
        });
    }
    Ok(DensitySeries { g, checkpoints: checkpoints.to_vec(), records, limit })
}

/// One point `(p, npg/i)` per prime `p ≤ x_max`, where `i = π(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeriesPoint {
    pub p: u64,
    pub index: u64,
    pub count_pg: u64,
}

impl SeriesPoint {
    pub fn f(&self) -> Rational {
        Rational::new(self.count_pg, self.index)
    }
}

/// The per-prime stream behind the scatter plot.
pub fn prime_series(g: Dimension, x_max: u64, opts: DensityOptions) -> Result<Vec<SeriesPoint>> {
    if x_max < 2 {
        return Err(Error::argument("x_max must be at least 2"));
    }
    let primes = sieve_to(x_max, opts.sieve_budget)?.primes();
    let classes = classify_all(g, &primes, opts.chunk_size);
    let mut count_pg = 0;
    Ok(primes
        .iter()
        .zip(classes)
        .enumerate()
        .map(|(i, (&p, class))| {
            if class == PrimeClass::Pg {
                count_pg += 1;
            }
            SeriesPoint { p, index: i as u64 + 1, count_pg }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergenceRow {
    pub x: u64,
    pub f: Rational,
    pub f_decimal: String,
    pub diff_decimal: String,
}

/// `(x, f, limit − f)` with decimals rounded half-up at the ninth place.
pub fn convergence_report(series: &DensitySeries) -> Vec<ConvergenceRow> {
    series
        .records
        .iter()
        .map(|r| ConvergenceRow {
            x: r.x,
            f: r.f.clone(),
            f_decimal: r.f.to_decimal(DECIMAL_PLACES),
            diff_decimal: r.diff.to_decimal(DECIMAL_PLACES),
        })
        .collect()
}
