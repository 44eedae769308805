//! Positive definite binary quadratic forms: reduction, class numbers and
//! representations of primes by `x² + n·y²`.

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{integer_sqrt, is_perfect_square};
use crate::error::{Error, Result};

/// Largest `4m` scanned by [`properly_representable`].
pub const DEFAULT_RESIDUE_SCAN_BOUND: u64 = 10_000_000;

/// The form `aX² + bXY + cY²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_positive_definite(&self) -> bool {
        self.discriminant() < 0 && self.a > 0
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }
}

/// `|b| ≤ a ≤ c`, with `b ≥ 0` on the boundary `|b| = a` or `a = c`.
pub fn is_reduced(f: &QuadForm) -> Result<bool> {
    if !f.is_positive_definite() {
        return Err(Error::argument(format!(
            "({}, {}, {}) is not positive definite",
            f.a, f.b, f.c
        )));
    }
    let inside = f.b.abs() <= f.a && f.a <= f.c;
    let boundary = f.b.abs() == f.a || f.a == f.c;
    Ok(inside && (!boundary || f.b >= 0))
}

fn check_discriminant(d: i64) -> Result<()> {
    if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::argument(format!(
            "{d} is not a negative discriminant (must be < 0 and ≡ 0, 1 mod 4)"
        )));
    }
    Ok(())
}

/// All primitive reduced forms of discriminant `d`, ordered by `(a, b)`.
pub fn reduced_forms(d: i64) -> Result<Vec<QuadForm>> {
    check_discriminant(d)?;
    let n = -d;
    // a reduced form has 3a² ≤ |d|
    let a_max = integer_sqrt((n / 3) as u64) as i64;
    let mut forms = Vec::new();
    for a in 1..=a_max {
        // b ≡ d (mod 2), -a < b ≤ a
        let start = if (-a + 1 - d).rem_euclid(2) == 0 { -a + 1 } else { -a + 2 };
        for b in (start..=a).step_by(2) {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = QuadForm::new(a, b, num / (4 * a));
            if f.c < a || (b < 0 && f.c == a) || !f.is_primitive() {
                continue;
            }
            forms.push(f);
        }
    }
    Ok(forms)
}

/// h(d): the number of primitive reduced forms of discriminant `d`.
pub fn class_number(d: i64) -> Result<u64> {
    Ok(reduced_forms(d)?.len() as u64)
}

/// A witness `p = x² + n·y²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Representation {
    pub n: u64,
    pub p: u64,
    pub x: u64,
    pub y: u64,
}

/// The representation `p = x² + n·y²` with the smallest `y ≥ 1`, scanning
/// while `n·y² < p`.
pub fn represent_x2_ny2(p: u64, n: u64) -> Option<Representation> {
    if n == 0 {
        return None;
    }
    (1u64..)
        .map_while(|y| {
            let ny2 = y.checked_mul(y)?.checked_mul(n)?;
            (ny2 < p).then(|| (y, p - ny2))
        })
        .find(|&(_, rest)| is_perfect_square(rest))
        .map(|(y, rest)| Representation { n, p, x: integer_sqrt(rest), y })
}

/// Whether some form of discriminant `d` properly represents `m`, decided by
/// the existence of `t` with `t² ≡ d (mod 4m)`.
pub fn properly_representable(m: u64, d: i64) -> Result<bool> {
    properly_representable_with_bound(m, d, DEFAULT_RESIDUE_SCAN_BOUND)
}

pub fn properly_representable_with_bound(m: u64, d: i64, scan_bound: u64) -> Result<bool> {
    if !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::argument(format!("{d} is not ≡ 0 or 1 mod 4")));
    }
    if m == 0 {
        return Err(Error::argument("m must be positive"));
    }
    let modulus = m
        .checked_mul(4)
        .filter(|&q| q <= scan_bound)
        .ok_or_else(|| Error::resource(format!("4·{m} exceeds the residue scan bound {scan_bound}")))?
        as u128;
    let target = (d as i128).rem_euclid(modulus as i128) as u128;
    // t and 2m ± t have the same square mod 4m
    Ok((0..=m as u128).any(|t| t * t % modulus == target))
}
