//! Weil quadruples `(g, p, a, s)` for Sophie Germain dimensions `g`, their
//! Weil polynomials, and the endomorphism-algebra certificate built on them.
//!
//! A prime `p` qualifies for dimension `g` when
//!
//! - (P1) `p = x² + (2g+1)·y²` with `p ≠ 2g+1`, and
//! - (P2) `p ≢ 1 (mod 2g+1)`.
//!
//! The quadruple is then `a = 2x`, `s = 2y`, which solves
//! `a² − 4p = −(2g+1)·s²`, and the Weil polynomial is
//! `t² + a·p^((g−1)/2)·t + p^g`.

mod certificate;
mod general;
mod polynomial;

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{is_prime, PrimeSieve, DEFAULT_SIEVE_BUDGET};
use crate::error::{Error, Result};
use crate::quadforms::{represent_x2_ny2, Representation};

pub use certificate::{
    certify, certify_report, endomorphism_degree, local_invariants, newton_polygon_valuations,
    valuations_oracle, CertificateReport, CheckOutcome, EndAlgebraCertificate, PlaceInvariant,
    PlaceValuation,
};
pub use general::{solve_general_p1m, P1mOutcome, DEFAULT_S_BOUND};
pub use polynomial::{cm_field_discriminant, verify_weil_number, weil_polynomial, WeilPolynomial};

pub fn is_sophie_germain(g: u64) -> bool {
    is_prime(g) && g.checked_mul(2).and_then(|d| d.checked_add(1)).is_some_and(is_prime)
}

/// Sophie Germain primes `≤ max`, ascending.
pub fn sophie_germain_list(max: u64) -> Vec<u64> {
    (2..=max).filter(|&g| is_sophie_germain(g)).collect()
}

/// A Sophie Germain prime `g ≥ 3` used as the dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Dimension(u64);

impl Dimension {
    pub fn new(g: u64) -> Result<Self> {
        if g < 3 {
            return Err(Error::argument(format!("dimension must be at least 3, got {g}")));
        }
        if !is_sophie_germain(g) {
            return Err(Error::argument(format!("{g} is not a Sophie Germain prime")));
        }
        Ok(Dimension(g))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `2g + 1`.
    pub fn modulus(self) -> u64 {
        2 * self.0 + 1
    }

    /// `(g − 1)/2`, the exponent of `p` in the linear coefficient.
    pub fn half(self) -> u64 {
        (self.0 - 1) / 2
    }

    /// `g = 3` sits outside the main range `g ≥ 5` but the construction applies.
    pub fn is_small_case(self) -> bool {
        self.0 == 3
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Condition (P1): the smallest-`y` representation `p = x² + (2g+1)y²`,
/// excluding `p = 2g+1`.
pub fn check_p1(g: Dimension, p: u64) -> Option<Representation> {
    if p == g.modulus() {
        return None;
    }
    represent_x2_ny2(p, g.modulus())
}

/// Condition (P2): `p ≢ 1 (mod 2g+1)`.
pub fn check_p2(g: Dimension, p: u64) -> bool {
    p % g.modulus() != 1
}

/// Membership in `P_g`, the primes satisfying both (P1) and (P2).
pub fn in_pg(g: Dimension, p: u64) -> bool {
    check_p2(g, p) && check_p1(g, p).is_some()
}

/// A solution of `a² − 4p = −(2g+1)·s²` with `gcd(a, p) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct WeilQuadruple {
    g: Dimension,
    p: u64,
    a: u64,
    s: u64,
}

impl WeilQuadruple {
    pub fn new(g: Dimension, p: u64, a: u64, s: u64) -> Result<Self> {
        let fail = |why: &str| Err(Error::argument(format!("({g}, {p}, {a}, {s}): {why}")));
        if !is_prime(p) {
            return fail("p is not prime");
        }
        if p == g.modulus() {
            return fail("p equals 2g+1");
        }
        if a == 0 || s == 0 || a % 2 != 0 || s % 2 != 0 {
            return fail("a and s must be positive and even");
        }
        let lhs = a as u128 * a as u128 + g.modulus() as u128 * s as u128 * s as u128;
        if lhs != 4 * p as u128 {
            return fail("a² − 4p ≠ −(2g+1)s²");
        }
        if a.gcd(&p) != 1 {
            return fail("gcd(a, p) ≠ 1");
        }
        Ok(WeilQuadruple { g, p, a, s })
    }

    pub fn g(&self) -> Dimension {
        self.g
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    /// Whether this quadruple also satisfies (P2).
    pub fn satisfies_p2(&self) -> bool {
        check_p2(self.g, self.p)
    }
}

/// The quadruple `(g, p, 2x, 2y)` from the smallest-`y` (P1) witness, or
/// `None` when `p ∉ P_g`.
pub fn build_quadruple(g: Dimension, p: u64) -> Option<WeilQuadruple> {
    if !is_prime(p) || !check_p2(g, p) {
        return None;
    }
    let rep = check_p1(g, p)?;
    let w = WeilQuadruple::new(g, p, 2 * rep.x, 2 * rep.y);
    debug_assert!(w.is_ok(), "(P1) witness must yield a valid quadruple");
    w.ok()
}

/// The quadruple for the least prime `p ≤ p_max` in `P_g`.
pub fn find_smallest(g: Dimension, p_max: u64) -> Option<WeilQuadruple> {
    (2..=p_max).filter(|&p| is_prime(p)).find_map(|p| build_quadruple(g, p))
}

/// All quadruples with `p ≤ p_max`, ascending in `p`.
pub fn scan_quadruples(g: Dimension, p_max: u64) -> Result<Vec<WeilQuadruple>> {
    if p_max < 2 {
        return Ok(Vec::new());
    }
    let sieve = PrimeSieve::with_budget(p_max, DEFAULT_SIEVE_BUDGET)?;
    Ok(sieve.iter().filter_map(|p| build_quadruple(g, p)).collect())
}
