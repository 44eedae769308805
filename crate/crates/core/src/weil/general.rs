//! Solutions of `X² − 4·Y^(g−2m) = −(2g+1)·Z²` for general `m`.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use super::Dimension;
use crate::arith::{integer_sqrt_big, is_prime};
use crate::error::{Error, Result};

pub const DEFAULT_S_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum P1mOutcome {
    /// Smallest `s` with a solution, and the matching `a > 0`.
    Found {
        #[serde(serialize_with = "serialize_biguint")]
        a: BigUint,
        s: u64,
    },
    /// Every `s` with `(2g+1)s² < 4p^(g−2m)` was tried.
    NoSolution,
    /// The scan stopped at `s = bound` before the range was exhausted.
    BoundExhausted { bound: u64 },
}

fn serialize_biguint<S: serde::Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

// squares modulo 64, 63 and 65 as bitmasks; cheap rejection before sqrt
fn square_masks() -> ([bool; 64], [bool; 63], [bool; 65]) {
    let mut m64 = [false; 64];
    let mut m63 = [false; 63];
    let mut m65 = [false; 65];
    for i in 0..65usize {
        m64[i * i % 64] = true;
        m63[i * i % 63] = true;
        m65[i * i % 65] = true;
    }
    (m64, m63, m65)
}

/// Smallest `s ≥ 1` such that `4p^(g−2m) − (2g+1)s² = a²` with `gcd(a, p) = 1`,
/// scanning both parities of `s` up to `s_bound` (default [`DEFAULT_S_BOUND`]).
pub fn solve_general_p1m(
    g: Dimension,
    p: u64,
    m: u64,
    s_bound: Option<u64>,
) -> Result<P1mOutcome> {
    if m == 0 || m > g.half() {
        return Err(Error::argument(format!("m must lie in [1, {}], got {m}", g.half())));
    }
    if !is_prime(p) {
        return Err(Error::argument(format!("{p} is not prime")));
    }
    let bound = s_bound.unwrap_or(DEFAULT_S_BOUND);
    let n = BigUint::from(g.modulus());
    let target = BigUint::from(p).pow((g.get() - 2 * m) as u32) << 2u32;
    let (m64, m63, m65) = square_masks();

    let mut s = 1u64;
    loop {
        let ns2 = &n * s * s;
        if ns2 >= target {
            return Ok(P1mOutcome::NoSolution);
        }
        if s > bound {
            return Ok(P1mOutcome::BoundExhausted { bound });
        }
        let rest = &target - ns2;
        let r64 = (&rest % 64u32).iter_u32_digits().next().unwrap_or(0) as usize;
        let r63 = (&rest % 63u32).iter_u32_digits().next().unwrap_or(0) as usize;
        let r65 = (&rest % 65u32).iter_u32_digits().next().unwrap_or(0) as usize;
        if m64[r64] && m63[r63] && m65[r65] {
            let a = integer_sqrt_big(&rest);
            if &a * &a == rest && !(&a % p).is_zero() {
                return Ok(P1mOutcome::Found { a, s });
            }
        }
        s += 1;
    }
}
