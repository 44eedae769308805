//! Primality testing and the Eratosthenes sieve.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Below this bound, strong-probable-prime tests to the first twelve prime
/// bases are a proof of primality (Sorenson and Webster, 2015).
pub const DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

/// Extra random-base rounds run above [`DETERMINISTIC_BOUND`]. A composite
/// survives a random round with probability at most 1/4, so the error is
/// bounded by 4^-32.
pub const EXTRA_ROUNDS: usize = 32;

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Largest sieve limit accepted by [`PrimeSieve::new`] (about 250 MiB of bits).
pub const DEFAULT_SIEVE_BUDGET: u64 = 4_000_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime(n: u64, d: u64, r: u32, a: u64) -> bool {
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..r {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality for any `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n == w {
            return true;
        }
        if n % w == 0 {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    let r = (n - 1).trailing_zeros();
    let d = (n - 1) >> r;
    WITNESSES.iter().all(|&a| strong_probable_prime(n, d, r, a))
}

fn strong_probable_prime_big(n: &BigUint, n_minus_1: &BigUint, d: &BigUint, r: u64, a: &BigUint) -> bool {
    let mut x = a.modpow(d, n);
    if x.is_one() || &x == n_minus_1 {
        return true;
    }
    for _ in 1..r {
        x = (&x * &x) % n;
        if &x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Primality for arbitrary-precision integers.
///
/// Exact below [`DETERMINISTIC_BOUND`]; above it, [`EXTRA_ROUNDS`] additional
/// random bases bound the probability of accepting a composite by 4^-32.
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    for &w in &WITNESSES {
        if (n % w).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let r = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> r;
    let deterministic = WITNESSES.iter().all(|&w| {
        strong_probable_prime_big(n, &n_minus_1, &d, r, &BigUint::from(w))
    });
    if !deterministic {
        return false;
    }
    if n.to_u128().is_some_and(|v| v < DETERMINISTIC_BOUND) {
        return true;
    }
    let mut rng = rand::thread_rng();
    let two = BigUint::from(2u32);
    (0..EXTRA_ROUNDS).all(|_| {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        strong_probable_prime_big(n, &n_minus_1, &d, r, &a)
    })
}

/// Odd-only bitset sieve of Eratosthenes.
#[derive(Debug, Clone)]
pub struct PrimeSieve {
    limit: u64,
    // bit i set <=> 2i+1 is composite (bit 0 stands for 1)
    composite: Vec<u64>,
}

impl PrimeSieve {
    pub fn new(limit: u64) -> Result<Self> {
        Self::with_budget(limit, DEFAULT_SIEVE_BUDGET)
    }

    pub fn with_budget(limit: u64, budget: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::argument(format!("sieve limit must be at least 2, got {limit}")));
        }
        if limit > budget {
            return Err(Error::resource(format!(
                "sieve limit {limit} exceeds the memory budget of {budget}"
            )));
        }
        let slots = (limit / 2 + 1) as usize;
        let mut composite = vec![0u64; slots.div_ceil(64)];
        composite[0] |= 1;
        let mut i = 1usize;
        loop {
            let p = 2 * i as u64 + 1;
            if p * p > limit {
                break;
            }
            if composite[i / 64] >> (i % 64) & 1 == 0 {
                let mut j = (p * p / 2) as usize;
                while j < slots {
                    composite[j / 64] |= 1 << (j % 64);
                    j += p as usize;
                }
            }
            i += 1;
        }
        Ok(PrimeSieve { limit, composite })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// O(1) membership; `n` beyond the limit is reported as not prime.
    pub fn contains(&self, n: u64) -> bool {
        if n > self.limit || n < 2 {
            return false;
        }
        if n == 2 {
            return true;
        }
        if n % 2 == 0 {
            return false;
        }
        let i = (n / 2) as usize;
        self.composite[i / 64] >> (i % 64) & 1 == 0
    }

    /// Primes up to the limit in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let odd = (1..=self.limit.saturating_sub(1) / 2).filter_map(move |i| {
            let i = i as usize;
            (self.composite[i / 64] >> (i % 64) & 1 == 0).then_some(2 * i as u64 + 1)
        });
        std::iter::once(2).chain(odd)
    }

    pub fn primes(&self) -> Vec<u64> {
        self.iter().collect()
    }

    /// π(limit).
    pub fn count(&self) -> usize {
        self.iter().count()
    }
}

/// Convenience wrapper for [`PrimeSieve::new`].
pub fn sieve_primes(limit: u64) -> Result<PrimeSieve> {
    PrimeSieve::new(limit)
}
