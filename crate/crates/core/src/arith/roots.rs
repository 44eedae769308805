//! Exact integer square roots and square roots modulo prime powers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::primes::pow_mod;
use super::residues::legendre_symbol;
use crate::error::{Error, Result};

/// ⌊√n⌋ by Newton iteration.
pub fn integer_sqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    // 2^ceil(bits/2) >= √n, so the iteration decreases monotonically
    let mut x = 1u64 << (64 - n.leading_zeros()).div_ceil(2);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

pub fn is_perfect_square(n: u64) -> bool {
    let r = integer_sqrt(n);
    r * r == n
}

/// ⌊√n⌋ for arbitrary precision (Newton iteration inside `num-integer`).
pub fn integer_sqrt_big(n: &BigUint) -> BigUint {
    n.sqrt()
}

pub fn is_perfect_square_big(n: &BigUint) -> bool {
    let r = n.sqrt();
    &(&r * &r) == n
}

/// A square root of `a` modulo the odd prime `p` (Tonelli–Shanks), the
/// smaller of the two roots.
pub fn sqrt_mod_prime(a: i64, p: u64) -> Result<u64> {
    if legendre_symbol(a, p)? != 1 {
        return Err(Error::argument(format!("{a} is not a nonzero square modulo {p}")));
    }
    let a = a.rem_euclid(p as i64) as u64;
    let root = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        let s = (p - 1).trailing_zeros();
        let q = (p - 1) >> s;
        let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1).expect("non-residue exists");
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(a, q, p);
        let mut r = pow_mod(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = ((t2 as u128 * t2 as u128) % p as u128) as u64;
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            m = i;
            c = ((b as u128 * b as u128) % p as u128) as u64;
            t = ((t as u128 * c as u128) % p as u128) as u64;
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        r
    };
    Ok(root.min(p - root))
}

/// Lift the canonical mod-`p` square root of `a` to a root modulo `p^k` by
/// Newton iteration. The result lies in `[0, p^k)` and is congruent to
/// [`sqrt_mod_prime`]`(a, p)` modulo `p`.
pub fn hensel_sqrt(a: &BigInt, p: u64, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::argument("Hensel precision must be at least 1"));
    }
    let a_mod_p = a.mod_floor(&BigInt::from(p)).to_i64().expect("residue fits");
    let root = sqrt_mod_prime(a_mod_p, p)?;

    let target = BigInt::from(p).pow(k);
    let mut modulus = BigInt::from(p);
    let mut t = BigInt::from(root);
    while modulus < target {
        modulus = (&modulus * &modulus).min(target.clone());
        // t <- t - (t^2 - a) / (2t) mod modulus; 2t is a unit since p is odd and p ∤ t
        let residual = (&t * &t - a).mod_floor(&modulus);
        let inv = mod_inverse(&((&t << 1u32) % &modulus), &modulus)
            .expect("2t is invertible modulo an odd prime power");
        t = (&t - residual * inv).mod_floor(&modulus);
    }
    Ok(t.mod_floor(&target).to_biguint().expect("nonnegative"))
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let egcd = a.extended_gcd(m);
    if !egcd.gcd.abs().is_one() {
        return None;
    }
    Some(egcd.x.mod_floor(m))
}

/// Exponent of the largest power of `p` dividing `n`; `None` for zero.
pub fn p_adic_valuation(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let mut m = n.magnitude().clone();
    let mut v = 0;
    while (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    Some(v)
}
