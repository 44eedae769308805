//! Quadratic residue symbols and multiplicative orders.

use num_integer::Integer;

use super::primes::{is_prime, pow_mod};
use crate::error::{Error, Result};

/// Legendre symbol (a/p) for an odd prime `p`, computed by quadratic
/// reciprocity.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::argument(format!("{p} is not an odd prime")));
    }
    let mut a = (a as i128).rem_euclid(p as i128) as u64;
    let mut n = p;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn euler_phi(n: u64) -> u64 {
    prime_factors(n).iter().fold(n, |acc, q| acc / q * (q - 1))
}

/// Least k ≥ 1 with a^k ≡ 1 (mod n).
pub fn multiplicative_order(a: i64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::argument(format!("modulus must be at least 2, got {n}")));
    }
    let a = (a as i128).rem_euclid(n as i128) as u64;
    if a.gcd(&n) != 1 {
        return Err(Error::argument(format!("{a} is not a unit modulo {n}")));
    }
    let mut order = euler_phi(n);
    for q in prime_factors(order) {
        while order % q == 0 && pow_mod(a, order / q, n) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn euler_criterion(a: i64, p: u64) -> i8 {
        match pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p) {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(-23, 59).unwrap(), 1);
        assert_eq!(legendre_symbol(0, 59).unwrap(), 0);
        assert_eq!(legendre_symbol(59 * 3, 59).unwrap(), 0);
        assert_eq!(legendre_symbol(-11, 47).unwrap(), 1);
        assert!(legendre_symbol(3, 2).is_err());
        assert!(legendre_symbol(3, 15).is_err());
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order(47 % 11, 11).unwrap(), 5);
        assert_eq!(multiplicative_order(47, 11).unwrap(), 5);
        assert_eq!(multiplicative_order(1, 97).unwrap(), 1);
        assert_eq!(multiplicative_order(59 % 23, 23).unwrap(), 11);
        assert!(multiplicative_order(6, 9).is_err());
        assert!(multiplicative_order(3, 1).is_err());
    }

    #[test]
    fn order_matches_brute_force() {
        for n in 2..300u64 {
            for a in 1..n {
                if a.gcd(&n) != 1 {
                    continue;
                }
                let brute = (1..=n).find(|&k| pow_mod(a, k, n) == 1).unwrap();
                assert_eq!(multiplicative_order(a as i64, n).unwrap(), brute, "{a} mod {n}");
            }
        }
    }

    proptest! {
        #[test]
        fn legendre_equals_euler(
            p in prop::sample::select(vec![3u64, 5, 11, 23, 47, 59, 1163, 1_000_003, 2_147_483_647]),
            a in any::<i64>(),
        ) {
            prop_assert_eq!(legendre_symbol(a, p).unwrap(), euler_criterion(a, p));
        }

        #[test]
        fn legendre_multiplicative(a in -10_000i64..10_000, b in -10_000i64..10_000) {
            let p = 1009;
            prop_assert_eq!(
                legendre_symbol(a * b, p).unwrap(),
                legendre_symbol(a, p).unwrap() * legendre_symbol(b, p).unwrap()
            );
        }
    }
}
