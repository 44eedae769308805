//! Squarefree kernels by bounded trial factoring.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use super::primes::{is_prime_big, PrimeSieve};
use super::roots::integer_sqrt_big;
use crate::error::{Error, Result};

pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// The squarefree `d` (sign preserved) with `n = d·m²`.
pub fn squarefree_kernel(n: &BigInt) -> Result<BigInt> {
    squarefree_kernel_with_bound(n, DEFAULT_TRIAL_BOUND)
}

/// [`squarefree_kernel`] with an explicit trial-division bound `B`. A cofactor
/// left over after trial division is resolved when it is below `B²` (then
/// prime), a probable prime, or the square of a prime; otherwise this fails.
pub fn squarefree_kernel_with_bound(n: &BigInt, bound: u64) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::argument("squarefree kernel of zero is undefined"));
    }
    let mut rest: BigUint = n.magnitude().clone();
    let mut kernel = BigUint::one();

    let mut strip = |rest: &mut BigUint, d: u64| {
        let mut e = 0u32;
        while (&*rest % d).is_zero() {
            *rest /= d;
            e += 1;
        }
        if e % 2 == 1 {
            kernel *= d;
        }
    };

    if bound >= 2 {
        let sieve = PrimeSieve::with_budget(bound, bound)?;
        for d in sieve.iter() {
            if rest.is_one() || BigUint::from(d) * d > rest {
                break;
            }
            strip(&mut rest, d);
        }
    }

    if !rest.is_one() {
        let bound_sq = BigUint::from(bound) * bound;
        if rest <= bound_sq || is_prime_big(&rest) {
            kernel *= &rest;
        } else {
            let r = integer_sqrt_big(&rest);
            if &r * &r != rest || !is_prime_big(&r) {
                return Err(Error::resource(format!(
                    "cofactor {rest} is not resolvable by trial division to {bound}"
                )));
            }
        }
    }

    let sign = if n.sign() == Sign::Minus { Sign::Minus } else { Sign::Plus };
    Ok(BigInt::from_biguint(sign, kernel))
}
