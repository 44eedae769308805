//! Exact integer and rational arithmetic shared by the rest of the crate.

mod kernel;
mod primes;
mod rational;
pub(crate) mod residues;
mod roots;

pub use kernel::{squarefree_kernel, squarefree_kernel_with_bound, DEFAULT_TRIAL_BOUND};
pub use primes::{
    is_prime, is_prime_big, sieve_primes, PrimeSieve, DEFAULT_SIEVE_BUDGET, DETERMINISTIC_BOUND,
    EXTRA_ROUNDS,
};
pub use rational::Rational;
pub use residues::{legendre_symbol, multiplicative_order};
pub use roots::{
    hensel_sqrt, integer_sqrt, integer_sqrt_big, is_perfect_square, is_perfect_square_big,
    mod_inverse, p_adic_valuation, sqrt_mod_prime,
};
