//! Certificates and experiments for abelian varieties of Sophie Germain
//! prime dimension `g` whose polarized automorphism group is cyclic of order
//! `4g + 2`.
//!
//! - [`arith`]: primality, sieving, square roots, residues, exact rationals.
//! - [`quadforms`]: reduced forms, class numbers, `p = x² + n·y²`.
//! - [`weil`]: conditions (P1)/(P2), Weil quadruples and polynomials, local
//!   invariants and the endomorphism-algebra certificate.
//! - [`density`]: the counting function `f_g(x)` and its limit.
//! - [`report`]: CSV, JSON, markdown and SVG output.

pub mod arith;
pub mod density;
pub mod error;
pub mod quadforms;
pub mod report;
pub mod weil;

mod decimal_serde;

pub use arith::{PrimeSieve, Rational};
pub use density::{DensityRecord, DensitySeries};
pub use error::{Error, Result};
pub use quadforms::{QuadForm, Representation};
pub use weil::{Dimension, EndAlgebraCertificate, WeilPolynomial, WeilQuadruple};
