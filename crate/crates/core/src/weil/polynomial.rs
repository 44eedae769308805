use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::WeilQuadruple;
use crate::arith::squarefree_kernel;
use crate::error::{Error, Result};

/// The monic quadratic `t² + b·t + c` together with the claimed `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeilPolynomial {
    #[serde(with = "crate::decimal_serde")]
    pub b: BigInt,
    #[serde(with = "crate::decimal_serde")]
    pub c: BigInt,
    #[serde(with = "crate::decimal_serde")]
    pub q: BigInt,
}

impl WeilPolynomial {
    pub fn new(b: BigInt, c: BigInt, q: BigInt) -> Self {
        WeilPolynomial { b, c, q }
    }

    /// `b² − 4c`.
    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - (&self.c << 2u32)
    }
}

/// `t² + a·p^((g−1)/2)·t + p^g` with `q = p^g`.
pub fn weil_polynomial(w: &WeilQuadruple) -> WeilPolynomial {
    let g = w.g();
    let p = BigInt::from(w.p());
    let q = p.pow(g.get() as u32);
    let b = BigInt::from(w.a()) * p.pow(g.half() as u32);
    WeilPolynomial { b, c: q.clone(), q }
}

/// Whether the roots are `q`-Weil numbers: `c = q` and `b² ≤ 4c`. When
/// `b² < 4c` the roots are complex conjugates with `|root|² = c`; when
/// `b² = 4c` the double root is `−b/2 = ±√q`.
pub fn verify_weil_number(poly: &WeilPolynomial) -> bool {
    poly.q.is_positive() && poly.c == poly.q && !poly.discriminant().is_positive()
}

/// The squarefree kernel of `b² − 4c`, i.e. the CM field `Q(√d)` of the roots.
pub fn cm_field_discriminant(poly: &WeilPolynomial) -> Result<BigInt> {
    let disc = poly.discriminant();
    if !disc.is_negative() {
        return Err(Error::argument(format!(
            "discriminant {disc} is not negative; roots are real"
        )));
    }
    squarefree_kernel(&disc)
}
