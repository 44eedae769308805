//! Local invariants of the endomorphism algebra and the full certificate.
//!
//! The Weil number `π` generates `K = Q(√−(2g+1))`, in which `p` splits into
//! two places. At each place `ν` above `p` the Brauer invariant of the
//! endomorphism algebra is `ord_ν(π)/ord_ν(q) · [K_ν : Q_p]`, and it is zero
//! everywhere else. Two independent routes produce the valuations:
//!
//! - the Newton polygon of `t² + b·t + c` at `p` ([`local_invariants`]);
//! - explicit `p`-adic images of `π` through a Hensel-lifted `√−(2g+1)`
//!   ([`valuations_oracle`]).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::{
    check_p1, check_p2, cm_field_discriminant, weil_polynomial, Dimension,
    WeilPolynomial, WeilQuadruple,
};
use crate::arith::residues::euler_phi;
use crate::arith::{
    hensel_sqrt, is_prime, legendre_symbol, mod_inverse, multiplicative_order, p_adic_valuation,
    Rational,
};
use crate::error::{Error, Result};

/// Multiplicative order of `p` modulo `2g+1`. The value `g` certifies that `p`
/// splits into exactly two primes of residue degree `g` in `Q(ζ_{4g+2})`.
pub fn splitting_order(g: Dimension, p: u64) -> Result<u64> {
    if p % g.modulus() == 0 {
        return Err(Error::argument(format!("{p} is divisible by 2g+1 = {}", g.modulus())));
    }
    multiplicative_order((p % g.modulus()) as i64, g.modulus())
}

/// Root valuations `[v₁, v₂]` (ascending) read off the Newton polygon of the
/// polynomial at `p`. Fails when the polygon has a single slope, i.e. when
/// both roots have the same valuation.
pub fn newton_polygon_valuations(poly: &WeilPolynomial, p: u64) -> Result<[u64; 2]> {
    let v_c = p_adic_valuation(&poly.c, p)
        .ok_or_else(|| Error::argument("constant term is zero"))?;
    let v_b = p_adic_valuation(&poly.b, p);
    match v_b {
        Some(v_b) if 2 * v_b < v_c => Ok([v_b, v_c - v_b]),
        _ => Err(Error::argument(format!(
            "Newton polygon at {p} has a single slope (p divides the normalized trace)"
        ))),
    }
}

/// The two local invariants at the places above `p`, ascending.
pub fn local_invariants(w: &WeilQuadruple) -> Result<[Rational; 2]> {
    let g = w.g();
    if legendre_symbol(-(g.modulus() as i64), w.p())? != 1 {
        return Err(Error::argument(format!("{} does not split in Q(√−{})", w.p(), g.modulus())));
    }
    let poly = weil_polynomial(w);
    let [v1, v2] = newton_polygon_valuations(&poly, w.p())?;
    // split and unramified: [K_ν : Q_p] = 1 and ord_ν(q) = v_p(q)
    let ord_q = p_adic_valuation(&poly.q, w.p()).expect("q = p^g is nonzero");
    Ok([Rational::new(v1, ord_q), Rational::new(v2, ord_q)])
}

/// Valuation of `π` at the place that sends `√−(2g+1)` to the residue
/// `sqrt_residue` modulo `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlaceValuation {
    pub sqrt_residue: u64,
    pub valuation: u64,
}

/// Valuations of `π = p^((g−1)/2)·(−a ± s·t)/2` in `Z_p / p^(g+1)`, where `t`
/// is the canonical Hensel lift of `√−(2g+1)`. Sorted by valuation, lower
/// first.
pub fn valuations_oracle(w: &WeilQuadruple) -> Result<[PlaceValuation; 2]> {
    let g = w.g();
    let p = w.p();
    let precision = g.get() as u32 + 1;
    let modulus = BigInt::from(p).pow(precision);
    let radicand = -BigInt::from(g.modulus());
    let t = BigInt::from(hensel_sqrt(&radicand, p, precision)?);
    let half = mod_inverse(&BigInt::from(2), &modulus).expect("p is odd");
    let scale = BigInt::from(p).pow(g.half() as u32);
    let (a, s) = (BigInt::from(w.a()), BigInt::from(w.s()));

    let mut places = [t.clone(), (-t).mod_floor(&modulus)].map(|root| {
        let image = (&scale * (&s * &root - &a) * &half).mod_floor(&modulus);
        let sqrt_residue = (&root % p).to_u64().expect("residue fits");
        (sqrt_residue, p_adic_valuation(&image, p))
    });
    places.sort_by_key(|&(_, v)| v.unwrap_or(u64::MAX));
    let mut out = [PlaceValuation { sqrt_residue: 0, valuation: 0 }; 2];
    for (slot, (sqrt_residue, v)) in out.iter_mut().zip(places) {
        let valuation = v.ok_or_else(|| {
            Error::argument(format!("image of π vanishes modulo {p}^{precision}"))
        })?;
        *slot = PlaceValuation { sqrt_residue, valuation };
    }
    Ok(out)
}

/// Least common denominator of the local invariants.
pub fn endomorphism_degree(invariants: &[Rational]) -> u64 {
    invariants
        .iter()
        .map(|r| r.denom().to_u64().expect("denominator fits in u64"))
        .fold(1, |acc, d| acc.lcm(&d))
}

/// Invariant data at one place above `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaceInvariant {
    pub sqrt_residue: u64,
    pub valuation: u64,
    pub invariant: Rational,
}

/// Everything the construction asserts about `(g, p)`, after verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndAlgebraCertificate {
    pub quadruple: WeilQuadruple,
    pub polynomial: WeilPolynomial,
    #[serde(with = "crate::decimal_serde")]
    pub cm_discriminant: BigInt,
    pub splitting_order: u64,
    pub places: [PlaceInvariant; 2],
    pub degree_d: u64,
    pub center_degree_e: u64,
    pub dimension: u64,
    pub aut_order: u64,
    /// `g = 3`, outside the main range `g ≥ 5`.
    pub small_dimension_case: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Every identity checked for `(g, p)`. Later checks are skipped when an
/// earlier one leaves nothing to check (no quadruple, for instance).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub g: u64,
    pub p: u64,
    pub checks: Vec<CheckOutcome>,
    pub certificate: Option<EndAlgebraCertificate>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.certificate.is_some() && self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn check(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(CheckOutcome { name, passed, detail: detail.into() });
        passed
    }
}

/// Run the certificate pipeline for `(g, p)`, recording every identity.
pub fn certify_report(g: u64, p: u64) -> CertificateReport {
    let mut report = CertificateReport { g, p, checks: Vec::new(), certificate: None };

    let dim = match Dimension::new(g) {
        Ok(dim) => {
            report.check("sophie_germain", true, format!("{g} and {} are prime", 2 * g + 1));
            dim
        }
        Err(e) => {
            report.check("sophie_germain", false, e.to_string());
            return report;
        }
    };
    if !report.check("p_prime", is_prime(p), format!("p = {p}")) {
        return report;
    }
    let n = dim.modulus();

    let rep = check_p1(dim, p);
    let p1_detail = match rep {
        Some(r) => format!("{p} = {}² + {n}·{}²", r.x, r.y),
        None if p == n => format!("p = 2g+1 = {n}"),
        None => format!("{p} is not of the form x² + {n}y²"),
    };
    report.check("P2", check_p2(dim, p), format!("{p} mod {n} = {}", p % n));
    report.check("P1", rep.is_some(), p1_detail);
    let Some(rep) = rep else {
        return report;
    };

    let w = match WeilQuadruple::new(dim, p, 2 * rep.x, 2 * rep.y) {
        Ok(w) => {
            report.check(
                "quadruple_identity",
                true,
                format!("{}² − 4·{p} = −{n}·{}², gcd(a, p) = 1", w.a(), w.s()),
            );
            w
        }
        Err(e) => {
            report.check("quadruple_identity", false, e.to_string());
            return report;
        }
    };

    let poly = weil_polynomial(&w);
    let q = BigInt::from(p).pow(g as u32);
    report.check(
        "weil_modulus",
        poly.c == q && poly.q == q && poly.discriminant().is_negative(),
        "C = q = p^g and B² < 4C",
    );

    let cm = cm_field_discriminant(&poly);
    let expected_cm = -BigInt::from(n);
    let cm_ok = cm.as_ref().is_ok_and(|d| *d == expected_cm);
    report.check(
        "cm_discriminant",
        cm_ok,
        match &cm {
            Ok(d) => format!("squarefree kernel of B² − 4C is {d}"),
            Err(e) => e.to_string(),
        },
    );

    let order = splitting_order(dim, p);
    report.check(
        "splitting_order",
        order.as_ref().is_ok_and(|&o| o == g),
        match &order {
            Ok(o) => format!("ord of {p} mod {n} is {o}"),
            Err(e) => e.to_string(),
        },
    );

    let closed = local_invariants(&w);
    let oracle = valuations_oracle(&w);
    let expected = [Rational::new(dim.half(), g), Rational::new(dim.half() + 1, g)];
    let invariants_ok = match (&closed, &oracle) {
        (Ok(closed), Ok(oracle)) => {
            closed == &expected
                && closed.iter().zip(oracle).all(|(c, o)| *c == Rational::new(o.valuation, g))
        }
        _ => false,
    };
    let detail = match (&closed, &oracle) {
        (Ok(c), Ok(o)) => format!(
            "Newton polygon {{{}, {}}}, p-adic valuations {{{}, {}}}",
            c[0], c[1], o[0].valuation, o[1].valuation
        ),
        (Err(e), _) | (_, Err(e)) => e.to_string(),
    };
    report.check("local_invariants", invariants_ok, detail);
    let (Ok(closed), Ok(oracle)) = (closed, oracle) else {
        return report;
    };

    let sum = closed.iter().fold(Rational::zero(), |acc, r| &acc + r);
    report.check("invariant_sum", sum.is_integer(), format!("sum = {sum}"));

    let degree_d = endomorphism_degree(&closed);
    report.check("endomorphism_degree", degree_d == g, format!("d = {degree_d}"));

    // the center is the imaginary quadratic field K
    let center_degree_e = 2;
    let dimension = degree_d * center_degree_e / 2;
    report.check(
        "degree_identity",
        degree_d * center_degree_e == 2 * g && dimension == g,
        format!("d·e = {degree_d}·{center_degree_e} = 2·{dimension}"),
    );

    // roots of unity in Q(ζ_m) number lcm(2, m); the unit rank is φ(m)/2 − 1
    let aut_order = 4 * g + 2;
    let torsion = aut_order.lcm(&2);
    let unit_rank = euler_phi(aut_order) / 2 - 1;
    report.check(
        "aut_order",
        aut_order == torsion && aut_order == 2 * n && unit_rank == g - 1,
        format!("|C_{{4g+2}}| = {aut_order}, unit group Z^{unit_rank} × μ_{torsion}"),
    );

    if report.checks.iter().all(|c| c.passed) {
        let places = [0, 1].map(|i| PlaceInvariant {
            sqrt_residue: oracle[i].sqrt_residue,
            valuation: oracle[i].valuation,
            invariant: closed[i].clone(),
        });
        report.certificate = Some(EndAlgebraCertificate {
            quadruple: w,
            polynomial: poly,
            cm_discriminant: expected_cm,
            splitting_order: g,
            places,
            degree_d,
            center_degree_e,
            dimension,
            aut_order,
            small_dimension_case: dim.is_small_case(),
        });
    }
    report
}

/// The certificate for `(g, p)`, or the first identity that failed.
pub fn certify(g: Dimension, p: u64) -> Result<EndAlgebraCertificate> {
    let report = certify_report(g.get(), p);
    if let Some(failed) = report.first_failure() {
        return Err(Error::Certificate { check: failed.name.to_string(), detail: failed.detail.clone() });
    }
    report.certificate.ok_or_else(|| Error::Certificate {
        check: "certificate".into(),
        detail: format!("no certificate produced for ({g}, {p})"),
    })
}
