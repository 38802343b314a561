//! Diagonal Padé approximants by the extended Euclidean algorithm.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{IntPoly, RatPoly};
use crate::series::{taylor, SeriesId};

/// Normalized approximant: the series agrees with
/// `overall_sign * scale * numerator / denominator` up to `O(x^order)`.
/// Both polynomials are primitive with positive leading coefficient and
/// `scale` is a positive rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadePair {
    pub series: SeriesId,
    pub order: usize,
    pub numerator: IntPoly,
    pub denominator: IntPoly,
    pub overall_sign: i8,
    #[serde(with = "crate::format::rational_string")]
    pub scale: BigRational,
}

impl PadePair {
    /// The approximant as a pair of rational polynomials `(P, Q)` with
    /// `Q(0) = 1`.
    pub fn rational_form(&self) -> (RatPoly, RatPoly) {
        let q0 = BigRational::from_integer(self.denominator.coeff(0));
        let mut k = self.scale.clone() / q0.clone();
        if self.overall_sign < 0 {
            k = -k;
        }
        (
            self.numerator.to_rat().scale(&k),
            self.denominator.to_rat().scale(&q0.recip()),
        )
    }
}

/// Largest admissible numerator degree for order `n`.
pub fn numerator_degree_bound(n: usize) -> usize {
    n - 1 - n / 2
}

pub fn pade_diagonal(id: SeriesId, n: usize) -> Result<PadePair> {
    if n == 0 {
        return Err(Error::InvalidArgument("Pade order must be positive".into()));
    }
    let defective = || Error::DefectivePade {
        order: n,
        series: id.name().to_string(),
    };
    let k = numerator_degree_bound(n);
    let mut r0 = RatPoly::monomial(BigRational::one(), n);
    let mut r1 = taylor(id, n - 1);
    let mut t0 = RatPoly::zero();
    let mut t1 = RatPoly::one();
    while r1.degree().is_some_and(|d| d > k) {
        let (q, r) = r0.divrem(&r1)?;
        let t2 = &t0 - &(&q * &t1);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t2;
    }
    let (p, q) = (r1, t1);
    if p.is_zero() || q.coeff(0).is_zero() {
        return Err(defective());
    }
    let g = RatPoly::gcd(&p, &q);
    let p = p.divrem(&g)?.0;
    let q = q.divrem(&g)?.0;
    let (sp, pp) = p.to_primitive()?;
    let (sq, qp) = q.to_primitive()?;
    let ratio = sp / sq;
    let pair = PadePair {
        series: id,
        order: n,
        numerator: pp,
        denominator: qp,
        overall_sign: if ratio.is_negative() { -1 } else { 1 },
        scale: ratio.abs(),
    };
    debug_assert!(pade_defect_check(&pair));
    Ok(pair)
}

/// True iff `Q * T_{n-1} - sign * scale * P = O(x^n)`.
pub fn pade_defect_check(p: &PadePair) -> bool {
    if p.order == 0 || p.denominator.is_zero() {
        return false;
    }
    let t = taylor(p.series, p.order - 1);
    let mut k = p.scale.clone();
    if p.overall_sign < 0 {
        k = -k;
    }
    let lhs = &(&p.denominator.to_rat() * &t) - &p.numerator.to_rat().scale(&k);
    lhs.truncate(p.order).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityRow {
    pub n: usize,
    pub m: usize,
    pub numerator_divides: bool,
    pub denominator_divides: bool,
}

impl DivisibilityRow {
    pub fn divides(&self) -> bool {
        self.numerator_divides && self.denominator_divides
    }
}

/// Checks `P_n | P_m` and `Q_n | Q_m` for all `n | m <= max_order`.
pub fn divisibility_scan(id: SeriesId, max_order: usize) -> Result<Vec<DivisibilityRow>> {
    if max_order < 2 {
        return Err(Error::InvalidArgument(
            "max order must be at least 2".into(),
        ));
    }
    let pairs: Vec<PadePair> = (1..=max_order)
        .into_par_iter()
        .map(|n| pade_diagonal(id, n))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for m in 1..=max_order {
        for n in (1..=m).filter(|n| m % n == 0) {
            let (a, b) = (&pairs[n - 1], &pairs[m - 1]);
            rows.push(DivisibilityRow {
                n,
                m,
                numerator_divides: a.numerator.divides(&b.numerator),
                denominator_divides: a.denominator.divides(&b.denominator),
            });
        }
    }
    rows.sort_by_key(|r| (r.n, r.m));
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

pub fn parity(f: &IntPoly) -> Parity {
    let odd_terms = f.coeffs().iter().skip(1).step_by(2).any(|c| !c.is_zero());
    let even_terms = f.coeffs().iter().step_by(2).any(|c| !c.is_zero());
    match (even_terms, odd_terms) {
        (_, false) => Parity::Even,
        (false, true) => Parity::Odd,
        (true, true) => Parity::Mixed,
    }
}
