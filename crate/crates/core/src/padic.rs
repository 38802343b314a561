//! p-adic valuations and Newton polygons.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::primes::is_prime;

/// `v_p(N!)` by Legendre's formula.
pub fn legendre_valuation(p: u64, n: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut v = 0;
    let mut q = n / p;
    while q > 0 {
        v += q;
        q /= p;
    }
    Ok(v)
}

/// `v_p(n)` for a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

pub fn rat_valuation(q: &BigRational, p: u64) -> i64 {
    int_valuation(q.numer(), p) - int_valuation(q.denom(), p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    #[serde(with = "crate::format::rational_string")]
    pub slope: BigRational,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub prime: u64,
    pub points: Vec<(usize, i64)>,
    pub vertices: Vec<(usize, i64)>,
    pub segments: Vec<Segment>,
}

fn cross(o: (usize, i64), a: (usize, i64), b: (usize, i64)) -> i128 {
    let (ax, ay) = (a.0 as i128 - o.0 as i128, a.1 as i128 - o.1 as i128);
    let (bx, by) = (b.0 as i128 - o.0 as i128, b.1 as i128 - o.1 as i128);
    ax * by - ay * bx
}

/// Lower convex hull of `(i, v_p(a_i))` over the nonzero coefficients.
pub fn newton_polygon(f: &RatPoly, p: u64) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let points: Vec<(usize, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, rat_valuation(c, p)))
        .collect();
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            Segment {
                slope: BigRational::new(BigInt::from(w[1].1 - w[0].1), BigInt::from(len)),
                length: len,
            }
        })
        .collect();
    Ok(NewtonPolygon {
        prime: p,
        points,
        vertices: hull,
        segments,
    })
}

/// `(degree, slope)` of the pure factor over Q_p attached to each segment.
pub fn qp_factor_shape(f: &RatPoly, p: u64) -> Result<Vec<(usize, BigRational)>> {
    Ok(newton_polygon(f, p)?
        .segments
        .into_iter()
        .map(|s| (s.length, s.slope))
        .collect())
}

/// Largest prime `p` with `N/2 < p < N`.
pub fn bertrand_prime(n: u64) -> Result<u64> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("need N >= 4, got {n}")));
    }
    (n / 2 + 1..n)
        .rev()
        .find(|&p| is_prime(p) && 2 * p > n)
        .ok_or_else(|| Error::NoSuitablePrime(n))
}
