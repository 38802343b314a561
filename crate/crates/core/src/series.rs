//! Exact Taylor coefficients of a fixed registry of classical series.
//!
//! Sign conventions: `LogOneMinus` is stored as `sum x^n / n`, which is
//! `-log(1 - x)`; `OnePlusLogOneMinus` is the literal `1 + log(1 - x)`.
//! Overall signs do not affect factorizations or Galois groups.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{IntPoly, Poly, RatPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeriesId {
    #[serde(rename = "exp")]
    Exp,
    #[serde(rename = "log1m")]
    LogOneMinus,
    /// `log((1 + x) / (1 - x)) / 2`
    #[serde(rename = "atanh2")]
    Atanh2,
    /// `(1 + x)^(-1/2)`
    #[serde(rename = "invsqrt-plus")]
    InvSqrtPlus,
    /// `(1 - x)^(-1/2)`
    #[serde(rename = "invsqrt-minus")]
    InvSqrtMinus,
    #[serde(rename = "sin")]
    Sin,
    #[serde(rename = "cos")]
    Cos,
    #[serde(rename = "sinh")]
    Sinh,
    #[serde(rename = "sin-sinh")]
    SinPlusSinh,
    #[serde(rename = "one-plus-sin")]
    OnePlusSin,
    #[serde(rename = "one-plus-log1m")]
    OnePlusLogOneMinus,
}

impl SeriesId {
    pub const ALL: [SeriesId; 11] = [
        SeriesId::Exp,
        SeriesId::LogOneMinus,
        SeriesId::Atanh2,
        SeriesId::InvSqrtPlus,
        SeriesId::InvSqrtMinus,
        SeriesId::Sin,
        SeriesId::Cos,
        SeriesId::Sinh,
        SeriesId::SinPlusSinh,
        SeriesId::OnePlusSin,
        SeriesId::OnePlusLogOneMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesId::Exp => "exp",
            SeriesId::LogOneMinus => "log1m",
            SeriesId::Atanh2 => "atanh2",
            SeriesId::InvSqrtPlus => "invsqrt-plus",
            SeriesId::InvSqrtMinus => "invsqrt-minus",
            SeriesId::Sin => "sin",
            SeriesId::Cos => "cos",
            SeriesId::Sinh => "sinh",
            SeriesId::SinPlusSinh => "sin-sinh",
            SeriesId::OnePlusSin => "one-plus-sin",
            SeriesId::OnePlusLogOneMinus => "one-plus-log1m",
        }
    }

    /// Exact coefficient of `x^n`.
    pub fn coefficient(self, n: usize) -> BigRational {
        let odd = n % 2 == 1;
        match self {
            SeriesId::Exp => inv_factorial(n),
            SeriesId::LogOneMinus if n == 0 => BigRational::zero(),
            SeriesId::LogOneMinus => recip(n),
            SeriesId::Atanh2 if odd => recip(n),
            SeriesId::Atanh2 => BigRational::zero(),
            SeriesId::InvSqrtMinus => central_binomial_ratio(n),
            SeriesId::InvSqrtPlus if odd => -central_binomial_ratio(n),
            SeriesId::InvSqrtPlus => central_binomial_ratio(n),
            SeriesId::Sin if odd => alternate((n - 1) / 2, inv_factorial(n)),
            SeriesId::Sin => BigRational::zero(),
            SeriesId::Cos if !odd => alternate(n / 2, inv_factorial(n)),
            SeriesId::Cos => BigRational::zero(),
            SeriesId::Sinh if odd => inv_factorial(n),
            SeriesId::Sinh => BigRational::zero(),
            SeriesId::SinPlusSinh if n % 4 == 1 => inv_factorial(n) * BigInt::from(2),
            SeriesId::SinPlusSinh => BigRational::zero(),
            SeriesId::OnePlusSin if n == 0 => BigRational::one(),
            SeriesId::OnePlusSin => SeriesId::Sin.coefficient(n),
            SeriesId::OnePlusLogOneMinus if n == 0 => BigRational::one(),
            SeriesId::OnePlusLogOneMinus => -recip(n),
        }
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SeriesId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "series",
                name: s.to_string(),
            })
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn inv_factorial(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), factorial(n))
}

fn recip(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(n))
}

fn alternate(k: usize, q: BigRational) -> BigRational {
    if k % 2 == 1 {
        -q
    } else {
        q
    }
}

/// `binom(2n, n) / 4^n`
fn central_binomial_ratio(n: usize) -> BigRational {
    let num = factorial(2 * n);
    let f = factorial(n);
    let den = &f * &f * num_traits::pow(BigInt::from(4), n);
    BigRational::new(num, den)
}

/// Truncation `T_N`: all terms of degree at most `N`.
pub fn taylor(id: SeriesId, n: usize) -> RatPoly {
    Poly::new((0..=n).map(|k| id.coefficient(k)).collect())
}

/// `Q_N = N! * T_N(exp)`, monic with integer coefficients `N!/k!`.
pub fn scale_to_monic_integer(n: usize) -> IntPoly {
    let mut coeffs = vec![BigInt::zero(); n + 1];
    let mut acc = BigInt::one();
    for k in (0..=n).rev() {
        coeffs[k] = acc.clone();
        if k > 0 {
            acc *= k;
        }
    }
    Poly::new(coeffs)
}

/// `P + P' + P'' + ...` up to the order where derivatives vanish.
pub fn derivative_sum_transform(p: &RatPoly) -> RatPoly {
    let mut acc = RatPoly::zero();
    let mut d = p.clone();
    while !d.is_zero() {
        acc = &acc + &d;
        d = d.derivative();
    }
    acc
}
