//! Dense univariate polynomials with exact coefficients.
//!
//! Coefficients are stored in ascending exponent order with no trailing
//! zeros, so the zero polynomial is the empty vector and has no degree.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number; always stored in lowest terms with a positive
/// denominator.
pub type BigRat = BigRational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

pub type RatPoly = Poly<BigRational>;
pub type IntPoly = Poly<BigInt>;

impl<C: Num + Clone> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![C::one()],
        }
    }

    pub fn x() -> Self {
        Poly {
            coeffs: vec![C::zero(), C::one()],
        }
    }

    pub fn constant(c: C) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &C) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Reduce modulo `x^n`.
    pub fn truncate(&self, n: usize) -> Self {
        Poly::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// Order of vanishing at zero; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `p(x^k)`
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k >= 1);
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![C::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Poly { coeffs }
    }

    /// Returns `g` with `self = g(x^k)` when every exponent is a multiple of `k`.
    pub fn deflate(&self, k: usize) -> Option<Self> {
        assert!(k >= 1);
        if self
            .coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| i % k != 0 && !c.is_zero())
        {
            return None;
        }
        Some(Poly::new(self.coeffs.iter().step_by(k).cloned().collect()))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Polynomial composition `self(inner)`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * inner) + &Poly::constant(c.clone())
        })
    }
}

impl<C: Num + Clone + FromPrimitive> Poly<C> {
    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * C::from_usize(i).expect("index fits"))
                .collect(),
        )
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(
            coeffs
                .iter()
                .map(|&c| C::from_i64(c).expect("i64 fits"))
                .collect(),
        )
    }
}

impl<C: fmt::Debug> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<'a, C: Num + Clone> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a, C: Num + Clone> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a, C: Num + Clone> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<C: Num + Clone + Neg<Output = C>> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<C: Num + Clone> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<C: Num + Clone + Neg<Output = C>> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

/// Decomposition `input = sign * content * primitive`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveParts {
    pub sign: i8,
    pub content: BigInt,
    pub primitive: IntPoly,
}

impl IntPoly {
    /// Positive gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Splits off the content and the sign of the leading coefficient, so the
    /// primitive part always has a positive leading coefficient.
    pub fn content_primitive(&self) -> Result<PrimitiveParts> {
        let lc = self.leading().ok_or(Error::ZeroPolynomial)?;
        let sign: i8 = if lc.is_negative() { -1 } else { 1 };
        let content = self.content();
        let div = if sign < 0 {
            -content.clone()
        } else {
            content.clone()
        };
        let primitive = Poly::new(self.coeffs.iter().map(|c| c / &div).collect());
        Ok(PrimitiveParts {
            sign,
            content,
            primitive,
        })
    }

    /// Primitive part with positive leading coefficient; zero maps to zero.
    pub fn primitive_part(&self) -> IntPoly {
        match self.content_primitive() {
            Ok(parts) => parts.primitive,
            Err(_) => IntPoly::zero(),
        }
    }

    pub fn to_rat(&self) -> RatPoly {
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Quotient `self / d` when `d` divides `self` in `Z[x]`.
    pub fn exact_div(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let sd = self.degree()?;
        if sd < dd {
            return None;
        }
        let dlc = d.leading()?;
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qi, r) = top.div_rem(dlc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &qi * dc;
            }
            q[i] = qi;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Poly::new(q))
        } else {
            None
        }
    }

    pub fn divides(&self, other: &IntPoly) -> bool {
        other.exact_div(self).is_some()
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) * a = q*d + r`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> Result<IntPoly> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let Some(ad) = self.degree() else {
            return Ok(IntPoly::zero());
        };
        if ad < dd {
            return Ok(self.clone());
        }
        let dlc = d.leading().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        let mut steps = ad - dd + 1;
        for i in (0..=ad - dd).rev() {
            let top = rem[i + dd].clone();
            for c in rem.iter_mut() {
                *c *= &dlc;
            }
            if !top.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &top * dc;
                }
            }
            rem.truncate(i + dd);
            steps -= 1;
        }
        debug_assert_eq!(steps, 0);
        Ok(Poly::new(rem))
    }

    /// Divide every coefficient exactly by `c`.
    pub fn div_scalar_exact(&self, c: &BigInt) -> IntPoly {
        Poly::new(self.coeffs.iter().map(|a| a / c).collect())
    }

    /// Monic integer polynomial with the same splitting field:
    /// `lc^(n-1) * f(x / lc)`.
    pub fn monicize(&self) -> IntPoly {
        let Some(n) = self.degree() else {
            return IntPoly::zero();
        };
        let lc = self.leading().expect("nonzero").clone();
        let mut coeffs = vec![BigInt::one(); n + 1];
        let mut pow = BigInt::one();
        for i in (0..n).rev() {
            coeffs[i] = self.coeffs[i].clone() * &pow;
            pow *= &lc;
        }
        Poly::new(coeffs)
    }

    /// Euclidean norm rounded up.
    pub fn norm2_ceil(&self) -> BigInt {
        let sum: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        let r = sum.sqrt();
        if &r * &r == sum {
            r
        } else {
            r + 1
        }
    }

    pub fn max_norm(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Ordering used to break ties between factors of equal degree: compare
    /// coefficient sequences from the leading term down.
    pub fn cmp_lex_desc(&self, other: &IntPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl RatPoly {
    /// Euclidean division over the rationals.
    pub fn divrem(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let Some(ad) = self.degree() else {
            return Ok((RatPoly::zero(), RatPoly::zero()));
        };
        if ad < dd {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let inv = d.leading().expect("nonzero").recip();
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); ad - dd + 1];
        for i in (0..=ad - dd).rev() {
            let qi = &rem[i + dd] * &inv;
            if !qi.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &qi * dc;
                }
            }
            q[i] = qi;
        }
        rem.truncate(dd);
        Ok((Poly::new(q), Poly::new(rem)))
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let (_, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = r1;
            r1 = r.monic();
        }
        r0.monic()
    }

    /// Least common multiple of the denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }

    /// Writes `self = scale * primitive` where `primitive` is a primitive
    /// integer polynomial with positive leading coefficient. The scale
    /// carries the sign.
    pub fn to_primitive(&self) -> Result<(BigRational, IntPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let l = self.denominator_lcm();
        let ints: IntPoly = Poly::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
                .collect(),
        );
        let parts = ints.content_primitive()?;
        let mut scale = BigRational::new(parts.content, l);
        if parts.sign < 0 {
            scale = -scale;
        }
        Ok((scale, parts.primitive))
    }

    /// Integer polynomial proportional to `self` (primitive, positive
    /// leading coefficient).
    pub fn primitive_int(&self) -> IntPoly {
        self.to_primitive()
            .map(|(_, p)| p)
            .unwrap_or_else(|_| IntPoly::zero())
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.sign() == Sign::Minus {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// True iff `q` is the square of a rational number.
pub fn is_rational_square(q: &BigRational) -> bool {
    is_perfect_square(q.numer()) && is_perfect_square(q.denom())
}
