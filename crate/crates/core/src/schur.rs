//! Certificates and identities for the scaled truncated exponential
//! `Q_N = N! * sum_{k<=N} x^k / k!`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::rational_roots;
use crate::padic::{int_valuation, legendre_valuation};
use crate::poly::IntPoly;
use crate::primes::is_prime;
use crate::resultant::int_discriminant;
use crate::series::{factorial, scale_to_monic_integer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Eisenstein,
    GeneralizedEisenstein,
    NoRationalRoot,
    FullFactorization,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityCertificate {
    pub kind: CertificateKind,
    pub prime: Option<u64>,
    pub polynomial: IntPoly,
    pub details: Vec<String>,
}

fn eisenstein_trace(f: &IntPoly, p: u64) -> Option<Vec<String>> {
    let n = f.degree()?;
    if n == 0 {
        return None;
    }
    let pb = BigInt::from(p);
    let lc = f.leading()?;
    if lc.is_multiple_of(&pb) {
        return None;
    }
    if !f.coeffs()[..n].iter().all(|c| c.is_multiple_of(&pb)) {
        return None;
    }
    if f.coeff(0).is_multiple_of(&(&pb * &pb)) {
        return None;
    }
    Some(vec![
        format!("{p} does not divide the leading coefficient {lc}"),
        format!("{p} divides the coefficients of x^0 .. x^{}", n - 1),
        format!("{p}^2 does not divide the constant term {}", f.coeff(0)),
    ])
}

/// Eisenstein's criterion at `p`; `None` when a condition fails.
pub fn eisenstein_certificate(f: &IntPoly, p: u64) -> Result<Option<IrreducibilityCertificate>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if f.degree().is_none_or(|d| d == 0) {
        return Err(Error::DegreeTooSmall {
            min: 1,
            got: f.degree().unwrap_or(0),
        });
    }
    Ok(
        eisenstein_trace(f, p).map(|details| IrreducibilityCertificate {
            kind: CertificateKind::Eisenstein,
            prime: Some(p),
            polynomial: f.clone(),
            details,
        }),
    )
}

fn generalized_trace(n: usize) -> Option<Vec<String>> {
    if n < 4 {
        return None;
    }
    let p = (n - 1) as u64;
    if !is_prime(p) {
        return None;
    }
    let q = scale_to_monic_integer(n);
    let pb = BigInt::from(p);
    let pi = p as usize;
    let low = q.coeffs()[..pi].iter().all(|c| c.is_multiple_of(&pb));
    let high = q.coeffs()[pi..].iter().all(|c| !c.is_multiple_of(&pb));
    let vp = legendre_valuation(p, n as u64).ok()?;
    let window = 2 * p > n as u64 && p < n as u64;
    let no_root = rational_roots(&q).ok()?.is_empty();
    if !(low && high && vp == 1 && window && no_root) {
        return None;
    }
    Some(vec![
        format!("p = {p} lies in ({}/2, {n})", n),
        format!("v_p({n}!) = 1"),
        format!("p divides the coefficients of x^0 .. x^{}", p - 1),
        format!("p does not divide the coefficients of x^{p} .. x^{n}"),
        "no rational root, so any factorization has both degrees >= 2".into(),
        format!(
            "the larger factor has degree <= {} < p, so its coefficients cannot all be divisible by p",
            n - 2
        ),
    ])
}

/// Irreducibility of `Q_N` via the prime `p = N - 1`; `None` when `N - 1`
/// is composite or a condition fails.
pub fn generalized_eisenstein_scan(n: usize) -> Result<Option<IrreducibilityCertificate>> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("need N >= 4, got {n}")));
    }
    Ok(
        generalized_trace(n).map(|details| IrreducibilityCertificate {
            kind: CertificateKind::GeneralizedEisenstein,
            prime: Some((n - 1) as u64),
            polynomial: scale_to_monic_integer(n),
            details,
        }),
    )
}

/// Re-checks a certificate from scratch.
pub fn validate_certificate(c: &IrreducibilityCertificate) -> bool {
    match c.kind {
        CertificateKind::Eisenstein => c
            .prime
            .is_some_and(|p| is_prime(p) && eisenstein_trace(&c.polynomial, p).is_some()),
        CertificateKind::GeneralizedEisenstein => {
            let Some(n) = c.polynomial.degree() else {
                return false;
            };
            c.polynomial == scale_to_monic_integer(n)
                && c.prime == Some((n as u64).wrapping_sub(1))
                && generalized_trace(n).is_some()
        }
        CertificateKind::NoRationalRoot => {
            c.polynomial.degree().is_some_and(|d| (2..=3).contains(&d))
                && rational_roots(&c.polynomial).is_ok_and(|r| r.is_empty())
        }
        CertificateKind::FullFactorization => {
            crate::factor::is_irreducible(&c.polynomial).unwrap_or(false)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscComparison {
    pub n: usize,
    #[serde(with = "crate::format::bigint_string")]
    pub magnitude: BigInt,
    /// Sign from the printed exponent `N(N-1)/2 + N`.
    pub paper_sign: i8,
    /// Sign of the discriminant computed through the resultant.
    pub oracle_sign: i8,
    pub magnitude_matches: bool,
    /// Degree one: the discriminant is the empty product.
    pub degenerate: bool,
}

impl DiscComparison {
    pub fn agree(&self) -> bool {
        self.paper_sign == self.oracle_sign
    }
}

fn sign_of_exponent(e: usize) -> i8 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn closed_form_disc(n: usize) -> Result<DiscComparison> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let magnitude = num_traits::pow(factorial(n), n);
    let d = int_discriminant(&scale_to_monic_integer(n))?;
    Ok(DiscComparison {
        n,
        magnitude_matches: d.abs() == magnitude,
        magnitude,
        paper_sign: sign_of_exponent(n * (n - 1) / 2 + n),
        oracle_sign: if d.is_negative() { -1 } else { 1 },
        degenerate: n == 1,
    })
}

/// `Q_N' = Q_N - x^N`.
pub fn derivative_identity_check(n: usize) -> bool {
    let q = scale_to_monic_integer(n);
    q.derivative() == &q - &IntPoly::monomial(BigInt::one(), n)
}

/// `A_N` when `4 | N`, else `S_N`.
pub fn theorem_expectation(n: usize) -> String {
    if n % 4 == 0 {
        format!("A{n}")
    } else {
        format!("S{n}")
    }
}

/// Every certificate this module can produce for `Q_N`.
pub fn certificates(n: usize) -> Result<Vec<IrreducibilityCertificate>> {
    let q = scale_to_monic_integer(n);
    let mut out = Vec::new();
    if is_prime(n as u64) {
        out.extend(eisenstein_certificate(&q, n as u64)?);
    }
    if n >= 4 {
        out.extend(generalized_eisenstein_scan(n)?);
    }
    if (2..=3).contains(&n) && rational_roots(&q)?.is_empty() {
        out.push(IrreducibilityCertificate {
            kind: CertificateKind::NoRationalRoot,
            prime: None,
            polynomial: q.clone(),
            details: vec!["degree at most 3 without rational roots".into()],
        });
    }
    if crate::factor::is_irreducible(&q)? {
        out.push(IrreducibilityCertificate {
            kind: CertificateKind::FullFactorization,
            prime: None,
            polynomial: q,
            details: vec!["factorization over Z has a single factor".into()],
        });
    }
    Ok(out)
}

/// `v_p` of the coefficient of `x^i` in `Q_N`, i.e. `v_p(N!/i!)`.
pub fn coefficient_valuation(n: usize, i: usize, p: u64) -> Result<i64> {
    if i > n {
        return Err(Error::InvalidArgument(format!("index {i} exceeds N = {n}")));
    }
    Ok(int_valuation(&(factorial(n) / factorial(i)), p))
}
