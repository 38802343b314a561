//! Factorization over the integers.
//!
//! Pipeline: content and sign, powers of `x`, squarefree decomposition,
//! rational roots by p-adic root lifting, then Zassenhaus: factor modulo a
//! good prime, Hensel-lift to beyond twice the coefficient bound and
//! recombine subsets of the lifted factors by trial division.

use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modp::{factor_squarefree, roots_exhaustive, FpPoly, EDF_SEED};
use crate::poly::{IntPoly, Poly, RatPoly};
use crate::primes::{is_prime, next_prime};

/// Recombination gives up above this many modular factors.
pub const MAX_MODULAR_FACTORS: usize = 24;
/// Smallest prime tried for the modular image.
pub const FIRST_PRIME: u64 = 13;
/// Number of good primes compared when choosing the modular image.
pub const PRIME_CANDIDATES: usize = 5;

static FACTORIZATIONS: AtomicU64 = AtomicU64::new(0);

/// Number of calls to [`factor_over_integers`] in this process.
pub fn factorization_count() -> u64 {
    FACTORIZATIONS.load(AtomicOrdering::Relaxed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub coefficients: IntPoly,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    #[serde(with = "crate::format::bigint_string")]
    pub unit: BigInt,
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn reconstruct(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.unit.clone());
        for f in &self.factors {
            acc = &acc * &f.coefficients.pow(f.multiplicity as u32);
        }
        acc
    }

    /// Irreducible factor of maximal degree; ties go to the coefficient
    /// sequence that is lexicographically largest from the leading term down.
    pub fn largest(&self) -> Option<&IntPoly> {
        self.factors
            .iter()
            .map(|f| &f.coefficients)
            .max_by(|a, b| a.cmp_lex_desc(b))
    }
}

fn sym_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce(f: &IntPoly, m: &BigInt) -> IntPoly {
    Poly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn fp_to_int(f: &FpPoly) -> IntPoly {
    Poly::new(f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic_mod(a: &IntPoly, d: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    let dd = d.degree().expect("nonzero divisor");
    debug_assert!(d.leading().unwrap().mod_floor(m).is_one());
    let mut r: Vec<BigInt> = reduce(a, m).into_coeffs();
    if r.len() <= dd {
        return (IntPoly::zero(), Poly::new(r));
    }
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for i in (0..q.len()).rev() {
        let t = r[i + dd].mod_floor(m);
        if !t.is_zero() {
            for (j, dc) in d.coeffs().iter().enumerate() {
                r[i + j] = (&r[i + j] - &t * dc).mod_floor(m);
            }
        }
        q[i] = t;
    }
    r.truncate(dd);
    (Poly::new(q), Poly::new(r))
}

fn mul_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    reduce(&(a * b), m)
}

/// `(s, t)` with `s*a + t*b = 1` over F_p for coprime `a`, `b`.
fn ext_gcd_fp(a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
    let p = a.prime();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
    let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let s2 = s0.sub(&q.mul(&s1));
        let t2 = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    debug_assert_eq!(r0.degree(), Some(0));
    let inv = crate::primes::inv_mod(r0.leading(), p);
    (s0.scale(inv), t0.scale(inv))
}

/// Lifts `f = g*h (mod p)` with `h` monic to a factorization modulo
/// `p^k`, using quadratic Hensel steps.
fn hensel_two(f: &IntPoly, g: &FpPoly, h: &FpPoly, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (s, t) = ext_gcd_fp(g, h);
    let target = num_traits::pow(BigInt::from(p), k as usize);
    let (mut g, mut h) = (fp_to_int(g), fp_to_int(h));
    let (mut s, mut t) = (fp_to_int(&s), fp_to_int(&t));
    let mut m = BigInt::from(p);
    while m < target {
        let m2 = (&m * &m).min(target.clone());
        let e = reduce(&(f - &(&g * &h)), &m2);
        let (q, r) = divrem_monic_mod(&mul_mod(&s, &e, &m2), &h, &m2);
        let g2 = reduce(
            &(&(&g + &mul_mod(&t, &e, &m2)) + &mul_mod(&q, &g, &m2)),
            &m2,
        );
        let h2 = reduce(&(&h + &r), &m2);
        let b = reduce(
            &(&(&mul_mod(&s, &g2, &m2) + &mul_mod(&t, &h2, &m2)) - &IntPoly::one()),
            &m2,
        );
        let (c, d) = divrem_monic_mod(&mul_mod(&s, &b, &m2), &h2, &m2);
        s = reduce(&(&s - &d), &m2);
        t = reduce(
            &(&(&t - &mul_mod(&t, &b, &m2)) - &mul_mod(&c, &g2, &m2)),
            &m2,
        );
        g = g2;
        h = h2;
        m = m2;
    }
    (g, h)
}

/// Lifts monic modular factors `us` of `f` (with `f = lc * prod us mod p`)
/// to monic factors modulo `p^k`.
pub fn hensel_lift(f: &IntPoly, us: &[FpPoly], p: u64, k: u32) -> Vec<IntPoly> {
    let pk = num_traits::pow(BigInt::from(p), k as usize);
    let lc = f.leading().expect("nonzero").clone();
    let mut out = Vec::with_capacity(us.len());
    let mut current = reduce(f, &pk);
    for i in 0..us.len() {
        if i + 1 == us.len() {
            let inv = lc.modinv(&pk).expect("lc coprime to p");
            out.push(reduce(&current.scale(&inv), &pk));
            break;
        }
        let rest = us[i + 1..].iter().fold(
            FpPoly::new(p, vec![lc.mod_floor(&BigInt::from(p)).to_u64().unwrap()]),
            |a, u| a.mul(u),
        );
        let (g, h) = hensel_two(&current, &rest, &us[i], p, k);
        out.push(h);
        current = g;
    }
    out
}

/// Yun decomposition of a primitive polynomial over the rationals:
/// pairs `(g, e)` with `f = unit * prod g^e`, each `g` primitive,
/// squarefree and with positive leading coefficient.
pub fn squarefree_decomposition(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    let Some(n) = f.degree() else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let a = f.to_rat();
    let da = a.derivative();
    let g = RatPoly::gcd(&a, &da);
    let mut b = a.divrem(&g).expect("nonzero").0;
    let c = da.divrem(&g).expect("nonzero").0;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let ai = RatPoly::gcd(&b, &d);
        b = b.divrem(&ai).expect("nonzero").0;
        let ci = d.divrem(&ai).expect("nonzero").0;
        d = &ci - &b.derivative();
        if ai.degree().unwrap_or(0) > 0 {
            out.push((ai.primitive_int(), i));
        }
        i += 1;
    }
    out
}

/// Rational roots of a squarefree primitive polynomial with nonzero
/// constant term, found by lifting roots modulo a small prime.
fn rational_roots_squarefree(f: &IntPoly) -> Vec<BigRational> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        let c = f.coeffs();
        return vec![BigRational::new(-c[0].clone(), c[1].clone())];
    }
    let lc = f.leading().unwrap().clone();
    let a0 = f.coeff(0);
    let mut p = 3;
    let fp = loop {
        let fp = FpPoly::from_int(f, p);
        if fp.degree() == f.degree() && fp.is_squarefree() {
            break fp;
        }
        p = next_prime(p + 1);
    };
    let roots = roots_exhaustive(&fp);
    if roots.is_empty() {
        return Vec::new();
    }
    // lc * (a/b) is an integer of absolute value at most |lc * a0|
    let bound = (&lc * &a0).abs() * 2;
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    while pk <= bound {
        pk = &pk * &pk;
    }
    let df = f.derivative();
    let mut out = Vec::new();
    for r in roots {
        let mut x = BigInt::from(r);
        let mut m = pb.clone();
        while m < pk {
            m = (&m * &m).min(pk.clone());
            let fx = f.eval(&x).mod_floor(&m);
            let dfx = df.eval(&x).mod_floor(&m);
            let inv = dfx.modinv(&m).expect("simple root");
            x = (&x - fx * inv).mod_floor(&m);
        }
        let cand = BigRational::new(sym_mod(&(&lc * &x), &pk), lc.clone());
        if f.to_rat().eval(&cand).is_zero() {
            out.push(cand);
        }
    }
    out.sort();
    out
}

/// All rational roots, repeated according to multiplicity, ascending.
pub fn rational_roots(f: &IntPoly) -> Result<Vec<BigRational>> {
    let parts = f.content_primitive()?;
    let g = parts.primitive;
    let v = g.valuation().unwrap_or(0);
    let mut out = vec![BigRational::zero(); v];
    let g = Poly::new(g.coeffs()[v..].to_vec());
    for (h, e) in squarefree_decomposition(&g) {
        for r in rational_roots_squarefree(&h) {
            out.extend(std::iter::repeat(r).take(e));
        }
    }
    out.sort();
    Ok(out)
}

/// Sorted degree multiset of `f mod p` when `p` is good for `f`.
fn modular_degrees(f: &IntPoly, p: u64) -> Option<(FpPoly, Vec<usize>)> {
    let fp = FpPoly::from_int(f, p);
    if fp.degree() != f.degree() || !fp.is_squarefree() {
        return None;
    }
    let degs = fp.monic().factor_degrees();
    Some((fp, degs))
}

fn subset_sums(degs: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degs {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// Zassenhaus factorization of a squarefree primitive polynomial with
/// positive leading coefficient and nonzero constant term.
fn zassenhaus(f: &IntPoly) -> Result<Vec<IntPoly>> {
    let n = f.degree().expect("nonzero");
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }
    let mut goods = Vec::new();
    let mut p = FIRST_PRIME;
    let mut tried = 0u64;
    while goods.len() < PRIME_CANDIDATES {
        if let Some((fp, degs)) = modular_degrees(f, p) {
            if degs.len() == 1 {
                return Ok(vec![f.clone()]);
            }
            goods.push((p, fp, degs));
        }
        p = next_prime(p + 1);
        tried += 1;
        if tried > 10_000 {
            return Err(Error::NoSuitablePrime(p));
        }
    }
    let mut allowed = vec![true; n + 1];
    for (_, _, degs) in &goods {
        for (a, r) in allowed.iter_mut().zip(subset_sums(degs, n)) {
            *a &= r;
        }
    }
    if (1..n).all(|d| !allowed[d]) {
        return Ok(vec![f.clone()]);
    }
    let (p, fp, _) = goods
        .into_iter()
        .min_by(|a, b| a.2.len().cmp(&b.2.len()).then(a.0.cmp(&b.0)))
        .expect("nonempty");
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED ^ p);
    let us = factor_squarefree(&fp.monic(), &mut rng);
    if us.len() > MAX_MODULAR_FACTORS {
        return Err(Error::TooManyModularFactors {
            count: us.len(),
            limit: MAX_MODULAR_FACTORS,
        });
    }
    let lc = f.leading().unwrap().clone();
    // |lc| * 2^n * ||f||_2 bounds lc times any coefficient of a factor
    let bound = lc.abs() * num_traits::pow(BigInt::from(2), n) * f.norm2_ceil();
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= &bound * 2 {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &us, p, k);
    Ok(recombine(f, lifted, &pk, &allowed))
}

fn recombine(f: &IntPoly, mut lifted: Vec<IntPoly>, pk: &BigInt, allowed: &[bool]) -> Vec<IntPoly> {
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut hit = None;
        for subset in (0..lifted.len()).combinations(s) {
            let deg: usize = subset.iter().map(|&i| lifted[i].degree().unwrap()).sum();
            if !allowed[deg] {
                continue;
            }
            let b = rest.leading().unwrap().clone();
            // constant term screen before forming the full product
            let c0 = subset.iter().fold(b.clone(), |acc, &i| {
                (acc * lifted[i].coeff(0)).mod_floor(pk)
            });
            let c0 = sym_mod(&c0, pk);
            if c0.is_zero() || !(&b * rest.coeff(0)).is_multiple_of(&c0) {
                continue;
            }
            let prod = subset.iter().fold(IntPoly::constant(b.clone()), |acc, &i| {
                mul_mod(&acc, &lifted[i], pk)
            });
            let cand = Poly::new(
                prod.coeffs()
                    .iter()
                    .map(|c| sym_mod(c, pk))
                    .collect::<Vec<_>>(),
            )
            .primitive_part();
            if let Some(q) = rest.exact_div(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                rest = q.primitive_part();
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, u)| u)
                    .collect();
            }
            None => s += 1,
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        found.push(rest);
    }
    found
}

fn sort_factors(v: &mut [Factor]) {
    v.sort_by(|a, b| {
        a.coefficients
            .cmp_lex_desc(&b.coefficients)
            .then(a.multiplicity.cmp(&b.multiplicity))
    });
}

/// Complete factorization into irreducibles over the integers.
pub fn factor_over_integers(f: &IntPoly) -> Result<Factorization> {
    FACTORIZATIONS.fetch_add(1, AtomicOrdering::Relaxed);
    let parts = f.content_primitive()?;
    let unit = if parts.sign < 0 {
        -parts.content.clone()
    } else {
        parts.content.clone()
    };
    let g = parts.primitive;
    let mut factors = Vec::new();
    let v = g.valuation().unwrap_or(0);
    if v > 0 {
        factors.push(Factor {
            coefficients: IntPoly::x(),
            multiplicity: v,
        });
    }
    let g = Poly::new(g.coeffs()[v..].to_vec());
    for (h, e) in squarefree_decomposition(&g) {
        let mut rest = h;
        for r in rational_roots_squarefree(&rest) {
            let lin = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
            factors.push(Factor {
                coefficients: lin.clone(),
                multiplicity: e,
            });
            rest = rest.exact_div(&lin).expect("root divides").primitive_part();
        }
        if rest.degree().unwrap_or(0) > 0 {
            for q in zassenhaus(&rest)? {
                factors.push(Factor {
                    coefficients: q,
                    multiplicity: e,
                });
            }
        }
    }
    sort_factors(&mut factors);
    Ok(Factorization { unit, factors })
}

pub fn largest_factor(f: &IntPoly) -> Result<IntPoly> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::DegreeTooSmall { min: 1, got: 0 });
    }
    let fac = factor_over_integers(f)?;
    Ok(fac.largest().expect("nonconstant").clone())
}

/// True iff the primitive part of `f` is irreducible over the rationals.
pub fn is_irreducible(f: &IntPoly) -> Result<bool> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::DegreeTooSmall { min: 1, got: 0 });
    }
    if d == 1 {
        return Ok(true);
    }
    let g = f.primitive_part();
    let mut p = 2;
    for _ in 0..20 {
        if let Some((_, degs)) = modular_degrees(&g, p) {
            if degs.len() == 1 {
                return Ok(true);
            }
        }
        p = next_prime(p + 1);
    }
    let fac = factor_over_integers(&g)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].multiplicity == 1)
}

pub fn check_prime_arg(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}
