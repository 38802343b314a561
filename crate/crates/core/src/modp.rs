//! Polynomials over the prime field F_p, with p below 2^32, and their
//! complete factorization (squarefree, distinct-degree, equal-degree).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::primes::{inv_mod, is_prime};

/// Seed of the equal-degree splitting stream; reported in factorization output.
pub const EDF_SEED: u64 = 0x7472_756e_6367_616c;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for a in c.iter_mut() {
            *a %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_int(f: &IntPoly, p: u64) -> Self {
        let m = BigInt::from(p);
        FpPoly::new(
            p,
            f.coeffs()
                .iter()
                .map(|a| a.mod_floor(&m).to_u64().expect("reduced"))
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn leading(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, k: u64) -> FpPoly {
        FpPoly::new(
            self.p,
            self.c.iter().map(|&a| a * (k % self.p) % self.p).collect(),
        )
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        FpPoly::new(
            self.p,
            (0..n).map(|i| (self.get(i) + o.get(i)) % self.p).collect(),
        )
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        FpPoly::new(
            self.p,
            (0..n)
                .map(|i| (self.get(i) + self.p - o.get(i)) % self.p)
                .collect(),
        )
    }

    fn get(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        FpPoly::new(p, out)
    }

    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let p = self.p;
        if self.c.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let inv = inv_mod(d.leading(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let t = r[i + dd] * inv % p;
            if t != 0 {
                for (j, &dc) in d.c.iter().enumerate() {
                    r[i + j] = (r[i + j] + p - t * dc % p) % p;
                }
            }
            q[i] = t;
        }
        r.truncate(dd);
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        FpPoly::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| (i as u64 % self.p) * a % self.p)
                .collect(),
        )
    }

    pub fn mul_mod(&self, o: &FpPoly, m: &FpPoly) -> FpPoly {
        self.mul(o).rem(m)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn pow_mod_u64(&self, e: u64, m: &FpPoly) -> FpPoly {
        self.pow_mod(&BigUint::from(e), m)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c
            .iter()
            .rev()
            .fold(0, |acc, &a| (acc * x + a) % self.p)
    }

    /// True when `gcd(f, f') = 1`; constants count as squarefree.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).is_one()
            }
        }
    }

    /// `g` with `g^p = self`, valid when the derivative vanishes.
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        FpPoly::new(self.p, self.c.iter().step_by(p).copied().collect())
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g, e)` with
    /// `self = prod g^e`, each `g` squarefree and monic.
    pub fn squarefree_decomposition(&self) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        self.sqf_rec(1, &mut out);
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.c.cmp(&b.0.c)));
        out
    }

    fn sqf_rec(&self, mult: usize, out: &mut Vec<(FpPoly, usize)>) {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return;
        }
        let d = f.derivative();
        if d.is_zero() {
            f.pth_root().sqf_rec(mult * self.p as usize, out);
            return;
        }
        let mut c = f.gcd(&d);
        let mut w = f.divrem(&c).0;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.divrem(&y).0;
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, i * mult));
            }
            w = y;
            c = c.divrem(&w).0;
            i += 1;
        }
        if c.degree().unwrap_or(0) > 0 {
            c.pth_root().sqf_rec(mult * self.p as usize, out);
        }
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// `(d, g)` where `g` is the product of all irreducible factors of degree `d`.
    pub fn distinct_degree(&self) -> Vec<(usize, FpPoly)> {
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = FpPoly::x(p);
        let mut h = x.rem(&f);
        let mut d = 0;
        while let Some(n) = f.degree() {
            if n < 2 * (d + 1) {
                if n > 0 {
                    out.push((n, f.clone()));
                }
                break;
            }
            d += 1;
            h = h.pow_mod_u64(p, &f);
            let g = f.gcd(&h.sub(&x));
            if !g.is_one() {
                f = f.divrem(&g).0;
                h = h.rem(&f);
                out.push((d, g));
            }
        }
        out
    }

    /// Degrees of the irreducible factors of a monic squarefree polynomial.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut degs = Vec::new();
        for (d, g) in self.distinct_degree() {
            let k = g.degree().unwrap() / d;
            degs.extend(std::iter::repeat(d).take(k));
        }
        degs.sort_unstable();
        degs
    }

    /// Splits a monic squarefree product of irreducibles of degree `d`.
    pub fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let n = self.degree().unwrap();
        if n == d {
            return vec![self.monic()];
        }
        let p = self.p;
        loop {
            let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if p == 2 {
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul_mod(&t, self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                let e = (num_traits::pow(BigUint::from(p), d) - 1u32) / 2u32;
                a.pow_mod(&e, self).sub(&FpPoly::one(p))
            };
            let g = self.gcd(&b);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let h = self.divrem(&g).0;
                let mut out = g.equal_degree(d, rng);
                out.extend(h.equal_degree(d, rng));
                return out;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModPFactor {
    pub coefficients: Vec<u64>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModPFactorization {
    pub prime: u64,
    pub leading: u64,
    pub factors: Vec<ModPFactor>,
    pub seed: u64,
}

impl ModPFactorization {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|f| std::iter::repeat(f.coefficients.len() - 1).take(f.multiplicity))
            .collect();
        d.sort_unstable();
        d
    }
}

fn check_prime(f: &IntPoly, p: u64) -> Result<FpPoly> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p >= 1 << 32 {
        return Err(Error::InvalidArgument(format!("prime {p} exceeds 2^32")));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fp = FpPoly::from_int(f, p);
    if fp.degree() != f.degree() {
        return Err(Error::LeadingCoefficientDivisible(p));
    }
    Ok(fp)
}

/// Monic irreducible factors of a squarefree polynomial over F_p, sorted by
/// degree then coefficients.
pub fn factor_squarefree(f: &FpPoly, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let mut out = Vec::new();
    for (d, g) in f.monic().distinct_degree() {
        out.extend(g.equal_degree(d, rng));
    }
    out.sort_by(|a, b| a.c.len().cmp(&b.c.len()).then_with(|| a.c.cmp(&b.c)));
    out
}

pub fn factor_mod_p(f: &IntPoly, p: u64) -> Result<ModPFactorization> {
    let fp = check_prime(f, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED ^ p);
    let mut factors = Vec::new();
    for (g, e) in fp.monic().squarefree_decomposition() {
        for h in factor_squarefree(&g, &mut rng) {
            factors.push(ModPFactor {
                coefficients: h.c,
                multiplicity: e,
            });
        }
    }
    factors.sort_by(|a, b| {
        a.coefficients
            .len()
            .cmp(&b.coefficients.len())
            .then_with(|| a.coefficients.cmp(&b.coefficients))
            .then_with(|| a.multiplicity.cmp(&b.multiplicity))
    });
    Ok(ModPFactorization {
        prime: p,
        leading: fp.leading(),
        factors,
        seed: EDF_SEED ^ p,
    })
}

/// Degree pattern of `f mod p`, or `None` when `p` divides the leading
/// coefficient or `f` is not squarefree modulo `p`.
pub fn cycle_type(f: &IntPoly, p: u64) -> Option<Vec<usize>> {
    let fp = FpPoly::from_int(f, p);
    if fp.degree() != f.degree() || fp.degree().is_none() {
        return None;
    }
    if !fp.is_squarefree() {
        return None;
    }
    let mut d = fp.monic().factor_degrees();
    d.sort_unstable_by(|a, b| b.cmp(a));
    Some(d)
}

/// Roots of `f` in F_p by exhaustive evaluation (small primes only).
pub fn roots_exhaustive(f: &FpPoly) -> Vec<u64> {
    (0..f.p).filter(|&x| f.eval(x) == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    /// Irreducibility over F_p by trying every monic divisor of degree up to n/2.
    fn brute_irreducible(f: &FpPoly) -> bool {
        let n = f.degree().unwrap();
        let p = f.prime();
        for d in 1..=n / 2 {
            let total = p.pow(d as u32);
            for k in 0..total {
                let mut c = Vec::with_capacity(d + 1);
                let mut t = k;
                for _ in 0..d {
                    c.push(t % p);
                    t /= p;
                }
                c.push(1);
                if f.rem(&FpPoly::new(p, c)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn sum_of_squares_splitting() {
        let f = factor_mod_p(&ip(&[1, 0, 1]), 5).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.factors[0].coefficients, vec![2, 1]);
        assert_eq!(f.factors[1].coefficients, vec![3, 1]);
        let f = factor_mod_p(&ip(&[1, 0, 1]), 3).unwrap();
        assert_eq!(f.degrees(), vec![2]);
        assert_eq!(cycle_type(&ip(&[1, 0, 1]), 2), None);
        assert_eq!(cycle_type(&ip(&[1, 0, 1]), 5), Some(vec![1, 1]));
        assert_eq!(cycle_type(&ip(&[1, 0, 1]), 3), Some(vec![2]));
    }

    #[test]
    fn errors() {
        assert_eq!(factor_mod_p(&ip(&[1, 1]), 4), Err(Error::NotPrime(4)));
        assert_eq!(
            factor_mod_p(&ip(&[1, 7]), 7),
            Err(Error::LeadingCoefficientDivisible(7))
        );
    }

    #[test]
    fn q5_mod_7_matches_brute_force() {
        let q5 = ip(&[120, 120, 60, 20, 5, 1]);
        let fac = factor_mod_p(&q5, 7).unwrap();
        let mut prod = FpPoly::one(7);
        for f in &fac.factors {
            let g = FpPoly::new(7, f.coefficients.clone());
            assert!(brute_irreducible(&g));
            for _ in 0..f.multiplicity {
                prod = prod.mul(&g);
            }
        }
        assert_eq!(prod, FpPoly::from_int(&q5, 7).monic());
    }

    #[test]
    fn repeated_and_pth_power_factors() {
        // (x+1)^2 (x^3 + 2) over F_3 where x^3+2 = (x+2)^3
        let f = &(&ip(&[1, 1]) * &ip(&[1, 1])) * &ip(&[2, 0, 0, 1]);
        let fac = factor_mod_p(&f, 3).unwrap();
        let got: Vec<(Vec<u64>, usize)> = fac
            .factors
            .iter()
            .map(|f| (f.coefficients.clone(), f.multiplicity))
            .collect();
        assert_eq!(got, vec![(vec![1, 1], 2), (vec![2, 1], 3)]);
    }

    #[test]
    fn characteristic_two() {
        // x^4 + x + 1 irreducible over F_2; x^4 + 1 = (x+1)^4
        assert_eq!(
            factor_mod_p(&ip(&[1, 1, 0, 0, 1]), 2).unwrap().degrees(),
            vec![4]
        );
        let fac = factor_mod_p(&ip(&[1, 0, 0, 0, 1]), 2).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].multiplicity, 4);
        // x^6 + x^5 + x^3 + x^2 + x + 1 over F_2
        let f = ip(&[1, 1, 1, 1, 0, 1, 1]);
        let fac = factor_mod_p(&f, 2).unwrap();
        let mut prod = FpPoly::one(2);
        for g in &fac.factors {
            let g = FpPoly::new(2, g.coefficients.clone());
            assert!(brute_irreducible(&g));
            prod = prod.mul(&g);
        }
        assert_eq!(prod, FpPoly::from_int(&f, 2));
    }

    #[test]
    fn equal_degree_splits_products_of_quadratics() {
        // product of all monic irreducible quadratics over F_5 is (x^25 - x)/(x^5 - x)
        let p = 5;
        let mut c = vec![0u64; 26];
        c[25] = 1;
        c[1] = p - 1;
        let big = FpPoly::new(p, c);
        let mut c = vec![0u64; 6];
        c[5] = 1;
        c[1] = p - 1;
        let g = big.divrem(&FpPoly::new(p, c)).0;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let parts = g.equal_degree(2, &mut rng);
        assert_eq!(parts.len(), 10);
        assert!(parts
            .iter()
            .all(|q| q.degree() == Some(2) && brute_irreducible(q)));
    }
}
