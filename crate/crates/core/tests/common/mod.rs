#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use truncgal::error::Error;
use truncgal::factor::factor_over_integers;
use truncgal::galois::groups::find;
use truncgal::galois::{classify, dedekind_cycle_type, disc_is_square, revalidate, GaloisConfig};
use truncgal::pade::{numerator_degree_bound, pade_diagonal};
use truncgal::poly::{IntPoly, RatPoly};
use truncgal::primes::primes_between;
use truncgal::series::{taylor, SeriesId};

pub const CASES: u32 = 500;

pub const ALL_SERIES: [SeriesId; 11] = [
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

pub fn int_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|c| IntPoly::from_i64s(&c))
}

pub fn rat_poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec((-50i64..=50, 1i64..=12), 1..=max_deg + 1).prop_map(|c| {
        RatPoly::new(
            c.into_iter()
                .map(|(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        )
    })
}

pub fn monic(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    (2..=max_deg).prop_flat_map(|d| {
        prop::collection::vec(-12i64..=12, d).prop_map(|mut c| {
            c.push(1);
            IntPoly::from_i64s(&c)
        })
    })
}

pub fn series_order() -> impl Strategy<Value = (SeriesId, usize)> {
    (prop::sample::select(ALL_SERIES.to_vec()), 1usize..=30)
}

pub fn galois_config() -> GaloisConfig {
    GaloisConfig {
        prime_bound: 3000,
        all_factors: false,
    }
}

// Kronecker's method: a factor g of degree d is pinned down by its values at
// d + 1 integer points, each of which divides the corresponding value of f.
// Points are chosen to have as few divisors as possible.

fn eval(f: &[BigInt], a: i64) -> BigInt {
    let a = BigInt::from(a);
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * &a + c)
}

fn divisors(v: &BigInt) -> Option<Vec<BigInt>> {
    let m = v.abs().to_u64().filter(|&m| m > 0 && m < 1 << 40)?;
    let mut out = Vec::new();
    let mut k = 1u64;
    while k * k <= m {
        if m % k == 0 {
            out.push(k);
            if k * k != m {
                out.push(m / k);
            }
        }
        k += 1;
    }
    Some(out.into_iter().map(BigInt::from).collect())
}

fn poly_divide(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    if r.len() < g.len() {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - dg];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + dg].div_rem(&g[dg]);
        if !rem.is_zero() {
            return None;
        }
        for j in 0..=dg {
            r[i + j] -= &c * &g[j];
        }
        q[i] = c;
    }
    r.iter().all(|c| c.is_zero()).then_some(q)
}

fn interpolate(xs: &[i64], ys: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = xs.len();
    let mut acc = vec![BigRational::zero(); n];
    for i in 0..n {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * BigRational::from_integer(xs[j].into());
            }
            basis = next;
            denom *= BigRational::from_integer((xs[i] - xs[j]).into());
        }
        let w = BigRational::from_integer(ys[i].clone()) / denom;
        for (k, b) in basis.iter().enumerate() {
            acc[k] += b * &w;
        }
    }
    acc.into_iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn factor_of_degree(f: &[BigInt], d: usize) -> Option<Vec<BigInt>> {
    let mut pts: Vec<(i64, Vec<BigInt>)> = (-24i64..=24)
        .filter_map(|a| divisors(&eval(f, a)).map(|ds| (a, ds)))
        .collect();
    pts.sort_by_key(|(a, ds)| (ds.len(), a.abs()));
    assert!(pts.len() > d, "no usable evaluation points");
    pts.truncate(d + 1);
    let xs: Vec<i64> = pts.iter().map(|p| p.0).collect();
    // g and -g both divide f, so the first value is taken positive
    let choices: Vec<Vec<BigInt>> = pts
        .iter()
        .enumerate()
        .map(|(i, (_, ds))| {
            if i == 0 {
                ds.clone()
            } else {
                ds.iter().flat_map(|x| [x.clone(), -x]).collect()
            }
        })
        .collect();
    let mut idx = vec![0usize; d + 1];
    loop {
        let ys: Vec<BigInt> = idx
            .iter()
            .zip(&choices)
            .map(|(&i, c)| c[i].clone())
            .collect();
        if let Some(g) = interpolate(&xs, &ys) {
            let g = trim(g);
            if g.len() == d + 1 && poly_divide(f, &g).is_some() {
                return Some(g);
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return None;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn linear_factor(f: &[BigInt]) -> Option<Vec<BigInt>> {
    if f[0].is_zero() {
        return Some(vec![BigInt::zero(), BigInt::one()]);
    }
    let divisors = |n: &BigInt| -> Vec<i64> {
        let m = n.abs().to_i64().unwrap();
        (1..=m).filter(|k| m % k == 0).collect()
    };
    for r in divisors(&f[0]) {
        for s in divisors(f.last().unwrap()) {
            for sign in [1, -1] {
                let g = vec![BigInt::from(-sign * r), BigInt::from(s)];
                if poly_divide(f, &g).is_some() {
                    return Some(g);
                }
            }
        }
    }
    None
}

/// Degrees of the irreducible factors of a primitive polynomial, sorted.
pub fn brute_force_degrees(f: Vec<BigInt>) -> Vec<usize> {
    let n = f.len() - 1;
    match n {
        0 => return Vec::new(),
        1 => return vec![1],
        _ => {}
    }
    let split = linear_factor(&f).or_else(|| (2..=n / 2).find_map(|d| factor_of_degree(&f, d)));
    match split {
        None => vec![n],
        Some(g) => {
            let q = poly_divide(&f, &g).unwrap();
            let mut out = brute_force_degrees(g);
            out.extend(brute_force_degrees(q));
            out.sort_unstable();
            out
        }
    }
}

pub fn engine_degrees(f: &IntPoly) -> Vec<usize> {
    let fac = factor_over_integers(f).unwrap();
    let mut d: Vec<usize> = fac
        .factors
        .iter()
        .flat_map(|x| std::iter::repeat(x.coefficients.degree().unwrap()).take(x.multiplicity))
        .collect();
    d.sort_unstable();
    d
}

fn small_factor() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-3i64..=3, 2..=4)
        .prop_map(|c| IntPoly::from_i64s(&c))
        .prop_filter("nonconstant", |f| f.degree().is_some_and(|d| d > 0))
}

pub fn test_poly() -> impl Strategy<Value = IntPoly> {
    let dense = prop::collection::vec(-20i64..=20, 3..=9)
        .prop_map(|c| IntPoly::from_i64s(&c))
        .boxed();
    let product = prop::collection::vec(small_factor(), 2..=3)
        .prop_map(|fs| fs.iter().fold(IntPoly::one(), |a, b| &a * b))
        .boxed();
    prop_oneof![dense, product].prop_filter("degree 2..=8, coefficients within 20", |f| {
        f.degree().is_some_and(|d| (2..=8).contains(&d)) && f.max_norm() <= BigInt::from(20)
    })
}

/// A nonzero vector in the kernel of `rows` (each row has `cols` entries).
fn kernel_vector(mut rows: Vec<Vec<BigRational>>, cols: usize) -> Vec<BigRational> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let m = rows[k][c].clone();
                for j in 0..cols {
                    let v = &rows[r][j] * &m;
                    rows[k][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..cols)
        .find(|c| !pivots.contains(c))
        .expect("more unknowns than equations");
    let mut v = vec![BigRational::zero(); cols];
    v[free] = BigRational::one();
    for (i, &pc) in pivots.iter().enumerate() {
        v[pc] = -rows[i][free].clone();
    }
    v
}

/// Approximant from the Hankel system; `None` when no reduced fraction with
/// nonzero constant denominator term reaches the order.
pub fn hankel_pade(t: &RatPoly, n: usize) -> Option<(RatPoly, RatPoly)> {
    let l = numerator_degree_bound(n);
    let m = n / 2;
    let c = |i: isize| {
        if i < 0 {
            BigRational::zero()
        } else {
            t.coeff(i as usize)
        }
    };
    let rows: Vec<Vec<BigRational>> = (l + 1..n)
        .map(|k| (0..=m).map(|j| c(k as isize - j as isize)).collect())
        .collect();
    let q = RatPoly::new(kernel_vector(rows, m + 1));
    let p = (&q * t).truncate(l + 1);
    let g = RatPoly::gcd(&p, &q);
    let (p, q) = (p.divrem(&g).unwrap().0, q.divrem(&g).unwrap().0);
    let q0 = q.coeff(0);
    if q0.is_zero() || p.is_zero() {
        return None;
    }
    let (p, q) = (p.scale(&q0.recip()), q.scale(&q0.recip()));
    let residual = &(&q * t) - &p;
    residual.truncate(n).is_zero().then_some((p, q))
}

pub fn check_divrem(a: &RatPoly, b: &RatPoly) -> Result<(), TestCaseError> {
    if b.is_zero() {
        return Ok(());
    }
    let (q, r) = a.divrem(b).unwrap();
    prop_assert_eq!(&(&(&q * b) + &r), a);
    if let Some(dr) = r.degree() {
        prop_assert!(dr < b.degree().unwrap());
    }
    Ok(())
}

pub fn check_reconstruction(f: &IntPoly) -> Result<(), TestCaseError> {
    let fac = factor_over_integers(f).unwrap();
    prop_assert_eq!(&fac.reconstruct(), f);
    for x in &fac.factors {
        prop_assert!(x.coefficients.leading().unwrap().is_positive());
        prop_assert!(x.coefficients.content().is_one());
    }
    Ok(())
}

pub fn check_brute_force(f: &IntPoly) -> Result<(), TestCaseError> {
    let oracle = brute_force_degrees(f.primitive_part().coeffs().to_vec());
    prop_assert_eq!(engine_degrees(f), oracle);
    Ok(())
}

pub fn check_pade_hankel(id: SeriesId, n: usize) -> Result<(), TestCaseError> {
    let oracle = hankel_pade(&taylor(id, n - 1), n);
    match pade_diagonal(id, n) {
        Ok(pair) => {
            prop_assert_eq!(Some(pair.rational_form()), oracle);
            prop_assert_eq!(&pade_diagonal(id, n).unwrap(), &pair);
            let dq = pair.denominator.degree().unwrap();
            let dp = pair.numerator.degree().unwrap();
            prop_assert!(dq <= n / 2 && dp + dq < n);
            let g = RatPoly::gcd(&pair.numerator.to_rat(), &pair.denominator.to_rat());
            prop_assert!(g.is_constant());
        }
        Err(Error::DefectivePade { .. }) => prop_assert_eq!(oracle, None),
        Err(e) => prop_assert!(false, "unexpected error {}", e),
    }
    Ok(())
}

pub fn check_revalidation(f: &IntPoly) -> Result<(), TestCaseError> {
    let id = classify(f, &galois_config()).unwrap();
    prop_assert_eq!(revalidate(f, &id), Ok(()));
    Ok(())
}

/// Observed cycle types lie in the claimed group, the order bound divides
/// its order, and a square discriminant only admits even Frobenius types.
pub fn check_dedekind_parity(f: &IntPoly) -> Result<(), TestCaseError> {
    let id = classify(f, &galois_config()).unwrap();
    if id.certainty.is_proven() && (2..=7).contains(&id.degree) {
        let rec = find(id.degree, &id.group_name).expect("claimed group has a record");
        for c in id.observed_types() {
            prop_assert!(rec.contains_type(&c), "{} not in {}", c, rec.name);
        }
        if let Some(b) = id.order_lower_bound() {
            prop_assert_eq!(rec.order % b, 0);
        }
    }
    let g = truncgal::factor::largest_factor(f).unwrap();
    if g.degree().unwrap() < 2 {
        return Ok(());
    }
    let (_, square) = disc_is_square(&g).unwrap();
    for p in primes_between(2, 400) {
        if let Some(c) = dedekind_cycle_type(&g, p) {
            prop_assert_eq!(c.degree(), g.degree().unwrap());
            if square {
                prop_assert!(c.is_even(), "{} odd at {} with square discriminant", c, p);
            }
        }
    }
    Ok(())
}
