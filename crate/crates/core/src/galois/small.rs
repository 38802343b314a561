use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Certainty, Evidence, GaloisIdentification};
use crate::error::{Error, Result};
use crate::factor::rational_roots;
use crate::format::format_rational;
use crate::modp::{cycle_type, roots_exhaustive, FpPoly};
use crate::poly::{is_perfect_square, IntPoly};
use crate::primes::next_prime;
use crate::resultant::int_discriminant;

use super::disc_is_square;

/// Search limit for a prime at which a quintic splits completely.
const SPLIT_PRIME_LIMIT: u64 = 1_000_000;
/// Tschirnhaus transforms tried before giving up on the resolvent.
const MAX_TRANSFORM: u64 = 16;

/// Resolvent cubic `y^3 - c y^2 + (bd - 4e) y - (b^2 e - 4ce + d^2)` of the
/// monic quartic `x^4 + b x^3 + c x^2 + d x + e` attached to `f`.
pub fn quartic_resolvent_cubic(f: &IntPoly) -> Result<IntPoly> {
    if f.degree() != Some(4) {
        return Err(Error::DegreeOutOfRange {
            got: f.degree().unwrap_or(0),
            min: 4,
            max: 4,
        });
    }
    let g = f.monicize();
    let (b, c, d, e) = (g.coeff(3), g.coeff(2), g.coeff(1), g.coeff(0));
    let four = BigInt::from(4);
    Ok(IntPoly::new(vec![
        -(&b * &b * &e - &four * &c * &e + &d * &d),
        &b * &d - &four * &e,
        -c,
        BigInt::one(),
    ]))
}

fn distinct(mut v: Vec<BigRational>) -> Vec<BigRational> {
    v.dedup();
    v
}

fn splits_over_disc_field(delta: &BigInt, disc: &BigInt) -> bool {
    delta.is_zero() || is_perfect_square(delta) || is_perfect_square(&(delta * disc))
}

fn quartic(f: &IntPoly, disc: BigInt, square: bool) -> Result<GaloisIdentification> {
    let cubic = quartic_resolvent_cubic(f)?;
    let roots = distinct(rational_roots(&cubic)?);
    let mut evidence = vec![
        Evidence::Discriminant {
            value: disc.clone(),
            square,
        },
        Evidence::ResolventCubic {
            resolvent: cubic,
            rational_roots: roots.iter().map(format_rational).collect(),
        },
    ];
    let name = match (roots.len(), square) {
        (0, true) => "A4",
        (0, false) => "S4",
        (3, _) => "V4",
        (1, _) => {
            let g = f.monicize();
            let (b, c, e) = (g.coeff(3), g.coeff(2), g.coeff(0));
            let r = roots[0].to_integer();
            let first = &r * &r - BigInt::from(4) * &e;
            let second = &b * &b - BigInt::from(4) * (&c - &r);
            let cyclic =
                splits_over_disc_field(&first, &disc) && splits_over_disc_field(&second, &disc);
            evidence.push(Evidence::QuarticSplitTest {
                root: r.to_string(),
                first: first.to_string(),
                second: second.to_string(),
                cyclic,
            });
            if cyclic {
                "C4"
            } else {
                "D4"
            }
        }
        _ => unreachable!("resolvent cubic of a squarefree quartic is squarefree"),
    };
    Ok(GaloisIdentification::new(
        4,
        name,
        Certainty::Proven,
        evidence,
    ))
}

/// Data of the degree-6 resolvent of a quintic, computed from p-adic
/// approximations of the roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuinticResolvent {
    pub prime: u64,
    pub precision: u32,
    pub transform: u64,
    pub resolvent: IntPoly,
    /// Rational root of the resolvent, if any, with the class that produced it.
    pub rational_root: Option<BigInt>,
    /// `(phi - phi')^2` for the class of the rational root.
    pub cyclic_value: Option<BigInt>,
}

fn sym(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// The 12 undirected 5-cycles on {0..4}, paired with their complementary
/// pentagram into 6 classes. Each class is represented by one ordering.
fn pentagon_classes() -> Vec<[usize; 5]> {
    let edges = |c: &[usize; 5], step: usize| -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = (0..5)
            .map(|i| {
                let (a, b) = (c[i], c[(i + step) % 5]);
                (a.min(b), a.max(b))
            })
            .collect();
        e.sort_unstable();
        e
    };
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for perm in (1..5).permutations(4) {
        if perm[0] > perm[3] {
            continue;
        }
        let c = [0, perm[0], perm[1], perm[2], perm[3]];
        let key = edges(&c, 1).min(edges(&c, 2));
        if !seen.contains(&key) {
            seen.push(key);
            out.push(c);
        }
    }
    out
}

fn delta(c: &[usize; 5], y: &[BigInt], m: &BigInt) -> BigInt {
    let mut s = BigInt::zero();
    for i in 0..5 {
        s += &y[c[i]] * &y[c[(i + 1) % 5]];
        s -= &y[c[i]] * &y[c[(i + 2) % 5]];
    }
    s.mod_floor(m)
}

fn phi(c: &[usize; 5], y: &[BigInt], m: &BigInt) -> BigInt {
    let mut s = BigInt::zero();
    for i in 0..5 {
        s += &y[c[i]] * &y[c[i]] * &y[c[(i + 1) % 5]];
    }
    s.mod_floor(m)
}

fn find_split_prime(g: &IntPoly) -> Result<u64> {
    let mut p = 7;
    while p < SPLIT_PRIME_LIMIT {
        if cycle_type(g, p).is_some_and(|c| c.iter().all(|&d| d == 1)) {
            return Ok(p);
        }
        p = next_prime(p + 1);
    }
    Err(Error::NoSuitablePrime(SPLIT_PRIME_LIMIT))
}

/// Roots of a monic `g` modulo `p^k`, lifted by Newton iteration from its
/// simple roots modulo `p`.
fn lift_roots(g: &IntPoly, p: u64, k: u32) -> Vec<BigInt> {
    let dg = g.derivative();
    let pb = BigInt::from(p);
    roots_exhaustive(&FpPoly::from_int(g, p))
        .into_iter()
        .map(|r| {
            let mut x = BigInt::from(r);
            let mut prec = 1u32;
            while prec < k {
                prec = (2 * prec).min(k);
                let m = num_traits::pow(pb.clone(), prec as usize);
                let inv = dg.eval(&x).mod_floor(&m).modinv(&m).expect("simple root");
                x = (&x - g.eval(&x) * inv).mod_floor(&m);
            }
            x
        })
        .collect()
}

fn precision_for(g: &IntPoly, p: u64, t: u64) -> u32 {
    let b = g.max_norm() + 1;
    let y = &b * &b + BigInt::from(t) * &b;
    let y2 = &y * &y;
    let t4: BigInt = BigInt::from(100) * &y2 * &y2;
    let coeff = BigInt::from(64) * num_traits::pow(t4.clone(), 6);
    let d = BigInt::from(100) * &y2 * &y2 * &y2;
    let bound = BigInt::from(2) * coeff.max(d).max(t4);
    let pb = BigInt::from(p);
    let mut k = 1;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    k
}

/// Resolvent at a fixed prime, precision and transform `y = x^2 + t x`
/// (`y = x` when `t = 0`) of the monic quintic attached to `f`.
pub fn quintic_resolvent_at(f: &IntPoly, t: u64, p: u64, k: u32) -> Result<QuinticResolvent> {
    if f.degree() != Some(5) {
        return Err(Error::DegreeOutOfRange {
            got: f.degree().unwrap_or(0),
            min: 5,
            max: 5,
        });
    }
    let g = f.monicize();
    let xs = lift_roots(&g, p, k);
    if xs.len() != 5 {
        return Err(Error::InvalidArgument(format!("{p} is not a split prime")));
    }
    let m = num_traits::pow(BigInt::from(p), k as usize);
    let tb = BigInt::from(t);
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|x| {
            if t == 0 {
                x.clone()
            } else {
                (x * x + &tb * x).mod_floor(&m)
            }
        })
        .collect();
    let classes = pentagon_classes();
    let thetas: Vec<BigInt> = classes
        .iter()
        .map(|c| {
            let d = delta(c, &ys, &m);
            (&d * &d).mod_floor(&m)
        })
        .collect();
    let mut r = vec![BigInt::one()];
    for th in &thetas {
        let mut next = vec![BigInt::zero(); r.len() + 1];
        for (i, a) in r.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * th;
        }
        r = next.into_iter().map(|a| a.mod_floor(&m)).collect();
    }
    let resolvent = IntPoly::new(r.iter().map(|a| sym(a, &m)).collect());
    let mut out = QuinticResolvent {
        prime: p,
        precision: k,
        transform: t,
        resolvent,
        rational_root: None,
        cyclic_value: None,
    };
    if int_discriminant(&out.resolvent)?.is_zero() {
        return Ok(out);
    }
    for (c, th) in classes.iter().zip(&thetas) {
        let cand = sym(th, &m);
        if out.resolvent.eval(&cand).is_zero() {
            let mut rev = *c;
            rev.reverse();
            let diff = phi(c, &ys, &m) - phi(&rev, &ys, &m);
            out.cyclic_value = Some(sym(&(&diff * &diff), &m));
            out.rational_root = Some(cand);
            break;
        }
    }
    Ok(out)
}

/// Resolvent with transform `t` at the smallest split prime.
pub fn quintic_resolvent(f: &IntPoly, t: u64) -> Result<QuinticResolvent> {
    let g = f.monicize();
    let p = find_split_prime(&g)?;
    quintic_resolvent_at(f, t, p, precision_for(&g, p, t))
}

fn quintic(f: &IntPoly, disc: BigInt, square: bool) -> Result<GaloisIdentification> {
    let g = f.monicize();
    let p = find_split_prime(&g)?;
    for t in 0..=MAX_TRANSFORM {
        let res = quintic_resolvent_at(f, t, p, precision_for(&g, p, t))?;
        if int_discriminant(&res.resolvent)?.is_zero() {
            continue;
        }
        if res.cyclic_value.as_ref().is_some_and(|d| d.is_zero()) {
            continue;
        }
        let mut evidence = vec![
            Evidence::Discriminant {
                value: disc.clone(),
                square,
            },
            Evidence::SexticResolvent {
                prime: res.prime,
                precision: res.precision,
                transform: t,
                resolvent: res.resolvent.clone(),
                rational_root: res.rational_root.as_ref().map(|r| r.to_string()),
            },
        ];
        let name = match (&res.rational_root, square) {
            (None, true) => "A5",
            (None, false) => "S5",
            (Some(_), false) => "F20",
            (Some(_), true) => {
                let d = res.cyclic_value.clone().expect("set with root");
                let sq = is_perfect_square(&d);
                evidence.push(Evidence::QuinticCyclicTest {
                    value: d.to_string(),
                    square: sq,
                });
                if sq {
                    "C5"
                } else {
                    "D5"
                }
            }
        };
        return Ok(GaloisIdentification::new(
            5,
            name,
            Certainty::Proven,
            evidence,
        ));
    }
    Err(Error::InvalidArgument(
        "no Tschirnhaus transform gave a squarefree resolvent".into(),
    ))
}

/// Exact identification for irreducible polynomials of degree 1 to 5.
pub fn exact_small_degree(f: &IntPoly) -> Result<GaloisIdentification> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 || n > 5 {
        return Err(Error::DegreeOutOfRange {
            got: n,
            min: 1,
            max: 5,
        });
    }
    if n == 1 {
        return Ok(GaloisIdentification::new(
            1,
            "C1",
            Certainty::Proven,
            Vec::new(),
        ));
    }
    if !rational_roots(f)?.is_empty() {
        return Err(Error::Reducible);
    }
    let (disc, square) = disc_is_square(f)?;
    if disc.is_zero() {
        return Err(Error::NotSquarefree);
    }
    let disc_ev = || Evidence::Discriminant {
        value: disc.clone(),
        square,
    };
    match n {
        2 => Ok(GaloisIdentification::new(
            2,
            "C2",
            Certainty::Proven,
            vec![disc_ev()],
        )),
        3 => {
            let name = if square { "C3" } else { "S3" };
            Ok(GaloisIdentification::new(
                3,
                name,
                Certainty::Proven,
                vec![disc_ev()],
            ))
        }
        4 => {
            if !crate::factor::is_irreducible(f)? {
                return Err(Error::Reducible);
            }
            quartic(f, disc, square)
        }
        _ => {
            if !crate::factor::is_irreducible(f)? {
                return Err(Error::Reducible);
            }
            quintic(f, disc, square)
        }
    }
}
