//! Resultants by the subresultant pseudo-remainder sequence, and
//! discriminants derived from them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{IntPoly, RatPoly};

fn pow(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow(b.clone(), e)
}

/// Resultant of two integer polynomials, with the convention
/// `Res(a, b) = lc(a)^deg(b) * prod b(alpha)` over the roots of `a`.
pub fn int_resultant(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    if da == 0 {
        return Ok(pow(a.leading().unwrap(), db));
    }
    if db == 0 {
        return Ok(pow(b.leading().unwrap(), da));
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign = BigInt::one();
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
    }
    let ca = a.content();
    let cb = b.content();
    let t = pow(&ca, b.degree().unwrap()) * pow(&cb, a.degree().unwrap());
    a = a.div_scalar_exact(&ca);
    b = b.div_scalar_exact(&cb);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (dega, degb) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = dega - degb;
        if dega % 2 == 1 && degb % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b)?;
        a = b;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        let div = &g * pow(&h, delta);
        b = r.div_scalar_exact(&div);
        g = a.leading().unwrap().clone();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            pow(&g, delta).div_floor(&pow(&h, delta - 1))
        };
        if b.degree() == Some(0) {
            let dega = a.degree().unwrap();
            let lb = b.leading().unwrap();
            let hh = pow(lb, dega).div_floor(&pow(&h, dega - 1));
            return Ok(sign * t * hh);
        }
    }
}

/// Resultant over the rationals, reduced to the integer case by clearing
/// denominators.
pub fn resultant(a: &RatPoly, b: &RatPoly) -> Result<BigRational> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    let la = a.denominator_lcm();
    let lb = b.denominator_lcm();
    let ai = to_int(a, &la);
    let bi = to_int(b, &lb);
    let r = int_resultant(&ai, &bi)?;
    // Res(la*a, lb*b) = la^db * lb^da * Res(a, b)
    let scale = pow(&la, db) * pow(&lb, da);
    Ok(BigRational::new(r, scale))
}

fn to_int(a: &RatPoly, l: &BigInt) -> IntPoly {
    IntPoly::new(
        a.coeffs()
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect(),
    )
}

/// Discriminant with the root-difference normalization
/// `lc^(2n-2) * prod_{i<j} (x_i - x_j)^2`; degree one gives 1.
pub fn discriminant(a: &RatPoly) -> Result<BigRational> {
    let n = a.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::DegreeTooSmall { min: 1, got: 0 });
    }
    if n == 1 {
        return Ok(BigRational::one());
    }
    let r = resultant(a, &a.derivative())?;
    let lc = a.leading().unwrap();
    let d = r / lc;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

pub fn int_discriminant(a: &IntPoly) -> Result<BigInt> {
    let n = a.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::DegreeTooSmall { min: 1, got: 0 });
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let r = int_resultant(a, &a.derivative())?;
    let lc = a.leading().unwrap();
    let (d, rem) = r.div_rem(lc);
    debug_assert!(rem.is_zero());
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

/// Sign of a nonzero integer as `+1`/`-1`, zero maps to `0`.
pub fn sign_of(n: &BigInt) -> i8 {
    if n.is_zero() {
        0
    } else if n.is_negative() {
        -1
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    /// Sylvester matrix determinant by rational Gaussian elimination.
    pub(crate) fn sylvester_oracle(a: &IntPoly, b: &IntPoly) -> BigRational {
        let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
        let size = m + n;
        let mut mat = vec![vec![BigRational::zero(); size]; size];
        for i in 0..n {
            for (j, c) in a.coeffs().iter().rev().enumerate() {
                mat[i][i + j] = BigRational::from_integer(c.clone());
            }
        }
        for i in 0..m {
            for (j, c) in b.coeffs().iter().rev().enumerate() {
                mat[n + i][i + j] = BigRational::from_integer(c.clone());
            }
        }
        let mut det = BigRational::one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            let p = mat[col][col].clone();
            det *= &p;
            for r in col + 1..size {
                let f = &mat[r][col] / &p;
                if f.is_zero() {
                    continue;
                }
                for c in col..size {
                    let v = &mat[col][c] * &f;
                    mat[r][c] -= v;
                }
            }
        }
        det
    }

    #[test]
    fn linear_resultants() {
        // Res(x - 1, x + 1) = b(1) = 2
        assert_eq!(
            int_resultant(&ip(&[-1, 1]), &ip(&[1, 1])).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            int_resultant(&ip(&[1, 1]), &ip(&[-1, 1])).unwrap(),
            BigInt::from(-2)
        );
    }

    #[test]
    fn shared_root_gives_zero() {
        let a = ip(&[2, 2, 1]);
        assert!(int_resultant(&a, &a).unwrap().is_zero());
        let b = &ip(&[-1, 1]) * &ip(&[3, 0, 1]);
        let c = &ip(&[-1, 1]) * &ip(&[5, 1]);
        assert!(int_resultant(&b, &c).unwrap().is_zero());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(
            discriminant(&RatPoly::from_i64s(&[2, 2, 1])).unwrap(),
            rat(-4, 1)
        );
        assert_eq!(
            discriminant(&RatPoly::from_i64s(&[-1, 0, 1])).unwrap(),
            rat(4, 1)
        );
        // cubic formula 18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2 on x^3+3x^2+6x+6
        let (a, b, c, d) = (1i64, 3i64, 6i64, 6i64);
        let cubic = 18 * a * b * c * d - 4 * b.pow(3) * d + b * b * c * c
            - 4 * a * c.pow(3)
            - 27 * a * a * d * d;
        assert_eq!(cubic, -216);
        assert_eq!(
            discriminant(&RatPoly::from_i64s(&[6, 6, 3, 1])).unwrap(),
            rat(cubic, 1)
        );
        assert_eq!(
            discriminant(&RatPoly::from_i64s(&[5])),
            Err(Error::DegreeTooSmall { min: 1, got: 0 })
        );
        assert_eq!(
            discriminant(&RatPoly::from_i64s(&[5, 3])).unwrap(),
            rat(1, 1)
        );
    }

    #[test]
    fn rational_resultant_scaling() {
        let a = RatPoly::new(vec![rat(-1, 2), rat(1, 1)]);
        let b = RatPoly::new(vec![rat(1, 3), rat(1, 1)]);
        // b(1/2) = 5/6
        assert_eq!(resultant(&a, &b).unwrap(), rat(5, 6));
    }

    #[test]
    fn matches_sylvester_on_fixed_cases() {
        let cases = [
            (ip(&[3, -2, 0, 5, 1]), ip(&[-7, 0, 2, 3])),
            (ip(&[1, 0, 0, 0, 0, 0, 2]), ip(&[4, 4, 1])),
            (ip(&[12, 0, 0, 8, 0, 1]), ip(&[0, 8, 0, 0, 5])),
            (ip(&[-5, 3, 9]), ip(&[2, -11, 0, 0, 0, 0, 0, 7])),
        ];
        for (a, b) in cases {
            assert_eq!(
                BigRational::from_integer(int_resultant(&a, &b).unwrap()),
                sylvester_oracle(&a, &b),
                "{a:?} {b:?}"
            );
        }
    }
}
