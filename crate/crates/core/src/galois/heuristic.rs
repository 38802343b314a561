use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::dedekind::{dedekind_cycle_type, sample_cycle_types};
use super::jordan::lcm_of_orders;
use super::{
    classify, Certainty, CycleType, Evidence, GaloisConfig, GaloisIdentification,
    MIN_HEURISTIC_SAMPLES,
};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::primes::pow_mod;

fn samples_evidence(types: &[CycleType], n: usize, prime_bound: u64) -> Evidence {
    Evidence::Samples {
        count: types.len(),
        prime_bound,
        uniform: types.iter().all(|c| c.is_uniform()),
        full_cycle: types.iter().any(|c| c.parts() == [n]),
        even_only: types.iter().all(|c| c.is_even()),
    }
}

/// Labels `f` as cyclic when every sampled cycle type is uniform and a full
/// `n`-cycle occurs among at least [`MIN_HEURISTIC_SAMPLES`] good primes.
/// Never returns a proven verdict.
pub fn cyclic_heuristic(f: &IntPoly, prime_bound: u64) -> Result<GaloisIdentification> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::DegreeTooSmall { min: 1, got: 0 });
    }
    let samples = sample_cycle_types(f, prime_bound, |s| {
        s.iter().any(|x| !x.cycle_type.is_uniform())
            || (s.len() >= MIN_HEURISTIC_SAMPLES && s.iter().any(|x| x.cycle_type.parts() == [n]))
    });
    let types: Vec<CycleType> = samples.iter().map(|s| s.cycle_type.clone()).collect();
    let mut evidence = vec![samples_evidence(&types, n, prime_bound)];
    evidence.push(Evidence::OrderLowerBound {
        value: lcm_of_orders(types.iter()),
    });
    let witness = samples
        .iter()
        .find(|s| !s.cycle_type.is_uniform())
        .or_else(|| samples.iter().find(|s| s.cycle_type.parts() == [n]));
    if let Some(w) = witness {
        evidence.push(Evidence::Frobenius {
            prime: w.prime,
            cycle_type: w.cycle_type.clone(),
        });
    }
    let cyclic = samples.len() >= MIN_HEURISTIC_SAMPLES
        && types.iter().all(|c| c.is_uniform())
        && types.iter().any(|c| c.parts() == [n]);
    if cyclic {
        Ok(GaloisIdentification::new(
            n,
            &format!("C{n}"),
            Certainty::Heuristic {
                samples: samples.len(),
                prime_bound,
            },
            evidence,
        ))
    } else {
        let mut id = GaloisIdentification::new(n, "unknown", Certainty::Unknown, evidence);
        id.t_notation = None;
        Ok(id)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathReport {
    pub k: usize,
    pub x_factor: bool,
    pub inner: IntPoly,
    pub inner_identification: GaloisIdentification,
    pub identification: GaloisIdentification,
}

/// Splits `f` as `g(x^k)` or `x * g(x^k)` for the largest `k` in {4, 2}.
pub fn block_split(f: &IntPoly) -> Option<(usize, bool, IntPoly)> {
    let n = f.degree()?;
    let x_factor = n >= 1 && f.coeff(0).is_zero();
    let h = if x_factor {
        IntPoly::new(f.coeffs()[1..].to_vec())
    } else {
        f.clone()
    };
    if h.degree()? == 0 || h.coeff(0).is_zero() {
        return None;
    }
    [4, 2]
        .into_iter()
        .find_map(|k| h.deflate(k).map(|g| (k, x_factor, g)))
        .filter(|(_, _, g)| g.degree().is_some_and(|d| d >= 1))
}

/// Cycle lengths of `j -> a j + c` on `Z_k`.
fn affine_cycles(a: u64, c: u64, k: u64) -> Vec<usize> {
    let mut seen = vec![false; k as usize];
    let mut out = Vec::new();
    for s in 0..k {
        if seen[s as usize] {
            continue;
        }
        let mut len = 0;
        let mut j = s;
        while !seen[j as usize] {
            seen[j as usize] = true;
            j = (a * j + c) % k;
            len += 1;
        }
        out.push(len);
    }
    out
}

fn fit(options: &[Vec<Vec<usize>>], i: usize, target: &mut BTreeMap<usize, usize>) -> bool {
    if i == options.len() {
        return target.values().all(|&v| v == 0);
    }
    for opt in &options[i] {
        let mut ok = true;
        let mut taken = Vec::new();
        for &len in opt {
            match target.get_mut(&len) {
                Some(v) if *v > 0 => {
                    *v -= 1;
                    taken.push(len);
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && fit(options, i + 1, target) {
            return true;
        }
        for len in taken {
            *target.get_mut(&len).expect("present") += 1;
        }
    }
    false
}

/// Whether the Frobenius cycle type of `f = [x *] g(x^k)` at `p` is
/// explained by the block action (cycle type of `g` at `p`) together with
/// an affine action `j -> (p mod k)^l j + c` on each fiber.
pub fn fiber_model_consistent(
    f_type: &CycleType,
    block_type: &CycleType,
    p: u64,
    k: usize,
    x_factor: bool,
) -> bool {
    let mut target: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in f_type.parts() {
        *target.entry(c).or_default() += 1;
    }
    if x_factor {
        match target.get_mut(&1) {
            Some(v) if *v > 0 => *v -= 1,
            _ => return false,
        }
    }
    let kk = k as u64;
    let options: Vec<Vec<Vec<usize>>> = block_type
        .parts()
        .iter()
        .map(|&l| {
            let a = pow_mod(p % kk, l as u64, kk);
            let set: BTreeSet<Vec<usize>> = (0..kk)
                .map(|c| {
                    let mut v: Vec<usize> =
                        affine_cycles(a, c, kk).into_iter().map(|x| x * l).collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            set.into_iter().collect()
        })
        .collect();
    fit(&options, 0, &mut target)
}

fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |a, i| a * i)
}

/// Detects block structure `f = g(x^k)` or `f = x g(x^k)`, classifies `g`,
/// and tests sampled Frobenius elements against the block model. The
/// embedding is exact; the verdict naming the ambient group is heuristic.
pub fn wreath_structure(f: &IntPoly, config: &GaloisConfig) -> Result<Option<WreathReport>> {
    let Some((k, x_factor, g)) = block_split(f) else {
        return Ok(None);
    };
    let n = f.degree().expect("nonzero");
    let m = g.degree().expect("nonconstant");
    let inner_id = classify(&g, config)?;
    let inner_name = match inner_id.certainty {
        Certainty::Proven | Certainty::Heuristic { .. } => inner_id.group_name.clone(),
        _ => "G(g)".to_string(),
    };
    let name = if k == 2 {
        format!("subgroup of C2 wr {inner_name}")
    } else {
        format!("subgroup of C4 wr ({inner_name} x C2)")
    };
    let samples = sample_cycle_types(f, config.prime_bound, |_| false);
    let mut checked = 0;
    let mut consistent = true;
    for s in &samples {
        if let Some(bt) = dedekind_cycle_type(&g, s.prime) {
            checked += 1;
            if !fiber_model_consistent(&s.cycle_type, &bt, s.prime, k, x_factor) {
                consistent = false;
            }
        }
    }
    let types: Vec<CycleType> = samples.iter().map(|s| s.cycle_type.clone()).collect();
    let lower = lcm_of_orders(types.iter());
    let ambient = if k == 2 {
        BigInt::from(2).pow(m as u32) * factorial(m)
    } else {
        BigInt::from(2) * BigInt::from(4).pow(m as u32) * factorial(m)
    };
    let divides = (ambient % BigInt::from(lower)).is_zero();
    let evidence = vec![
        Evidence::Block {
            k,
            x_factor,
            inner: g.clone(),
            inner_group: inner_id.group_name.clone(),
            inner_certainty: inner_id.certainty.label(),
        },
        samples_evidence(&types, n, config.prime_bound),
        Evidence::OrderLowerBound { value: lower },
        Evidence::FiberModel {
            consistent: consistent && divides,
            checked,
        },
    ];
    let certainty = if consistent && divides && !samples.is_empty() {
        Certainty::Heuristic {
            samples: samples.len(),
            prime_bound: config.prime_bound,
        }
    } else {
        Certainty::Unknown
    };
    let mut id = GaloisIdentification::new(n, &name, certainty, evidence);
    id.t_notation = None;
    Ok(Some(WreathReport {
        k,
        x_factor,
        inner: g,
        inner_identification: inner_id,
        identification: id,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pade::pade_diagonal;
    use crate::series::SeriesId;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn block_detection() {
        let (k, x, g) = block_split(&ip(&[7, 0, 1, 0, 1])).unwrap();
        assert_eq!((k, x, g), (2, false, ip(&[7, 1, 1])));
        assert!(block_split(&ip(&[1, 1, 0, 1])).is_none());
        let (k, x, g) = block_split(&ip(&[0, 3, 0, 0, 0, 1])).unwrap();
        assert_eq!((k, x, g), (4, true, ip(&[3, 1])));
    }

    #[test]
    fn affine_maps() {
        assert_eq!(affine_cycles(1, 0, 4), vec![1, 1, 1, 1]);
        assert_eq!(affine_cycles(1, 1, 4), vec![4]);
        assert_eq!(affine_cycles(3, 0, 4), vec![1, 2, 1]);
    }

    #[test]
    fn fiber_model_on_even_quartic() {
        let f = ip(&[7, 0, 1, 0, 1]);
        let g = ip(&[7, 1, 1]);
        for s in sample_cycle_types(&f, 2000, |_| false) {
            let bt = dedekind_cycle_type(&g, s.prime).unwrap();
            assert!(fiber_model_consistent(
                &s.cycle_type,
                &bt,
                s.prime,
                2,
                false
            ));
        }
        let bad = CycleType::new(vec![3, 1]);
        assert!(!fiber_model_consistent(
            &bad,
            &CycleType::new(vec![1, 1]),
            5,
            2,
            false
        ));
    }

    #[test]
    fn cyclic_examples() {
        let p = pade_diagonal(SeriesId::InvSqrtMinus, 11).unwrap();
        let id = cyclic_heuristic(&p.numerator, 10_000).unwrap();
        assert_eq!(id.group_name, "C5");
        assert!(matches!(id.certainty, Certainty::Heuristic { samples, .. } if samples >= 200));
        let q5 = crate::series::scale_to_monic_integer(5);
        assert_eq!(
            cyclic_heuristic(&q5, 10_000).unwrap().certainty,
            Certainty::Unknown
        );
    }

    #[test]
    fn hyperoctahedral_denominator() {
        let p = pade_diagonal(SeriesId::Atanh2, 16).unwrap();
        let q = crate::factor::largest_factor(&p.denominator).unwrap();
        let r = wreath_structure(&q, &GaloisConfig::default())
            .unwrap()
            .unwrap();
        assert_eq!(r.k, 2);
        assert!(r
            .identification
            .group_name
            .starts_with("subgroup of C2 wr S"));
        assert!(matches!(
            r.identification.certainty,
            Certainty::Heuristic { .. }
        ));
    }
}
