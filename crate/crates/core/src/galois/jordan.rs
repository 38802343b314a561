use std::collections::BTreeSet;

use super::dedekind::{disc_is_square, sample_cycle_types};
use super::{Certainty, CycleType, Evidence, GaloisIdentification};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::primes::is_prime;

/// Primes `q` with `n/2 < q < n - 2`.
pub fn jordan_window_primes(n: usize) -> Vec<usize> {
    (n / 2 + 1..n.saturating_sub(2))
        .filter(|&q| 2 * q > n && is_prime(q as u64))
        .collect()
}

fn window_part(c: &CycleType, window: &[usize]) -> Option<usize> {
    c.parts().iter().copied().find(|q| window.contains(q))
}

/// Certifies `G >= A_n` from one Frobenius element whose cycle type has a
/// part in the Jordan window, then splits `A_n` / `S_n` by the discriminant.
pub fn sn_an_certificate(f: &IntPoly, prime_bound: u64) -> Result<GaloisIdentification> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n < 8 {
        return Err(Error::DegreeTooSmall { min: 8, got: n });
    }
    let window = jordan_window_primes(n);
    let samples = sample_cycle_types(f, prime_bound, |s| {
        s.iter()
            .any(|x| window_part(&x.cycle_type, &window).is_some())
    });
    let (disc, square) = disc_is_square(f)?;
    let mut evidence = vec![Evidence::Discriminant {
        value: disc,
        square,
    }];
    let hit = samples
        .iter()
        .find_map(|s| window_part(&s.cycle_type, &window).map(|q| (s, q)));
    if let Some((s, q)) = hit {
        evidence.push(Evidence::Jordan {
            prime: s.prime,
            cycle_type: s.cycle_type.clone(),
            q,
        });
        let name = if square {
            format!("A{n}")
        } else {
            format!("S{n}")
        };
        return Ok(GaloisIdentification::new(
            n,
            &name,
            Certainty::Proven,
            evidence,
        ));
    }
    let seen: BTreeSet<CycleType> = samples.iter().map(|x| x.cycle_type.clone()).collect();
    evidence.push(Evidence::Samples {
        count: samples.len(),
        prime_bound,
        uniform: seen.iter().all(|c| c.is_uniform()),
        full_cycle: seen.iter().any(|c| c.parts() == [n]),
        even_only: seen.iter().all(|c| c.is_even()),
    });
    evidence.push(Evidence::OrderLowerBound {
        value: lcm_of_orders(seen.iter()),
    });
    Ok(GaloisIdentification::new(
        n,
        "unknown",
        Certainty::Unknown,
        evidence,
    ))
}

pub(crate) fn lcm_of_orders<'a>(types: impl Iterator<Item = &'a CycleType>) -> u64 {
    use num_integer::Integer;
    types.fold(1u64, |acc, c| acc.lcm(&c.order()))
}
