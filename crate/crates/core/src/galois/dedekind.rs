use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CycleType;
use crate::error::Result;
use crate::modp;
use crate::poly::{is_perfect_square, IntPoly};
use crate::primes::primes_between;
use crate::resultant::int_discriminant;

const CHUNK: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub prime: u64,
    pub cycle_type: CycleType,
}

/// Factorization pattern of `f mod p`, or `None` at bad primes.
pub fn dedekind_cycle_type(f: &IntPoly, p: u64) -> Option<CycleType> {
    modp::cycle_type(f, p).map(CycleType::new)
}

/// Discriminant of `f` and whether it is a perfect square.
pub fn disc_is_square(f: &IntPoly) -> Result<(BigInt, bool)> {
    let d = int_discriminant(f)?;
    let sq = !d.is_negative() && is_perfect_square(&d);
    Ok((d, sq))
}

/// Cycle types at good primes up to `prime_bound`, in increasing prime
/// order. Chunks are evaluated in parallel; `stop` is consulted after each
/// chunk on the prefix collected so far.
pub fn sample_cycle_types<F>(f: &IntPoly, prime_bound: u64, stop: F) -> Vec<Sample>
where
    F: Fn(&[Sample]) -> bool,
{
    let primes = primes_between(2, prime_bound);
    let mut out = Vec::new();
    for chunk in primes.chunks(CHUNK) {
        let got: Vec<Option<Sample>> = chunk
            .par_iter()
            .map(|&p| {
                dedekind_cycle_type(f, p).map(|cycle_type| Sample {
                    prime: p,
                    cycle_type,
                })
            })
            .collect();
        out.extend(got.into_iter().flatten());
        if stop(&out) {
            break;
        }
    }
    out
}
