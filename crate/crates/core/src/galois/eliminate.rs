use std::collections::BTreeSet;

use super::dedekind::{disc_is_square, sample_cycle_types, Sample};
use super::groups::{records_of_degree, TransitiveGroupRecord};
use super::{Certainty, CycleType, Evidence, GaloisIdentification};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

fn surviving<'a>(
    recs: &[&'a TransitiveGroupRecord],
    seen: &BTreeSet<CycleType>,
    square: bool,
) -> Vec<&'a TransitiveGroupRecord> {
    recs.iter()
        .copied()
        .filter(|r| r.even == square && seen.iter().all(|c| r.contains_type(c)))
        .collect()
}

/// Greedy choice of samples that together rule out every record except
/// `keep`.
fn witnesses(
    recs: &[&TransitiveGroupRecord],
    keep: &TransitiveGroupRecord,
    square: bool,
    samples: &[Sample],
) -> Vec<Sample> {
    let mut alive: Vec<&TransitiveGroupRecord> = recs
        .iter()
        .copied()
        .filter(|r| r.even == square && r.t_number != keep.t_number)
        .collect();
    let mut out: Vec<Sample> = Vec::new();
    while !alive.is_empty() {
        let best = samples
            .iter()
            .max_by_key(|s| {
                (
                    alive
                        .iter()
                        .filter(|r| !r.contains_type(&s.cycle_type))
                        .count(),
                    std::cmp::Reverse(s.prime),
                )
            })
            .expect("samples eliminate all other records");
        alive.retain(|r| r.contains_type(&best.cycle_type));
        out.push(best.clone());
    }
    out.sort_by_key(|s| s.prime);
    out
}

/// Elimination against the embedded transitive groups of degree 6 or 7.
/// Also accepts degrees 2 to 5, which the tests use as a cross-check of
/// the exact solver.
pub fn eliminate_degree_le7(f: &IntPoly, prime_bound: u64) -> Result<GaloisIdentification> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if !(2..=7).contains(&n) {
        return Err(Error::DegreeOutOfRange {
            got: n,
            min: 2,
            max: 7,
        });
    }
    if !crate::factor::is_irreducible(f)? {
        return Err(Error::Reducible);
    }
    let (disc, square) = disc_is_square(f)?;
    let recs = records_of_degree(n);
    let samples = sample_cycle_types(f, prime_bound, |s| {
        let seen: BTreeSet<CycleType> = s.iter().map(|x| x.cycle_type.clone()).collect();
        surviving(&recs, &seen, square).len() <= 1
    });
    let seen: BTreeSet<CycleType> = samples.iter().map(|x| x.cycle_type.clone()).collect();
    let alive = surviving(&recs, &seen, square);
    let mut evidence = vec![Evidence::Discriminant {
        value: disc,
        square,
    }];
    match alive.as_slice() {
        [] => Err(Error::InvalidArgument(
            "observed cycle types fit no transitive group".into(),
        )),
        [only] => {
            for s in witnesses(&recs, only, square, &samples) {
                evidence.push(Evidence::Frobenius {
                    prime: s.prime,
                    cycle_type: s.cycle_type,
                });
            }
            Ok(GaloisIdentification::new(
                n,
                &only.name,
                Certainty::Proven,
                evidence,
            ))
        }
        many => {
            let names: Vec<String> = many.iter().map(|r| r.name.clone()).collect();
            evidence.push(Evidence::Samples {
                count: samples.len(),
                prime_bound,
                uniform: seen.iter().all(|c| c.is_uniform()),
                full_cycle: seen.iter().any(|c| c.parts() == [n]),
                even_only: seen.iter().all(|c| c.is_even()),
            });
            let mut id = GaloisIdentification::new(
                n,
                &format!("one of {{{}}}", names.join(", ")),
                Certainty::EliminatedToSet(names),
                evidence,
            );
            id.t_notation = None;
            Ok(id)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pade::pade_diagonal;
    use crate::series::SeriesId;

    #[test]
    fn exponential_order_thirteen() {
        let p = pade_diagonal(SeriesId::Exp, 13).unwrap();
        let id = eliminate_degree_le7(&p.numerator, 10_000).unwrap();
        assert_eq!(id.group_name, "S6");
        assert!(id.certainty.is_proven());
        assert_eq!(id.t_notation.as_deref(), Some("6T16"));
    }

    #[test]
    fn agrees_with_exact_solver_on_quintics() {
        for c in [[-1, -1, 0, 0, 0, 1], [16, 20, 0, 0, 0, 1]] {
            let f = IntPoly::from_i64s(&c);
            let a = eliminate_degree_le7(&f, 10_000).unwrap();
            let b = super::super::exact_small_degree(&f).unwrap();
            assert_eq!(a.group_name, b.group_name);
        }
    }

    #[test]
    fn cyclic_sextic_stays_ambiguous() {
        let p = pade_diagonal(SeriesId::InvSqrtMinus, 13).unwrap();
        let id = eliminate_degree_le7(&p.numerator, 10_000).unwrap();
        match id.certainty {
            Certainty::EliminatedToSet(names) => assert!(names.iter().any(|n| n == "C6")),
            Certainty::Proven => assert_eq!(id.group_name, "C6"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn septic_symmetric() {
        let f = IntPoly::from_i64s(&[-1, -1, 0, 0, 0, 0, 0, 1]);
        let id = eliminate_degree_le7(&f, 10_000).unwrap();
        assert_eq!(id.group_name, "S7");
    }
}
