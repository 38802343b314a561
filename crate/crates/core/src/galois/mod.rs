//! Galois group identification in tiers: exact resolvent methods up to
//! degree 5, cycle-type elimination against embedded group data for
//! degrees 6 and 7, Jordan certificates for the full symmetric or
//! alternating group from degree 8, and labelled heuristics otherwise.

mod dedekind;
mod eliminate;
pub mod groups;
mod heuristic;
mod jordan;
mod small;
mod verify;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

pub use dedekind::{dedekind_cycle_type, disc_is_square, sample_cycle_types, Sample};
pub use eliminate::eliminate_degree_le7;
pub use heuristic::{
    block_split, cyclic_heuristic, fiber_model_consistent, wreath_structure, WreathReport,
};
pub use jordan::{jordan_window_primes, sn_an_certificate};
pub use small::{
    exact_small_degree, quartic_resolvent_cubic, quintic_resolvent, quintic_resolvent_at,
    QuinticResolvent,
};
pub use verify::revalidate;

use crate::error::{Error, Result};
use crate::factor::factor_over_integers;
use crate::poly::IntPoly;

/// Default upper bound for Frobenius sampling.
pub const DEFAULT_PRIME_BOUND: u64 = 10_000;
/// Minimum number of good primes behind a cyclic verdict.
pub const MIN_HEURISTIC_SAMPLES: usize = 200;

/// Partition of the degree, parts in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(pub Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// Order of any permutation with this cycle type.
    pub fn order(&self) -> u64 {
        self.0.iter().fold(1u64, |acc, &p| acc.lcm(&(p as u64)))
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().map(|&p| p - 1).sum::<usize>() % 2 == 0
    }

    pub fn is_uniform(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", content = "payload")]
pub enum Certainty {
    Proven,
    EliminatedToSet(Vec<String>),
    Heuristic { samples: usize, prime_bound: u64 },
    Unknown,
}

impl Certainty {
    pub fn is_proven(&self) -> bool {
        matches!(self, Certainty::Proven)
    }

    pub fn label(&self) -> String {
        match self {
            Certainty::Proven => "proven".into(),
            Certainty::EliminatedToSet(s) => format!("eliminated to {{{}}}", s.join(", ")),
            Certainty::Heuristic { samples, .. } => format!("heuristic ({samples} primes)"),
            Certainty::Unknown => "unknown".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Reducible {
        input: IntPoly,
        factor: IntPoly,
    },
    Irreducible {
        polynomial: IntPoly,
    },
    Discriminant {
        #[serde(with = "crate::format::bigint_string")]
        value: BigInt,
        square: bool,
    },
    Frobenius {
        prime: u64,
        cycle_type: CycleType,
    },
    ResolventCubic {
        resolvent: IntPoly,
        rational_roots: Vec<String>,
    },
    QuarticSplitTest {
        root: String,
        first: String,
        second: String,
        cyclic: bool,
    },
    SexticResolvent {
        prime: u64,
        precision: u32,
        transform: u64,
        resolvent: IntPoly,
        rational_root: Option<String>,
    },
    QuinticCyclicTest {
        value: String,
        square: bool,
    },
    Jordan {
        prime: u64,
        cycle_type: CycleType,
        q: usize,
    },
    Candidates {
        names: Vec<String>,
    },
    Samples {
        count: usize,
        prime_bound: u64,
        uniform: bool,
        full_cycle: bool,
        even_only: bool,
    },
    OrderLowerBound {
        value: u64,
    },
    Block {
        k: usize,
        x_factor: bool,
        inner: IntPoly,
        inner_group: String,
        inner_certainty: String,
    },
    FiberModel {
        consistent: bool,
        checked: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisIdentification {
    pub degree: usize,
    pub group_name: String,
    pub t_notation: Option<String>,
    pub certainty: Certainty,
    pub evidence: Vec<Evidence>,
}

impl GaloisIdentification {
    fn new(degree: usize, name: &str, certainty: Certainty, evidence: Vec<Evidence>) -> Self {
        let t_notation = if degree <= 7 {
            groups::find(degree, name).map(|r| r.t_notation())
        } else {
            None
        };
        GaloisIdentification {
            degree,
            group_name: name.to_string(),
            t_notation,
            certainty,
            evidence,
        }
    }

    pub fn order_lower_bound(&self) -> Option<u64> {
        self.evidence.iter().find_map(|e| match e {
            Evidence::OrderLowerBound { value } => Some(*value),
            _ => None,
        })
    }

    pub fn observed_types(&self) -> Vec<CycleType> {
        self.evidence
            .iter()
            .filter_map(|e| match e {
                Evidence::Frobenius { cycle_type, .. } | Evidence::Jordan { cycle_type, .. } => {
                    Some(cycle_type.clone())
                }
                _ => None,
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisConfig {
    pub prime_bound: u64,
    /// Classify every irreducible factor instead of only the largest one.
    pub all_factors: bool,
}

impl Default for GaloisConfig {
    fn default() -> Self {
        GaloisConfig {
            prime_bound: DEFAULT_PRIME_BOUND,
            all_factors: false,
        }
    }
}

/// Identifies the Galois group of an irreducible polynomial by degree tier,
/// falling back to the cyclic and block heuristics.
pub fn classify_irreducible(f: &IntPoly, config: &GaloisConfig) -> Result<GaloisIdentification> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    let first = match n {
        0 => return Err(Error::DegreeTooSmall { min: 1, got: 0 }),
        1..=5 => return exact_small_degree(f),
        6 | 7 => eliminate_degree_le7(f, config.prime_bound)?,
        _ => sn_an_certificate(f, config.prime_bound)?,
    };
    if first.certainty.is_proven() {
        return Ok(first);
    }
    let cyclic = cyclic_heuristic(f, config.prime_bound)?;
    let mut out = if matches!(cyclic.certainty, Certainty::Heuristic { .. }) {
        cyclic
    } else {
        match wreath_structure(f, config)? {
            Some(report) => report.identification,
            None => {
                let mut id = first.clone();
                id.evidence.extend(cyclic.evidence);
                id
            }
        }
    };
    if let Certainty::EliminatedToSet(names) = &first.certainty {
        out.evidence.push(Evidence::Candidates {
            names: names.clone(),
        });
        if out.t_notation.is_none() {
            out.t_notation = names
                .iter()
                .filter_map(|nm| groups::find(n, nm))
                .find(|r| groups::names_equivalent(&r.name, &out.group_name))
                .map(|r| r.t_notation());
        }
    }
    Ok(out)
}

/// Full pipeline: factor, keep the largest irreducible factor (recording
/// reducibility), then classify it.
pub fn classify(f: &IntPoly, config: &GaloisConfig) -> Result<GaloisIdentification> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::DegreeTooSmall { min: 1, got: 0 });
    }
    let fac = factor_over_integers(f)?;
    let g = fac.largest().expect("nonconstant").clone();
    let reducible = fac.factors.len() > 1 || fac.factors[0].multiplicity > 1;
    let mut id = classify_irreducible(&g, config)?;
    if reducible {
        id.evidence.insert(
            0,
            Evidence::Reducible {
                input: f.clone(),
                factor: g,
            },
        );
    } else {
        id.evidence
            .insert(0, Evidence::Irreducible { polynomial: g });
    }
    Ok(id)
}

/// Classifies each distinct irreducible factor.
pub fn classify_all_factors(
    f: &IntPoly,
    config: &GaloisConfig,
) -> Result<Vec<(IntPoly, GaloisIdentification)>> {
    let fac = factor_over_integers(f)?;
    fac.factors
        .iter()
        .map(|fc| {
            let mut id = classify_irreducible(&fc.coefficients, config)?;
            id.evidence.insert(
                0,
                Evidence::Irreducible {
                    polynomial: fc.coefficients.clone(),
                },
            );
            Ok((fc.coefficients.clone(), id))
        })
        .collect()
}
