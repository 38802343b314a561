use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::dedekind::dedekind_cycle_type;
use super::groups::{find, names_equivalent, records_of_degree};
use super::jordan::jordan_window_primes;
use super::small::{quartic_resolvent_cubic, quintic_resolvent_at};
use super::{CycleType, Evidence, GaloisIdentification};
use crate::factor::{is_irreducible, rational_roots};
use crate::format::format_rational;
use crate::poly::{is_perfect_square, IntPoly};
use crate::resultant::int_discriminant;

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(s: &str) -> std::result::Result<BigInt, String> {
    s.parse().map_err(|_| format!("not an integer: {s}"))
}

/// Re-derives a proven verdict for `input` from its evidence alone:
/// discriminants, Frobenius cycle types and resolvents are recomputed and
/// the group name is re-decided from the recomputed facts. Non-proven
/// verdicts only have their Frobenius evidence checked.
pub fn revalidate(input: &IntPoly, id: &GaloisIdentification) -> Check {
    let mut f = input.clone();
    for e in &id.evidence {
        match e {
            Evidence::Reducible { input: i, factor } => {
                ensure(i == input, || {
                    "reducibility record names another input".into()
                })?;
                ensure(factor.divides(input), || {
                    "recorded factor does not divide".into()
                })?;
                f = factor.clone();
            }
            Evidence::Irreducible { polynomial } => {
                ensure(polynomial == input || polynomial.divides(input), || {
                    "irreducible record names another polynomial".into()
                })?;
                f = polynomial.clone();
            }
            _ => {}
        }
    }
    let n = f.degree().ok_or("zero polynomial")?;
    ensure(n == id.degree, || {
        format!("degree {} recorded, {n} found", id.degree)
    })?;

    let mut square = None;
    for e in &id.evidence {
        match e {
            Evidence::Discriminant { value, square: s } => {
                let d = int_discriminant(&f).map_err(|e| e.to_string())?;
                ensure(&d == value, || {
                    format!("discriminant {value} recorded, {d} found")
                })?;
                ensure(is_perfect_square(&d) == *s, || {
                    "square flag mismatch".into()
                })?;
                square = Some(*s);
            }
            Evidence::Frobenius { prime, cycle_type }
            | Evidence::Jordan {
                prime, cycle_type, ..
            } => {
                let c = dedekind_cycle_type(&f, *prime);
                ensure(c.as_ref() == Some(cycle_type), || {
                    format!("cycle type at {prime}: {cycle_type} recorded, {c:?} found")
                })?;
            }
            _ => {}
        }
    }
    if !id.certainty.is_proven() {
        return Ok(());
    }
    if n == 1 {
        return ensure(id.group_name == "C1", || "degree one must be C1".into());
    }
    let irreducible = is_irreducible(&f).map_err(|e| e.to_string())?;
    ensure(irreducible, || "classified polynomial is reducible".into())?;
    let square = square.ok_or("proven verdict without discriminant")?;
    let expected = match n {
        2 => "C2".to_string(),
        3 => if square { "C3" } else { "S3" }.to_string(),
        4 => quartic_name(&f, id, square)?,
        5 => quintic_name(&f, id, square)?,
        6 | 7 => elimination_name(n, id, square)?,
        _ => jordan_name(n, id, square)?,
    };
    ensure(names_equivalent(&expected, &id.group_name), || {
        format!("evidence gives {expected}, verdict says {}", id.group_name)
    })?;
    if n <= 7 {
        let rec = find(n, &expected).ok_or_else(|| format!("{expected} not in group data"))?;
        for c in id.observed_types() {
            ensure(rec.contains_type(&c), || format!("{c} not in {}", rec.name))?;
        }
        ensure(
            id.t_notation.as_deref() == Some(rec.t_notation().as_str()),
            || "t-notation mismatch".into(),
        )?;
    }
    Ok(())
}

fn quartic_name(
    f: &IntPoly,
    id: &GaloisIdentification,
    square: bool,
) -> std::result::Result<String, String> {
    let cubic = quartic_resolvent_cubic(f).map_err(|e| e.to_string())?;
    let mut roots = rational_roots(&cubic).map_err(|e| e.to_string())?;
    roots.dedup();
    let recorded = id.evidence.iter().find_map(|e| match e {
        Evidence::ResolventCubic {
            resolvent,
            rational_roots,
        } => Some((resolvent, rational_roots)),
        _ => None,
    });
    let (res, rr) = recorded.ok_or("missing resolvent cubic")?;
    ensure(res == &cubic, || "resolvent cubic mismatch".into())?;
    let found: Vec<String> = roots.iter().map(format_rational).collect();
    ensure(rr == &found, || "resolvent roots mismatch".into())?;
    Ok(match (roots.len(), square) {
        (0, true) => "A4".into(),
        (0, false) => "S4".into(),
        (3, _) => "V4".into(),
        (1, _) => {
            let g = f.monicize();
            let r = roots[0].to_integer();
            let first = &r * &r - BigInt::from(4) * g.coeff(0);
            let second = g.coeff(3) * g.coeff(3) - BigInt::from(4) * (g.coeff(2) - &r);
            let disc = int_discriminant(f).map_err(|e| e.to_string())?;
            let ok =
                |d: &BigInt| d.is_zero() || is_perfect_square(d) || is_perfect_square(&(d * &disc));
            let cyclic = ok(&first) && ok(&second);
            let test = id.evidence.iter().find_map(|e| match e {
                Evidence::QuarticSplitTest {
                    root,
                    first: a,
                    second: b,
                    cyclic: c,
                } => Some((root.clone(), a.clone(), b.clone(), *c)),
                _ => None,
            });
            ensure(
                test == Some((r.to_string(), first.to_string(), second.to_string(), cyclic)),
                || "quartic split test mismatch".into(),
            )?;
            if cyclic { "C4" } else { "D4" }.into()
        }
        (k, _) => return Err(format!("resolvent cubic with {k} rational roots")),
    })
}

fn quintic_name(
    f: &IntPoly,
    id: &GaloisIdentification,
    square: bool,
) -> std::result::Result<String, String> {
    let rec = id.evidence.iter().find_map(|e| match e {
        Evidence::SexticResolvent {
            prime,
            precision,
            transform,
            resolvent,
            rational_root,
        } => Some((*prime, *precision, *transform, resolvent, rational_root)),
        _ => None,
    });
    let (p, k, t, resolvent, root) = rec.ok_or("missing sextic resolvent")?;
    let again = quintic_resolvent_at(f, t, p, k).map_err(|e| e.to_string())?;
    ensure(&again.resolvent == resolvent, || {
        "sextic resolvent mismatch".into()
    })?;
    let disc = int_discriminant(resolvent).map_err(|e| e.to_string())?;
    ensure(!disc.is_zero(), || "sextic resolvent not squarefree".into())?;
    let exact_roots = rational_roots(resolvent).map_err(|e| e.to_string())?;
    match root {
        None => {
            ensure(exact_roots.is_empty(), || {
                "resolvent has an unrecorded root".into()
            })?;
            Ok(if square { "A5" } else { "S5" }.into())
        }
        Some(r) => {
            let r = big(r)?;
            ensure(resolvent.eval(&r).is_zero(), || {
                "recorded root is not a root".into()
            })?;
            if !square {
                return Ok("F20".into());
            }
            let test = id.evidence.iter().find_map(|e| match e {
                Evidence::QuinticCyclicTest { value, square } => Some((value.clone(), *square)),
                _ => None,
            });
            let (value, sq) = test.ok_or("missing cyclic test")?;
            let d = again
                .cyclic_value
                .ok_or("no cyclic value on recomputation")?;
            ensure(d.to_string() == value, || {
                "cyclic test value mismatch".into()
            })?;
            ensure(!d.is_zero() && is_perfect_square(&d) == sq, || {
                "cyclic test flag mismatch".into()
            })?;
            Ok(if sq { "C5" } else { "D5" }.into())
        }
    }
}

fn elimination_name(
    n: usize,
    id: &GaloisIdentification,
    square: bool,
) -> std::result::Result<String, String> {
    let seen: BTreeSet<CycleType> = id.observed_types().into_iter().collect();
    let alive: Vec<_> = records_of_degree(n)
        .into_iter()
        .filter(|r| r.even == square && seen.iter().all(|c| r.contains_type(c)))
        .collect();
    match alive.as_slice() {
        [only] => Ok(only.name.clone()),
        _ => Err(format!("{} groups survive the witnesses", alive.len())),
    }
}

fn jordan_name(
    n: usize,
    id: &GaloisIdentification,
    square: bool,
) -> std::result::Result<String, String> {
    let window = jordan_window_primes(n);
    let ok = id.evidence.iter().any(|e| match e {
        Evidence::Jordan { cycle_type, q, .. } => {
            window.contains(q) && cycle_type.parts().contains(q) && cycle_type.degree() == n
        }
        _ => false,
    });
    ensure(ok, || "no valid Jordan witness".into())?;
    Ok(if square {
        format!("A{n}")
    } else {
        format!("S{n}")
    })
}
