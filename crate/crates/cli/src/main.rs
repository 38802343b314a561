use std::collections::hash_map::RandomState;
use std::hash::{BuildHasher, Hasher};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use truncgal::factor::factor_over_integers;
use truncgal::format::{format_int_poly, format_rat_poly, parse_any_rat, rat_poly_to_json};
use truncgal::galois::{
    classify, classify_all_factors, revalidate, GaloisConfig, GaloisIdentification,
};
use truncgal::pade::{divisibility_scan, pade_diagonal};
use truncgal::padic::newton_polygon;
use truncgal::repro::{
    emit, reproduce, verify_cache_entry, verify_report, Cache, Format, TableId, CACHE_DIR_ENV,
};
use truncgal::schur::{
    certificates, closed_form_disc, derivative_identity_check, theorem_expectation,
    validate_certificate,
};
use truncgal::series::{scale_to_monic_integer, taylor, SeriesId};
use truncgal::{Error, IntPoly, Result};

#[derive(Parser)]
#[command(
    name = "truncgal",
    version,
    about = "Galois groups of truncated series and their Pade approximants"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Emit CSV (tables only).
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,
    /// Largest prime used for Frobenius sampling.
    #[arg(long, global = true, default_value_t = truncgal::galois::DEFAULT_PRIME_BOUND)]
    prime_bound: u64,
    /// Compute everything afresh and write nothing to the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Recompute one random cache entry and compare it byte for byte.
    #[arg(long, global = true)]
    verify_cache: bool,
    /// Directory for cached classifications.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,
    /// Re-validate every proven verdict from its evidence.
    #[arg(long, global = true)]
    verify: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Truncated Taylor polynomial of a series.
    Series {
        #[arg(long)]
        series: SeriesId,
        #[arg(long)]
        n: usize,
    },
    /// Diagonal Pade approximant.
    Pade(PadeArgs),
    /// Factorization over the integers.
    Factor {
        /// Polynomial text, JSON coefficient array, or a file holding either.
        #[arg(long)]
        poly: String,
    },
    /// Newton polygon of a truncated series.
    Newton {
        #[arg(long, default_value = "exp")]
        series: SeriesId,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        prime: u64,
    },
    /// Galois group identification.
    Galois {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        all_factors: bool,
    },
    /// Certificates and identities for the scaled truncated exponential.
    Schur {
        #[arg(long)]
        n: usize,
        /// Also classify the Galois group and compare with the expectation.
        #[arg(long)]
        all_checks: bool,
    },
    /// Reproduce a table (or `all`).
    Reproduce {
        /// exp-pade, invsqrt-pade, invsqrt-trunc, atanh2-pade, sin-sinh, schur-trunc or all
        table: String,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct PadeArgs {
    #[command(subcommand)]
    action: Option<PadeAction>,
    #[arg(long)]
    series: Option<SeriesId>,
    #[arg(long)]
    order: Option<usize>,
    /// Also factor numerator and denominator.
    #[arg(long)]
    factor: bool,
}

#[derive(Subcommand)]
enum PadeAction {
    /// Check P_n | P_m and Q_n | Q_m for all n | m <= max.
    ScanDivisibility {
        #[arg(long)]
        series: SeriesId,
        #[arg(long)]
        max: usize,
    },
}

enum Outcome {
    Ok,
    Mismatch,
}

fn read_poly(arg: &str) -> Result<IntPoly> {
    let path = PathBuf::from(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(&path)?
    } else {
        arg.to_string()
    };
    let r = parse_any_rat(text.trim())?;
    if r.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (_, p) = r.to_primitive()?;
    if r.denominator_lcm() != 1.into() {
        eprintln!(
            "note: denominators cleared, working with {}",
            format_int_poly(&p)
        );
    }
    Ok(p)
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn verdict_text(id: &GaloisIdentification) -> String {
    let mut s = format!("{} [{}]", id.group_name, id.certainty.label());
    if let Some(t) = &id.t_notation {
        s.push_str(&format!(" {t}"));
    }
    s
}

fn random_index() -> usize {
    RandomState::new().build_hasher().finish() as usize
}

fn run(cli: Cli) -> Result<Outcome> {
    let g = &cli.global;
    let config = GaloisConfig {
        prime_bound: g.prime_bound,
        all_factors: false,
    };
    match cli.command {
        Command::Series { series, n } => {
            let t = taylor(series, n);
            if g.json {
                print_json(
                    &json!({ "series": series, "n": n, "coefficients": rat_poly_to_json(&t) }),
                )?;
            } else {
                println!("{}", format_rat_poly(&t));
            }
        }
        Command::Pade(args) => match args.action {
            Some(PadeAction::ScanDivisibility { series, max }) => {
                let rows = divisibility_scan(series, max)?;
                let ok = rows.iter().all(|r| r.divides());
                if g.json {
                    print_json(&rows)?;
                } else {
                    for r in &rows {
                        println!(
                            "{} | {}: P {} Q {}",
                            r.n,
                            r.m,
                            if r.numerator_divides { "divides" } else { "no" },
                            if r.denominator_divides {
                                "divides"
                            } else {
                                "no"
                            }
                        );
                    }
                }
                if !ok {
                    return Ok(Outcome::Mismatch);
                }
            }
            None => {
                let (Some(series), Some(order)) = (args.series, args.order) else {
                    return Err(Error::InvalidArgument(
                        "pade needs --series and --order".into(),
                    ));
                };
                let p = pade_diagonal(series, order)?;
                let factors = if args.factor {
                    Some((
                        factor_over_integers(&p.numerator)?,
                        factor_over_integers(&p.denominator)?,
                    ))
                } else {
                    None
                };
                if g.json {
                    let mut v = serde_json::to_value(&p)?;
                    if let Some((a, b)) = &factors {
                        v["numerator_factorization"] = serde_json::to_value(a)?;
                        v["denominator_factorization"] = serde_json::to_value(b)?;
                    }
                    print_json(&v)?;
                } else {
                    println!("P = {}", format_int_poly(&p.numerator));
                    println!("Q = {}", format_int_poly(&p.denominator));
                    let sign = if p.overall_sign < 0 { "-" } else { "" };
                    println!("series = {sign}{} * P/Q + O(x^{order})", p.scale);
                    if let Some((a, b)) = factors {
                        for (label, f) in [("P", a), ("Q", b)] {
                            let parts: Vec<String> = f
                                .factors
                                .iter()
                                .map(|x| match x.multiplicity {
                                    1 => format!("({})", format_int_poly(&x.coefficients)),
                                    m => format!("({})^{m}", format_int_poly(&x.coefficients)),
                                })
                                .collect();
                            if parts.is_empty() {
                                println!("{label} = {}", f.unit);
                            } else {
                                println!("{label} = {} * {}", f.unit, parts.join(" * "));
                            }
                        }
                    }
                }
            }
        },
        Command::Factor { poly } => {
            let f = read_poly(&poly)?;
            let fac = factor_over_integers(&f)?;
            if g.json {
                print_json(&fac)?;
            } else {
                println!("unit {}", fac.unit);
                for x in &fac.factors {
                    println!("({})^{}", format_int_poly(&x.coefficients), x.multiplicity);
                }
            }
        }
        Command::Newton { series, n, prime } => {
            let np = newton_polygon(&taylor(series, n), prime)?;
            if g.json {
                print_json(&np)?;
            } else {
                println!("vertices {:?}", np.vertices);
                for s in &np.segments {
                    println!("segment length {} slope {}", s.length, s.slope);
                }
            }
        }
        Command::Galois { poly, all_factors } => {
            let f = read_poly(&poly)?;
            let ids: Vec<(IntPoly, GaloisIdentification)> = if all_factors {
                classify_all_factors(&f, &config)?
            } else {
                vec![(f.clone(), classify(&f, &config)?)]
            };
            let mut failed = false;
            for (h, id) in &ids {
                if g.verify {
                    if let Err(e) = revalidate(h, id) {
                        eprintln!("verification failed: {e}");
                        failed = true;
                    }
                }
            }
            if g.json {
                if all_factors {
                    let v: Vec<_> = ids
                        .iter()
                        .map(|(h, id)| json!({ "factor": h, "verdict": id }))
                        .collect();
                    print_json(&v)?;
                } else {
                    print_json(&ids[0].1)?;
                }
            } else {
                for (h, id) in &ids {
                    if all_factors {
                        print!("{}: ", format_int_poly(h));
                    }
                    println!("{}", verdict_text(id));
                }
            }
            if failed {
                return Ok(Outcome::Mismatch);
            }
        }
        Command::Schur { n, all_checks } => {
            if n == 0 {
                return Err(Error::InvalidArgument("N must be positive".into()));
            }
            let q = scale_to_monic_integer(n);
            let certs = certificates(n)?;
            let disc = closed_form_disc(n)?;
            let identity = derivative_identity_check(n);
            let expectation = theorem_expectation(n);
            let verdict = if all_checks {
                Some(classify(&q, &config)?)
            } else {
                None
            };
            let matches = verdict.as_ref().map(|v| {
                truncgal::galois::groups::names_equivalent(&v.group_name, &expectation)
                    && v.certainty.is_proven()
            });
            if g.json {
                print_json(&json!({
                    "n": n,
                    "polynomial": q,
                    "certificates": certs,
                    "certificates_valid": certs.iter().all(validate_certificate),
                    "discriminant": disc,
                    "derivative_identity": identity,
                    "expectation": expectation,
                    "verdict": verdict,
                    "verdict_matches": matches,
                }))?;
            } else {
                println!("Q_{n} = {}", format_int_poly(&q));
                for c in &certs {
                    let p = c.prime.map(|p| format!(" at {p}")).unwrap_or_default();
                    println!(
                        "certificate {:?}{p}: valid {}",
                        c.kind,
                        validate_certificate(c)
                    );
                    for d in &c.details {
                        println!("  {d}");
                    }
                }
                println!(
                    "|disc| = (N!)^N: {}; printed sign {}, computed sign {}{}",
                    disc.magnitude_matches,
                    disc.paper_sign,
                    disc.oracle_sign,
                    if disc.agree() { "" } else { " (DISAGREE)" }
                );
                println!("Q' = Q - x^N: {identity}");
                println!("expected group {expectation}");
                if let Some(v) = &verdict {
                    println!("computed group {}", verdict_text(v));
                }
            }
            if matches == Some(false) || !identity {
                return Ok(Outcome::Mismatch);
            }
        }
        Command::Reproduce { table } => {
            let tables: Vec<TableId> = if table == "all" {
                TableId::ALL.to_vec()
            } else {
                vec![table.parse()?]
            };
            let cache = if g.no_cache {
                Cache::disabled()
            } else {
                Cache::from_env(g.cache_dir.as_deref())?
            };
            let format = if g.json {
                Format::Json
            } else if g.csv {
                Format::Csv
            } else {
                Format::Text
            };
            let mut outcome = Outcome::Ok;
            let mut pipeline_error = false;
            for t in tables {
                let report = reproduce(t, g.prime_bound, &cache);
                print!("{}", emit(&report, format)?);
                if report.summary.error > 0 {
                    pipeline_error = true;
                }
                if !report.passed() {
                    outcome = Outcome::Mismatch;
                }
                if g.verify {
                    let failures = verify_report(&report);
                    for f in &failures {
                        eprintln!("verify: {f}");
                    }
                    if !failures.is_empty() {
                        outcome = Outcome::Mismatch;
                    }
                }
            }
            if g.verify_cache {
                match verify_cache_entry(&cache, random_index())? {
                    None => eprintln!("verify-cache: no cached classification"),
                    Some((key, true)) => eprintln!("verify-cache: entry {key} identical"),
                    Some((key, false)) => {
                        eprintln!("verify-cache: entry {key} differs from recomputation");
                        outcome = Outcome::Mismatch;
                    }
                }
            }
            if pipeline_error {
                return Err(Error::InvalidArgument(
                    "pipeline error in at least one cell".into(),
                ));
            }
            return Ok(outcome);
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
