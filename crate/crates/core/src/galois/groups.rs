//! Transitive permutation groups of degree at most 7, shipped as generator
//! lists and expanded by closure at first use.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::CycleType;
use crate::error::{Error, Result};

const DATA: &str = include_str!("../../data/transitive_groups.txt");
const MAX_DEGREE: usize = 7;

/// Permutation of `0..n` as an image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            parts.push(len);
        }
        CycleType::new(parts)
    }

    /// Parses cycle notation with 1-based points, e.g. `(1,2,3)(4,5)`.
    pub fn parse(text: &str, n: usize) -> Result<Perm> {
        let bad = |m: &str| Error::Parse(format!("{m} in permutation `{text}`"));
        if n == 0 || n > u8::MAX as usize {
            return Err(bad("degree out of range"));
        }
        let mut img: Vec<u8> = (0..n as u8).collect();
        let mut used = vec![false; n];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(bad("empty generator"));
        }
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
            let close = inner.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let points: Vec<usize> = inner[..close]
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|_| bad("bad point")))
                .collect::<Result<_>>()?;
            for &pt in &points {
                if pt == 0 || pt > n {
                    return Err(bad("point out of range"));
                }
                if used[pt - 1] {
                    return Err(bad("point repeated"));
                }
                used[pt - 1] = true;
            }
            for (k, &pt) in points.iter().enumerate() {
                img[pt - 1] = (points[(k + 1) % points.len()] - 1) as u8;
            }
            rest = inner[close + 1..].trim_start();
        }
        Ok(Perm(img))
    }
}

/// One line of the data file before expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLine {
    pub degree: usize,
    pub t_number: usize,
    pub name: String,
    pub generators: Vec<Perm>,
}

/// Parses `degree t name gen gen ...` lines; blank lines and `#` comments
/// are skipped.
pub fn parse_group_lines(text: &str) -> Result<Vec<GroupLine>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: &str| Error::Parse(format!("line {}: {m}", lineno + 1));
        let mut fields = line.split_whitespace();
        let degree: usize = fields
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err("bad degree"))?;
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(err("degree out of range"));
        }
        let t_number: usize = fields
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err("bad t-number"))?;
        let name = fields
            .next()
            .ok_or_else(|| err("missing name"))?
            .to_string();
        let generators = fields
            .map(|g| Perm::parse(g, degree))
            .collect::<Result<Vec<_>>>()?;
        if generators.is_empty() {
            return Err(err("no generators"));
        }
        out.push(GroupLine {
            degree,
            t_number,
            name,
            generators,
        });
    }
    Ok(out)
}

/// All elements generated by `gens`.
pub fn closure(gens: &[Perm]) -> Vec<Perm> {
    let n = gens[0].0.len();
    let id = Perm::identity(n);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.then(s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    let mut v: Vec<Perm> = seen.into_iter().collect();
    v.sort();
    v
}

fn is_transitive(elements: &[Perm]) -> bool {
    let n = elements[0].0.len();
    let orbit: HashSet<u8> = elements.iter().map(|g| g.0[0]).collect();
    orbit.len() == n
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitiveGroupRecord {
    pub degree: usize,
    pub t_number: usize,
    pub name: String,
    pub order: u64,
    pub cycle_types: BTreeSet<CycleType>,
    /// All elements are even permutations.
    pub even: bool,
}

impl TransitiveGroupRecord {
    pub fn t_notation(&self) -> String {
        format!("{}T{}", self.degree, self.t_number)
    }

    pub fn contains_type(&self, c: &CycleType) -> bool {
        self.cycle_types.contains(c)
    }
}

fn expand(line: &GroupLine) -> TransitiveGroupRecord {
    let elements = closure(&line.generators);
    let cycle_types: BTreeSet<CycleType> = elements.iter().map(|g| g.cycle_type()).collect();
    TransitiveGroupRecord {
        degree: line.degree,
        t_number: line.t_number,
        name: line.name.clone(),
        order: elements.len() as u64,
        even: cycle_types.iter().all(|c| c.is_even()),
        cycle_types,
    }
}

/// Expanded records, sorted by degree then t-number.
pub fn records() -> &'static [TransitiveGroupRecord] {
    static RECORDS: OnceLock<Vec<TransitiveGroupRecord>> = OnceLock::new();
    RECORDS.get_or_init(|| {
        let lines = parse_group_lines(DATA).expect("embedded group data parses");
        let mut recs: Vec<_> = lines.iter().map(expand).collect();
        recs.sort_by_key(|r| (r.degree, r.t_number));
        recs
    })
}

pub fn records_of_degree(n: usize) -> Vec<&'static TransitiveGroupRecord> {
    records().iter().filter(|r| r.degree == n).collect()
}

pub fn find(n: usize, name: &str) -> Option<&'static TransitiveGroupRecord> {
    records()
        .iter()
        .find(|r| r.degree == n && names_equivalent(&r.name, name))
}

pub fn embedded_lines() -> Vec<GroupLine> {
    parse_group_lines(DATA).expect("embedded group data parses")
}

pub fn transitive(line: &GroupLine) -> bool {
    is_transitive(&closure(&line.generators))
}

fn canonical(name: &str) -> String {
    let s: String = name
        .trim()
        .trim_start_matches("subgroup of ")
        .chars()
        .filter(|c| *c != '_' && *c != ' ')
        .collect();
    let lower = s.to_ascii_lowercase();
    let hyper = |t: &str| -> Option<String> {
        let t: usize = t.parse().ok()?;
        Some(match t {
            1 => "c2".to_string(),
            2 => "d4".to_string(),
            3 => "c2xs4".to_string(),
            _ => format!("c2wrs{t}"),
        })
    };
    if let Some(t) = lower.strip_prefix("c2wrs") {
        if let Some(h) = hyper(t) {
            return h;
        }
    }
    if let Some(t) = lower.strip_prefix('b') {
        if let Some(h) = hyper(t) {
            return h;
        }
    }
    match lower.as_str() {
        "s2" => "c2".into(),
        "a3" => "c3".into(),
        "s1" | "a1" | "a2" | "trivial" => "c1".into(),
        "c2xc2" | "klein" => "v4".into(),
        "m20" => "f20".into(),
        "4t3" => "d4".into(),
        "6t11" => "c2xs4".into(),
        _ => lower,
    }
}

/// Name comparison that identifies common aliases, e.g. `S2 = C2`,
/// `A3 = C3`, `B2 = D4`, `B_t = C2 wr S_t`.
pub fn names_equivalent(a: &str, b: &str) -> bool {
    canonical(a) == canonical(b)
}
