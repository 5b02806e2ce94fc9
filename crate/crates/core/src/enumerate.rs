//! Multiplicative partitions, isomorphism classes and the labeled census.
//!
//! The census transports every non-chain class representative along all
//! `(n-2)!` bijections fixing the bottom and the unit and counts the distinct
//! tables obtained. That ground truth is reported next to the closed-form
//! total `π_n·(n-2)! + 1`, which counts bijections rather than tables.

use std::collections::HashSet;

use itertools::Itertools;
use serde::Serialize;

use crate::construct::{chain, chain_product, transport_cells, Bijection};
use crate::error::{Error, Result};
use crate::iso::{automorphisms, find_isomorphism, ChainSignature};
use crate::table::{Element, WajsbergTable};

/// Census cap used when nothing else is configured.
pub const DEFAULT_CENSUS_CAP: usize = 9;

/// Beyond this order a census is refused whatever the configured cap.
pub const HARD_CENSUS_CAP: usize = 12;

/// Environment variable that overrides the census cap.
pub const CENSUS_CAP_ENV: &str = "WAJSBERG_CENSUS_CAP";

/// Unordered factorizations of `n` into at least two factors, each at least
/// 2, as ascending factor lists in lexicographic order.
pub fn multiplicative_partitions(n: usize) -> Vec<Vec<usize>> {
    fn extend(rest: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            if prefix.len() >= 2 {
                out.push(prefix.clone());
            }
            return;
        }
        for f in min..=rest {
            if rest.is_multiple_of(f) {
                prefix.push(f);
                extend(rest / f, f, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        extend(n, 2, &mut Vec::new(), &mut out);
    }
    out
}

/// `π_n`, the number of unordered nontrivial factorizations of `n`.
pub fn pi(n: usize) -> usize {
    multiplicative_partitions(n).len()
}

/// One representative per isomorphism class: the chain, then the left-folded
/// product of chains for each multiplicative partition. Representatives are
/// checked pairwise non-isomorphic.
pub fn iso_classes(n: usize) -> Result<Vec<(ChainSignature, WajsbergTable)>> {
    if n == 0 {
        return Err(Error::Malformed("order must be at least 1".into()));
    }
    let mut classes = vec![(ChainSignature::new(vec![n]), chain(n)?)];
    for factors in multiplicative_partitions(n) {
        let rep = chain_product(&factors)?;
        classes.push((ChainSignature::new(factors), rep));
    }
    for (i, (si, a)) in classes.iter().enumerate() {
        for (sj, b) in &classes[..i] {
            if find_isomorphism(a, b).is_some() {
                return Err(Error::Invariant(format!(
                    "class representatives {si} and {sj} are isomorphic"
                )));
            }
        }
    }
    Ok(classes)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCensus {
    pub signature: ChainSignature,
    /// Automorphism group order found by backtracking.
    pub aut_order: u64,
    /// Automorphism group order found by scanning all bijections.
    pub aut_order_brute_force: u64,
    /// Distinct tables among the transports of this class.
    pub distinct_tables: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub order: usize,
    pub pi_n: usize,
    pub iso_class_count: usize,
    pub iso_classes: Vec<ChainSignature>,
    /// `π_n·(n-2)! + 1`.
    pub formula_total: u64,
    /// `π_n·(n-2)!`, the number of bijections scanned.
    pub bijection_count: u64,
    /// Distinct labeled tables: deduplicated transports plus the chain.
    pub distinct_labeled_total: u64,
    pub per_class: Vec<ClassCensus>,
    pub discrepancy: bool,
    pub narrative: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub cap: usize,
    /// Keep every distinct table in the result.
    pub keep_tables: bool,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            cap: DEFAULT_CENSUS_CAP,
            keep_tables: false,
        }
    }
}

impl CensusConfig {
    /// Default configuration with the cap read from [`CENSUS_CAP_ENV`] when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = CensusConfig::default();
        if let Ok(v) = std::env::var(CENSUS_CAP_ENV) {
            cfg.cap = v.trim().parse().map_err(|_| {
                Error::Malformed(format!("{CENSUS_CAP_ENV}={v:?} is not a number"))
            })?;
        }
        Ok(cfg)
    }
}

#[derive(Clone, Debug)]
pub struct Census {
    pub report: CensusReport,
    /// Chain first, then each class's tables in first-seen order. Empty
    /// unless requested.
    pub tables: Vec<(ChainSignature, WajsbergTable)>,
}

/// Exact, compact key for a table of order at most [`HARD_CENSUS_CAP`]:
/// one nibble per cell.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PackedTable([u64; 9]);

impl PackedTable {
    fn pack(cells: &[u8]) -> Self {
        debug_assert!(cells.len() <= 144);
        let mut words = [0u64; 9];
        for (k, &c) in cells.iter().enumerate() {
            words[k / 16] |= (c as u64 & 0xf) << (4 * (k % 16));
        }
        PackedTable(words)
    }
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Runs the labeled census for order `n`.
pub fn labeled_census(n: usize, cfg: &CensusConfig) -> Result<Census> {
    if n < 2 {
        return Err(Error::CensusRefused {
            n,
            reason: "the census starts at order 2".into(),
        });
    }
    let cap = cfg.cap.min(HARD_CENSUS_CAP);
    if n > cap {
        let reason = if n > HARD_CENSUS_CAP {
            format!("orders above {HARD_CENSUS_CAP} are out of reach of an exhaustive scan")
        } else {
            format!("order exceeds the census cap {cap}; raise it with --cap or {CENSUS_CAP_ENV}")
        };
        return Err(Error::CensusRefused { n, reason });
    }

    let classes = iso_classes(n)?;
    let pi_n = classes.len() - 1;
    let perms = factorial(n - 2);
    let formula_total = pi_n as u64 * perms + 1;

    let mut tables = Vec::new();
    if cfg.keep_tables {
        tables.push(classes[0].clone());
    }
    let mut per_class = Vec::new();
    for (sig, rep) in classes.iter().skip(1) {
        let (class, found) = scan_class(sig, rep, cfg.keep_tables)?;
        per_class.push(class);
        tables.extend(found.into_iter().map(|t| (sig.clone(), t)));
    }

    let distinct_labeled_total = 1 + per_class.iter().map(|c| c.distinct_tables).sum::<u64>();
    let orbit_total = 1 + per_class.iter().map(|c| perms / c.aut_order).sum::<u64>();
    if orbit_total != distinct_labeled_total {
        return Err(Error::Invariant(format!(
            "orbit-stabilizer count {orbit_total} differs from the exhaustive count {distinct_labeled_total}"
        )));
    }

    let discrepancy = distinct_labeled_total != formula_total;
    let mut narrative = Vec::new();
    if pi_n > 0 {
        narrative.push(format!(
            "{} isomorphism classes: the chain plus π_{n} = {pi_n} products of chains",
            pi_n + 1
        ));
    }
    if discrepancy {
        for c in per_class.iter().filter(|c| c.aut_order > 1) {
            narrative.push(format!(
                "class {} has {} automorphisms, so its {perms} relabelings give only {} distinct tables",
                c.signature, c.aut_order, c.distinct_tables
            ));
        }
        narrative.push(format!(
            "formula total {formula_total} counts bijections; {distinct_labeled_total} distinct tables exist"
        ));
    }

    Ok(Census {
        report: CensusReport {
            order: n,
            pi_n,
            iso_class_count: classes.len(),
            iso_classes: classes.iter().map(|(s, _)| s.clone()).collect(),
            formula_total,
            bijection_count: pi_n as u64 * perms,
            distinct_labeled_total,
            per_class,
            discrepancy,
            narrative,
        },
        tables,
    })
}

/// Transports `rep` along every bijection fixing its bottom and unit.
fn scan_class(
    sig: &ChainSignature,
    rep: &WajsbergTable,
    keep: bool,
) -> Result<(ClassCensus, Vec<WajsbergTable>)> {
    let n = rep.order();
    let inner: Vec<Element> = rep
        .elements()
        .filter(|&x| x != rep.zero() && x != rep.unit())
        .collect();
    let mut seen: HashSet<PackedTable> = HashSet::new();
    let mut kept = Vec::new();
    let mut fixed_points = 0u64;
    let mut cells = vec![0u8; n * n];
    let own = PackedTable::pack(rep.cayley().as_bytes());

    for image in inner.iter().copied().permutations(inner.len()) {
        let mut map: Vec<Element> = rep.elements().collect();
        for (&src, &dst) in inner.iter().zip(&image) {
            map[src] = dst;
        }
        let f = Bijection::new(map)?;
        transport_cells(rep, &f, &f.inverse(), &mut cells);
        let key = PackedTable::pack(&cells);
        if key == own {
            fixed_points += 1;
        }
        if seen.insert(key) && keep {
            let flat: Vec<Element> = cells.iter().map(|&c| c as Element).collect();
            let t = crate::table::validate(n, &flat, rep.unit())?
                .with_labels(rep.labels().to_vec())?;
            kept.push(t);
        }
    }

    let aut_order = automorphisms(rep).len() as u64;
    if aut_order != fixed_points {
        return Err(Error::Invariant(format!(
            "class {sig}: backtracking finds {aut_order} automorphisms, the bijection scan {fixed_points}"
        )));
    }
    Ok((
        ClassCensus {
            signature: sig.clone(),
            aut_order,
            aut_order_brute_force: fixed_points,
            distinct_tables: seen.len() as u64,
        },
        kept,
    ))
}
