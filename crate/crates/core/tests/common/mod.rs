//! Brute-force oracles. They work on plain row vectors and use nothing from
//! the library except to read a table's cells.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use itertools::Itertools;
use wajsberg::WajsbergTable;

pub mod props;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Raw {
    pub op: Vec<Vec<usize>>,
    pub unit: usize,
}

impl Raw {
    pub fn of(w: &WajsbergTable) -> Raw {
        Raw {
            op: w.rows(),
            unit: w.unit(),
        }
    }

    pub fn n(&self) -> usize {
        self.op.len()
    }

    /// The element `z` with `z∘x = 1` for every `x`, if there is exactly one.
    pub fn bottom(&self) -> Option<usize> {
        let n = self.n();
        let mut hits = (0..n).filter(|&z| (0..n).all(|x| self.op[z][x] == self.unit));
        match (hits.next(), hits.next()) {
            (Some(z), None) => Some(z),
            _ => None,
        }
    }

    pub fn bar(&self, x: usize) -> usize {
        self.op[x][self.bottom().unwrap()]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.op[x][y] == self.unit
    }
}

/// Chain cells straight from the formula `xi∘xj = 1` if `i ≤ j`, else
/// `x(n-1-i+j)`.
pub fn chain_raw(n: usize) -> Raw {
    let op = (0..n)
        .map(|i| (0..n).map(|j| if i <= j { n - 1 } else { n - 1 - i + j }).collect())
        .collect();
    Raw { op, unit: n - 1 }
}

/// Axioms (i)–(iv) over all triples, with the complement taken as `x∘θ`.
pub fn is_wajsberg(r: &Raw) -> bool {
    let n = r.n();
    let Some(z) = r.bottom() else { return false };
    let op = &r.op;
    let bar = |x: usize| op[x][z];
    for x in 0..n {
        if op[r.unit][x] != x {
            return false;
        }
        for y in 0..n {
            if op[op[x][y]][y] != op[op[y][x]][x] {
                return false;
            }
            if op[op[bar(x)][bar(y)]][op[y][x]] != r.unit {
                return false;
            }
            for w in 0..n {
                if op[op[x][y]][op[op[y][w]][op[x][w]]] != r.unit {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_hom(a: &Raw, b: &Raw, f: &[usize]) -> bool {
    let n = a.n();
    (0..n).all(|x| f[a.bar(x)] == b.bar(f[x]) && (0..n).all(|y| f[a.op[x][y]] == b.op[f[x]][f[y]]))
}

/// Every isomorphism `a → b`, scanning all permutations.
pub fn all_isomorphisms(a: &Raw, b: &Raw) -> Vec<Vec<usize>> {
    if a.n() != b.n() {
        return Vec::new();
    }
    (0..a.n())
        .permutations(a.n())
        .filter(|f| is_hom(a, b, f))
        .collect()
}

/// Every order isomorphism between the natural orders.
pub fn all_order_isomorphisms(a: &Raw, b: &Raw) -> Vec<Vec<usize>> {
    if a.n() != b.n() {
        return Vec::new();
    }
    let n = a.n();
    (0..n)
        .permutations(n)
        .filter(|f| (0..n).all(|x| (0..n).all(|y| a.leq(x, y) == b.leq(f[x], f[y]))))
        .collect()
}

/// Bijections of `0..n` fixing `zero` and `unit`.
pub fn bound_fixing_permutations(n: usize, zero: usize, unit: usize) -> Vec<Vec<usize>> {
    let inner: Vec<usize> = (0..n).filter(|&x| x != zero && x != unit).collect();
    inner
        .iter()
        .copied()
        .permutations(inner.len())
        .map(|image| {
            let mut f: Vec<usize> = (0..n).collect();
            for (&s, &d) in inner.iter().zip(&image) {
                f[s] = d;
            }
            f
        })
        .collect()
}

/// `op'[f a][f b] = f(op[a][b])`.
pub fn transport_raw(r: &Raw, f: &[usize]) -> Raw {
    let n = r.n();
    let mut op = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            op[f[a]][f[b]] = f[r.op[a][b]];
        }
    }
    Raw {
        op,
        unit: f[r.unit],
    }
}

/// Automorphisms among the bound-fixing bijections, by table equality after
/// transport.
pub fn count_automorphisms(r: &Raw) -> usize {
    let z = r.bottom().unwrap();
    bound_fixing_permutations(r.n(), z, r.unit)
        .iter()
        .filter(|f| transport_raw(r, f) == *r)
        .count()
}

/// Distinct tables among all transports of `r`.
pub fn distinct_transports(r: &Raw) -> usize {
    let z = r.bottom().unwrap();
    bound_fixing_permutations(r.n(), z, r.unit)
        .iter()
        .map(|f| transport_raw(r, f).op)
        .collect::<std::collections::HashSet<_>>()
        .len()
}

/// Ideals by the definition, over every subset, as sorted element lists.
pub fn ideals(r: &Raw) -> Vec<Vec<usize>> {
    let n = r.n();
    let z = r.bottom().unwrap();
    (0u64..1 << n)
        .map(|mask| (0..n).filter(|&x| mask >> x & 1 == 1).collect::<Vec<_>>())
        .filter(|s| {
            s.contains(&z)
                && s.iter().all(|&x| (0..n).all(|y| !r.leq(y, x) || s.contains(&y)))
                && s.iter().all(|&x| s.iter().all(|&y| s.contains(&r.op[r.bar(x)][y])))
        })
        .collect()
}

/// For all `x, y`: the complement of `x∘y` or of `y∘x` lies in `p`.
pub fn is_prime(r: &Raw, p: &[usize]) -> bool {
    let n = r.n();
    (0..n).all(|x| (0..n).all(|y| p.contains(&r.bar(r.op[x][y])) || p.contains(&r.bar(r.op[y][x]))))
}

/// Unordered factorizations of `n` into at least two factors ≥ 2, by listing
/// ordered ones and deduplicating sorted copies.
pub fn pi_by_ordered_factorizations(n: usize) -> usize {
    fn ordered(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(prefix.clone());
            return;
        }
        for f in 2..=rest {
            if rest.is_multiple_of(f) {
                prefix.push(f);
                ordered(rest / f, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut all = Vec::new();
    ordered(n, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|f| f.len() >= 2)
        .map(|mut f| {
            f.sort();
            f
        })
        .collect::<BTreeSet<_>>()
        .len()
}

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/reference")
}

/// Element lists named by labels, as a sorted set of sorted lists.
pub fn label_sets(w: &WajsbergTable, sets: &[&[&str]]) -> BTreeSet<Vec<usize>> {
    sets.iter()
        .map(|s| {
            let mut v: Vec<usize> = s.iter().map(|l| w.element(l).unwrap()).collect();
            v.sort();
            v
        })
        .collect()
}

/// All ordered chain-size lists (factors ≥ 2) with product at most `max`.
pub fn chain_size_lists(max: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, prod: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        for f in 2..=max / prod {
            prefix.push(f);
            extend(prefix, prod * f, max, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max, &mut out);
    out
}
