//! Ideals, prime ideals, congruences, quotients and the decomposition into
//! a product of chains.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::construct::{product_all, Bijection};
use crate::error::{Error, Result};
use crate::iso::{is_homomorphism, ChainSignature};
use crate::table::{Element, WajsbergTable};

/// Subsets up to this size are searched exhaustively for ideals.
pub const MAX_IDEAL_SEARCH_ORDER: usize = 20;

/// A subset of the carrier, as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealSet {
    n: usize,
    members: u64,
}

impl IdealSet {
    pub fn from_mask(n: usize, members: u64) -> Self {
        IdealSet { n, members }
    }

    pub fn from_elements(n: usize, elements: impl IntoIterator<Item = Element>) -> Self {
        let members = elements.into_iter().fold(0u64, |m, e| m | 1 << e);
        IdealSet { n, members }
    }

    pub fn from_labels(w: &WajsbergTable, labels: &[&str]) -> Result<Self> {
        let elements = labels
            .iter()
            .map(|l| w.expect_element(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_elements(w.order(), elements))
    }

    pub fn mask(&self) -> u64 {
        self.members
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members >> x & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.n).filter(|&x| self.contains(x))
    }

    pub fn intersection(&self, other: &IdealSet) -> IdealSet {
        IdealSet {
            n: self.n,
            members: self.members & other.members,
        }
    }

    /// `{O,A,B}` in the table's labels.
    pub fn describe(&self, w: &WajsbergTable) -> String {
        format!("{{{}}}", self.elements().map(|x| w.label(x)).join(","))
    }
}

/// How the primality condition quantifies over elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PrimeQuantifier {
    /// For all `x, y` in the carrier (the standard notion).
    #[default]
    Carrier,
    /// For all `x, y` in the ideal only; kept for auditing the literal wording.
    Members,
}

/// Precomputed bitmasks for fast ideal tests.
struct IdealTester {
    down: Vec<u64>,
    /// `sum[x][y] = x̄∘y` (that is, `x ⊕ y`).
    sum: Vec<Vec<Element>>,
    zero: Element,
}

impl IdealTester {
    fn new(w: &WajsbergTable) -> Self {
        let order = w.natural_order();
        IdealTester {
            down: w.elements().map(|x| order.down_set(x)).collect(),
            sum: w
                .elements()
                .map(|x| w.elements().map(|y| w.op(w.complement(x), y)).collect())
                .collect(),
            zero: w.zero(),
        }
    }

    fn test(&self, mask: u64) -> bool {
        if mask >> self.zero & 1 == 0 {
            return false;
        }
        let members: Vec<Element> = (0..self.down.len()).filter(|&x| mask >> x & 1 == 1).collect();
        members.iter().all(|&x| self.down[x] & !mask == 0)
            && members
                .iter()
                .all(|&x| members.iter().all(|&y| mask >> self.sum[x][y] & 1 == 1))
    }
}

/// `θ ∈ S`, `S` downward closed, and `x, y ∈ S ⇒ x̄∘y ∈ S`.
pub fn is_ideal(w: &WajsbergTable, s: &IdealSet) -> bool {
    s.n == w.order() && IdealTester::new(w).test(s.members)
}

/// All ideals in ascending bitmask order. With `proper_only`, `{θ}` and the
/// whole carrier are left out.
pub fn enumerate_ideals(w: &WajsbergTable, proper_only: bool) -> Result<Vec<IdealSet>> {
    let n = w.order();
    if n > MAX_IDEAL_SEARCH_ORDER {
        return Err(Error::Precondition(format!(
            "exhaustive ideal search is limited to order {MAX_IDEAL_SEARCH_ORDER}, got {n}"
        )));
    }
    let tester = IdealTester::new(w);
    let full = full_mask(n);
    let bottom = 1u64 << w.zero();
    Ok((0..=full)
        .filter(|&m| tester.test(m))
        .filter(|&m| !proper_only || (m != bottom && m != full))
        .map(|m| IdealSet::from_mask(n, m))
        .collect())
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// `(x∘y)′ ∈ P` or `(y∘x)′ ∈ P`, quantified as requested.
pub fn is_prime_ideal_with(w: &WajsbergTable, p: &IdealSet, quantifier: PrimeQuantifier) -> bool {
    let range: Vec<Element> = match quantifier {
        PrimeQuantifier::Carrier => w.elements().collect(),
        PrimeQuantifier::Members => p.elements().collect(),
    };
    range.iter().all(|&x| {
        range.iter().all(|&y| {
            p.contains(w.complement(w.op(x, y))) || p.contains(w.complement(w.op(y, x)))
        })
    })
}

pub fn is_prime_ideal(w: &WajsbergTable, p: &IdealSet) -> bool {
    is_prime_ideal_with(w, p, PrimeQuantifier::Carrier)
}

/// Blocks of `x ≡ y iff (x∘y)∘(y∘x)′ ∈ I`, each sorted, ordered by least
/// member. Fails with an invariant error if the relation is not a congruence.
pub fn congruence(w: &WajsbergTable, ideal: &IdealSet) -> Result<Vec<Vec<Element>>> {
    if !is_ideal(w, ideal) {
        return Err(Error::Precondition(format!(
            "{} is not an ideal",
            ideal.describe(w)
        )));
    }
    let n = w.order();
    let related = |x: Element, y: Element| ideal.contains(w.distance(x, y));
    for x in 0..n {
        if !related(x, x) {
            return Err(Error::Invariant(format!("congruence not reflexive at {x}")));
        }
        for y in 0..n {
            if related(x, y) != related(y, x) {
                return Err(Error::Invariant(format!("congruence not symmetric at ({x},{y})")));
            }
        }
    }
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<Element>> = Vec::new();
    for x in 0..n {
        if block_of[x] != usize::MAX {
            continue;
        }
        let block: Vec<Element> = (x..n).filter(|&y| related(x, y)).collect();
        for &y in &block {
            if block_of[y] != usize::MAX {
                return Err(Error::Invariant("congruence not transitive".into()));
            }
            block_of[y] = blocks.len();
        }
        blocks.push(block);
    }
    for x in 0..n {
        for y in 0..n {
            if related(x, y) != (block_of[x] == block_of[y]) {
                return Err(Error::Invariant("congruence not transitive".into()));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if block_of[x] != block_of[y] {
                continue;
            }
            if block_of[w.complement(x)] != block_of[w.complement(y)] {
                return Err(Error::Invariant("congruence not compatible with complement".into()));
            }
            for z in 0..n {
                if block_of[w.op(x, z)] != block_of[w.op(y, z)]
                    || block_of[w.op(z, x)] != block_of[w.op(z, y)]
                {
                    return Err(Error::Invariant("congruence not compatible with ∘".into()));
                }
            }
        }
    }
    let zero_block = IdealSet::from_elements(n, blocks[block_of[w.zero()]].iter().copied());
    if zero_block != *ideal {
        return Err(Error::Invariant("block of θ differs from the ideal".into()));
    }
    Ok(blocks)
}

/// `W/I` with its projection.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub classes: Vec<Vec<Element>>,
    pub table: WajsbergTable,
    pub projection: Vec<Element>,
}

impl QuotientAlgebra {
    /// `O={O,C} A={A,D} E={B,E}`, block label first.
    pub fn describe_classes(&self, source: &WajsbergTable) -> String {
        self.classes
            .iter()
            .enumerate()
            .map(|(b, members)| {
                format!(
                    "{}={{{}}}",
                    self.table.label(b),
                    members.iter().map(|&x| source.label(x)).join(",")
                )
            })
            .join(" ")
    }
}

/// Quotient by the congruence of an ideal. Blocks keep the order of
/// [`congruence`]; a block is labelled by its bottom, its unit, or otherwise
/// its least member.
pub fn quotient(w: &WajsbergTable, ideal: &IdealSet) -> Result<QuotientAlgebra> {
    let classes = congruence(w, ideal)?;
    let mut projection = vec![0; w.order()];
    for (b, members) in classes.iter().enumerate() {
        for &x in members {
            projection[x] = b;
        }
    }
    let k = classes.len();
    let unit = projection[w.unit()];
    let table = WajsbergTable::from_fn(k, unit, |a, b| {
        projection[w.op(classes[a][0], classes[b][0])]
    })
    .map_err(|e| Error::Invariant(format!("quotient failed validation: {e}")))?;
    let labels = classes
        .iter()
        .enumerate()
        .map(|(b, members)| {
            let rep = if b == projection[w.zero()] {
                w.zero()
            } else if b == unit {
                w.unit()
            } else {
                members[0]
            };
            w.label(rep).to_string()
        })
        .collect();
    let table = table.with_labels(labels)?;
    Ok(QuotientAlgebra {
        classes,
        table,
        projection,
    })
}

/// A representation of `W` as a product of chains `W/P1 × … × W/Pm`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub signature: ChainSignature,
    pub primes: Vec<IdealSet>,
    pub quotients: Vec<QuotientAlgebra>,
    /// Left-folded product of the quotient tables, in family order.
    pub product: WajsbergTable,
    /// The canonical isomorphism `x ↦ ([x]1, …, [x]m)` into `product`.
    pub embedding: Bijection,
}

#[derive(Serialize)]
struct DecompositionSummary {
    signature: Vec<usize>,
    primes: Vec<String>,
    quotient_sizes: Vec<usize>,
}

impl Decomposition {
    pub fn summary_json(&self, w: &WajsbergTable) -> serde_json::Value {
        serde_json::to_value(DecompositionSummary {
            signature: self.signature.factors().to_vec(),
            primes: self.primes.iter().map(|p| p.describe(w)).collect(),
            quotient_sizes: self.quotients.iter().map(|q| q.table.order()).collect(),
        })
        .expect("summary serializes")
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signature)
    }
}

/// Finds the first family of prime ideals (by size, then bitmask order) whose
/// quotient sizes multiply to `n` and whose intersection is `{θ}`, and checks
/// that the canonical map into the product of quotients is an isomorphism.
pub fn decompose(w: &WajsbergTable) -> Result<Decomposition> {
    let n = w.order();
    let full = full_mask(n);
    let primes: Vec<(IdealSet, QuotientAlgebra)> = enumerate_ideals(w, false)?
        .into_iter()
        .filter(|p| is_prime_ideal(w, p))
        .filter(|p| n == 1 || p.mask() != full)
        .map(|p| quotient(w, &p).map(|q| (p, q)))
        .collect::<Result<_>>()?;
    for (p, q) in &primes {
        if !q.table.is_chain() {
            return Err(Error::Invariant(format!(
                "quotient by prime ideal {} is not a chain",
                p.describe(w)
            )));
        }
    }
    let bottom = 1u64 << w.zero();
    for size in 1..=primes.len() {
        for family in primes.iter().combinations(size) {
            let sizes_product: usize = family.iter().map(|(_, q)| q.table.order()).product();
            let meet = family.iter().fold(full, |m, (p, _)| m & p.mask());
            if sizes_product != n || meet != bottom {
                continue;
            }
            return assemble(w, family.into_iter().cloned().collect());
        }
    }
    Err(Error::Invariant(
        "no prime-ideal family decomposes the algebra".into(),
    ))
}

fn assemble(w: &WajsbergTable, family: Vec<(IdealSet, QuotientAlgebra)>) -> Result<Decomposition> {
    let (primes, quotients): (Vec<_>, Vec<_>) = family.into_iter().unzip();
    let product = product_all(quotients.iter().map(|q| &q.table))
        .ok_or_else(|| Error::Invariant("empty family".into()))?;
    let map: Vec<Element> = w
        .elements()
        .map(|x| {
            quotients
                .iter()
                .fold(0, |idx, q| idx * q.table.order() + q.projection[x])
        })
        .collect();
    let embedding = Bijection::new(map)
        .map_err(|_| Error::Invariant("canonical map into the product is not bijective".into()))?;
    if !is_homomorphism(w, &product, embedding.as_slice()) {
        return Err(Error::Invariant(
            "canonical map into the product is not a homomorphism".into(),
        ));
    }
    let signature = ChainSignature::new(quotients.iter().map(|q| q.table.order()).collect());
    Ok(Decomposition {
        signature,
        primes,
        quotients,
        product,
        embedding,
    })
}
