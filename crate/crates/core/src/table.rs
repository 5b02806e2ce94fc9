//! Finite Wajsberg algebras as validated operation tables.
//!
//! A table stores only the implication `∘` and the unit. The bottom element
//! and the complement `x̄ = x∘θ` are always derived from the table during
//! validation, so a table can never carry an inconsistent complement.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::error::{Error, Result};

/// Index of a carrier element, `0..n`.
pub type Element = usize;

/// Largest carrier size accepted anywhere in the crate. Subsets of the
/// carrier are `u64` bitmasks.
pub const MAX_ORDER: usize = 64;

/// Cap on witnesses recorded per violation kind. The count is always exact.
const WITNESS_CAP: usize = 32;

/// A square operation matrix over `0..n`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cayley {
    n: usize,
    cells: Vec<u8>,
}

impl Cayley {
    pub(crate) fn from_fn(n: usize, mut f: impl FnMut(Element, Element) -> Element) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                cells.push(f(i, j) as u8);
            }
        }
        Cayley { n, cells }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: Element, j: Element) -> Element {
        self.cells[i * self.n + j] as Element
    }

    pub fn row(&self, i: Element) -> impl Iterator<Item = Element> + '_ {
        self.cells[i * self.n..(i + 1) * self.n]
            .iter()
            .map(|&c| c as Element)
    }

    /// Raw cells, one byte per entry.
    pub fn as_bytes(&self) -> &[u8] {
        &self.cells
    }

    pub fn to_rows(&self) -> Vec<Vec<Element>> {
        (0..self.n).map(|i| self.row(i).collect()).collect()
    }
}

/// Which law a table or MV view breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `1∘x = x`
    AxiomI,
    /// `(x∘y)∘((y∘z)∘(x∘z)) = 1`
    AxiomII,
    /// `(x∘y)∘y = (y∘x)∘x`
    AxiomIII,
    /// `(x̄∘ȳ)∘(y∘x) = 1`
    AxiomIV,
    /// No element lies below every other one (or more than one does).
    NoUniqueBottom,
    /// Some `x` fails `x ≤ 1`.
    UnitNotTop,
    NotReflexive,
    NotAntisymmetric,
    NotTransitive,
    /// `x̄̄ ≠ x`
    ComplementNotInvolutive,
    MvNegationNotInvolutive,
    /// `x ⊕ θ′ ≠ θ′`
    MvAbsorption,
    /// `(x′⊕y)′⊕y ≠ (y′⊕x)′⊕x`
    MvLukasiewicz,
    MvNotCommutative,
    MvNotAssociative,
    /// `x ⊕ θ ≠ x`
    MvIdentity,
    /// `⊙` or `⊖` disagree with their definitions through `⊕` and `′`.
    MvDerivedOperation,
}

impl ViolationKind {
    pub fn law(self) -> &'static str {
        use ViolationKind::*;
        match self {
            AxiomI => "axiom (i): 1∘x = x",
            AxiomII => "axiom (ii): (x∘y)∘((y∘z)∘(x∘z)) = 1",
            AxiomIII => "axiom (iii): (x∘y)∘y = (y∘x)∘x",
            AxiomIV => "axiom (iv): (x̄∘ȳ)∘(y∘x) = 1",
            NoUniqueBottom => "natural order has a unique bottom",
            UnitNotTop => "natural order: x ≤ 1",
            NotReflexive => "natural order is reflexive",
            NotAntisymmetric => "natural order is antisymmetric",
            NotTransitive => "natural order is transitive",
            ComplementNotInvolutive => "complement is an involution",
            MvNegationNotInvolutive => "MV: (x′)′ = x",
            MvAbsorption => "MV: x ⊕ θ′ = θ′",
            MvLukasiewicz => "MV: (x′⊕y)′⊕y = (y′⊕x)′⊕x",
            MvNotCommutative => "MV: ⊕ is commutative",
            MvNotAssociative => "MV: ⊕ is associative",
            MvIdentity => "MV: x ⊕ θ = x",
            MvDerivedOperation => "MV: ⊙ and ⊖ agree with ⊕ and ′",
        }
    }
}

/// One violated law, its exact failure count and a sample of witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub count: usize,
    /// Witness tuples in index-ascending scan order; arity depends on the law.
    pub witnesses: Vec<Vec<Element>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn get(&self, kind: ViolationKind) -> Option<&Violation> {
        self.violations.iter().find(|v| v.kind == kind)
    }

    pub fn kinds(&self) -> Vec<ViolationKind> {
        self.violations.iter().map(|v| v.kind).collect()
    }

    fn record(&mut self, kind: ViolationKind, witness: &[Element]) {
        let entry = match self.violations.iter_mut().position(|v| v.kind == kind) {
            Some(i) => &mut self.violations[i],
            None => {
                self.violations.push(Violation {
                    kind,
                    count: 0,
                    witnesses: Vec::new(),
                });
                self.violations.last_mut().unwrap()
            }
        };
        entry.count += 1;
        if entry.witnesses.len() < WITNESS_CAP {
            entry.witnesses.push(witness.to_vec());
        }
    }

    /// Human-readable listing using the given element labels.
    pub fn describe(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for v in &self.violations {
            let sample: Vec<String> = v
                .witnesses
                .iter()
                .take(4)
                .map(|w| {
                    let names: Vec<&str> = w.iter().map(|&e| label_or_index(labels, e)).collect();
                    format!("({})", names.join(","))
                })
                .collect();
            out.push_str(&format!(
                "{} fails for {} case(s), e.g. {}\n",
                v.kind.law(),
                v.count,
                sample.join(" ")
            ));
        }
        out
    }
}

fn label_or_index(labels: &[String], e: Element) -> &str {
    labels.get(e).map(String::as_str).unwrap_or("?")
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{} ({} case(s))", v.kind.law(), v.count))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Conventional labels: `O` for the bottom, `E` for the unit, letters in
/// between (`A..D` up to order 6, `X,Y,Z,T,U,(S),V` for orders 7 to 9) and
/// `e0..e(n-1)` beyond.
pub fn default_labels(n: usize, zero: Element, unit: Element) -> Vec<String> {
    if n > 9 {
        return (0..n).map(|i| format!("e{i}")).collect();
    }
    if n == 1 {
        return vec!["E".to_string()];
    }
    let middle: &[&str] = match n {
        0..=6 => &["A", "B", "C", "D"],
        7 => &["X", "Y", "Z", "T", "U"],
        8 => &["X", "Y", "Z", "T", "U", "V"],
        _ => &["X", "Y", "Z", "T", "U", "S", "V"],
    };
    let mut rest = middle.iter();
    (0..n)
        .map(|i| {
            if i == zero {
                "O".to_string()
            } else if i == unit {
                "E".to_string()
            } else {
                rest.next().unwrap().to_string()
            }
        })
        .collect()
}

/// A validated finite Wajsberg algebra `(W, ∘, ¯, 1)`.
///
/// Equality and hashing look at the operation and the unit only; labels are
/// presentation.
#[derive(Clone, Debug)]
pub struct WajsbergTable {
    op: Cayley,
    unit: Element,
    zero: Element,
    complement: Vec<u8>,
    labels: Vec<String>,
}

impl PartialEq for WajsbergTable {
    fn eq(&self, other: &Self) -> bool {
        self.unit == other.unit && self.op == other.op
    }
}

impl Eq for WajsbergTable {}

impl Hash for WajsbergTable {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.unit.hash(state);
        self.op.hash(state);
    }
}

/// Checks every law on a raw row-major table and returns all violations.
///
/// Fails with [`Error::Malformed`] only for structural problems (sizes and
/// out-of-range entries).
pub fn check_axioms(n: usize, op: &[Element], unit: Element) -> Result<ViolationReport> {
    check_shape(n, op, unit)?;
    let cell = |i: Element, j: Element| op[i * n + j];
    let mut report = ViolationReport::default();

    for x in 0..n {
        if cell(unit, x) != x {
            report.record(ViolationKind::AxiomI, &[x]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = cell(x, y);
            for z in 0..n {
                if cell(xy, cell(cell(y, z), cell(x, z))) != unit {
                    report.record(ViolationKind::AxiomII, &[x, y, z]);
                }
            }
            if cell(xy, y) != cell(cell(y, x), x) {
                report.record(ViolationKind::AxiomIII, &[x, y]);
            }
        }
    }

    let leq = |x: Element, y: Element| cell(x, y) == unit;
    for x in 0..n {
        if !leq(x, x) {
            report.record(ViolationKind::NotReflexive, &[x]);
        }
        if !leq(x, unit) {
            report.record(ViolationKind::UnitNotTop, &[x]);
        }
        for y in 0..n {
            if x < y && leq(x, y) && leq(y, x) {
                report.record(ViolationKind::NotAntisymmetric, &[x, y]);
            }
            for z in 0..n {
                if leq(x, y) && leq(y, z) && !leq(x, z) {
                    report.record(ViolationKind::NotTransitive, &[x, y, z]);
                }
            }
        }
    }

    let bottoms: Vec<Element> = (0..n).filter(|&b| (0..n).all(|x| leq(b, x))).collect();
    if bottoms.len() != 1 {
        report.record(ViolationKind::NoUniqueBottom, &bottoms);
        return Ok(report);
    }
    let zero = bottoms[0];
    let bar = |x: Element| cell(x, zero);
    for x in 0..n {
        if bar(bar(x)) != x {
            report.record(ViolationKind::ComplementNotInvolutive, &[x]);
        }
        for y in 0..n {
            if cell(cell(bar(x), bar(y)), cell(y, x)) != unit {
                report.record(ViolationKind::AxiomIV, &[x, y]);
            }
        }
    }
    Ok(report)
}

fn check_shape(n: usize, op: &[Element], unit: Element) -> Result<()> {
    if n == 0 {
        return Err(Error::Malformed("carrier must have at least one element".into()));
    }
    if n > MAX_ORDER {
        return Err(Error::Malformed(format!(
            "carrier size {n} exceeds the supported maximum {MAX_ORDER}"
        )));
    }
    if op.len() != n * n {
        return Err(Error::Malformed(format!(
            "operation table has {} entries, expected {}",
            op.len(),
            n * n
        )));
    }
    if unit >= n {
        return Err(Error::Malformed(format!("unit index {unit} out of range 0..{n}")));
    }
    if let Some(pos) = op.iter().position(|&e| e >= n) {
        return Err(Error::Malformed(format!(
            "entry at row {}, column {} is {}, out of range 0..{n}",
            pos / n,
            pos % n,
            op[pos]
        )));
    }
    Ok(())
}

/// Validates a raw row-major table with default labels.
pub fn validate(n: usize, op: &[Element], unit: Element) -> Result<WajsbergTable> {
    let report = check_axioms(n, op, unit)?;
    if !report.is_empty() {
        return Err(Error::Violations(report));
    }
    let op = Cayley {
        n,
        cells: op.iter().map(|&e| e as u8).collect(),
    };
    let zero = (0..n)
        .find(|&b| (0..n).all(|x| op.get(b, x) == unit))
        .expect("validated table has a bottom");
    let complement = (0..n).map(|x| op.get(x, zero) as u8).collect();
    Ok(WajsbergTable {
        labels: default_labels(n, zero, unit),
        op,
        unit,
        zero,
        complement,
    })
}

impl WajsbergTable {
    /// Validates a table given as rows.
    pub fn from_rows(rows: &[Vec<Element>], unit: Element) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed("operation table is not square".into()));
        }
        let flat: Vec<Element> = rows.iter().flatten().copied().collect();
        validate(n, &flat, unit)
    }

    /// Builds a table from an operation known to satisfy the axioms; the
    /// result is still fully checked.
    pub(crate) fn from_fn(
        n: usize,
        unit: Element,
        f: impl FnMut(Element, Element) -> Element,
    ) -> Result<Self> {
        let op = Cayley::from_fn(n, f);
        let flat: Vec<Element> = op.as_bytes().iter().map(|&c| c as Element).collect();
        validate(n, &flat, unit)
    }

    /// Replaces the display labels. Labels must be unique and non-empty.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        check_labels(&labels, self.order())?;
        self.labels = labels;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.op.n
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.op.n
    }

    pub fn unit(&self) -> Element {
        self.unit
    }

    /// The bottom `θ = 1̄` of the natural order.
    pub fn zero(&self) -> Element {
        self.zero
    }

    /// `x̄ = x∘θ`.
    #[inline]
    pub fn complement(&self, x: Element) -> Element {
        self.complement[x] as Element
    }

    /// `x∘y`.
    #[inline]
    pub fn op(&self, x: Element, y: Element) -> Element {
        self.op.get(x, y)
    }

    pub fn cayley(&self) -> &Cayley {
        &self.op
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Element) -> &str {
        &self.labels[x]
    }

    pub fn element(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label)
    }

    /// Looks up an element by label, failing with a precondition error.
    pub fn expect_element(&self, label: &str) -> Result<Element> {
        self.element(label)
            .ok_or_else(|| Error::Precondition(format!("no element labelled {label:?}")))
    }

    /// `x ≤ y` iff `x∘y = 1`.
    #[inline]
    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.op(x, y) == self.unit
    }

    pub fn natural_order(&self) -> OrderRelation {
        let n = self.order();
        let leq = (0..n * n).map(|k| self.leq(k / n, k % n)).collect();
        OrderRelation {
            n,
            leq,
            bottom: self.zero,
            top: self.unit,
        }
    }

    pub fn is_chain(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.leq(x, y) || self.leq(y, x)))
    }

    /// `d(x,y) = (x∘y)∘(y∘x)′`, the Wajsberg form of `(x⊖y)⊕(y⊖x)`.
    pub fn distance(&self, x: Element, y: Element) -> Element {
        self.op(self.op(x, y), self.complement(self.op(y, x)))
    }

    pub fn to_mv(&self) -> MvView {
        let n = self.order();
        let neg: Vec<u8> = self.complement.clone();
        let plus = Cayley::from_fn(n, |x, y| self.op(self.complement(x), y));
        let times = Cayley::from_fn(n, |x, y| {
            self.complement(self.op(x, self.complement(y)))
        });
        let minus = Cayley::from_fn(n, |x, y| times.get(x, self.complement(y)));
        MvView {
            plus,
            times,
            minus,
            neg,
            zero: self.zero,
        }
    }

    /// Operation rows, for serialization.
    pub fn rows(&self) -> Vec<Vec<Element>> {
        self.op.to_rows()
    }
}

pub(crate) fn check_labels(labels: &[String], n: usize) -> Result<()> {
    if labels.len() != n {
        return Err(Error::Malformed(format!(
            "{} labels given for a carrier of size {n}",
            labels.len()
        )));
    }
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() || l.chars().any(|c| c.is_whitespace() || c == ',' || c == '|' || c == '#')
        {
            return Err(Error::Malformed(format!(
                "label {l:?} must be non-empty and free of whitespace, ',', '|' and '#'"
            )));
        }
        if labels[..i].contains(l) {
            return Err(Error::Malformed(format!("duplicate label {l:?}")));
        }
    }
    Ok(())
}

/// The natural partial order `x ≤ y iff x∘y = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderRelation {
    n: usize,
    leq: Vec<bool>,
    bottom: Element,
    top: Element,
}

impl OrderRelation {
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.leq[x * self.n + y]
    }

    pub fn bottom(&self) -> Element {
        self.bottom
    }

    pub fn top(&self) -> Element {
        self.top
    }

    pub fn is_total(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.leq(x, y) || self.leq(y, x)))
    }

    /// Strict relations `x < y` with neither side the bottom or the top.
    pub fn inner_relations(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                let bound = |e| e == self.bottom || e == self.top;
                if x != y && !bound(x) && !bound(y) && self.leq(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Bitmask of the elements below `x` (inclusive).
    pub fn down_set(&self, x: Element) -> u64 {
        (0..self.n)
            .filter(|&y| self.leq(y, x))
            .fold(0, |m, y| m | 1 << y)
    }

    pub fn up_set(&self, x: Element) -> u64 {
        (0..self.n)
            .filter(|&y| self.leq(x, y))
            .fold(0, |m, y| m | 1 << y)
    }
}

/// The MV-algebra `(W, ⊕, ⊙, ⊖, ′, θ)` derived from a Wajsberg table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvView {
    pub plus: Cayley,
    pub times: Cayley,
    pub minus: Cayley,
    pub neg: Vec<u8>,
    pub zero: Element,
}

impl MvView {
    pub fn order(&self) -> usize {
        self.neg.len()
    }

    pub fn plus(&self, x: Element, y: Element) -> Element {
        self.plus.get(x, y)
    }

    pub fn times(&self, x: Element, y: Element) -> Element {
        self.times.get(x, y)
    }

    pub fn minus(&self, x: Element, y: Element) -> Element {
        self.minus.get(x, y)
    }

    pub fn neg(&self, x: Element) -> Element {
        self.neg[x] as Element
    }

    /// Builds a view from raw `⊕`, `′` and `θ`, deriving `⊙` and `⊖`.
    pub fn from_parts(plus: &[Vec<Element>], neg: &[Element], zero: Element) -> Result<Self> {
        let n = neg.len();
        if n == 0 || n > MAX_ORDER || plus.len() != n || plus.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed("MV tables must be square and agree in size".into()));
        }
        let in_range = |e: &Element| *e < n;
        if !neg.iter().all(in_range) || !plus.iter().flatten().all(in_range) || zero >= n {
            return Err(Error::Malformed("MV table entry out of range".into()));
        }
        let plus = Cayley::from_fn(n, |x, y| plus[x][y]);
        let times = Cayley::from_fn(n, |x, y| neg[plus.get(neg[x], neg[y])]);
        let minus = Cayley::from_fn(n, |x, y| times.get(x, neg[y]));
        Ok(MvView {
            plus,
            times,
            minus,
            neg: neg.iter().map(|&e| e as u8).collect(),
            zero,
        })
    }

    /// Checks the MV-algebra laws exhaustively.
    pub fn check(&self) -> ViolationReport {
        let n = self.order();
        let mut report = ViolationReport::default();
        let top = self.neg(self.zero);
        for x in 0..n {
            if self.neg(self.neg(x)) != x {
                report.record(ViolationKind::MvNegationNotInvolutive, &[x]);
            }
            if self.plus(x, top) != top {
                report.record(ViolationKind::MvAbsorption, &[x]);
            }
            if self.plus(x, self.zero) != x {
                report.record(ViolationKind::MvIdentity, &[x]);
            }
            for y in 0..n {
                let lhs = self.plus(self.neg(self.plus(self.neg(x), y)), y);
                let rhs = self.plus(self.neg(self.plus(self.neg(y), x)), x);
                if lhs != rhs {
                    report.record(ViolationKind::MvLukasiewicz, &[x, y]);
                }
                if self.plus(x, y) != self.plus(y, x) {
                    report.record(ViolationKind::MvNotCommutative, &[x, y]);
                }
                let times = self.neg(self.plus(self.neg(x), self.neg(y)));
                if self.times(x, y) != times || self.minus(x, y) != self.times(x, self.neg(y)) {
                    report.record(ViolationKind::MvDerivedOperation, &[x, y]);
                }
                for z in 0..n {
                    if self.plus(self.plus(x, y), z) != self.plus(x, self.plus(y, z)) {
                        report.record(ViolationKind::MvNotAssociative, &[x, y, z]);
                    }
                }
            }
        }
        report
    }
}

/// Rebuilds the Wajsberg table `x∘y = x′⊕y` from an MV view.
pub fn from_mv(mv: &MvView) -> Result<WajsbergTable> {
    let report = mv.check();
    if !report.is_empty() {
        return Err(Error::Violations(report));
    }
    let n = mv.order();
    WajsbergTable::from_fn(n, mv.neg(mv.zero), |x, y| mv.plus(mv.neg(x), y))
}
