//! Chains, direct products and transport of structure.

use std::fmt;

use crate::error::{Error, Result};
use crate::table::{default_labels, Element, WajsbergTable};

/// The unique Wajsberg structure on the chain `x0 < x1 < … < x(n-1)`:
/// `xi∘xj = 1` when `i ≤ j`, otherwise `x((n-1)-i+j)`.
pub fn chain(n: usize) -> Result<WajsbergTable> {
    if n == 0 {
        return Err(Error::Malformed("a chain needs at least one element".into()));
    }
    let top = n - 1;
    WajsbergTable::from_fn(n, top, |i, j| if i <= j { top } else { top - i + j })
}

/// Direct product with coordinatewise operation. The pair `(i, j)` is the
/// element `i·|b| + j`, so carriers are listed row-major on the left factor.
pub fn product(a: &WajsbergTable, b: &WajsbergTable) -> WajsbergTable {
    let m = b.order();
    let n = a.order() * m;
    let unit = a.unit() * m + b.unit();
    let table = WajsbergTable::from_fn(n, unit, |x, y| {
        a.op(x / m, y / m) * m + b.op(x % m, y % m)
    })
    .expect("product of Wajsberg algebras is a Wajsberg algebra");
    let zero = table.zero();
    table
        .with_labels(default_labels(n, zero, unit))
        .expect("default labels are valid")
}

/// Left-folded product of several factors: `((f0 × f1) × f2) × …`.
pub fn product_all<'a, I>(factors: I) -> Option<WajsbergTable>
where
    I: IntoIterator<Item = &'a WajsbergTable>,
{
    let mut iter = factors.into_iter();
    let first = iter.next()?.clone();
    Some(iter.fold(first, |acc, f| product(&acc, f)))
}

/// Product of chains of the given sizes, folded left in the given order.
pub fn chain_product(sizes: &[usize]) -> Result<WajsbergTable> {
    let chains = sizes.iter().map(|&s| chain(s)).collect::<Result<Vec<_>>>()?;
    product_all(&chains).ok_or_else(|| Error::Malformed("no factors given".into()))
}

/// A permutation of `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bijection {
    map: Vec<Element>,
}

impl Bijection {
    pub fn identity(n: usize) -> Self {
        Bijection {
            map: (0..n).collect(),
        }
    }

    pub fn new(map: Vec<Element>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &e in &map {
            if e >= n || std::mem::replace(&mut seen[e], true) {
                return Err(Error::Malformed(format!("{map:?} is not a permutation")));
            }
        }
        Ok(Bijection { map })
    }

    /// Builds a bijection on `table`'s carrier from `(from, to)` label pairs;
    /// unmentioned elements are fixed.
    pub fn from_labels(table: &WajsbergTable, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut map: Vec<Element> = table.elements().collect();
        for (from, to) in pairs {
            map[table.expect_element(from)?] = table.expect_element(to)?;
        }
        Self::new(map)
    }

    pub fn order(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Bijection { map: inv }
    }

    /// `self ∘ inner`, i.e. apply `inner` first.
    pub fn after(&self, inner: &Bijection) -> Self {
        Bijection {
            map: inner.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `O->O A->B …` using the given source and target labels.
    pub fn describe(&self, from: &WajsbergTable, to: &WajsbergTable) -> String {
        self.map
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}->{}", from.label(x), to.label(y)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.map)
    }
}

/// Transport of structure along `f`: the table with `f(a)∘′f(b) = f(a∘b)`.
/// `f` must fix the bottom and the unit. Labels are kept positionally.
pub fn transport(w: &WajsbergTable, f: &Bijection) -> Result<WajsbergTable> {
    if f.order() != w.order() {
        return Err(Error::Precondition(format!(
            "bijection on {} elements applied to an algebra of order {}",
            f.order(),
            w.order()
        )));
    }
    if f.apply(w.zero()) != w.zero() || f.apply(w.unit()) != w.unit() {
        return Err(Error::Precondition(
            "transport requires a bijection fixing the bottom and the unit".into(),
        ));
    }
    let inv = f.inverse();
    let table = WajsbergTable::from_fn(w.order(), w.unit(), |x, y| {
        f.apply(w.op(inv.apply(x), inv.apply(y)))
    })
    .map_err(|e| Error::Invariant(format!("transported table failed validation: {e}")))?;
    table.with_labels(w.labels().to_vec())
}

/// Raw transported operation cells without validation, for bulk scans.
pub(crate) fn transport_cells(w: &WajsbergTable, f: &Bijection, inv: &Bijection, out: &mut [u8]) {
    let n = w.order();
    for x in 0..n {
        let a = inv.apply(x);
        for y in 0..n {
            out[x * n + y] = f.apply(w.op(a, inv.apply(y))) as u8;
        }
    }
}
