//! Isomorphism of algebras and of their natural orders, automorphism groups
//! and the chain signature.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::construct::Bijection;
use crate::error::{Error, Result};
use crate::ideal::decompose;
use crate::table::{Element, OrderRelation, WajsbergTable};

/// Sorted sizes of the chain factors of an algebra. Two finite Wajsberg
/// algebras are isomorphic exactly when their signatures agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainSignature(Vec<usize>);

impl ChainSignature {
    pub fn new(mut factors: Vec<usize>) -> Self {
        factors.sort_unstable();
        ChainSignature(factors)
    }

    pub fn factors(&self) -> &[usize] {
        &self.0
    }

    /// Carrier size of any algebra with this signature.
    pub fn order(&self) -> usize {
        self.0.iter().product()
    }

    pub fn is_chain(&self) -> bool {
        self.0.len() == 1
    }
}

impl fmt::Display for ChainSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for ChainSignature {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

pub fn signature(w: &WajsbergTable) -> Result<ChainSignature> {
    Ok(decompose(w)?.signature)
}

/// `f(θ) = θ′`, `f(x∘y) = f(x)·f(y)` and `f(x̄) = f(x)′` for every `x, y`.
pub fn is_homomorphism(a: &WajsbergTable, b: &WajsbergTable, f: &[Element]) -> bool {
    if f.len() != a.order() || f.iter().any(|&y| y >= b.order()) {
        return false;
    }
    f[a.zero()] == b.zero()
        && a.elements().all(|x| {
            f[a.complement(x)] == b.complement(f[x])
                && a.elements().all(|y| f[a.op(x, y)] == b.op(f[x], f[y]))
        })
}

/// The same test phrased through the MV operations: `f(θ) = 0`,
/// `f(x⊕y) = f(x)⊕f(y)`, `f(x′) = f(x)′`.
pub fn is_mv_homomorphism(a: &WajsbergTable, b: &WajsbergTable, f: &[Element]) -> bool {
    if f.len() != a.order() || f.iter().any(|&y| y >= b.order()) {
        return false;
    }
    let (ma, mb) = (a.to_mv(), b.to_mv());
    f[ma.zero] == mb.zero
        && a.elements().all(|x| {
            f[ma.neg(x)] == mb.neg(f[x])
                && a.elements().all(|y| f[ma.plus(x, y)] == mb.plus(f[x], f[y]))
        })
}

/// Whether `f` and its inverse both preserve the natural order.
pub fn is_order_isomorphism(a: &WajsbergTable, b: &WajsbergTable, f: &Bijection) -> bool {
    a.order() == b.order()
        && a
            .elements()
            .all(|x| a.elements().all(|y| a.leq(x, y) == b.leq(f.apply(x), f.apply(y))))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Algebra,
    Poset,
}

/// Backtracking over assignments in source-index order with ascending
/// candidates, so the first witness found is the lexicographically least.
struct Search<'a> {
    a: &'a WajsbergTable,
    b: &'a WajsbergTable,
    order_a: OrderRelation,
    order_b: OrderRelation,
    mode: Mode,
    candidates: Vec<Vec<Element>>,
    map: Vec<Option<Element>>,
    pre: Vec<Option<Element>>,
}

impl<'a> Search<'a> {
    fn new(a: &'a WajsbergTable, b: &'a WajsbergTable, mode: Mode) -> Option<Self> {
        if a.order() != b.order() {
            return None;
        }
        let (order_a, order_b) = (a.natural_order(), b.natural_order());
        let key = |w: &WajsbergTable, o: &OrderRelation, x: Element| {
            let fixed = if x == w.zero() {
                1
            } else if x == w.unit() {
                2
            } else {
                0
            };
            let self_dual = mode == Mode::Algebra && w.complement(x) == x;
            (
                fixed,
                o.down_set(x).count_ones(),
                o.up_set(x).count_ones(),
                self_dual,
            )
        };
        let candidates = a
            .elements()
            .map(|x| {
                let kx = key(a, &order_a, x);
                b.elements()
                    .filter(|&y| key(b, &order_b, y) == kx)
                    .collect()
            })
            .collect();
        let n = a.order();
        Some(Search {
            a,
            b,
            order_a,
            order_b,
            mode,
            candidates,
            map: vec![None; n],
            pre: vec![None; n],
        })
    }

    fn consistent(&self, x: Element) -> bool {
        let fx = self.map[x].unwrap();
        match self.mode {
            Mode::Poset => (0..self.a.order()).all(|y| match self.map[y] {
                Some(fy) => {
                    self.order_a.leq(x, y) == self.order_b.leq(fx, fy)
                        && self.order_a.leq(y, x) == self.order_b.leq(fy, fx)
                }
                None => true,
            }),
            Mode::Algebra => {
                let (a, b) = (self.a, self.b);
                if !self.agrees(a.complement(x), b.complement(fx)) {
                    return false;
                }
                (0..a.order()).all(|y| match self.map[y] {
                    Some(fy) => {
                        self.agrees(a.op(x, y), b.op(fx, fy)) && self.agrees(a.op(y, x), b.op(fy, fx))
                    }
                    None => true,
                })
            }
        }
    }

    /// Whether sending `src` to `dst` is compatible with the partial map.
    fn agrees(&self, src: Element, dst: Element) -> bool {
        match (self.map[src], self.pre[dst]) {
            (Some(t), _) => t == dst,
            (None, Some(_)) => false,
            (None, None) => true,
        }
    }

    fn run(&mut self, x: Element, found: &mut Vec<Bijection>, limit: usize) {
        if x == self.a.order() {
            let map = self.map.iter().map(|m| m.unwrap()).collect();
            found.push(Bijection::new(map).expect("complete assignment is a bijection"));
            return;
        }
        for i in 0..self.candidates[x].len() {
            let y = self.candidates[x][i];
            if self.pre[y].is_some() {
                continue;
            }
            self.map[x] = Some(y);
            self.pre[y] = Some(x);
            if self.consistent(x) {
                self.run(x + 1, found, limit);
            }
            self.map[x] = None;
            self.pre[y] = None;
            if found.len() >= limit {
                return;
            }
        }
    }
}

fn search(a: &WajsbergTable, b: &WajsbergTable, mode: Mode, limit: usize) -> Vec<Bijection> {
    let mut found = Vec::new();
    if let Some(mut s) = Search::new(a, b, mode) {
        s.run(0, &mut found, limit);
    }
    found
}

/// The lexicographically least isomorphism `a → b`, if any.
pub fn find_isomorphism(a: &WajsbergTable, b: &WajsbergTable) -> Option<Bijection> {
    search(a, b, Mode::Algebra, 1).pop()
}

/// The lexicographically least order isomorphism `a → b` fixing bottom and top.
pub fn poset_isomorphic(a: &WajsbergTable, b: &WajsbergTable) -> Option<Bijection> {
    search(a, b, Mode::Poset, 1).pop()
}

/// All automorphisms, in lexicographic order.
pub fn automorphisms(w: &WajsbergTable) -> Vec<Bijection> {
    search(w, w, Mode::Algebra, usize::MAX)
}

/// Decides `a ≅ b` by comparing signatures and confirms the answer with an
/// explicit isomorphism search.
pub fn isomorphic(a: &WajsbergTable, b: &WajsbergTable) -> Result<bool> {
    let by_signature = a.order() == b.order() && signature(a)? == signature(b)?;
    let by_search = find_isomorphism(a, b).is_some();
    if by_signature != by_search {
        return Err(Error::Invariant(format!(
            "signature test says {by_signature} but isomorphism search says {by_search}"
        )));
    }
    Ok(by_search)
}
