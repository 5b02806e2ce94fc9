//! Strategies and property bodies shared by the property suite and the
//! acceptance runner.

use proptest::prelude::*;
use proptest::sample::select;
use proptest::test_runner::TestCaseError;
use wajsberg::iso::is_order_isomorphism;
use wajsberg::{
    automorphisms, chain_product, check_axioms, find_isomorphism, from_mv, is_homomorphism,
    transport, Bijection, Format, TableDocument, WajsbergTable,
};

use super::{bound_fixing_permutations, chain_size_lists, is_wajsberg, Raw};

type PropResult = Result<(), TestCaseError>;

/// The trivial algebra plus every ordered chain-size list up to `max`.
pub fn size_lists(max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![1]];
    out.extend(chain_size_lists(max));
    out
}

/// A bound-fixing bijection of `w`'s carrier from a shuffle of its inner
/// elements.
fn relabeling(w: &WajsbergTable, shuffled: &[usize]) -> Bijection {
    let inner: Vec<usize> = w.elements().filter(|&x| x != w.zero() && x != w.unit()).collect();
    let mut map: Vec<usize> = w.elements().collect();
    for (&s, &d) in inner.iter().zip(shuffled) {
        map[s] = d;
    }
    Bijection::new(map).unwrap()
}

fn shuffled_inner(w: &WajsbergTable) -> BoxedStrategy<Vec<usize>> {
    let inner: Vec<usize> = w.elements().filter(|&x| x != w.zero() && x != w.unit()).collect();
    Just(inner).prop_shuffle().boxed()
}

/// A product of chains of total order at most `max`, relabeled at random.
pub fn algebra(max: usize) -> impl Strategy<Value = WajsbergTable> {
    select(size_lists(max)).prop_flat_map(|sizes| {
        let w = chain_product(&sizes).unwrap();
        (Just(w.clone()), shuffled_inner(&w))
            .prop_map(|(w, s)| transport(&w, &relabeling(&w, &s)).unwrap())
    })
}

/// An algebra with two random bound-fixing bijections of its carrier.
pub fn algebra_with_maps(max: usize) -> impl Strategy<Value = (WajsbergTable, Bijection, Bijection)> {
    algebra(max).prop_flat_map(|w| {
        (Just(w.clone()), shuffled_inner(&w), shuffled_inner(&w))
            .prop_map(|(w, a, b)| {
                let (f, g) = (relabeling(&w, &a), relabeling(&w, &b));
                (w, f, g)
            })
    })
}

/// An algebra and one changed cell `(x, y, value)`.
pub fn mutated(max: usize) -> impl Strategy<Value = (WajsbergTable, usize, usize, usize)> {
    algebra(max).prop_flat_map(|w| {
        let n = w.order();
        (Just(w), 0..n, 0..n, 0..n)
    })
}

pub fn complement_involution(w: &WajsbergTable) -> PropResult {
    for x in w.elements() {
        prop_assert_eq!(w.complement(w.complement(x)), x);
    }
    Ok(())
}

pub fn mv_round_trip(w: &WajsbergTable) -> PropResult {
    let mv = w.to_mv();
    prop_assert!(mv.check().is_empty());
    let back = from_mv(&mv).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&back, w);
    prop_assert_eq!(back.complement(back.zero()), w.unit());
    Ok(())
}

/// `(x⊖y)⊕(y⊖x) = (x⊙y′)⊕(y⊙x′) = (x′⊕y)′⊕(y′⊕x)′ = (x∘y)∘(y∘x)′`.
pub fn distance_forms_agree(w: &WajsbergTable) -> PropResult {
    let mv = w.to_mv();
    for x in w.elements() {
        for y in w.elements() {
            let d1 = mv.plus(mv.minus(x, y), mv.minus(y, x));
            let d2 = mv.plus(mv.times(x, mv.neg(y)), mv.times(y, mv.neg(x)));
            let d3 = mv.plus(mv.neg(mv.plus(mv.neg(x), y)), mv.neg(mv.plus(mv.neg(y), x)));
            prop_assert_eq!(d1, d2);
            prop_assert_eq!(d2, d3);
            prop_assert_eq!(d3, w.distance(x, y));
        }
    }
    Ok(())
}

/// Isomorphisms preserve and reflect the natural order.
pub fn isomorphisms_are_order_isomorphisms(w: &WajsbergTable, f: &Bijection) -> PropResult {
    let t = transport(w, f).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(is_homomorphism(w, &t, f.as_slice()));
    prop_assert!(is_order_isomorphism(w, &t, f));
    let g = find_isomorphism(w, &t).ok_or_else(|| TestCaseError::fail("no isomorphism found"))?;
    prop_assert!(is_order_isomorphism(w, &t, &g));
    prop_assert!(is_order_isomorphism(&t, w, &g.inverse()));
    Ok(())
}

/// Transport is a group action, and two bijections give the same table
/// exactly when `g⁻¹∘f` is an automorphism.
pub fn transport_is_an_action(w: &WajsbergTable, f: &Bijection, g: &Bijection) -> PropResult {
    let fail = |e: wajsberg::Error| TestCaseError::fail(e.to_string());
    let tf = transport(w, f).map_err(fail)?;
    let tg = transport(w, g).map_err(fail)?;
    prop_assert_eq!(transport(&tf, g).map_err(fail)?, transport(w, &g.after(f)).map_err(fail)?);
    prop_assert_eq!(&transport(w, &Bijection::identity(w.order())).map_err(fail)?, w);
    let twisted = g.inverse().after(f);
    prop_assert_eq!(tf == tg, is_homomorphism(w, w, twisted.as_slice()));
    Ok(())
}

/// `|orbit| · |Aut| = (n-2)!` over bound-fixing bijections.
pub fn orbit_stabilizer(w: &WajsbergTable) -> PropResult {
    let n = w.order();
    if n < 2 {
        return Ok(());
    }
    let raw = Raw::of(w);
    let perms = bound_fixing_permutations(n, w.zero(), w.unit());
    let orbit: std::collections::HashSet<Vec<Vec<usize>>> =
        perms.iter().map(|f| super::transport_raw(&raw, f).op).collect();
    let aut = automorphisms(w).len();
    prop_assert_eq!(orbit.len() * aut, perms.len());
    Ok(())
}

/// The checker accepts a changed table exactly when the oracle does.
pub fn mutation_agrees(w: &WajsbergTable, x: usize, y: usize, v: usize) -> PropResult {
    let mut raw = Raw::of(w);
    raw.op[x][y] = v;
    let report = check_axioms(w.order(), &raw.op.concat(), raw.unit)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(report.is_empty(), is_wajsberg(&raw));
    Ok(())
}

pub fn document_round_trip(w: &WajsbergTable, format: Format, note: &str) -> PropResult {
    let mut doc = TableDocument::from_table(w);
    if !note.is_empty() {
        doc = doc.with_note(note);
    }
    let text = doc.render(format);
    let back = TableDocument::parse(&text, format).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&back, &doc);
    prop_assert_eq!(back.render(format), text);
    prop_assert_eq!(&back.to_table().map_err(|e| TestCaseError::fail(e.to_string()))?, w);
    Ok(())
}

pub fn format() -> impl Strategy<Value = Format> {
    select(vec![Format::Text, Format::Json, Format::Csv])
}
