//! Worked examples for orders 4, 6, 8 and 9: printed tables, ideal listings,
//! quotient blocks, isomorphism claims and counts.

mod common;

use std::collections::BTreeSet;

use common::{fixture_dir, label_sets, Raw};
use wajsberg::regression::reference_tables;
use wajsberg::{
    chain, decompose, enumerate_ideals, find_isomorphism, is_prime_ideal_with, isomorphic,
    labeled_census, poset_isomorphic, product_all, quotient, read_document, CensusConfig, IdealSet,
    PrimeQuantifier, ViolationKind, WajsbergTable,
};

fn reference(id: &str) -> WajsbergTable {
    reference_tables()
        .into_iter()
        .find(|r| r.id == id)
        .unwrap_or_else(|| panic!("no reference table {id}"))
        .build()
        .unwrap()
}

fn fixture(id: &str) -> wajsberg::TableDocument {
    read_document(&fixture_dir().join(format!("{id}.json")), None).unwrap()
}

fn proper_ideals(w: &WajsbergTable) -> BTreeSet<Vec<usize>> {
    enumerate_ideals(w, true)
        .unwrap()
        .iter()
        .map(|i| i.elements().collect())
        .collect()
}

fn blocks(w: &WajsbergTable, ideal: &[&str]) -> BTreeSet<Vec<usize>> {
    let q = quotient(w, &IdealSet::from_labels(w, ideal).unwrap()).unwrap();
    q.classes.into_iter().collect()
}

#[test]
fn printed_chains_of_order_4_6_8_are_exact() {
    for (id, n) in [("nabla_0_4", 4), ("nabla_0_6", 6), ("nabla_0_8", 8)] {
        let w = fixture(id).to_table().unwrap();
        assert_eq!(w, chain(n).unwrap(), "{id}");
        assert_eq!(Raw::of(&w), common::chain_raw(n), "{id}");
    }
}

#[test]
fn chain_complements() {
    let c4 = chain(4).unwrap();
    let bar4 = |l: &str| c4.label(c4.complement(c4.element(l).unwrap())).to_string();
    assert_eq!((bar4("A"), bar4("B")), ("B".into(), "A".into()));

    let c6 = chain(6).unwrap();
    let got: Vec<&str> = ["A", "B", "C", "D"]
        .iter()
        .map(|l| c6.label(c6.complement(c6.element(l).unwrap())))
        .collect();
    assert_eq!(got, ["D", "C", "B", "A"]);

    let c8 = chain(8).unwrap();
    let got: Vec<&str> = ["X", "Y", "Z"]
        .iter()
        .map(|l| c8.label(c8.complement(c8.element(l).unwrap())))
        .collect();
    assert_eq!(got, ["V", "U", "T"]);

    let c9 = chain(9).unwrap();
    let got: Vec<&str> = ["X", "Y", "Z", "T"]
        .iter()
        .map(|l| c9.label(c9.complement(c9.element(l).unwrap())))
        .collect();
    assert_eq!(got, ["V", "S", "U", "T"]);
}

#[test]
fn printed_chain_of_order_9_breaks_axiom_three_at_t_s() {
    let doc = fixture("nabla_0_9");
    let report = doc.violations().unwrap();
    let v = report.get(ViolationKind::AxiomIII).expect("axiom (iii) fails");
    let (t, s) = (
        doc.labels.iter().position(|l| l == "T").unwrap(),
        doc.labels.iter().position(|l| l == "S").unwrap(),
    );
    assert!(v.witnesses.contains(&vec![t, s]));
    assert!(!common::is_wajsberg(&raw_of_doc(&doc)));
}

fn raw_of_doc(doc: &wajsberg::TableDocument) -> Raw {
    let (flat, unit) = doc.raw().unwrap();
    Raw {
        op: flat.chunks(doc.n).map(<[usize]>::to_vec).collect(),
        unit,
    }
}

#[test]
fn order_4_square() {
    let w = fixture("nabla_11_4").to_table().unwrap();
    assert_eq!(proper_ideals(&w), label_sets(&w, &[&["O", "A"], &["O", "B"]]));
    assert_eq!(blocks(&w, &["O", "A"]), label_sets(&w, &[&["O", "A"], &["B", "E"]]));
    assert_eq!(blocks(&w, &["O", "B"]), label_sets(&w, &[&["O", "B"], &["A", "E"]]));
    for p in enumerate_ideals(&w, true).unwrap() {
        assert!(is_prime_ideal_with(&w, &p, PrimeQuantifier::Carrier));
    }
    // relabeling A and B gives the same table
    let swapped = fixture("nabla_prime_4").to_table().unwrap();
    assert_eq!(swapped, w);
    assert!(!isomorphic(&w, &chain(4).unwrap()).unwrap());
}

#[test]
fn order_6_relabelings_and_their_ideals() {
    let cases: [(&str, [&[&str]; 2]); 5] = [
        ("nabla_11_6", [&["O", "A", "B"], &["O", "C"]]),
        ("nabla_14_6", [&["O", "B", "D"], &["O", "A"]]),
        ("nabla_15_6", [&["O", "A", "B"], &["O", "D"]]),
        ("nabla_16_6", [&["O", "C", "D"], &["O", "B"]]),
        ("nabla_17_6", [&["O", "A", "C"], &["O", "D"]]),
    ];
    let base = reference("nabla_11_6");
    for (id, listing) in cases {
        let w = fixture(id).to_table().unwrap();
        assert_eq!(proper_ideals(&w), label_sets(&w, &listing), "{id}");
        assert!(find_isomorphism(&base, &w).is_some(), "{id}");
        for p in enumerate_ideals(&w, true).unwrap() {
            assert!(is_prime_ideal_with(&w, &p, PrimeQuantifier::Carrier), "{id}");
        }
    }
    let w = &base;
    assert_eq!(
        blocks(w, &["O", "C"]),
        label_sets(w, &[&["O", "C"], &["A", "D"], &["B", "E"]])
    );
    assert_eq!(
        blocks(w, &["O", "A", "B"]),
        label_sets(w, &[&["O", "A", "B"], &["C", "D", "E"]])
    );
    assert!(proper_ideals(&chain(6).unwrap()).is_empty());
    assert!(!isomorphic(w, &chain(6).unwrap()).unwrap());
}

#[test]
fn order_8_products() {
    let w11 = reference("nabla_11_8");
    let w21 = fixture("nabla_21_8").to_table().unwrap();
    assert_eq!(proper_ideals(&w11), label_sets(&w11, &[&["O", "Y", "T", "V"], &["O", "X"]]));
    assert_eq!(
        blocks(&w11, &["O", "Y", "T", "V"]),
        label_sets(&w11, &[&["O", "Y", "T", "V"], &["X", "Z", "U", "E"]])
    );
    assert_eq!(
        blocks(&w11, &["O", "X"]),
        label_sets(&w11, &[&["O", "X"], &["Y", "Z"], &["U", "T"], &["V", "E"]])
    );
    assert!(find_isomorphism(&w11, &w21).is_none());
    assert!(poset_isomorphic(&w11, &w21).is_none());
    assert!(find_isomorphism(&w11, &reference("nabla_13_8")).is_some());
    for id in ["nabla_22_8", "nabla_23_8"] {
        assert!(find_isomorphism(&w21, &fixture(id).to_table().unwrap()).is_some(), "{id}");
    }
}

const CUBE_IDEALS: [&[&str]; 6] = [
    &["O", "X"],
    &["O", "Y"],
    &["O", "T"],
    &["O", "X", "Y", "Z"],
    &["O", "X", "T", "U"],
    &["O", "Y", "T", "V"],
];

#[test]
fn order_8_cube_ideals_and_blocks() {
    let w = fixture("nabla_21_8").to_table().unwrap();
    assert_eq!(proper_ideals(&w), label_sets(&w, &CUBE_IDEALS));
    let expected: [&[&[&str]]; 6] = [
        &[&["O", "X"], &["Y", "Z"], &["T", "U"], &["V", "E"]],
        &[&["O", "Y"], &["X", "Z"], &["T", "V"], &["U", "E"]],
        &[&["O", "T"], &["X", "U"], &["Y", "V"], &["Z", "E"]],
        &[&["O", "X", "Y", "Z"], &["U", "V", "T", "E"]],
        &[&["O", "X", "T", "U"], &["Y", "Z", "V", "E"]],
        &[&["O", "Y", "T", "V"], &["X", "Z", "U", "E"]],
    ];
    for (ideal, want) in CUBE_IDEALS.iter().zip(expected) {
        assert_eq!(blocks(&w, ideal), label_sets(&w, want), "{ideal:?}");
    }

    let q = |ideal: &[&str]| quotient(&w, &IdealSet::from_labels(&w, ideal).unwrap()).unwrap().table;
    // the 4-element quotients are squares of the 2-chain, so pairing one with
    // a 2-element quotient rebuilds the cube rather than the 4-chain times 2
    let w11 = reference("nabla_11_8");
    for (a, b) in [(0, 5), (1, 4), (2, 3)] {
        assert!(!q(CUBE_IDEALS[a]).is_chain());
        let p = product_all([&q(CUBE_IDEALS[a]), &q(CUBE_IDEALS[b])]).unwrap();
        assert!(find_isomorphism(&w11, &p).is_none(), "P{} × P{}", a + 1, b + 1);
        assert!(find_isomorphism(&w, &p).is_some(), "P{} × P{}", a + 1, b + 1);
    }
    let p = product_all([&q(CUBE_IDEALS[3]), &q(CUBE_IDEALS[4]), &q(CUBE_IDEALS[5])]).unwrap();
    assert!(find_isomorphism(&w, &p).is_some());
}

#[test]
fn order_8_relabeled_cube_ideals() {
    let cases: [(&str, [&[&str]; 6]); 2] = [
        (
            "nabla_22_8",
            [
                &["O", "U"],
                &["O", "T"],
                &["O", "X"],
                &["O", "U", "T", "V"],
                &["O", "U", "X", "Z"],
                &["O", "T", "X", "Y"],
            ],
        ),
        (
            "nabla_23_8",
            [
                &["O", "Z"],
                &["O", "X"],
                &["O", "U"],
                &["O", "Z", "X", "V"],
                &["O", "Z", "U", "T"],
                &["O", "X", "U", "Y"],
            ],
        ),
    ];
    for (id, listing) in cases {
        let w = fixture(id).to_table().unwrap();
        assert_eq!(proper_ideals(&w), label_sets(&w, &listing), "{id}");
    }
}

/// The block listing `{O,Y},{X,Z},{V,U},{T,E}` for the ideal `{O,Y}` is not
/// a congruence partition of the table: `d(T,E) = Z` lies outside `{O,Y}`.
#[test]
fn cube_blocks_for_o_y_pair_t_with_v() {
    let w = fixture("nabla_21_8").to_table().unwrap();
    let raw = Raw::of(&w);
    let e = |l: &str| w.element(l).unwrap();
    let d = |x: usize, y: usize| raw.op[raw.op[x][y]][raw.bar(raw.op[y][x])];
    let ideal = [e("O"), e("Y")];
    assert_eq!(d(e("T"), e("E")), e("Z"));
    assert!(!ideal.contains(&d(e("T"), e("E"))));
    assert!(!ideal.contains(&d(e("V"), e("U"))));
    assert!(ideal.contains(&d(e("T"), e("V"))));
    assert!(ideal.contains(&d(e("U"), e("E"))));
}

/// Only the three ideals with a 2-element quotient are prime in the usual
/// sense; quantifying over members of the ideal makes all six prime.
#[test]
fn cube_primality_depends_on_the_quantifier() {
    let w = fixture("nabla_21_8").to_table().unwrap();
    let raw = Raw::of(&w);
    for (i, labels) in CUBE_IDEALS.iter().enumerate() {
        let p = IdealSet::from_labels(&w, labels).unwrap();
        let members: Vec<usize> = p.elements().collect();
        assert_eq!(is_prime_ideal_with(&w, &p, PrimeQuantifier::Carrier), i >= 3, "{labels:?}");
        assert_eq!(common::is_prime(&raw, &members), i >= 3, "{labels:?}");
        assert!(is_prime_ideal_with(&w, &p, PrimeQuantifier::Members), "{labels:?}");
    }
}

#[test]
fn order_9_square_of_three_chain() {
    let w = reference("nabla_11_9");
    assert_eq!(proper_ideals(&w), label_sets(&w, &[&["O", "X", "Y"], &["O", "Z", "S"]]));
    assert_eq!(
        blocks(&w, &["O", "X", "Y"]),
        label_sets(&w, &[&["O", "X", "Y"], &["U", "T", "Z"], &["S", "V", "E"]])
    );
    assert_eq!(
        blocks(&w, &["O", "Z", "S"]),
        label_sets(&w, &[&["O", "Z", "S"], &["T", "V", "X"], &["Y", "U", "E"]])
    );
    let d = decompose(&w).unwrap();
    assert_eq!(d.signature.factors(), [3, 3]);
    let primes: BTreeSet<Vec<usize>> = d.primes.iter().map(|p| p.elements().collect()).collect();
    assert_eq!(primes, label_sets(&w, &[&["O", "X", "Y"], &["O", "Z", "S"]]));
}

#[test]
fn decompositions() {
    let w = reference("nabla_11_8");
    let d = decompose(&w).unwrap();
    assert_eq!(d.signature.factors(), [2, 4]);
    let primes: BTreeSet<Vec<usize>> = d.primes.iter().map(|p| p.elements().collect()).collect();
    assert_eq!(primes, label_sets(&w, &[&["O", "Y", "T", "V"], &["O", "X"]]));
    assert_eq!(decompose(&chain(8).unwrap()).unwrap().signature.factors(), [8]);
    assert_eq!(
        decompose(&reference("nabla_21_8")).unwrap().signature.factors(),
        [2, 2, 2]
    );
}

#[test]
fn census_counts() {
    let cfg = CensusConfig::default();
    let r6 = labeled_census(6, &cfg).unwrap().report;
    assert_eq!((r6.formula_total, r6.distinct_labeled_total), (25, 25));
    let r8 = labeled_census(8, &cfg).unwrap().report;
    assert_eq!(r8.formula_total, 1441);
    assert_eq!(r8.bijection_count, 1440);
    let r9 = labeled_census(9, &cfg).unwrap().report;
    assert_eq!(r9.formula_total, 5041);
    let r5 = labeled_census(5, &cfg).unwrap().report;
    assert_eq!((r5.iso_class_count, r5.distinct_labeled_total), (1, 1));
}
