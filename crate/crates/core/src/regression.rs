//! Reference tables rebuilt from chains, products and relabelings, compared
//! cell by cell with transcribed fixtures.
//!
//! A fixture directory holds one `<id>.json` document per table and an
//! optional `expected_mismatches.json` mapping ids to `[row, column]` pairs
//! whose transcribed entries are known to disagree with the construction.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::construct::{chain, chain_product, transport, Bijection};
use crate::document::{read_document, Format};
use crate::error::{Error, Result};
use crate::iso::{is_homomorphism, is_order_isomorphism};
use crate::table::{ViolationKind, WajsbergTable};

pub const MANIFEST_FILE: &str = "expected_mismatches.json";

#[derive(Clone, Copy, Debug)]
enum Recipe {
    Chain(usize),
    Product(&'static [usize]),
    /// Relabel the table built by another recipe.
    Transport(&'static Recipe, &'static [(&'static str, &'static str)]),
}

const P22: Recipe = Recipe::Product(&[2, 2]);
const P23: Recipe = Recipe::Product(&[2, 3]);
const P42: Recipe = Recipe::Product(&[4, 2]);
const P222: Recipe = Recipe::Product(&[2, 2, 2]);

/// A named reference table and how to rebuild it.
#[derive(Clone, Copy, Debug)]
pub struct ReferenceTable {
    pub id: &'static str,
    pub name: &'static str,
    recipe: Recipe,
}

impl ReferenceTable {
    pub fn build(&self) -> Result<WajsbergTable> {
        build(&self.recipe)
    }

    pub fn file_name(&self) -> String {
        format!("{}.json", self.id)
    }
}

fn build(recipe: &Recipe) -> Result<WajsbergTable> {
    match recipe {
        Recipe::Chain(n) => chain(*n),
        Recipe::Product(sizes) => chain_product(sizes),
        Recipe::Transport(base, pairs) => {
            let w = build(base)?;
            transport(&w, &Bijection::from_labels(&w, pairs)?)
        }
    }
}

/// The seventeen reference tables.
pub fn reference_tables() -> Vec<ReferenceTable> {
    const fn t(id: &'static str, name: &'static str, recipe: Recipe) -> ReferenceTable {
        ReferenceTable { id, name, recipe }
    }
    use Recipe::*;
    vec![
        t("nabla_0_4", "∇₀⁴", Chain(4)),
        t("nabla_11_4", "∇₁₁⁴", P22),
        t("nabla_prime_4", "∇′", Transport(&P22, &[("A", "B"), ("B", "A")])),
        t("nabla_0_6", "∇₀⁶", Chain(6)),
        t("nabla_11_6", "∇₁₁⁶", P23),
        t(
            "nabla_14_6",
            "∇₁₄⁶",
            Transport(&P23, &[("A", "B"), ("B", "D"), ("C", "A"), ("D", "C")]),
        ),
        t(
            "nabla_15_6",
            "∇₁₅⁶",
            Transport(&P23, &[("A", "B"), ("B", "A"), ("C", "D"), ("D", "C")]),
        ),
        t(
            "nabla_16_6",
            "∇₁₆⁶",
            Transport(&P23, &[("A", "C"), ("B", "D"), ("C", "B"), ("D", "A")]),
        ),
        t(
            "nabla_17_6",
            "∇₁₇⁶",
            Transport(&P23, &[("A", "C"), ("B", "A"), ("C", "D"), ("D", "B")]),
        ),
        t("nabla_0_8", "∇₀⁸", Chain(8)),
        t("nabla_11_8", "∇₁₁⁸", P42),
        t(
            "nabla_13_8",
            "∇₁₃⁸",
            Transport(
                &P42,
                &[("X", "Y"), ("Y", "U"), ("Z", "X"), ("T", "V"), ("U", "Z"), ("V", "T")],
            ),
        ),
        t("nabla_21_8", "∇₂₁⁸", P222),
        t(
            "nabla_22_8",
            "∇₂₂⁸",
            Transport(
                &P222,
                &[("X", "U"), ("Y", "T"), ("Z", "V"), ("T", "X"), ("U", "Z"), ("V", "Y")],
            ),
        ),
        t(
            "nabla_23_8",
            "∇₂₃⁸",
            Transport(
                &P222,
                &[("X", "Z"), ("Y", "X"), ("Z", "V"), ("T", "U"), ("U", "T"), ("V", "Y")],
            ),
        ),
        t("nabla_0_9", "∇₀⁹", Chain(9)),
        t("nabla_11_9", "∇₁₁⁹", Product(&[3, 3])),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CellMismatch {
    pub row: String,
    pub column: String,
    pub fixture: String,
    pub rebuilt: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableComparison {
    pub id: String,
    pub name: String,
    pub fixture_present: bool,
    /// Set when the fixture cannot be compared at all.
    pub error: Option<String>,
    /// Axiom violations of the transcribed table, by law.
    pub fixture_violations: Vec<String>,
    pub mismatches: Vec<CellMismatch>,
    /// Mismatched cells not listed in the manifest.
    pub unexpected: Vec<(String, String)>,
    /// Manifest entries whose cells actually agree.
    pub stale: Vec<(String, String)>,
}

impl TableComparison {
    pub fn matches_manifest(&self) -> bool {
        self.fixture_present && self.error.is_none() && self.unexpected.is_empty() && self.stale.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RegressionReport {
    pub manifest_present: bool,
    pub tables: Vec<TableComparison>,
}

impl RegressionReport {
    pub fn missing_fixtures(&self) -> Vec<&str> {
        self.tables
            .iter()
            .filter(|t| !t.fixture_present)
            .map(|t| t.id.as_str())
            .collect()
    }

    pub fn total_mismatches(&self) -> usize {
        self.tables.iter().map(|t| t.mismatches.len()).sum()
    }

    pub fn passed(&self) -> bool {
        self.tables.iter().all(TableComparison::matches_manifest)
    }

    /// One line per table.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            let status = if t.matches_manifest() { "ok" } else { "FAIL" };
            out.push_str(&format!("{status:4} {:14} {}", t.id, t.name));
            if !t.fixture_present {
                out.push_str(" fixture missing");
            } else if let Some(e) = &t.error {
                out.push_str(&format!(" {e}"));
            } else {
                out.push_str(&format!(" {} mismatched cells", t.mismatches.len()));
                for m in &t.mismatches {
                    out.push_str(&format!(
                        " [{}∘{}: {} vs {}]",
                        m.row, m.column, m.fixture, m.rebuilt
                    ));
                }
                if !t.fixture_violations.is_empty() {
                    out.push_str(&format!(" violates {}", t.fixture_violations.join(", ")));
                }
            }
            out.push('\n');
        }
        if !self.manifest_present {
            out.push_str(&format!("no {MANIFEST_FILE}; every mismatch counts as unexpected\n"));
        }
        out
    }
}

type Manifest = BTreeMap<String, Vec<(String, String)>>;

fn read_manifest(dir: &Path) -> Result<Option<Manifest>> {
    let path = dir.join(MANIFEST_FILE);
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(&path)?;
    serde_json::from_str(&text)
        .map(Some)
        .map_err(|e| Error::parse(e.line(), format!("{}: {e}", path.display())))
}

/// Rebuilds every reference table and compares it with the fixture in `dir`.
pub fn reference_regression(dir: &Path) -> Result<RegressionReport> {
    let manifest = read_manifest(dir)?;
    let tables = reference_tables()
        .iter()
        .map(|r| compare(dir, r, manifest.as_ref()))
        .collect::<Result<_>>()?;
    Ok(RegressionReport {
        manifest_present: manifest.is_some(),
        tables,
    })
}

fn compare(dir: &Path, r: &ReferenceTable, manifest: Option<&Manifest>) -> Result<TableComparison> {
    let mut out = TableComparison {
        id: r.id.to_string(),
        name: r.name.to_string(),
        fixture_present: false,
        error: None,
        fixture_violations: Vec::new(),
        mismatches: Vec::new(),
        unexpected: Vec::new(),
        stale: Vec::new(),
    };
    let path = dir.join(r.file_name());
    if !path.exists() {
        return Ok(out);
    }
    out.fixture_present = true;
    let rebuilt = r.build()?;
    let doc = match read_document(&path, Some(Format::Json)) {
        Ok(d) => d,
        Err(e) => {
            out.error = Some(e.to_string());
            return Ok(out);
        }
    };
    let mut fixture_labels = doc.labels.clone();
    fixture_labels.sort();
    let mut own_labels = rebuilt.labels().to_vec();
    own_labels.sort();
    if fixture_labels != own_labels || rebuilt.element(&doc.unit) != Some(rebuilt.unit()) {
        out.error = Some(format!(
            "labels {:?} with unit {} do not match the rebuilt table",
            doc.labels, doc.unit
        ));
        return Ok(out);
    }
    match doc.violations() {
        Ok(report) => {
            out.fixture_violations = report.kinds().into_iter().map(ViolationKind::law).map(String::from).collect();
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    for (row, cells) in doc.labels.iter().zip(&doc.op) {
        let x = rebuilt.expect_element(row)?;
        for (col, cell) in doc.labels.iter().zip(cells) {
            let y = rebuilt.expect_element(col)?;
            let expected = rebuilt.label(rebuilt.op(x, y));
            if cell != expected {
                out.mismatches.push(CellMismatch {
                    row: row.clone(),
                    column: col.clone(),
                    fixture: cell.clone(),
                    rebuilt: expected.to_string(),
                });
            }
        }
    }
    let expected: Vec<(String, String)> = manifest
        .and_then(|m| m.get(r.id))
        .cloned()
        .unwrap_or_default();
    out.unexpected = out
        .mismatches
        .iter()
        .map(|m| (m.row.clone(), m.column.clone()))
        .filter(|cell| !expected.contains(cell))
        .collect();
    out.stale = expected
        .into_iter()
        .filter(|(row, col)| !out.mismatches.iter().any(|m| &m.row == row && &m.column == col))
        .collect();
    Ok(out)
}

/// The 24 relabelings `f` of the order-6 product `C2 × C3` fixing `O` and
/// `E`, as images of `A, B, C, D`, with the printed classification: `true`
/// when listed as an isomorphism of Wajsberg algebras, `false` when listed
/// as an isomorphism of ordered sets only.
pub const RELABELINGS_6: [([&str; 4], bool); 24] = [
    (["A", "B", "C", "D"], true),
    (["A", "C", "B", "D"], true),
    (["B", "D", "C", "A"], false),
    (["B", "D", "A", "C"], true),
    (["B", "A", "D", "C"], true),
    (["C", "D", "B", "A"], false),
    (["C", "A", "D", "B"], true),
    (["C", "B", "D", "A"], false),
    (["C", "B", "A", "D"], false),
    (["C", "D", "A", "B"], true),
    (["C", "A", "B", "D"], false),
    (["B", "C", "D", "A"], false),
    (["B", "C", "A", "D"], false),
    (["B", "A", "C", "D"], false),
    (["A", "C", "D", "B"], false),
    (["A", "D", "C", "B"], false),
    (["A", "D", "B", "C"], false),
    (["A", "B", "D", "C"], false),
    (["D", "B", "C", "A"], true),
    (["D", "C", "B", "A"], false),
    (["D", "A", "C", "B"], false),
    (["D", "C", "A", "B"], false),
    (["D", "A", "B", "C"], true),
    (["D", "B", "A", "C"], false),
];

#[derive(Clone, Debug, Serialize)]
pub struct RelabelingAudit {
    pub index: usize,
    pub map: String,
    pub listed_as_algebra_isomorphism: bool,
    /// `f` is an isomorphism onto the transported table. Holds for every `f`.
    pub isomorphism_onto_transport: bool,
    /// `f` is an automorphism of the source algebra itself.
    pub automorphism_of_source: bool,
    /// `f` preserves the natural order of the source algebra.
    pub preserves_source_order: bool,
}

/// Checks each of the 24 relabelings against the source algebra and its
/// transport.
pub fn relabeling_audit() -> Result<Vec<RelabelingAudit>> {
    let w = chain_product(&[2, 3])?;
    RELABELINGS_6
        .iter()
        .enumerate()
        .map(|(i, (images, listed))| {
            let pairs: Vec<(&str, &str)> = ["A", "B", "C", "D"]
                .iter()
                .copied()
                .zip(images.iter().copied())
                .collect();
            let f = Bijection::from_labels(&w, &pairs)?;
            let t = transport(&w, &f)?;
            Ok(RelabelingAudit {
                index: i + 1,
                map: f.describe(&w, &w),
                listed_as_algebra_isomorphism: *listed,
                isomorphism_onto_transport: is_homomorphism(&w, &t, f.as_slice()),
                automorphism_of_source: is_homomorphism(&w, &w, f.as_slice()),
                preserves_source_order: is_order_isomorphism(&w, &w, &f),
            })
        })
        .collect()
}
