//! `wajsberg` command-line front end.
//!
//! Exit status: 0 on success, 1 when the input is understood but refused
//! (not a Wajsberg algebra, not an ideal, census out of range, failed
//! regression), 2 for usage and parse errors, 3 for internal errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use wajsberg::enumerate::{CENSUS_CAP_ENV, DEFAULT_CENSUS_CAP};
use wajsberg::regression::{reference_regression, reference_tables};
use wajsberg::{
    automorphisms, chain, decompose, enumerate_ideals, find_isomorphism, is_prime_ideal_with,
    labeled_census, poset_isomorphic, product_all, quotient, read_document, transport, Bijection,
    CensusConfig, CensusReport, Error, Format, IdealSet, PrimeQuantifier, TableDocument,
    WajsbergTable,
};

#[derive(Parser)]
#[command(name = "wajsberg", version, about = "Build, check and enumerate finite Wajsberg algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Text,
    Json,
    Csv,
}

impl From<TableFormat> for Format {
    fn from(f: TableFormat) -> Format {
        match f {
            TableFormat::Text => Format::Text,
            TableFormat::Json => Format::Json,
            TableFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct Emit {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: TableFormat,
}

#[derive(Args)]
struct Read {
    /// Input format; guessed from the extension and content when omitted.
    #[arg(long, value_enum)]
    input_format: Option<TableFormat>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the chain of the given order.
    Chain {
        #[arg(value_parser = clap::value_parser!(u64).range(1..=64))]
        n: u64,
        /// Name shown in the corner cell of the text layout.
        #[arg(long)]
        name: Option<String>,
        #[command(flatten)]
        emit: Emit,
    },
    /// Direct product of two or more tables, folded from the left.
    Product {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        read: Read,
        #[command(flatten)]
        emit: Emit,
    },
    /// Relabel a table along a bijection fixing the bottom and the unit.
    Transport {
        file: PathBuf,
        /// Label pairs such as `A=B,B=A`; unmentioned elements are fixed.
        #[arg(long)]
        map: String,
        #[command(flatten)]
        read: Read,
        #[command(flatten)]
        emit: Emit,
    },
    /// Re-render a table in another format.
    Convert {
        file: PathBuf,
        #[command(flatten)]
        read: Read,
        #[command(flatten)]
        emit: Emit,
    },
    /// Check the axioms and report every violated law with witnesses.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        read: Read,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// List ideals.
    Ideals {
        file: PathBuf,
        /// Only prime ideals.
        #[arg(long)]
        prime: bool,
        /// Quantify primality over the members of the ideal instead of the carrier.
        #[arg(long, requires = "prime")]
        literal_prime: bool,
        /// Leave out `{θ}` and the whole algebra.
        #[arg(long)]
        proper: bool,
        #[command(flatten)]
        read: Read,
        #[command(flatten)]
        emit: Emit,
    },
    /// Quotient by an ideal, given as comma-separated labels.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        read: Read,
        #[command(flatten)]
        emit: Emit,
    },
    /// Least isomorphism between two tables, or `none`.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Compare the natural orders only.
        #[arg(long)]
        poset: bool,
        #[command(flatten)]
        read: Read,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// All automorphisms.
    Automorphisms {
        file: PathBuf,
        #[command(flatten)]
        read: Read,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Chain signature and the prime ideals realizing it.
    Decompose {
        file: PathBuf,
        #[command(flatten)]
        read: Read,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Count isomorphism classes and labeled tables of order n.
    Census {
        n: usize,
        #[arg(long, visible_alias = "format", value_enum, default_value = "text")]
        report: ReportFormat,
        /// Largest order accepted.
        #[arg(long, env = CENSUS_CAP_ENV, default_value_t = DEFAULT_CENSUS_CAP)]
        cap: usize,
    },
    /// Print a rebuilt reference table, or list their ids.
    Reference {
        id: Option<String>,
        #[command(flatten)]
        emit: Emit,
    },
    /// Rebuild the reference tables and compare them with transcribed fixtures.
    Regress {
        #[arg(long, default_value = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/reference"))]
        fixtures: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
}

/// Why a command stopped, with the message for standard error.
enum Failure {
    Refused(String),
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Malformed(_) | Error::Io(_) => Failure::Usage(e.to_string()),
            Error::Violations(_) | Error::Precondition(_) | Error::CensusRefused { .. } => {
                Failure::Refused(e.to_string())
            }
            Error::Invariant(_) => Failure::Internal(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Refused(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn load(path: &Path, read: &Read) -> Result<WajsbergTable, Failure> {
    let doc = read_document(path, read.input_format.map(Format::from))
        .map_err(|e| with_path(path, e))?;
    match doc.to_table() {
        Err(Error::Violations(report)) => Err(Failure::Refused(format!(
            "{}: not a Wajsberg algebra\n{}",
            path.display(),
            report.describe(&doc.labels).trim_end()
        ))),
        other => other.map_err(|e| with_path(path, e)),
    }
}

fn with_path(path: &Path, e: Error) -> Failure {
    match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
        Failure::Refused(m) => Failure::Refused(format!("{}: {m}", path.display())),
        f => f,
    }
}

fn emit(w: &WajsbergTable, emit: &Emit, note: Option<String>) -> String {
    let mut doc = TableDocument::from_table(w);
    doc.note = note;
    doc.render(emit.format.into())
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Chain { n, name, emit: e } => {
            let mut doc = TableDocument::from_table(&chain(n as usize)?);
            if let Some(name) = name {
                doc = doc.with_name(name)?;
            }
            Ok(doc.render(e.format.into()))
        }
        Command::Product { files, read, emit: e } => {
            let tables = files.iter().map(|f| load(f, &read)).collect::<Result<Vec<_>, _>>()?;
            let p = product_all(&tables).expect("at least two factors");
            Ok(emit(&p, &e, None))
        }
        Command::Transport { file, map, read, emit: e } => {
            let w = load(&file, &read)?;
            let pairs = parse_pairs(&map)?;
            let pairs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            let f = Bijection::from_labels(&w, &pairs)?;
            Ok(emit(&transport(&w, &f)?, &e, None))
        }
        Command::Convert { file, read, emit: e } => {
            let doc = read_document(&file, read.input_format.map(Format::from))
                .map_err(|err| with_path(&file, err))?;
            Ok(doc.render(e.format.into()))
        }
        Command::Verify { file, read, format } => verify(&file, &read, format),
        Command::Ideals {
            file,
            prime,
            literal_prime,
            proper,
            read,
            emit: e,
        } => {
            let w = load(&file, &read)?;
            let quantifier = if literal_prime {
                PrimeQuantifier::Members
            } else {
                PrimeQuantifier::Carrier
            };
            let ideals: Vec<IdealSet> = enumerate_ideals(&w, proper)?
                .into_iter()
                .filter(|i| !prime || is_prime_ideal_with(&w, i, quantifier))
                .collect();
            Ok(render_sets(&w, &ideals, e.format))
        }
        Command::Quotient { file, ideal, read, emit: e } => {
            let w = load(&file, &read)?;
            let labels: Vec<&str> = ideal.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let set = IdealSet::from_labels(&w, &labels)?;
            let q = quotient(&w, &set)?;
            let note = format!("classes {}", q.describe_classes(&w));
            Ok(emit(&q.table, &e, Some(note)))
        }
        Command::Iso {
            a,
            b,
            poset,
            read,
            format,
        } => {
            let (ta, tb) = (load(&a, &read)?, load(&b, &read)?);
            let witness = if poset {
                poset_isomorphic(&ta, &tb)
            } else {
                find_isomorphism(&ta, &tb)
            };
            Ok(match format {
                ReportFormat::Text => match &witness {
                    Some(f) => format!("{}\n", f.describe(&ta, &tb)),
                    None => "none\n".to_string(),
                },
                ReportFormat::Json => {
                    let pairs = witness.as_ref().map(|f| label_pairs(f, &ta, &tb));
                    to_json(&json!({
                        "mode": if poset { "poset" } else { "algebra" },
                        "witness": pairs,
                    }))
                }
            })
        }
        Command::Automorphisms { file, read, format } => {
            let w = load(&file, &read)?;
            let auts = automorphisms(&w);
            Ok(match format {
                ReportFormat::Text => auts.iter().map(|f| format!("{}\n", f.describe(&w, &w))).collect(),
                ReportFormat::Json => {
                    let all: Vec<_> = auts.iter().map(|f| label_pairs(f, &w, &w)).collect();
                    to_json(&json!({ "order": auts.len(), "automorphisms": all }))
                }
            })
        }
        Command::Decompose { file, read, format } => {
            let w = load(&file, &read)?;
            let d = decompose(&w)?;
            Ok(match format {
                ReportFormat::Json => to_json(&d.summary_json(&w)),
                ReportFormat::Text => {
                    let mut out = format!("signature {}\n", d.signature);
                    for (i, (p, q)) in d.primes.iter().zip(&d.quotients).enumerate() {
                        out.push_str(&format!(
                            "P{} = {}  quotient order {}\n",
                            i + 1,
                            p.describe(&w),
                            q.table.order()
                        ));
                    }
                    out
                }
            })
        }
        Command::Census { n, report, cap } => {
            let cfg = CensusConfig {
                cap,
                keep_tables: false,
            };
            let census = labeled_census(n, &cfg)?;
            Ok(match report {
                ReportFormat::Json => to_json(&census.report),
                ReportFormat::Text => census_text(&census.report),
            })
        }
        Command::Reference { id: None, .. } => Ok(reference_tables()
            .iter()
            .map(|r| format!("{} {}\n", r.id, r.name))
            .collect()),
        Command::Reference { id: Some(id), emit: e } => {
            let r = reference_tables()
                .into_iter()
                .find(|r| r.id == id)
                .ok_or_else(|| Failure::Usage(format!("no reference table {id:?}")))?;
            let doc = TableDocument::from_table(&r.build()?).with_name(r.name)?;
            Ok(doc.render(e.format.into()))
        }
        Command::Regress { fixtures, format } => {
            let report = reference_regression(&fixtures)?;
            let out = match format {
                ReportFormat::Json => to_json(&report),
                ReportFormat::Text => report.summary(),
            };
            if report.passed() {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Refused("regression differs from the expected-mismatch manifest".into()))
            }
        }
    }
}

fn verify(file: &Path, read: &Read, format: ReportFormat) -> Outcome {
    let doc = read_document(file, read.input_format.map(Format::from)).map_err(|e| with_path(file, e))?;
    let report = doc.violations().map_err(|e| with_path(file, e))?;
    let out = match format {
        ReportFormat::Json => to_json(&json!({ "valid": report.is_empty(), "report": report })),
        ReportFormat::Text if report.is_empty() => {
            format!("valid Wajsberg algebra of order {}\n", doc.n)
        }
        ReportFormat::Text => report.describe(&doc.labels),
    };
    if report.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Refused(format!("{}: not a Wajsberg algebra", file.display())))
    }
}

fn parse_pairs(spec: &str) -> Result<Vec<(String, String)>, Failure> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|p| match p.split_once('=') {
            Some((a, b)) => Ok((a.trim().to_string(), b.trim().to_string())),
            None => Err(Failure::Usage(format!("expected FROM=TO, found {p:?}"))),
        })
        .collect()
}

fn label_pairs(f: &Bijection, a: &WajsbergTable, b: &WajsbergTable) -> Vec<[String; 2]> {
    a.elements()
        .map(|x| [a.label(x).to_string(), b.label(f.apply(x)).to_string()])
        .collect()
}

fn render_sets(w: &WajsbergTable, sets: &[IdealSet], format: TableFormat) -> String {
    let names = |s: &IdealSet| s.elements().map(|x| w.label(x).to_string()).collect::<Vec<_>>();
    match format {
        TableFormat::Text => sets.iter().map(|s| format!("{}\n", s.describe(w))).collect(),
        TableFormat::Csv => sets.iter().map(|s| format!("{}\n", names(s).join(","))).collect(),
        TableFormat::Json => {
            let all: Vec<Vec<String>> = sets.iter().map(names).collect();
            to_json(&json!({ "ideals": all }))
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn census_text(r: &CensusReport) -> String {
    let classes: Vec<String> = r.iso_classes.iter().map(ToString::to_string).collect();
    let mut out = format!("order {}\n", r.order);
    out.push_str(&format!("pi_n {}\n", r.pi_n));
    out.push_str(&format!(
        "isomorphism classes {} {}\n",
        r.iso_class_count,
        classes.join(" ")
    ));
    out.push_str(&format!("bijections scanned {}\n", r.bijection_count));
    out.push_str(&format!("formula total {}\n", r.formula_total));
    out.push_str(&format!("distinct labeled tables {}\n", r.distinct_labeled_total));
    for c in &r.per_class {
        out.push_str(&format!(
            "class {} automorphisms {} (scan {}) distinct tables {}\n",
            c.signature, c.aut_order, c.aut_order_brute_force, c.distinct_tables
        ));
    }
    out.push_str(&format!("discrepancy {}\n", if r.discrepancy { "yes" } else { "no" }));
    for line in &r.narrative {
        out.push_str(&format!("  {line}\n"));
    }
    out
}
