//! Report records and their two renderings.
//!
//! Every command produces a list of [`Record`]s. Text mode prints each as a
//! few human-readable lines; records mode prints one JSON object per line,
//! tagged by `record`. Row and column numbers are 1-based in both.

use serde::Serialize;
use uom_core::audit::{AuditReport, Finding};
use uom_core::catalog::CatalogEntry;
use uom_core::extension::ExtensionWitness;
use uom_core::graph::{build_graph, is_complete_single_pair, iso_classes};
use uom_core::locc::{AuditTable, BipartitionReport};
use uom_core::orbit::{column_signature, orbit_witness, orbits};
use uom_core::stats::{column_stats, pair_bound};
use uom_core::{Error, Matrix, Result, Uom};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Debug, Clone, Serialize)]
pub struct SplitRecord {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum Record {
    Matrix {
        source: String,
        rows: usize,
        cols: usize,
        text: String,
    },
    Validation {
        status: &'static str,
        non_orthogonal_rows: Option<[usize; 2]>,
    },
    Extension {
        is_upb: bool,
        witness: Option<String>,
        covered_rows: Vec<usize>,
    },
    Oracle {
        status: &'static str,
        budget: String,
        required: Option<String>,
    },
    Column {
        column: usize,
        sigma: usize,
        p: usize,
        pairs: Vec<[usize; 2]>,
    },
    PairBound {
        sum_p: usize,
        rhs: usize,
        holds: bool,
    },
    Graph {
        vertices: usize,
        edges: usize,
        complete_single_pair: bool,
    },
    IsoClasses {
        classes: Option<Vec<Vec<usize>>>,
        note: Option<String>,
    },
    Signature {
        column: usize,
        signature: String,
    },
    Orbits {
        orbits: Vec<Vec<usize>>,
    },
    OrbitMap {
        from: usize,
        to: usize,
        families: Vec<String>,
        rows: Vec<usize>,
    },
    Bipartition {
        side: Vec<usize>,
        side1: &'static str,
        side2: &'static str,
        verdict: &'static str,
        split1: Option<SplitRecord>,
        split2: Option<SplitRecord>,
    },
    BipartitionSummary {
        k: usize,
        subsets: usize,
        indistinguishable: usize,
        distinguishable_hint: usize,
        note: Option<&'static str>,
    },
    Finding {
        pattern: &'static str,
        forbidden: bool,
        columns: Vec<usize>,
        variables: Vec<String>,
    },
    AuditSummary {
        forbidden: usize,
        informational: usize,
    },
    CatalogItem {
        name: String,
    },
    Provenance {
        name: String,
        text: String,
    },
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn one_based_parts(parts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    parts.iter().map(|p| one_based(p)).collect()
}

fn partition_text(parts: &[Vec<usize>]) -> String {
    parts
        .iter()
        .map(|p| {
            let inner: Vec<String> = p.iter().map(usize::to_string).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Record {
    pub fn text(&self) -> String {
        match self {
            Record::Matrix {
                source,
                rows,
                cols,
                text,
            } => {
                let mut out = format!("matrix {source} ({rows}x{cols})");
                for line in text.lines() {
                    out.push_str("\n  ");
                    out.push_str(line);
                }
                out
            }
            Record::Validation {
                status,
                non_orthogonal_rows,
            } => match non_orthogonal_rows {
                Some([a, b]) => {
                    format!("validation: {status} (rows {a} and {b} are not orthogonal)")
                }
                None => format!("validation: {status}"),
            },
            Record::Extension {
                is_upb, witness, ..
            } => match witness {
                Some(w) => format!("upb: {}\nwitness: {w}", yes_no(*is_upb)),
                None => format!("upb: {}", yes_no(*is_upb)),
            },
            Record::Oracle {
                status,
                budget,
                required,
            } => match required {
                Some(r) => format!("oracle: {status} (needs {r} tuples, budget {budget})"),
                None => format!("oracle: {status}"),
            },
            Record::Column {
                column,
                sigma,
                p,
                pairs,
            } => {
                let pairs: Vec<String> = pairs.iter().map(|[a, b]| format!("({a},{b})")).collect();
                format!(
                    "column {column}: sigma={sigma} p={p} mu={}",
                    pairs.join(" ")
                )
            }
            Record::PairBound { sum_p, rhs, holds } => {
                format!(
                    "pair bound: sum p = {sum_p}, m(m-1)/2 = {rhs}, holds: {}",
                    yes_no(*holds)
                )
            }
            Record::Graph {
                vertices,
                edges,
                complete_single_pair,
            } => format!(
                "graph: {vertices} vertices, {edges} edges, complete single pair: {}",
                yes_no(*complete_single_pair)
            ),
            Record::IsoClasses { classes, note } => match (classes, note) {
                (Some(c), _) => format!("iso classes: {}", partition_text(c)),
                (None, Some(n)) => format!("iso classes: skipped ({n})"),
                (None, None) => "iso classes: skipped".to_owned(),
            },
            Record::Signature { column, signature } => format!("column {column}: {signature}"),
            Record::Orbits { orbits } => format!("orbits: {}", partition_text(orbits)),
            Record::OrbitMap {
                from,
                to,
                families,
                rows,
            } => {
                let rows: Vec<String> = rows.iter().map(usize::to_string).collect();
                format!(
                    "map column {from} -> column {to}: {} | rows {}",
                    families.join(", "),
                    rows.join(" ")
                )
            }
            Record::Bipartition {
                side,
                side1,
                side2,
                verdict,
                ..
            } => {
                let inner: Vec<String> = side.iter().map(usize::to_string).collect();
                format!(
                    "S={{{}}} | side1={side1} | side2={side2} | verdict={verdict}",
                    inner.join(",")
                )
            }
            Record::BipartitionSummary {
                k,
                subsets,
                indistinguishable,
                distinguishable_hint,
                note,
            } => {
                let mut out = format!(
                    "bipartitions with |S|={k}: {subsets} subsets, {indistinguishable} indistinguishable, {distinguishable_hint} distinguishable-hint"
                );
                if let Some(n) = note {
                    out.push_str("\nnote: ");
                    out.push_str(n);
                }
                out
            }
            Record::Finding {
                pattern,
                forbidden,
                columns,
                variables,
            } => {
                let cols: Vec<String> = columns.iter().map(usize::to_string).collect();
                format!(
                    "{} {pattern}: columns {} variables {}",
                    if *forbidden { "forbidden" } else { "info" },
                    cols.join(","),
                    variables.join(" ")
                )
            }
            Record::AuditSummary {
                forbidden,
                informational,
            } => format!("audit: {forbidden} forbidden, {informational} informational"),
            Record::CatalogItem { name } => name.clone(),
            Record::Provenance { name, text } => format!("{name}: {text}"),
        }
    }
}

pub fn render(records: &[Record], format: Format) -> String {
    let mut out = String::new();
    for r in records {
        match format {
            Format::Text => out.push_str(&r.text()),
            Format::Records => out.push_str(&serde_json::to_string(r).expect("records serialize")),
        }
        out.push('\n');
    }
    out
}

pub fn matrix_record(source: &str, m: &Matrix) -> Record {
    Record::Matrix {
        source: source.to_owned(),
        rows: m.rows(),
        cols: m.cols(),
        text: m.to_string(),
    }
}

pub fn validation_record(m: &Matrix) -> Record {
    let bad = m.first_non_orthogonal_pair();
    Record::Validation {
        status: if bad.is_some() { "failed" } else { "passed" },
        non_orthogonal_rows: bad.map(|(a, b)| [a + 1, b + 1]),
    }
}

pub fn extension_record(u: &Uom, witness: Option<&ExtensionWitness>) -> Record {
    Record::Extension {
        is_upb: witness.is_none(),
        witness: witness.map(|w| w.render(u)),
        covered_rows: witness.map_or_else(Vec::new, |w| w.coverage.iter().map(|r| r + 1).collect()),
    }
}

/// Runs the exhaustive oracle and compares it with the pruned result.
pub fn oracle_record(u: &Uom, pruned: Option<&ExtensionWitness>, budget: u128) -> Record {
    match uom_core::extension::naive_extension_oracle(u, budget) {
        Ok(found) => Record::Oracle {
            status: if found.as_ref() == pruned {
                "agrees"
            } else {
                "disagrees"
            },
            budget: budget.to_string(),
            required: None,
        },
        Err(Error::BudgetExceeded { required, budget }) => Record::Oracle {
            status: "skipped",
            budget: budget.to_string(),
            required: Some(required.to_string()),
        },
        Err(e) => unreachable!("oracle only fails on budget: {e}"),
    }
}

pub fn stats_records(m: &Matrix) -> Vec<Record> {
    let mut out: Vec<Record> = (0..m.cols())
        .map(|j| {
            let s = column_stats(m, j).expect("column in range");
            Record::Column {
                column: j + 1,
                sigma: s.sigma,
                p: s.p,
                pairs: s.pairs.iter().map(|&(a, b)| [a, b]).collect(),
            }
        })
        .collect();
    if let Ok(u) = Uom::new(m.clone()) {
        let b = pair_bound(&u);
        out.push(Record::PairBound {
            sum_p: b.lhs,
            rhs: b.rhs,
            holds: b.holds,
        });
    }
    out
}

pub fn graph_record(u: &Uom) -> Record {
    Record::Graph {
        vertices: u.rows(),
        edges: build_graph(u).edge_count(),
        complete_single_pair: is_complete_single_pair(u),
    }
}

pub fn classes_record(u: &Uom) -> Record {
    match iso_classes(u) {
        Ok(c) => Record::IsoClasses {
            classes: Some(one_based_parts(&c)),
            note: None,
        },
        Err(e @ Error::TooLarge { .. }) => Record::IsoClasses {
            classes: None,
            note: Some(e.to_string()),
        },
        Err(e) => unreachable!("iso_classes only fails on size: {e}"),
    }
}

pub fn orbits_record(u: &Uom) -> Record {
    Record::Orbits {
        orbits: one_based_parts(&orbits(u)),
    }
}

/// Signatures per column, the orbit partition and an explicit map from
/// each orbit's first column onto every other member.
pub fn orbit_records(u: &Uom) -> Vec<Record> {
    let mut out: Vec<Record> = (0..u.cols())
        .map(|j| Record::Signature {
            column: j + 1,
            signature: column_signature(u, j).expect("column in range").to_string(),
        })
        .collect();
    let parts = orbits(u);
    out.push(orbits_record(u));
    for part in &parts {
        let from = part[0];
        for &to in &part[1..] {
            let w = orbit_witness(u, from, to)
                .expect("columns in range")
                .expect("same orbit");
            let families = w
                .families
                .iter()
                .map(|&(a, b, swap)| {
                    let src = u.family_name(from, a);
                    let dst = u.family_name(to, b);
                    if swap {
                        format!("{src} -> {dst}'")
                    } else {
                        format!("{src} -> {dst}")
                    }
                })
                .collect();
            out.push(Record::OrbitMap {
                from: from + 1,
                to: to + 1,
                families,
                rows: one_based(&w.rows),
            });
        }
    }
    out
}

fn split_record(s: &Option<uom_core::locc::Split>) -> Option<SplitRecord> {
    s.as_ref().map(|s| SplitRecord {
        p: one_based(&s.p),
        q: one_based(&s.q),
    })
}

pub fn bipartition_record(r: &BipartitionReport) -> Record {
    let word = |s: &Option<_>| {
        if s.is_some() {
            "reducible"
        } else {
            "irreducible"
        }
    };
    Record::Bipartition {
        side: one_based(&r.side),
        side1: word(&r.reducible_on_side),
        side2: word(&r.reducible_on_complement),
        verdict: r.verdict.label(),
        split1: split_record(&r.reducible_on_side),
        split2: split_record(&r.reducible_on_complement),
    }
}

pub fn table_records(t: &AuditTable) -> Vec<Record> {
    let mut out: Vec<Record> = t.reports.iter().map(bipartition_record).collect();
    out.push(Record::BipartitionSummary {
        k: t.k,
        subsets: t.reports.len(),
        indistinguishable: t.indistinguishable,
        distinguishable_hint: t.distinguishable_hint,
        note: t.note,
    });
    out
}

fn finding_record(f: &Finding) -> Record {
    Record::Finding {
        pattern: f.pattern.label(),
        forbidden: !f.pattern.is_informational(),
        columns: one_based(&f.columns),
        variables: f.variables.clone(),
    }
}

pub fn audit_records(a: &AuditReport) -> Vec<Record> {
    let mut out: Vec<Record> = a
        .forbidden
        .iter()
        .chain(&a.informational)
        .map(finding_record)
        .collect();
    out.push(Record::AuditSummary {
        forbidden: a.forbidden.len(),
        informational: a.informational.len(),
    });
    out
}

pub fn catalog_records(e: &CatalogEntry) -> Vec<Record> {
    vec![
        matrix_record(&e.name, &e.uom),
        Record::Provenance {
            name: e.name.clone(),
            text: e.provenance.to_owned(),
        },
    ]
}

/// Side size used by the full report: pairs of qubits where possible.
pub fn default_side_size(cols: usize) -> Option<usize> {
    match cols {
        0 | 1 => None,
        2 => Some(1),
        _ => Some(2),
    }
}

/// Everything `verify` knows about one input, re-derived from the matrix.
#[derive(Debug, Clone)]
pub struct ReportBundle {
    pub records: Vec<Record>,
    pub is_upb: bool,
    pub valid: bool,
    pub oracle_disagrees: bool,
}

impl ReportBundle {
    pub fn build(source: &str, m: &Matrix, oracle_budget: Option<u128>) -> Result<Self> {
        let mut records = vec![matrix_record(source, m), validation_record(m)];
        let Ok(u) = Uom::new(m.clone()) else {
            records.extend(stats_records(m));
            return Ok(Self {
                records,
                is_upb: false,
                valid: false,
                oracle_disagrees: false,
            });
        };
        let witness = uom_core::extension::find_extension(&u);
        records.push(extension_record(&u, witness.as_ref()));
        let mut oracle_disagrees = false;
        if let Some(budget) = oracle_budget {
            let r = oracle_record(&u, witness.as_ref(), budget);
            oracle_disagrees = matches!(
                r,
                Record::Oracle {
                    status: "disagrees",
                    ..
                }
            );
            records.push(r);
        }
        records.extend(stats_records(m));
        records.push(graph_record(&u));
        records.push(classes_record(&u));
        records.push(orbits_record(&u));
        if let Some(k) = default_side_size(u.cols()) {
            records.extend(table_records(&uom_core::locc::audit_all_subsets(&u, k)?));
        }
        Ok(Self {
            records,
            is_upb: witness.is_none(),
            valid: true,
            oracle_disagrees,
        })
    }
}
