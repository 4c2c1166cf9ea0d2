//! Local reducibility across bipartitions of the qubits.
//!
//! Split the columns into a side `S` and its complement. A first
//! orthogonality-preserving measurement on `S` can separate the rows into
//! non-empty groups `P` and `Q` only if every cross pair is orthogonal within
//! `S`. Pairs that are not orthogonal within `S` must therefore share a group,
//! so a split exists iff the graph of such pairs is disconnected. When neither
//! side admits a split the set is reported as locally indistinguishable.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::matrix::Uom;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    /// Rows connected to row 0.
    pub p: Vec<usize>,
    pub q: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Some side admits a split; distinguishability is not ruled out.
    DistinguishableHint,
    Indistinguishable,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::DistinguishableHint => "distinguishable-hint",
            Verdict::Indistinguishable => "indistinguishable",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitionReport {
    /// 0-based columns on the first side, sorted.
    pub side: Vec<usize>,
    pub complement: Vec<usize>,
    pub reducible_on_side: Option<Split>,
    pub reducible_on_complement: Option<Split>,
    pub verdict: Verdict,
}

fn reducibility(s: &Option<Split>) -> &'static str {
    if s.is_some() {
        "reducible"
    } else {
        "irreducible"
    }
}

/// `S={..} | side1=.. | side2=.. | verdict=..`, columns 1-based.
impl fmt::Display for BipartitionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S={} | side1={} | side2={} | verdict={}",
            braces(&self.side),
            reducibility(&self.reducible_on_side),
            reducibility(&self.reducible_on_complement),
            self.verdict
        )
    }
}

/// `{a,b,c}` with 1-based numbering.
pub fn braces(items: &[usize]) -> String {
    let inner: Vec<String> = items.iter().map(|c| (c + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn normalize_side(u: &Uom, side: &[usize]) -> Result<Vec<usize>> {
    let mut s = side.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&bad) = s.iter().find(|&&c| c >= u.cols()) {
        return Err(Error::IndexOutOfRange {
            what: "column",
            index: bad,
            len: u.cols(),
        });
    }
    Ok(s)
}

fn complement_of(u: &Uom, side: &[usize]) -> Vec<usize> {
    (0..u.cols()).filter(|c| !side.contains(c)).collect()
}

/// Rows `i`, `k` are adjacent iff no column of `side` orthogonally separates
/// them.
pub fn nonortho_graph(u: &Uom, side: &[usize]) -> Result<SimpleGraph> {
    let side = normalize_side(u, side)?;
    let m = u.rows();
    let mut g = SimpleGraph::new(m);
    for i in 0..m {
        for k in i + 1..m {
            if !u
                .orthogonal_columns_unchecked(i, k)
                .any(|j| side.contains(&j))
            {
                g.add_edge(i, k);
            }
        }
    }
    Ok(g)
}

/// A split of the rows into two groups mutually orthogonal within `side`.
pub fn reducible_on(u: &Uom, side: &[usize]) -> Result<Option<Split>> {
    let g = nonortho_graph(u, side)?;
    let comps = g.components();
    if comps.len() < 2 {
        return Ok(None);
    }
    let p = comps[0].clone();
    let q = (0..u.rows()).filter(|r| !p.contains(r)).collect();
    Ok(Some(Split { p, q }))
}

pub fn bipartition_report(u: &Uom, side: &[usize]) -> Result<BipartitionReport> {
    let side = normalize_side(u, side)?;
    let complement = complement_of(u, &side);
    let reducible_on_side = reducible_on(u, &side)?;
    let reducible_on_complement = reducible_on(u, &complement)?;
    // fewer than two states leave nothing to tell apart
    let blocked = u.rows() >= 2 && reducible_on_side.is_none() && reducible_on_complement.is_none();
    let verdict = if blocked {
        Verdict::Indistinguishable
    } else {
        Verdict::DistinguishableHint
    };
    Ok(BipartitionReport {
        side,
        complement,
        reducible_on_side,
        reducible_on_complement,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditTable {
    pub k: usize,
    pub reports: Vec<BipartitionReport>,
    pub indistinguishable: usize,
    pub distinguishable_hint: usize,
    /// Caveat attached to the whole table, if any.
    pub note: Option<&'static str>,
}

pub const NOTE_SINGLE_QUBIT: &str =
    "one side is a single qubit: orthogonal product states in 2xN are always locally distinguishable";
pub const NOTE_OPEN: &str =
    "verdicts for this split size are computed only; no expected result is asserted";

/// Reports for every `k`-subset of columns, in lexicographic order.
pub fn audit_all_subsets(u: &Uom, k: usize) -> Result<AuditTable> {
    let n = u.cols();
    if k == 0 || k >= n {
        return Err(Error::Domain(format!(
            "side size must satisfy 1 <= k < {n}, got {k}"
        )));
    }
    let reports = subsets(n, k)
        .iter()
        .map(|s| bipartition_report(u, s))
        .collect::<Result<Vec<_>>>()?;
    let indistinguishable = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Indistinguishable)
        .count();
    let note = match k {
        1 => Some(NOTE_SINGLE_QUBIT),
        _ if k == n - 1 => Some(NOTE_SINGLE_QUBIT),
        2 => None,
        _ => Some(NOTE_OPEN),
    };
    Ok(AuditTable {
        k,
        distinguishable_hint: reports.len() - indistinguishable,
        indistinguishable,
        reports,
        note,
    })
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn walk(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            walk(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    walk(0, n, k, &mut Vec::new(), &mut out);
    out
}
