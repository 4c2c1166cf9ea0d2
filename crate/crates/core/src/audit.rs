//! Forbidden-substructure audit for `11 x 7` matrices.
//!
//! Each forbidden pattern, when present, lets one write down a product row
//! orthogonal to the whole matrix, so a genuine `11 x 7` UOM contains none of
//! them. Patterns are matched up to row and column permutation by direct
//! search over column tuples.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, VectorVar};
use crate::stats::{column_stats, MAX_MULTIPLICITY};

pub const AUDIT_ROWS: usize = 11;
pub const AUDIT_COLS: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    /// A variable occurring more than four times.
    HighMultiplicity,
    /// A column whose family count falls outside `2..=5`.
    FamilyCount,
    /// Two columns holding disjoint runs of 3+3 or 4+2 identical entries.
    DisjointRuns,
    /// Disjoint runs `x` and `y` in two columns and a row `k` among them whose
    /// remaining entries are orthogonal to every other row.
    RunCompletion,
    /// Every occurrence of `y` sits beside an `x`, and some row holds `x' y'`.
    NestedRun,
    /// Three columns with disjoint runs of 3, 2 and 2 identical entries.
    TripleRuns,
    /// Four columns with disjoint runs of 2 identical entries each.
    QuadrupleRuns,
}

impl Pattern {
    pub fn is_informational(self) -> bool {
        matches!(self, Pattern::FamilyCount | Pattern::RunCompletion)
    }

    pub fn label(self) -> &'static str {
        match self {
            Pattern::HighMultiplicity => "high-multiplicity",
            Pattern::FamilyCount => "family-count",
            Pattern::DisjointRuns => "disjoint-runs",
            Pattern::RunCompletion => "run-completion",
            Pattern::NestedRun => "nested-run",
            Pattern::TripleRuns => "triple-runs",
            Pattern::QuadrupleRuns => "quadruple-runs",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Finding {
    pub pattern: Pattern,
    /// 0-based columns involved, in pattern order.
    pub columns: Vec<usize>,
    /// The variables involved, rendered in the text format.
    pub variables: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuditReport {
    /// Patterns that cannot occur in a UOM.
    pub forbidden: Vec<Finding>,
    /// Derived checks, reported without a verdict.
    pub informational: Vec<Finding>,
}

impl AuditReport {
    pub fn fired(&self) -> BTreeSet<Pattern> {
        self.forbidden.iter().map(|f| f.pattern).collect()
    }

    pub fn is_clean(&self) -> bool {
        self.forbidden.is_empty()
    }
}

struct Run {
    var: VectorVar,
    rows: BTreeSet<usize>,
}

fn runs(m: &Matrix, col: usize) -> Vec<Run> {
    let vars: BTreeSet<VectorVar> = m.column(col).collect();
    vars.into_iter()
        .map(|var| Run {
            var,
            rows: (0..m.rows()).filter(|&i| m.entry(i, col) == var).collect(),
        })
        .collect()
}

/// Whether pairwise disjoint subsets of the given sizes can be drawn from
/// the given sets (Hall's condition with demands).
fn disjoint_draw(sets: &[&BTreeSet<usize>], demand: &[usize]) -> bool {
    let k = sets.len();
    (1u32..1 << k).all(|mask| {
        let chosen = (0..k).filter(|&i| mask >> i & 1 == 1);
        let need: usize = chosen.clone().map(|i| demand[i]).sum();
        let union: BTreeSet<usize> = chosen.flat_map(|i| sets[i].iter().copied()).collect();
        union.len() >= need
    })
}

struct Auditor<'a> {
    m: &'a Matrix,
    runs: Vec<Vec<Run>>,
    found: BTreeSet<Finding>,
}

impl Auditor<'_> {
    fn record(&mut self, pattern: Pattern, columns: Vec<usize>, vars: &[VectorVar]) {
        let variables = vars.iter().map(|&v| self.m.entry_token(v)).collect();
        self.found.insert(Finding {
            pattern,
            columns,
            variables,
        });
    }

    fn runs_at_least(&self, col: usize, size: usize) -> impl Iterator<Item = &Run> {
        self.runs[col].iter().filter(move |r| r.rows.len() >= size)
    }

    fn high_multiplicity(&mut self) {
        for col in 0..self.m.cols() {
            let hits: Vec<VectorVar> = self
                .runs_at_least(col, MAX_MULTIPLICITY + 1)
                .map(|r| r.var)
                .collect();
            for v in hits {
                self.record(Pattern::HighMultiplicity, vec![col], &[v]);
            }
        }
    }

    fn family_count(&mut self) {
        for col in 0..self.m.cols() {
            let sigma = column_stats(self.m, col).expect("column in range").sigma;
            if !(2..=5).contains(&sigma) {
                self.record(Pattern::FamilyCount, vec![col], &[]);
            }
        }
    }

    fn run_tuples(&mut self, pattern: Pattern, demand: &[usize], cols: &[usize]) {
        let mut hits = Vec::new();
        let mut pick: Vec<&Run> = Vec::with_capacity(cols.len());
        fn walk<'r>(
            aud: &'r Auditor<'_>,
            demand: &[usize],
            cols: &[usize],
            pick: &mut Vec<&'r Run>,
            hits: &mut Vec<Vec<VectorVar>>,
        ) {
            let depth = pick.len();
            if depth == cols.len() {
                let sets: Vec<_> = pick.iter().map(|r| &r.rows).collect();
                if disjoint_draw(&sets, demand) {
                    hits.push(pick.iter().map(|r| r.var).collect());
                }
                return;
            }
            for run in aud.runs_at_least(cols[depth], demand[depth]) {
                pick.push(run);
                walk(aud, demand, cols, pick, hits);
                pick.pop();
            }
        }
        walk(self, demand, cols, &mut pick, &mut hits);
        for vars in hits {
            self.record(pattern, cols.to_vec(), &vars);
        }
    }

    fn disjoint_runs(&mut self) {
        let n = self.m.cols();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                if a < b {
                    self.run_tuples(Pattern::DisjointRuns, &[3, 3], &[a, b]);
                }
                self.run_tuples(Pattern::DisjointRuns, &[4, 2], &[a, b]);
            }
        }
    }

    fn triple_runs(&mut self) {
        let n = self.m.cols();
        for a in 0..n {
            for b in 0..n {
                for c in b + 1..n {
                    if a != b && a != c {
                        self.run_tuples(Pattern::TripleRuns, &[3, 2, 2], &[a, b, c]);
                    }
                }
            }
        }
    }

    fn quadruple_runs(&mut self) {
        let n = self.m.cols();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        self.run_tuples(Pattern::QuadrupleRuns, &[2, 2, 2, 2], &[a, b, c, d]);
                    }
                }
            }
        }
    }

    fn nested_runs(&mut self) {
        let m = self.m;
        let n = m.cols();
        let mut hits = Vec::new();
        for a in 0..n {
            for b in (0..n).filter(|&b| b != a) {
                for x in &self.runs[a] {
                    for y in self.runs[b].iter().filter(|y| y.rows.is_subset(&x.rows)) {
                        let closing = (0..m.rows()).any(|r| {
                            m.entry(r, a) == x.var.partner() && m.entry(r, b) == y.var.partner()
                        });
                        if closing {
                            hits.push((a, b, x.var, y.var));
                        }
                    }
                }
            }
        }
        for (a, b, x, y) in hits {
            self.record(Pattern::NestedRun, vec![a, b], &[x, y]);
        }
    }

    fn run_completion(&mut self) {
        let m = self.m;
        let n = m.cols();
        let mut hits = Vec::new();
        for a in 0..n {
            for b in (0..n).filter(|&b| b != a) {
                for x in &self.runs[a] {
                    for y in self.runs[b].iter().filter(|y| y.rows.is_disjoint(&x.rows)) {
                        let inside: BTreeSet<usize> = x.rows.union(&y.rows).copied().collect();
                        let completes = inside.iter().any(|&k| {
                            (0..m.rows()).filter(|l| !inside.contains(l)).all(|l| {
                                m.orthogonal_columns_unchecked(k, l)
                                    .any(|j| j != a && j != b)
                            })
                        });
                        if completes {
                            hits.push((a, b, x.var, y.var));
                        }
                    }
                }
            }
        }
        for (a, b, x, y) in hits {
            self.record(Pattern::RunCompletion, vec![a, b], &[x, y]);
        }
    }
}

/// Scans an `11 x 7` matrix for forbidden substructures.
///
/// Orthogonality of the rows is not required.
pub fn submatrix_audit(m: &Matrix) -> Result<AuditReport> {
    if (m.rows(), m.cols()) != (AUDIT_ROWS, AUDIT_COLS) {
        return Err(Error::ShapeMismatch {
            expected_rows: AUDIT_ROWS,
            expected_cols: AUDIT_COLS,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let mut aud = Auditor {
        m,
        runs: (0..m.cols()).map(|j| runs(m, j)).collect(),
        found: BTreeSet::new(),
    };
    aud.high_multiplicity();
    aud.family_count();
    aud.disjoint_runs();
    aud.run_completion();
    aud.nested_runs();
    aud.triple_runs();
    aud.quadruple_runs();
    let (informational, forbidden) = aud
        .found
        .into_iter()
        .partition(|f| f.pattern.is_informational());
    Ok(AuditReport {
        forbidden,
        informational,
    })
}
