//! Exact unextendibility decision.
//!
//! A product state `|z>` is orthogonal to a row exactly when some column
//! carries an orthogonal pair. For qubits, `|z>`'s local state in column `j`
//! is either the partner of one variable `v` present in that column, killing
//! precisely the rows whose entry there is `v`, or it kills nothing in that
//! column. A per-column choice of `Skip` or `Target(v)` therefore enumerates
//! every extension up to equivalence, and the matrix is unextendible iff no
//! choice covers all rows.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Uom, VectorVar};

/// Default cap on the number of tuples the exhaustive oracle may visit.
pub const DEFAULT_SEARCH_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Choice {
    Skip,
    /// The witness state is the partner of this variable and kills every row
    /// holding the variable.
    Target(VectorVar),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionWitness {
    pub choices: Vec<Choice>,
    pub coverage: BTreeSet<usize>,
}

impl ExtensionWitness {
    fn from_choices(m: &Matrix, choices: Vec<Choice>) -> Self {
        let coverage = (0..m.rows())
            .filter(|&i| {
                choices
                    .iter()
                    .enumerate()
                    .any(|(j, c)| matches!(c, Choice::Target(v) if m.entry(i, j) == *v))
            })
            .collect();
        Self { choices, coverage }
    }

    /// Local state of the witness in column `col`, if it is not generic.
    pub fn state(&self, col: usize) -> Option<VectorVar> {
        match self.choices.get(col)? {
            Choice::Skip => None,
            Choice::Target(v) => Some(v.partner()),
        }
    }

    /// Re-checks that the witness is orthogonal to every row of `m`.
    pub fn is_valid_for(&self, m: &Matrix) -> bool {
        self.choices.len() == m.cols()
            && (0..m.rows()).all(|i| {
                (0..m.cols()).any(|j| {
                    self.state(j)
                        .is_some_and(|s| s.is_orthogonal_to(m.entry(i, j)))
                })
            })
    }

    /// The witness as a single row of the text format, `_` marking generic
    /// columns.
    pub fn render(&self, m: &Matrix) -> String {
        (0..self.choices.len())
            .map(|j| {
                self.state(j)
                    .map_or_else(|| "_".to_owned(), |s| m.entry_token(s))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Distinct variables of one column, ordered by family id then unprimed
/// before primed.
fn column_options(m: &Matrix, col: usize) -> Vec<(VectorVar, Vec<usize>)> {
    let vars: BTreeSet<VectorVar> = m.column(col).collect();
    vars.into_iter()
        .map(|v| {
            let rows = (0..m.rows()).filter(|&i| m.entry(i, col) == v).collect();
            (v, rows)
        })
        .collect()
}

struct Search<'a> {
    options: &'a [Vec<(VectorVar, Vec<usize>)>],
    order: Vec<usize>,
    lexicographic: bool,
    hits: Vec<u32>,
    uncovered: usize,
    picked: Vec<Option<usize>>,
}

impl Search<'_> {
    fn gain(&self, rows: &[usize]) -> usize {
        rows.iter().filter(|&&r| self.hits[r] == 0).count()
    }

    fn apply(&mut self, rows: &[usize], delta: i32) {
        for &r in rows {
            let before = self.hits[r];
            self.hits[r] = before.wrapping_add_signed(delta);
            match (before, self.hits[r]) {
                (0, _) => self.uncovered -= 1,
                (_, 0) => self.uncovered += 1,
                _ => {}
            }
        }
    }

    fn run(&mut self, depth: usize) -> bool {
        if self.uncovered == 0 {
            return true;
        }
        if depth == self.order.len() {
            return false;
        }
        let reach: usize = self.order[depth..]
            .iter()
            .map(|&j| {
                self.options[j]
                    .iter()
                    .map(|(_, r)| self.gain(r))
                    .max()
                    .unwrap_or(0)
            })
            .sum();
        if reach < self.uncovered {
            return false;
        }
        let col = self.order[depth];
        let mut candidates: Vec<(usize, usize)> = self.options[col]
            .iter()
            .enumerate()
            .map(|(k, (_, rows))| (k, self.gain(rows)))
            .filter(|&(_, g)| g > 0)
            .collect();
        if self.lexicographic {
            if self.run(depth + 1) {
                return true;
            }
        } else {
            candidates.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        }
        let options = self.options;
        for (k, _) in candidates {
            let rows = &options[col][k].1;
            self.apply(rows, 1);
            self.picked[col] = Some(k);
            if self.run(depth + 1) {
                return true;
            }
            self.picked[col] = None;
            self.apply(rows, -1);
        }
        if !self.lexicographic {
            return self.run(depth + 1);
        }
        false
    }
}

fn search(
    u: &Matrix,
    options: &[Vec<(VectorVar, Vec<usize>)>],
    order: Vec<usize>,
    lexicographic: bool,
) -> Option<Vec<Choice>> {
    let mut s = Search {
        options,
        order,
        lexicographic,
        hits: vec![0; u.rows()],
        uncovered: u.rows(),
        picked: vec![None; u.cols()],
    };
    s.run(0).then(|| {
        s.picked
            .iter()
            .enumerate()
            .map(|(j, p)| p.map_or(Choice::Skip, |k| Choice::Target(options[j][k].0)))
            .collect()
    })
}

/// Finds a product row orthogonal to every row of `u`, or `None` when `u` is
/// unextendible.
///
/// Among all witnesses, the lexicographically least choice tuple is returned
/// (columns in order, `Skip` before any target, targets by family then
/// unprimed first).
pub fn find_extension(u: &Uom) -> Option<ExtensionWitness> {
    let options: Vec<_> = (0..u.cols()).map(|j| column_options(u, j)).collect();
    // Existence first, visiting high-multiplicity columns early.
    let mut order: Vec<usize> = (0..u.cols()).collect();
    let widest = |j: usize| options[j].iter().map(|(_, r)| r.len()).max().unwrap_or(0);
    order.sort_by_key(|&j| std::cmp::Reverse(widest(j)));
    search(u, &options, order, false)?;
    let choices = search(u, &options, (0..u.cols()).collect(), true)
        .expect("a witness exists, so the ordered search finds one");
    Some(ExtensionWitness::from_choices(u, choices))
}

pub fn is_upb(u: &Uom) -> bool {
    find_extension(u).is_none()
}

/// Exhaustive enumeration of every choice tuple in lexicographic order,
/// without pruning. Intended as an independent check of [`find_extension`].
pub fn naive_extension_oracle(u: &Uom, budget: u128) -> Result<Option<ExtensionWitness>> {
    let n = u.cols();
    let m = u.rows();
    let masks: Vec<Vec<FixedBitSet>> = (0..n)
        .map(|j| {
            let mut v = vec![FixedBitSet::with_capacity(m)];
            v.extend(column_options(u, j).into_iter().map(|(_, rows)| {
                rows.into_iter().collect::<FixedBitSet>()
            }));
            v
        })
        .collect();
    let required = masks
        .iter()
        .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128))
        .unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let mut idx = vec![0usize; n];
    // prefix[k] = union of the masks chosen for columns 0..k
    let mut prefix = vec![FixedBitSet::with_capacity(m); n + 1];
    let mut dirty = 0;
    loop {
        for k in dirty..n {
            let (head, tail) = prefix.split_at_mut(k + 1);
            tail[0].clone_from(&head[k]);
            tail[0].union_with(&masks[k][idx[k]]);
        }
        if prefix[n].count_ones(..) == m {
            let choices = idx
                .iter()
                .enumerate()
                .map(|(j, &k)| match k {
                    0 => Choice::Skip,
                    _ => Choice::Target(column_options(u, j)[k - 1].0),
                })
                .collect();
            return Ok(Some(ExtensionWitness::from_choices(u, choices)));
        }
        // odometer, last column fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < masks[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
        dirty = pos;
    }
}
