//! Orbits of columns under local unitaries and permutation of systems.
//!
//! Read a column as a product vector on `m` qubits. Local unitaries can map
//! each family basis `{x, x'}` onto any other basis, in either order, and a
//! permutation of systems reorders rows. Because distinct families are
//! generic, two columns lie in the same orbit exactly when their multisets of
//! family multiplicity pairs agree.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::graph::group_by_key;
use crate::matrix::{FamilyId, Matrix, Uom, VectorVar};
use crate::stats::column_stats;

/// Sorted multiset of `(max(mu(x), mu(x')), min(mu(x), mu(x')))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitSignature(pub Vec<(usize, usize)>);

impl fmt::Display for OrbitSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(a, b)| format!("({a},{b})")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn column_signature(m: &Matrix, col: usize) -> Result<OrbitSignature> {
    let mut pairs: Vec<(usize, usize)> = column_stats(m, col)?
        .pairs
        .into_iter()
        .map(|(a, b)| (a.max(b), a.min(b)))
        .collect();
    pairs.sort_unstable_by(|a, b| b.cmp(a));
    Ok(OrbitSignature(pairs))
}

/// Columns grouped by signature, groups ordered by first column (0-based).
pub fn orbits(u: &Uom) -> Vec<Vec<usize>> {
    let sigs: Vec<OrbitSignature> = (0..u.cols())
        .map(|j| column_signature(u, j).expect("column in range"))
        .collect();
    group_by_key(&sigs)
}

/// Explicit map taking one column onto another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitWitness {
    /// `(family in source, family in target, swap primes)`.
    pub families: Vec<(FamilyId, FamilyId, bool)>,
    /// Row `r` of the source column goes to row `rows[r]` of the target.
    pub rows: Vec<usize>,
}

impl OrbitWitness {
    pub fn map_var(&self, v: VectorVar, target_col: usize) -> Option<VectorVar> {
        self.families
            .iter()
            .find(|(src, _, _)| *src == v.family)
            .map(|&(_, dst, swap)| VectorVar::new(target_col, dst, v.primed ^ swap))
    }

    /// Checks that the map sends column `from` of `m` onto column `to`.
    pub fn maps(&self, m: &Matrix, from: usize, to: usize) -> bool {
        let mut hit = vec![false; m.rows()];
        self.rows.len() == m.rows()
            && (0..m.rows()).all(|r| {
                let dst = self.rows[r];
                dst < m.rows()
                    && !std::mem::replace(&mut hit[dst], true)
                    && self.map_var(m.entry(r, from), to) == Some(m.entry(dst, to))
            })
    }
}

fn counts(m: &Matrix, col: usize) -> BTreeMap<FamilyId, (usize, usize)> {
    let mut out = BTreeMap::new();
    for v in m.column(col) {
        let e = out.entry(v.family).or_insert((0, 0));
        if v.primed {
            e.1 += 1;
        } else {
            e.0 += 1;
        }
    }
    out
}

/// Builds the family bijection, prime swaps and row permutation taking column
/// `from` to column `to`, or `None` if their signatures differ.
pub fn orbit_witness(m: &Matrix, from: usize, to: usize) -> Result<Option<OrbitWitness>> {
    if column_signature(m, from)? != column_signature(m, to)? {
        return Ok(None);
    }
    let shape = |(a, b): (usize, usize)| (a.max(b), a.min(b));
    let mut src: Vec<(FamilyId, (usize, usize))> = counts(m, from).into_iter().collect();
    let mut dst: Vec<(FamilyId, (usize, usize))> = counts(m, to).into_iter().collect();
    src.sort_by_key(|&(f, c)| (shape(c), f));
    dst.sort_by_key(|&(f, c)| (shape(c), f));
    let families: Vec<(FamilyId, FamilyId, bool)> = src
        .iter()
        .zip(&dst)
        .map(|(&(fa, ca), &(fb, cb))| (fa, fb, ca != cb))
        .collect();
    let witness = OrbitWitness {
        families,
        rows: Vec::new(),
    };
    let mut targets: BTreeMap<VectorVar, Vec<usize>> = BTreeMap::new();
    for r in (0..m.rows()).rev() {
        targets.entry(m.entry(r, to)).or_default().push(r);
    }
    let rows = (0..m.rows())
        .map(|r| {
            let image = witness
                .map_var(m.entry(r, from), to)
                .expect("family paired");
            targets
                .get_mut(&image)
                .and_then(Vec::pop)
                .expect("multiplicities agree")
        })
        .collect();
    Ok(Some(OrbitWitness { rows, ..witness }))
}
