//! Per-column multiplicity statistics and the pair-counting bound.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Uom};

/// Largest multiplicity a vector variable may have in an `11 x 7` UOM.
pub const MAX_MULTIPLICITY: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColumnStats {
    /// Number of families present in the column.
    pub sigma: usize,
    /// `(mu(x), mu(x'))` for each family present, sorted descending.
    pub pairs: Vec<(usize, usize)>,
    /// Orthogonal pairs contributed by the column: `sum mu(x) * mu(x')`.
    pub p: usize,
}

pub fn column_stats(m: &Matrix, col: usize) -> Result<ColumnStats> {
    m.check_column(col)?;
    let mut counts = vec![(0usize, 0usize); m.family_count(col)];
    for v in m.column(col) {
        let slot = &mut counts[v.family.0 as usize];
        if v.primed {
            slot.1 += 1;
        } else {
            slot.0 += 1;
        }
    }
    let mut pairs: Vec<(usize, usize)> = counts.into_iter().filter(|&(a, b)| a + b > 0).collect();
    pairs.sort_unstable_by(|a, b| b.cmp(a));
    let p = pairs.iter().map(|&(a, b)| a * b).sum();
    Ok(ColumnStats {
        sigma: pairs.len(),
        pairs,
        p,
    })
}

/// `p_j` for every column.
pub fn p_vector(m: &Matrix) -> Vec<usize> {
    (0..m.cols())
        .map(|j| column_stats(m, j).expect("column in range").p)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairBound {
    /// `sum_j p_j`
    pub lhs: usize,
    /// `m (m - 1) / 2`
    pub rhs: usize,
    pub holds: bool,
}

/// Compares the number of orthogonal incidences with the number of row pairs.
pub fn pair_bound(u: &Uom) -> PairBound {
    let lhs = p_vector(u).iter().sum();
    let m = u.rows();
    let rhs = m * m.saturating_sub(1) / 2;
    PairBound {
        lhs,
        rhs,
        holds: lhs >= rhs,
    }
}

/// Attainable values of `p_j` for a column with `sigma` families in a matrix
/// of `rows` rows.
///
/// Each family `{x, x'}` contributes `mu(x) * mu(x')`, where both
/// multiplicities lie in `1..=MAX_MULTIPLICITY` (a UOM contains the partner of
/// every entry) and the multiplicities of all families sum to `rows`.
pub fn sigma_p_feasible(sigma: usize, rows: usize) -> Result<BTreeSet<usize>> {
    let min_rows = 2 * sigma;
    let max_rows = 2 * MAX_MULTIPLICITY * sigma;
    if sigma == 0 || rows < min_rows || rows > max_rows {
        return Err(Error::Domain(format!(
            "no column of {rows} rows has {sigma} families"
        )));
    }
    let mut out = BTreeSet::new();
    let mut stack = Vec::with_capacity(sigma);
    decompose(
        sigma,
        rows,
        (MAX_MULTIPLICITY, MAX_MULTIPLICITY),
        &mut stack,
        &mut out,
    );
    Ok(out)
}

// Families are generated as a non-increasing sequence of (mu(x), mu(x')) with
// mu(x) >= mu(x'), so every multiset is visited once.
fn decompose(
    left: usize,
    rows: usize,
    cap: (usize, usize),
    stack: &mut Vec<(usize, usize)>,
    out: &mut BTreeSet<usize>,
) {
    if left == 0 {
        if rows == 0 {
            out.insert(stack.iter().map(|&(a, b)| a * b).sum());
        }
        return;
    }
    if rows < 2 * left || rows > 2 * MAX_MULTIPLICITY * left {
        return;
    }
    for a in (1..=cap.0).rev() {
        for b in (1..=a).rev() {
            if (a, b) > cap || a + b > rows {
                continue;
            }
            stack.push((a, b));
            decompose(left - 1, rows - a - b, (a, b), stack, out);
            stack.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::parse_uom;

    #[test]
    fn single_unprimed_family_has_no_pairs() {
        let m = Matrix::parse("a\na\na").unwrap();
        let s = column_stats(&m, 0).unwrap();
        assert_eq!(
            s,
            ColumnStats {
                sigma: 1,
                pairs: vec![(3, 0)],
                p: 0
            }
        );
    }

    #[test]
    fn out_of_range_column() {
        let m = Matrix::parse("a b").unwrap();
        assert!(matches!(
            column_stats(&m, 2),
            Err(Error::IndexOutOfRange { what: "column", .. })
        ));
    }

    #[test]
    fn standard_basis_two_qubits() {
        let u = parse_uom("0 0\n0 1\n1 0\n1 1").unwrap();
        assert_eq!(p_vector(&u), vec![4, 4]);
        assert_eq!(
            pair_bound(&u),
            PairBound {
                lhs: 8,
                rhs: 6,
                holds: true
            }
        );
    }

    #[test]
    fn feasible_sets_at_eleven_rows() {
        let set = |s| {
            sigma_p_feasible(s, 11)
                .unwrap()
                .into_iter()
                .collect::<Vec<_>>()
        };
        assert_eq!(set(5), vec![6]);
        assert_eq!(set(4), vec![7, 8, 9]);
        assert_eq!(set(3), vec![8, 9, 10, 11, 12, 14]);
        assert_eq!(set(2), vec![12, 13, 14, 15, 16, 18]);
    }

    #[test]
    fn feasible_sets_reject_impossible_sigma() {
        for s in [0, 1, 6, 7] {
            assert!(
                matches!(sigma_p_feasible(s, 11), Err(Error::Domain(_))),
                "sigma {s}"
            );
        }
    }
}
