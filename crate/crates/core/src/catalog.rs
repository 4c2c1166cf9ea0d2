//! Built-in UOM constructions, the odd-`q` circulant family and the size
//! tables for small qubit counts.
//!
//! Matrices are stored in the text format and parsed on load; the facts
//! recorded next to each one are recomputed and compared every time an entry
//! is loaded.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::extension::is_upb;
use crate::graph::iso_classes;
use crate::locc::{audit_all_subsets, Verdict};
use crate::matrix::{Matrix, Uom};
use crate::orbit::orbits;
use crate::stats::p_vector;

const UPB_4X3: &str = "\
0 0 0
1 b c
a 1 c'
a' b' 1
";

const UPB_6X4: &str = "\
b1_1 b1_2 b1_3 b1_4
b1_1 b2_2 b1_3' b2_4
b1_1' b1_2 b3_3 b3_4
b1_1' b2_2 b4_3 b3_4'
b5_1 b2_2' b3_3' b1_4'
b5_1' b1_2' b4_3' b2_4'
";

const UPB_8X6: &str = "\
c1_1 c1_2 c1_3 c1_4 c1_5 c1_6
c1_1 c2_2 c2_3 c1_4' c2_5 c2_6
c1_1' c1_2 c2_3 c3_4 c3_5 c3_6
c1_1' c2_2 c1_3 c3_4' c4_5 c4_6
c5_1 c5_2 c2_3' c5_4 c1_5' c4_6'
c5_1' c2_2' c6_3 c6_4 c3_5' c1_6'
c7_1 c1_2' c6_3' c5_4' c4_5' c2_6'
c7_1' c5_2' c1_3' c6_4' c2_5' c3_6'
";

const UPB_11X7: &str = "\
a1_1 a1_2 a1_3 a1_4 a1_5 a1_6 a1_7
a1_1 a2_2 a2_3 a2_4 a1_5' a2_6 a2_7
a1_1' a2_2 a1_3 a3_4 a3_5 a3_6 a3_7
a1_1' a1_2 a2_3 a4_4 a4_5 a4_6 a3_7'
a4_1 a1_2' a5_3 a2_4' a5_5 a3_6' a5_7
a4_1 a1_2' a1_3 a3_4' a6_5 a2_6' a5_7'
a4_1' a7_2 a2_3' a7_4 a3_5' a1_6' a7_7
a4_1' a7_2' a2_3' a3_4' a6_5 a8_6 a1_7'
a9_1 a7_2' a1_3' a4_4' a5_5' a8_6' a2_7'
a9_1 a7_2 a1_3' a7_4' a4_5' a2_6' a5_7'
a9_1' a2_2' a5_3' a1_4' a6_5' a4_6' a7_7'
";

const UPB_11X8: &str = "\
d1_1 d1_2 d1_3 d1_4 d1_5 d1_6 d1_7 d1_8
d1_1' d2_2 d2_3 d2_4 d2_5 d2_6 d2_7 d2_8
d3_1 d2_2' d3_3 d3_4 d1_5' d3_6 d3_7 d3_8
d4_1 d3_2 d4_3 d3_4' d3_5 d1_6' d4_7 d2_8'
d5_1 d1_2' d2_3' d4_4 d4_5 d3_6' d4_7' d4_8
d3_1' d3_2' d1_3 d4_4' d5_5 d2_6' d1_7' d5_8
d5_1' d7_2 d4_3' d2_4' d5_5' d4_6 d3_7' d1_8'
d4_1' d7_2 d3_3' d1_4' d4_5' d4_6' d2_7' d5_8'
d4_1' d7_2' d1_3' d4_4' d2_5' d5_6 d5_7 d3_8'
d5_1' d7_2' d3_3' d1_4' d3_5' d5_6' d2_7' d5_8'
d3_1' d3_2' d1_3' d1_4 d5_5 d2_6' d5_7' d4_8'
";

/// Largest qubit count accepted for `standard_basis_<n>`.
pub const MAX_STANDARD_BASIS_QUBITS: usize = 8;

/// Facts recorded for a catalog matrix. `None` means nothing is recorded.
/// Partitions use 0-based column indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExpectedFacts {
    pub p_vector: Option<Vec<usize>>,
    pub sum_p: Option<usize>,
    pub is_upb: Option<bool>,
    pub iso_classes: Option<Vec<Vec<usize>>>,
    pub orbits: Option<Vec<Vec<usize>>>,
    /// Side size `k` such that every `k`-subset of columns is an
    /// indistinguishable bipartition.
    pub indistinguishable_side: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub uom: Uom,
    pub provenance: &'static str,
    pub expected: ExpectedFacts,
}

fn parts(groups: &[&[usize]]) -> Vec<Vec<usize>> {
    groups
        .iter()
        .map(|p| p.iter().map(|c| c - 1).collect())
        .collect()
}

/// Names accepted by [`builtin`]; `standard_basis_<n>` takes any `n` in
/// `1..=MAX_STANDARD_BASIS_QUBITS`.
pub fn list() -> Vec<&'static str> {
    vec![
        "upb_4x3",
        "upb_6x4",
        "upb_8x6",
        "upb_11x7",
        "upb_11x8",
        "standard_basis_n",
    ]
}

/// Loads a catalog matrix and re-derives every recorded fact.
pub fn builtin(name: &str) -> Result<CatalogEntry> {
    let (text, provenance, expected) = match name {
        "upb_4x3" => (
            UPB_4X3.to_owned(),
            "three-qubit UPB of size 4 (Shifts construction)",
            ExpectedFacts {
                is_upb: Some(true),
                p_vector: Some(vec![2, 2, 2]),
                sum_p: Some(6),
                ..Default::default()
            },
        ),
        "upb_6x4" => (
            UPB_6X4.to_owned(),
            "four-qubit UPB of size 6; claimed unique in the literature, not re-verified here",
            ExpectedFacts {
                is_upb: Some(true),
                iso_classes: Some(parts(&[&[1], &[2], &[3, 4]])),
                orbits: Some(parts(&[&[1], &[2], &[3, 4]])),
                ..Default::default()
            },
        ),
        "upb_8x6" => (
            UPB_8X6.to_owned(),
            "six-qubit UPB of size 8",
            ExpectedFacts {
                is_upb: Some(true),
                p_vector: Some(vec![6, 5, 5, 4, 4, 4]),
                sum_p: Some(28),
                iso_classes: Some(parts(&[&[1], &[2, 3], &[4, 5, 6]])),
                orbits: Some(parts(&[&[1], &[2, 3], &[4, 5, 6]])),
                ..Default::default()
            },
        ),
        "upb_11x7" => (
            UPB_11X7.to_owned(),
            "seven-qubit UPB of size 11",
            ExpectedFacts {
                is_upb: Some(true),
                p_vector: Some(vec![10, 10, 11, 6, 6, 6, 6]),
                sum_p: Some(55),
                iso_classes: Some(parts(&[&[1, 2], &[3], &[4, 5, 6, 7]])),
                orbits: Some(parts(&[&[1, 2], &[3], &[4, 5, 6, 7]])),
                indistinguishable_side: Some(2),
            },
        ),
        "upb_11x8" => (
            UPB_11X8.to_owned(),
            "eight-qubit UPB of size 11",
            ExpectedFacts {
                is_upb: Some(true),
                p_vector: Some(vec![7, 8, 8, 8, 6, 6, 6, 6]),
                sum_p: Some(55),
                iso_classes: Some(parts(&[&[1], &[2, 3, 4], &[5, 6, 7, 8]])),
                orbits: Some(parts(&[&[1], &[2, 3, 4], &[5, 6, 7, 8]])),
                ..Default::default()
            },
        ),
        _ => {
            let n = name
                .strip_prefix("standard_basis_")
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|n| (1..=MAX_STANDARD_BASIS_QUBITS).contains(n))
                .ok_or_else(|| Error::UnknownName(name.to_owned()))?;
            (
                standard_basis_text(n),
                "computational basis",
                ExpectedFacts {
                    is_upb: Some(true),
                    ..Default::default()
                },
            )
        }
    };
    let entry = CatalogEntry {
        name: name.to_owned(),
        uom: Uom::parse(&text)?,
        provenance,
        expected,
    };
    verify_facts(&entry)?;
    Ok(entry)
}

fn verify_facts(entry: &CatalogEntry) -> Result<()> {
    let u = &entry.uom;
    let e = &entry.expected;
    let mismatch = |fact: &str| Error::FactMismatch {
        name: entry.name.clone(),
        fact: fact.to_owned(),
    };
    let p = p_vector(u);
    if e.p_vector.as_ref().is_some_and(|want| *want != p) {
        return Err(mismatch("p_vector"));
    }
    if e.sum_p.is_some_and(|want| want != p.iter().sum::<usize>()) {
        return Err(mismatch("sum_p"));
    }
    if e.is_upb.is_some_and(|want| want != is_upb(u)) {
        return Err(mismatch("is_upb"));
    }
    if let Some(want) = &e.iso_classes {
        if *want != iso_classes(u).map_err(|_| mismatch("iso_classes"))? {
            return Err(mismatch("iso_classes"));
        }
    }
    if e.orbits.as_ref().is_some_and(|want| *want != orbits(u)) {
        return Err(mismatch("orbits"));
    }
    if let Some(k) = e.indistinguishable_side {
        let table = audit_all_subsets(u, k)?;
        if table
            .reports
            .iter()
            .any(|r| r.verdict != Verdict::Indistinguishable)
        {
            return Err(mismatch("indistinguishable bipartitions"));
        }
    }
    Ok(())
}

fn standard_basis_text(n: usize) -> String {
    (0..1usize << n)
        .map(|r| {
            let bits: Vec<&str> = (0..n)
                .map(|j| if r >> (n - 1 - j) & 1 == 1 { "1" } else { "0" })
                .collect();
            bits.join(" ") + "\n"
        })
        .collect()
}

/// The `(q + 1) x q` circulant UOM for odd `q >= 3`.
///
/// Row 0 is all zeros. Row `i >= 1` is the pattern
/// `[1, psi_1, ..., psi_h, psi_h', ..., psi_1']` (with `h = (q - 1) / 2`)
/// shifted right by `i - 1`, so every column holds each pattern symbol
/// exactly once.
pub fn gen_odd_q(q: usize) -> Result<Uom> {
    if q < 3 || q.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "q must be odd and at least 3, got {q}"
        )));
    }
    let h = (q - 1) / 2;
    let symbol = |k: usize| match k {
        0 => "1".to_owned(),
        k if k <= h => format!("psi{k}"),
        k => format!("psi{}'", q - k),
    };
    let mut rows = vec![vec!["0".to_owned(); q]];
    for i in 1..=q {
        rows.push((0..q).map(|j| symbol((j + q - (i - 1)) % q)).collect());
    }
    Uom::new(Matrix::from_token_rows(&rows)?)
}

/// Minimum size of an unextendible product basis on `p` qubits.
pub fn min_upb_size(p: usize) -> usize {
    match p {
        _ if p % 2 == 1 => p + 1,
        4 => p + 2,
        _ if p % 4 == 2 => p + 2,
        8 => p + 3,
        _ => p + 4,
    }
}

/// Sizes for which `n`-qubit UPBs are known to exist, for `n` in `{7, 8}`.
pub fn known_sizes(n: usize) -> Result<BTreeSet<usize>> {
    match n {
        7 => Ok([8].into_iter().chain(10..=122).chain([124, 128]).collect()),
        8 => Ok((11..=250).chain([252, 256]).collect()),
        _ => Err(Error::UnknownN(n)),
    }
}
