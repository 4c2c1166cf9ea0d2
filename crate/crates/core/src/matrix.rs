//! Symbolic qubit matrices.
//!
//! Every entry of a [`Matrix`] is a [`VectorVar`]: a member of a two-element
//! orthonormal qubit basis `{x, x'}` (a *family*). Families are scoped to one
//! column. Two entries are orthogonal exactly when they sit in the same column,
//! belong to the same family and carry opposite prime flags. Entries of
//! distinct families are generic: never orthogonal, never equal.
//!
//! A [`Uom`] is a matrix whose rows are pairwise orthogonal product vectors.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Family name used for the computational basis `{0, 1}`.
pub const STD_FAMILY: &str = "std";

/// Column-local identifier of a family, assigned by first occurrence
/// (scanning the column top to bottom).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VectorVar {
    pub column: usize,
    pub family: FamilyId,
    pub primed: bool,
}

impl VectorVar {
    pub fn new(column: usize, family: FamilyId, primed: bool) -> Self {
        Self {
            column,
            family,
            primed,
        }
    }

    /// The orthogonal partner within the same family.
    pub fn partner(self) -> Self {
        Self {
            primed: !self.primed,
            ..self
        }
    }

    pub fn is_orthogonal_to(self, other: VectorVar) -> bool {
        self.column == other.column && self.family == other.family && self.primed != other.primed
    }
}

/// An `m x n` grid of vector variables with per-column family names.
///
/// No orthogonality guarantee; see [`Uom`] for the validated form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<VectorVar>,
    names: Vec<Vec<String>>,
}

impl Matrix {
    /// An empty `0 x 0` matrix.
    pub fn empty() -> Self {
        Self {
            rows: 0,
            cols: 0,
            entries: Vec::new(),
            names: Vec::new(),
        }
    }

    /// Builds a matrix from a grid of variables and per-column family names.
    ///
    /// Family ids are renumbered by first occurrence and unused names are
    /// dropped, so two grids that differ only in id assignment compare equal.
    pub fn from_vars(grid: Vec<Vec<VectorVar>>, names: Vec<Vec<String>>) -> Result<Self> {
        let rows = grid.len();
        let cols = grid.first().map_or(0, Vec::len);
        for (i, row) in grid.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedRow {
                    line: i + 1,
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, v) in row.iter().enumerate() {
                if v.column != j {
                    return Err(Error::FamilyLeak {
                        row: i,
                        column: j,
                        found_column: v.column,
                    });
                }
                let known = names.get(j).map_or(0, Vec::len);
                if v.family.0 as usize >= known {
                    return Err(Error::UnknownFamily {
                        column: j,
                        family: v.family.0,
                    });
                }
            }
        }
        let mut entries: Vec<VectorVar> = grid.into_iter().flatten().collect();
        let mut new_names = vec![Vec::new(); cols];
        for j in 0..cols {
            let mut remap: HashMap<FamilyId, FamilyId> = HashMap::new();
            for i in 0..rows {
                let v = &mut entries[i * cols + j];
                let next = FamilyId(remap.len() as u32);
                let id = *remap.entry(v.family).or_insert_with(|| {
                    new_names[j].push(names[j][v.family.0 as usize].clone());
                    next
                });
                v.family = id;
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
            names: new_names,
        })
    }

    /// Builds a matrix from entry strings such as `a`, `a'`, `0`, `1`.
    pub fn from_token_rows<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self> {
        let mut builder = Builder::default();
        for (i, row) in rows.iter().enumerate() {
            let parsed = row
                .iter()
                .map(|t| parse_entry(t.as_ref(), i + 1))
                .collect::<Result<Vec<_>>>()?;
            builder.push_row(parsed, i + 1)?;
        }
        Ok(builder.finish())
    }

    /// Parses the line-oriented text format without checking orthogonality.
    pub fn parse(text: &str) -> Result<Self> {
        let mut builder = Builder::default();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let parsed = trimmed
                .split_whitespace()
                .map(|t| parse_entry(t, line_no))
                .collect::<Result<Vec<_>>>()?;
            builder.push_row(parsed, line_no)?;
        }
        Ok(builder.finish())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> VectorVar {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[VectorVar] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = VectorVar> + '_ {
        (0..self.rows).map(move |i| self.entry(i, col))
    }

    /// Number of distinct families named in column `col`.
    pub fn family_count(&self, col: usize) -> usize {
        self.names[col].len()
    }

    pub fn family_name(&self, col: usize, family: FamilyId) -> &str {
        &self.names[col][family.0 as usize]
    }

    /// Entry rendered in the text format (`a`, `a'`, `0`, `1`).
    pub fn entry_token(&self, v: VectorVar) -> String {
        let name = self.family_name(v.column, v.family);
        match (name, v.primed) {
            (STD_FAMILY, false) => "0".to_owned(),
            (STD_FAMILY, true) => "1".to_owned(),
            (_, false) => name.to_owned(),
            (_, true) => format!("{name}'"),
        }
    }

    pub fn check_row(&self, row: usize) -> Result<()> {
        if row >= self.rows {
            return Err(Error::IndexOutOfRange {
                what: "row",
                index: row,
                len: self.rows,
            });
        }
        Ok(())
    }

    pub fn check_column(&self, col: usize) -> Result<()> {
        if col >= self.cols {
            return Err(Error::IndexOutOfRange {
                what: "column",
                index: col,
                len: self.cols,
            });
        }
        Ok(())
    }

    /// Columns in which rows `i` and `k` hold an orthogonal pair.
    pub fn orthogonal_columns(&self, i: usize, k: usize) -> Result<Vec<usize>> {
        self.check_row(i)?;
        self.check_row(k)?;
        if i == k {
            return Err(Error::SameRow(i));
        }
        Ok(self.orthogonal_columns_unchecked(i, k).collect())
    }

    pub(crate) fn orthogonal_columns_unchecked(
        &self,
        i: usize,
        k: usize,
    ) -> impl Iterator<Item = usize> + '_ {
        let (a, b) = (self.row(i), self.row(k));
        (0..self.cols).filter(move |&j| a[j].is_orthogonal_to(b[j]))
    }

    /// Number of grid positions holding exactly `v`.
    pub fn multiplicity(&self, v: VectorVar) -> usize {
        if v.column >= self.cols {
            return 0;
        }
        self.column(v.column).filter(|&e| e == v).count()
    }

    /// First pair of rows with no orthogonal column, if any.
    pub fn first_non_orthogonal_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for k in i + 1..self.rows {
                if self.orthogonal_columns_unchecked(i, k).next().is_none() {
                    return Some((i, k));
                }
            }
        }
        None
    }

    pub fn is_orthogonal(&self) -> bool {
        self.first_non_orthogonal_pair().is_none()
    }

    fn to_grid(&self) -> Vec<Vec<VectorVar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn rebuild(&self, grid: Vec<Vec<VectorVar>>, names: Vec<Vec<String>>) -> Self {
        Self::from_vars(grid, names).expect("grid derived from a well-formed matrix")
    }

    /// Copy with the given rows removed.
    pub fn without_rows(&self, drop: &[usize]) -> Self {
        let grid = (0..self.rows)
            .filter(|i| !drop.contains(i))
            .map(|i| self.row(i).to_vec())
            .collect();
        self.rebuild(grid, self.names.clone())
    }

    /// Copy whose row `i` is the original row `order[i]`.
    pub fn permute_rows(&self, order: &[usize]) -> Result<Self> {
        check_permutation(order, self.rows, "row")?;
        let grid = order.iter().map(|&i| self.row(i).to_vec()).collect();
        Ok(self.rebuild(grid, self.names.clone()))
    }

    /// Copy whose column `j` is the original column `order[j]`.
    pub fn permute_columns(&self, order: &[usize]) -> Result<Self> {
        check_permutation(order, self.cols, "column")?;
        let grid = (0..self.rows)
            .map(|i| {
                order
                    .iter()
                    .enumerate()
                    .map(|(j, &src)| VectorVar {
                        column: j,
                        ..self.entry(i, src)
                    })
                    .collect()
            })
            .collect();
        let names = order.iter().map(|&src| self.names[src].clone()).collect();
        Ok(self.rebuild(grid, names))
    }

    /// Replaces every occurrence of family `from` in column `col` by family
    /// `into`, optionally swapping the prime flags of the moved entries.
    ///
    /// Orthogonal pairs are never lost, so a `Uom` stays a `Uom`.
    pub fn merge_families(
        &self,
        col: usize,
        from: FamilyId,
        into: FamilyId,
        flip: bool,
    ) -> Result<Self> {
        self.check_column(col)?;
        for f in [from, into] {
            if f.0 as usize >= self.family_count(col) {
                return Err(Error::UnknownFamily {
                    column: col,
                    family: f.0,
                });
            }
        }
        let mut grid = self.to_grid();
        for row in &mut grid {
            let v = &mut row[col];
            if v.family == from {
                v.family = into;
                v.primed ^= flip;
            }
        }
        Ok(self.rebuild(grid, self.names.clone()))
    }

    /// Swaps primed and unprimed within one family.
    pub fn swap_prime(&self, col: usize, family: FamilyId) -> Result<Self> {
        self.check_column(col)?;
        let mut grid = self.to_grid();
        for row in &mut grid {
            if row[col].family == family {
                row[col].primed = !row[col].primed;
            }
        }
        Ok(self.rebuild(grid, self.names.clone()))
    }

    /// Copy with every family of column `col` renamed through `rename`.
    pub fn rename_families(&self, col: usize, rename: impl Fn(&str) -> String) -> Result<Self> {
        self.check_column(col)?;
        let mut names = self.names.clone();
        names[col] = names[col].iter().map(|n| rename(n)).collect();
        let mut seen = std::collections::HashSet::new();
        if !names[col].iter().all(|n| seen.insert(n.clone())) {
            return Err(Error::Domain(format!(
                "renaming merges families in column {}",
                col + 1
            )));
        }
        Ok(self.rebuild(self.to_grid(), names))
    }
}

fn check_permutation(order: &[usize], len: usize, what: &'static str) -> Result<()> {
    let mut seen = vec![false; len];
    if order.len() != len {
        return Err(Error::Domain(format!(
            "{what} permutation has length {}, expected {len}",
            order.len()
        )));
    }
    for &i in order {
        if i >= len || std::mem::replace(&mut seen[i], true) {
            return Err(Error::Domain(format!("invalid {what} permutation")));
        }
    }
    Ok(())
}

/// Serializes in the text format, one row per line.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|&v| self.entry_token(v)).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn parse_entry(token: &str, line: usize) -> Result<(String, bool)> {
    let malformed = || Error::MalformedEntry {
        line,
        token: token.to_owned(),
    };
    match token {
        "0" => return Ok((STD_FAMILY.to_owned(), false)),
        "1" => return Ok((STD_FAMILY.to_owned(), true)),
        _ => {}
    }
    let (name, primed) = match token.strip_suffix('\'') {
        Some(rest) => (rest, true),
        None => (token, false),
    };
    let mut chars = name.chars();
    let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
    if !head_ok || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(malformed());
    }
    Ok((name.to_owned(), primed))
}

#[derive(Default)]
struct Builder {
    cols: Option<usize>,
    grid: Vec<Vec<VectorVar>>,
    names: Vec<Vec<String>>,
    lookup: Vec<HashMap<String, FamilyId>>,
}

impl Builder {
    fn push_row(&mut self, row: Vec<(String, bool)>, line: usize) -> Result<()> {
        let cols = *self.cols.get_or_insert(row.len());
        if row.len() != cols {
            return Err(Error::RaggedRow {
                line,
                expected: cols,
                found: row.len(),
            });
        }
        if self.names.is_empty() {
            self.names = vec![Vec::new(); cols];
            self.lookup = vec![HashMap::new(); cols];
        }
        let mut out = Vec::with_capacity(cols);
        for (j, (name, primed)) in row.into_iter().enumerate() {
            let next = FamilyId(self.names[j].len() as u32);
            let family = match self.lookup[j].get(&name) {
                Some(&id) => id,
                None => {
                    self.lookup[j].insert(name.clone(), next);
                    self.names[j].push(name);
                    next
                }
            };
            out.push(VectorVar::new(j, family, primed));
        }
        self.grid.push(out);
        Ok(())
    }

    fn finish(self) -> Matrix {
        let rows = self.grid.len();
        let cols = self.cols.unwrap_or(0);
        Matrix {
            rows,
            cols,
            entries: self.grid.into_iter().flatten().collect(),
            names: self.names,
        }
    }
}

/// A matrix whose rows are pairwise orthogonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Uom(Matrix);

impl Uom {
    pub fn new(matrix: Matrix) -> Result<Self> {
        match matrix.first_non_orthogonal_pair() {
            Some((first, second)) => Err(Error::NotOrthogonal { first, second }),
            None => Ok(Self(matrix)),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(Matrix::parse(text)?)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

impl Deref for Uom {
    type Target = Matrix;

    fn deref(&self) -> &Matrix {
        &self.0
    }
}

impl TryFrom<Matrix> for Uom {
    type Error = Error;

    fn try_from(m: Matrix) -> Result<Self> {
        Self::new(m)
    }
}

impl fmt::Display for Uom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Parses and validates a matrix in the text format.
pub fn parse_uom(text: &str) -> Result<Uom> {
    Uom::parse(text)
}

pub fn serialize_uom(u: &Matrix) -> String {
    u.to_string()
}
