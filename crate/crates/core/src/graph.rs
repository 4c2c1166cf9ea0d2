//! Orthogonality graphs.
//!
//! Rows become vertices; every column in which two rows hold an orthogonal
//! pair contributes one edge labelled with that column.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::canon::canonical_label;
use crate::error::Result;
use crate::matrix::Uom;

/// Edge colours, cycled by column.
pub const PALETTE: [&str; 8] = [
    "blue", "yellow", "green", "grey", "red", "purple", "orange", "brown",
];

/// Labelled multigraph of a UOM.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoGraph {
    pub vertices: usize,
    pub columns: usize,
    /// `(i, k, j)` with `i < k`, sorted.
    pub edges: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertices: usize) -> Self {
        Self {
            vertices,
            edges: BTreeSet::new(),
        }
    }

    /// Builds a graph from an edge list, ignoring self-loops and duplicates.
    pub fn from_edges(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(vertices);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(
            a < self.vertices && b < self.vertices,
            "vertex out of range"
        );
        if a != b {
            self.edges.insert((a.min(b), a.max(b)));
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        Self::from_edges(self.vertices, self.edges().map(|(a, b)| (perm[a], perm[b])))
    }

    /// Copy with isolated vertices appended up to `vertices`.
    pub fn padded(&self, vertices: usize) -> Self {
        Self {
            vertices: vertices.max(self.vertices),
            edges: self.edges.clone(),
        }
    }

    pub fn complement(&self) -> Self {
        let n = self.vertices;
        Self::from_edges(
            n,
            (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|&(a, b)| !self.has_edge(a, b)),
        )
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbours();
        let mut seen = vec![false; self.vertices];
        let mut out = Vec::new();
        for start in 0..self.vertices {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut next = 0;
            while next < comp.len() {
                for &w in &adj[comp[next]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                next += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n  node [shape=circle];\n");
        for v in 0..self.vertices {
            let _ = writeln!(out, "  V{};", v + 1);
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  V{} -- V{};", a + 1, b + 1);
        }
        out.push_str("}\n");
        out
    }
}

impl OrthoGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Underlying simple graph, forgetting column labels.
    pub fn projection(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.vertices, self.edges.iter().map(|&(i, k, _)| (i, k)))
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n  node [shape=circle];\n");
        for v in 0..self.vertices {
            let _ = writeln!(out, "  V{};", v + 1);
        }
        for &(i, k, j) in &self.edges {
            let _ = writeln!(
                out,
                "  V{} -- V{} [column={}, color=\"{}\"];",
                i + 1,
                k + 1,
                j + 1,
                PALETTE[j % PALETTE.len()]
            );
        }
        out.push_str("}\n");
        out
    }
}

pub fn build_graph(u: &Uom) -> OrthoGraph {
    let m = u.rows();
    let mut edges = Vec::new();
    for i in 0..m {
        for k in i + 1..m {
            edges.extend(u.orthogonal_columns_unchecked(i, k).map(|j| (i, k, j)));
        }
    }
    OrthoGraph {
        vertices: m,
        columns: u.cols(),
        edges,
    }
}

/// True iff every pair of rows is orthogonal in exactly one column.
pub fn is_complete_single_pair(u: &Uom) -> bool {
    let g = build_graph(u);
    let m = g.vertices;
    g.edge_count() == m * m.saturating_sub(1) / 2 && g.projection().edge_count() == g.edge_count()
}

/// Edges of `g` attributed to column `col`.
pub fn column_subgraph(g: &OrthoGraph, col: usize) -> Result<SimpleGraph> {
    if col >= g.columns {
        return Err(crate::Error::IndexOutOfRange {
            what: "column",
            index: col,
            len: g.columns,
        });
    }
    Ok(SimpleGraph::from_edges(
        g.vertices,
        g.edges
            .iter()
            .filter(|e| e.2 == col)
            .map(|&(i, k, _)| (i, k)),
    ))
}

/// Columns grouped by isomorphism type of their subgraphs. Groups are
/// ordered by their first column; columns are 0-based.
pub fn iso_classes(u: &Uom) -> Result<Vec<Vec<usize>>> {
    let g = build_graph(u);
    let labels = (0..g.columns)
        .map(|j| canonical_label(&column_subgraph(&g, j)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(group_by_key(&labels))
}

pub(crate) fn group_by_key<K: PartialEq>(keys: &[K]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (j, key) in keys.iter().enumerate() {
        match groups.iter_mut().find(|g| keys[g[0]] == *key) {
            Some(g) => g.push(j),
            None => groups.push(vec![j]),
        }
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_row_has_no_edges() {
        let u = Uom::parse("a b c").unwrap();
        let g = build_graph(&u);
        assert_eq!(g.edge_count(), 0);
        assert!(is_complete_single_pair(&u));
        assert_eq!(
            g.to_dot("uom"),
            "graph uom {\n  node [shape=circle];\n  V1;\n}\n"
        );
    }

    #[test]
    fn standard_basis_is_not_single_pair() {
        let u = Uom::parse("0 0\n0 1\n1 0\n1 1").unwrap();
        assert!(!is_complete_single_pair(&u));
        assert_eq!(build_graph(&u).edge_count(), 8);
    }

    #[test]
    fn column_subgraph_bounds() {
        let u = Uom::parse("a b\na' b'").unwrap();
        let g = build_graph(&u);
        assert_eq!(column_subgraph(&g, 1).unwrap().edge_count(), 1);
        assert!(column_subgraph(&g, 2).is_err());
    }

    #[test]
    fn dot_export_labels_columns() {
        let u = Uom::parse("a b\na' b'").unwrap();
        let dot = build_graph(&u).to_dot("uom");
        assert!(dot.contains("V1 -- V2 [column=1, color=\"blue\"];"));
        assert!(dot.contains("V1 -- V2 [column=2, color=\"yellow\"];"));
    }

    #[test]
    fn components_and_complement() {
        let g = SimpleGraph::from_edges(5, [(0, 1), (3, 4), (1, 1)]);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert_eq!(g.complement().edge_count(), 8);
    }
}
