#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use uom_core::graph::SimpleGraph;
use uom_core::{Matrix, Uom};

type Cell = (usize, bool);

fn orthogonal(a: &[Cell], b: &[Cell]) -> bool {
    a.iter().zip(b).any(|(x, y)| x.0 == y.0 && x.1 != y.1)
}

/// Random orthogonal matrix with `1..=max_families` families per column.
///
/// Rows are drawn one at a time; each clash with an earlier row is repaired
/// by copying the partner of that row's entry into a random column.
pub fn random_uom<R: Rng>(rng: &mut R, rows: usize, cols: usize, max_families: usize) -> Uom {
    let families: Vec<usize> = (0..cols).map(|_| rng.gen_range(1..=max_families)).collect();
    'restart: loop {
        let mut grid: Vec<Vec<Cell>> = Vec::new();
        while grid.len() < rows {
            let mut placed = false;
            for _ in 0..50 {
                let mut cand: Vec<Cell> = families
                    .iter()
                    .map(|&f| (rng.gen_range(0..f), rng.gen_bool(0.5)))
                    .collect();
                for prev in &grid {
                    if !orthogonal(&cand, prev) && cols > 0 {
                        let j = rng.gen_range(0..cols);
                        cand[j] = (prev[j].0, !prev[j].1);
                    }
                }
                if grid.iter().all(|prev| orthogonal(&cand, prev)) {
                    grid.push(cand);
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'restart;
            }
        }
        return to_uom(&grid);
    }
}

pub fn to_uom(grid: &[Vec<Cell>]) -> Uom {
    let tokens: Vec<Vec<String>> = grid
        .iter()
        .map(|row| {
            row.iter()
                .map(|&(f, p)| format!("x{f}{}", if p { "'" } else { "" }))
                .collect()
        })
        .collect();
    Uom::new(Matrix::from_token_rows(&tokens).unwrap()).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

pub fn shuffled<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Heap's algorithm over all permutations of `0..n`.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Isomorphism by trying every vertex bijection.
pub fn brute_force_isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut found = false;
    for_each_permutation(a.vertex_count(), |p| {
        if !found && a.edges().all(|(x, y)| b.has_edge(p[x], p[y])) {
            found = true;
        }
    });
    found
}
