//! Canonical labelling and subgraph embedding for small graphs.
//!
//! Canonical forms come from individualisation–refinement: colour refinement
//! to an equitable ordered partition, then branching on the first
//! non-singleton cell until the partition is discrete. Each leaf orders the
//! vertices; the lexicographically largest adjacency string over all leaves
//! is the label. Branches on twin vertices (same neighbourhood apart from each
//! other) are skipped since swapping twins is an automorphism fixing the
//! current partition. Components are labelled separately and the sorted
//! multiset of component labels forms the graph label.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Vertex limit for [`canonical_label`] and [`subgraph_embeds`].
pub const CANON_LIMIT: usize = 16;

/// Byte string equal for two graphs iff they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalLabel(pub Vec<u8>);

pub fn canonical_label(g: &SimpleGraph) -> Result<CanonicalLabel> {
    let n = g.vertex_count();
    if n > CANON_LIMIT {
        return Err(Error::TooLarge {
            vertices: n,
            limit: CANON_LIMIT,
        });
    }
    let mut parts: Vec<Vec<u8>> = g
        .components()
        .into_iter()
        .map(|comp| {
            let mut adj = vec![0u32; comp.len()];
            for (a, b) in g.edges() {
                if let (Ok(ia), Ok(ib)) = (comp.binary_search(&a), comp.binary_search(&b)) {
                    adj[ia] |= 1 << ib;
                    adj[ib] |= 1 << ia;
                }
            }
            ComponentSearch::new(adj).run()
        })
        .collect();
    parts.sort();
    let mut label = vec![n as u8];
    for p in parts {
        label.push(p.len() as u8);
        label.extend(p);
    }
    Ok(CanonicalLabel(label))
}

struct ComponentSearch {
    adj: Vec<u32>,
    best: Option<Vec<u8>>,
}

impl ComponentSearch {
    fn new(adj: Vec<u32>) -> Self {
        Self { adj, best: None }
    }

    fn run(mut self) -> Vec<u8> {
        let colours = self.refine(vec![0; self.adj.len()]);
        self.descend(colours);
        self.best.expect("at least one leaf")
    }

    fn is_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    fn are_twins(&self, a: usize, b: usize) -> bool {
        let strip = !((1u32 << a) | (1u32 << b));
        self.adj[a] & strip == self.adj[b] & strip
    }

    /// Colour refinement of an ordered partition given as colour indices.
    fn refine(&self, mut colours: Vec<usize>) -> Vec<usize> {
        let n = colours.len();
        loop {
            let cells = colours.iter().max().map_or(0, |c| c + 1);
            let keys: Vec<(usize, Vec<usize>)> = (0..n)
                .map(|v| {
                    let mut counts = vec![0; cells];
                    for w in (0..n).filter(|&w| self.is_edge(v, w)) {
                        counts[colours[w]] += 1;
                    }
                    (colours[v], counts)
                })
                .collect();
            let next = rank(&keys);
            let next_cells = next.iter().max().map_or(0, |c| c + 1);
            colours = next;
            if next_cells == cells {
                return colours;
            }
        }
    }

    fn descend(&mut self, colours: Vec<usize>) {
        let n = colours.len();
        let mut sizes = vec![0usize; n];
        for &c in &colours {
            sizes[c] += 1;
        }
        let Some(target) = (0..n).find(|&c| sizes[c] > 1) else {
            self.leaf(&colours);
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for v in (0..n).filter(|&v| colours[v] == target) {
            if tried.iter().any(|&w| self.are_twins(v, w)) {
                continue;
            }
            tried.push(v);
            let split: Vec<(usize, usize)> =
                (0..n).map(|u| (colours[u], usize::from(u != v))).collect();
            let next = self.refine(rank(&split));
            self.descend(next);
        }
    }

    fn leaf(&mut self, colours: &[usize]) {
        let n = colours.len();
        let mut order = vec![0; n];
        for (v, &c) in colours.iter().enumerate() {
            order[c] = v;
        }
        let mut cert = vec![n as u8];
        let mut byte = 0u8;
        let mut filled = 0;
        for a in 0..n {
            for b in a + 1..n {
                byte = byte << 1 | u8::from(self.is_edge(order[a], order[b]));
                filled += 1;
                if filled == 8 {
                    cert.push(byte);
                    byte = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            cert.push(byte << (8 - filled));
        }
        if self
            .best
            .as_ref()
            .is_none_or(|b| cert.cmp(b) == Ordering::Greater)
        {
            self.best = Some(cert);
        }
    }
}

/// Dense ranks of `keys`: equal keys share a rank, order follows `Ord`.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present"))
        .collect()
}

/// Injective vertex map carrying every edge of `small` onto an edge of
/// `large`, if one exists. `small` is implicitly padded with isolated
/// vertices.
pub fn find_embedding(small: &SimpleGraph, large: &SimpleGraph) -> Result<Option<Vec<usize>>> {
    for g in [small, large] {
        if g.vertex_count() > CANON_LIMIT {
            return Err(Error::TooLarge {
                vertices: g.vertex_count(),
                limit: CANON_LIMIT,
            });
        }
    }
    let (n1, n2) = (small.vertex_count(), large.vertex_count());
    if n1 > n2 {
        return Ok(None);
    }
    let adj1 = small.neighbours();
    let adj2 = large.neighbours();
    // Place high-degree vertices first, preferring ones adjacent to placed ones.
    let mut order: Vec<usize> = Vec::with_capacity(n1);
    let mut placed = vec![false; n1];
    while order.len() < n1 {
        let next = (0..n1)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let linked = adj1[v].iter().filter(|&&w| placed[w]).count();
                (linked, adj1[v].len(), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    let mut map = vec![usize::MAX; n1];
    let mut used = vec![false; n2];
    fn extend(
        depth: usize,
        order: &[usize],
        adj1: &[Vec<usize>],
        large: &SimpleGraph,
        adj2: &[Vec<usize>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&u) = order.get(depth) else {
            return true;
        };
        for v in 0..used.len() {
            if used[v] || adj2[v].len() < adj1[u].len() {
                continue;
            }
            let consistent = adj1[u]
                .iter()
                .all(|&w| map[w] == usize::MAX || large.has_edge(map[w], v));
            if !consistent {
                continue;
            }
            map[u] = v;
            used[v] = true;
            if extend(depth + 1, order, adj1, large, adj2, map, used) {
                return true;
            }
            used[v] = false;
            map[u] = usize::MAX;
        }
        false
    }
    Ok(extend(0, &order, &adj1, large, &adj2, &mut map, &mut used).then_some(map))
}

pub fn subgraph_embeds(small: &SimpleGraph, large: &SimpleGraph) -> Result<bool> {
    Ok(find_embedding(small, large)?.is_some())
}
