//! Simple undirected graphs: dependence and independence graphs of prime
//! catalogs, line graphs, and reconstruction results.

use std::fmt;

use serde::Serialize;

use crate::error::{HikeError, Result};
use crate::graph::Digraph;

/// Simple undirected graph on `0..n` with bitset adjacency rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UGraph {
    n: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl UGraph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        UGraph {
            n,
            words,
            rows: vec![vec![0; words]; n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::empty(n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Star `K_{1,leaves}` centred at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i)))
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Reads a bidirected, loop-free digraph as an undirected graph.
    pub fn from_digraph(g: &Digraph) -> Result<Self> {
        if !g.is_bidirected() {
            return Err(HikeError::Precondition(
                "undirected graph expected: every arc needs its reverse".into(),
            ));
        }
        if g.has_loops() {
            return Err(HikeError::Precondition(
                "undirected graph must be loop-free".into(),
            ));
        }
        Ok(Self::from_edges(g.vertex_count(), g.undirected_edges()))
    }

    /// Bidirected digraph with both arcs per edge.
    pub fn to_digraph(&self) -> Digraph {
        Digraph::undirected(self.n, self.edges()).expect("simple graph converts")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Ignores self-pairs.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.n && b < self.n, "vertex out of range");
        if a == b {
            return;
        }
        self.rows[a][b / 64] |= 1 << (b % 64);
        self.rows[b][a / 64] |= 1 << (a % 64);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        (self.rows[a][b / 64] >> (b % 64)) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.has_edge(v, w))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| (a + 1..self.n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.has_edge(a, b))
            .collect()
    }

    /// Closed neighbourhood `N(v) ∪ {v}` as a bitset row.
    pub(crate) fn closed_row(&self, v: usize) -> Vec<u64> {
        let mut row = self.rows[v].clone();
        row[v / 64] |= 1 << (v % 64);
        row
    }

    /// Every two members are adjacent.
    pub fn is_clique(&self, members: &[usize]) -> bool {
        members
            .iter()
            .enumerate()
            .all(|(i, &a)| members[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    pub fn complement(&self) -> UGraph {
        let mut out = UGraph::empty(self.n);
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !self.has_edge(a, b) {
                    out.add_edge(a, b);
                }
            }
        }
        out
    }

    /// Subgraph induced by `keep`, relabelled `0..keep.len()` in that order.
    pub fn induced(&self, keep: &[usize]) -> UGraph {
        let mut out = UGraph::empty(keep.len());
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    out.add_edge(i, j);
                }
            }
        }
        out
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Line graph: one vertex per edge (in `edges()` order), adjacent when
    /// the edges share an endpoint.
    pub fn line_graph(&self) -> UGraph {
        let edges = self.edges();
        let mut out = UGraph::empty(edges.len());
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if a == c || a == d || b == c || b == d {
                    out.add_edge(i, j);
                }
            }
        }
        out
    }

    /// `{"n":..,"undirected":true,"edges":[..]}`, accepted by the graph loader.
    pub fn to_json_value(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Doc {
            n: usize,
            undirected: bool,
            edges: Vec<[usize; 2]>,
        }
        serde_json::to_value(Doc {
            n: self.n,
            undirected: true,
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        })
        .expect("graph serializes")
    }
}

impl fmt::Display for UGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json_value())
    }
}
