//! Recovering an undirected graph from the dependence graph of its primes:
//! equivalence classes, backtrack identification, and line-graph inversion.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{HikeError, Result};
use crate::graph::Digraph;
use crate::iso::{coloured_graphs_isomorphic, graphs_isomorphic};
use crate::primes::{enumerate_primes_capped, PrimeCatalog};
use crate::ugraph::UGraph;

/// Prime catalog and dependence graph of a connected, loop-free bidirected
/// digraph.
pub fn dependence_graph_with_catalog(g: &Digraph) -> Result<(PrimeCatalog, UGraph)> {
    if !g.is_bidirected() {
        return Err(HikeError::Precondition("graph must be bidirected".into()));
    }
    if g.has_loops() {
        return Err(HikeError::Precondition(
            "self-loops are indistinguishable from pendant edges here".into(),
        ));
    }
    if !g.is_weakly_connected() {
        return Err(HikeError::Precondition(
            "graph must be connected; split it into components first".into(),
        ));
    }
    let cat = enumerate_primes_capped(g, &Caps::from_env())?;
    let gamma = cat.dependence_graph();
    Ok((cat, gamma))
}

/// The dependence graph γ: one vertex per prime, edges between primes that
/// share a vertex.
pub fn dependence_graph(g: &Digraph) -> Result<UGraph> {
    dependence_graph_with_catalog(g).map(|(_, gamma)| gamma)
}

/// Vertices of γ with equal closed neighbourhoods.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceClass {
    pub members: Vec<usize>,
    /// The open neighbourhood of a member is a clique.
    pub is_clique_nbhd: bool,
    /// T(C): neighbours common to every member, outside the class.
    pub common_nbrs: Vec<usize>,
}

/// Classes ordered by smallest member.
pub fn equivalence_classes(gamma: &UGraph) -> Vec<EquivalenceClass> {
    let mut groups: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
    for v in 0..gamma.vertex_count() {
        groups.entry(gamma.closed_row(v)).or_default().push(v);
    }
    let mut classes: Vec<EquivalenceClass> = groups
        .into_values()
        .map(|members| {
            let c = members[0];
            let nbhd: Vec<usize> = gamma.neighbors(c).collect();
            let common_nbrs = nbhd
                .iter()
                .copied()
                .filter(|v| !members.contains(v))
                .collect();
            EquivalenceClass {
                is_clique_nbhd: gamma.is_clique(&nbhd),
                members,
                common_nbrs,
            }
        })
        .collect();
    classes.sort_by_key(|c| c.members[0]);
    classes
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "backtracks", rename_all = "snake_case")]
pub enum BacktrackOutcome {
    /// γ vertices identified as backtracks, sorted.
    Backtracks(Vec<usize>),
    /// γ ≅ K5 arises from both K3 and K_{1,5}.
    AmbiguousK5,
}

/// Identifies the backtracks class by class:
/// a class whose neighbourhoods are cliques is all backtracks; otherwise an
/// odd class holds one, an even class other than 4 holds none, and a class
/// of 4 holds two exactly when some common neighbour has degree 4.
/// Representatives are the lowest-indexed members.
pub fn identify_backtracks(gamma: &UGraph) -> BacktrackOutcome {
    if gamma.vertex_count() == 5 && gamma.is_complete() {
        return BacktrackOutcome::AmbiguousK5;
    }
    let mut out = Vec::new();
    for class in equivalence_classes(gamma) {
        out.extend_from_slice(&class.members[..backtracks_in(gamma, &class)]);
    }
    out.sort_unstable();
    BacktrackOutcome::Backtracks(out)
}

fn backtracks_in(gamma: &UGraph, class: &EquivalenceClass) -> usize {
    let size = class.members.len();
    if class.is_clique_nbhd {
        size
    } else if size % 2 == 1 {
        1
    } else if size != 4 {
        0
    } else if class.common_nbrs.iter().any(|&c| gamma.degree(c) == 4) {
        2
    } else {
        0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootOutcome {
    Unique(UGraph),
    /// Several non-isomorphic roots share the line graph (only K3).
    Ambiguous(Vec<UGraph>),
}

/// Root graphs `H` with `L(H) ≅ lg`, up to isomorphism.
///
/// Assigns each line-graph vertex an endpoint pair, in BFS order, so that two
/// vertices share exactly one endpoint iff they are adjacent; every complete
/// assignment is a root. Errors when no assignment exists, naming the first
/// vertex that could not be placed.
pub fn line_graph_inverse(lg: &UGraph) -> Result<RootOutcome> {
    let m = lg.vertex_count();
    if m == 0 || !lg.is_connected() {
        return Err(HikeError::Precondition(
            "line graph must be non-empty and connected".into(),
        ));
    }
    let order = bfs_order(lg);
    let mut search = Krausz {
        lg,
        order: &order,
        ends: vec![(usize::MAX, usize::MAX); m],
        roots: Vec::new(),
        deepest: 0,
    };
    search.ends[order[0]] = (0, 1);
    search.place(1, 2);
    if search.roots.is_empty() {
        let witness = order[search.deepest.min(m - 1)];
        return Err(HikeError::Precondition(format!(
            "not a line graph: vertex {witness} cannot be given endpoints consistent with its neighbours"
        )));
    }
    let mut distinct: Vec<UGraph> = Vec::new();
    for r in search.roots {
        if !distinct.iter().any(|d| graphs_isomorphic(d, &r)) {
            distinct.push(r);
        }
    }
    distinct.sort_by_key(|g| (g.vertex_count(), g.edges()));
    Ok(if distinct.len() == 1 {
        RootOutcome::Unique(distinct.remove(0))
    } else {
        RootOutcome::Ambiguous(distinct)
    })
}

fn bfs_order(g: &UGraph) -> Vec<usize> {
    let mut seen = vec![false; g.vertex_count()];
    let mut order = vec![0];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    order
}

struct Krausz<'a> {
    lg: &'a UGraph,
    order: &'a [usize],
    ends: Vec<(usize, usize)>,
    roots: Vec<UGraph>,
    deepest: usize,
}

impl Krausz<'_> {
    fn place(&mut self, depth: usize, fresh: usize) {
        self.deepest = self.deepest.max(depth);
        if depth == self.order.len() {
            let root = UGraph::from_edges(fresh, self.ends.iter().copied());
            if is_line_graph_of(self.lg, &root, &self.ends) {
                self.roots.push(root);
            }
            return;
        }
        let e = self.order[depth];
        // BFS order guarantees an already placed neighbour
        let f = self.order[..depth]
            .iter()
            .copied()
            .find(|&f| self.lg.has_edge(e, f))
            .expect("connected line graph");
        let (x, y) = self.ends[f];
        for shared in [x, y] {
            for other in (0..fresh).chain([fresh]) {
                if other == x || other == y {
                    continue;
                }
                let pair = (shared.min(other), shared.max(other));
                if self.consistent(depth, e, pair) {
                    self.ends[e] = pair;
                    let next = if other == fresh { fresh + 1 } else { fresh };
                    self.place(depth + 1, next);
                }
            }
        }
        self.ends[e] = (usize::MAX, usize::MAX);
    }

    fn consistent(&self, depth: usize, e: usize, (a, b): (usize, usize)) -> bool {
        self.order[..depth].iter().all(|&g| {
            let (c, d) = self.ends[g];
            if (c, d) == (a, b) {
                return false;
            }
            let meets = a == c || a == d || b == c || b == d;
            meets == self.lg.has_edge(e, g)
        })
    }
}

/// Edges `ends[i]` and `ends[j]` share an endpoint exactly when `lg` has
/// the edge `i–j`, and no edge repeats.
fn is_line_graph_of(lg: &UGraph, root: &UGraph, ends: &[(usize, usize)]) -> bool {
    let m = ends.len();
    root.edge_count() == m
        && (0..m).all(|i| {
            (i + 1..m).all(|j| {
                let ((a, b), (c, d)) = (ends[i], ends[j]);
                (a == c || a == d || b == c || b == d) == lg.has_edge(i, j)
            })
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReconstructionResult {
    Unique(UGraph),
    Ambiguous(Vec<UGraph>),
    Failed(String),
}

impl ReconstructionResult {
    pub fn status(&self) -> &'static str {
        match self {
            ReconstructionResult::Unique(_) => "unique",
            ReconstructionResult::Ambiguous(_) => "ambiguous",
            ReconstructionResult::Failed(_) => "failed",
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            ReconstructionResult::Unique(g) => {
                serde_json::json!({ "status": "unique", "graphs": [g.to_json_value()] })
            }
            ReconstructionResult::Ambiguous(gs) => serde_json::json!({
                "status": "ambiguous",
                "graphs": gs.iter().map(UGraph::to_json_value).collect::<Vec<_>>(),
            }),
            ReconstructionResult::Failed(reason) => {
                serde_json::json!({ "status": "failed", "reason": reason })
            }
        }
    }
}

/// A reconstruction together with its intermediate steps.
#[derive(Debug, Clone)]
pub struct ReconstructionTrace {
    pub classes: Vec<EquivalenceClass>,
    pub backtracks: BacktrackOutcome,
    pub line_graph: Option<UGraph>,
    pub result: ReconstructionResult,
}

impl ReconstructionTrace {
    pub fn to_json_value(&self) -> serde_json::Value {
        let mut v = self.result.to_json_value();
        v["classes"] = serde_json::to_value(&self.classes).expect("plain data");
        v["backtracks"] = serde_json::to_value(&self.backtracks).expect("plain data");
        if let Some(lg) = &self.line_graph {
            v["line_graph"] = lg.to_json_value();
        }
        v
    }
}

pub fn reconstruct(gamma: &UGraph) -> ReconstructionResult {
    reconstruct_traced(gamma).result
}

/// γ → classes → backtracks → line graph → root.
pub fn reconstruct_traced(gamma: &UGraph) -> ReconstructionTrace {
    let classes = equivalence_classes(gamma);
    let backtracks = identify_backtracks(gamma);
    let mut trace = ReconstructionTrace {
        classes,
        backtracks: backtracks.clone(),
        line_graph: None,
        result: ReconstructionResult::Failed(String::new()),
    };
    if let Some(reason) = gamma_problem(gamma) {
        trace.result = ReconstructionResult::Failed(reason);
        return trace;
    }
    let chosen = match backtracks {
        BacktrackOutcome::AmbiguousK5 => {
            trace.result =
                ReconstructionResult::Ambiguous(vec![UGraph::complete(3), UGraph::star(5)]);
            return trace;
        }
        BacktrackOutcome::Backtracks(b) => b,
    };
    let lg = gamma.induced(&chosen);
    trace.line_graph = Some(lg.clone());
    trace.result = root_from_line_graph(&lg, |_| true);
    trace
}

fn gamma_problem(gamma: &UGraph) -> Option<String> {
    if gamma.vertex_count() == 0 {
        Some("empty dependence graph".into())
    } else if !gamma.is_connected() {
        Some("dependence graph is disconnected; reconstruct each component separately".into())
    } else {
        None
    }
}

/// Inverts the line graph. The K3 line graph has roots K3 and K_{1,3}; the
/// `accept` filter picks among them, and K_{1,3} is the default since K3
/// itself yields γ = K5.
fn root_from_line_graph(lg: &UGraph, accept: impl Fn(&UGraph) -> bool) -> ReconstructionResult {
    match line_graph_inverse(lg) {
        Err(e) => ReconstructionResult::Failed(e.to_string()),
        Ok(RootOutcome::Unique(g)) => ReconstructionResult::Unique(g),
        Ok(RootOutcome::Ambiguous(gs)) => {
            let kept: Vec<UGraph> = gs.iter().filter(|g| accept(g)).cloned().collect();
            match kept.len() {
                1 => ReconstructionResult::Unique(kept.into_iter().next().expect("one")),
                0 => ReconstructionResult::Failed("no root graph reproduces the input".into()),
                _ => {
                    let star = kept.iter().find(|g| graphs_isomorphic(g, &UGraph::star(3)));
                    match star {
                        Some(s) => ReconstructionResult::Unique(s.clone()),
                        None => ReconstructionResult::Ambiguous(kept),
                    }
                }
            }
        }
    }
}

/// Reconstruction when prime lengths are known: the backtracks are exactly
/// the length-2 primes, and a K3 line graph is resolved by comparing the
/// length-labelled dependence graphs of the candidates.
pub fn reconstruct_with_lengths(gamma: &UGraph, lengths: &[usize]) -> ReconstructionResult {
    if lengths.len() != gamma.vertex_count() {
        return ReconstructionResult::Failed(format!(
            "{} lengths for {} dependence-graph vertices",
            lengths.len(),
            gamma.vertex_count()
        ));
    }
    if let Some(reason) = gamma_problem(gamma) {
        return ReconstructionResult::Failed(reason);
    }
    let backtracks: Vec<usize> = (0..lengths.len()).filter(|&i| lengths[i] == 2).collect();
    if backtracks.is_empty() {
        return ReconstructionResult::Failed("no primes of length 2".into());
    }
    let lg = gamma.induced(&backtracks);
    let colours: Vec<u64> = lengths.iter().map(|&l| l as u64).collect();
    root_from_line_graph(&lg, |candidate| {
        let Ok((cat, cg)) = dependence_graph_with_catalog(&candidate.to_digraph()) else {
            return false;
        };
        let cc: Vec<u64> = cat.primes().iter().map(|p| p.length() as u64).collect();
        coloured_graphs_isomorphic(gamma, &colours, &cg, &cc)
    })
}
