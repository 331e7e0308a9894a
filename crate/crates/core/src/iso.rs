//! Exact isomorphism tests for small graphs: colour refinement followed by
//! backtracking over refined colour classes.

use std::collections::BTreeMap;

use crate::graph::Digraph;
use crate::ugraph::UGraph;

/// Adjacency matrix with vertex colours. Undirected graphs are stored
/// symmetrically.
struct Coloured {
    n: usize,
    adj: Vec<Vec<bool>>,
    colour: Vec<u64>,
}

impl Coloured {
    fn from_ugraph(g: &UGraph, colour: &[u64]) -> Self {
        let n = g.vertex_count();
        let adj = (0..n)
            .map(|a| (0..n).map(|b| g.has_edge(a, b)).collect())
            .collect();
        Coloured {
            n,
            adj,
            colour: colour.to_vec(),
        }
    }

    fn from_digraph(g: &Digraph) -> Self {
        let n = g.vertex_count();
        let adj = (0..n)
            .map(|a| (0..n).map(|b| g.has_arc(a, b)).collect())
            .collect();
        Coloured {
            n,
            adj,
            colour: vec![0; n],
        }
    }
}

type Signature = (u64, bool, Vec<u64>, Vec<u64>);

/// Refines both colourings with one shared signature table, so refined
/// colours stay comparable across the two graphs. Stops when the number of
/// classes no longer grows.
fn refine(a: &Coloured, b: &Coloured) -> (Vec<u64>, Vec<u64>) {
    let mut ca = a.colour.clone();
    let mut cb = b.colour.clone();
    let mut classes = 0;
    loop {
        let sig = |g: &Coloured, c: &[u64], v: usize| -> Signature {
            let mut out: Vec<u64> = (0..g.n)
                .filter(|&w| w != v && g.adj[v][w])
                .map(|w| c[w])
                .collect();
            let mut inn: Vec<u64> = (0..g.n)
                .filter(|&w| w != v && g.adj[w][v])
                .map(|w| c[w])
                .collect();
            out.sort_unstable();
            inn.sort_unstable();
            (c[v], g.adj[v][v], out, inn)
        };
        let sa: Vec<Signature> = (0..a.n).map(|v| sig(a, &ca, v)).collect();
        let sb: Vec<Signature> = (0..b.n).map(|v| sig(b, &cb, v)).collect();
        let mut table: BTreeMap<&Signature, u64> = BTreeMap::new();
        for s in sa.iter().chain(&sb) {
            let next = table.len() as u64;
            table.entry(s).or_insert(next);
        }
        let na: Vec<u64> = sa.iter().map(|s| table[s]).collect();
        let nb: Vec<u64> = sb.iter().map(|s| table[s]).collect();
        let done = table.len() == classes;
        classes = table.len();
        ca = na;
        cb = nb;
        if done {
            return (ca, cb);
        }
    }
}

fn histogram(c: &[u64]) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

fn find(a: &Coloured, b: &Coloured) -> Option<Vec<usize>> {
    if a.n != b.n {
        return None;
    }
    let edges = |g: &Coloured| g.adj.iter().flatten().filter(|&&x| x).count();
    if edges(a) != edges(b) {
        return None;
    }
    let (ca, cb) = refine(a, b);
    let (ha, hb) = (histogram(&ca), histogram(&cb));
    if ha != hb {
        return None;
    }
    // smallest colour classes first keeps the branching low
    let mut order: Vec<usize> = (0..a.n).collect();
    order.sort_by_key(|&v| (ha[&ca[v]], ca[v], v));
    let mut map = vec![usize::MAX; a.n];
    let mut used = vec![false; b.n];
    if extend(a, b, &ca, &cb, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Coloured,
    b: &Coloured,
    ca: &[u64],
    cb: &[u64],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for w in 0..b.n {
        if used[w] || cb[w] != ca[v] || a.adj[v][v] != b.adj[w][w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            let x = map[u];
            a.adj[u][v] == b.adj[x][w] && a.adj[v][u] == b.adj[w][x]
        });
        if consistent {
            map[v] = w;
            used[w] = true;
            if extend(a, b, ca, cb, order, depth + 1, map, used) {
                return true;
            }
            used[w] = false;
        }
    }
    map[v] = usize::MAX;
    false
}

pub fn graphs_isomorphic(a: &UGraph, b: &UGraph) -> bool {
    find_ugraph_isomorphism(a, b).is_some()
}

/// A bijection `map` with `a ~ b` edges preserved, if one exists.
pub fn find_ugraph_isomorphism(a: &UGraph, b: &UGraph) -> Option<Vec<usize>> {
    let za = vec![0; a.vertex_count()];
    let zb = vec![0; b.vertex_count()];
    find(
        &Coloured::from_ugraph(a, &za),
        &Coloured::from_ugraph(b, &zb),
    )
}

/// Isomorphism that must also map each vertex to one of the same colour
/// (for instance, prime length).
pub fn coloured_graphs_isomorphic(a: &UGraph, ca: &[u64], b: &UGraph, cb: &[u64]) -> bool {
    assert_eq!(ca.len(), a.vertex_count());
    assert_eq!(cb.len(), b.vertex_count());
    find(&Coloured::from_ugraph(a, ca), &Coloured::from_ugraph(b, cb)).is_some()
}

/// Directed isomorphism, loops included.
pub fn digraphs_isomorphic(a: &Digraph, b: &Digraph) -> bool {
    find_digraph_isomorphism(a, b).is_some()
}

pub fn find_digraph_isomorphism(a: &Digraph, b: &Digraph) -> Option<Vec<usize>> {
    find(&Coloured::from_digraph(a), &Coloured::from_digraph(b))
}
