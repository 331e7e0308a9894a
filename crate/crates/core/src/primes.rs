//! The prime alphabet: simple cycles of a digraph in canonical rotation, and
//! the vertex-intersection structure among them.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{HikeError, Result};
use crate::graph::{Arc, Digraph};
use crate::ugraph::UGraph;

/// Index of a prime within its catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrimeId(pub u32);

impl PrimeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for PrimeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0)
    }
}

/// A simple cycle, rotated to start at its smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime {
    vertices: Vec<usize>,
    mask: u64,
}

impl Prime {
    /// Builds a prime from a closed vertex sequence `v0 -> v1 -> .. -> v0`
    /// (the closing vertex is not repeated), checking every arc against `g`.
    pub fn from_cycle(g: &Digraph, cycle: &[usize]) -> Result<Prime> {
        if cycle.is_empty() {
            return Err(HikeError::Precondition("empty cycle".into()));
        }
        let mut mask = 0u64;
        for &v in cycle {
            if v >= g.vertex_count() {
                return Err(HikeError::Precondition(format!("vertex {v} out of range")));
            }
            if mask & (1 << v) != 0 {
                return Err(HikeError::Precondition(format!(
                    "cycle revisits vertex {v}"
                )));
            }
            mask |= 1 << v;
        }
        for i in 0..cycle.len() {
            let (t, h) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            if !g.has_arc(t, h) {
                return Err(HikeError::Precondition(format!("missing arc ({t}, {h})")));
            }
        }
        let start = (0..cycle.len())
            .min_by_key(|&i| cycle[i])
            .expect("non-empty");
        let vertices = cycle[start..]
            .iter()
            .chain(&cycle[..start])
            .copied()
            .collect();
        Ok(Prime { vertices, mask })
    }

    /// Vertices in cycle order from the smallest one.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn arcs(&self) -> Vec<Arc> {
        let l = self.vertices.len();
        (0..l)
            .map(|i| Arc::new(self.vertices[i], self.vertices[(i + 1) % l]))
            .collect()
    }

    pub fn length(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, v: usize) -> bool {
        v < 64 && self.mask & (1 << v) != 0
    }

    pub fn intersects(&self, other: &Prime) -> bool {
        self.mask & other.mask != 0
    }

    pub fn is_backtrack(&self) -> bool {
        self.length() == 2
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self.arcs().iter().map(ToString::to_string).collect();
        f.write_str(&arcs.join(" "))
    }
}

static NEXT_CATALOG: AtomicU64 = AtomicU64::new(1);

/// Every simple cycle of a digraph, sorted by length then vertex sequence.
#[derive(Debug, Clone)]
pub struct PrimeCatalog {
    id: u64,
    n: usize,
    primes: Vec<Prime>,
}

impl PartialEq for PrimeCatalog {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.primes == other.primes
    }
}

impl PrimeCatalog {
    /// Catalog over an explicit prime list (sorted and deduplicated).
    pub fn from_primes(n: usize, mut primes: Vec<Prime>) -> Self {
        primes.sort_by(|a, b| (a.length(), &a.vertices).cmp(&(b.length(), &b.vertices)));
        primes.dedup();
        PrimeCatalog {
            id: NEXT_CATALOG.fetch_add(1, Ordering::Relaxed),
            n,
            primes,
        }
    }

    /// Process-unique identity, used to detect mixing hikes across catalogs.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn primes(&self) -> &[Prime] {
        &self.primes
    }

    pub fn ids(&self) -> impl Iterator<Item = PrimeId> {
        (0..self.primes.len() as u32).map(PrimeId)
    }

    pub fn prime(&self, id: PrimeId) -> &Prime {
        &self.primes[id.index()]
    }

    pub fn contains_id(&self, id: PrimeId) -> bool {
        id.index() < self.primes.len()
    }

    pub fn mask(&self, id: PrimeId) -> u64 {
        self.primes[id.index()].mask
    }

    pub fn length(&self, id: PrimeId) -> usize {
        self.primes[id.index()].length()
    }

    /// Vertex sets intersect. A prime depends on itself.
    pub fn dependent(&self, a: PrimeId, b: PrimeId) -> bool {
        self.mask(a) & self.mask(b) != 0
    }

    /// Looks a prime up by a vertex cycle in any rotation.
    pub fn find_cycle(&self, cycle: &[usize]) -> Option<PrimeId> {
        let start = (0..cycle.len()).min_by_key(|&i| cycle[i])?;
        let rotated: Vec<usize> = cycle[start..]
            .iter()
            .chain(&cycle[..start])
            .copied()
            .collect();
        self.primes
            .iter()
            .position(|p| p.vertices == rotated)
            .map(|i| PrimeId(i as u32))
    }

    /// Primes through vertex `v`.
    pub fn through_vertex(&self, v: usize) -> Vec<PrimeId> {
        self.ids().filter(|&p| self.prime(p).contains(v)).collect()
    }

    /// Edge between two primes iff their vertex sets are disjoint.
    pub fn independence_graph(&self) -> UGraph {
        self.dependence_graph().complement()
    }

    /// Edge between two distinct primes iff their vertex sets meet. No
    /// self-loops.
    pub fn dependence_graph(&self) -> UGraph {
        let k = self.primes.len();
        let mut g = UGraph::empty(k);
        for a in 0..k {
            for b in a + 1..k {
                if self.primes[a].mask & self.primes[b].mask != 0 {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    /// `{"primes":[{"arcs":[[i,j],..]},..],"dependence":[[a,b],..]}`.
    pub fn to_json_value(&self) -> serde_json::Value {
        let primes: Vec<serde_json::Value> = self
            .primes
            .iter()
            .map(|p| {
                let arcs: Vec<[usize; 2]> = p.arcs().iter().map(|a| [a.tail, a.head]).collect();
                serde_json::json!({ "arcs": arcs })
            })
            .collect();
        let dependence: Vec<[usize; 2]> = self
            .dependence_graph()
            .edges()
            .into_iter()
            .map(|(a, b)| [a, b])
            .collect();
        serde_json::json!({ "primes": primes, "dependence": dependence })
    }
}

/// All elementary circuits of `g` with the default cap.
pub fn enumerate_primes(g: &Digraph) -> Result<PrimeCatalog> {
    enumerate_primes_capped(g, &Caps::default())
}

/// Johnson's elementary-circuit enumeration. For each start vertex `s` the
/// search runs inside the strong component of `s` among vertices `>= s`, so
/// each circuit is emitted once, already rotated to its smallest vertex.
pub fn enumerate_primes_capped(g: &Digraph, caps: &Caps) -> Result<PrimeCatalog> {
    let n = g.vertex_count();
    let mut found: Vec<Prime> = Vec::new();
    for s in 0..n {
        let component = strong_component_from(g, s);
        if component.count_ones() == 1 && !g.has_arc(s, s) {
            continue;
        }
        let mut search = Circuits {
            g,
            start: s,
            allowed: component,
            blocked: 0,
            b_lists: vec![0u64; n],
            stack: Vec::new(),
            found: &mut found,
            cap: caps.max_primes,
        };
        search.circuit(s)?;
    }
    Ok(PrimeCatalog::from_primes(n, found))
}

/// Vertices `>= s` that are both reachable from `s` and reach `s`, using only
/// vertices `>= s`.
fn strong_component_from(g: &Digraph, s: usize) -> u64 {
    let n = g.vertex_count();
    let allowed = |v: usize| v >= s;
    let mut fwd = 1u64 << s;
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        for &w in g.successors(v) {
            if allowed(w) && fwd & (1 << w) == 0 {
                fwd |= 1 << w;
                stack.push(w);
            }
        }
    }
    let mut preds = vec![Vec::new(); n];
    for a in g.arcs() {
        preds[a.head].push(a.tail);
    }
    let mut bwd = 1u64 << s;
    stack.push(s);
    while let Some(v) = stack.pop() {
        for &w in &preds[v] {
            if allowed(w) && bwd & (1 << w) == 0 {
                bwd |= 1 << w;
                stack.push(w);
            }
        }
    }
    fwd & bwd
}

struct Circuits<'a> {
    g: &'a Digraph,
    start: usize,
    allowed: u64,
    blocked: u64,
    b_lists: Vec<u64>,
    stack: Vec<usize>,
    found: &'a mut Vec<Prime>,
    cap: usize,
}

impl Circuits<'_> {
    fn unblock(&mut self, u: usize) {
        self.blocked &= !(1 << u);
        let mut pending = std::mem::take(&mut self.b_lists[u]);
        while pending != 0 {
            let w = pending.trailing_zeros() as usize;
            pending &= pending - 1;
            if self.blocked & (1 << w) != 0 {
                self.unblock(w);
            }
        }
    }

    fn circuit(&mut self, v: usize) -> Result<bool> {
        let mut closed = false;
        self.stack.push(v);
        self.blocked |= 1 << v;
        for &w in self.g.successors(v) {
            if self.allowed & (1 << w) == 0 {
                continue;
            }
            if w == self.start {
                if self.found.len() >= self.cap {
                    return Err(HikeError::SizeLimit {
                        what: "prime count",
                        actual: self.found.len() + 1,
                        limit: self.cap,
                    });
                }
                let mask = self.stack.iter().fold(0u64, |m, &x| m | (1 << x));
                self.found.push(Prime {
                    vertices: self.stack.clone(),
                    mask,
                });
                closed = true;
            } else if self.blocked & (1 << w) == 0 && self.circuit(w)? {
                closed = true;
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for &w in self.g.successors(v) {
                if self.allowed & (1 << w) != 0 {
                    self.b_lists[w] |= 1 << v;
                }
            }
        }
        self.stack.pop();
        Ok(closed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: every simple vertex cycle starting at its minimum.
    fn brute_force_cycles(g: &Digraph) -> Vec<Vec<usize>> {
        fn extend(g: &Digraph, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let start = path[0];
            let last = *path.last().unwrap();
            for &w in g.successors(last) {
                if w == start {
                    out.push(path.clone());
                } else if w > start && !path.contains(&w) {
                    path.push(w);
                    extend(g, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        for s in 0..g.vertex_count() {
            extend(g, &mut vec![s], &mut out);
        }
        out.sort();
        out
    }

    fn catalog_cycles(cat: &PrimeCatalog) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = cat.primes().iter().map(|p| p.vertices().to_vec()).collect();
        v.sort();
        v
    }

    fn c5() -> Digraph {
        Digraph::undirected(5, [(0, 2), (1, 3), (2, 4), (0, 3), (1, 4)]).unwrap()
    }

    #[test]
    fn c5_has_seven_primes() {
        let cat = enumerate_primes(&c5()).unwrap();
        assert_eq!(cat.len(), 7);
        assert_eq!(cat.primes().iter().filter(|p| p.is_backtrack()).count(), 5);
        assert_eq!(cat.primes().iter().filter(|p| p.length() == 5).count(), 2);
    }

    #[test]
    fn directed_triangle_and_k3() {
        let tri = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let cat = enumerate_primes(&tri).unwrap();
        assert_eq!(cat.len(), 1);
        assert_eq!(cat.primes()[0].length(), 3);
        let k3 = Digraph::undirected(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let cat = enumerate_primes(&k3).unwrap();
        assert_eq!(cat.len(), 5);
        assert_eq!(catalog_cycles(&cat), brute_force_cycles(&k3));
    }

    #[test]
    fn k4_has_twenty_primes() {
        let k4 = Digraph::undirected(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let cat = enumerate_primes(&k4).unwrap();
        assert_eq!(brute_force_cycles(&k4).len(), 20);
        assert_eq!(cat.len(), 20);
        let by_len = |l| cat.primes().iter().filter(|p| p.length() == l).count();
        assert_eq!((by_len(2), by_len(3), by_len(4)), (6, 8, 6));
    }

    #[test]
    fn matches_brute_force_with_loops() {
        let g = Digraph::new(
            5,
            [
                (0, 0),
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 2),
                (3, 4),
                (4, 1),
                (4, 4),
                (1, 0),
            ],
        )
        .unwrap();
        let cat = enumerate_primes(&g).unwrap();
        assert_eq!(catalog_cycles(&cat), brute_force_cycles(&g));
        for p in cat.primes() {
            let again = Prime::from_cycle(&g, p.vertices()).unwrap();
            assert_eq!(&again, p);
            assert_eq!(p.vertices()[0], *p.vertices().iter().min().unwrap());
        }
    }

    #[test]
    fn orientations_are_distinct_primes() {
        let k3 = Digraph::undirected(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let cat = enumerate_primes(&k3).unwrap();
        let tris: Vec<&Prime> = cat.primes().iter().filter(|p| p.length() == 3).collect();
        assert_eq!(tris.len(), 2);
        assert_ne!(tris[0], tris[1]);
        assert_eq!(tris[0].vertex_mask(), tris[1].vertex_mask());
    }

    #[test]
    fn independence_graph_examples() {
        let cat = enumerate_primes(&c5()).unwrap();
        let ind = cat.independence_graph();
        let dep = cat.dependence_graph();
        assert_eq!(dep.complement(), ind);
        // only disjoint backtrack pairs are independent: 5 edges forming a cycle
        assert_eq!(ind.edge_count(), 5);
        for p in cat.ids().filter(|&p| cat.length(p) == 5) {
            assert_eq!(ind.degree(p.index()), 0);
        }
        for p in cat.ids().filter(|&p| cat.length(p) == 2) {
            assert_eq!(ind.degree(p.index()), 2);
        }
        let one = enumerate_primes(&Digraph::new(1, [(0, 0)]).unwrap()).unwrap();
        assert_eq!(one.independence_graph().edge_count(), 0);
        let two = enumerate_primes(&Digraph::new(2, [(0, 0), (1, 1)]).unwrap()).unwrap();
        assert_eq!(two.independence_graph().edges(), vec![(0, 1)]);
    }

    #[test]
    fn prime_cap_is_enforced() {
        let k4 = Digraph::undirected(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let caps = Caps {
            max_primes: 5,
            ..Caps::default()
        };
        assert!(matches!(
            enumerate_primes_capped(&k4, &caps),
            Err(HikeError::SizeLimit { .. })
        ));
    }

    #[test]
    fn catalog_json_shape() {
        let cat = enumerate_primes(&Digraph::new(2, [(0, 1), (1, 0)]).unwrap()).unwrap();
        let v = cat.to_json_value();
        assert_eq!(v["primes"][0]["arcs"], serde_json::json!([[0, 1], [1, 0]]));
        assert_eq!(v["dependence"], serde_json::json!([]));
    }
}
