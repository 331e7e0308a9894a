//! Digraphs, their JSON format, and the exact matrix invariants built on the
//! 0/1 adjacency matrix.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Read;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{HikeError, Result};
use crate::linalg::IntMatrix;
use crate::poly::IntPoly;

/// Vertex sets are stored as `u64` masks throughout the crate.
pub const MAX_VERTICES: usize = 64;

/// A directed edge `tail -> head`, identified with the formal variable
/// `w[tail][head]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
}

impl Arc {
    pub fn new(tail: usize, head: usize) -> Self {
        Arc { tail, head }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    pub fn reversed(&self) -> Arc {
        Arc::new(self.head, self.tail)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{},{}", self.tail, self.head)
    }
}

/// A finite digraph on vertices `0..n`. Loops are allowed, parallel arcs are
/// not. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<Arc>,
    out: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    n: usize,
    #[serde(default)]
    arcs: Option<Vec<[usize; 2]>>,
    #[serde(default)]
    undirected: bool,
    #[serde(default)]
    edges: Option<Vec<[usize; 2]>>,
}

#[derive(Serialize)]
struct CanonicalDocument<'a> {
    n: usize,
    arcs: &'a [[usize; 2]],
}

impl Digraph {
    /// Builds a digraph, rejecting out-of-range endpoints and duplicates.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(HikeError::SizeLimit {
                what: "vertex count",
                actual: n,
                limit: MAX_VERTICES,
            });
        }
        let mut set = BTreeSet::new();
        for (pos, (tail, head)) in arcs.into_iter().enumerate() {
            for v in [tail, head] {
                if v >= n {
                    return Err(HikeError::EndpointOutOfRange {
                        location: format!("arcs[{pos}]"),
                        vertex: v,
                        n,
                    });
                }
            }
            if !set.insert(Arc::new(tail, head)) {
                return Err(HikeError::DuplicateArc {
                    location: format!("arcs[{pos}]"),
                    tail,
                    head,
                });
            }
        }
        Ok(Self::from_set(n, set))
    }

    /// Bidirected graph: each undirected edge `{i, j}` becomes the arcs
    /// `i -> j` and `j -> i`; an edge `{i, i}` becomes a single loop.
    pub fn undirected(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(HikeError::SizeLimit {
                what: "vertex count",
                actual: n,
                limit: MAX_VERTICES,
            });
        }
        let mut set = BTreeSet::new();
        for (pos, (i, j)) in edges.into_iter().enumerate() {
            for v in [i, j] {
                if v >= n {
                    return Err(HikeError::EndpointOutOfRange {
                        location: format!("edges[{pos}]"),
                        vertex: v,
                        n,
                    });
                }
            }
            let fresh = set.insert(Arc::new(i, j));
            let fresh_rev = i == j || set.insert(Arc::new(j, i));
            if !fresh || !fresh_rev {
                return Err(HikeError::DuplicateArc {
                    location: format!("edges[{pos}]"),
                    tail: i,
                    head: j,
                });
            }
        }
        Ok(Self::from_set(n, set))
    }

    fn from_set(n: usize, arcs: BTreeSet<Arc>) -> Self {
        let mut out = vec![Vec::new(); n];
        for a in &arcs {
            out[a.tail].push(a.head);
        }
        Digraph { n, arcs, out }
    }

    /// Parses the JSON graph format.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: GraphDocument =
            serde_json::from_str(text).map_err(|e| HikeError::Malformed(e.to_string()))?;
        match (doc.undirected, doc.arcs, doc.edges) {
            (false, Some(arcs), None) => Self::new(doc.n, arcs.into_iter().map(|[t, h]| (t, h))),
            (true, None, Some(edges)) => {
                Self::undirected(doc.n, edges.into_iter().map(|[i, j]| (i, j)))
            }
            (false, _, Some(_)) => Err(HikeError::Malformed(
                "\"edges\" requires \"undirected\": true".into(),
            )),
            (true, Some(_), _) => Err(HikeError::Malformed(
                "undirected documents list \"edges\", not \"arcs\"".into(),
            )),
            (false, None, None) => Err(HikeError::Malformed("missing \"arcs\"".into())),
            (true, None, None) => Err(HikeError::Malformed("missing \"edges\"".into())),
        }
    }

    /// `load_digraph`: reads the JSON graph format from a byte stream.
    pub fn load<R: Read>(mut source: R) -> Result<Self> {
        let mut text = String::new();
        source.read_to_string(&mut text)?;
        Self::from_json_str(&text)
    }

    /// Canonical serialization: `{"n":..,"arcs":[[t,h],..]}` with arcs sorted.
    pub fn to_json(&self) -> String {
        let arcs: Vec<[usize; 2]> = self.arcs.iter().map(|a| [a.tail, a.head]).collect();
        serde_json::to_string(&CanonicalDocument {
            n: self.n,
            arcs: &arcs,
        })
        .expect("graph serialization cannot fail")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::from_str(&self.to_json()).expect("canonical JSON parses")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.arcs.iter().copied()
    }

    pub fn has_arc(&self, tail: usize, head: usize) -> bool {
        self.arcs.contains(&Arc::new(tail, head))
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.head == v).count()
    }

    pub fn loop_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.is_loop()).count()
    }

    pub fn has_loops(&self) -> bool {
        self.loop_count() > 0
    }

    /// Every arc has its reverse.
    pub fn is_bidirected(&self) -> bool {
        self.arcs.iter().all(|a| self.arcs.contains(&a.reversed()))
    }

    /// Connected when arc directions are ignored. The empty graph counts as
    /// connected.
    pub fn is_weakly_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut nbrs = vec![Vec::new(); self.n];
        for a in &self.arcs {
            nbrs[a.tail].push(a.head);
            nbrs[a.head].push(a.tail);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &nbrs[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Undirected edges `{i, j}` with `i <= j` of a bidirected graph.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        self.arcs
            .iter()
            .filter(|a| a.tail <= a.head)
            .map(|a| (a.tail, a.head))
            .collect()
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Digraph {
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc::new(perm[a.tail], perm[a.head]));
        Self::from_set(self.n, arcs.collect())
    }

    /// The 0/1 adjacency matrix.
    pub fn adjacency(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n);
        for a in &self.arcs {
            m.set(a.tail, a.head, BigInt::from(1));
        }
        m
    }

    pub(crate) fn adjacency_bool(&self) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; self.n]; self.n];
        for a in &self.arcs {
            m[a.tail][a.head] = true;
        }
        m
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// Entry `k - 1` is `Tr(A^k)` for `k = 1..=max_power`.
pub fn adjacency_trace_powers(g: &Digraph, max_power: usize) -> Result<Vec<BigInt>> {
    if max_power == 0 {
        return Err(HikeError::Precondition(
            "max_power must be at least 1".into(),
        ));
    }
    Ok(g.adjacency().trace_powers(max_power))
}

/// `det(I - zA)`, the reversed characteristic polynomial.
pub fn char_poly(g: &Digraph) -> IntPoly {
    g.adjacency().reversed_char_poly()
}

/// `perm(I + uA)` with the default size cap.
pub fn permanental_poly(g: &Digraph) -> Result<IntPoly> {
    permanental_poly_capped(g, &Caps::default())
}

pub fn permanental_poly_capped(g: &Digraph, caps: &Caps) -> Result<IntPoly> {
    if g.vertex_count() > caps.permanent_n {
        return Err(HikeError::SizeLimit {
            what: "permanent vertex count",
            actual: g.vertex_count(),
            limit: caps.permanent_n,
        });
    }
    Ok(crate::linalg::identity_plus_permanent(&g.adjacency_bool()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Independent oracle: count closed walks by explicit enumeration.
    fn closed_walks(g: &Digraph, k: usize) -> u64 {
        fn go(g: &Digraph, start: usize, at: usize, left: usize) -> u64 {
            if left == 0 {
                return (at == start) as u64;
            }
            g.successors(at)
                .iter()
                .map(|&w| go(g, start, w, left - 1))
                .sum()
        }
        (0..g.vertex_count()).map(|s| go(g, s, s, k)).sum()
    }

    fn k3() -> Digraph {
        Digraph::undirected(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn loop_on_backtrack() -> Digraph {
        Digraph::new(2, [(0, 1), (1, 0), (1, 1)]).unwrap()
    }

    #[test]
    fn loads_the_three_documented_forms() {
        let g = Digraph::from_json_str(r#"{"n":2, "arcs":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(g.arc_count(), 2);
        let c5 = Digraph::from_json_str(
            r#"{"n":5, "undirected":true, "edges":[[0,2],[0,3],[1,3],[1,4],[2,4]]}"#,
        )
        .unwrap();
        assert_eq!(c5.arc_count(), 10);
        assert!(c5.is_bidirected());
        let l = Digraph::from_json_str(r#"{"n":1, "arcs":[[0,0]]}"#).unwrap();
        assert!(l.has_arc(0, 0));
    }

    #[test]
    fn rejects_bad_documents() {
        let err = Digraph::from_json_str(r#"{"n":2, "arcs":[[0,1],[0,2]]}"#).unwrap_err();
        assert!(err.to_string().contains("arcs[1]"), "{err}");
        let err = Digraph::from_json_str(r#"{"n":2, "arcs":[[0,1],[1,0],[0,1]]}"#).unwrap_err();
        assert!(matches!(err, HikeError::DuplicateArc { .. }));
        assert!(err.to_string().contains("arcs[2]"));
        let err = Digraph::from_json_str(r#"{"n":2, "undirected":true, "edges":[[0,1],[1,0]]}"#)
            .unwrap_err();
        assert!(matches!(err, HikeError::DuplicateArc { .. }));
        assert!(matches!(
            Digraph::from_json_str(r#"{"n":2, "arcs":[[0,1]"#),
            Err(HikeError::Malformed(_))
        ));
        assert!(matches!(
            Digraph::from_json_str(r#"{"n":2, "edges":[[0,1]]}"#),
            Err(HikeError::Malformed(_))
        ));
        assert!(matches!(
            Digraph::from_json_str(r#"{"n":2}"#),
            Err(HikeError::Malformed(_))
        ));
    }

    #[test]
    fn serialization_is_canonical() {
        let a = Digraph::from_json_str(r#"{"n":3, "arcs":[[2,0],[0,1],[1,2]]}"#).unwrap();
        let b = Digraph::from_json_str(r#"{"n":3, "arcs":[[1,2],[2,0],[0,1]]}"#).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_json(), r#"{"n":3,"arcs":[[0,1],[1,2],[2,0]]}"#);
        assert_eq!(Digraph::from_json_str(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn trace_powers_examples() {
        assert_eq!(adjacency_trace_powers(&k3(), 3).unwrap(), ints(&[0, 6, 6]));
        let l = Digraph::new(1, [(0, 0)]).unwrap();
        assert_eq!(adjacency_trace_powers(&l, 4).unwrap(), ints(&[1, 1, 1, 1]));
        assert_eq!(
            adjacency_trace_powers(&loop_on_backtrack(), 4).unwrap(),
            ints(&[1, 3, 4, 7])
        );
        assert!(adjacency_trace_powers(&l, 0).is_err());
    }

    #[test]
    fn trace_powers_match_walk_enumeration() {
        for g in [
            k3(),
            loop_on_backtrack(),
            Digraph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 3), (3, 1)]).unwrap(),
        ] {
            let traces = adjacency_trace_powers(&g, 6).unwrap();
            for (k, t) in traces.iter().enumerate() {
                assert_eq!(*t, BigInt::from(closed_walks(&g, k + 1)));
            }
        }
    }

    #[test]
    fn char_poly_examples() {
        let empty = Digraph::new(3, []).unwrap();
        assert_eq!(char_poly(&empty), IntPoly::from_i64(&[1]));
        let l = Digraph::new(1, [(0, 0)]).unwrap();
        assert_eq!(char_poly(&l), IntPoly::from_i64(&[1, -1]));
        assert_eq!(
            char_poly(&loop_on_backtrack()),
            IntPoly::from_i64(&[1, -1, -1])
        );
    }

    #[test]
    fn permanental_poly_examples() {
        let l = Digraph::new(1, [(0, 0)]).unwrap();
        assert_eq!(permanental_poly(&l).unwrap(), IntPoly::from_i64(&[1, 1]));
        let bt = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(
            permanental_poly(&bt).unwrap(),
            IntPoly::from_i64(&[1, 0, 1])
        );
        assert_eq!(
            permanental_poly(&k3()).unwrap(),
            IntPoly::from_i64(&[1, 0, 3, 2])
        );
        let big = Digraph::new(15, []).unwrap();
        assert!(matches!(
            permanental_poly(&big),
            Err(HikeError::SizeLimit { .. })
        ));
    }
}
