//! Digraph pairs with equal non-zero spectrum: fingerprints, hike-structure
//! comparison, and the path-sum expansion rewrite.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::caps::Caps;
use crate::error::{HikeError, Result};
use crate::graph::{adjacency_trace_powers, char_poly, permanental_poly_capped, Digraph};
use crate::iso::{coloured_graphs_isomorphic, digraphs_isomorphic};
use crate::poly::IntPoly;
use crate::primes::{enumerate_primes_capped, Prime};
use crate::report::CheckReport;
use crate::ugraph::UGraph;

/// `det(I − zA)`, `perm(I − zA)` and `Tr(A^k)` for `k = 1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralFingerprint {
    pub char_poly: IntPoly,
    pub perm_poly: IntPoly,
    #[serde(serialize_with = "crate::poly::serialize_bigints")]
    pub traces: Vec<BigInt>,
}

impl SpectralFingerprint {
    pub fn of(g: &Digraph) -> Result<Self> {
        let plus = permanental_poly_capped(g, &Caps::from_env())?;
        // perm(I − zA) is perm(I + uA) at u = −z
        let perm_poly = IntPoly::new(
            plus.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 0 { c.clone() } else { -c })
                .collect(),
        );
        let traces = if g.vertex_count() == 0 {
            Vec::new()
        } else {
            adjacency_trace_powers(g, g.vertex_count())?
        };
        Ok(SpectralFingerprint {
            char_poly: char_poly(g),
            perm_poly,
            traces,
        })
    }

    /// Newton's identities: `k c_k + Σ_{i<k} c_i Tr(A^(k−i)) = 0` for the
    /// coefficients `c` of `det(I − zA)`.
    pub fn newton_consistent(&self) -> bool {
        (1..=self.traces.len()).all(|k| {
            let mut acc = BigInt::from(k) * self.char_poly.coeff(k);
            for i in 0..k {
                acc += self.char_poly.coeff(i) * &self.traces[k - i - 1];
            }
            acc.is_zero()
        })
    }
}

/// Equal closed-walk counts for every length up to the larger vertex count.
pub fn same_nonzero_spectrum(a: &Digraph, b: &Digraph) -> bool {
    let top = a.vertex_count().max(b.vertex_count());
    if top == 0 {
        return true;
    }
    let ta = adjacency_trace_powers(a, top).expect("top >= 1");
    let tb = adjacency_trace_powers(b, top).expect("top >= 1");
    ta == tb
}

/// Prime count, per-prime lengths and the dependence graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HikeStructure {
    pub lengths: Vec<usize>,
    pub gamma: UGraph,
}

impl HikeStructure {
    pub fn of(g: &Digraph) -> Result<Self> {
        let cat = enumerate_primes_capped(g, &Caps::from_env())?;
        Ok(HikeStructure {
            lengths: cat.primes().iter().map(Prime::length).collect(),
            gamma: cat.dependence_graph(),
        })
    }

    pub fn prime_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn sorted_lengths(&self) -> Vec<usize> {
        let mut l = self.lengths.clone();
        l.sort_unstable();
        l
    }
}

/// Same prime-length multiset and a length-preserving isomorphism between
/// the dependence graphs.
pub fn hike_structure_equal(a: &Digraph, b: &Digraph) -> Result<bool> {
    let (sa, sb) = (HikeStructure::of(a)?, HikeStructure::of(b)?);
    if sa.sorted_lengths() != sb.sorted_lengths() {
        return Ok(false);
    }
    let colours = |s: &HikeStructure| s.lengths.iter().map(|&l| l as u64).collect::<Vec<_>>();
    Ok(coloured_graphs_isomorphic(
        &sa.gamma,
        &colours(&sa),
        &sb.gamma,
        &colours(&sb),
    ))
}

/// Validates a claimed hike-structure-preserving pair: equal hike structure,
/// equal vertex count, equal non-zero spectrum, equal determinant and
/// permanent polynomials, and non-isomorphic digraphs. Every condition is
/// evaluated and noted, even after a failure.
pub fn intersection_slide_check(a: &Digraph, b: &Digraph) -> Result<CheckReport> {
    let mut report = CheckReport::new(
        "hike-structure preserving pair",
        a.vertex_count().max(b.vertex_count()),
    );
    let (fa, fb) = (SpectralFingerprint::of(a)?, SpectralFingerprint::of(b)?);
    let conditions = [
        (
            "hike structure equal",
            hike_structure_equal(a, b)?,
            "hike structures differ".to_string(),
        ),
        (
            "same vertex count",
            a.vertex_count() == b.vertex_count(),
            format!(
                "vertex counts {} and {}",
                a.vertex_count(),
                b.vertex_count()
            ),
        ),
        (
            "same non-zero spectrum",
            same_nonzero_spectrum(a, b),
            "closed-walk counts differ".to_string(),
        ),
        (
            "same det(I - zA)",
            fa.char_poly == fb.char_poly,
            format!("{} vs {}", fa.char_poly, fb.char_poly),
        ),
        (
            "same perm(I - zA)",
            fa.perm_poly == fb.perm_poly,
            format!("{} vs {}", fa.perm_poly, fb.perm_poly),
        ),
        (
            "non-isomorphic",
            !digraphs_isomorphic(a, b),
            "isomorphic: not a valid pair".to_string(),
        ),
    ];
    for (name, ok, why) in conditions {
        report.note(format!("{name}: {}", if ok { "pass" } else { "FAIL" }));
        report.record(ok, || format!("{name}: {why}"));
    }
    Ok(report)
}

/// Expands a path-sum piece `1/(1 − x1/(1 − x2))` into
/// `1/(1 − x1 − x1·x2/(1 − x2))`, where `x_i = z^ℓ_i`.
///
/// `cycle2` must hang off `cycle1` at `shared`: the two meet only there, they
/// are the only primes through `shared`, the other vertices of `cycle2` have
/// in- and out-degree 1, and no other prime touches `cycle1` away from
/// `shared`. The result keeps `cycle1`, drops `cycle2`, adds a cycle of
/// length `ℓ1 + ℓ2` through `shared` and a fresh vertex `b`, and re-attaches a
/// copy of `cycle2` at `b`. Surviving vertices keep their relative order;
/// fresh vertices follow.
pub fn expand_pathsum(
    g: &Digraph,
    cycle1: &Prime,
    cycle2: &Prime,
    shared: usize,
) -> Result<Digraph> {
    let cat = enumerate_primes_capped(g, &Caps::from_env())?;
    let id1 = cat
        .find_cycle(cycle1.vertices())
        .ok_or_else(|| HikeError::Precondition("cycle1 is not a prime of the graph".into()))?;
    let id2 = cat
        .find_cycle(cycle2.vertices())
        .ok_or_else(|| HikeError::Precondition("cycle2 is not a prime of the graph".into()))?;
    if id1 == id2 {
        return Err(HikeError::Precondition(
            "cycle1 and cycle2 must differ".into(),
        ));
    }
    let bit = 1u64 << shared;
    if cat.mask(id1) & cat.mask(id2) != bit {
        return Err(HikeError::Precondition(format!(
            "the cycles must meet exactly at vertex {shared}"
        )));
    }
    let through = cat.through_vertex(shared);
    if through.len() != 2 {
        return Err(HikeError::Precondition(format!(
            "{} primes pass through vertex {shared}; only the two cycles may",
            through.len()
        )));
    }
    let private: Vec<usize> = cycle2
        .vertices()
        .iter()
        .copied()
        .filter(|&v| v != shared)
        .collect();
    if let Some(&v) = private
        .iter()
        .find(|&&v| g.in_degree(v) != 1 || g.out_degree(v) != 1)
    {
        return Err(HikeError::Precondition(format!(
            "vertex {v} of cycle2 has other arcs"
        )));
    }
    let rest1 = cat.mask(id1) & !bit;
    if let Some(p) = cat.ids().find(|&p| p != id1 && cat.mask(p) & rest1 != 0) {
        return Err(HikeError::Precondition(format!(
            "prime {} touches cycle1 away from the shared vertex",
            cat.prime(p)
        )));
    }

    let (l1, l2) = (cycle1.length(), cycle2.length());
    let n = g.vertex_count();
    let mut index = vec![usize::MAX; n];
    let mut next = 0;
    for (v, slot) in index.iter_mut().enumerate() {
        if !private.contains(&v) {
            *slot = next;
            next += 1;
        }
    }
    let drop: Vec<(usize, usize)> = cycle2.arcs().iter().map(|a| (a.tail, a.head)).collect();
    let mut arcs: Vec<(usize, usize)> = g
        .arcs()
        .map(|a| (a.tail, a.head))
        .filter(|e| !drop.contains(e))
        .map(|(t, h)| (index[t], index[h]))
        .collect();
    let s = index[shared];
    let fresh = |count: usize, next: &mut usize| -> Vec<usize> {
        let out: Vec<usize> = (*next..*next + count).collect();
        *next += count;
        out
    };
    // s → (ℓ1 − 1 fresh) → b → (ℓ2 − 1 fresh) → s
    let before_b = fresh(l1 - 1, &mut next);
    let b = fresh(1, &mut next)[0];
    let after_b = fresh(l2 - 1, &mut next);
    let long: Vec<usize> = std::iter::once(s)
        .chain(before_b)
        .chain([b])
        .chain(after_b)
        .collect();
    push_cycle(&mut arcs, &long);
    let copy: Vec<usize> = std::iter::once(b).chain(fresh(l2 - 1, &mut next)).collect();
    push_cycle(&mut arcs, &copy);
    Digraph::new(next, arcs)
}

fn push_cycle(arcs: &mut Vec<(usize, usize)>, cycle: &[usize]) {
    for i in 0..cycle.len() {
        arcs.push((cycle[i], cycle[(i + 1) % cycle.len()]));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::enumerate_primes;

    fn loop_on_backtrack() -> Digraph {
        Digraph::new(2, [(0, 1), (1, 0), (1, 1)]).unwrap()
    }

    fn expanded_partner() -> Digraph {
        Digraph::new(4, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 1), (3, 3)]).unwrap()
    }

    fn expand(g: &Digraph, c1: &[usize], c2: &[usize], s: usize) -> Result<Digraph> {
        let p1 = Prime::from_cycle(g, c1).unwrap();
        let p2 = Prime::from_cycle(g, c2).unwrap();
        expand_pathsum(g, &p1, &p2, s)
    }

    #[test]
    fn loop_on_backtrack_expansion() {
        let left = loop_on_backtrack();
        let right = expand(&left, &[1], &[0, 1], 1).unwrap();
        assert_eq!(right.vertex_count(), 4);
        assert!(digraphs_isomorphic(&right, &expanded_partner()));
        assert!(same_nonzero_spectrum(&left, &right));
        assert_eq!(char_poly(&left), IntPoly::from_i64(&[1, -1, -1]));
        assert_eq!(char_poly(&right), IntPoly::from_i64(&[1, -1, -1]));
        assert!(!hike_structure_equal(&left, &right).unwrap());
    }

    #[test]
    fn figure_eight_expansion() {
        // two backtracks sharing vertex 1
        let g = Digraph::undirected(3, [(0, 1), (1, 2)]).unwrap();
        let h = expand(&g, &[0, 1], &[1, 2], 1).unwrap();
        assert_eq!(h.vertex_count(), 6);
        assert_eq!(
            adjacency_trace_powers(&g, 6).unwrap(),
            adjacency_trace_powers(&h, 6).unwrap()
        );
    }

    #[test]
    fn expansion_preconditions() {
        let k3 = Digraph::undirected(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(expand(&k3, &[0, 1], &[1, 2], 1).is_err());
        let g = loop_on_backtrack();
        assert!(expand(&g, &[1], &[0, 1], 0).is_err());
    }

    #[test]
    fn simple_spectrum_cases() {
        let g = expanded_partner();
        assert!(same_nonzero_spectrum(&g, &g));
        let lp = Digraph::new(1, [(0, 0)]).unwrap();
        let bare = Digraph::new(1, []).unwrap();
        assert!(!same_nonzero_spectrum(&lp, &bare));
    }

    #[test]
    fn fingerprint_newton() {
        for g in [
            loop_on_backtrack(),
            expanded_partner(),
            Digraph::undirected(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap(),
        ] {
            assert!(SpectralFingerprint::of(&g).unwrap().newton_consistent());
        }
    }

    #[test]
    fn self_pair_is_rejected() {
        let g = expanded_partner();
        let r = intersection_slide_check(&g, &g).unwrap();
        assert!(!r.passed);
        assert!(r.counterexample.unwrap().contains("isomorphic"));
        let r = intersection_slide_check(&loop_on_backtrack(), &expanded_partner()).unwrap();
        assert!(!r.passed);
        assert!(r.notes.iter().any(|n| n == "same vertex count: FAIL"));
        assert!(r.notes.iter().any(|n| n == "same non-zero spectrum: pass"));
        let _ = enumerate_primes(&g).unwrap();
    }
}
