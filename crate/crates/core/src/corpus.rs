//! Generated graph families: small graphs up to isomorphism and seeded
//! random connected digraphs.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Digraph;
use crate::linalg::signed_permutations;
use crate::ugraph::UGraph;

/// Smallest edge bitmask over all relabellings; `slots` lists the possible
/// edges as vertex pairs, `bits` marks which are present.
fn canonical_mask(n: usize, slots: &[(usize, usize)], bits: u64, perms: &[Vec<usize>]) -> u64 {
    let index = |a: usize, b: usize| slots.iter().position(|&s| s == (a, b)).expect("slot");
    let mut best = u64::MAX;
    for perm in perms {
        let mut m = 0u64;
        for (i, &(a, b)) in slots.iter().enumerate() {
            if bits >> i & 1 == 1 {
                let (x, y) = (perm[a], perm[b]);
                let key = if slots.contains(&(x, y)) {
                    (x, y)
                } else {
                    (y, x)
                };
                m |= 1 << index(key.0, key.1);
            }
        }
        best = best.min(m);
    }
    debug_assert!(n == 0 || best != u64::MAX);
    best
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    signed_permutations(n).into_iter().map(|(p, _)| p).collect()
}

/// Every connected undirected simple graph on exactly `n` vertices, one per
/// isomorphism class. Practical for `n ≤ 6`.
pub fn connected_ugraphs(n: usize) -> Vec<UGraph> {
    assert!(n <= 7, "exhaustive generation is limited to 7 vertices");
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for bits in 0..1u64 << slots.len() {
        let g = UGraph::from_edges(
            n,
            slots
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, &e)| e),
        );
        if !g.is_connected() {
            continue;
        }
        if seen.insert(canonical_mask(n, &slots, bits, &perms)) {
            out.push(g);
        }
    }
    out
}

/// Every weakly connected digraph on exactly `n` vertices, loops allowed,
/// one per isomorphism class. Practical for `n ≤ 3`.
pub fn connected_digraphs(n: usize) -> Vec<Digraph> {
    assert!(
        n <= 3,
        "exhaustive digraph generation is limited to 3 vertices"
    );
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for bits in 0..1u64 << slots.len() {
        let arcs = slots
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &e)| e);
        let g = Digraph::new(n, arcs).expect("distinct in-range arcs");
        if !g.is_weakly_connected() {
            continue;
        }
        if seen.insert(canonical_mask(n, &slots, bits, &perms)) {
            out.push(g);
        }
    }
    out
}

/// A weakly connected digraph where each non-loop arc appears with
/// probability `p_arc` and each loop with `p_loop`, resampled until connected.
pub fn random_connected_digraph<R: Rng>(rng: &mut R, n: usize, p_arc: f64, p_loop: f64) -> Digraph {
    loop {
        let mut arcs = Vec::new();
        for t in 0..n {
            for h in 0..n {
                let p = if t == h { p_loop } else { p_arc };
                if rng.gen_bool(p) {
                    arcs.push((t, h));
                }
            }
        }
        let g = Digraph::new(n, arcs).expect("distinct in-range arcs");
        if g.is_weakly_connected() {
            return g;
        }
    }
}

/// The identity-check corpus: all connected digraphs with loops on up to 3
/// vertices, then `per_size` seeded random connected digraphs on 4 and on 5
/// vertices.
pub fn identity_corpus(per_size: usize, seed: u64) -> Vec<Digraph> {
    let mut out: Vec<Digraph> = (1..=3).flat_map(connected_digraphs).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in [4, 5] {
        for _ in 0..per_size {
            out.push(random_connected_digraph(&mut rng, n, 0.35, 0.1));
        }
    }
    out
}

/// Connected loop-free bidirected digraphs on `2..=max_n` vertices, one per
/// isomorphism class of the underlying graph.
pub fn bidirected_corpus(max_n: usize) -> Vec<Digraph> {
    (2..=max_n)
        .flat_map(connected_ugraphs)
        .map(|g| g.to_digraph())
        .collect()
}
