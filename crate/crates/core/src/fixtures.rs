//! Named small graphs used by the examples, the CLI showcase and the tests.

use crate::graph::Digraph;
use crate::hike::{hike_from_primes, Hike};
use crate::primes::{PrimeCatalog, PrimeId};
use crate::ugraph::UGraph;

/// The bidirected 5-cycle drawn as a pentagram: edges 0-2, 1-3, 2-4, 0-3, 1-4.
pub fn pentagram() -> Digraph {
    Digraph::undirected(5, [(0, 2), (1, 3), (2, 4), (0, 3), (1, 4)]).expect("valid fixture")
}

/// Letters `a..g` for the seven primes of [`pentagram`]: five backtracks
/// `a = 0↔2`, `b = 1↔3`, `c = 2↔4`, `d = 0↔3`, `e = 1↔4`, then the two
/// orientations `f = 0→2→4→1→3→0` and `g = 0→3→1→4→2→0`.
pub fn pentagram_letters(cat: &PrimeCatalog) -> Vec<(char, PrimeId)> {
    let cycles: [&[usize]; 7] = [
        &[0, 2],
        &[1, 3],
        &[2, 4],
        &[0, 3],
        &[1, 4],
        &[0, 2, 4, 1, 3],
        &[0, 3, 1, 4, 2],
    ];
    ('a'..='g')
        .zip(cycles)
        .map(|(c, cyc)| (c, cat.find_cycle(cyc).expect("pentagram catalog")))
        .collect()
}

/// The closed form of the Möbius series on [`pentagram`]:
/// `1 − a − b − c − d − e − f − g + ab + bc + cd + de + ea`. The quadratic
/// terms are the five vertex-disjoint pairs of backtracks.
pub fn pentagram_mobius_terms(cat: &PrimeCatalog) -> Vec<(Hike, i64)> {
    let letters = pentagram_letters(cat);
    let id = |c: char| letters.iter().find(|(l, _)| *l == c).expect("letter").1;
    let mut terms = vec![(Hike::one(cat), 1)];
    for (_, p) in &letters {
        terms.push((Hike::prime(cat, *p), -1));
    }
    for pair in ["ab", "bc", "cd", "de", "ea"] {
        let ps: Vec<PrimeId> = pair.chars().map(id).collect();
        terms.push((hike_from_primes(cat, &ps).expect("same catalog"), 1));
    }
    terms
}

/// A backtrack `0↔1` hanging off a triangle `1→2→3→1`.
pub fn lollipop() -> Digraph {
    Digraph::new(4, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 1)]).expect("valid fixture")
}

/// `(backtrack, triangle)` in a catalog of [`lollipop`].
pub fn lollipop_primes(cat: &PrimeCatalog) -> (PrimeId, PrimeId) {
    (
        cat.find_cycle(&[0, 1]).expect("lollipop catalog"),
        cat.find_cycle(&[1, 2, 3]).expect("lollipop catalog"),
    )
}

/// Triangle `0,1,2` joined through `2-3` to triangle `3,4,5`.
pub fn bowtie_root() -> UGraph {
    UGraph::from_edges(6, [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])
}

/// Dependence graph of [`bowtie_root`] with primes labelled so that
/// `0, 1, 2, 3, 4, 7` are backtracks and `5, 6` the two triangle orientations.
pub fn bowtie_gamma() -> UGraph {
    let one_based = [
        (1, 2),
        (2, 3),
        (3, 1),
        (3, 4),
        (4, 5),
        (5, 3),
        (3, 6),
        (6, 7),
        (7, 3),
        (8, 6),
        (7, 8),
        (8, 4),
        (5, 8),
        (4, 7),
        (7, 5),
        (5, 6),
        (6, 4),
    ];
    UGraph::from_edges(8, one_based.iter().map(|&(a, b)| (a - 1, b - 1)))
}

/// Two non-isomorphic six-vertex digraphs whose primes have lengths 3, 4, 2
/// and depend along a path. They share determinant and permanent polynomials.
pub fn structure_twins() -> (Digraph, Digraph) {
    let left = Digraph::new(
        6,
        [
            (0, 1),
            (1, 2),
            (2, 0),
            (2, 4),
            (4, 3),
            (3, 1),
            (4, 5),
            (5, 4),
        ],
    )
    .expect("valid fixture");
    let right = Digraph::new(
        6,
        [
            (1, 0),
            (3, 1),
            (3, 2),
            (0, 3),
            (5, 3),
            (2, 4),
            (4, 5),
            (5, 4),
        ],
    )
    .expect("valid fixture");
    (left, right)
}

/// A loop sitting on a backtrack, and its four-vertex path-sum expansion.
/// Both have `det(I − zA) = 1 − z − z²`.
pub fn fibonacci_pair() -> (Digraph, Digraph) {
    let small = Digraph::new(2, [(0, 1), (1, 0), (1, 1)]).expect("valid fixture");
    let large =
        Digraph::new(4, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 1), (3, 3)]).expect("valid fixture");
    (small, large)
}

/// Bidirected triangle.
pub fn triangle() -> Digraph {
    UGraph::complete(3).to_digraph()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cospectral::{intersection_slide_check, HikeStructure, SpectralFingerprint};
    use crate::iso::graphs_isomorphic;
    use crate::primes::enumerate_primes;
    use crate::reconstruction::{dependence_graph, equivalence_classes};

    #[test]
    fn pentagram_letters_are_distinct() {
        let cat = enumerate_primes(&pentagram()).unwrap();
        let mut ids: Vec<_> = pentagram_letters(&cat)
            .into_iter()
            .map(|(_, p)| p)
            .collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 7);
        assert_eq!(pentagram_mobius_terms(&cat).len(), 13);
        let letters = pentagram_letters(&cat);
        let (a, c) = (letters[0].1, letters[2].1);
        assert!(cat.dependent(a, c), "a and c share vertex 2");
    }

    #[test]
    fn bowtie_gamma_matches_root() {
        let gamma = dependence_graph(&bowtie_root().to_digraph()).unwrap();
        assert!(graphs_isomorphic(&gamma, &bowtie_gamma()));
        let mut sizes: Vec<_> = equivalence_classes(&bowtie_gamma())
            .iter()
            .map(|c| c.members.len())
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 4]);
    }

    #[test]
    fn structure_twins_pass_validation() {
        let (a, b) = structure_twins();
        let report = intersection_slide_check(&a, &b).unwrap();
        assert!(report.passed, "{report}");
        let s = HikeStructure::of(&a).unwrap();
        assert_eq!(s.sorted_lengths(), vec![2, 3, 4]);
        assert_eq!(s.gamma.edge_count(), 2);
        assert_eq!(
            SpectralFingerprint::of(&a).unwrap(),
            SpectralFingerprint::of(&b).unwrap()
        );
    }
}
