//! Checks tying hike series to matrix polynomials: determinant and Möbius,
//! permanent and Liouville, MacMahon, traces and von Mangoldt, primitive
//! orbit counts, the Ihara factorization and the Lambert series.
//!
//! Each non-commutative identity is compared after a monoid homomorphism
//! (`arc ↦ u`, or `arc ↦ t_head`), which keeps every comparison exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arithmetic::{liouville, mangoldt_by_convolution};
use crate::caps::Caps;
use crate::error::{HikeError, Result};
use crate::graph::{adjacency_trace_powers, char_poly, permanental_poly_capped, Arc, Digraph};
use crate::hike::{enumerate_hikes_capped, Hike};
use crate::incidence::mobius;
use crate::linalg::{leibniz_det, signed_permutations, IntMatrix};
use crate::number_theory::mobius_n;
use crate::poly::{IntPoly, TruncatedMultiSeries};
use crate::primes::{enumerate_primes_capped, PrimeCatalog};
use crate::report::CheckReport;

/// Primitive orbit counts: `counts[ℓ]` is the number of primitive closed
/// walk orbits of length `ℓ` (`counts[0]` is always 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitCounts {
    #[serde(serialize_with = "crate::poly::serialize_bigints")]
    pub counts: Vec<BigInt>,
}

impl OrbitCounts {
    pub fn get(&self, len: usize) -> BigInt {
        self.counts.get(len).cloned().unwrap_or_default()
    }

    pub fn bound(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }
}

fn catalog_and_hikes(g: &Digraph, bound: usize, caps: &Caps) -> Result<(PrimeCatalog, Vec<Hike>)> {
    let cat = enumerate_primes_capped(g, caps)?;
    let hikes = enumerate_hikes_capped(&cat, bound, caps)?;
    Ok((cat, hikes))
}

/// `det(I − zA) = Σ_h μ(h) z^ℓ(h)`, compared coefficient-wise up to
/// `min(bound, n)`.
pub fn check_det_mobius(g: &Digraph, bound: usize) -> Result<CheckReport> {
    let top = bound.min(g.vertex_count());
    let (_, hikes) = catalog_and_hikes(g, top, &Caps::from_env())?;
    let mut sums = vec![0i64; top + 1];
    for h in &hikes {
        sums[h.length()] += mobius(h);
    }
    let det = char_poly(g);
    let mut report = CheckReport::new("det(I - zA) = sum mu(h) z^len(h)", top);
    for (k, &s) in sums.iter().enumerate() {
        let c = det.coeff(k);
        report.record(c == BigInt::from(s), || {
            format!("z^{k}: det coefficient {c}, mobius sum {s}")
        });
    }
    Ok(report)
}

/// `det(I − W) = Σ_h μ(h) h` with arcs kept as labels: the Leibniz
/// expansion grouped by arc set must equal `{(arcs(h), μ(h))}` over
/// self-avoiding hikes.
pub fn check_labeled_determinant(g: &Digraph) -> Result<CheckReport> {
    let n = g.vertex_count();
    let caps = Caps::from_env();
    if n > caps.leibniz_n {
        return Err(HikeError::SizeLimit {
            what: "vertex count for the labelled Leibniz expansion",
            actual: n,
            limit: caps.leibniz_n,
        });
    }
    let mut from_det: BTreeMap<Vec<Arc>, i64> = BTreeMap::new();
    for (perm, sign) in signed_permutations(n) {
        let moved: Vec<usize> = (0..n).filter(|&i| perm[i] != i).collect();
        if moved.iter().any(|&i| !g.has_arc(i, perm[i])) {
            continue;
        }
        let loops: Vec<usize> = (0..n)
            .filter(|&i| perm[i] == i && g.has_arc(i, i))
            .collect();
        // each fixed point with a loop contributes 1 or −w_ii
        for pick in 0u32..(1 << loops.len()) {
            let mut arcs: Vec<Arc> = moved.iter().map(|&i| Arc::new(i, perm[i])).collect();
            arcs.extend(
                loops
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| pick & (1 << b) != 0)
                    .map(|(_, &i)| Arc::new(i, i)),
            );
            arcs.sort();
            let coeff = i64::from(sign) * if arcs.len().is_multiple_of(2) { 1 } else { -1 };
            *from_det.entry(arcs).or_default() += coeff;
        }
    }
    from_det.retain(|_, c| *c != 0);

    let (cat, hikes) = catalog_and_hikes(g, n, &caps)?;
    let mut from_hikes: BTreeMap<Vec<Arc>, i64> = BTreeMap::new();
    for h in hikes.iter().filter(|h| h.is_self_avoiding()) {
        let mut arcs = h.arc_word(&cat);
        arcs.sort();
        *from_hikes.entry(arcs).or_default() += mobius(h);
    }

    let mut report = CheckReport::new("det(I - W) = sum mu(h) h (labelled)", n);
    let keys: std::collections::BTreeSet<&Vec<Arc>> =
        from_det.keys().chain(from_hikes.keys()).collect();
    for k in keys {
        let a = from_det.get(k).copied().unwrap_or(0);
        let b = from_hikes.get(k).copied().unwrap_or(0);
        report.record(a == b, || {
            let arcs: Vec<String> = k.iter().map(ToString::to_string).collect();
            format!(
                "arc set {{{}}}: determinant {a}, mobius {b}",
                arcs.join(" ")
            )
        });
    }
    Ok(report)
}

/// `perm(I + uA)` counts self-avoiding hikes by length, and
/// `(Σ_h λ(h) u^ℓ(h)) · perm(I + uA) ≡ 1 mod u^(bound+1)`.
pub fn check_perm_liouville(g: &Digraph, bound: usize) -> Result<CheckReport> {
    let caps = Caps::from_env();
    let (_, hikes) = catalog_and_hikes(g, bound, &caps)?;
    let perm = permanental_poly_capped(g, &caps)?;
    let mut self_avoiding = vec![0i64; bound + 1];
    let mut lambda = vec![0i64; bound + 1];
    for h in &hikes {
        if h.is_self_avoiding() {
            self_avoiding[h.length()] += 1;
        }
        lambda[h.length()] += liouville(h);
    }
    let mut report = CheckReport::new("1/perm(I + uA) = sum lambda(h) u^len(h)", bound);
    for (k, &count) in self_avoiding.iter().enumerate() {
        let c = perm.coeff(k);
        report.record(c == BigInt::from(count), || {
            format!("u^{k}: permanent coefficient {c}, {count} self-avoiding hikes")
        });
    }
    let series = IntPoly::from_i64(&lambda);
    let product = series.mul_truncated(&perm, bound);
    for k in 0..=bound {
        let expected = BigInt::from((k == 0) as i64);
        let c = product.coeff(k);
        report.record(c == expected, || {
            format!("u^{k} of lambda-series * perm is {c}")
        });
    }
    Ok(report)
}

/// `Σ_h ∏_v t_v^(visits to v) = 1/det(I − AT)` to total degree `degree`,
/// with the determinant expanded by Leibniz over truncated series.
pub fn check_macmahon(g: &Digraph, degree: usize) -> Result<CheckReport> {
    let n = g.vertex_count();
    let caps = Caps::from_env();
    if n > caps.leibniz_n {
        return Err(HikeError::SizeLimit {
            what: "vertex count for the MacMahon determinant",
            actual: n,
            limit: caps.leibniz_n,
        });
    }
    let matrix: Vec<Vec<TruncatedMultiSeries>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = if i == j {
                        TruncatedMultiSeries::one(n, degree)
                    } else {
                        TruncatedMultiSeries::zero(n, degree)
                    };
                    if g.has_arc(i, j) {
                        e = &e - &TruncatedMultiSeries::variable(n, degree, j);
                    }
                    e
                })
                .collect()
        })
        .collect();
    let det = leibniz_det(&matrix, n, degree);
    let inverse = det.inverse()?;

    let (cat, hikes) = catalog_and_hikes(g, degree, &caps)?;
    let mut from_hikes = TruncatedMultiSeries::zero(n, degree);
    for h in &hikes {
        from_hikes.add_term(h.visit_counts(&cat), BigRational::one());
    }

    let mut report = CheckReport::new("sum weight(h) = 1/det(I - AT)", degree);
    let mut keys: Vec<&Vec<u32>> = inverse.terms().map(|t| t.0).collect();
    keys.extend(from_hikes.terms().map(|t| t.0));
    keys.sort();
    keys.dedup();
    for k in keys {
        let (a, b) = (inverse.coeff(k), from_hikes.coeff(k));
        report.record(a == b, || {
            format!("monomial t^{k:?}: series {a}, hikes {b}")
        });
    }
    Ok(report)
}

/// `Σ_{ℓ(h) = k} Λ(h) = Tr(A^k)` for `1 ≤ k ≤ bound`.
pub fn check_trace_mangoldt(g: &Digraph, bound: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("sum over len k of Lambda = Tr(A^k)", bound);
    if bound == 0 {
        return Ok(report);
    }
    let (cat, hikes) = catalog_and_hikes(g, bound, &Caps::from_env())?;
    let mut sums = vec![0i64; bound + 1];
    for h in &hikes {
        sums[h.length()] += mangoldt_by_convolution(&cat, h)?;
    }
    let traces = adjacency_trace_powers(g, bound)?;
    for k in 1..=bound {
        let t = &traces[k - 1];
        report.record(*t == BigInt::from(sums[k]), || {
            format!("k = {k}: Tr(A^k) = {t}, Lambda sum = {}", sums[k])
        });
    }
    Ok(report)
}

/// `π(ℓ) = (1/ℓ) Σ_{d | ℓ} μ(ℓ/d) t_d` from a trace list (`traces[d − 1]`).
pub fn orbit_counts_from_traces(traces: &[BigInt]) -> Result<OrbitCounts> {
    let mut counts = vec![BigInt::zero()];
    for len in 1..=traces.len() {
        let mut acc = BigInt::zero();
        for d in (1..=len).filter(|d| len % d == 0) {
            acc += BigInt::from(mobius_n((len / d) as u64)) * &traces[d - 1];
        }
        let (q, r) = acc.div_rem(&BigInt::from(len));
        if !r.is_zero() {
            return Err(HikeError::Internal(format!(
                "orbit count for length {len} is {acc}/{len}, not an integer"
            )));
        }
        counts.push(q);
    }
    Ok(OrbitCounts { counts })
}

/// Primitive orbit counts by Möbius inversion of `Tr(A^n)`.
pub fn primitive_orbit_counts(g: &Digraph, bound: usize) -> Result<OrbitCounts> {
    orbit_counts_from_traces(&adjacency_trace_powers(g, bound)?)
}

/// Trace-based primitive orbit counts agree with closed-walk listing for
/// every length up to `bound`.
pub fn check_orbit_counts(g: &Digraph, bound: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("pi from traces = pi from closed walks", bound);
    if bound == 0 {
        return Ok(report);
    }
    let (fast, slow) = (
        primitive_orbit_counts(g, bound)?,
        brute_force_orbits(g, bound)?,
    );
    for len in 1..=bound {
        let (a, b) = (fast.get(len), slow.get(len));
        report.record(a == b, || {
            format!("length {len}: traces give {a}, walks give {b}")
        });
    }
    Ok(report)
}

/// Primitive orbit counts by listing closed walks: a walk is counted when
/// it is not a proper power and is the lexicographically least of its
/// rotations.
pub fn brute_force_orbits(g: &Digraph, bound: usize) -> Result<OrbitCounts> {
    if bound == 0 {
        return Err(HikeError::Precondition("bound must be at least 1".into()));
    }
    let mut counts = vec![BigInt::zero(); bound + 1];
    let mut walk = Vec::with_capacity(bound);
    for start in 0..g.vertex_count() {
        walk.push(start);
        count_orbits(g, &mut walk, bound, &mut counts);
        walk.pop();
    }
    Ok(OrbitCounts { counts })
}

fn count_orbits(g: &Digraph, walk: &mut Vec<usize>, bound: usize, counts: &mut [BigInt]) {
    let last = *walk.last().expect("non-empty");
    if g.has_arc(last, walk[0]) && is_primitive_representative(walk) {
        counts[walk.len()] += 1;
    }
    if walk.len() == bound {
        return;
    }
    for &w in g.successors(last) {
        // a representative starts at its smallest vertex
        if w >= walk[0] {
            walk.push(w);
            count_orbits(g, walk, bound, counts);
            walk.pop();
        }
    }
}

/// `seq` is strictly smaller than each of its non-trivial rotations. This
/// excludes proper powers, whose rotations include `seq` itself.
fn is_primitive_representative(seq: &[usize]) -> bool {
    let l = seq.len();
    (1..l).all(|r| {
        let rotated = seq[r..].iter().chain(&seq[..r]);
        seq.iter().lt(rotated)
    })
}

/// The non-backtracking arc matrix: `B[(i,j),(k,l)] = 1` iff `j = k` and
/// `(k,l) ≠ (j,i)`. Rows follow the sorted arc order of `g`.
pub fn hashimoto_matrix(g: &Digraph) -> IntMatrix {
    let arcs: Vec<Arc> = g.arcs().collect();
    let mut b = IntMatrix::zeros(arcs.len());
    for (r, a) in arcs.iter().enumerate() {
        for (c, e) in arcs.iter().enumerate() {
            if a.head == e.tail && *e != a.reversed() {
                b.set(r, c, BigInt::one());
            }
        }
    }
    b
}

/// `∏_ℓ (1 − u^ℓ)^(−exponents[ℓ])` truncated at `bound`.
fn euler_product(exponents: &[BigInt], bound: usize) -> Result<IntPoly> {
    let mut acc = IntPoly::one();
    for (len, e) in exponents.iter().enumerate().skip(1).take(bound) {
        let e = e
            .to_i64()
            .ok_or_else(|| HikeError::Internal(format!("orbit count {e} too large")))?;
        if e != 0 {
            acc = acc.mul_truncated(&IntPoly::cyclotomic_power(len, -e, bound), bound);
        }
    }
    Ok(acc.truncated(bound))
}

/// Backtrackless orbit counts from `Tr(B^n)`.
pub fn backtrackless_orbit_counts(g: &Digraph, bound: usize) -> Result<OrbitCounts> {
    if bound == 0 {
        return Err(HikeError::Precondition("bound must be at least 1".into()));
    }
    orbit_counts_from_traces(&hashimoto_matrix(g).trace_powers(bound))
}

/// `ζ_A(u) = ζ_I(u) · ζ_b(u)` on a bidirected loop-free graph, where
/// `ζ_A = 1/det(I − uA)`, `ζ_I = 1/det(I − uB)` and `ζ_b` is the Euler
/// product over the remaining (backtrack-bearing) primitive orbits. The
/// exponents of `ζ_b` must be non-negative.
pub fn check_ihara_factorization(g: &Digraph, bound: usize) -> Result<CheckReport> {
    if !g.is_bidirected() || g.has_loops() {
        return Err(HikeError::Precondition(
            "the Ihara factorization needs a bidirected graph without loops".into(),
        ));
    }
    let all = primitive_orbit_counts(g, bound)?;
    let bl = backtrackless_orbit_counts(g, bound)?;
    let mut report = CheckReport::new("zeta_A = zeta_I * zeta_b", bound);
    let mut rest = vec![BigInt::zero()];
    for len in 1..=bound {
        let (a, b) = (all.get(len), bl.get(len));
        report.record(b >= BigInt::zero() && a >= b, || {
            format!("length {len}: pi_all = {a}, pi_backtrackless = {b}")
        });
        rest.push(a - b);
    }
    let zeta_a = char_poly(g).inverse_series(bound)?;
    let zeta_i = hashimoto_matrix(g)
        .reversed_char_poly()
        .inverse_series(bound)?;
    let euler_a = euler_product(&all.counts, bound)?;
    let euler_i = euler_product(&bl.counts, bound)?;
    let zeta_b = euler_product(&rest, bound)?;
    let product = zeta_i.mul_truncated(&zeta_b, bound);
    for k in 0..=bound {
        report.record(euler_a.coeff(k) == zeta_a.coeff(k), || {
            format!(
                "u^{k}: Euler product over all orbits {} vs 1/det(I-uA) {}",
                euler_a.coeff(k),
                zeta_a.coeff(k)
            )
        });
        report.record(euler_i.coeff(k) == zeta_i.coeff(k), || {
            format!(
                "u^{k}: Euler product over backtrackless orbits {} vs 1/det(I-uB) {}",
                euler_i.coeff(k),
                zeta_i.coeff(k)
            )
        });
        report.record(product.coeff(k) == zeta_a.coeff(k), || {
            format!(
                "u^{k}: zeta_I * zeta_b = {} vs zeta_A = {}",
                product.coeff(k),
                zeta_a.coeff(k)
            )
        });
    }
    Ok(report)
}

/// `Tr(A^m) = Σ_{ℓ | m} ℓ π(ℓ)` for `1 ≤ m ≤ max_order`: the coefficients of
/// the Lambert-series form of the resolvent trace.
pub fn check_lambert_resolvent(g: &Digraph, max_order: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("Tr(A^m) = sum over l | m of l pi(l)", max_order);
    if max_order == 0 {
        return Ok(report);
    }
    let traces = adjacency_trace_powers(g, max_order)?;
    let pi = orbit_counts_from_traces(&traces)?;
    for m in 1..=max_order {
        let rhs: BigInt = (1..=m)
            .filter(|l| m % l == 0)
            .map(|l| BigInt::from(l) * pi.get(l))
            .sum();
        let t = &traces[m - 1];
        report.record(*t == rhs, || {
            format!("m = {m}: Tr(A^m) = {t}, Lambert sum = {rhs}")
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Digraph {
        Digraph::undirected(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn c5() -> Digraph {
        Digraph::undirected(5, [(0, 2), (1, 3), (2, 4), (0, 3), (1, 4)]).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn det_mobius_examples() {
        assert_eq!(char_poly(&c5()).padded(5), ints(&[1, 0, -5, 0, 5, -2]));
        for g in [
            c5(),
            Digraph::new(3, [(0, 1), (1, 2)]).unwrap(),
            Digraph::new(2, [(0, 1), (1, 0), (1, 1)]).unwrap(),
        ] {
            let r = check_det_mobius(&g, 8).unwrap();
            assert!(r.passed, "{r}");
            assert!(check_labeled_determinant(&g).unwrap().passed);
        }
    }

    #[test]
    fn perm_liouville_examples() {
        for g in [
            Digraph::new(1, [(0, 0)]).unwrap(),
            Digraph::new(2, [(0, 1), (1, 0)]).unwrap(),
            k3(),
        ] {
            let r = check_perm_liouville(&g, 6).unwrap();
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn macmahon_examples() {
        for g in [
            Digraph::new(1, [(0, 0)]).unwrap(),
            Digraph::new(2, [(0, 1), (1, 0)]).unwrap(),
            k3(),
        ] {
            let r = check_macmahon(&g, 4).unwrap();
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn orbit_examples() {
        let pi = primitive_orbit_counts(&k3(), 6).unwrap();
        assert_eq!(pi.get(2), BigInt::from(3));
        assert_eq!(pi.get(3), BigInt::from(2));
        assert_eq!(pi, brute_force_orbits(&k3(), 6).unwrap());
        let lp = Digraph::new(1, [(0, 0)]).unwrap();
        assert_eq!(
            primitive_orbit_counts(&lp, 4).unwrap().counts,
            ints(&[0, 1, 0, 0, 0])
        );
        let tri = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(
            brute_force_orbits(&tri, 6).unwrap().counts,
            ints(&[0, 0, 0, 1, 0, 0, 0])
        );
        assert_eq!(
            primitive_orbit_counts(&tri, 6).unwrap(),
            brute_force_orbits(&tri, 6).unwrap()
        );
    }

    #[test]
    fn lambert_examples() {
        let traces = adjacency_trace_powers(&k3(), 6).unwrap();
        assert_eq!(traces[5], BigInt::from(66));
        for g in [
            k3(),
            Digraph::new(1, [(0, 0)]).unwrap(),
            Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap(),
        ] {
            assert!(check_lambert_resolvent(&g, 8).unwrap().passed);
        }
    }

    /// Oracle for backtrackless orbits: closed walks with no immediate
    /// reversal, cyclically.
    fn backtrackless_oracle(g: &Digraph, bound: usize) -> Vec<BigInt> {
        fn go(g: &Digraph, walk: &mut Vec<usize>, bound: usize, out: &mut [i64]) {
            let l = walk.len();
            let last = walk[l - 1];
            // neither the closing arc nor the wrap-around to the first arc
            // may reverse its predecessor
            let closes =
                g.has_arc(last, walk[0]) && (l < 2 || (walk[l - 2] != walk[0] && walk[1] != last));
            if closes && is_primitive_representative(walk) {
                out[l] += 1;
            }
            if l == bound {
                return;
            }
            for &w in g.successors(last) {
                if w >= walk[0] && (l < 2 || walk[l - 2] != w) {
                    walk.push(w);
                    go(g, walk, bound, out);
                    walk.pop();
                }
            }
        }
        let mut out = vec![0i64; bound + 1];
        for s in 0..g.vertex_count() {
            go(g, &mut vec![s], bound, &mut out);
        }
        ints(&out)
    }

    #[test]
    fn ihara_examples() {
        let bl = backtrackless_orbit_counts(&k3(), 8).unwrap();
        assert_eq!(bl.get(3), BigInt::from(2));
        assert_eq!(bl.counts, backtrackless_oracle(&k3(), 8));
        let path = Digraph::undirected(3, [(0, 1), (1, 2)]).unwrap();
        assert!(backtrackless_orbit_counts(&path, 8)
            .unwrap()
            .counts
            .iter()
            .all(Zero::is_zero));
        let bl = backtrackless_orbit_counts(&c5(), 8).unwrap();
        assert_eq!(bl.get(5), BigInt::from(2));
        assert_eq!(bl.counts, backtrackless_oracle(&c5(), 8));
        for g in [k3(), path, c5()] {
            let r = check_ihara_factorization(&g, 8).unwrap();
            assert!(r.passed, "{r}");
        }
        assert!(check_ihara_factorization(&Digraph::new(2, [(0, 1)]).unwrap(), 4).is_err());
    }

    #[test]
    fn trace_mangoldt_examples() {
        for g in [
            k3(),
            c5(),
            Digraph::new(4, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 1)]).unwrap(),
        ] {
            let r = check_trace_mangoldt(&g, 8).unwrap();
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn non_integral_orbits_are_reported() {
        assert!(orbit_counts_from_traces(&ints(&[0, 1])).is_err());
    }
}
