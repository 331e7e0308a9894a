//! Named arithmetic functions on hikes and the theorems relating them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::error::{HikeError, Result};
use crate::graph::Arc;
use crate::hike::{downsets, enumerate_hikes, left_divisors, multiply_unchecked, Hike};
use crate::incidence::{convolve, mobius, rat, IncidenceFunction};
use crate::number_theory::nth_prime;
use crate::primes::PrimeCatalog;
use crate::report::CheckReport;

/// The functions on hikes that have names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedFunction {
    /// ℓ: arc count.
    Length,
    /// Ω: prime-occurrence count.
    BigOmega,
    /// ω: number of prime divisors.
    SmallOmega,
    /// τ: number of left divisors.
    Tau,
    /// 1_p: indicator of primes.
    PrimeIndicator,
    /// 1_w: indicator of non-trivial closed walks.
    WalkIndicator,
    /// Λ = ℓ ∗ μ.
    Mangoldt,
    /// λ = (−1)^Ω.
    Liouville,
    Mobius,
    /// |μ|.
    AbsMobius,
    One,
    Delta,
    /// Product of the vertex weights `t_v` over every visit, with `t_v`
    /// encoded as the `v`-th integer prime.
    Weight,
}

impl NamedFunction {
    pub const ALL: [NamedFunction; 13] = [
        NamedFunction::Length,
        NamedFunction::BigOmega,
        NamedFunction::SmallOmega,
        NamedFunction::Tau,
        NamedFunction::PrimeIndicator,
        NamedFunction::WalkIndicator,
        NamedFunction::Mangoldt,
        NamedFunction::Liouville,
        NamedFunction::Mobius,
        NamedFunction::AbsMobius,
        NamedFunction::One,
        NamedFunction::Delta,
        NamedFunction::Weight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedFunction::Length => "length",
            NamedFunction::BigOmega => "big_omega",
            NamedFunction::SmallOmega => "small_omega",
            NamedFunction::Tau => "tau",
            NamedFunction::PrimeIndicator => "prime_indicator",
            NamedFunction::WalkIndicator => "walk_indicator",
            NamedFunction::Mangoldt => "mangoldt",
            NamedFunction::Liouville => "liouville",
            NamedFunction::Mobius => "mobius",
            NamedFunction::AbsMobius => "abs_mobius",
            NamedFunction::One => "one",
            NamedFunction::Delta => "delta",
            NamedFunction::Weight => "weight",
        }
    }
}

impl fmt::Display for NamedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedFunction {
    type Err = HikeError;

    /// Accepts the names from [`NamedFunction::name`], plus `lambda` for
    /// Liouville.
    fn from_str(s: &str) -> Result<Self> {
        if s == "lambda" {
            return Ok(NamedFunction::Liouville);
        }
        NamedFunction::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| HikeError::Precondition(format!("unknown function {s:?}")))
    }
}

impl IncidenceFunction for NamedFunction {
    fn eval(&self, cat: &PrimeCatalog, h: &Hike) -> BigRational {
        match self {
            NamedFunction::Length => rat(h.length() as i64),
            NamedFunction::BigOmega => rat(h.omega() as i64),
            NamedFunction::SmallOmega => rat(h.small_omega() as i64),
            NamedFunction::Tau => rat(left_divisors(cat, h).map(|d| d.len()).unwrap_or(0) as i64),
            NamedFunction::PrimeIndicator => rat((h.omega() == 1) as i64),
            NamedFunction::WalkIndicator => rat(h.is_walk(cat) as i64),
            NamedFunction::Mangoldt => {
                rat(mangoldt_by_convolution(cat, h).expect("divisor enumeration within limits"))
            }
            NamedFunction::Liouville => rat(liouville(h)),
            NamedFunction::Mobius => rat(mobius(h)),
            NamedFunction::AbsMobius => rat(mobius(h).abs()),
            NamedFunction::One => BigRational::one(),
            NamedFunction::Delta => rat(h.is_one() as i64),
            NamedFunction::Weight => BigRational::from_integer(weight(cat, h)),
        }
    }
}

/// λ(h) = (−1)^Ω(h).
pub fn liouville(h: &Hike) -> i64 {
    if h.omega().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The vertex-weight monomial `∏ t_v^(visits to v)` with `t_v` replaced by
/// the `v`-th integer prime, which keeps distinct monomials distinct.
pub fn weight(cat: &PrimeCatalog, h: &Hike) -> BigInt {
    let mut w = BigInt::one();
    for (v, &k) in h.visit_counts(cat).iter().enumerate() {
        if k > 0 {
            w *= BigInt::from(nth_prime(v)).pow(k);
        }
    }
    w
}

/// Λ(h) = Σ_{d | h} ℓ(d) μ(h/d).
///
/// Sums over every left divisor, reading ℓ(d) and μ(h/d) straight off the
/// occurrence masks instead of building each divisor as a hike.
pub fn mangoldt_by_convolution(cat: &PrimeCatalog, h: &Hike) -> Result<i64> {
    let ds = downsets(cat, h)?;
    let total = h.length() as i64;
    let mut acc = 0i64;
    for &down in &ds.sets {
        let mut quotient_mask = 0u64;
        let mut quotient_len = 0i64;
        let mut quotient_omega = 0u32;
        let mut self_avoiding = true;
        for (i, &m) in ds.masks.iter().enumerate() {
            if down & (1u128 << i) == 0 {
                self_avoiding &= quotient_mask & m == 0;
                quotient_mask |= m;
                quotient_len += i64::from(m.count_ones());
                quotient_omega += 1;
            }
        }
        if self_avoiding {
            let mu = if quotient_omega.is_multiple_of(2) {
                1
            } else {
                -1
            };
            acc += mu * (total - quotient_len);
        }
    }
    Ok(acc)
}

/// Λ(h) as the number of contiguous representations of `h`: arc orderings
/// that form a closed walk and are equivalent to `h` under swaps of adjacent
/// arcs with distinct tails.
///
/// Two arc words are equivalent exactly when, for every vertex, the arcs
/// leaving it appear in the same order. The search extends a walk one arc at
/// a time and abandons any prefix whose per-tail order already disagrees with
/// `h`.
pub fn mangoldt_by_contiguity(cat: &PrimeCatalog, h: &Hike) -> Result<u64> {
    mangoldt_by_contiguity_capped(cat, h, &Caps::default())
}

pub fn mangoldt_by_contiguity_capped(cat: &PrimeCatalog, h: &Hike, caps: &Caps) -> Result<u64> {
    if h.length() > caps.contiguity_len {
        return Err(HikeError::SizeLimit {
            what: "hike length for the contiguity oracle",
            actual: h.length(),
            limit: caps.contiguity_len,
        });
    }
    if h.is_one() {
        return Ok(0);
    }
    let word = h.arc_word(cat);
    let n = cat.vertex_count();
    let mut per_tail: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in &word {
        per_tail[a.tail].push(a.head);
    }
    // Remaining multiplicity of each distinct arc.
    let mut remaining: BTreeMap<Arc, usize> = BTreeMap::new();
    for a in &word {
        *remaining.entry(*a).or_default() += 1;
    }
    let arcs: Vec<Arc> = remaining.keys().copied().collect();
    let mut counts: Vec<usize> = remaining.values().copied().collect();
    let mut used = vec![0usize; n];
    let mut count = 0u64;
    for first in 0..arcs.len() {
        let start = arcs[first].tail;
        extend(
            &arcs,
            &mut counts,
            &per_tail,
            &mut used,
            first,
            start,
            word.len(),
            &mut count,
        );
    }
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    arcs: &[Arc],
    counts: &mut [usize],
    per_tail: &[Vec<usize>],
    used: &mut [usize],
    pick: usize,
    start: usize,
    left: usize,
    count: &mut u64,
) {
    let a = arcs[pick];
    if per_tail[a.tail].get(used[a.tail]) != Some(&a.head) {
        return;
    }
    counts[pick] -= 1;
    used[a.tail] += 1;
    if left == 1 {
        if a.head == start {
            *count += 1;
        }
    } else {
        for next in 0..arcs.len() {
            if counts[next] > 0 && arcs[next].tail == a.head {
                extend(arcs, counts, per_tail, used, next, start, left - 1, count);
            }
        }
    }
    used[a.tail] -= 1;
    counts[pick] += 1;
}

/// For totally additive `f`: `(f ∗ μ)(h) = f(c)` when `h` is a walk with last
/// prime `c`, and 0 otherwise. Checked on every hike up to `bound`.
pub fn check_additive_mobius(
    f: &dyn IncidenceFunction,
    cat: &PrimeCatalog,
    bound: usize,
) -> Result<CheckReport> {
    let mu = |_: &PrimeCatalog, x: &Hike| rat(mobius(x));
    let mut report = CheckReport::new("additive f * mu = f(last prime) on walks", bound);
    for h in enumerate_hikes(cat, bound)? {
        let lhs = convolve(f, &mu, cat, &h)?;
        let rhs = match h.walk_prime(cat) {
            Some(c) => f.eval(cat, &Hike::prime(cat, c)),
            None => BigRational::zero(),
        };
        report.record(lhs == rhs, || {
            format!("h = {h}: f*mu = {lhs}, expected {rhs}")
        });
    }
    Ok(report)
}

/// For totally multiplicative `f`: `(μf) ∗ f = δ`. Checked on every hike up
/// to `bound`.
pub fn multiplicative_inverse_check(
    f: &dyn IncidenceFunction,
    cat: &PrimeCatalog,
    bound: usize,
) -> Result<CheckReport> {
    let mu_f = |c: &PrimeCatalog, x: &Hike| rat(mobius(x)) * f.eval(c, x);
    let mut report = CheckReport::new("(mu f) * f = delta", bound);
    for h in enumerate_hikes(cat, bound)? {
        let lhs = convolve(&mu_f, f, cat, &h)?;
        let rhs = rat(h.is_one() as i64);
        report.record(lhs == rhs, || format!("h = {h}: (mu f)*f = {lhs}"));
    }
    Ok(report)
}

/// Which law a sampled function is asserted to obey.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homomorphism {
    /// f(xy) = f(x) + f(y).
    TotallyAdditive,
    /// f(xy) = f(x) f(y).
    TotallyMultiplicative,
}

/// Tests the additivity or multiplicativity precondition on `samples` random
/// pairs of hikes with combined length at most `bound`. This is evidence
/// rather than proof.
pub fn sample_homomorphism(
    f: &dyn IncidenceFunction,
    law: Homomorphism,
    cat: &PrimeCatalog,
    bound: usize,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    let hikes = enumerate_hikes(cat, bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new(format!("{law:?} on random pairs"), bound);
    for _ in 0..samples {
        let x = hikes
            .choose(&mut rng)
            .expect("the trivial hike is always present");
        let fitting: Vec<&Hike> = hikes
            .iter()
            .filter(|y| x.length() + y.length() <= bound)
            .collect();
        let y = fitting.choose(&mut rng).expect("the trivial hike fits");
        let xy = multiply_unchecked(cat, x, y);
        let (fx, fy, fxy) = (f.eval(cat, x), f.eval(cat, y), f.eval(cat, &xy));
        let ok = match law {
            Homomorphism::TotallyAdditive => fxy == &fx + &fy,
            Homomorphism::TotallyMultiplicative => fxy == &fx * &fy,
        };
        report.record(ok, || {
            format!("x = {x}, y = {y}: f(x) = {fx}, f(y) = {fy}, f(xy) = {fxy}")
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Digraph;
    use crate::hike::hike_from_primes;
    use crate::primes::enumerate_primes;

    fn lollipop() -> PrimeCatalog {
        enumerate_primes(&Digraph::new(4, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 1)]).unwrap())
            .unwrap()
    }

    #[test]
    fn worked_mangoldt_example() {
        let cat = lollipop();
        let p1 = cat.find_cycle(&[0, 1]).unwrap();
        let p2 = cat.find_cycle(&[1, 2, 3]).unwrap();
        let x = hike_from_primes(&cat, &[p1, p2]).unwrap();
        let y = hike_from_primes(&cat, &[p2, p1]).unwrap();
        assert_eq!(mangoldt_by_convolution(&cat, &x).unwrap(), 3);
        assert_eq!(mangoldt_by_convolution(&cat, &y).unwrap(), 2);
        assert_eq!(mangoldt_by_contiguity(&cat, &x).unwrap(), 3);
        assert_eq!(mangoldt_by_contiguity(&cat, &y).unwrap(), 2);
        assert_eq!(mangoldt_by_convolution(&cat, &Hike::one(&cat)).unwrap(), 0);
        for p in cat.ids() {
            let h = Hike::prime(&cat, p);
            assert_eq!(
                mangoldt_by_contiguity(&cat, &h).unwrap(),
                cat.length(p) as u64
            );
        }
    }

    #[test]
    fn mask_convolution_matches_generic_convolution() {
        let cat = enumerate_primes(
            &Digraph::new(4, [(0, 0), (0, 1), (1, 0), (1, 2), (2, 3), (3, 1), (2, 1)]).unwrap(),
        )
        .unwrap();
        let mu = |_: &PrimeCatalog, x: &Hike| rat(mobius(x));
        for h in enumerate_hikes(&cat, 8).unwrap() {
            let generic = convolve(&NamedFunction::Length, &mu, &cat, &h).unwrap();
            assert_eq!(
                rat(mangoldt_by_convolution(&cat, &h).unwrap()),
                generic,
                "{h}"
            );
        }
    }

    #[test]
    fn oracle_cap() {
        let cat = lollipop();
        let p2 = cat.find_cycle(&[1, 2, 3]).unwrap();
        let h = hike_from_primes(&cat, &[p2, p2, p2, p2]).unwrap();
        assert!(matches!(
            mangoldt_by_contiguity(&cat, &h),
            Err(HikeError::SizeLimit { .. })
        ));
    }

    #[test]
    fn mangoldt_two_ways_on_k3() {
        let cat =
            enumerate_primes(&Digraph::undirected(3, [(0, 1), (1, 2), (0, 2)]).unwrap()).unwrap();
        for h in enumerate_hikes(&cat, 7).unwrap() {
            let conv = mangoldt_by_convolution(&cat, &h).unwrap();
            let oracle = mangoldt_by_contiguity(&cat, &h).unwrap();
            assert_eq!(conv, oracle as i64, "{h}");
            assert_eq!(conv != 0, h.is_walk(&cat), "{h}");
        }
    }

    #[test]
    fn additive_and_multiplicative_checks() {
        let cat = lollipop();
        for f in [NamedFunction::Length, NamedFunction::BigOmega] {
            assert!(check_additive_mobius(&f, &cat, 9).unwrap().passed);
            assert!(
                sample_homomorphism(&f, Homomorphism::TotallyAdditive, &cat, 9, 200, 1)
                    .unwrap()
                    .passed
            );
        }
        for f in [
            NamedFunction::Liouville,
            NamedFunction::One,
            NamedFunction::Weight,
        ] {
            assert!(multiplicative_inverse_check(&f, &cat, 9).unwrap().passed);
            assert!(
                sample_homomorphism(&f, Homomorphism::TotallyMultiplicative, &cat, 9, 200, 2)
                    .unwrap()
                    .passed
            );
        }
        // τ is not additive, and the check notices.
        assert!(
            !check_additive_mobius(&NamedFunction::Tau, &cat, 9)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn liouville_values() {
        let cat = lollipop();
        assert_eq!(liouville(&Hike::one(&cat)), 1);
        let p = cat.ids().next().unwrap();
        assert_eq!(liouville(&Hike::prime(&cat, p)), -1);
    }

    #[test]
    fn names_round_trip() {
        for f in NamedFunction::ALL {
            assert_eq!(f.name().parse::<NamedFunction>().unwrap(), f);
        }
        assert!("nope".parse::<NamedFunction>().is_err());
    }
}
