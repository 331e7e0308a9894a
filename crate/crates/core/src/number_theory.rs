//! Disjoint unions of directed cycles, where hikes behave like positive
//! integers, and the integer-side arithmetic used to compare them.

use crate::arithmetic::mangoldt_by_convolution;
use crate::error::{HikeError, Result};
use crate::graph::Digraph;
use crate::hike::{enumerate_hikes, left_divide, left_divisors, multiply_unchecked, Hike};
use crate::incidence::{convolve, mobius, one, rat};
use crate::primes::{enumerate_primes, PrimeCatalog, PrimeId};
use crate::report::CheckReport;

/// The `i`-th prime, counting from `nth_prime(0) = 2`.
pub fn nth_prime(i: usize) -> u64 {
    let mut found = 0;
    let mut candidate = 1u64;
    loop {
        candidate += 1;
        if is_prime(candidate) {
            if found == i {
                return candidate;
            }
            found += 1;
        }
    }
}

pub fn is_prime(m: u64) -> bool {
    m >= 2
        && (2..)
            .take_while(|d| d * d <= m)
            .all(|d| !m.is_multiple_of(d))
}

/// Prime factorization by trial division, as `(p, exponent)` pairs.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            let mut e = 0;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Number-theoretic Möbius function.
pub fn mobius_n(m: u64) -> i64 {
    assert!(m >= 1, "mobius_n is defined on positive integers");
    let f = factorize(m);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// d(m): number of positive divisors.
pub fn divisor_count(m: u64) -> u64 {
    factorize(m)
        .iter()
        .map(|&(_, e)| u64::from(e) + 1)
        .product()
}

/// Ω(m): prime factors counted with multiplicity.
pub fn big_omega_n(m: u64) -> u64 {
    factorize(m).iter().map(|&(_, e)| u64::from(e)).sum()
}

/// `Some((p, r))` when `m = p^r` with `r ≥ 1`.
pub fn prime_power(m: u64) -> Option<(u64, u32)> {
    match factorize(m).as_slice() {
        [(p, r)] => Some((*p, *r)),
        _ => None,
    }
}

/// One directed cycle per entry of `lengths`, on consecutive vertex blocks.
/// A length of 1 is a self-loop.
pub fn disjoint_cycles_graph(lengths: &[usize]) -> Result<Digraph> {
    if lengths.contains(&0) {
        return Err(HikeError::Precondition(
            "cycle lengths must be positive".into(),
        ));
    }
    let n: usize = lengths.iter().sum();
    let mut arcs = Vec::with_capacity(n);
    let mut base = 0;
    for &len in lengths {
        for i in 0..len {
            arcs.push((base + i, base + (i + 1) % len));
        }
        base += len;
    }
    Digraph::new(n, arcs)
}

/// The map sending the `j`-th catalog prime to the `j`-th integer prime and
/// extending multiplicatively.
#[derive(Debug, Clone)]
pub struct NtCorrespondence {
    prime_map: Vec<(PrimeId, u64)>,
}

impl NtCorrespondence {
    pub fn new(cat: &PrimeCatalog) -> Self {
        NtCorrespondence {
            prime_map: cat.ids().map(|p| (p, nth_prime(p.index()))).collect(),
        }
    }

    pub fn prime_map(&self) -> &[(PrimeId, u64)] {
        &self.prime_map
    }

    /// Image of `h`, failing on `u64` overflow.
    pub fn value(&self, h: &Hike) -> Result<u64> {
        h.word().iter().try_fold(1u64, |acc, p| {
            acc.checked_mul(self.prime_map[p.index()].1)
                .ok_or_else(|| HikeError::Internal(format!("image of {h} overflows u64")))
        })
    }
}

/// Compares μ, τ, Ω and the support of Λ with their integer counterparts on
/// every hike of length at most `bound` over `k` disjoint cycles of lengths
/// `1..=k`, and checks that the correspondence is an injective homomorphism
/// preserving divisibility.
pub fn check_nt_isomorphism(k: usize, bound: usize) -> Result<CheckReport> {
    let lengths: Vec<usize> = (1..=k).collect();
    let g = disjoint_cycles_graph(&lengths)?;
    let cat = enumerate_primes(&g)?;
    let map = NtCorrespondence::new(&cat);
    let hikes = enumerate_hikes(&cat, bound)?;
    let values: Vec<u64> = hikes.iter().map(|h| map.value(h)).collect::<Result<_>>()?;
    let mut report = CheckReport::new(format!("hikes on {k} disjoint cycles vs integers"), bound);
    report.note(format!("{} hikes", hikes.len()));

    for (h, &m) in hikes.iter().zip(&values) {
        report.record(mobius(h) == mobius_n(m), || {
            format!("{h} -> {m}: mu = {}, mu_N = {}", mobius(h), mobius_n(m))
        });
        let tau = convolve(&one, &one, &cat, h)?;
        report.record(tau == rat(divisor_count(m) as i64), || {
            format!("{h} -> {m}: tau = {tau}, d(m) = {}", divisor_count(m))
        });
        report.record(h.omega() as u64 == big_omega_n(m), || {
            format!(
                "{h} -> {m}: Omega = {}, Omega_N = {}",
                h.omega(),
                big_omega_n(m)
            )
        });
        let lambda = mangoldt_by_convolution(&cat, h)?;
        let expected = match prime_power(m) {
            Some((p, _)) => {
                let j = map
                    .prime_map
                    .iter()
                    .find(|e| e.1 == p)
                    .expect("image prime")
                    .0;
                cat.length(j) as i64
            }
            None => 0,
        };
        report.record(lambda == expected, || {
            format!("{h} -> {m}: Lambda = {lambda}, expected {expected}")
        });
    }

    let mut sorted = values.clone();
    sorted.sort_unstable();
    sorted.dedup();
    report.record(sorted.len() == values.len(), || {
        "value map is not injective".into()
    });

    for (x, &mx) in hikes.iter().zip(&values) {
        for (y, &my) in hikes.iter().zip(&values) {
            if x.length() + y.length() <= bound {
                let xy = multiply_unchecked(&cat, x, y);
                let mxy = map.value(&xy)?;
                report.record(mxy == mx * my, || {
                    format!("value({x}·{y}) = {mxy} != {mx}·{my}")
                });
            }
            let divides = left_divide(&cat, y, x)?.is_some();
            report.record(divides == (my % mx == 0), || {
                format!("{x} | {y} is {divides} but {mx} | {my} is {}", my % mx == 0)
            });
        }
    }
    for (h, &m) in hikes.iter().zip(&values) {
        let count = left_divisors(&cat, h)?.len() as u64;
        report.record(count == divisor_count(m), || {
            format!("{h}: {count} divisors")
        });
    }
    Ok(report)
}

/// Smallest length bound giving at least `min_hikes` hikes on the `k`-cycle
/// graph.
pub fn nt_bound_for(k: usize, min_hikes: usize) -> Result<usize> {
    let lengths: Vec<usize> = (1..=k).collect();
    let cat = enumerate_primes(&disjoint_cycles_graph(&lengths)?)?;
    let mut bound = 0;
    loop {
        if enumerate_hikes(&cat, bound)?.len() >= min_hikes {
            return Ok(bound);
        }
        bound += 1;
        if bound > 256 {
            return Err(HikeError::Precondition(format!(
                "fewer than {min_hikes} hikes up to length 256"
            )));
        }
    }
}
