//! Hikes: elements of the trace monoid over the prime alphabet, stored as
//! heaps in Cartier–Foata normal form.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{HikeError, Result};
use crate::graph::Arc;
use crate::primes::{PrimeCatalog, PrimeId};

/// Largest prime-occurrence count supported by divisor enumeration.
pub const MAX_DIVISOR_OMEGA: usize = 128;

/// A hike in Foata normal form. Layer `k + 1` only holds primes that meet
/// some prime of layer `k`; each layer is sorted by prime index.
///
/// The derived order compares length, then occurrence count, then layers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hike {
    length: usize,
    omega: usize,
    layers: Vec<Vec<PrimeId>>,
    catalog: u64,
}

/// Canonical textual form of a hike, e.g. `[p0 p2][p1]`, or `1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HikeId(pub String);

impl fmt::Display for HikeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Hike {
    /// The trivial hike.
    pub fn one(cat: &PrimeCatalog) -> Hike {
        Hike {
            length: 0,
            omega: 0,
            layers: Vec::new(),
            catalog: cat.id(),
        }
    }

    /// The hike consisting of one prime.
    pub fn prime(cat: &PrimeCatalog, p: PrimeId) -> Hike {
        Hike {
            length: cat.length(p),
            omega: 1,
            layers: vec![vec![p]],
            catalog: cat.id(),
        }
    }

    pub fn layers(&self) -> &[Vec<PrimeId>] {
        &self.layers
    }

    /// ℓ(h): total arc count.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Ω(h): number of prime occurrences.
    pub fn omega(&self) -> usize {
        self.omega
    }

    /// ω(h): number of distinct prime (left) divisors, i.e. the size of the
    /// first layer.
    pub fn small_omega(&self) -> usize {
        self.layers.first().map_or(0, Vec::len)
    }

    pub fn is_one(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn catalog_id(&self) -> u64 {
        self.catalog
    }

    /// At most one layer: all occurrences pairwise vertex-disjoint.
    pub fn is_self_avoiding(&self) -> bool {
        self.layers.len() <= 1
    }

    /// Occurrences in normal-form order (layer by layer).
    pub fn word(&self) -> Vec<PrimeId> {
        self.layers.iter().flatten().copied().collect()
    }

    pub fn id(&self) -> HikeId {
        HikeId(self.to_string())
    }

    /// Indices into [`Hike::word`] of the maximal occurrences: those that no
    /// later occurrence meets. These are the prime right divisors.
    pub fn maximal_occurrences(&self, cat: &PrimeCatalog) -> Vec<usize> {
        let masks: Vec<u64> = self.word().iter().map(|&p| cat.mask(p)).collect();
        (0..masks.len())
            .filter(|&i| masks[i + 1..].iter().all(|&m| m & masks[i] == 0))
            .collect()
    }

    /// Primes `q` with `h = h'·q`, in increasing index order.
    pub fn maximal_primes(&self, cat: &PrimeCatalog) -> Vec<PrimeId> {
        let word = self.word();
        let mut out: Vec<PrimeId> = self
            .maximal_occurrences(cat)
            .into_iter()
            .map(|i| word[i])
            .collect();
        out.sort();
        out
    }

    /// A non-trivial hike with a unique prime right divisor (a closed walk).
    pub fn is_walk(&self, cat: &PrimeCatalog) -> bool {
        !self.is_one() && self.maximal_occurrences(cat).len() == 1
    }

    /// The unique prime right divisor of a walk.
    pub fn walk_prime(&self, cat: &PrimeCatalog) -> Option<PrimeId> {
        let max = self.maximal_occurrences(cat);
        match max.as_slice() {
            [i] => Some(self.word()[*i]),
            _ => None,
        }
    }

    /// A representative arc word: the primes of the normal form, each
    /// written as its arc cycle from the smallest vertex.
    pub fn arc_word(&self, cat: &PrimeCatalog) -> Vec<Arc> {
        self.word()
            .iter()
            .flat_map(|&p| cat.prime(p).arcs())
            .collect()
    }

    /// Number of times each vertex is visited.
    pub fn visit_counts(&self, cat: &PrimeCatalog) -> Vec<u32> {
        let mut counts = vec![0u32; cat.vertex_count()];
        for p in self.word() {
            for &v in cat.prime(p).vertices() {
                counts[v] += 1;
            }
        }
        counts
    }

    fn check(&self, cat: &PrimeCatalog) -> Result<()> {
        if self.catalog == cat.id() {
            Ok(())
        } else {
            Err(HikeError::CatalogMismatch)
        }
    }
}

impl fmt::Display for Hike {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.layers.is_empty() {
            return f.write_str("1");
        }
        for layer in &self.layers {
            let names: Vec<String> = layer.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", names.join(" "))?;
        }
        Ok(())
    }
}

/// Heap stacking: each prime lands one layer above the highest occupied
/// layer among its vertices.
struct Stacker<'a> {
    cat: &'a PrimeCatalog,
    height: [usize; 64],
    layers: Vec<Vec<PrimeId>>,
    length: usize,
    omega: usize,
}

impl<'a> Stacker<'a> {
    fn new(cat: &'a PrimeCatalog) -> Self {
        Stacker {
            cat,
            height: [0; 64],
            layers: Vec::new(),
            length: 0,
            omega: 0,
        }
    }

    fn push(&mut self, p: PrimeId) {
        let vertices = self.cat.prime(p).vertices();
        let level = vertices.iter().map(|&v| self.height[v]).max().unwrap_or(0);
        for &v in vertices {
            self.height[v] = level + 1;
        }
        if self.layers.len() == level {
            self.layers.push(Vec::new());
        }
        self.layers[level].push(p);
        self.length += vertices.len();
        self.omega += 1;
    }

    fn finish(mut self) -> Hike {
        for layer in &mut self.layers {
            layer.sort();
        }
        Hike {
            length: self.length,
            omega: self.omega,
            layers: self.layers,
            catalog: self.cat.id(),
        }
    }
}

/// Normal form of the product of a word of primes.
pub fn hike_from_primes(cat: &PrimeCatalog, word: &[PrimeId]) -> Result<Hike> {
    if let Some(bad) = word.iter().find(|p| !cat.contains_id(**p)) {
        return Err(HikeError::Precondition(format!(
            "prime index {} not in catalog of {} primes",
            bad.0,
            cat.len()
        )));
    }
    let mut s = Stacker::new(cat);
    for &p in word {
        s.push(p);
    }
    Ok(s.finish())
}

/// Normal form of `x·y`.
pub fn multiply(cat: &PrimeCatalog, x: &Hike, y: &Hike) -> Result<Hike> {
    x.check(cat)?;
    y.check(cat)?;
    Ok(multiply_unchecked(cat, x, y))
}

pub(crate) fn multiply_unchecked(cat: &PrimeCatalog, x: &Hike, y: &Hike) -> Hike {
    let mut s = Stacker::new(cat);
    for &p in x.layers.iter().flatten().chain(y.layers.iter().flatten()) {
        s.push(p);
    }
    s.finish()
}

/// `h·p` for a single prime.
pub fn multiply_prime(cat: &PrimeCatalog, h: &Hike, p: PrimeId) -> Hike {
    let mut s = Stacker::new(cat);
    for &q in h.layers.iter().flatten() {
        s.push(q);
    }
    s.push(p);
    s.finish()
}

/// Returns `h'` with `d·h' = h`, or `None` when `d` does not left-divide `h`.
///
/// Peels the letters of `d` (in normal-form order) off the front of `h`: a
/// letter can be removed iff its first occurrence in `h` is preceded by no
/// occurrence that meets it.
pub fn left_divide(cat: &PrimeCatalog, h: &Hike, d: &Hike) -> Result<Option<Hike>> {
    h.check(cat)?;
    d.check(cat)?;
    if d.length > h.length || d.omega > h.omega {
        return Ok(None);
    }
    let mut rest = h.word();
    for p in d.word() {
        let mask = cat.mask(p);
        let Some(pos) = rest.iter().position(|&q| q == p) else {
            return Ok(None);
        };
        if rest[..pos].iter().any(|&q| cat.mask(q) & mask != 0) {
            return Ok(None);
        }
        rest.remove(pos);
    }
    hike_from_primes(cat, &rest).map(Some)
}

/// The heap of `h` as occurrence data: for each occurrence in normal-form
/// order its prime, vertex mask and predecessor set, plus every downset of the
/// occurrence order as a bitmask. Downsets correspond one-to-one with left
/// divisors, because occurrences of the same prime are always comparable.
pub(crate) struct Downsets {
    pub word: Vec<PrimeId>,
    pub masks: Vec<u64>,
    pub sets: Vec<u128>,
}

pub(crate) fn downsets(cat: &PrimeCatalog, h: &Hike) -> Result<Downsets> {
    h.check(cat)?;
    let word = h.word();
    let k = word.len();
    if k > MAX_DIVISOR_OMEGA {
        return Err(HikeError::SizeLimit {
            what: "prime occurrences for divisor enumeration",
            actual: k,
            limit: MAX_DIVISOR_OMEGA,
        });
    }
    let masks: Vec<u64> = word.iter().map(|&p| cat.mask(p)).collect();
    let preds: Vec<u128> = (0..k)
        .map(|j| {
            (0..j)
                .filter(|&i| masks[i] & masks[j] != 0)
                .fold(0u128, |acc, i| acc | (1u128 << i))
        })
        .collect();
    let mut seen: HashSet<u128> = HashSet::new();
    let mut stack = vec![0u128];
    seen.insert(0);
    while let Some(down) = stack.pop() {
        for (j, &pred) in preds.iter().enumerate() {
            let bit = 1u128 << j;
            if down & bit == 0 && pred & !down == 0 {
                let next = down | bit;
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
    }
    Ok(Downsets {
        word,
        masks,
        sets: seen.into_iter().collect(),
    })
}

/// Every left divisor `d` of `h` together with its quotient `h/d`, sorted
/// by divisor.
///
/// Found by DFS over removals of minimal occurrences, with a visited set of
/// occurrence bitmasks.
pub fn left_divisors(cat: &PrimeCatalog, h: &Hike) -> Result<Vec<(Hike, Hike)>> {
    let ds = downsets(cat, h)?;
    let mut out: Vec<(Hike, Hike)> = ds
        .sets
        .iter()
        .map(|&down| {
            let (mut dw, mut qw) = (Vec::new(), Vec::new());
            for (i, &p) in ds.word.iter().enumerate() {
                if down & (1u128 << i) != 0 {
                    dw.push(p);
                } else {
                    qw.push(p);
                }
            }
            let d = hike_from_primes(cat, &dw).expect("catalog primes");
            let q = hike_from_primes(cat, &qw).expect("catalog primes");
            (d, q)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// All hikes of length at most `max_length`, in increasing [`Hike`] order
/// (so non-decreasing length), with the default cap.
pub fn enumerate_hikes(cat: &PrimeCatalog, max_length: usize) -> Result<Vec<Hike>> {
    enumerate_hikes_capped(cat, max_length, &Caps::default())
}

/// Canonical generation: a hike is produced only from the parent obtained by
/// removing its highest-index prime right divisor, so no deduplication table
/// is needed. Output is sorted within each length.
pub fn enumerate_hikes_capped(
    cat: &PrimeCatalog,
    max_length: usize,
    caps: &Caps,
) -> Result<Vec<Hike>> {
    let mut buckets: Vec<Vec<Hike>> = vec![Vec::new(); max_length + 1];
    buckets[0].push(Hike::one(cat));
    let mut total = 1usize;
    for len in 0..=max_length {
        let mut current = std::mem::take(&mut buckets[len]);
        current.sort();
        for h in &current {
            let word = h.word();
            let max_occ = h.maximal_occurrences(cat);
            for p in cat.ids() {
                let new_len = len + cat.length(p);
                if new_len > max_length {
                    continue;
                }
                let mask = cat.mask(p);
                let canonical = max_occ
                    .iter()
                    .map(|&i| word[i])
                    .all(|q| cat.mask(q) & mask != 0 || q < p);
                if !canonical {
                    continue;
                }
                total += 1;
                if total > caps.max_hikes {
                    return Err(HikeError::SizeLimit {
                        what: "hike count",
                        actual: total,
                        limit: caps.max_hikes,
                    });
                }
                buckets[new_len].push(multiply_prime(cat, h, p));
            }
        }
        buckets[len] = current;
    }
    Ok(buckets.into_iter().flatten().collect())
}
