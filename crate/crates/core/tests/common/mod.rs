//! Seed-driven law checks shared by the property tests and the acceptance
//! run. Each law draws a small random instance from its seed and returns a
//! description of the first violation.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hike_forge::arithmetic::{liouville, weight, NamedFunction};
use hike_forge::corpus::random_connected_digraph;
use hike_forge::cospectral::{
    expand_pathsum, hike_structure_equal, same_nonzero_spectrum, SpectralFingerprint,
};
use hike_forge::graph::{char_poly, Digraph};
use hike_forge::hike::{hike_from_primes, left_divide, left_divisors, multiply, Hike};
use hike_forge::incidence::{convolve, mobius, mobius_fn, one, rat, IncidenceFunction};
use hike_forge::iso::digraphs_isomorphic;
use hike_forge::primes::{enumerate_primes, Prime, PrimeCatalog, PrimeId};

pub type Law = fn(u64) -> Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// A small random digraph with at least one prime, and its catalog.
pub fn random_catalog(rng: &mut ChaCha8Rng) -> (Digraph, PrimeCatalog) {
    loop {
        let n = rng.gen_range(2..=5);
        let g = random_connected_digraph(rng, n, 0.4, 0.2);
        let cat = enumerate_primes(&g).expect("small graph");
        if !cat.is_empty() {
            return (g, cat);
        }
    }
}

pub fn random_word(rng: &mut ChaCha8Rng, cat: &PrimeCatalog, max: usize) -> Vec<PrimeId> {
    let ids: Vec<PrimeId> = cat.ids().collect();
    let len = rng.gen_range(0..=max);
    (0..len)
        .map(|_| *ids.choose(rng).expect("non-empty catalog"))
        .collect()
}

pub fn random_hike(rng: &mut ChaCha8Rng, cat: &PrimeCatalog, max: usize) -> Hike {
    hike_from_primes(cat, &random_word(rng, cat, max)).unwrap()
}

/// Every word in the commutation class of `word`, by swapping adjacent
/// letters on disjoint vertex sets.
pub fn commutation_class(cat: &PrimeCatalog, word: &[PrimeId]) -> BTreeSet<Vec<PrimeId>> {
    let mut seen = BTreeSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 1..w.len() {
            if w[i - 1] != w[i] && !cat.dependent(w[i - 1], w[i]) {
                let mut next = w.clone();
                next.swap(i - 1, i);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// Quotient `h/d` by searching the commutation class of `h` for a word that
/// starts with a word of `d`.
pub fn divide_by_words(cat: &PrimeCatalog, h: &Hike, d: &Hike) -> Option<Hike> {
    let k = d.omega();
    commutation_class(cat, &h.word())
        .into_iter()
        .find(|w| k <= w.len() && hike_from_primes(cat, &w[..k]).unwrap() == *d)
        .map(|w| hike_from_primes(cat, &w[k..]).unwrap())
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn associativity(seed: u64) -> Result<(), String> {
    let mut rng = rng_for(seed);
    let (_, cat) = random_catalog(&mut rng);
    let x = random_hike(&mut rng, &cat, 4);
    let y = random_hike(&mut rng, &cat, 4);
    let z = random_hike(&mut rng, &cat, 4);
    let left = multiply(&cat, &multiply(&cat, &x, &y).unwrap(), &z).unwrap();
    let right = multiply(&cat, &x, &multiply(&cat, &y, &z).unwrap()).unwrap();
    ensure!(
        left == right,
        "({x}·{y})·{z} = {left} but {x}·({y}·{z}) = {right}"
    );
    ensure!(
        multiply(&cat, &x, &Hike::one(&cat)).unwrap() == x,
        "{x}·1 != {x}"
    );
    ensure!(
        left.length() == x.length() + y.length() + z.length(),
        "length not additive"
    );
    Ok(())
}

/// Swapping two adjacent letters changes the hike exactly when they are
/// distinct and dependent; normal-form layers are self-avoiding and stacked.
pub fn unique_factorization(seed: u64) -> Result<(), String> {
    let mut rng = rng_for(seed);
    let (_, cat) = random_catalog(&mut rng);
    let word = random_word(&mut rng, &cat, 6);
    let h = hike_from_primes(&cat, &word).unwrap();
    for i in 1..word.len() {
        let mut swapped = word.clone();
        swapped.swap(i - 1, i);
        let other = hike_from_primes(&cat, &swapped).unwrap();
        let commute = word[i - 1] == word[i] || !cat.dependent(word[i - 1], word[i]);
        ensure!((other == h) == commute, "swap at {i} in {word:?}");
    }
    for (k, layer) in h.layers().iter().enumerate() {
        for (i, &p) in layer.iter().enumerate() {
            ensure!(
                layer[i + 1..].iter().all(|&q| !cat.dependent(p, q)),
                "layer {k} of {h} meets itself"
            );
            ensure!(
                k == 0 || h.layers()[k - 1].iter().any(|&q| cat.dependent(p, q)),
                "{p} in layer {k} of {h} rests on nothing"
            );
        }
    }
    Ok(())
}

pub fn mobius_inverts_zeta(seed: u64) -> Result<(), String> {
    let mut rng = rng_for(seed);
    let (_, cat) = random_catalog(&mut rng);
    let h = random_hike(&mut rng, &cat, 6);
    let want = rat(h.is_one() as i64);
    let (a, b) = (
        convolve(&mobius_fn, &one, &cat, &h).unwrap(),
        convolve(&one, &mobius_fn, &cat, &h).unwrap(),
    );
    ensure!(a == want && b == want, "{h}: mu*1 = {a}, 1*mu = {b}");
    Ok(())
}

pub fn mangoldt_sums_to_length(seed: u64) -> Result<(), String> {
    let mut rng = rng_for(seed);
    let (_, cat) = random_catalog(&mut rng);
    let h = random_hike(&mut rng, &cat, 6);
    let got = convolve(&NamedFunction::Mangoldt, &one, &cat, &h).unwrap();
    ensure!(
        got == rat(h.length() as i64),
        "{h}: Lambda*1 = {got}, length {}",
        h.length()
    );
    Ok(())
}

pub fn big_omega_mobius_is_walk_indicator(seed: u64) -> Result<(), String> {
    let mut rng = rng_for(seed);
    let (_, cat) = random_catalog(&mut rng);
    let h = random_hike(&mut rng, &cat, 6);
    let got = convolve(&NamedFunction::BigOmega, &mobius_fn, &cat, &h).unwrap();
    ensure!(got == rat(h.is_walk(&cat) as i64), "{h}: Omega*mu = {got}");
    Ok(())
}

/// `(μf) ∗ f = δ` for Liouville, the constant 1, and the vertex weight.
pub fn mobius_twist_inverts(seed: u64) -> Result<(), String> {
    let mut rng = rng_for(seed);
    let (_, cat) = random_catalog(&mut rng);
    let h = random_hike(&mut rng, &cat, 6);
    let want = rat(h.is_one() as i64);
    let lambda = |_: &PrimeCatalog, x: &Hike| rat(liouville(x));
    let w = |c: &PrimeCatalog, x: &Hike| BigRational::from_integer(weight(c, x));
    let fs: [(&str, &dyn IncidenceFunction); 3] =
        [("lambda", &lambda), ("one", &one), ("weight", &w)];
    for (name, f) in fs {
        let twisted = |c: &PrimeCatalog, x: &Hike| rat(mobius(x)) * f.eval(c, x);
        let got = convolve(&twisted, f, &cat, &h).unwrap();
        ensure!(got == want, "{h}: (mu {name})*{name} = {got}");
    }
    Ok(())
}

/// `left_divide` agrees with a search over commuted words (Ω(h) ≤ 5), its
/// quotients multiply back, and the divisor list agrees with both.
pub fn left_division(seed: u64) -> Result<(), String> {
    let mut rng = rng_for(seed);
    let (_, cat) = random_catalog(&mut rng);
    let word = random_word(&mut rng, &cat, 5);
    let h = hike_from_primes(&cat, &word).unwrap();
    // half the time a prefix of a commuted word, so divisors are common
    let d = if rng.gen_bool(0.5) {
        let class: Vec<_> = commutation_class(&cat, &word).into_iter().collect();
        let w = class.choose(&mut rng).unwrap();
        hike_from_primes(&cat, &w[..rng.gen_range(0..=w.len())]).unwrap()
    } else {
        random_hike(&mut rng, &cat, 3)
    };
    let got = left_divide(&cat, &h, &d).unwrap();
    if let Some(q) = &got {
        ensure!(multiply(&cat, &d, q).unwrap() == h, "{d}·{q} != {h}");
    }
    let oracle = divide_by_words(&cat, &h, &d);
    ensure!(got == oracle, "{h}/{d}: got {got:?}, words give {oracle:?}");
    let listed = left_divisors(&cat, &h)
        .unwrap()
        .into_iter()
        .any(|(x, _)| x == d);
    ensure!(
        listed == got.is_some(),
        "{d} listed as divisor of {h}: {listed}"
    );
    Ok(())
}

pub fn fingerprint_relabelling(seed: u64) -> Result<(), String> {
    let mut rng = rng_for(seed);
    let (g, _) = random_catalog(&mut rng);
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    perm.shuffle(&mut rng);
    let h = g.relabeled(&perm);
    let (fg, fh) = (
        SpectralFingerprint::of(&g).unwrap(),
        SpectralFingerprint::of(&h).unwrap(),
    );
    ensure!(
        fg.newton_consistent(),
        "Newton identities fail on {}",
        g.to_json()
    );
    ensure!(
        fg == fh,
        "relabelling changed the fingerprint of {}",
        g.to_json()
    );
    ensure!(
        digraphs_isomorphic(&g, &h),
        "relabelling of {} not recognised",
        g.to_json()
    );
    ensure!(
        hike_structure_equal(&g, &h).unwrap(),
        "hike structure of {} not recognised",
        g.to_json()
    );
    Ok(())
}

/// A random graph with a cycle `c1` through vertex 0 and a cycle `c2`
/// hanging off it at 0, plus unrelated structure reached by a one-way arc.
pub fn pathsum_instance(rng: &mut ChaCha8Rng) -> (Digraph, Vec<usize>, Vec<usize>) {
    let l1 = rng.gen_range(1..=3);
    // two loops at the same vertex would be the same arc
    let l2 = rng.gen_range(if l1 == 1 { 2 } else { 1 }..=3);
    let mut arcs = Vec::new();
    let c1: Vec<usize> = std::iter::once(0).chain(1..l1).collect();
    let c2: Vec<usize> = std::iter::once(0).chain(l1..l1 + l2 - 1).collect();
    for c in [&c1, &c2] {
        for i in 0..c.len() {
            arcs.push((c[i], c[(i + 1) % c.len()]));
        }
    }
    let base = l1 + l2 - 1;
    let extra = rng.gen_range(0..=3);
    if extra > 0 {
        let deco = random_connected_digraph(rng, extra, 0.5, 0.3);
        arcs.extend(deco.arcs().map(|a| (a.tail + base, a.head + base)));
        let from = *c1.choose(rng).unwrap();
        arcs.push((from, base));
    }
    (Digraph::new(base + extra, arcs).unwrap(), c1, c2)
}

pub fn pathsum_keeps_spectrum(seed: u64) -> Result<(), String> {
    let mut rng = rng_for(seed);
    let (g, c1, c2) = pathsum_instance(&mut rng);
    let (p1, p2) = (
        Prime::from_cycle(&g, &c1).unwrap(),
        Prime::from_cycle(&g, &c2).unwrap(),
    );
    let h = expand_pathsum(&g, &p1, &p2, 0).map_err(|e| e.to_string())?;
    ensure!(
        h.vertex_count() == g.vertex_count() + c1.len() + c2.len() - 1,
        "unexpected vertex count {}",
        h.vertex_count()
    );
    ensure!(
        same_nonzero_spectrum(&g, &h),
        "spectrum changed: {} -> {}",
        g.to_json(),
        h.to_json()
    );
    ensure!(
        char_poly(&g) == char_poly(&h),
        "det(I - zA) changed on {}",
        g.to_json()
    );
    Ok(())
}

/// The laws named by the acceptance criteria, in report order.
pub const ACCEPTANCE_LAWS: [(&str, Law); 6] = [
    ("monoid associativity", associativity),
    ("mu * 1 = delta", mobius_inverts_zeta),
    ("Lambda * 1 = length", mangoldt_sums_to_length),
    (
        "Omega * mu = walk indicator",
        big_omega_mobius_is_walk_indicator,
    ),
    (
        "(mu f) * f = delta for lambda, 1, weight",
        mobius_twist_inverts,
    ),
    ("left_divide vs word search", left_division),
];
