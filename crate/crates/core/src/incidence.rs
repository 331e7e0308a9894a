//! The incidence algebra of the hike poset: functions on hikes, Dirichlet
//! convolution over left divisors, and length-truncated hike series.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{HikeError, Result};
use crate::hike::{enumerate_hikes, left_divisors, multiply_unchecked, Hike};
use crate::primes::PrimeCatalog;

/// An exact rational-valued function on hikes.
pub trait IncidenceFunction {
    fn eval(&self, cat: &PrimeCatalog, h: &Hike) -> BigRational;
}

impl<F> IncidenceFunction for F
where
    F: Fn(&PrimeCatalog, &Hike) -> BigRational,
{
    fn eval(&self, cat: &PrimeCatalog, h: &Hike) -> BigRational {
        self(cat, h)
    }
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Möbius function: 1 at the trivial hike, (−1)^Ω on self-avoiding hikes,
/// 0 elsewhere.
pub fn mobius(h: &Hike) -> i64 {
    if !h.is_self_avoiding() {
        0
    } else if h.omega().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(f ∗ g)(h) = Σ_{d | h} f(d) g(h/d)`.
pub fn convolve(
    f: &dyn IncidenceFunction,
    g: &dyn IncidenceFunction,
    cat: &PrimeCatalog,
    h: &Hike,
) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for (d, q) in left_divisors(cat, h)? {
        let fd = f.eval(cat, &d);
        if !fd.is_zero() {
            acc += fd * g.eval(cat, &q);
        }
    }
    Ok(acc)
}

/// `Σ_h f(h) h` over every hike of length at most `bound`, zeros included.
#[derive(Debug, Clone, PartialEq)]
pub struct HikeSeries {
    catalog: u64,
    bound: usize,
    coeffs: BTreeMap<Hike, BigRational>,
}

impl HikeSeries {
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn catalog_id(&self) -> u64 {
        self.catalog
    }

    /// Coefficient of `h`, or `None` when `h` is longer than the bound.
    pub fn get(&self, h: &Hike) -> Option<&BigRational> {
        self.coeffs.get(h)
    }

    /// All coefficients in hike order.
    pub fn iter(&self) -> impl Iterator<Item = (&Hike, &BigRational)> {
        self.coeffs.iter()
    }

    /// Non-zero coefficients only.
    pub fn support(&self) -> impl Iterator<Item = (&Hike, &BigRational)> {
        self.coeffs.iter().filter(|(_, c)| !c.is_zero())
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients summed by hike length: the image under `arc ↦ u`.
    pub fn by_length(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.bound + 1];
        for (h, c) in &self.coeffs {
            out[h.length()] += c;
        }
        out
    }

    /// `{"bound":L,"coefficients":[{"hike":"[p0][p1]","value":"3"},..]}`
    /// listing non-zero coefficients in hike order.
    pub fn to_json_value(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .support()
            .map(|(h, c)| serde_json::json!({ "hike": h.to_string(), "value": c.to_string() }))
            .collect();
        serde_json::json!({ "bound": self.bound, "coefficients": terms })
    }

    fn zero_like(cat: &PrimeCatalog, hikes: impl Iterator<Item = Hike>, bound: usize) -> Self {
        HikeSeries {
            catalog: cat.id(),
            bound,
            coeffs: hikes.map(|h| (h, BigRational::zero())).collect(),
        }
    }
}

impl IncidenceFunction for HikeSeries {
    /// # Panics
    /// When `h` is longer than the series bound.
    fn eval(&self, _cat: &PrimeCatalog, h: &Hike) -> BigRational {
        match self.coeffs.get(h) {
            Some(c) => c.clone(),
            None => panic!("hike {h} lies beyond the series bound {}", self.bound),
        }
    }
}

/// Tabulates `f` on all hikes of length at most `bound`.
pub fn series_of(
    f: &dyn IncidenceFunction,
    cat: &PrimeCatalog,
    bound: usize,
) -> Result<HikeSeries> {
    let hikes = enumerate_hikes(cat, bound)?;
    Ok(series_over(f, cat, hikes, bound))
}

/// Tabulates `f` over an already enumerated hike list (which must be the
/// complete list up to `bound`).
pub fn series_over(
    f: &dyn IncidenceFunction,
    cat: &PrimeCatalog,
    hikes: Vec<Hike>,
    bound: usize,
) -> HikeSeries {
    let coeffs = hikes
        .into_iter()
        .map(|h| {
            let v = f.eval(cat, &h);
            (h, v)
        })
        .collect();
    HikeSeries {
        catalog: cat.id(),
        bound,
        coeffs,
    }
}

/// Product of series: the coefficient of `h` is `Σ_{ab = h} x(a) y(b)`.
pub fn series_multiply(cat: &PrimeCatalog, x: &HikeSeries, y: &HikeSeries) -> Result<HikeSeries> {
    if x.catalog != cat.id() || y.catalog != cat.id() {
        return Err(HikeError::CatalogMismatch);
    }
    let bound = x.bound.min(y.bound);
    let small = if x.bound <= y.bound { x } else { y };
    let mut out = HikeSeries::zero_like(cat, small.coeffs.keys().cloned(), bound);
    let ys: Vec<(&Hike, &BigRational)> = y.support().collect();
    for (a, ca) in x.support() {
        if a.length() > bound {
            continue;
        }
        for &(b, cb) in &ys {
            if a.length() + b.length() > bound {
                continue;
            }
            let ab = multiply_unchecked(cat, a, b);
            *out.coeffs.get_mut(&ab).ok_or_else(|| {
                HikeError::Internal(format!("product {ab} missing from series"))
            })? += ca * cb;
        }
    }
    Ok(out)
}

/// The series `y` with `x·y = δ` up to the bound, by forward substitution in
/// increasing length.
pub fn series_invert(cat: &PrimeCatalog, x: &HikeSeries) -> Result<HikeSeries> {
    if x.catalog != cat.id() {
        return Err(HikeError::CatalogMismatch);
    }
    let one = Hike::one(cat);
    let c0 = x
        .coeffs
        .get(&one)
        .cloned()
        .unwrap_or_else(BigRational::zero);
    if c0.is_zero() {
        return Err(HikeError::NotInvertible);
    }
    let inv0 = c0.recip();
    let mut y = HikeSeries::zero_like(cat, x.coeffs.keys().cloned(), x.bound);
    let hikes: Vec<Hike> = x.coeffs.keys().cloned().collect();
    for h in hikes {
        let value = if h.is_one() {
            inv0.clone()
        } else {
            let mut acc = BigRational::zero();
            for (d, q) in left_divisors(cat, &h)? {
                if d.is_one() {
                    continue;
                }
                let xd = &x.coeffs[&d];
                if !xd.is_zero() {
                    acc += xd * &y.coeffs[&q];
                }
            }
            -(acc * &inv0)
        };
        y.coeffs.insert(h, value);
    }
    Ok(y)
}

/// The convolution identity.
pub fn delta(_cat: &PrimeCatalog, h: &Hike) -> BigRational {
    if h.is_one() {
        BigRational::one()
    } else {
        BigRational::zero()
    }
}

/// The constant function 1 (the zeta function of the poset).
pub fn one(_cat: &PrimeCatalog, _h: &Hike) -> BigRational {
    BigRational::one()
}

/// μ as an incidence function.
pub fn mobius_fn(_cat: &PrimeCatalog, h: &Hike) -> BigRational {
    rat(mobius(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Digraph;
    use crate::hike::hike_from_primes;
    use crate::primes::enumerate_primes;

    fn lollipop() -> PrimeCatalog {
        let g = Digraph::new(4, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 1)]).unwrap();
        enumerate_primes(&g).unwrap()
    }

    fn k3() -> PrimeCatalog {
        enumerate_primes(&Digraph::undirected(3, [(0, 1), (1, 2), (0, 2)]).unwrap()).unwrap()
    }

    #[test]
    fn convolution_examples() {
        let cat = lollipop();
        let p1 = cat.find_cycle(&[0, 1]).unwrap();
        let p2 = cat.find_cycle(&[1, 2, 3]).unwrap();
        let h = hike_from_primes(&cat, &[p1, p2]).unwrap();
        assert_eq!(convolve(&one, &one, &cat, &h).unwrap(), rat(3));
        assert_eq!(convolve(&mobius_fn, &one, &cat, &h).unwrap(), rat(0));
        let len = |_: &PrimeCatalog, x: &Hike| rat(x.length() as i64);
        assert_eq!(convolve(&delta, &len, &cat, &h).unwrap(), rat(5));
    }

    #[test]
    fn mobius_cases() {
        let g = Digraph::undirected(5, [(0, 2), (1, 3), (2, 4), (0, 3), (1, 4)]).unwrap();
        let cat = enumerate_primes(&g).unwrap();
        let a = cat.find_cycle(&[0, 2]).unwrap();
        let c = cat.find_cycle(&[1, 3]).unwrap();
        assert_eq!(mobius(&Hike::one(&cat)), 1);
        assert_eq!(mobius(&hike_from_primes(&cat, &[a, c]).unwrap()), 1);
        assert_eq!(mobius(&hike_from_primes(&cat, &[a, a]).unwrap()), 0);
        assert_eq!(mobius(&Hike::prime(&cat, a)), -1);
    }

    #[test]
    fn mobius_inverts_zeta() {
        let cat = k3();
        let mu = series_of(&mobius_fn, &cat, 6).unwrap();
        let zeta = series_of(&one, &cat, 6).unwrap();
        let d = series_of(&delta, &cat, 6).unwrap();
        assert_eq!(series_multiply(&cat, &mu, &zeta).unwrap(), d);
        assert_eq!(series_multiply(&cat, &zeta, &mu).unwrap(), d);
        assert_eq!(series_invert(&cat, &mu).unwrap(), zeta);
        assert_eq!(series_invert(&cat, &d).unwrap(), d);
        assert_eq!(series_multiply(&cat, &mu, &d).unwrap(), mu);
    }

    #[test]
    fn zeta_squared_is_divisor_count() {
        let cat = lollipop();
        let zeta = series_of(&one, &cat, 9).unwrap();
        let sq = series_multiply(&cat, &zeta, &zeta).unwrap();
        for (h, c) in sq.iter() {
            assert_eq!(*c, rat(left_divisors(&cat, h).unwrap().len() as i64), "{h}");
        }
    }

    #[test]
    fn invert_rejects_zero_constant() {
        let cat = k3();
        let zero = |_: &PrimeCatalog, _: &Hike| rat(0);
        let s = series_of(&zero, &cat, 3).unwrap();
        assert!(matches!(
            series_invert(&cat, &s),
            Err(HikeError::NotInvertible)
        ));
    }

    #[test]
    fn mixed_bounds_take_the_minimum() {
        let cat = k3();
        let a = series_of(&one, &cat, 4).unwrap();
        let b = series_of(&one, &cat, 6).unwrap();
        let p = series_multiply(&cat, &a, &b).unwrap();
        assert_eq!(p.bound(), 4);
        assert_eq!(p.len(), a.len());
    }

    #[test]
    fn single_loop_series() {
        let cat = enumerate_primes(&Digraph::new(1, [(0, 0)]).unwrap()).unwrap();
        let s = series_of(&one, &cat, 3).unwrap();
        assert_eq!(s.by_length(), vec![rat(1), rat(1), rat(1), rat(1)]);
    }
}
