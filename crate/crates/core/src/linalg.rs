//! Small dense exact linear algebra: integer matrices, the Faddeev–LeVerrier
//! recurrence, Ryser's permanent, and Leibniz expansions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::{IntPoly, TruncatedMultiSeries};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `[Tr(M), Tr(M^2), .., Tr(M^max_power)]`.
    pub fn trace_powers(&self, max_power: usize) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(max_power);
        let mut power = self.clone();
        for k in 1..=max_power {
            out.push(power.trace());
            if k < max_power {
                power = power.mul(self);
            }
        }
        out
    }

    /// `det(I - zM)` by the Faddeev–LeVerrier recurrence. Every division by
    /// `k` is exact over the integers.
    pub fn reversed_char_poly(&self) -> IntPoly {
        let n = self.n;
        // coefficient c_{n-k} of det(λI - M) becomes the z^k coefficient
        let mut rev = vec![BigInt::one()];
        let mut aux = Self::zeros(n);
        let mut prev = BigInt::one();
        for k in 1..=n {
            // aux = M * aux_prev + c_{n-k+1} I
            let mut next = self.mul(&aux);
            for i in 0..n {
                next.data[i * n + i] += &prev;
            }
            aux = next;
            let t = self.mul(&aux).trace();
            let (q, r) = t.div_rem(&BigInt::from(k));
            assert!(r.is_zero(), "Faddeev–LeVerrier division must be exact");
            let c = -q;
            rev.push(c.clone());
            prev = c;
        }
        IntPoly::new(rev)
    }
}

/// `perm(I + uA)` for a 0/1 matrix, by Ryser's inclusion–exclusion with
/// polynomial entries.
pub fn identity_plus_permanent(adj: &[Vec<bool>]) -> IntPoly {
    let n = adj.len();
    if n == 0 {
        return IntPoly::one();
    }
    // entry (i, j) of I + uA is a0 + a1 u with a0 = [i == j], a1 = A[i][j];
    // row sums over a column subset stay linear in u
    let mut total = vec![0i128; n + 1];
    for subset in 1u64..(1u64 << n) {
        let mut prod = vec![0i128; n + 1];
        prod[0] = 1;
        // after row i the product has degree at most i + 1
        for (i, row) in adj.iter().enumerate() {
            let c0 = ((subset >> i) & 1) as i128;
            let c1 = (0..n).filter(|&j| (subset >> j) & 1 == 1 && row[j]).count() as i128;
            // prod *= c0 + c1 u
            for d in (0..=i + 1).rev() {
                let lower = if d > 0 { prod[d - 1] } else { 0 };
                prod[d] = prod[d] * c0 + lower * c1;
            }
        }
        let sign = if (n - subset.count_ones() as usize).is_multiple_of(2) {
            1
        } else {
            -1
        };
        for d in 0..=n {
            total[d] += sign * prod[d];
        }
    }
    IntPoly::new(total.into_iter().map(BigInt::from).collect())
}

/// All permutations of `0..n` with their signs (Heap's algorithm).
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = vec![(perm.clone(), 1)];
    let mut c = vec![0usize; n];
    let mut sign = 1;
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            out.push((perm.clone(), sign));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Leibniz determinant of a matrix of truncated multivariate series.
pub fn leibniz_det(
    m: &[Vec<TruncatedMultiSeries>],
    vars: usize,
    bound: usize,
) -> TruncatedMultiSeries {
    let n = m.len();
    let mut det = TruncatedMultiSeries::zero(vars, bound);
    for (perm, sign) in signed_permutations(n) {
        let mut term = TruncatedMultiSeries::one(vars, bound);
        for (i, &j) in perm.iter().enumerate() {
            term = &term * &m[i][j];
            if term.is_empty() {
                break;
            }
        }
        det = if sign > 0 { &det + &term } else { &det - &term };
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_and_signs() {
        let perms = signed_permutations(4);
        assert_eq!(perms.len(), 24);
        let mut seen: Vec<_> = perms.iter().map(|(p, _)| p.clone()).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 24);
        for (p, s) in &perms {
            let inversions = (0..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            assert_eq!(*s, if inversions % 2 == 0 { 1 } else { -1 });
        }
        assert_eq!(signed_permutations(0).len(), 1);
    }

    #[test]
    fn faddeev_matches_leibniz_on_small_matrix() {
        // det(I - zM) for a generic integer matrix against direct expansion
        let rows = [[2i64, -1, 0], [3, 0, 1], [-2, 4, 1]];
        let mut m = IntMatrix::zeros(3);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        // by hand: trace 3, principal 2-minors 3 + 2 - 4 = 1, det -3, so
        // det(λI - M) = λ^3 - 3λ^2 + λ + 3
        assert_eq!(m.reversed_char_poly(), IntPoly::from_i64(&[1, -3, 1, 3]));
    }

    #[test]
    fn ryser_counts_permutations_of_complete_matrix() {
        // perm(I + uJ) = sum over k-subsets of perm(J_k) u^k = 1 + 3u + 6u^2 + 6u^3
        let adj = vec![vec![true; 3]; 3];
        let p = identity_plus_permanent(&adj);
        assert_eq!(p, IntPoly::from_i64(&[1, 3, 6, 6]));
        // at u = 1 this is perm([[2,1,1],[1,2,1],[1,1,2]]) = 8 + 3*2 + 2
        let at_one: BigInt = p.coeffs().iter().sum();
        assert_eq!(at_one, BigInt::from(16));
    }
}
