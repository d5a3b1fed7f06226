use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An integer partition with its weight `c_α = ∏_j m_j! (-j)^{m_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// Weakly decreasing positive parts.
    pub parts: Vec<u32>,
    /// Part size `j` → multiplicity `m_j`.
    pub multiplicities: BTreeMap<u32, u32>,
    pub c_alpha: BigInt,
}

impl Partition {
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let mut multiplicities = BTreeMap::new();
        for &p in &parts {
            *multiplicities.entry(p).or_insert(0) += 1;
        }
        let mut c = BigInt::one();
        for (&j, &m) in &multiplicities {
            for i in 1..=m {
                c *= BigInt::from(i) * BigInt::from(-(j as i64));
            }
        }
        Self {
            parts,
            multiplicities,
            c_alpha: c,
        }
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn c_alpha_inv(&self) -> BigRational {
        BigRational::new(BigInt::one(), self.c_alpha.clone())
    }
}

/// All partitions of `k`, largest parts first, each with its `c_α`.
pub fn partitions_calpha(k: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition::from_parts(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(k, k, &mut cur, &mut out);
    out
}

/// Ordered tuples `(d_1, ..., d_r)` of positive integers with `∏ d_j^{α_j} = m`.
pub fn d_alpha(parts: &[u32], m: u64) -> u64 {
    match parts.split_first() {
        None => u64::from(m == 1),
        Some((&a, rest)) => {
            let mut total = 0;
            let mut d = 1u64;
            loop {
                let Some(p) = d.checked_pow(a) else { break };
                if p > m {
                    break;
                }
                if m.is_multiple_of(p) {
                    total += d_alpha(rest, m / p);
                }
                d += 1;
            }
            total
        }
    }
}

/// Unordered factorizations of `m` into `k` distinct factors (the factor 1 allowed),
/// via `τ_k(m) = (-1)^k Σ_{|α|=k} c_α^{-1} d_α(m)`.
pub fn tau_factorizations(m: u64, k: u32) -> BigInt {
    let mut acc = BigRational::zero();
    for p in partitions_calpha(k) {
        let d = d_alpha(&p.parts, m);
        acc += p.c_alpha_inv() * BigRational::from_integer(BigInt::from(d));
    }
    if k % 2 == 1 {
        acc = -acc;
    }
    assert!(acc.is_integer(), "partition formula gave a non-integer");
    acc.to_integer()
}

/// Count sets `{f_1 < ... < f_k}` with product `m` by direct search.
pub fn tau_brute_force(m: u64, k: u32) -> u64 {
    fn rec(m: u64, k: u32, min: u64) -> u64 {
        if k == 0 {
            return u64::from(m == 1);
        }
        if k == 1 {
            return u64::from(m >= min);
        }
        let mut total = 0;
        let mut f = min;
        // f < next factors, so f^k <= m
        while f.checked_pow(k).is_some_and(|p| p <= m) {
            if m.is_multiple_of(f) {
                total += rec(m / f, k - 1, f + 1);
            }
            f += 1;
        }
        total
    }
    rec(m, k, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c_list(k: u32) -> Vec<(Vec<u32>, i64)> {
        partitions_calpha(k)
            .into_iter()
            .map(|p| (p.parts, i64::try_from(p.c_alpha).unwrap()))
            .collect()
    }

    #[test]
    fn calpha_examples() {
        assert_eq!(c_list(0), vec![(vec![], 1)]);
        assert_eq!(c_list(2), vec![(vec![2], -2), (vec![1, 1], 2)]);
        assert_eq!(
            c_list(3),
            vec![(vec![3], -3), (vec![2, 1], 2), (vec![1, 1, 1], -6)]
        );
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau_factorizations(12, 2), BigInt::from(3));
        assert_eq!(tau_factorizations(30, 3), BigInt::from(4));
        assert_eq!(tau_brute_force(30, 3), 4);
        for m in 1..50 {
            assert_eq!(tau_factorizations(m, 1), BigInt::one());
        }
    }

    #[test]
    fn d_alpha_special_cases() {
        // d_{1,1} is the divisor function, d_2 the square indicator
        assert_eq!(d_alpha(&[1, 1], 12), 6);
        assert_eq!(d_alpha(&[2], 36), 1);
        assert_eq!(d_alpha(&[2], 12), 0);
    }

    #[test]
    fn tau_matches_brute_force_small() {
        for m in 1..=300 {
            for k in 1..=4 {
                assert_eq!(tau_factorizations(m, k), BigInt::from(tau_brute_force(m, k)));
            }
        }
    }
}
