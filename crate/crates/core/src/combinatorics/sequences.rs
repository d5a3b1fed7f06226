use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::counts::binomial;

/// Signed Stirling numbers of the first kind: `x(x-1)...(x-k+1) = Σ_j s(k,j) x^j`.
pub fn stirling1(k: u32, j: u32) -> BigInt {
    // row of coefficients of the falling factorial
    let mut row = vec![BigInt::one()];
    for i in 0..k {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (d, c) in row.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * BigInt::from(i);
        }
        row = next;
    }
    row.get(j as usize).cloned().unwrap_or_default()
}

/// Stirling numbers of the second kind: `S(k,j) = j S(k-1,j) + S(k-1,j-1)`.
pub fn stirling2(k: u32, j: u32) -> BigInt {
    let (k, j) = (k as usize, j as usize);
    if j > k {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::zero(); j + 1];
    row[0] = BigInt::one();
    for _ in 0..k {
        for t in (1..=j).rev() {
            row[t] = BigInt::from(t) * &row[t] + &row[t - 1];
        }
        row[0] = BigInt::zero();
    }
    row[j].clone()
}

fn bernoulli_cache() -> &'static Mutex<Vec<BigRational>> {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![BigRational::one()]))
}

/// Bernoulli numbers with `B_1 = -1/2`, from `Σ_{j<=n} C(n+1,j) B_j = 0`.
pub fn bernoulli(n: u32) -> BigRational {
    let mut cache = bernoulli_cache().lock().expect("bernoulli cache poisoned");
    while cache.len() <= n as usize {
        let m = cache.len() as u64;
        let mut acc = BigRational::zero();
        for (j, b) in cache.iter().enumerate() {
            acc += BigRational::from_integer(binomial(m + 1, j as u64)) * b;
        }
        let b = -acc / BigRational::from_integer(BigInt::from(m + 1));
        cache.push(b);
    }
    cache[n as usize].clone()
}

/// Which limit of `ζ(s_1, ..., s_k)` toward `(-n, 0, ..., 0)` is taken first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitOrder {
    /// `s_k → 0` first, ..., `s_1 → -n` last.
    S1First,
    /// `s_1 → -n` first, then `s_2 → 0`, ..., `s_k → 0`.
    SkFirst,
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Limit values of the depth-`k` zeta function at `(-n, 0, ..., 0)`.
pub fn nonpositive_limit(n: u32, k: u32, order: LimitOrder) -> BigRational {
    let sign = |e: u32| if e.is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
    match order {
        LimitOrder::S1First => {
            let mut acc = BigRational::zero();
            for j in 1..=n + 1 {
                acc += sign(k + j) * rat(factorial(j) * stirling2(n + 1, j))
                    / rat(BigInt::from(k + j));
            }
            sign(n + 1) * acc / rat(BigInt::from(n + 1))
        }
        LimitOrder::SkFirst => {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += rat(stirling1(k, j)) * bernoulli(n + j) / rat(BigInt::from(n + j));
            }
            let delta = if n == 0 { sign(k) } else { BigRational::zero() };
            delta - acc / rat(factorial(k - 1))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling1(3, 2), BigInt::from(-3));
        assert_eq!(stirling1(3, 3), BigInt::from(1));
        assert_eq!(stirling1(4, 1), BigInt::from(-6));
        assert_eq!(stirling2(3, 2), BigInt::from(3));
        assert_eq!(stirling2(5, 3), BigInt::from(25));
        assert_eq!(stirling2(0, 0), BigInt::from(1));
    }

    /// Akiyama–Tanigawa transform, which yields the `B_1 = +1/2` convention.
    fn bernoulli_oracle(n: usize) -> BigRational {
        let mut a = vec![BigRational::zero(); n + 1];
        for m in 0..=n {
            a[m] = q(1, m as i64 + 1);
            for j in (1..=m).rev() {
                a[j - 1] = rat(BigInt::from(j)) * (&a[j - 1] - &a[j]);
            }
        }
        a[0].clone()
    }

    #[test]
    fn bernoulli_matches_oracle() {
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(12), q(-691, 2730));
        for n in 2..30 {
            assert_eq!(bernoulli(n), bernoulli_oracle(n as usize), "B_{n}");
        }
    }

    #[test]
    fn nonpositive_examples() {
        assert_eq!(nonpositive_limit(0, 2, LimitOrder::S1First), q(1, 3));
        assert_eq!(nonpositive_limit(0, 2, LimitOrder::SkFirst), q(5, 12));
        assert_eq!(nonpositive_limit(0, 1, LimitOrder::SkFirst), q(-1, 2));
    }

    #[test]
    fn depth_one_limits_are_riemann_values() {
        // ζ(-n) = (-1)^n B_{n+1} / (n+1) with B_1 = -1/2
        for n in 0..=6u32 {
            let sign = if n % 2 == 0 { q(1, 1) } else { q(-1, 1) };
            let expect = sign * bernoulli(n + 1) / q(n as i64 + 1, 1);
            assert_eq!(nonpositive_limit(n, 1, LimitOrder::S1First), expect);
            assert_eq!(nonpositive_limit(n, 1, LimitOrder::SkFirst), expect);
        }
    }
}
