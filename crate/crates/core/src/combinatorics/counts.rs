use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `Σ_k C(m,k) C(n+k,m)`.
pub fn stuffle_count_closed_a(m: u64, n: u64) -> BigInt {
    (0..=m).map(|k| binomial(m, k) * binomial(n + k, m)).sum()
}

/// `Σ_k C(n,k) C(m,k) 2^k`.
pub fn stuffle_count_closed_b(m: u64, n: u64) -> BigInt {
    (0..=m.min(n))
        .map(|k| binomial(n, k) * binomial(m, k) * (BigInt::one() << k))
        .sum()
}

/// `f(m,n) = f(m-1,n) + f(m,n-1) + f(m-1,n-1)`, from `F = 1/(1-x-y-xy)`.
pub fn stuffle_count_recursive(m: u64, n: u64) -> BigInt {
    let (m, n) = (m as usize, n as usize);
    let mut f = vec![vec![BigInt::one(); n + 1]; m + 1];
    for i in 1..=m {
        for j in 1..=n {
            f[i][j] = &f[i - 1][j] + &f[i][j - 1] + &f[i - 1][j - 1];
        }
    }
    f[m][n].clone()
}

/// Number of lists in the stuffle of lists of lengths `m` and `n`.
///
/// Computed three ways; panics if they disagree.
pub fn stuffle_count(m: u64, n: u64) -> BigInt {
    let a = stuffle_count_closed_a(m, n);
    let b = stuffle_count_closed_b(m, n);
    let r = stuffle_count_recursive(m, n);
    assert!(a == b && b == r, "stuffle count routes disagree at ({m},{n})");
    a
}

/// `|{b ∈ Z^m : Σ|b_j| ≤ n}|` by direct enumeration.
pub fn lattice_count(m: u32, n: u32) -> u64 {
    fn rec(left: u32, budget: u32) -> u64 {
        if left == 0 {
            return 1;
        }
        let mut total = rec(left - 1, budget);
        for a in 1..=budget {
            total += 2 * rec(left - 1, budget - a);
        }
        total
    }
    rec(m, n)
}

/// All ordered `k`-tuples of nonnegative integers summing to `n`, in
/// lexicographically decreasing order of the leading entries
/// (`(n,0,..)` first, `(..,0,n)` last).
pub fn compositions_enum(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = Vec::with_capacity(k);
    fn rec(k: usize, rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == k {
            cur.push(rem);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in (0..=rem).rev() {
            cur.push(v);
            rec(k, rem - v, cur, out);
            cur.pop();
        }
    }
    rec(k, n, &mut cur, &mut out);
    out
}
