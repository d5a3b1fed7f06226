use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// The conjectured generating functions `∏ (1 - x^n y^k)^{E(n,k)} = R(x,y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DimensionTarget {
    /// MZVs reduced over an MZV basis:
    /// `1 - x³y/(1-x²) + x¹²y²(1-y²)/((1-x⁴)(1-x⁶))`.
    MzvBasis,
    /// MZVs reduced over Euler sums: `1 - x³y/((1-x²)(1-xy))`.
    MzvViaEuler,
    /// Euler sums reduced over Euler sums: `1 - x³y/(1-x²)`.
    EulerBasis,
    /// Multiple Clausen values: `1 - x²y/(1-x)`.
    Clausen,
}

impl DimensionTarget {
    pub const ALL: [DimensionTarget; 4] = [
        DimensionTarget::MzvBasis,
        DimensionTarget::MzvViaEuler,
        DimensionTarget::EulerBasis,
        DimensionTarget::Clausen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DimensionTarget::MzvBasis => "mzv_basis",
            DimensionTarget::MzvViaEuler => "mzv_via_euler",
            DimensionTarget::EulerBasis => "euler_basis",
            DimensionTarget::Clausen => "clausen",
        }
    }
}

impl fmt::Display for DimensionTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DimensionTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DimensionTarget::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown dimension target '{s}'")))
    }
}

/// Truncated bivariate series, `c[a][b]` the coefficient of `x^a y^b`.
#[derive(Clone, Debug)]
struct Series2 {
    c: Vec<Vec<BigRational>>,
}

impl Series2 {
    fn zero(w: usize, d: usize) -> Self {
        Self {
            c: vec![vec![BigRational::zero(); d + 1]; w + 1],
        }
    }

    fn dims(&self) -> (usize, usize) {
        (self.c.len() - 1, self.c[0].len() - 1)
    }

    fn monomial(w: usize, d: usize, a: usize, b: usize, coeff: i64) -> Self {
        let mut s = Self::zero(w, d);
        if a <= w && b <= d {
            s.c[a][b] = BigRational::from_integer(BigInt::from(coeff));
        }
        s
    }

    /// `1 / (1 - x^a y^b)`.
    fn geometric(w: usize, d: usize, a: usize, b: usize) -> Self {
        let mut s = Self::zero(w, d);
        let mut k = 0;
        while k * a <= w && k * b <= d {
            s.c[k * a][k * b] = BigRational::one();
            k += 1;
            if a == 0 && b == 0 {
                break;
            }
        }
        s
    }

    fn add(&self, o: &Self, sign: i64) -> Self {
        let mut s = self.clone();
        let f = BigRational::from_integer(BigInt::from(sign));
        for (row, orow) in s.c.iter_mut().zip(&o.c) {
            for (v, ov) in row.iter_mut().zip(orow) {
                *v += ov * &f;
            }
        }
        s
    }

    fn mul(&self, o: &Self) -> Self {
        let (w, d) = self.dims();
        let mut s = Self::zero(w, d);
        for a1 in 0..=w {
            for b1 in 0..=d {
                if self.c[a1][b1].is_zero() {
                    continue;
                }
                for a2 in 0..=w - a1 {
                    for b2 in 0..=d - b1 {
                        if !o.c[a2][b2].is_zero() {
                            s.c[a1 + a2][b1 + b2] += &self.c[a1][b1] * &o.c[a2][b2];
                        }
                    }
                }
            }
        }
        s
    }

    /// Logarithm of a series with constant term 1 in `x`, via `x L' R = x R'`.
    fn log(&self) -> Self {
        let (w, d) = self.dims();
        let poly_mul = |p: &[BigRational], q: &[BigRational]| {
            let mut out = vec![BigRational::zero(); d + 1];
            for (i, pi) in p.iter().enumerate() {
                if pi.is_zero() {
                    continue;
                }
                for (j, qj) in q.iter().enumerate().take(d + 1 - i) {
                    out[i + j] += pi * qj;
                }
            }
            out
        };
        let mut l = Self::zero(w, d);
        for a in 1..=w {
            let mut acc: Vec<BigRational> = self.c[a]
                .iter()
                .map(|v| v * BigRational::from_integer(BigInt::from(a)))
                .collect();
            for i in 1..a {
                let prod = poly_mul(&l.c[i], &self.c[a - i]);
                let fi = BigRational::from_integer(BigInt::from(i));
                for (t, p) in acc.iter_mut().zip(prod) {
                    *t -= p * &fi;
                }
            }
            let fa = BigRational::from_integer(BigInt::from(a));
            l.c[a] = acc.into_iter().map(|v| v / &fa).collect();
        }
        l
    }
}

fn target_series(target: DimensionTarget, w: usize, d: usize) -> Series2 {
    let one = Series2::monomial(w, d, 0, 0, 1);
    let g = |a, b| Series2::geometric(w, d, a, b);
    let mono = |a, b, c| Series2::monomial(w, d, a, b, c);
    match target {
        DimensionTarget::MzvBasis => {
            let t1 = mono(3, 1, 1).mul(&g(2, 0));
            let t2 = mono(12, 2, 1)
                .mul(&one.add(&mono(0, 2, 1), -1))
                .mul(&g(4, 0))
                .mul(&g(6, 0));
            one.add(&t1, -1).add(&t2, 1)
        }
        DimensionTarget::MzvViaEuler => one.add(&mono(3, 1, 1).mul(&g(2, 0)).mul(&g(1, 1)), -1),
        DimensionTarget::EulerBasis => one.add(&mono(3, 1, 1).mul(&g(2, 0)), -1),
        DimensionTarget::Clausen => one.add(&mono(2, 1, 1).mul(&g(1, 0)), -1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentEntry {
    pub n: u32,
    pub k: u32,
    pub value: i64,
}

/// Exponents `E(n,k)` for `1 <= n <= max_weight`, `1 <= k <= max_depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentTable {
    pub target: DimensionTarget,
    pub max_weight: u32,
    pub max_depth: u32,
    values: Vec<Vec<i64>>,
}

impl ExponentTable {
    pub fn get(&self, n: u32, k: u32) -> i64 {
        if n == 0 || k == 0 || n > self.max_weight || k > self.max_depth {
            return 0;
        }
        self.values[n as usize][k as usize]
    }

    pub fn entries(&self) -> Vec<ExponentEntry> {
        let mut out = Vec::new();
        for n in 1..=self.max_weight {
            for k in 1..=self.max_depth {
                out.push(ExponentEntry {
                    n,
                    k,
                    value: self.get(n, k),
                });
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.entries()).expect("serializable table")
    }

    /// Aligned text table: one row per weight, one column per depth.
    pub fn to_text(&self) -> String {
        let mut s = format!("{:>4}", "n\\k");
        for k in 1..=self.max_depth {
            s.push_str(&format!(" {k:>6}"));
        }
        s.push('\n');
        for n in 1..=self.max_weight {
            s.push_str(&format!("{n:>4}"));
            for k in 1..=self.max_depth {
                s.push_str(&format!(" {:>6}", self.get(n, k)));
            }
            s.push('\n');
        }
        s
    }
}

/// Solve `∏ (1 - x^n y^k)^{E(n,k)} = R(x,y)` for the exponents by matching
/// logarithms: `[x^a y^b] log R = -Σ_{d | gcd(a,b)} E(a/d, b/d) / d`.
pub fn dimension_exponents(
    target: DimensionTarget,
    max_weight: u32,
    max_depth: u32,
) -> Result<ExponentTable> {
    if max_weight == 0 || max_depth == 0 {
        return Err(Error::OutOfDomain("table bounds must be at least 1".into()));
    }
    let (w, d) = (max_weight as usize, max_depth as usize);
    let log = target_series(target, w, d).log();
    let mut e = vec![vec![BigRational::zero(); d + 1]; w + 1];
    for a in 1..=w {
        for b in 1..=d {
            let g = a.gcd(&b);
            let mut v = -log.c[a][b].clone();
            for div in 2..=g {
                if g % div == 0 {
                    v -= &e[a / div][b / div] / BigRational::from_integer(BigInt::from(div));
                }
            }
            e[a][b] = v;
        }
    }
    let mut values = vec![vec![0i64; d + 1]; w + 1];
    for a in 1..=w {
        for b in 1..=d {
            if !e[a][b].is_integer() {
                return Err(Error::NotConvertible(format!(
                    "exponent at ({a},{b}) is not an integer: {}",
                    e[a][b]
                )));
            }
            values[a][b] = i64::try_from(e[a][b].to_integer()).map_err(|_| {
                Error::Unsupported(format!("exponent at ({a},{b}) exceeds 64 bits"))
            })?;
        }
    }
    Ok(ExponentTable {
        target,
        max_weight,
        max_depth,
        values,
    })
}
