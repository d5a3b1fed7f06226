use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ball::{exp2_up, Ball, Prec};
use super::complex::ComplexBall;
use super::holder::holder_signed;
use super::with_retry;
use crate::error::{Error, Result};
use crate::word_algebra::Composition;

const GUARD_BITS: u32 = 24;

/// Arguments of an Euler sum
/// `ζ_x(s; σ) = Σ_{n_1>⋯>n_k>0} x^{n_1} ∏ σ_j^{n_j} / n_j^{s_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedComposition {
    pub parts: Vec<(u32, i8)>,
    pub x: BigRational,
}

impl SignedComposition {
    pub fn new(parts: Vec<(u32, i8)>, x: BigRational) -> Result<Self> {
        if parts.iter().any(|&(s, sig)| s == 0 || (sig != 1 && sig != -1)) {
            return Err(Error::OutOfDomain(
                "arguments must be positive with signs ±1".into(),
            ));
        }
        if x.is_negative() || x > BigRational::one() {
            return Err(Error::OutOfDomain(format!("x = {x} must lie in [0, 1]")));
        }
        Ok(Self { parts, x })
    }

    /// An MZV argument list (all signs +1, x = 1).
    pub fn from_composition(c: &Composition) -> Self {
        Self {
            parts: c.parts().iter().map(|&s| (s, 1)).collect(),
            x: BigRational::one(),
        }
    }

    /// Signed integers, a negative entry marking `σ = -1` (so `[-1, 1]` is `ζ(1̄,1)`).
    pub fn from_signed(v: &[i64], x: BigRational) -> Result<Self> {
        let parts = v
            .iter()
            .map(|&n| {
                if n == 0 {
                    Err(Error::OutOfDomain("zero argument".into()))
                } else {
                    Ok((n.unsigned_abs() as u32, if n < 0 { -1 } else { 1 }))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts, x)
    }

    /// Parse a comma-separated list of nonzero integers with optional parentheses.
    pub fn parse(text: &str, x: BigRational) -> Result<Self> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        let offset = text.find(t).unwrap_or(0);
        if t.trim().is_empty() {
            return Self::new(Vec::new(), x);
        }
        let mut pos = offset;
        let mut values = Vec::new();
        for field in t.split(',') {
            let v: i64 = field.trim().parse().map_err(|_| {
                Error::parse(pos, format!("expected nonzero integer, found '{}'", field.trim()))
            })?;
            if v == 0 || v.unsigned_abs() > u32::MAX as u64 {
                return Err(Error::parse(pos, "arguments must be nonzero 32-bit integers"));
            }
            values.push(v);
            pos += field.len() + 1;
        }
        Self::from_signed(&values, x)
    }

    pub fn depth(&self) -> usize {
        self.parts.len()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().map(|p| p.0).sum()
    }

    pub fn is_alternating(&self) -> bool {
        self.parts.iter().any(|p| p.1 < 0)
    }

    pub fn x_is_one(&self) -> bool {
        self.x.is_one()
    }

    /// Convergent unless `x = s_1 = σ_1 = 1`.
    pub fn is_admissible(&self) -> bool {
        !(self.x_is_one() && self.parts.first() == Some(&(1, 1)))
    }

    /// Prefix sign products `y_j = σ_1 ⋯ σ_j`.
    pub fn sign_prefixes(&self) -> Vec<i8> {
        let mut acc = 1i8;
        self.parts
            .iter()
            .map(|&(_, s)| {
                acc *= s;
                acc
            })
            .collect()
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.parts.iter().map(|p| p.0).collect()
    }
}

impl fmt::Display for SignedComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &(s, sig)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if sig < 0 {
                write!(f, "-")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")?;
        if !self.x_is_one() {
            write!(f, "_x={}", self.x)?;
        }
        Ok(())
    }
}

/// The arithmetic the nested-sum recursion needs, shared by real and complex balls.
pub(crate) trait Scalar: Clone {
    fn zero(prec: u32) -> Self;
    fn one(prec: u32) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scale(&self, r: &Ball) -> Self;
}

impl Scalar for Ball {
    fn zero(prec: u32) -> Self {
        Ball::zero(prec)
    }
    fn one(prec: u32) -> Self {
        Ball::one(prec)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Ball) -> Self {
        self * r
    }
}

impl Scalar for ComplexBall {
    fn zero(prec: u32) -> Self {
        ComplexBall::zero(prec)
    }
    fn one(prec: u32) -> Self {
        ComplexBall::one(prec)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Ball) -> Self {
        ComplexBall::scale(self, r)
    }
}

/// The truncated nested sum `Σ_{N≥n_1>⋯>n_k≥1} ∏_j Z_j^{n_j-n_{j+1}} / n_j^{s_j}`
/// (with `n_{k+1} = 0`) over prefix products `Z_j = z_1 ⋯ z_j`.
///
/// `R_j(m)` holds the partial sum over `m > n_j > ⋯` carrying `Z_{j-1}^{m - n_j}`;
/// each step maps `R_j ← Z_{j-1}(R_j + m^{-s_j} R_{j+1})` with `R_{k+1}(m) = Z_k^m`.
pub(crate) fn nested_sum<T: Scalar>(s: &[u32], prefix: &[T], n_max: u64, prec: u32) -> T {
    let k = s.len();
    assert_eq!(prefix.len(), k);
    if k == 0 {
        return T::one(prec);
    }
    let mut r: Vec<T> = vec![T::zero(prec); k];
    let mut top = prefix[k - 1].clone(); // Z_k^m
    let mut distinct: Vec<u32> = s.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for m in 1..=n_max {
        let mb = BigInt::from(m);
        let inv: Vec<Ball> = distinct
            .iter()
            .map(|&e| Ball::from_ratio(&BigInt::one(), &mb.pow(e), prec))
            .collect();
        for j in 0..k {
            let w = &inv[distinct.binary_search(&s[j]).unwrap()];
            let next = if j + 1 < k { &r[j + 1] } else { &top };
            let inner = r[j].plus(&next.scale(w));
            r[j] = if j == 0 { inner } else { inner.times(&prefix[j - 1]) };
        }
        top = top.times(&prefix[k - 1]);
    }
    r.swap_remove(0)
}

fn log2_factorial(n: u32) -> f64 {
    (2..=n).map(|i| (i as f64).log2()).sum()
}

/// `log2` of the geometric tail bound
/// `(N+1)^{k-1} ρ^{N+1} / ((k-1)! (1-r))`, `r = ρ ((N+2)/(N+1))^{k-1}`, or `None` if `r ≥ 1`.
fn geometric_tail_log2(rho: f64, n: u64, k: usize) -> Option<f64> {
    let km1 = (k - 1) as f64;
    let n1 = n as f64 + 1.0;
    let r = rho * ((n1 + 1.0) / n1).powf(km1);
    if r >= 1.0 {
        return None;
    }
    Some(km1 * n1.log2() + n1 * rho.log2() - log2_factorial(k as u32 - 1) - (1.0 - r).log2())
}

/// Number of terms for which the geometric tail drops below `2^-bits`, with its bound.
pub(crate) fn geometric_cutoff(rho: f64, k: usize, bits: u32) -> (u64, f64) {
    let target = -(bits as f64) - 2.0;
    if rho == 0.0 {
        return (k as u64, 0.0);
    }
    let mut n = ((bits as f64 + 2.0) / -rho.log2()).ceil() as u64 + k as u64;
    loop {
        if let Some(l) = geometric_tail_log2(rho, n, k) {
            if l < target {
                return (n, exp2_up(l * (1.0 - 1e-12) + 1e-9));
            }
        }
        n = n + n / 8 + 8;
    }
}

/// Tail after `N` terms of an Euler sum at `x = 1`, dominated by the outer sum:
/// `2 L^{k-1} N^{1-s}/(s-1)` for `σ_1 = +1` and `2 (s+1) L^{k-1} N^{-s}/s` for
/// `σ_1 = -1` (pairing consecutive outer terms), `L = 1 + log N`.
/// `None` if `N` is too small for the bound to apply.
pub(crate) fn unit_tail_bound(s1: u32, sigma1: i8, k: usize, n: u64) -> Option<f64> {
    let l = 1.0 + (n as f64).ln();
    let km1 = (k - 1) as f64;
    let s = s1 as f64;
    let nf = n as f64;
    let log2_l = l.log2();
    if sigma1 > 0 {
        if s1 < 2 || (s - 1.0) / 2.0 * l < km1 {
            return None;
        }
        Some(exp2_up(1.0 + km1 * log2_l + (1.0 - s) * nf.log2() - (s - 1.0).log2()))
    } else {
        if s / 2.0 * l < km1 {
            return None;
        }
        Some(exp2_up(1.0 + (s + 1.0).log2() + km1 * log2_l - s * nf.log2() - s.log2()))
    }
}

fn real_prefixes(arg: &SignedComposition, prec: u32) -> Vec<Ball> {
    let x = Ball::from_rational(&arg.x, prec);
    arg.sign_prefixes()
        .into_iter()
        .map(|y| if y > 0 { x.clone() } else { -&x })
        .collect()
}

/// Direct truncated nested-sum evaluation with a rigorous tail.
///
/// For `x < 1` the cutoff is chosen from the geometric tail bound; for `x = 1`
/// the sum is truncated after `terms` outer terms, which must be large enough
/// for the logarithmic tail bound to apply.
pub fn euler_sum_direct(arg: &SignedComposition, terms: u64, prec: u32) -> Result<Ball> {
    if !arg.is_admissible() {
        return Err(divergent());
    }
    let k = arg.depth();
    if k == 0 {
        return Ok(Ball::one(prec));
    }
    if arg.x.is_zero() {
        return Ok(Ball::zero(prec));
    }
    let w = prec + GUARD_BITS;
    let z = real_prefixes(arg, w);
    let s = arg.exponents();
    if arg.x_is_one() {
        let (s1, sig1) = arg.parts[0];
        let tail = unit_tail_bound(s1, sig1, k, terms).ok_or_else(|| {
            Error::PrecisionLoss(format!(
                "{terms} terms are too few for the tail bound of depth {k}"
            ))
        })?;
        Ok(nested_sum(&s, &z, terms, w).add_error(tail).set_prec(prec))
    } else {
        let rho = arg.x.to_f64().unwrap_or(1.0).min(1.0);
        let rho = super::ball::up(rho).min(f64::from_bits(1.0f64.to_bits() - 1));
        let (n, tail) = geometric_cutoff(rho, k, w);
        Ok(nested_sum(&s, &z, n, w).add_error(tail).set_prec(prec))
    }
}

fn divergent() -> Error {
    Error::Divergent("x=s1=σ1=1 excluded".into())
}

/// `ζ_x(s; σ)` to the requested accuracy.
///
/// For `x < 1` this is the direct nested sum with its geometric tail. At `x = 1`
/// direct summation converges only algebraically, so the value is obtained by
/// Hölder convolution instead (geometrically convergent pieces).
pub fn euler_sum_eval(arg: &SignedComposition, prec: Prec) -> Result<Ball> {
    if !arg.is_admissible() {
        return Err(divergent());
    }
    with_retry(prec, |bits| euler_sum_bits(arg, bits), Ball::rad)
}

pub(crate) fn euler_sum_bits(arg: &SignedComposition, bits: u32) -> Result<Ball> {
    if arg.x_is_one() && arg.depth() > 0 {
        holder_signed(arg, bits)
    } else {
        euler_sum_direct(arg, 0, bits)
    }
}

/// `Li_{s_1,…,s_k}(z_1,…,z_k) = Σ_{n_1>⋯>n_k>0} ∏ z_j^{n_j} / n_j^{s_j}`.
///
/// Requires `|z_1 ⋯ z_j| < 1` for every prefix. Otherwise the arguments must be
/// exact reals of the form `(σ_1 x, σ_2, …, σ_k)` with rational `x ∈ [0, 1]`,
/// which are evaluated as the corresponding Euler sum.
pub fn multiple_polylog_eval(s: &[u32], z: &[ComplexBall], prec: Prec) -> Result<ComplexBall> {
    if s.len() != z.len() {
        return Err(Error::BadArity(format!(
            "{} exponents but {} arguments",
            s.len(),
            z.len()
        )));
    }
    if s.contains(&0) {
        return Err(Error::OutOfDomain("exponents must be positive".into()));
    }
    let rho = prefix_modulus(z, prec.bits);
    if rho < 1.0 {
        return with_retry(prec, |bits| Ok(polylog_bits(s, z, bits)), ComplexBall::rad);
    }
    match as_euler_sum(s, z) {
        Some(arg) => {
            if !arg.is_admissible() {
                return Err(divergent());
            }
            Ok(ComplexBall::real(euler_sum_eval(&arg, prec)?))
        }
        None => Err(Error::OutOfDomain(
            "prefix products must have modulus below 1".into(),
        )),
    }
}

fn prefix_modulus(z: &[ComplexBall], prec: u32) -> f64 {
    let mut acc = ComplexBall::one(prec);
    let mut rho: f64 = 0.0;
    for zj in z {
        acc = &acc * zj;
        rho = rho.max(acc.abs_upper());
    }
    rho
}

pub(crate) fn polylog_bits(s: &[u32], z: &[ComplexBall], bits: u32) -> ComplexBall {
    let k = s.len();
    if k == 0 {
        return ComplexBall::one(bits);
    }
    let w = bits + GUARD_BITS;
    let mut prefix = Vec::with_capacity(k);
    let mut acc = ComplexBall::one(w);
    for zj in z {
        acc = &acc * &zj.set_prec(w);
        prefix.push(acc.clone());
    }
    let rho = prefix_modulus(z, w);
    let (n, tail) = geometric_cutoff(rho, k, w);
    nested_sum(s, &prefix, n, w).add_error(tail).set_prec(bits)
}

fn exact_real(z: &ComplexBall) -> Option<BigRational> {
    if z.re.is_exact() && z.im.is_exact() && z.im.mid_raw().is_zero() {
        Some(z.re.mid_rational())
    } else {
        None
    }
}

fn as_euler_sum(s: &[u32], z: &[ComplexBall]) -> Option<SignedComposition> {
    let mut parts = Vec::with_capacity(s.len());
    let first = exact_real(z.first()?)?;
    let x = first.abs();
    if x > BigRational::one() {
        return None;
    }
    parts.push((s[0], if first.is_negative() { -1 } else { 1 }));
    for (zj, &sj) in z.iter().zip(s).skip(1) {
        let v = exact_real(zj)?;
        if v.is_one() {
            parts.push((sj, 1));
        } else if (-&v).is_one() {
            parts.push((sj, -1));
        } else {
            return None;
        }
    }
    SignedComposition::new(parts, x).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::elementary::{ln2, pi};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parse_and_admissibility() {
        let a = SignedComposition::parse("-1,1", q(1, 1)).unwrap();
        assert_eq!(a.parts, vec![(1, -1), (1, 1)]);
        assert!(a.is_admissible());
        assert_eq!(a.to_string(), "(-1,1)");
        let b = SignedComposition::parse("1,1", q(1, 1)).unwrap();
        assert!(!b.is_admissible());
        assert!(SignedComposition::parse("1,1", q(1, 2)).unwrap().is_admissible());
        assert!(matches!(
            SignedComposition::parse("2,x", q(1, 1)),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(SignedComposition::parse("2", q(3, 2)).is_err());
    }

    #[test]
    fn half_argument_values() {
        let p = 150;
        // ζ_{1/2}(1) = log 2
        let a = SignedComposition::parse("1", q(1, 2)).unwrap();
        let v = euler_sum_direct(&a, 0, p).unwrap();
        assert!(v.overlaps(&ln2(p)));
        assert!(v.rad() < 1e-40);
        // ζ_{1/2}(1,1) = log²2 / 2
        let a = SignedComposition::parse("1,1", q(1, 2)).unwrap();
        let v = euler_sum_direct(&a, 0, p).unwrap();
        assert!(v.overlaps(&ln2(p).sqr().mul_pow2(-1)));
        // Li_2(1/2) = π²/12 - log²2/2
        let a = SignedComposition::parse("2", q(1, 2)).unwrap();
        let v = euler_sum_direct(&a, 0, p).unwrap();
        let expect = &pi(p).sqr().div_int(12) - &ln2(p).sqr().mul_pow2(-1);
        assert!(v.overlaps(&expect));
    }

    #[test]
    fn x_zero_is_zero() {
        let a = SignedComposition::parse("2,1", q(0, 1)).unwrap();
        assert!(euler_sum_direct(&a, 0, 100).unwrap().is_exact());
    }

    #[test]
    fn alternating_harmonic_direct() {
        // ζ(1̄) = -log 2, within the slow direct bound
        let a = SignedComposition::parse("-1", q(1, 1)).unwrap();
        let v = euler_sum_direct(&a, 4000, 80).unwrap();
        assert!(v.overlaps(&-ln2(80)));
        assert!(v.rad() < 1e-2);
    }

    #[test]
    fn polylog_domain() {
        let p = Prec::digits(25);
        let half = ComplexBall::from_rationals(&q(1, 2), &q(0, 1), 120);
        let one = ComplexBall::one(120);
        let v = multiple_polylog_eval(&[1, 1], &[half.clone(), one.clone()], p).unwrap();
        assert!(v.re.overlaps(&ln2(120).sqr().mul_pow2(-1)));
        let two = ComplexBall::from_rationals(&q(2, 1), &q(0, 1), 120);
        assert!(matches!(
            multiple_polylog_eval(&[2], &[two], p),
            Err(Error::OutOfDomain(_))
        ));
        assert!(matches!(
            multiple_polylog_eval(&[1], &[one], p),
            Err(Error::Divergent(_))
        ));
    }

    #[test]
    fn polylog_complex_argument() {
        // Li_1(i/2) = -log(1 - i/2)
        let bits = 120;
        let z = ComplexBall::from_rationals(&q(0, 1), &q(1, 2), bits);
        let v = multiple_polylog_eval(&[1], std::slice::from_ref(&z), Prec::digits(20)).unwrap();
        let one_minus = &ComplexBall::one(bits) - &z;
        let expect = -crate::numerics::elementary::clog(&one_minus).unwrap();
        assert!(v.overlaps(&expect));
    }
}
