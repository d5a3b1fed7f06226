use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::ball::{pow2, up, Ball, Prec};
use super::elementary::pi;
use super::with_retry;
use crate::combinatorics::bernoulli;
use crate::error::{Error, Result};

const GUARD_BITS: u32 = 16;

/// The rational `r` with `ζ(s) = r π^s` for even `s ≥ 2`:
/// `r = (-1)^{s/2+1} B_s 2^{s-1} / s!`.
pub fn even_zeta_coefficient(s: u32) -> BigRational {
    assert!(s >= 2 && s.is_multiple_of(2), "even argument expected");
    let b = bernoulli(s);
    let fact: BigInt = (1..=s).map(BigInt::from).product();
    let r = b * BigRational::from_integer(BigInt::one() << (s - 1)) / BigRational::from_integer(fact);
    if (s / 2).is_multiple_of(2) {
        -r
    } else {
        r
    }
}

/// `ζ(s)` for an integer `s ≥ 2`.
///
/// Even arguments go through the exact Bernoulli expression, odd ones through
/// Euler–Maclaurin summation with a rigorous remainder bound.
pub fn zeta_riemann(s: i64, prec: Prec) -> Result<Ball> {
    if s <= 1 {
        return Err(Error::Divergent(format!("ζ({s}) has no convergent series")));
    }
    with_retry(prec, |bits| Ok(zeta_int(s as u32, bits)), Ball::rad)
}

/// `ζ(s)` at a working precision of `prec` bits.
pub fn zeta_int(s: u32, prec: u32) -> Ball {
    assert!(s >= 2);
    if s.is_multiple_of(2) {
        let w = prec + GUARD_BITS;
        let c = even_zeta_coefficient(s);
        return pi(w).pow(s).mul_rational(&c).set_prec(prec);
    }
    zeta_euler_maclaurin(s, prec)
}

/// Euler–Maclaurin evaluation
/// `ζ(s) = Σ_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2 + Σ_{k≤M} B_{2k}/(2k)! (s)_{2k-1} N^{1-s-2k} + R`
/// with `|R| ≤ 4 (s)_{2M} N^{1-s-2M} / ((2π)^{2M} (s+2M-1))`.
pub fn zeta_euler_maclaurin(s: u32, prec: u32) -> Ball {
    assert!(s >= 2);
    let w = prec + GUARD_BITS;
    let eps = pow2(-(prec as i64) - 4);
    let mut n_cut = (w / 8 + 10) as u64;
    loop {
        if let Some(v) = euler_maclaurin_at(s, n_cut, w, eps) {
            return v.set_prec(prec);
        }
        n_cut *= 2;
    }
}

fn euler_maclaurin_at(s: u32, n_cut: u64, w: u32, eps: f64) -> Option<Ball> {
    let mut sum = Ball::zero(w);
    for n in 1..n_cut {
        sum = &sum + &Ball::from_ratio(&BigInt::one(), &BigInt::from(n).pow(s), w);
    }
    let nb = BigInt::from(n_cut);
    let n_pow_s = nb.pow(s);
    // N^{1-s}/(s-1) + N^{-s}/2
    sum = &sum + &Ball::from_ratio(&nb, &(&n_pow_s * BigInt::from(s - 1)), w);
    sum = &sum + &Ball::from_ratio(&BigInt::one(), &(&n_pow_s * 2), w);

    let nf = n_cut as f64;
    let two_pi = 2.0 * std::f64::consts::PI;
    // (s)_{2k-1} N^{1-s-2k} / (2k)!, kept exactly
    let mut poch = BigInt::from(s); // (s)_{2k-1}
    let mut fact = BigInt::from(2u32); // (2k)!
    let mut npow = &n_pow_s * &nb; // N^{s+2k-1}
    // log2 of 4 (s)_{2M} N^{1-s-2M} / (2π)^{2M}, tracked in floating point
    let mut log_poch = (s as f64).log2();
    for k in 1u32..=4 * n_cut as u32 {
        let b = bernoulli(2 * k);
        let coeff = BigRational::new(b.numer() * &poch, b.denom() * &fact * &npow);
        sum = &sum + &Ball::from_rational(&coeff, w);
        // (s)_{2k} = (s)_{2k-1} (s + 2k - 1)
        log_poch += ((s + 2 * k - 1) as f64).log2();
        let log_bound = 2.0 + log_poch
            - (s as f64 + 2.0 * k as f64 - 1.0) * nf.log2()
            - 2.0 * k as f64 * two_pi.log2()
            - ((s + 2 * k - 1) as f64).log2();
        let bound = up(2f64.powf(log_bound) * (1.0 + 1e-10));
        if bound < eps {
            return Some(sum.add_error(bound));
        }
        // s + 2k - 1 grows past 2πN: the bound no longer decreases
        if (s + 2 * k) as f64 > two_pi * nf {
            return None;
        }
        poch = poch * BigInt::from(s + 2 * k - 1) * BigInt::from(s + 2 * k);
        log_poch += ((s + 2 * k) as f64).log2();
        fact = fact * BigInt::from(2 * k + 1) * BigInt::from(2 * k + 2);
        npow = npow * &nb * &nb;
    }
    None
}

/// Values `ζ(2), …, ζ(max)` at a fixed working precision.
#[derive(Clone, Debug)]
pub struct ZetaTable {
    prec: u32,
    values: Vec<Ball>,
}

impl ZetaTable {
    pub fn new(max: u32, prec: u32) -> Self {
        let values = (2..=max.max(2)).map(|s| zeta_int(s, prec)).collect();
        Self { prec, values }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn max(&self) -> u32 {
        self.values.len() as u32 + 1
    }

    /// `ζ(s)`; arguments beyond the table are computed on demand.
    pub fn get(&self, s: u32) -> Ball {
        assert!(s >= 2);
        match self.values.get((s - 2) as usize) {
            Some(v) => v.clone(),
            None => zeta_int(s, self.prec),
        }
    }
}

/// True if `Σ_{j≤r} Re(s_j) > r` for every prefix length `r`.
pub fn convergence_region(realparts: &[f64]) -> bool {
    let mut acc = 0.0;
    realparts.iter().enumerate().all(|(i, &x)| {
        acc += x;
        acc > (i + 1) as f64
    })
}

/// Floating-point upper bound for `ζ(s)`, from `ζ(s) - 1 ≤ 2^{-s} + 2^{1-s}/(s-1)`.
pub fn zeta_upper_f64(s: u32) -> f64 {
    match s {
        0 | 1 => f64::INFINITY,
        2 => 1.6449340668482264,
        3 => 1.2020569031595943,
        _ => up(1.0 + 2f64.powi(1 - s as i32) * (s as f64) / (s as f64 - 1.0)),
    }
}
