use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::ball::{pow2, up, Ball};
use super::complex::ComplexBall;
use crate::combinatorics::bernoulli;
use crate::error::{Error, Result};

const GUARD_BITS: u32 = 24;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Constant {
    Pi,
    Ln2,
    Gamma,
}

fn cached(c: Constant, prec: u32, compute: impl FnOnce(u32) -> Ball) -> Ball {
    static CACHE: OnceLock<Mutex<HashMap<(Constant, u32), Ball>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("constant cache poisoned").get(&(c, prec)) {
        return b.clone();
    }
    let b = compute(prec);
    cache
        .lock()
        .expect("constant cache poisoned")
        .insert((c, prec), b.clone());
    b
}

/// `atan(1/k)` for an integer `k >= 2`, as an alternating series.
fn atan_inv(k: u64, prec: u32) -> Ball {
    let kb = BigInt::from(k);
    let k2 = &kb * &kb;
    let mut pow = kb.clone();
    let mut sum = Ball::zero(prec);
    let eps = pow2(-(prec as i64) - 2);
    let mut j: u64 = 0;
    loop {
        let den = &pow * BigInt::from(2 * j + 1);
        let term = Ball::from_ratio(&BigInt::one(), &den, prec);
        if j.is_multiple_of(2) {
            sum = &sum + &term;
        } else {
            sum = &sum - &term;
        }
        pow *= &k2;
        j += 1;
        let next_den = &pow * BigInt::from(2 * j + 1);
        let next_bound = pow2(1 - next_den.bits() as i64);
        if next_bound < eps {
            // alternating with decreasing terms: error below the first omitted term
            return sum.add_error(next_bound);
        }
    }
}

/// `π = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(prec: u32) -> Ball {
    cached(Constant::Pi, prec, |p| {
        let w = p + GUARD_BITS;
        let v = &atan_inv(5, w).mul_int(16) - &atan_inv(239, w).mul_int(4);
        v.set_prec(p)
    })
}

/// `log 2 = Σ_{k>=1} 1/(k 2^k)`.
pub fn ln2(prec: u32) -> Ball {
    cached(Constant::Ln2, prec, |p| {
        let w = p + GUARD_BITS;
        let mut sum = Ball::zero(w);
        let mut k: u32 = 1;
        loop {
            let den = BigInt::from(k) << k;
            sum = &sum + &Ball::from_ratio(&BigInt::one(), &den, w);
            // tail Σ_{j>k} 1/(j 2^j) <= 1/((k+1) 2^k)
            let tail = pow2(-(k as i64)) / (k + 1) as f64;
            if tail < pow2(-(w as i64) - 2) {
                return sum.add_error(up(tail)).set_prec(p);
            }
            k += 1;
        }
    })
}

/// Euler's constant from the Euler–Maclaurin expansion of the harmonic numbers
/// at `N = 2^j`:
/// `γ = H_{N-1} - j log 2 + 1/(2N) + Σ_k B_{2k} / (2k N^{2k})`.
pub fn euler_gamma(prec: u32) -> Ball {
    cached(Constant::Gamma, prec, |p| {
        let w = p + GUARD_BITS;
        let j = (((w as f64) / 4.0).log2().ceil() as u32).max(5);
        let n: u64 = 1 << j;
        let mut h = Ball::zero(w);
        for m in 1..n {
            h = &h + &Ball::from_i64_ratio(1, m as i64, w);
        }
        let mut g = &h - &ln2(w).mul_int(j as i64);
        g = &g + &Ball::from_i64_ratio(1, 2 * n as i64, w);
        let nb = BigInt::from(n);
        let eps = pow2(-(w as i64) - 2);
        let mut g = g.set_prec(w + 16);
        let mut k: u32 = 1;
        loop {
            let b = bernoulli(2 * k);
            let den = BigInt::from(2 * k) * nb.pow(2 * k);
            let term = BigRational::new(b.numer().clone(), b.denom() * den);
            let tb = Ball::from_rational(&term, w + 16);
            let bound = tb.abs_upper();
            if bound < eps {
                // enveloping series: error below the first omitted term
                return g.add_error(bound).set_prec(p);
            }
            g = &g + &tb;
            k += 1;
            assert!(k < 4 * n as u32, "harmonic expansion did not converge");
        }
    })
}

/// `exp(x)` by argument halving, Taylor series and repeated squaring.
pub fn exp(x: &Ball) -> Ball {
    let p = x.prec();
    let mag = x.abs_upper();
    if !mag.is_finite() {
        return Ball::error_ball(f64::INFINITY, p);
    }
    let s = if mag < pow2(-10) {
        0
    } else {
        (mag.log2().ceil() as i64 + 10).max(0) as u32
    };
    let w = p + GUARD_BITS + s + (mag.max(1.0) * std::f64::consts::LOG2_E).ceil() as u32;
    let t = x.set_prec(w).mul_pow2(-(s as i32));
    let tm = t.abs_upper();
    let mut sum = Ball::one(w);
    let mut term = Ball::one(w);
    let eps = pow2(-(w as i64) - 2);
    let mut j: i64 = 1;
    let mut bound = tm;
    loop {
        term = (&term * &t).div_int(j);
        sum = &sum + &term;
        j += 1;
        bound = bound * tm / j as f64;
        if bound < eps && tm < 0.5 {
            break;
        }
    }
    // remaining terms bounded by twice the first omitted one for |t| < 1/2
    sum = sum.add_error(2.0 * bound);
    for _ in 0..s {
        sum = sum.sqr();
    }
    sum.set_prec(p)
}

/// `log(x)` for `x > 0`, via `x = 2^e y` and `log y = 2 atanh((y-1)/(y+1))`.
pub fn log(x: &Ball) -> Result<Ball> {
    if !x.is_positive() {
        return Err(Error::OutOfDomain("logarithm of a non-positive number".into()));
    }
    let p = x.prec();
    let w = p + GUARD_BITS;
    let approx = x.mid_f64();
    let e = approx.log2().round() as i32;
    let y = x.set_prec(w + e.unsigned_abs()).mul_pow2(-e).set_prec(w);
    let one = Ball::one(w);
    let u = &(&y - &one) / &(&y + &one);
    let um = u.abs_upper();
    if !(um < 0.5) {
        return Err(Error::PrecisionLoss("logarithm argument too wide".into()));
    }
    let u2 = u.sqr();
    let mut pow = u.clone();
    let mut sum = u.clone();
    let eps = pow2(-(w as i64) - 2);
    let mut k: i64 = 1;
    let mut bound = um;
    loop {
        pow = &pow * &u2;
        bound *= um * um;
        sum = &sum + &pow.div_int(2 * k + 1);
        k += 1;
        if bound / (2 * k + 1) as f64 / (1.0 - um * um) < eps {
            break;
        }
    }
    let tail = up(bound * um * um / (1.0 - um * um));
    let at = sum.add_error(tail).mul_int(2);
    let r = &at + &ln2(w).mul_int(e as i64);
    Ok(r.set_prec(p))
}

/// `(sin x, cos x)` by argument halving and the double-angle formulas.
pub fn sin_cos(x: &Ball) -> (Ball, Ball) {
    let p = x.prec();
    let mag = x.abs_upper();
    if !mag.is_finite() {
        let e = Ball::error_ball(1.0, p);
        return (e.clone(), e);
    }
    let s = if mag < pow2(-8) {
        0
    } else {
        (mag.log2().ceil() as i64 + 8).max(0) as u32
    };
    let w = p + GUARD_BITS + 2 * s;
    let t = x.set_prec(w).mul_pow2(-(s as i32));
    let tm = t.abs_upper();
    let t2 = t.sqr();
    let mut sin = t.clone();
    let mut cos = Ball::one(w);
    let mut term_s = t.clone();
    let mut term_c = Ball::one(w);
    let eps = pow2(-(w as i64) - 2);
    let mut j: i64 = 1;
    // first omitted terms |t|^3/3! and |t|^2/2!, updated as terms are added
    let mut bound_s = tm * tm * tm / 6.0;
    let mut bound_c = tm * tm / 2.0;
    loop {
        term_c = -(&term_c * &t2).div_int((2 * j - 1) * (2 * j));
        term_s = -(&term_s * &t2).div_int((2 * j) * (2 * j + 1));
        cos = &cos + &term_c;
        sin = &sin + &term_s;
        bound_c = bound_c * tm * tm / ((2 * j + 1) * (2 * j + 2)) as f64;
        bound_s = bound_s * tm * tm / ((2 * j + 2) * (2 * j + 3)) as f64;
        j += 1;
        if bound_s < eps && bound_c < eps {
            break;
        }
    }
    // alternating tails with decreasing terms once |t| < 1
    sin = sin.add_error(bound_s);
    cos = cos.add_error(bound_c);
    for _ in 0..s {
        let s2 = (&sin * &cos).mul_int(2);
        let c2 = &(&cos * &cos) - &(&sin * &sin);
        sin = s2;
        cos = c2;
    }
    (sin.set_prec(p), cos.set_prec(p))
}

pub fn sin(x: &Ball) -> Ball {
    sin_cos(x).0
}

pub fn cos(x: &Ball) -> Ball {
    sin_cos(x).1
}

/// `(sinh x, cosh x)`.
pub fn sinh_cosh(x: &Ball) -> (Ball, Ball) {
    let e = exp(x);
    let ei = exp(&-x);
    ((&e - &ei).mul_pow2(-1), (&e + &ei).mul_pow2(-1))
}

pub fn cexp(z: &ComplexBall) -> ComplexBall {
    let r = exp(&z.re);
    let (s, c) = sin_cos(&z.im);
    ComplexBall::new(&r * &c, &r * &s)
}

/// `sin(a + bi) = sin a cosh b + i cos a sinh b`.
pub fn csin(z: &ComplexBall) -> ComplexBall {
    let (s, c) = sin_cos(&z.re);
    let (sh, ch) = sinh_cosh(&z.im);
    ComplexBall::new(&s * &ch, &c * &sh)
}

/// `sin(z)/z` with `sinc 0 = 1`, using the Taylor series near the origin.
pub fn csinc(z: &ComplexBall) -> ComplexBall {
    let p = z.prec();
    let m = z.abs_upper();
    if m < 0.25 {
        let z2 = z.sqr();
        let mut sum = ComplexBall::one(p);
        let mut term = ComplexBall::one(p);
        let eps = pow2(-(p as i64) - 2);
        let mut bound = m * m / 6.0;
        let mut j: i64 = 1;
        loop {
            term = -(&term * &z2).div_int((2 * j) * (2 * j + 1));
            sum = &sum + &term;
            bound = bound * m * m / ((2 * j + 2) * (2 * j + 3)) as f64;
            j += 1;
            if bound < eps {
                return sum.add_error(2.0 * bound);
            }
        }
    }
    &csin(z) / z
}

/// The complex logarithm on the principal branch, for `Re z > 0`.
pub fn clog(z: &ComplexBall) -> Result<ComplexBall> {
    if !z.re.is_positive() {
        return Err(Error::OutOfDomain(
            "complex logarithm needs a positive real part".into(),
        ));
    }
    let re = log(&z.norm_sqr())?.mul_pow2(-1);
    let im = atan(&(&z.im / &z.re))?;
    Ok(ComplexBall::new(re, im))
}

/// `atan(x)` for `|x| <= 1` via `atan x = 2 atan(x / (1 + sqrt(1 + x²)))`.
pub fn atan(x: &Ball) -> Result<Ball> {
    let p = x.prec();
    let w = p + GUARD_BITS;
    if !(x.abs_upper() <= 1.0 + 1e-9) {
        return Err(Error::OutOfDomain("atan argument outside [-1, 1]".into()));
    }
    let one = Ball::one(w);
    let xw = x.set_prec(w);
    let mut y = xw.clone();
    let mut doublings = 0;
    while y.abs_upper() > 0.125 {
        let r = (&one + &y.sqr()).sqrt()?;
        y = &y / &(&one + &r);
        doublings += 1;
    }
    let ym = y.abs_upper();
    let y2 = y.sqr();
    let mut pow = y.clone();
    let mut sum = y.clone();
    let eps = pow2(-(w as i64) - 2);
    let mut k: i64 = 1;
    let mut bound = ym;
    loop {
        pow = -(&pow * &y2);
        bound *= ym * ym;
        sum = &sum + &pow.div_int(2 * k + 1);
        k += 1;
        if bound < eps {
            break;
        }
    }
    let r = sum.add_error(bound).mul_pow2(doublings);
    Ok(r.set_prec(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_50: &str = "3.14159265358979323846264338327950288419716939937510";
    const LN2_50: &str = "0.69314718055994530941723212145817656807550013436025";
    const GAMMA_50: &str = "0.57721566490153286060651209008240243104215933593992";
    const E_50: &str = "2.71828182845904523536028747135266249775724709369995";

    fn decimal(s: &str, prec: u32) -> Ball {
        let (int, frac) = s.split_once('.').unwrap();
        let digits = format!("{int}{frac}");
        let n: BigInt = digits.parse().unwrap();
        let d = BigInt::from(10u32).pow(frac.len() as u32);
        // the reference strings are truncated, not rounded
        Ball::from_ratio(&n, &d, prec).add_error(10f64.powi(-(frac.len() as i32)))
    }

    #[test]
    fn constants_match_references() {
        let p = 200;
        assert!(pi(p).overlaps(&decimal(PI_50, p)));
        assert!(ln2(p).overlaps(&decimal(LN2_50, p)));
        assert!(euler_gamma(p).overlaps(&decimal(GAMMA_50, p)));
        assert!(exp(&Ball::one(p)).overlaps(&decimal(E_50, p)));
        assert!(pi(p).rad() < 1e-55);
        assert!(euler_gamma(p).rad() < 1e-55);
    }

    #[test]
    fn exp_log_roundtrip() {
        let p = 150;
        for (n, d) in [(1, 3), (-7, 2), (25, 4), (1, 1000)] {
            let x = Ball::from_i64_ratio(n, d, p);
            let y = log(&exp(&x)).unwrap();
            assert!(y.overlaps(&x), "{n}/{d}");
            assert!(y.rad() < 1e-38);
        }
        assert!(log(&Ball::from_int(2, p)).unwrap().overlaps(&ln2(p)));
    }

    #[test]
    fn trig_identities() {
        let p = 150;
        let x = Ball::from_i64_ratio(7, 3, p);
        let (s, c) = sin_cos(&x);
        let one = &s.sqr() + &c.sqr();
        assert!(one.overlaps(&Ball::one(p)));
        let half_pi = pi(p).mul_pow2(-1);
        let (s1, c1) = sin_cos(&half_pi);
        assert!(s1.overlaps(&Ball::one(p)));
        assert!(c1.contains_zero());
        let a = atan(&Ball::one(p)).unwrap();
        assert!(a.mul_int(4).overlaps(&pi(p)));
    }

    #[test]
    fn complex_functions() {
        let p = 120;
        let z = ComplexBall::new(Ball::from_i64_ratio(1, 2, p), Ball::from_i64_ratio(1, 3, p));
        let e = cexp(&z);
        let l = clog(&e).unwrap();
        assert!(l.overlaps(&z));
        // sinc at x = π/2 is 2/π
        let half_pi = ComplexBall::real(pi(p).mul_pow2(-1));
        let v = csinc(&half_pi);
        assert!(v.re.overlaps(&(Ball::from_int(2, p) / pi(p))));
        let small = ComplexBall::new(Ball::from_i64_ratio(1, 10, p), Ball::from_i64_ratio(1, 20, p));
        assert!(csinc(&small).overlaps(&(&csin(&small) / &small)));
    }
}
