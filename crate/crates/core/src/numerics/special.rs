use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ball::{pow2, up, Ball, Prec};
use super::complex::ComplexBall;
use super::elementary::{cexp, csinc, euler_gamma, ln2, pi};
use super::with_retry;
use super::zeta::ZetaTable;
use crate::error::{Error, Result};

const GUARD_BITS: u32 = 24;

/// Gauss hypergeometric series `F(a,b;c;x) = Σ (a)_n (b)_n / ((c)_n n!) x^n` for `|x| < 1`.
pub fn gauss_2f1(
    a: &ComplexBall,
    b: &ComplexBall,
    c: &ComplexBall,
    x: &Ball,
    prec: Prec,
) -> Result<ComplexBall> {
    with_retry(prec, |bits| gauss_2f1_bits(a, b, c, x, bits), ComplexBall::rad)
}

/// [`gauss_2f1`] at a fixed working precision.
///
/// Once `n > |c|`, every ratio of consecutive terms is bounded by
/// `R = max(1, (|a|+n)/(n+1)) (|b|+n)/(n-|c|) |x|`, so the tail after `n` terms
/// is at most `|t_n| / (1 - R)`.
pub fn gauss_2f1_bits(
    a: &ComplexBall,
    b: &ComplexBall,
    c: &ComplexBall,
    x: &Ball,
    bits: u32,
) -> Result<ComplexBall> {
    let xm = x.abs_upper();
    if xm >= 1.0 {
        return Err(Error::OutOfDomain(format!(
            "hypergeometric series needs |x| < 1, got |x| ≤ {xm}"
        )));
    }
    check_not_pole(c)?;
    let w = bits + GUARD_BITS;
    let (a, b, c, x) = (a.set_prec(w), b.set_prec(w), c.set_prec(w), x.set_prec(w));
    let (am, bm, cm) = (a.abs_upper(), b.abs_upper(), c.abs_upper());
    let eps = pow2(-(bits as i64) - 4);
    let mut sum = ComplexBall::one(w);
    let mut term = ComplexBall::one(w);
    let mut n: u64 = 0;
    loop {
        let nf = n as f64;
        if nf > cm + 1.0 {
            let ratio = ((am + nf) / (nf + 1.0)).max(1.0) * (bm + nf) / (nf - cm) * xm;
            let ratio = up(ratio);
            if ratio < 1.0 {
                let tail = up(term.abs_upper() / (1.0 - ratio));
                if tail < eps {
                    return Ok(sum.add_error(tail).set_prec(bits));
                }
            }
        }
        if n > 1_000_000 {
            return Err(Error::PrecisionLoss("hypergeometric series converges too slowly".into()));
        }
        let nb = ComplexBall::real(Ball::from_int(n as i64, w));
        let num = &(&a + &nb) * &(&b + &nb);
        let den = (&c + &nb).mul_int(n as i64 + 1);
        term = (&(&term * &num) / &den).scale(&x);
        sum = &sum + &term;
        n += 1;
    }
}

fn check_not_pole(c: &ComplexBall) -> Result<()> {
    if !c.im.contains_zero() {
        return Ok(());
    }
    let re = c.re.mid_f64();
    let nearest = re.round();
    if nearest <= 0.0 && c.re.overlaps(&Ball::from_int(nearest as i64, c.prec())) {
        return Err(Error::Pole(format!(
            "c = {} is a nonpositive integer",
            nearest as i64
        )));
    }
    Ok(())
}

fn rational_ball(x: &BigRational, bits: u32) -> Ball {
    Ball::from_rational(x, bits)
}

fn check_unit_interval(x: &BigRational) -> Result<()> {
    if x.is_negative() || x > &BigRational::one() {
        return Err(Error::OutOfDomain(format!("x = {x} must lie in [0, 1]")));
    }
    Ok(())
}

/// `Y_1(x, z) = F(z, -z; 1; x)` for `x ∈ [0, 1]`; at `x = 1` Gauss's summation
/// gives `1/(Γ(1-z)Γ(1+z)) = sin(πz)/(πz)`.
pub fn y1(x: &BigRational, z: &ComplexBall, bits: u32) -> Result<ComplexBall> {
    check_unit_interval(x)?;
    if x.is_one() {
        let w = bits + GUARD_BITS;
        let piz = z.set_prec(w).scale(&pi(w));
        return Ok(csinc(&piz).set_prec(bits));
    }
    gauss_2f1_bits(
        z,
        &-z,
        &ComplexBall::one(bits),
        &rational_ball(x, bits + GUARD_BITS),
        bits,
    )
}

/// `Y_2(x, z) = (1-x) F(1+z, 1-z; 2; 1-x)` for `x ∈ (0, 1]`, vanishing at `x = 1`.
pub fn y2(x: &BigRational, z: &ComplexBall, bits: u32) -> Result<ComplexBall> {
    check_unit_interval(x)?;
    if x.is_one() {
        return Ok(ComplexBall::zero(bits));
    }
    if x.is_zero() {
        return Err(Error::OutOfDomain(
            "Y2 at x = 0 needs F at argument 1, where it diverges".into(),
        ));
    }
    let w = bits + GUARD_BITS;
    let y = BigRational::one() - x;
    let one = ComplexBall::one(w);
    let zw = z.set_prec(w);
    let f = gauss_2f1_bits(
        &(&one + &zw),
        &(&one - &zw),
        &ComplexBall::real(Ball::from_int(2, w)),
        &rational_ball(&y, w),
        w,
    )?;
    Ok(f.scale(&rational_ball(&y, w)).set_prec(bits))
}

/// `ψ(1+w) = -γ + Σ_{k≥2} (-1)^k ζ(k) w^{k-1}` for `|w| < 1`.
pub fn digamma_near_one(w: &ComplexBall, prec: Prec) -> Result<ComplexBall> {
    with_retry(prec, |bits| digamma_near_one_bits(w, bits, None), ComplexBall::rad)
}

/// [`digamma_near_one`] at fixed precision, optionally sharing a ζ table.
/// With `ζ(k) ≤ 2` the tail after the `w^{K-1}` term is below `2|w|^K/(1-|w|)`.
pub fn digamma_near_one_bits(
    w: &ComplexBall,
    bits: u32,
    table: Option<&ZetaTable>,
) -> Result<ComplexBall> {
    let m = w.abs_upper();
    if m >= 1.0 {
        return Err(Error::OutOfDomain(format!("ψ(1+w) series needs |w| < 1, got {m}")));
    }
    let wp = bits + GUARD_BITS;
    let k_max = series_length(m, wp);
    let owned;
    let table = match table {
        Some(t) if t.prec() >= wp && t.max() >= k_max => t,
        _ => {
            owned = ZetaTable::new(k_max, wp);
            &owned
        }
    };
    let ww = w.set_prec(wp);
    let mut sum = ComplexBall::real(-euler_gamma(wp));
    let mut pow = ComplexBall::one(wp); // w^{k-1}
    for k in 2..=k_max {
        pow = &pow * &ww;
        let t = pow.scale(&table.get(k));
        sum = if k % 2 == 0 { &sum + &t } else { &sum - &t };
    }
    let tail = up(2.0 * m.powi(k_max as i32) / (1.0 - m));
    Ok(sum.add_error(tail).set_prec(bits))
}

/// Smallest `K` with `2 m^K / (1-m) < 2^-bits`.
fn series_length(m: f64, bits: u32) -> u32 {
    if m == 0.0 {
        return 2;
    }
    let need = (bits as f64 + 2.0 + (2.0 / (1.0 - m)).log2()) / -m.log2();
    (need.ceil() as u32 + 1).max(2)
}

/// `G(z) = ¼{ψ(1+iz) + ψ(1-iz) - ψ(1+z) - ψ(1-z)}` for `|z| < 1`.
pub fn g_kernel(z: &ComplexBall, prec: Prec) -> Result<ComplexBall> {
    with_retry(prec, |bits| g_kernel_bits(z, bits), ComplexBall::rad)
}

pub fn g_kernel_bits(z: &ComplexBall, bits: u32) -> Result<ComplexBall> {
    let wp = bits + GUARD_BITS;
    let k_max = series_length(z.abs_upper().min(0.999_999), wp + GUARD_BITS);
    let table = ZetaTable::new(k_max, wp + GUARD_BITS);
    let iz = z.mul_i();
    let psi = |w: &ComplexBall| digamma_near_one_bits(w, wp, Some(&table));
    let s = &(&psi(&iz)? + &psi(&-&iz)?) - &(&psi(z)? + &psi(&-z)?);
    Ok(s.div_int(4).set_prec(bits))
}

/// `A(z) = Γ(1/2) / (Γ(1+z/2) Γ(1/2-z/2))` for `|z| < 1` from
/// `log A(z) = -z log 2 - Σ_{k≥2} c_k ζ(k) z^k / k`, where `c_k = 1` for even `k`
/// and `c_k = 1 - 2^{1-k}` for odd `k` (expanding log Γ around 1 and 1/2).
pub fn a_of_z(z: &ComplexBall, prec: Prec) -> Result<ComplexBall> {
    with_retry(prec, |bits| a_of_z_bits(z, bits), ComplexBall::rad)
}

pub fn a_of_z_bits(z: &ComplexBall, bits: u32) -> Result<ComplexBall> {
    let m = z.abs_upper();
    if m >= 1.0 {
        return Err(Error::OutOfDomain(format!("A(z) series needs |z| < 1, got {m}")));
    }
    let wp = bits + GUARD_BITS;
    let k_max = series_length(m, wp);
    let table = ZetaTable::new(k_max, wp);
    let zw = z.set_prec(wp);
    let mut log_a = zw.scale(&-ln2(wp));
    let mut pow = zw.clone();
    for k in 2..=k_max {
        pow = &pow * &zw;
        let mut c = table.get(k);
        if k % 2 == 1 {
            c = &c - &c.mul_pow2(1 - k as i32);
        }
        log_a = &log_a - &pow.scale(&c).div_int(k as i64);
    }
    // Σ_{k>K} 2|z|^k/k ≤ 2|z|^{K+1} / ((K+1)(1-|z|))
    let tail = up(2.0 * m.powi(k_max as i32 + 1) / ((k_max as f64 + 1.0) * (1.0 - m)));
    Ok(cexp(&log_a.add_error(tail)).set_prec(bits))
}

/// `A(z)` from the product `∏_j (1 + (-1)^j z/j)`, paired as
/// `∏_m (1 - z(1+z)/(2m(2m-1)))` over `m ≤ pairs`.
///
/// The omitted factors are replaced by `exp(-z(1+z) T)` with
/// `T = log 2 - Σ_{m≤M} 1/(2m(2m-1))`; the error of that replacement is bounded
/// through `|log(1-u) + u| ≤ |u|²/(2(1-|u|))` and
/// `Σ_{m>M} (2m(2m-1))^{-2} ≤ 1/(48 (M-1/2)^3)`.
pub fn a_of_z_product(z: &ComplexBall, pairs: u64, bits: u32) -> Result<ComplexBall> {
    if pairs < 2 {
        return Err(Error::OutOfDomain("at least two factor pairs are needed".into()));
    }
    let wp = bits + GUARD_BITS;
    let zw = z.set_prec(wp);
    let c = &zw * &(&ComplexBall::one(wp) + &zw);
    let cm = c.abs_upper();
    let mut prod = ComplexBall::one(wp);
    let mut partial = Ball::zero(wp);
    for m in 1..=pairs {
        let d = (2 * m as i64) * (2 * m as i64 - 1);
        prod = &prod - &(&prod * &c).div_int(d);
        partial = &partial + &Ball::from_i64_ratio(1, d, wp);
    }
    let t = &ln2(wp) - &partial;
    let mf = pairs as f64;
    let u_max = cm / ((2.0 * mf + 2.0) * (2.0 * mf + 1.0));
    if u_max >= 0.5 {
        return Err(Error::OutOfDomain("too few factor pairs for |z(1+z)|".into()));
    }
    let delta = up(cm * cm / (2.0 * (1.0 - u_max)) / (48.0 * (mf - 0.5).powi(3)));
    let corr = cexp(&(-&c.scale(&t)).add_error(delta));
    Ok((&prod * &corr).set_prec(bits))
}

/// Both sides of `Σ_k (-1)^k t^{2kn} ζ({2n}^k) = ∏_{j<n} sinc(π t ρ^j)` with
/// `ρ = e^{iπ/n}`; the left side comes from exact rational multiples of `π^{2nk}`.
pub fn sinc_zeta_product(t: &Ball, n: u32, prec: Prec) -> Result<(Ball, ComplexBall)> {
    if n == 0 {
        return Err(Error::OutOfDomain("n must be positive".into()));
    }
    let bits = prec.check()?.bits;
    let wp = bits + GUARD_BITS;
    let tw = t.set_prec(wp);
    let p = pi(wp);

    // u = t^{2n} ζ(2n) bounds the size of the k-th term through u^k/k!
    let s = 2 * n;
    let t2n = tw.pow(s);
    let zeta_s = crate::numerics::zeta::zeta_int(s, wp);
    let u = (&t2n * &zeta_s).abs_upper();
    let pis = p.pow(s);
    let x = &t2n * &pis; // (t π)^{2n}
    let eps = pow2(-(bits as i64) - 4);
    let mut lhs = Ball::one(wp);
    let mut xpow = Ball::one(wp);
    let mut k: u32 = 1;
    let mut bound = u;
    loop {
        xpow = &xpow * &x;
        let c = crate::symbolic::period1_even_rational(s, k);
        let term = xpow.mul_rational(&c);
        lhs = if k % 2 == 1 { &lhs - &term } else { &lhs + &term };
        // u^{K+1}/(K+1)! / (1 - u/(K+2))
        bound = bound * u / (k as f64 + 1.0);
        let ratio = u / (k as f64 + 2.0);
        if ratio < 1.0 {
            let tail = up(bound / (1.0 - ratio));
            if tail < eps {
                lhs = lhs.add_error(tail);
                break;
            }
        }
        k += 1;
        if k > 100_000 {
            return Err(Error::PrecisionLoss("sinc series did not converge".into()));
        }
    }

    let mut rhs = ComplexBall::one(wp);
    let pt = &p * &tw;
    for j in 0..n {
        let angle = p.mul_int(j as i64).div_int(n as i64);
        let (sn, cs) = super::elementary::sin_cos(&angle);
        let arg = ComplexBall::new(&pt * &cs, &pt * &sn);
        rhs = &rhs * &csinc(&arg);
    }
    Ok((lhs.set_prec(bits), rhs.set_prec(bits)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn cr(n: i64, d: i64, bits: u32) -> ComplexBall {
        ComplexBall::from_rationals(&q(n, d), &q(0, 1), bits)
    }

    #[test]
    fn hypergeometric_values() {
        let bits = 120;
        let p = Prec::bits(bits);
        let half = Ball::from_i64_ratio(1, 2, bits);
        let one = cr(1, 1, bits);
        let two = cr(2, 1, bits);
        // F(1,1;2;x) = -log(1-x)/x
        let f = gauss_2f1(&one, &one, &two, &half, p).unwrap();
        assert!(f.re.overlaps(&ln2(bits).mul_int(2)));
        let z0 = cr(0, 1, bits);
        let f0 = gauss_2f1(&z0, &z0, &one, &half, p).unwrap();
        assert!(f0.re.overlaps(&Ball::one(bits)));
        let f1 = gauss_2f1(&one, &two, &one, &Ball::zero(bits), p).unwrap();
        assert!(f1.re.overlaps(&Ball::one(bits)));
        assert!(matches!(
            gauss_2f1(&one, &one, &cr(-2, 1, bits), &half, p),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn digamma_values() {
        let bits = 120;
        let p = Prec::bits(bits);
        let psi1 = digamma_near_one(&ComplexBall::zero(bits), p).unwrap();
        assert!(psi1.re.overlaps(&-euler_gamma(bits)));
        // ψ(2) = ψ(1) + 1; the series at w = 1 is outside the disc, so use
        // ψ(1+w) at w = 1/2 and the recurrence ψ(3/2) = ψ(1/2) + 2 = 2 - γ - 2 log 2
        let psi32 = digamma_near_one(&cr(1, 2, bits), p).unwrap();
        let expect = &(&Ball::from_int(2, bits) - &euler_gamma(bits)) - &ln2(bits).mul_int(2);
        assert!(psi32.re.overlaps(&expect));
        assert!(digamma_near_one(&cr(1, 1, bits), p).is_err());
    }

    #[test]
    fn g_kernel_matches_odd_zeta_series() {
        let bits = 120;
        let z = cr(3, 10, bits);
        let g = g_kernel(&z, Prec::bits(bits)).unwrap();
        // G(z) = Σ ζ(4n+3) z^{4n+2}
        let zf = Ball::from_i64_ratio(3, 10, bits + 20);
        let mut oracle = Ball::zero(bits + 20);
        for n in 0..40u32 {
            let t = &crate::numerics::zeta::zeta_int(4 * n + 3, bits + 20) * &zf.pow(4 * n + 2);
            oracle = &oracle + &t;
        }
        oracle = oracle.add_error(1e-40);
        assert!(g.re.overlaps(&oracle));
        assert!(g.im.contains_zero());
        let g_neg = g_kernel(&-&z, Prec::bits(bits)).unwrap();
        assert!(g.overlaps(&g_neg));
    }

    #[test]
    fn a_of_z_routes() {
        let bits = 100;
        let zero = a_of_z(&ComplexBall::zero(bits), Prec::bits(bits)).unwrap();
        assert!(zero.re.overlaps(&Ball::one(bits)));
        let z = cr(1, 2, bits);
        let series = a_of_z(&z, Prec::bits(bits)).unwrap();
        let product = a_of_z_product(&z, 20000, 80).unwrap();
        assert!(series.overlaps(&product));
        assert!(product.rad() < 1e-15);
        let zc = ComplexBall::from_rationals(&q(1, 5), &q(1, 4), bits);
        let s = a_of_z(&zc, Prec::bits(bits)).unwrap();
        let p = a_of_z_product(&zc, 20000, 80).unwrap();
        assert!(s.overlaps(&p));
    }

    #[test]
    fn y_functions_at_one() {
        let bits = 100;
        let z = cr(3, 10, bits);
        let a = y1(&q(1, 1), &z, bits).unwrap();
        // approach x → 1 from below with the series: F(z,-z;1;x) has a finite limit
        let b = y1(&q(99, 100), &z, bits).unwrap();
        assert!((a.re.mid_f64() - b.re.mid_f64()).abs() < 2e-2);
        assert!(y2(&q(1, 1), &z, bits).unwrap().re.is_exact());
        assert!(y1(&q(0, 1), &z, bits).unwrap().re.overlaps(&Ball::one(bits)));
    }

    #[test]
    fn sinc_product_sides() {
        let p = Prec::digits(30);
        let half = Ball::from_i64_ratio(1, 2, p.bits);
        let (l, r) = sinc_zeta_product(&half, 1, p).unwrap();
        let two_over_pi = Ball::from_int(2, p.bits) / pi(p.bits);
        assert!(l.overlaps(&two_over_pi));
        assert!(r.re.overlaps(&two_over_pi));
        let third = Ball::from_i64_ratio(1, 3, p.bits);
        let (l, r) = sinc_zeta_product(&third, 2, p).unwrap();
        assert!(r.re.overlaps(&l));
        assert!(r.im.contains_zero());
        let (l, _) = sinc_zeta_product(&Ball::zero(p.bits), 3, p).unwrap();
        assert!(l.overlaps(&Ball::one(p.bits)));
    }
}
