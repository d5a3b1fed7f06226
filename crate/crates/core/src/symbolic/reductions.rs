use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{BivariateSeries, ExactPiMultiple, Monomial, ZetaArg, ZetaPolynomial};
use crate::combinatorics::{binomial, partitions_calpha};
use crate::error::{Error, Result};
use crate::numerics::ball::{Ball, Prec};
use crate::numerics::elementary::pi;
use crate::numerics::zeta::{even_zeta_coefficient, ZetaTable};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn z(k: u32) -> ZetaPolynomial {
    ZetaPolynomial::zeta(k)
}

/// `ζ(2n)` as a rational multiple of `π^{2n}` (with `ζ(0) = -1/2`).
pub fn zeta_even_exact(n: u32) -> ExactPiMultiple {
    if n == 0 {
        return ExactPiMultiple::new(q(-1, 2), 0);
    }
    ExactPiMultiple::new(even_zeta_coefficient(2 * n), 2 * n)
}

/// The series `1 - exp{Σ_{k≥2} (x^k + y^k - (x+y)^k) ζ(k)/k}` through total degree `order`.
pub fn drin_series(order: u32) -> BivariateSeries {
    let mut e = BivariateSeries::zero(order);
    for k in 2..=order {
        // x^k + y^k - (x+y)^k = -Σ_{0<i<k} C(k,i) x^i y^{k-i}
        for i in 1..k {
            let c = BigRational::new(-binomial(k as u64, i as u64), BigInt::from(k));
            e.add_coeff(i, k - i, &z(k).scale(&c));
        }
    }
    let ex = e.exp();
    BivariateSeries::one(order).add(&ex.scale(&-BigRational::one()))
}

/// Coefficient of `x^{m+1} y^{n+1}` in [`drin_series`], which equals `ζ(m+2, {1}^n)`.
pub fn drin_coefficient(m: u32, n: u32) -> ZetaPolynomial {
    drin_series(m + n + 2).coeff(m + 1, n + 1)
}

/// `ζ(m, 1) = ½ (m ζ(m+1) - Σ_{j=1}^{m-2} ζ(m-j) ζ(j+1))`.
pub fn euler_reduction(m: u32) -> Result<ZetaPolynomial> {
    if m < 2 {
        return Err(Error::OutOfDomain(format!("ζ({m},1) needs m ≥ 2")));
    }
    let mut p = z(m + 1).scale_int(m as i64);
    for j in 1..=m.saturating_sub(2) {
        p = &p - &(&z(m - j) * &z(j + 1));
    }
    Ok(p.scale(&q(1, 2)))
}

/// Markett's expression for `ζ(s, 1, 1)`, `s ≥ 3`.
pub fn markett_reduction(s: u32) -> Result<ZetaPolynomial> {
    if s < 3 {
        return Err(Error::OutOfDomain(format!("ζ({s},1,1) needs s ≥ 3")));
    }
    let si = s as i64;
    let mut p = z(s + 2).scale(&q(si * (si + 1), 6));
    p = &p - &(&z(2) * &z(s)).scale(&q(si - 1, 2));
    if s >= 4 {
        let mut first = ZetaPolynomial::zero();
        let mut second = ZetaPolynomial::zero();
        for n in 0..=s - 4 {
            first = &first + &(&z(s - n - 1) * &z(n + 3));
            let mut inner = ZetaPolynomial::zero();
            for m in 0..=n {
                inner = &inner + &(&z(n - m + 2) * &z(m + 2));
            }
            second = &second + &(&z(s - n - 2) * &inner);
        }
        p = &p - &first.scale(&q(si, 4));
        p = &p + &second.scale(&q(1, 6));
    }
    Ok(p)
}

/// `ζ({s}^k) = (-1)^k Σ_{|α|=k} c_α^{-1} ∏ ζ(α_j s)` with `s` formal.
pub fn period1_reduce(k: u32) -> ZetaPolynomial {
    let mut out = ZetaPolynomial::zero();
    for part in partitions_calpha(k) {
        let mut mono = Monomial::one();
        for &a in &part.parts {
            mono = mono.mul(&Monomial::var(ZetaArg::Scaled(a)));
        }
        let mut c = part.c_alpha_inv();
        if k % 2 == 1 {
            c = -c;
        }
        out.add_term(mono, c);
    }
    out
}

/// `ζ({s}^k)` from Newton's recurrence `k e_k = Σ_{j=1}^k (-1)^{j+1} ζ(js) e_{k-j}`.
pub fn period1_newton(k: u32) -> ZetaPolynomial {
    let mut e = vec![ZetaPolynomial::one()];
    for n in 1..=k {
        let mut acc = ZetaPolynomial::zero();
        for j in 1..=n {
            let t = &ZetaPolynomial::symbol(ZetaArg::Scaled(j)) * &e[(n - j) as usize];
            acc = if j % 2 == 1 { &acc + &t } else { &acc - &t };
        }
        e.push(acc.scale(&q(1, n as i64)));
    }
    e.pop().unwrap()
}

/// The rational `r` with `ζ({s}^k) = r π^{sk}` for even `s`, from Newton's
/// recurrence on the exact values `ζ(js) = c_j π^{js}`.
pub fn period1_even_rational(s: u32, k: u32) -> BigRational {
    assert!(s >= 2 && s.is_multiple_of(2));
    let mut e = vec![BigRational::one()];
    for n in 1..=k {
        let mut acc = BigRational::zero();
        for j in 1..=n {
            let t = even_zeta_coefficient(j * s) * &e[(n - j) as usize];
            if j % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        e.push(acc / BigRational::from_integer(BigInt::from(n)));
    }
    e.pop().unwrap()
}

/// Named closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedFormName {
    /// `ζ({3,1}^n) = 2π^{4n}/(4n+2)!`
    Z31,
    /// `ζ({4}^n) = 4^n ζ({3,1}^n)`
    Z4Block,
    /// `ζ(3, {1,3}^n)`
    Z313,
    /// `ζ(2, {1,3}^n)`
    Z213,
    /// `ζ({2}^n) = π^{2n}/(2n+1)!`
    Z2Block,
}

impl ClosedFormName {
    pub const ALL: [ClosedFormName; 5] = [
        ClosedFormName::Z31,
        ClosedFormName::Z4Block,
        ClosedFormName::Z313,
        ClosedFormName::Z213,
        ClosedFormName::Z2Block,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedFormName::Z31 => "z31",
            ClosedFormName::Z4Block => "z4block",
            ClosedFormName::Z313 => "z313",
            ClosedFormName::Z213 => "z213",
            ClosedFormName::Z2Block => "z2block",
        }
    }

    /// The argument list the closed form evaluates.
    pub fn composition(self, n: u32) -> Vec<u32> {
        let n = n as usize;
        match self {
            ClosedFormName::Z31 => [3, 1].repeat(n),
            ClosedFormName::Z4Block => vec![4; n],
            ClosedFormName::Z313 => {
                let mut v = vec![3];
                v.extend([1, 3].repeat(n));
                v
            }
            ClosedFormName::Z213 => {
                let mut v = vec![2];
                v.extend([1, 3].repeat(n));
                v
            }
            ClosedFormName::Z2Block => vec![2; n],
        }
    }
}

impl std::str::FromStr for ClosedFormName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClosedFormName::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown closed form '{s}'")))
    }
}

/// An exact symbolic value: either a rational multiple of a power of `π` or a
/// polynomial in ζ-symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Symbolic {
    Pi(ExactPiMultiple),
    Poly(ZetaPolynomial),
}

impl fmt::Display for Symbolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbolic::Pi(p) => write!(f, "{p}"),
            Symbolic::Poly(p) => write!(f, "{p}"),
        }
    }
}

/// `ζ({3,1}^n) = 2π^{4n}/(4n+2)!`.
fn z31_exact(n: u32) -> ExactPiMultiple {
    ExactPiMultiple::new(BigRational::new(BigInt::from(2), factorial(4 * n + 2)), 4 * n)
}

/// `ζ({4}^j)` inside the ring, through `π^4 = 90 ζ(4)`:
/// `ζ({4}^j) = 4^j · 2 · 90^j ζ(4)^j / (4j+2)!`.
fn z4_block_poly(j: u32) -> ZetaPolynomial {
    let c = BigRational::new(
        BigInt::from(4u32).pow(j) * 2 * BigInt::from(90u32).pow(j),
        factorial(4 * j + 2),
    );
    z(4).pow(j).scale(&c)
}

pub fn closed_form(name: ClosedFormName, n: u32) -> Symbolic {
    match name {
        ClosedFormName::Z31 => Symbolic::Pi(z31_exact(n)),
        ClosedFormName::Z4Block => Symbolic::Pi(
            z31_exact(n).scale(&BigRational::from_integer(BigInt::from(4u32).pow(n))),
        ),
        ClosedFormName::Z2Block => Symbolic::Pi(ExactPiMultiple::new(
            BigRational::new(BigInt::one(), factorial(2 * n + 1)),
            2 * n,
        )),
        ClosedFormName::Z313 => {
            // 4^{-n} Σ_k (-1)^k ζ(4k+3) ζ({4}^{n-k})
            let mut p = ZetaPolynomial::zero();
            for k in 0..=n {
                let t = &z(4 * k + 3) * &z4_block_poly(n - k);
                p = if k % 2 == 0 { &p + &t } else { &p - &t };
            }
            Symbolic::Poly(p.scale(&BigRational::new(BigInt::one(), BigInt::from(4u32).pow(n))))
        }
        ClosedFormName::Z213 => {
            // 4^{-n} Σ_k (-1)^k ζ({4}^{n-k}) {(4k+1) ζ(4k+2) - 4 Σ_{j=1}^k ζ(4j-1) ζ(4k-4j+3)}
            let mut p = ZetaPolynomial::zero();
            for k in 0..=n {
                let mut inner = z(4 * k + 2).scale_int(4 * k as i64 + 1);
                for j in 1..=k {
                    inner = &inner - &(&z(4 * j - 1) * &z(4 * k - 4 * j + 3)).scale_int(4);
                }
                let t = &z4_block_poly(n - k) * &inner;
                p = if k % 2 == 0 { &p + &t } else { &p - &t };
            }
            Symbolic::Poly(p.scale(&BigRational::new(BigInt::one(), BigInt::from(4u32).pow(n))))
        }
    }
}

/// Numerical value of a polynomial in concrete ζ-symbols at `bits` of working precision.
pub fn evaluate_polynomial_bits(p: &ZetaPolynomial, bits: u32) -> Result<Ball> {
    let w = bits + 16;
    let mut max_arg = 2;
    for (m, _) in p.terms() {
        for a in m.0.keys() {
            match a {
                ZetaArg::Int(k) => max_arg = max_arg.max(*k),
                ZetaArg::Scaled(_) => {
                    return Err(Error::Unsupported(
                        "formal ζ(js) symbols must be instantiated before evaluation".into(),
                    ))
                }
            }
        }
    }
    let table = ZetaTable::new(max_arg, w);
    let mut total = Ball::zero(w);
    for (m, c) in p.terms() {
        let mut v = Ball::from_rational(c, w);
        for (a, &e) in &m.0 {
            if let ZetaArg::Int(k) = a {
                v = &v * &table.get(*k).pow(e);
            }
        }
        total = &total + &v;
    }
    Ok(total.set_prec(bits))
}

pub fn evaluate_pi_multiple_bits(p: &ExactPiMultiple, bits: u32) -> Ball {
    let w = bits + 16;
    pi(w).pow(p.power).mul_rational(&p.coefficient).set_prec(bits)
}

/// Substitute numerical ζ and π values.
pub fn evaluate_symbolic(value: &Symbolic, prec: Prec) -> Result<Ball> {
    crate::numerics::with_retry(
        prec,
        |bits| match value {
            Symbolic::Pi(p) => Ok(evaluate_pi_multiple_bits(p, bits)),
            Symbolic::Poly(p) => evaluate_polynomial_bits(p, bits),
        },
        Ball::rad,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_values() {
        assert_eq!(zeta_even_exact(1).to_string(), "1/6 * pi^2");
        assert_eq!(zeta_even_exact(2).to_string(), "1/90 * pi^4");
        assert_eq!(zeta_even_exact(6).power, 12);
    }

    #[test]
    fn drin_low_orders() {
        assert_eq!(drin_coefficient(0, 0), z(2));
        assert_eq!(drin_coefficient(0, 1), z(3));
        assert_eq!(drin_coefficient(1, 0), z(3));
        let s = drin_series(10);
        assert!(s.is_symmetric());
        for m in 0..=4 {
            for n in 0..=4 {
                assert!(drin_coefficient(m, n).is_homogeneous_of_weight(m + n + 2));
            }
        }
    }

    #[test]
    fn reductions_agree_with_generating_function() {
        for m in 2..=8 {
            assert_eq!(euler_reduction(m).unwrap(), drin_coefficient(m - 2, 1), "m={m}");
        }
        for s in 3..=8 {
            assert_eq!(markett_reduction(s).unwrap(), drin_coefficient(s - 2, 2), "s={s}");
        }
        assert_eq!(euler_reduction(2).unwrap(), z(3));
        assert_eq!(
            euler_reduction(4).unwrap(),
            &z(5).scale_int(2) - &(&z(2) * &z(3))
        );
        assert_eq!(
            markett_reduction(3).unwrap(),
            &z(5).scale_int(2) - &(&z(2) * &z(3))
        );
        assert!(euler_reduction(1).is_err());
        assert!(markett_reduction(2).is_err());
    }

    #[test]
    fn period_one_routes() {
        assert_eq!(period1_reduce(0), ZetaPolynomial::one());
        assert_eq!(period1_reduce(2).to_string(), "1/2 * zs^2 - 1/2 * z2s");
        assert_eq!(
            period1_reduce(3).to_string(),
            "-1/2 * zs z2s + 1/6 * zs^3 + 1/3 * z3s"
        );
        for k in 0..=8 {
            assert_eq!(period1_reduce(k), period1_newton(k), "k={k}");
        }
        // ζ({2}^k) = π^{2k}/(2k+1)!
        for k in 0..=8 {
            let r = period1_even_rational(2, k);
            assert_eq!(r, BigRational::new(BigInt::one(), factorial(2 * k + 1)));
            let via_poly = period1_reduce(k).instantiate(2).to_pi_multiple().unwrap();
            assert_eq!(via_poly.coefficient, r);
        }
    }

    #[test]
    fn closed_form_instances() {
        assert_eq!(closed_form(ClosedFormName::Z31, 1).to_string(), "1/360 * pi^4");
        assert_eq!(closed_form(ClosedFormName::Z313, 0).to_string(), "1 * z3");
        let z213 = closed_form(ClosedFormName::Z213, 1);
        let expect = (&(&(&z(4) * &z(2)) - &z(6).scale_int(5)) + &(&z(3) * &z(3)).scale_int(4))
            .scale(&q(1, 4));
        assert_eq!(z213, Symbolic::Poly(expect));
        // ζ({4}^n) = 4^n ζ({3,1}^n), with π⁴ = 90 ζ(4)
        let Symbolic::Pi(z4) = closed_form(ClosedFormName::Z4Block, 2) else { unreachable!() };
        assert_eq!(z4_block_poly(2).to_pi_multiple().unwrap(), z4);
    }

    #[test]
    fn evaluation() {
        let p = Prec::digits(20);
        let v = evaluate_symbolic(&Symbolic::Poly(z(2)), p).unwrap();
        assert!((v.mid_f64() - 1.6449340668482264).abs() < 1e-15);
        let v = evaluate_symbolic(&closed_form(ClosedFormName::Z31, 1), p).unwrap();
        assert!((v.mid_f64() - 0.2705808084277845).abs() < 1e-15);
        let zero = evaluate_symbolic(&Symbolic::Poly(ZetaPolynomial::zero()), p).unwrap();
        assert!(zero.is_exact());
        assert!(evaluate_symbolic(&Symbolic::Poly(period1_reduce(2)), p).is_err());
    }
}
