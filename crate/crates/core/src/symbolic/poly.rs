use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::numerics::zeta::even_zeta_coefficient;

/// The argument of a ζ-symbol: a concrete integer `k ≥ 2`, or `j·s` for a
/// formal variable `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ZetaArg {
    Int(u32),
    Scaled(u32),
}

impl fmt::Display for ZetaArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZetaArg::Int(k) => write!(f, "z{k}"),
            ZetaArg::Scaled(1) => write!(f, "zs"),
            ZetaArg::Scaled(j) => write!(f, "z{j}s"),
        }
    }
}

/// A product of ζ-symbols, stored as symbol → exponent (no zero exponents).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub BTreeMap<ZetaArg, u32>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(a: ZetaArg) -> Self {
        let mut m = BTreeMap::new();
        m.insert(a, 1);
        Self(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    /// Sum of the integer arguments with multiplicity; `None` if a formal symbol occurs.
    pub fn weight(&self) -> Option<u32> {
        let mut w = 0;
        for (a, &e) in &self.0 {
            match a {
                ZetaArg::Int(k) => w += k * e,
                ZetaArg::Scaled(_) => return None,
            }
        }
        Some(w)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (&a, &e) in &other.0 {
            *out.entry(a).or_insert(0) += e;
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, &e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if e == 1 {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial with rational coefficients in the symbols `ζ(k)`.
///
/// Symbols are atomic: `ζ(4)` is never rewritten as a multiple of `π^4`
/// inside the ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZetaPolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl ZetaPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The symbol `ζ(k)`.
    pub fn zeta(k: u32) -> Self {
        assert!(k >= 2, "ζ-symbols need arguments ≥ 2");
        Self::symbol(ZetaArg::Int(k))
    }

    pub fn symbol(a: ZetaArg) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(a), BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// The set of monomial weights; a homogeneous polynomial has exactly one.
    pub fn weights(&self) -> Vec<Option<u32>> {
        let mut w: Vec<Option<u32>> = self.terms.keys().map(Monomial::weight).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    pub fn is_homogeneous_of_weight(&self, weight: u32) -> bool {
        self.terms.keys().all(|m| m.weight() == Some(weight))
    }

    /// Replace every symbol `ζ(j·s)` by `ζ(j·s₀)`.
    pub fn instantiate(&self, s: u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut mono = BTreeMap::new();
            for (&a, &e) in &m.0 {
                let k = match a {
                    ZetaArg::Int(k) => k,
                    ZetaArg::Scaled(j) => j * s,
                };
                *mono.entry(ZetaArg::Int(k)).or_insert(0) += e;
            }
            out.add_term(Monomial(mono), c.clone());
        }
        out
    }

    /// The exact value `c·π^m`, if every symbol has an even argument and all
    /// monomials have the same weight.
    pub fn to_pi_multiple(&self) -> Option<ExactPiMultiple> {
        if self.is_zero() {
            return Some(ExactPiMultiple::zero());
        }
        let mut power = None;
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let w = m.weight()?;
            if m.0.keys().any(|a| matches!(a, ZetaArg::Int(k) if k % 2 == 1)) {
                return None;
            }
            match power {
                None => power = Some(w),
                Some(p) if p != w => return None,
                _ => {}
            }
            let mut v = c.clone();
            for (a, &e) in &m.0 {
                if let ZetaArg::Int(k) = a {
                    v *= num_traits::pow(even_zeta_coefficient(*k), e as usize);
                }
            }
            total += v;
        }
        Some(ExactPiMultiple::new(total, power.unwrap_or(0)))
    }
}

impl fmt::Display for ZetaPolynomial {
    /// Sorted monomial list `c * z2^a z3^b …`, unit coefficients written as `1 * …`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag} * {m}")?;
            }
        }
        Ok(())
    }
}

impl Add<&ZetaPolynomial> for &ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn add(self, rhs: &ZetaPolynomial) -> ZetaPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&ZetaPolynomial> for &ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn sub(self, rhs: &ZetaPolynomial) -> ZetaPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn neg(self) -> ZetaPolynomial {
        self.scale(&-BigRational::one())
    }
}

impl Mul<&ZetaPolynomial> for &ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn mul(self, rhs: &ZetaPolynomial) -> ZetaPolynomial {
        let mut out = ZetaPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ZetaPolynomial> for ZetaPolynomial {
            type Output = ZetaPolynomial;
            fn $m(self, rhs: ZetaPolynomial) -> ZetaPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ZetaPolynomial> for ZetaPolynomial {
            type Output = ZetaPolynomial;
            fn $m(self, rhs: &ZetaPolynomial) -> ZetaPolynomial {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// An exact value `coefficient · π^power`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactPiMultiple {
    pub coefficient: BigRational,
    pub power: u32,
}

impl ExactPiMultiple {
    pub fn new(coefficient: BigRational, power: u32) -> Self {
        if coefficient.is_zero() {
            return Self::zero();
        }
        Self { coefficient, power }
    }

    pub fn zero() -> Self {
        Self {
            coefficient: BigRational::zero(),
            power: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.coefficient * c, self.power)
    }
}

impl fmt::Display for ExactPiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * pi^{}", self.coefficient, self.power)
    }
}

/// A truncated power series in two variables with polynomial coefficients:
/// `(i, j)` ↦ coefficient of `x^i y^j`, for `i + j ≤ order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    pub order: u32,
    pub coeffs: BTreeMap<(u32, u32), ZetaPolynomial>,
}

impl BivariateSeries {
    pub fn zero(order: u32) -> Self {
        Self {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        let mut s = Self::zero(order);
        s.coeffs.insert((0, 0), ZetaPolynomial::one());
        s
    }

    pub fn coeff(&self, i: u32, j: u32) -> ZetaPolynomial {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn add_coeff(&mut self, i: u32, j: u32, p: &ZetaPolynomial) {
        if i + j > self.order || p.is_zero() {
            return;
        }
        let e = self.coeffs.entry((i, j)).or_default();
        *e = &*e + p;
        if e.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn add(&self, other: &BivariateSeries) -> BivariateSeries {
        let mut out = self.clone();
        out.order = self.order.min(other.order);
        out.coeffs.retain(|&(i, j), _| i + j <= out.order);
        for (&(i, j), p) in &other.coeffs {
            out.add_coeff(i, j, p);
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> BivariateSeries {
        let mut out = Self::zero(self.order);
        for (&(i, j), p) in &self.coeffs {
            out.add_coeff(i, j, &p.scale(c));
        }
        out
    }

    /// Product truncated at the smaller order.
    pub fn mul(&self, other: &BivariateSeries) -> BivariateSeries {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for (&(i1, j1), p1) in &self.coeffs {
            for (&(i2, j2), p2) in &other.coeffs {
                if i1 + i2 + j1 + j2 <= order {
                    out.add_coeff(i1 + i2, j1 + j2, &(p1 * p2));
                }
            }
        }
        out
    }

    /// `exp(self)` for a series without constant term.
    pub fn exp(&self) -> BivariateSeries {
        assert!(self.coeff(0, 0).is_zero(), "exp needs a series without constant term");
        let mut out = Self::one(self.order);
        let mut power = Self::one(self.order);
        for n in 1..=self.order {
            power = power.mul(self).scale(&BigRational::new(BigInt::one(), BigInt::from(n)));
            if power.coeffs.is_empty() {
                break;
            }
            out = out.add(&power);
        }
        out
    }

    /// True if the coefficient of `x^i y^j` equals that of `x^j y^i` everywhere.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(&(i, j), p)| self.coeff(j, i) == *p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn ring_operations() {
        let z2 = ZetaPolynomial::zeta(2);
        let z3 = ZetaPolynomial::zeta(3);
        let p = &(&z2 * &z3).scale(&q(-1, 1)) + &ZetaPolynomial::zeta(5).scale_int(2);
        assert_eq!(p.to_string(), "-1 * z2 z3 + 2 * z5");
        assert!(p.is_homogeneous_of_weight(5));
        assert!((&p - &p).is_zero());
        assert_eq!(ZetaPolynomial::zero().to_string(), "0");
        assert_eq!(z2.pow(2).to_string(), "1 * z2^2");
    }

    #[test]
    fn pi_conversion() {
        // (3ζ(4) - ζ(2)²)/2 = π⁴/360
        let z2 = ZetaPolynomial::zeta(2);
        let p = (&ZetaPolynomial::zeta(4).scale_int(3) - &z2.pow(2)).scale(&q(1, 2));
        assert_eq!(p.to_pi_multiple(), Some(ExactPiMultiple::new(q(1, 360), 4)));
        assert_eq!(p.to_pi_multiple().unwrap().to_string(), "1/360 * pi^4");
        assert!(ZetaPolynomial::zeta(3).to_pi_multiple().is_none());
    }

    #[test]
    fn formal_instantiation() {
        let p = &ZetaPolynomial::symbol(ZetaArg::Scaled(1)).pow(2)
            - &ZetaPolynomial::symbol(ZetaArg::Scaled(2));
        assert_eq!(p.to_string(), "1 * zs^2 - 1 * z2s");
        assert_eq!(p.instantiate(2).to_string(), "1 * z2^2 - 1 * z4");
    }
}
