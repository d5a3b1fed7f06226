use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::ball::{format_radius, up, Ball};

/// A complex enclosure given componentwise by two real balls.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        Self { re, im }
    }

    pub fn real(re: Ball) -> Self {
        let p = re.prec();
        Self {
            re,
            im: Ball::zero(p),
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::real(Ball::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::real(Ball::one(prec))
    }

    pub fn i(prec: u32) -> Self {
        Self {
            re: Ball::zero(prec),
            im: Ball::one(prec),
        }
    }

    pub fn from_rationals(re: &BigRational, im: &BigRational, prec: u32) -> Self {
        Self {
            re: Ball::from_rational(re, prec),
            im: Ball::from_rational(im, prec),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn mul_i(&self) -> Self {
        Self {
            re: -&self.im,
            im: self.re.clone(),
        }
    }

    pub fn scale(&self, r: &Ball) -> Self {
        Self {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    pub fn mul_int(&self, n: i64) -> Self {
        Self {
            re: self.re.mul_int(n),
            im: self.im.mul_int(n),
        }
    }

    pub fn div_int(&self, n: i64) -> Self {
        Self {
            re: self.re.div_int(n),
            im: self.im.div_int(n),
        }
    }

    pub fn set_prec(&self, p: u32) -> Self {
        Self {
            re: self.re.set_prec(p),
            im: self.im.set_prec(p),
        }
    }

    /// Upper bound for the modulus of every point.
    pub fn abs_upper(&self) -> f64 {
        let a = self.re.abs_upper();
        let b = self.im.abs_upper();
        up(up(a * a + b * b).sqrt())
    }

    /// Lower bound for the modulus of every point.
    pub fn abs_lower(&self) -> f64 {
        let a = self.re.abs_lower();
        let b = self.im.abs_lower();
        super::ball::down((a * a + b * b).sqrt())
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Largest componentwise radius.
    pub fn rad(&self) -> f64 {
        self.re.rad().max(self.im.rad())
    }

    pub fn add_error(&self, e: f64) -> Self {
        Self {
            re: self.re.add_error(e),
            im: self.im.add_error(e),
        }
    }

    pub fn norm_sqr(&self) -> Ball {
        &self.re.sqr() + &self.im.sqr()
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        Self {
            re: &self.re / &n,
            im: -(&self.im / &n),
        }
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = ComplexBall::one(self.prec());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        result
    }

    pub fn overlaps(&self, other: &ComplexBall) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }

    /// Upper bound on `|self - other|` over all points of both enclosures.
    pub fn distance_upper(&self, other: &ComplexBall) -> f64 {
        (self - other).abs_upper()
    }
}

impl From<Ball> for ComplexBall {
    fn from(b: Ball) -> Self {
        ComplexBall::real(b)
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20) as u32;
        let (re, rr) = self.re.to_decimal(digits);
        let (im, ri) = self.im.to_decimal(digits);
        let (sign, im) = match im.strip_prefix('-') {
            Some(rest) => ("-", rest.to_string()),
            None => ("+", im),
        };
        write!(f, "{re} {sign} {im}i ± {}", format_radius(rr.max(ri)))
    }
}

impl Add<&ComplexBall> for &ComplexBall {
    type Output = ComplexBall;
    fn add(self, rhs: &ComplexBall) -> ComplexBall {
        ComplexBall {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub<&ComplexBall> for &ComplexBall {
    type Output = ComplexBall;
    fn sub(self, rhs: &ComplexBall) -> ComplexBall {
        ComplexBall {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Neg for &ComplexBall {
    type Output = ComplexBall;
    fn neg(self) -> ComplexBall {
        ComplexBall {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Mul<&ComplexBall> for &ComplexBall {
    type Output = ComplexBall;
    fn mul(self, rhs: &ComplexBall) -> ComplexBall {
        ComplexBall {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl std::ops::Div<&ComplexBall> for &ComplexBall {
    type Output = ComplexBall;
    fn div(self, rhs: &ComplexBall) -> ComplexBall {
        let n = rhs.norm_sqr();
        let num = self * &rhs.conj();
        ComplexBall {
            re: &num.re / &n,
            im: &num.im / &n,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr<ComplexBall> for ComplexBall {
            type Output = ComplexBall;
            fn $m(self, rhs: ComplexBall) -> ComplexBall {
                (&self).$m(&rhs)
            }
        }
        impl std::ops::$tr<&ComplexBall> for ComplexBall {
            type Output = ComplexBall;
            fn $m(self, rhs: &ComplexBall) -> ComplexBall {
                (&self).$m(rhs)
            }
        }
        impl std::ops::$tr<ComplexBall> for &ComplexBall {
            type Output = ComplexBall;
            fn $m(self, rhs: ComplexBall) -> ComplexBall {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for ComplexBall {
    type Output = ComplexBall;
    fn neg(self) -> ComplexBall {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn field_operations() {
        let p = 80;
        let z = ComplexBall::from_rationals(&q(1, 2), &q(-1, 3), p);
        let w = ComplexBall::from_rationals(&q(2, 5), &q(3, 7), p);
        let prod = &z * &w;
        // (1/2 - i/3)(2/5 + 3i/7) = 1/5 + 1/7 + i(3/14 - 2/15)
        assert!(prod.re.contains_rational(&(q(1, 5) + q(1, 7))));
        assert!(prod.im.contains_rational(&(q(3, 14) - q(2, 15))));
        let back = &prod / &w;
        assert!(back.re.contains_rational(&q(1, 2)));
        assert!(back.im.contains_rational(&q(-1, 3)));
        let isq = ComplexBall::i(p).sqr();
        assert!(isq.re.contains_rational(&q(-1, 1)));
    }
}
