use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported working precision in bits. Radii are doubles, so
/// precision is limited by the double exponent range.
pub const MAX_BITS: u32 = 1000;

/// Guard digits added on top of the requested decimal digits.
pub const GUARD_DIGITS: u32 = 15;

/// Working precision: the number of fractional bits carried by ball
/// midpoints, together with the accuracy the caller asked for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Prec {
    pub bits: u32,
    /// Requested decimal digits; results with a larger radius are refined or rejected.
    pub digits: u32,
}

impl Prec {
    pub fn digits(d: u32) -> Self {
        let bits = ((d + GUARD_DIGITS) as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8;
        Self { bits, digits: d }
    }

    pub fn bits(b: u32) -> Self {
        let digits = ((b as f64 / std::f64::consts::LOG2_10) as u32).saturating_sub(GUARD_DIGITS);
        Self { bits: b, digits }
    }

    pub fn doubled(self) -> Self {
        Self {
            bits: self.bits * 2,
            digits: self.digits,
        }
    }

    /// The radius a result must not exceed, `10^-digits`.
    pub fn target_radius(self) -> f64 {
        10f64.powi(-(self.digits as i32))
    }

    pub fn check(self) -> Result<Self> {
        if self.bits > MAX_BITS {
            return Err(Error::Unsupported(format!(
                "working precision of {} bits exceeds the supported {MAX_BITS}",
                self.bits
            )));
        }
        Ok(self)
    }
}

/// Round an upper bound computed in floating point further upward.
pub fn up(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        x
    } else {
        x * (1.0 + 4.0 * f64::EPSILON) + f64::MIN_POSITIVE
    }
}

/// Round a lower bound computed in floating point further downward (clamped at 0).
pub fn down(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (x * (1.0 - 4.0 * f64::EPSILON) - f64::MIN_POSITIVE).max(0.0)
    }
}

/// `2^e` as a double, saturating at the ends of the range.
pub fn pow2(e: i64) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e < -1074 {
        f64::from_bits(1)
    } else if e < -1022 {
        2f64.powi(-1022) * 2f64.powi((e + 1022) as i32)
    } else {
        2f64.powi(e as i32)
    }
}

/// Upper bound for `2^l` given a floating-point exponent, saturating like [`pow2`].
pub fn exp2_up(l: f64) -> f64 {
    if l.is_nan() || l > 1023.0 {
        return f64::INFINITY;
    }
    let e = l.floor();
    up(pow2(e as i64) * (l - e).exp2())
}

/// Upper bound for `|m| · 2^-prec`.
fn mag_upper(m: &BigInt, prec: u32) -> f64 {
    let bits = m.bits();
    if bits == 0 {
        return 0.0;
    }
    if bits <= 53 {
        return up(m.abs().to_f64().unwrap() * pow2(-(prec as i64)));
    }
    let shift = bits - 53;
    let top = (m.abs() >> shift).to_f64().unwrap() + 1.0;
    up(top * pow2(shift as i64 - prec as i64))
}

/// Lower bound for `|m| · 2^-prec`.
fn mag_lower(m: &BigInt, prec: u32) -> f64 {
    let bits = m.bits();
    if bits == 0 {
        return 0.0;
    }
    if bits <= 53 {
        return down(m.abs().to_f64().unwrap() * pow2(-(prec as i64)));
    }
    let shift = bits - 53;
    let top = (m.abs() >> shift).to_f64().unwrap();
    down(top * pow2(shift as i64 - prec as i64))
}

/// `round(m / 2^s)` to nearest, and whether the result is inexact.
fn round_shift(m: &BigInt, s: u32) -> (BigInt, bool) {
    if s == 0 {
        return (m.clone(), false);
    }
    let half = BigInt::one() << (s - 1);
    let q = (m + &half) >> s;
    let exact = (&q << s) == *m;
    (q, !exact)
}

/// `round(num / den)` to nearest for `den > 0`, and whether the result is inexact.
fn round_div(num: &BigInt, den: &BigInt) -> (BigInt, bool) {
    let (q, r) = num.div_mod_floor(den);
    if r.is_zero() {
        return (q, false);
    }
    let twice: BigInt = &r << 1;
    if twice >= *den {
        (q + 1, true)
    } else {
        (q, true)
    }
}

/// A real interval `[mid - rad, mid + rad]` with a fixed-point midpoint
/// `mid · 2^-prec` and a double radius rounded upward.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    mid: BigInt,
    prec: u32,
    rad: f64,
}

impl Ball {
    pub fn zero(prec: u32) -> Self {
        Self {
            mid: BigInt::zero(),
            prec,
            rad: 0.0,
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Self::from_bigint(&BigInt::from(n), prec)
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        Self {
            mid: n << prec,
            prec,
            rad: 0.0,
        }
    }

    /// The rational `num/den`, rounded to nearest at `prec`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        let (mid, inexact) = round_div(&(num << prec), &den);
        Self {
            mid,
            prec,
            rad: if inexact { pow2(-(prec as i64) - 1) } else { 0.0 },
        }
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        Self::from_ratio(r.numer(), r.denom(), prec)
    }

    pub fn from_i64_ratio(num: i64, den: i64, prec: u32) -> Self {
        Self::from_ratio(&BigInt::from(num), &BigInt::from(den), prec)
    }

    /// Exact enclosure of a double.
    pub fn from_f64(x: f64, prec: u32) -> Self {
        let r = BigRational::from_float(x).expect("finite double");
        Self::from_rational(&r, prec)
    }

    /// A ball with explicit midpoint `mid · 2^-prec` and radius.
    pub fn from_parts(mid: BigInt, prec: u32, rad: f64) -> Self {
        assert!(rad >= 0.0, "negative radius");
        Self { mid, prec, rad }
    }

    /// `[-r, r]`.
    pub fn error_ball(r: f64, prec: u32) -> Self {
        Self {
            mid: BigInt::zero(),
            prec,
            rad: up(r),
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn rad(&self) -> f64 {
        self.rad
    }

    pub fn mid_raw(&self) -> &BigInt {
        &self.mid
    }

    pub fn mid_rational(&self) -> BigRational {
        BigRational::new(self.mid.clone(), BigInt::one() << self.prec)
    }

    pub fn mid_f64(&self) -> f64 {
        let bits = self.mid.bits();
        if bits <= 53 {
            return self.mid.to_f64().unwrap() * pow2(-(self.prec as i64));
        }
        let shift = bits - 53;
        (&self.mid >> shift).to_f64().unwrap() * pow2(shift as i64 - self.prec as i64)
    }

    pub fn is_exact(&self) -> bool {
        self.rad == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.rad.is_finite()
    }

    /// Upper bound for every `|x|` in the ball.
    pub fn abs_upper(&self) -> f64 {
        up(mag_upper(&self.mid, self.prec) + self.rad)
    }

    /// Lower bound for every `|x|` in the ball (0 if the ball contains 0).
    pub fn abs_lower(&self) -> f64 {
        down(mag_lower(&self.mid, self.prec) - self.rad)
    }

    pub fn contains_zero(&self) -> bool {
        mag_lower(&self.mid, self.prec) <= self.rad
    }

    /// True if every point of the ball is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.mid.is_positive() && !self.contains_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mid.is_negative() && !self.contains_zero()
    }

    pub fn add_error(&self, e: f64) -> Self {
        Self {
            mid: self.mid.clone(),
            prec: self.prec,
            rad: up(self.rad + e),
        }
    }

    /// Change the midpoint precision, rounding if it decreases.
    pub fn set_prec(&self, prec: u32) -> Self {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => Self {
                mid: &self.mid << (prec - self.prec),
                prec,
                rad: self.rad,
            },
            Ordering::Less => {
                let (mid, inexact) = round_shift(&self.mid, self.prec - prec);
                let extra = if inexact { pow2(-(prec as i64) - 1) } else { 0.0 };
                Self {
                    mid,
                    prec,
                    rad: up(self.rad + extra),
                }
            }
        }
    }

    fn aligned(&self, other: &Ball) -> (BigInt, BigInt, u32) {
        let p = self.prec.max(other.prec);
        (
            &self.mid << (p - self.prec),
            &other.mid << (p - other.prec),
            p,
        )
    }

    pub fn abs(&self) -> Ball {
        if self.contains_zero() {
            // [0, |mid| + rad], centred
            let hi = self.abs_upper();
            return Ball::from_f64(hi / 2.0, self.prec).add_error(hi / 2.0);
        }
        Ball {
            mid: self.mid.abs(),
            prec: self.prec,
            rad: self.rad,
        }
    }

    pub fn mul_int(&self, n: i64) -> Ball {
        Ball {
            mid: &self.mid * n,
            prec: self.prec,
            rad: up(self.rad * (n.unsigned_abs() as f64)),
        }
    }

    pub fn mul_bigint(&self, n: &BigInt) -> Ball {
        Ball {
            mid: &self.mid * n,
            prec: self.prec,
            rad: up(self.rad * mag_upper(n, 0)),
        }
    }

    /// Multiply by `2^e` exactly (only the representation changes for `e < 0`).
    pub fn mul_pow2(&self, e: i32) -> Ball {
        if e >= 0 {
            Ball {
                mid: &self.mid << e as u32,
                prec: self.prec,
                rad: up(self.rad * pow2(e as i64)),
            }
        } else {
            Ball {
                mid: self.mid.clone(),
                prec: self.prec + (-e) as u32,
                rad: up(self.rad * pow2(e as i64)),
            }
            .set_prec(self.prec)
        }
    }

    pub fn div_int(&self, n: i64) -> Ball {
        self.div_bigint(&BigInt::from(n))
    }

    pub fn div_bigint(&self, n: &BigInt) -> Ball {
        assert!(!n.is_zero(), "division by zero");
        let (num, den) = if n.is_negative() {
            (-&self.mid, -n)
        } else {
            (self.mid.clone(), n.clone())
        };
        let (mid, inexact) = round_div(&num, &den);
        let extra = if inexact { pow2(-(self.prec as i64) - 1) } else { 0.0 };
        Ball {
            mid,
            prec: self.prec,
            rad: up(self.rad / down(mag_lower(&den, 0)) + extra),
        }
    }

    pub fn mul_rational(&self, r: &BigRational) -> Ball {
        self.mul_bigint(r.numer()).div_bigint(r.denom())
    }

    pub fn sqr(&self) -> Ball {
        self * self
    }

    pub fn pow(&self, n: u32) -> Ball {
        let mut result = Ball::one(self.prec);
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

    /// `1/x`; the radius is infinite if the ball contains zero.
    pub fn inv(&self) -> Ball {
        &Ball::one(self.prec) / self
    }

    /// Square root of a nonnegative ball.
    pub fn sqrt(&self) -> Result<Ball> {
        if self.is_negative() {
            return Err(Error::OutOfDomain("square root of a negative number".into()));
        }
        let p = self.prec;
        let m = if self.mid.is_negative() {
            BigInt::zero()
        } else {
            self.mid.clone()
        };
        // sqrt(m 2^-p) = sqrt(m 2^p) 2^-p
        let s = (m << p).sqrt();
        let mid = Ball {
            mid: s,
            prec: p,
            rad: pow2(-(p as i64)),
        };
        if self.rad == 0.0 {
            return Ok(mid);
        }
        let lo = self.abs_lower();
        let extra = if lo > 0.0 {
            // |sqrt(x) - sqrt(y)| <= |x - y| / (2 sqrt(min))
            self.rad / (2.0 * down(lo.sqrt()))
        } else {
            up(self.rad.sqrt()) * 2.0
        };
        Ok(mid.add_error(extra))
    }

    /// Ball hull containing both operands.
    pub fn union(&self, other: &Ball) -> Ball {
        let d = (self - other).abs_upper();
        let r = up(self.rad.max(other.rad) + d);
        self.add_error(r - self.rad)
    }

    /// True if the two balls intersect.
    pub fn overlaps(&self, other: &Ball) -> bool {
        (self - other).contains_zero()
    }

    /// True if `other` lies inside `self`.
    pub fn contains(&self, other: &Ball) -> bool {
        let (a, b, p) = self.aligned(other);
        let d = mag_upper(&(a - b), p);
        up(d + other.rad) <= self.rad
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        let exact = Ball::from_rational(r, self.prec + 64);
        self.contains(&exact)
    }

    /// Upper bound on `|self - other|` over all points of both balls.
    pub fn distance_upper(&self, other: &Ball) -> f64 {
        (self - other).abs_upper()
    }

    /// Midpoint rounded to `digits` decimals and a radius that also covers
    /// the decimal rounding.
    pub fn to_decimal(&self, digits: u32) -> (String, f64) {
        let scale = BigInt::from(10u32).pow(digits);
        let (scaled, inexact) = round_div(&(&self.mid * &scale), &(BigInt::one() << self.prec));
        let rounding = if inexact {
            0.5 * 10f64.powi(-(digits as i32))
        } else {
            0.0
        };
        (format_scaled(&scaled, digits), up(self.rad + rounding))
    }
}

/// `n / 10^digits` as a decimal string.
pub fn format_scaled(n: &BigInt, digits: u32) -> String {
    let neg = n.sign() == Sign::Minus;
    let s = n.abs().to_string();
    let d = digits as usize;
    let body = if d == 0 {
        s
    } else if s.len() > d {
        format!("{}.{}", &s[..s.len() - d], &s[s.len() - d..])
    } else {
        format!("0.{}{}", "0".repeat(d - s.len()), s)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// A radius printed with two significant digits, rounded upward.
pub fn format_radius(r: f64) -> String {
    if r == 0.0 {
        return "0".to_string();
    }
    if !r.is_finite() {
        return "inf".to_string();
    }
    let mut e = r.log10().floor() as i32;
    let mut m = r / 10f64.powi(e);
    if m >= 10.0 {
        m /= 10.0;
        e += 1;
    }
    let mut m_up = (m * 10.0 * (1.0 + 1e-12)).ceil() / 10.0;
    if m_up >= 10.0 {
        m_up /= 10.0;
        e += 1;
    }
    format!("{m_up:.1}e{e}")
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20) as u32;
        let (m, r) = self.to_decimal(digits);
        write!(f, "{m} ± {}", format_radius(r))
    }
}

impl Add<&Ball> for &Ball {
    type Output = Ball;
    fn add(self, rhs: &Ball) -> Ball {
        let (a, b, p) = self.aligned(rhs);
        Ball {
            mid: a + b,
            prec: p,
            rad: up(self.rad + rhs.rad),
        }
    }
}

impl Sub<&Ball> for &Ball {
    type Output = Ball;
    fn sub(self, rhs: &Ball) -> Ball {
        let (a, b, p) = self.aligned(rhs);
        Ball {
            mid: a - b,
            prec: p,
            rad: up(self.rad + rhs.rad),
        }
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball {
            mid: -&self.mid,
            prec: self.prec,
            rad: self.rad,
        }
    }
}

impl Mul<&Ball> for &Ball {
    type Output = Ball;
    fn mul(self, rhs: &Ball) -> Ball {
        let p = self.prec.max(rhs.prec);
        let prod = &self.mid * &rhs.mid;
        let (mid, inexact) = round_shift(&prod, self.prec + rhs.prec - p);
        let ma = mag_upper(&self.mid, self.prec);
        let mb = mag_upper(&rhs.mid, rhs.prec);
        let mut rad = ma * rhs.rad + mb * self.rad + self.rad * rhs.rad;
        if inexact {
            rad += pow2(-(p as i64) - 1);
        }
        Ball {
            mid,
            prec: p,
            rad: up(up(rad)),
        }
    }
}

impl std::ops::Div<&Ball> for &Ball {
    type Output = Ball;
    fn div(self, rhs: &Ball) -> Ball {
        let p = self.prec.max(rhs.prec);
        let lower = rhs.abs_lower();
        if lower == 0.0 {
            return Ball {
                mid: BigInt::zero(),
                prec: p,
                rad: f64::INFINITY,
            };
        }
        let (num, den) = if rhs.mid.is_negative() {
            (-&self.mid, -&rhs.mid)
        } else {
            (self.mid.clone(), rhs.mid.clone())
        };
        let (mid, inexact) = round_div(&(num << (p + rhs.prec - self.prec)), &den);
        let q = mag_upper(&self.mid, self.prec) / down(mag_lower(&rhs.mid, rhs.prec));
        let mut rad = up(self.rad + up(q) * rhs.rad) / lower;
        if inexact {
            rad += pow2(-(p as i64) - 1);
        }
        Ball {
            mid,
            prec: p,
            rad: up(up(rad)),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr<Ball> for Ball {
            type Output = Ball;
            fn $m(self, rhs: Ball) -> Ball {
                (&self).$m(&rhs)
            }
        }
        impl std::ops::$tr<&Ball> for Ball {
            type Output = Ball;
            fn $m(self, rhs: &Ball) -> Ball {
                (&self).$m(rhs)
            }
        }
        impl std::ops::$tr<Ball> for &Ball {
            type Output = Ball;
            fn $m(self, rhs: Ball) -> Ball {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        -&self
    }
}
