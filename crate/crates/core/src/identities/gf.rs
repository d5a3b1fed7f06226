use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mzv::{drin_check, Mzv};
use super::{params, CheckResult, CheckValue, Params, GF_TOLERANCE, MZV_TOLERANCE};
use crate::error::{Error, Result};
use crate::numerics::ball::up;
use crate::numerics::elementary::exp;
use crate::numerics::euler_sum::euler_sum_bits;
use crate::numerics::special::{a_of_z_bits, g_kernel_bits};
use crate::numerics::zeta::ZetaTable;
use crate::numerics::{a_of_z_product, sinc_zeta_product, y1, y2, Ball, ComplexBall, Prec, SignedComposition};
use crate::word_algebra::Composition;

/// The generating-function identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GfFamily {
    /// `Σ (-1)^n z^{4n} 4^n ζ_x({3,1}^n) = Y_1(x,z) Y_1(x,iz)`
    Zfact,
    /// `Σ (-1)^n z^{4n+2} 4^n ζ_x(3,{1,3}^n)` in terms of `G`, `Y_1`, `Y_2`
    Z313gf,
    /// `Σ t^{2n} ζ_x({1̄,1}^n) + t^{2n+1} ζ_x(1̄,{1,1̄}^n) = U(s,-z)U(s,iz)/(A(-z)A(iz))`
    Mgf,
    /// `ζ(m+2,{1}^n)` against the bivariate series coefficient
    Drin,
    /// `Σ_k t^{ks} ζ({s}^k) = ∏_j (1 + t^s/j^s)`
    Period1,
    /// `Σ_k (-1)^k t^{2kn} ζ({2n}^k) = ∏_{j<n} sinc(π t ρ^j)`
    Sincs,
    /// `Σ_n z^n ζ({1̄}^n) = ∏_j (1 + (-1)^j z/j) = Γ(1/2)/(Γ(1+z/2)Γ(1/2-z/2))`
    Adef,
}

impl GfFamily {
    pub const ALL: [GfFamily; 7] = [
        GfFamily::Zfact,
        GfFamily::Z313gf,
        GfFamily::Mgf,
        GfFamily::Drin,
        GfFamily::Period1,
        GfFamily::Sincs,
        GfFamily::Adef,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GfFamily::Zfact => "zfact",
            GfFamily::Z313gf => "z313gf",
            GfFamily::Mgf => "mgf",
            GfFamily::Drin => "drin",
            GfFamily::Period1 => "period1",
            GfFamily::Sincs => "sincs",
            GfFamily::Adef => "adef",
        }
    }

    /// Default truncation order of the left-hand series.
    pub fn default_trunc(self) -> u32 {
        match self {
            GfFamily::Zfact => 6,
            GfFamily::Z313gf => 8,
            GfFamily::Mgf => 14,
            GfFamily::Period1 => 10,
            GfFamily::Adef => 24,
            GfFamily::Drin | GfFamily::Sincs => 0,
        }
    }
}

impl fmt::Display for GfFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GfFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GfFamily::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown generating-function family '{s}'")))
    }
}

/// Parameters of a generating-function check. `z` doubles as `t` for the
/// families written in `t`; `m`, `n` and `s` are used by `drin`, `sincs` and
/// `period1`.
#[derive(Clone, Debug, PartialEq)]
pub struct GfParams {
    pub x: BigRational,
    pub z: BigRational,
    pub trunc: u32,
    pub m: u32,
    pub n: u32,
    pub s: u32,
}

impl GfParams {
    pub fn defaults(family: GfFamily) -> Self {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let (z, n) = match family {
            GfFamily::Sincs => (r(1, 2), 1),
            _ => (r(3, 10), 1),
        };
        Self {
            x: r(1, 2),
            z,
            trunc: family.default_trunc(),
            m: 1,
            n,
            s: 3,
        }
    }
}

/// Runs one generating-function identity. The left side carries a rigorous
/// truncation bound in its radius, except for `mgf` at `x = 1`, where the
/// omitted tail is estimated from the next two coefficients and the tolerance
/// is relaxed to `1e-6`.
pub fn check_generating_function(family: GfFamily, p: &GfParams, prec: Prec) -> Result<CheckResult> {
    let prec = prec.check()?;
    if p.x.is_negative() || p.x > BigRational::one() {
        return Err(Error::OutOfDomain(format!("x = {} must lie in [0, 1]", p.x)));
    }
    match family {
        GfFamily::Zfact => zfact(p, prec.bits),
        GfFamily::Z313gf => z313gf(p, prec.bits),
        GfFamily::Mgf => mgf(p, prec.bits),
        GfFamily::Drin => drin_check(p.m, p.n, prec),
        GfFamily::Period1 => period1(p, prec),
        GfFamily::Sincs => sincs(p, prec),
        GfFamily::Adef => adef(p, prec),
    }
}

fn base_params(family: GfFamily, p: &GfParams, var: &str) -> Params {
    params([
        ("family", family.name().to_string()),
        ("x", p.x.to_string()),
        (var, p.z.to_string()),
        ("N", p.trunc.to_string()),
    ])
}

fn zeta_x(parts: Vec<(u32, i8)>, x: &BigRational, bits: u32) -> Result<Ball> {
    if parts.is_empty() {
        return Ok(Ball::one(bits));
    }
    euler_sum_bits(&SignedComposition::new(parts, x.clone())?, bits)
}

/// Upper bound for `|ζ_x(s; σ)|` of depth `k`: `ζ_x ≤ ζ_x({1}^k) = L^k/k!` with
/// `L = -log(1-x)` for `x < 1`, and `ζ_x(s) ≤ x^k ζ(k+1) ≤ 2x^k` when `s_1 ≥ 2`
/// (every `n_1 ≥ k` and the sum decreases in each `s_j`).
fn coefficient_bound(parts: &[(u32, i8)], x: f64) -> Option<f64> {
    let k = parts.len();
    if k == 0 {
        return Some(1.0);
    }
    let mut b = f64::INFINITY;
    if x < 1.0 {
        let l = -(1.0 - x).ln();
        b = (1..=k).fold(1.0, |acc, j| acc * l / j as f64);
    }
    if parts[0].0 >= 2 {
        b = b.min(2.0 * x.powi(k as i32));
    }
    b.is_finite().then(|| up(b * 1.01))
}

/// `Σ_{n>N} bound(n)`, summed explicitly until the terms vanish and closed
/// by a geometric remainder once consecutive bounds shrink by at least half.
fn tail_sum(from: u32, bound: impl Fn(u32) -> Option<f64>) -> Option<f64> {
    let mut acc = 0.0;
    let mut prev = f64::INFINITY;
    for n in from..from + 2000 {
        let t = bound(n)?;
        acc += t;
        if t == 0.0 || (t <= 0.5 * prev && t < 1e-300_f64.max(acc * 1e-20)) {
            return Some(up(acc + 2.0 * t));
        }
        prev = t;
    }
    None
}

fn no_bound() -> Error {
    Error::OutOfDomain("no truncation bound is available at these parameters".into())
}

fn real(b: Ball) -> ComplexBall {
    ComplexBall::real(b)
}

fn rational_complex(re: &BigRational, im: &BigRational, bits: u32) -> ComplexBall {
    ComplexBall::from_rationals(re, im, bits)
}

fn z31_parts(n: u32) -> Vec<(u32, i8)> {
    [(3, 1), (1, 1)].repeat(n as usize)
}

fn z313_parts(n: u32) -> Vec<(u32, i8)> {
    let mut v = vec![(3, 1)];
    v.extend([(1, 1), (3, 1)].repeat(n as usize));
    v
}

fn zfact(p: &GfParams, bits: u32) -> Result<CheckResult> {
    let start = Instant::now();
    let w = bits + 20;
    let four = BigRational::from_integer(4.into());
    let z4 = num_traits::pow(p.z.clone(), 4);
    let mut lhs = Ball::zero(w);
    for n in 0..=p.trunc {
        let c = zeta_x(z31_parts(n), &p.x, w)?;
        let mut f = num_traits::pow(&four * &z4, n as usize);
        if n % 2 == 1 {
            f = -f;
        }
        lhs = &lhs + &c.mul_rational(&f);
    }
    let (xf, zf) = (p.x.to_f64().unwrap(), p.z.abs().to_f64().unwrap());
    let tail = tail_sum(p.trunc + 1, |n| {
        Some(coefficient_bound(&z31_parts(n), xf)? * (4.0 * zf.powi(4)).powi(n as i32))
    })
    .ok_or_else(no_bound)?;
    let lhs = lhs.add_error(tail);
    let z = rational_complex(&p.z, &BigRational::zero(), w);
    let rhs = &y1(&p.x, &z, w)? * &y1(&p.x, &z.mul_i(), w)?;
    Ok(CheckResult::complex(
        "gf",
        base_params(GfFamily::Zfact, p, "z"),
        real(lhs).set_prec(bits),
        rhs.set_prec(bits),
        GF_TOLERANCE,
        start,
    ))
}

fn z313gf(p: &GfParams, bits: u32) -> Result<CheckResult> {
    let start = Instant::now();
    let w = bits + 20;
    let four = BigRational::from_integer(4.into());
    let z2 = &p.z * &p.z;
    let z4 = &z2 * &z2;
    let mut lhs = Ball::zero(w);
    for n in 0..=p.trunc {
        let c = zeta_x(z313_parts(n), &p.x, w)?;
        let mut f = num_traits::pow(&four * &z4, n as usize) * &z2;
        if n % 2 == 1 {
            f = -f;
        }
        lhs = &lhs + &c.mul_rational(&f);
    }
    let (xf, zf) = (p.x.to_f64().unwrap(), p.z.abs().to_f64().unwrap());
    let tail = tail_sum(p.trunc + 1, |n| {
        Some(coefficient_bound(&z313_parts(n), xf)? * zf * zf * (4.0 * zf.powi(4)).powi(n as i32))
    })
    .ok_or_else(no_bound)?;
    let lhs = lhs.add_error(tail);

    let one = BigRational::one();
    let z = rational_complex(&p.z, &BigRational::zero(), w);
    let iz = z.mul_i();
    let g = g_kernel_bits(&z, w)?;
    let (y1z, y1iz) = (y1(&p.x, &z, w)?, y1(&p.x, &iz, w)?);
    let (y2z, y2iz) = (y2(&p.x, &z, w)?, y2(&p.x, &iz, w)?);
    let (u1z, u1iz) = (y1(&one, &z, w)?, y1(&one, &iz, w)?);
    let first = &(&g * &y1z) * &y1iz;
    let second = &(&y1iz * &y2z) / &u1z.mul_int(4);
    let third = &(&y1z * &y2iz) / &u1iz.mul_int(4);
    let rhs = &(&first - &second) + &third;
    Ok(CheckResult::complex(
        "gf",
        base_params(GfFamily::Z313gf, p, "z"),
        real(lhs).set_prec(bits),
        rhs.set_prec(bits),
        GF_TOLERANCE,
        start,
    ))
}

fn mgf_parts(m: u32) -> Vec<(u32, i8)> {
    (0..m).map(|j| (1, if j % 2 == 0 { -1 } else { 1 })).collect()
}

fn mgf(p: &GfParams, bits: u32) -> Result<CheckResult> {
    let start = Instant::now();
    let w = bits + 20;
    let x_is_one = p.x.is_one();
    let mut lhs = Ball::zero(w);
    for m in 0..=p.trunc {
        let c = zeta_x(mgf_parts(m), &p.x, w)?;
        lhs = &lhs + &c.mul_rational(&num_traits::pow(p.z.clone(), m as usize));
    }
    let tf = p.z.abs().to_f64().unwrap();
    let (tail, tol) = if x_is_one {
        // estimate from the first omitted coefficients
        let mut est = 0.0;
        for m in p.trunc + 1..=p.trunc + 2 {
            let c = zeta_x(mgf_parts(m), &p.x, w)?;
            est += c.abs_upper() * tf.powi(m as i32);
        }
        (up(2.0 * est), 1e-6)
    } else {
        let xf = p.x.to_f64().unwrap();
        let t = tail_sum(p.trunc + 1, |m| Some(coefficient_bound(&mgf_parts(m), xf)? * tf.powi(m as i32)))
            .ok_or_else(no_bound)?;
        (t, GF_TOLERANCE)
    };
    let lhs = lhs.add_error(tail);

    // z = (1+i)t/2, s = (1+x)/2, U(s,w) = Y1(s,w) - w Y2(s,w)
    let half_t = &p.z / BigRational::from_integer(2.into());
    let z = rational_complex(&half_t, &half_t, w);
    let s = (BigRational::one() + &p.x) / BigRational::from_integer(2.into());
    let u = |v: &ComplexBall| -> Result<ComplexBall> { Ok(&y1(&s, v, w)? - &(v * &y2(&s, v, w)?)) };
    let mz = -&z;
    let iz = z.mul_i();
    let num = &u(&mz)? * &u(&iz)?;
    let den = &a_of_z_bits(&mz, w)? * &a_of_z_bits(&iz, w)?;
    let rhs = &num / &den;
    let mut pr = base_params(GfFamily::Mgf, p, "t");
    if x_is_one {
        pr.insert("tail".into(), "estimate".into());
    }
    Ok(CheckResult::complex("gf", pr, real(lhs).set_prec(bits), rhs.set_prec(bits), tol, start))
}

fn period1(p: &GfParams, prec: Prec) -> Result<CheckResult> {
    let start = Instant::now();
    let s = p.s;
    if s < 2 {
        return Err(Error::Divergent(format!("ζ({{{s}}}^k) diverges")));
    }
    let tf = p.z.abs().to_f64().unwrap();
    if tf >= 1.0 {
        return Err(Error::OutOfDomain(format!("period-one series needs |t| < 1, got {}", p.z)));
    }
    let mzv = Mzv::new(prec)?;
    let w = mzv.bits();
    let ts = num_traits::pow(p.z.clone(), s as usize);
    let mut lhs = Ball::zero(w);
    for k in 0..=p.trunc {
        let c = mzv.zeta(&Composition(vec![s; k as usize]))?;
        lhs = &lhs + &c.mul_rational(&num_traits::pow(ts.clone(), k as usize));
    }
    // ζ({s}^k) ≤ ζ(s)^k / k!, as the product is dominated by exp(ζ(s) t^s)
    let sf = s as f64;
    let zeta_s = 1.0 + 2f64.powf(-sf) + 2f64.powf(1.0 - sf) / (sf - 1.0);
    let u = up(zeta_s * tf.powi(s as i32));
    let tail = tail_sum(p.trunc + 1, |k| Some((1..=k).fold(1.0, |a, j| a * u / j as f64)))
        .ok_or_else(no_bound)?;
    let lhs = lhs.add_error(tail);

    // log of the product: Σ_j (-1)^{j+1} ζ(js) t^{js} / j
    let eps = 2f64.powi(-(w as i32) - 4);
    let rho = tf.powi(s as i32);
    let mut j_max = 1;
    while 2.0 * rho.powi(j_max as i32 + 1) / (1.0 - rho) >= eps {
        j_max += 1;
    }
    let table = ZetaTable::new(j_max * s, w + 10);
    let mut log = Ball::zero(w + 10);
    for j in 1..=j_max {
        let term = table.get(j * s).mul_rational(&num_traits::pow(ts.clone(), j as usize)).div_int(j as i64);
        log = if j % 2 == 1 { &log + &term } else { &log - &term };
    }
    let log = log.add_error(up(2.0 * rho.powi(j_max as i32 + 1) / (1.0 - rho)));
    let rhs = exp(&log).set_prec(w);
    let pr = params([
        ("family", "period1".to_string()),
        ("s", s.to_string()),
        ("t", p.z.to_string()),
        ("N", p.trunc.to_string()),
    ]);
    Ok(CheckResult::real("gf", pr, lhs, rhs, GF_TOLERANCE, start))
}

fn sincs(p: &GfParams, prec: Prec) -> Result<CheckResult> {
    let start = Instant::now();
    let bits = prec.check()?.bits;
    let t = Ball::from_rational(&p.z, bits + 20);
    let (lhs, rhs) = sinc_zeta_product(&t, p.n, prec)?;
    let pr = params([
        ("family", "sincs".to_string()),
        ("n", p.n.to_string()),
        ("t", p.z.to_string()),
    ]);
    Ok(CheckResult::complex("gf", pr, real(lhs), rhs, MZV_TOLERANCE, start))
}

fn adef(p: &GfParams, prec: Prec) -> Result<CheckResult> {
    let start = Instant::now();
    let zf = p.z.abs().to_f64().unwrap();
    if zf >= 1.0 {
        return Err(Error::OutOfDomain(format!("A(z) check needs |z| < 1, got {}", p.z)));
    }
    let mzv = Mzv::new(prec)?;
    let w = mzv.bits();
    let one = BigRational::one();
    let mut lhs = Ball::zero(w);
    for n in 0..=p.trunc {
        let c = zeta_x(vec![(1, -1); n as usize], &one, w)?;
        lhs = &lhs + &c.mul_rational(&num_traits::pow(p.z.clone(), n as usize));
    }
    // coefficients of ∏(1 - (z+z²)a_m), Σ a_m = log 2, are majorized by those of
    // exp((R+R²) log 2), hence |c_n| ≤ exp((R+R²) log 2) / R^n for every R > 0
    let tail = (1..=40)
        .map(|r| {
            let r = r as f64;
            let q = zf / r;
            ((r + r * r) * std::f64::consts::LN_2).exp() * q.powi(p.trunc as i32 + 1) / (1.0 - q)
        })
        .fold(f64::INFINITY, f64::min);
    let lhs = lhs.add_error(up(tail * 1.01));
    let z = rational_complex(&p.z, &BigRational::zero(), w);
    let gamma = a_of_z_bits(&z, w)?;
    let product = a_of_z_product(&z, 4096, w)?;
    let residual = real(lhs.clone())
        .distance_upper(&gamma)
        .max(product.distance_upper(&gamma));
    let pr = base_params(GfFamily::Adef, p, "z");
    Ok(CheckResult::new(
        "gf",
        pr,
        CheckValue::Real(lhs),
        CheckValue::Routes(vec![("gamma".into(), gamma.re), ("product".into(), product.re)]),
        residual,
        GF_TOLERANCE,
        start,
    ))
}
