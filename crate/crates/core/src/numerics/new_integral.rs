use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::ball::Ball;
use crate::error::{Error, Result};
use crate::word_algebra::Composition;

/// Quadrature estimate of a multiple polylogarithm from its chain-integral form.
///
/// The radius is `|I_n - I_{2n}|` plus f64 rounding slack. It is an estimate,
/// not an enclosure, which `rigorous` records explicitly.
#[derive(Clone, Debug)]
pub struct QuadratureEstimate {
    pub value: Ball,
    pub order: usize,
    pub rigorous: bool,
}

/// Gauss–Legendre nodes and weights on `[0, 1]`, by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1, "quadrature order must be positive");
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev-like initial guess for the i-th root on [-1, 1]
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push(((1.0 - x) / 2.0, w / 2.0));
    }
    out
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `Li_s(x_1, …, x_k)` (depth ≤ 2, parts ≤ 3) from the integral over the chains
/// `1 > u_1^{(j)} > ⋯ > u_{s_j}^{(j)} > 0` of
/// `∏_j τ(∏_{m≤j} x_m u^{(m)}_{s_m}) ∏ du/u`, `τ(y) = y/(1-y)`.
///
/// Each chain is mapped to the unit cube by `u_r = v_1⋯v_r`, under which the
/// measure becomes `∏ dv/v` and the last point of chain `m` is
/// `V_m = ∏_r v_r`. The `1/v` factors cancel against `τ`, leaving the smooth
/// integrand `∏_m x_m^{k-m+1} V_m^{k-m} ∏_j 1/(1 - P_j)` with
/// `P_j = ∏_{m≤j} x_m V_m`, integrated by tensor Gauss–Legendre.
pub fn new_integral_eval(
    s: &Composition,
    x: &[BigRational],
    quad_order: usize,
) -> Result<QuadratureEstimate> {
    let parts = s.parts();
    if parts.is_empty() {
        return Err(Error::BadArity("empty composition".into()));
    }
    if parts.len() > 2 {
        return Err(Error::Unsupported(format!(
            "chain quadrature supports depth ≤ 2, got {}",
            parts.len()
        )));
    }
    if parts.iter().any(|&p| p > 3) {
        return Err(Error::Unsupported(format!(
            "chain quadrature supports parts ≤ 3, got {s}"
        )));
    }
    if x.len() != parts.len() {
        return Err(Error::BadArity(format!(
            "{} arguments for depth {}",
            x.len(),
            parts.len()
        )));
    }
    if let Some(bad) = x.iter().find(|v| !v.is_positive() || **v >= BigRational::one()) {
        return Err(Error::OutOfDomain(format!("x = {bad} is not in (0, 1)")));
    }
    if quad_order == 0 || quad_order > 64 {
        return Err(Error::OutOfDomain(format!(
            "quadrature order {quad_order} is not in 1..=64"
        )));
    }
    let xs: Vec<f64> = x.iter().map(|v| v.to_f64().unwrap()).collect();
    let coarse = tensor_rule(parts, &xs, quad_order);
    let fine = tensor_rule(parts, &xs, 2 * quad_order);
    let rad = (fine - coarse).abs() + 1e-14 * fine.abs().max(1.0);
    Ok(QuadratureEstimate {
        value: Ball::from_f64(fine, 64).add_error(rad),
        order: 2 * quad_order,
        rigorous: false,
    })
}

fn tensor_rule(parts: &[u32], xs: &[f64], n: usize) -> f64 {
    let rule = gauss_legendre(n);
    let k = parts.len();
    // per chain m: all (V_m, weight · V_m^{k-m}) pairs over the cube
    let chains: Vec<Vec<(f64, f64)>> = parts
        .iter()
        .enumerate()
        .map(|(m, &len)| {
            let power = (k - 1 - m) as i32;
            let mut pts = vec![(1.0, 1.0)];
            for _ in 0..len {
                pts = pts
                    .iter()
                    .flat_map(|&(v, w)| rule.iter().map(move |&(t, wt)| (v * t, w * wt)))
                    .collect();
            }
            pts.into_iter().map(|(v, w)| (v, w * v.powi(power))).collect()
        })
        .collect();
    let coef: f64 = xs
        .iter()
        .enumerate()
        .map(|(m, &xm)| xm.powi((k - m) as i32))
        .product();
    let total = match k {
        1 => chains[0]
            .iter()
            .map(|&(v, w)| w / (1.0 - xs[0] * v))
            .sum::<f64>(),
        _ => chains[0]
            .iter()
            .map(|&(v1, w1)| {
                let p1 = xs[0] * v1;
                let inner: f64 = chains[1]
                    .iter()
                    .map(|&(v2, w2)| w2 / (1.0 - p1 * xs[1] * v2))
                    .sum();
                w1 / (1.0 - p1) * inner
            })
            .sum::<f64>(),
    };
    coef * total
}
