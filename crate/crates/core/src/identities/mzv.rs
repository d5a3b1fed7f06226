use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{comp_text, params, CheckResult, CheckValue, MZV_TOLERANCE};
use crate::combinatorics::{binomial, compositions_enum};
use crate::error::{Error, Result};
use crate::numerics::{Ball, HolderEvaluator, Prec};
use crate::symbolic::{
    closed_form, drin_coefficient, euler_reduction, evaluate_pi_multiple_bits,
    evaluate_polynomial_bits, evaluate_symbolic, markett_reduction, period1_even_rational,
    period1_reduce, ClosedFormName, ExactPiMultiple, Symbolic,
};
use crate::word_algebra::{
    dual_composition, insertion_composition, shuffle_compositions, stuffle, Composition,
    CompositionMultiset,
};

/// Hölder-route MZVs with the empty argument list evaluating to 1.
pub(crate) struct Mzv {
    ev: HolderEvaluator,
}

impl Mzv {
    pub(crate) fn new(prec: Prec) -> Result<Self> {
        let prec = prec.check()?;
        Ok(Self {
            ev: HolderEvaluator::new(prec.bits),
        })
    }

    pub(crate) fn bits(&self) -> u32 {
        self.ev.bits()
    }

    pub(crate) fn zeta(&self, s: &Composition) -> Result<Ball> {
        if s.depth() == 0 {
            return Ok(Ball::one(self.bits()));
        }
        self.ev.eval_composition(s)
    }

    fn sum(&self, m: &CompositionMultiset) -> Result<Ball> {
        let mut total = Ball::zero(self.bits());
        for (c, mult) in m.iter() {
            total = &total + &self.zeta(c)?.mul_int(mult as i64);
        }
        Ok(total)
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `ζ(s) = ζ(s')` for every admissible `s` of weight `2..=max_weight`.
pub fn check_duality(max_weight: u32, prec: Prec) -> Result<Vec<CheckResult>> {
    if max_weight < 3 {
        return Err(Error::OutOfDomain(format!("max_weight must be at least 3, got {max_weight}")));
    }
    let mzv = Mzv::new(prec)?;
    let mut out = Vec::new();
    for w in 2..=max_weight {
        for s in Composition::admissible_of_weight(w) {
            let start = Instant::now();
            let d = dual_composition(&s)?;
            let p = params([("s", comp_text(s.parts())), ("dual", comp_text(d.parts()))]);
            out.push(CheckResult::real("duality", p, mzv.zeta(&s)?, mzv.zeta(&d)?, MZV_TOLERANCE, start));
        }
    }
    Ok(out)
}

/// `Σ_{|s|=n, depth k, s_1>1} ζ(s) = ζ(n)`.
pub fn check_sum_formula(n: u32, k: usize, prec: Prec) -> Result<CheckResult> {
    if k < 1 || n as usize <= k {
        return Err(Error::OutOfDomain(format!("need n > k ≥ 1, got n={n}, k={k}")));
    }
    let start = Instant::now();
    let mzv = Mzv::new(prec)?;
    let mut lhs = Ball::zero(mzv.bits());
    for s in Composition::of_weight_and_depth(n, k) {
        if s.is_admissible() {
            lhs = &lhs + &mzv.zeta(&s)?;
        }
    }
    let rhs = mzv.zeta(&Composition(vec![n]))?;
    let p = params([("n", n.to_string()), ("k", k.to_string())]);
    Ok(CheckResult::real("sum_formula", p, lhs, rhs, MZV_TOLERANCE, start))
}

/// `S(p; m) = Σ_{c_1+⋯+c_k=m} ζ(p_1+c_1, …, p_k+c_k)`.
fn ohno_sum(mzv: &Mzv, p: &Composition, m: u32) -> Result<Ball> {
    let mut total = Ball::zero(mzv.bits());
    for c in compositions_enum(p.depth(), m as usize) {
        let shifted: Vec<u32> = p.parts().iter().zip(&c).map(|(&a, &b)| a + b as u32).collect();
        total = &total + &mzv.zeta(&Composition(shifted))?;
    }
    Ok(total)
}

/// `S(p; m) = S(p'; m)` with `p'` the dual argument list.
pub fn check_ohno(p: &Composition, m: u32, prec: Prec) -> Result<CheckResult> {
    let start = Instant::now();
    let d = dual_composition(p)?;
    let mzv = Mzv::new(prec)?;
    let lhs = ohno_sum(&mzv, p, m)?;
    let rhs = ohno_sum(&mzv, &d, m)?;
    let pr = params([
        ("p", comp_text(p.parts())),
        ("dual", comp_text(d.parts())),
        ("m", m.to_string()),
    ]);
    Ok(CheckResult::real("ohno", pr, lhs, rhs, MZV_TOLERANCE, start))
}

/// `ζ(u)ζ(v)` against both the stuffle and the shuffle expansion.
pub fn check_double_shuffle(u: &Composition, v: &Composition, prec: Prec) -> Result<CheckResult> {
    for c in [u, v] {
        if c.depth() > 0 && !c.is_admissible() {
            return Err(Error::NotAdmissible(format!("{c}: first argument must be at least 2")));
        }
    }
    let start = Instant::now();
    let mzv = Mzv::new(prec)?;
    let product = &mzv.zeta(u)? * &mzv.zeta(v)?;
    let via_stuffle = mzv.sum(&stuffle(u, v))?;
    let via_shuffle = mzv.sum(&shuffle_compositions(u, v))?;
    let residual = product
        .distance_upper(&via_stuffle)
        .max(product.distance_upper(&via_shuffle));
    let p = params([("u", comp_text(u.parts())), ("v", comp_text(v.parts()))]);
    Ok(CheckResult::new(
        "double_shuffle",
        p,
        CheckValue::Real(product),
        CheckValue::Routes(vec![("stuffle".into(), via_stuffle), ("shuffle".into(), via_shuffle)]),
        residual,
        MZV_TOLERANCE,
        start,
    ))
}

fn z_of(mzv: &Mzv, mvec: &[usize]) -> Result<Ball> {
    mzv.zeta(&insertion_composition(mvec)?)
}

fn rotations(v: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..v.len()).map(move |j| v[j..].iter().chain(&v[..j]).copied().collect())
}

/// The aggregate `Σ_{s ∈ C_{2n+1}(m-2n)} Z(s) = 2π^{2m}/(2m+2)! · C(m+1, 2n+1)` and,
/// when `orbits` is set, the cyclic-orbit sums `𝒞(s) = π^{2m}/(2m+1)!`.
///
/// The orbit sums are numerical evidence for a conjecture, not a proof. The row
/// `n = 0` is compared exactly through the symbolic value of `ζ({2}^m)`.
pub fn check_cyclic_insertion(m: u32, n: u32, prec: Prec, orbits: bool) -> Result<Vec<CheckResult>> {
    if m < 2 * n {
        return Err(Error::OutOfDomain(format!("need m ≥ 2n, got m={m}, n={n}")));
    }
    let start = Instant::now();
    let aggregate = ExactPiMultiple::new(
        BigRational::new(
            binomial(m as u64 + 1, 2 * n as u64 + 1) * 2,
            factorial(2 * m + 2),
        ),
        2 * m,
    );
    let z_m = ExactPiMultiple::new(BigRational::new(BigInt::one(), factorial(2 * m + 1)), 2 * m);
    let mut out = Vec::new();
    if n == 0 {
        let lhs = period1_reduce(m).instantiate(2).to_pi_multiple();
        let equal = lhs.as_ref() == Some(&aggregate);
        let lhs_text = lhs.map_or_else(|| "not a π multiple".into(), |v| v.to_string());
        let p = params([("m", m.to_string()), ("n", "0".into())]);
        out.push(CheckResult::exact("cyclic_insertion", p, lhs_text, aggregate.to_string(), equal, start));
        return Ok(out);
    }
    let mzv = Mzv::new(prec)?;
    let comps = compositions_enum(2 * n as usize + 1, (m - 2 * n) as usize);
    let mut total = Ball::zero(mzv.bits());
    for c in &comps {
        total = &total + &z_of(&mzv, c)?;
    }
    let p = params([("m", m.to_string()), ("n", n.to_string())]);
    let rhs = evaluate_pi_multiple_bits(&aggregate, mzv.bits());
    out.push(CheckResult::real("cyclic_insertion", p, total, rhs, MZV_TOLERANCE, start));
    if orbits {
        let target = evaluate_pi_multiple_bits(&z_m, mzv.bits());
        for c in &comps {
            // one representative per orbit: the lexicographically least rotation
            if rotations(c).any(|r| r < *c) {
                continue;
            }
            let start = Instant::now();
            let mut orbit = Ball::zero(mzv.bits());
            for r in rotations(c) {
                orbit = &orbit + &z_of(&mzv, &r)?;
            }
            let text = c.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            let p = params([("m", m.to_string()), ("n", n.to_string()), ("orbit", text)]);
            out.push(CheckResult::real("cyclic_orbit", p, orbit, target.clone(), MZV_TOLERANCE, start));
        }
    }
    Ok(out)
}

/// Reductions of MZVs to products of single zeta values or powers of `π`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionName {
    /// `ζ(m, 1)`, parameter `m`
    Euler,
    /// `ζ(s, 1, 1)`, parameter `s`
    Markett,
    /// `ζ({3,1}^n)`, parameter `n`
    Z31,
    /// `ζ(3, {1,3}^n)`, parameter `n`
    Z313,
    /// `ζ(2, {1,3}^n)`, parameter `n`
    Z213,
    /// `ζ({s}^k)`, parameters `s` and `k`
    Period1,
}

impl ReductionName {
    pub const ALL: [ReductionName; 6] = [
        ReductionName::Euler,
        ReductionName::Markett,
        ReductionName::Z31,
        ReductionName::Z313,
        ReductionName::Z213,
        ReductionName::Period1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionName::Euler => "euler",
            ReductionName::Markett => "markett",
            ReductionName::Z31 => "z31",
            ReductionName::Z313 => "z313",
            ReductionName::Z213 => "z213",
            ReductionName::Period1 => "period1",
        }
    }
}

impl FromStr for ReductionName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ReductionName::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown reduction '{s}'")))
    }
}

/// Evaluates the left-hand MZV by the Hölder route and the reduction symbolically.
///
/// `a` is the main parameter (`m`, `s` or `n`); `b` is `k` for `period1` and is
/// ignored otherwise. For `period1` with even `s` the symbolic value is also
/// compared exactly with the rational multiple of `π^{sk}`.
pub fn check_reduction(name: ReductionName, a: u32, b: u32, prec: Prec) -> Result<CheckResult> {
    let start = Instant::now();
    let mzv = Mzv::new(prec)?;
    let (args, symbolic, exact_ok) = match name {
        ReductionName::Euler => (vec![a, 1], Symbolic::Poly(euler_reduction(a)?), true),
        ReductionName::Markett => (vec![a, 1, 1], Symbolic::Poly(markett_reduction(a)?), true),
        ReductionName::Z31 | ReductionName::Z313 | ReductionName::Z213 => {
            let cf = match name {
                ReductionName::Z31 => ClosedFormName::Z31,
                ReductionName::Z313 => ClosedFormName::Z313,
                _ => ClosedFormName::Z213,
            };
            (cf.composition(a), closed_form(cf, a), true)
        }
        ReductionName::Period1 => {
            if a < 2 || b < 1 {
                return Err(Error::OutOfDomain(format!("period1 needs s ≥ 2 and k ≥ 1, got s={a}, k={b}")));
            }
            let poly = period1_reduce(b).instantiate(a);
            let mut ok = true;
            if a.is_multiple_of(2) {
                let expected = ExactPiMultiple::new(period1_even_rational(a, b), a * b);
                ok = poly.to_pi_multiple().as_ref() == Some(&expected);
                if a == 2 {
                    let z2 = ExactPiMultiple::new(BigRational::new(BigInt::one(), factorial(2 * b + 1)), 2 * b);
                    ok &= expected == z2;
                }
            }
            (vec![a; b as usize], Symbolic::Poly(poly), ok)
        }
    };
    let comp = Composition(args);
    if !comp.is_admissible() {
        return Err(Error::Divergent(format!("ζ{comp} diverges")));
    }
    let lhs = mzv.zeta(&comp)?;
    let rhs = match &symbolic {
        Symbolic::Pi(p) => evaluate_pi_multiple_bits(p, mzv.bits()),
        Symbolic::Poly(p) => evaluate_polynomial_bits(p, mzv.bits())?,
    };
    let mut p = params([("name", name.name().to_string()), ("s", comp_text(comp.parts()))]);
    p.insert("form".into(), symbolic.to_string());
    let mut r = CheckResult::real("reduction", p, lhs, rhs, MZV_TOLERANCE, start);
    if !exact_ok {
        r.residual = 1.0;
        r.pass = false;
    }
    Ok(r)
}

/// `ζ(m+2, {1}^n)` against the symbolic coefficient of the bivariate series, plus
/// exact symmetry of the coefficients in `(m, n)`.
pub(crate) fn drin_check(m: u32, n: u32, prec: Prec) -> Result<CheckResult> {
    let start = Instant::now();
    let mzv = Mzv::new(prec)?;
    let mut args = vec![m + 2];
    args.extend(std::iter::repeat_n(1, n as usize));
    let lhs = mzv.zeta(&Composition(args))?;
    let coeff = drin_coefficient(m, n);
    let symmetric = coeff == drin_coefficient(n, m);
    let rhs = evaluate_symbolic(&Symbolic::Poly(coeff), Prec::bits(mzv.bits()))?;
    let p = params([("family", "drin".into()), ("m", m.to_string()), ("n", n.to_string())]);
    let mut r = CheckResult::real("gf", p, lhs, rhs, MZV_TOLERANCE, start);
    if !symmetric {
        r.residual = 1.0;
        r.pass = false;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[u32]) -> Composition {
        Composition(v.to_vec())
    }

    #[test]
    fn small_checks_pass() {
        let p = Prec::digits(30);
        assert!(check_duality(4, p).unwrap().iter().all(|r| r.pass));
        assert!(check_sum_formula(4, 2, p).unwrap().pass);
        assert!(check_ohno(&c(&[3]), 1, p).unwrap().pass);
        assert!(check_double_shuffle(&c(&[2]), &c(&[3]), p).unwrap().pass);
        assert!(check_double_shuffle(&Composition::empty(), &c(&[2]), p).unwrap().pass);
        assert!(check_reduction(ReductionName::Euler, 4, 0, p).unwrap().pass);
        assert!(check_reduction(ReductionName::Period1, 2, 3, p).unwrap().pass);
        assert!(drin_check(1, 2, p).unwrap().pass);
    }

    #[test]
    fn cyclic_rows() {
        let p = Prec::digits(30);
        let rows = check_cyclic_insertion(3, 1, p, true).unwrap();
        assert!(rows.iter().all(|r| r.pass), "{rows:?}");
        assert_eq!(rows.len(), 2);
        let exact = check_cyclic_insertion(4, 0, p, false).unwrap();
        assert!(exact[0].pass && exact[0].tolerance == 0.0);
        assert!(check_cyclic_insertion(1, 1, p, false).is_err());
    }

    #[test]
    fn zero_tolerance_fails_numeric_check() {
        let r = check_sum_formula(3, 2, Prec::digits(20)).unwrap().with_tolerance(0.0);
        assert!(!r.pass);
        assert!(r.residual > 0.0);
    }
}
