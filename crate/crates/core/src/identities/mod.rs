//! Executable catalog of identities: every check computes both sides, reports a
//! residual against a tolerance and keeps the parameters it ran with.

mod exact;
mod gf;
mod mzv;
mod suite;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::numerics::{Ball, ComplexBall};

pub use exact::{
    check_mfact, check_new_integral, check_q_expansions, check_q_limit, check_q_shuffle,
    check_q_shuffle_sweep, check_shuffle_theorems, check_tbinom,
};
pub use gf::{check_generating_function, GfFamily, GfParams};
pub use mzv::{
    check_cyclic_insertion, check_double_shuffle, check_duality, check_ohno, check_reduction,
    check_sum_formula, ReductionName,
};
pub use suite::{
    parse_rational, run_spec, run_suite, CheckSpec, Report, SuiteConfig, SuiteEntry, DEFAULT_CONFIG,
};

/// Tolerance for checks backed by Hölder-route MZVs at 40 digits.
pub const MZV_TOLERANCE: f64 = 1e-20;
/// Tolerance for truncated generating-function checks.
pub const GF_TOLERANCE: f64 = 1e-10;
/// Tolerance for the quadrature of the chain integral.
pub const QUADRATURE_TOLERANCE: f64 = 1e-8;

/// Parameters of a check, kept in canonical key order.
pub type Params = BTreeMap<String, String>;

/// One side of a check.
#[derive(Clone, Debug)]
pub enum CheckValue {
    Real(Ball),
    Complex(ComplexBall),
    Exact(String),
    /// Several evaluation routes of the same side.
    Routes(Vec<(String, Ball)>),
}

impl fmt::Display for CheckValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckValue::Real(b) => write!(f, "{b:.25}"),
            CheckValue::Complex(c) => write!(f, "{c:.25}"),
            CheckValue::Exact(s) => f.write_str(s),
            CheckValue::Routes(rs) => {
                for (i, (name, b)) in rs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{name}: {b:.25}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub params: Params,
    pub lhs: CheckValue,
    pub rhs: CheckValue,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seconds: f64,
}

#[derive(Serialize)]
struct JsonLine<'a> {
    name: &'a str,
    params: &'a Params,
    residual: f64,
    tolerance: f64,
    pass: bool,
    seconds: f64,
}

impl CheckResult {
    pub(crate) fn new(
        name: &str,
        params: Params,
        lhs: CheckValue,
        rhs: CheckValue,
        residual: f64,
        tolerance: f64,
        start: Instant,
    ) -> Self {
        Self {
            name: name.to_string(),
            params,
            lhs,
            rhs,
            residual,
            tolerance,
            pass: residual <= tolerance,
            seconds: start.elapsed().as_secs_f64(),
        }
    }

    /// Two real balls; the residual is an upper bound on their distance.
    pub(crate) fn real(name: &str, params: Params, lhs: Ball, rhs: Ball, tol: f64, start: Instant) -> Self {
        let residual = lhs.distance_upper(&rhs);
        Self::new(name, params, CheckValue::Real(lhs), CheckValue::Real(rhs), residual, tol, start)
    }

    pub(crate) fn complex(
        name: &str,
        params: Params,
        lhs: ComplexBall,
        rhs: ComplexBall,
        tol: f64,
        start: Instant,
    ) -> Self {
        let residual = lhs.distance_upper(&rhs);
        Self::new(name, params, CheckValue::Complex(lhs), CheckValue::Complex(rhs), residual, tol, start)
    }

    /// Exact comparison: residual 0 on equality and 1 otherwise.
    pub(crate) fn exact(name: &str, params: Params, lhs: String, rhs: String, equal: bool, start: Instant) -> Self {
        let residual = if equal { 0.0 } else { 1.0 };
        Self::new(name, params, CheckValue::Exact(lhs), CheckValue::Exact(rhs), residual, 0.0, start)
    }

    /// A check that could not be carried out.
    pub(crate) fn failed(name: &str, params: Params, err: &crate::Error) -> Self {
        Self {
            name: name.to_string(),
            params,
            lhs: CheckValue::Exact(format!("error: {err}")),
            rhs: CheckValue::Exact(String::new()),
            residual: 1.0,
            tolerance: 0.0,
            pass: false,
            seconds: 0.0,
        }
    }

    /// Replace the tolerance and recompute the verdict.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self.pass = self.residual <= tol;
        self
    }

    pub fn params_text(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&JsonLine {
            name: &self.name,
            params: &self.params,
            residual: self.residual,
            tolerance: self.tolerance,
            pass: self.pass,
            seconds: self.seconds,
        })
        .expect("check results serialize")
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{}] residual {:.3e} tol {:.1e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.params_text(),
            self.residual,
            self.tolerance
        )
    }
}

pub(crate) fn params<const N: usize>(pairs: [(&str, String); N]) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub(crate) fn comp_text(parts: &[u32]) -> String {
    parts.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}
