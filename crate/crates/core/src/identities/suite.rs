use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::BigRational;
use rayon::prelude::*;

use super::exact::{
    check_new_integral, check_q_expansions, check_q_limit, check_q_shuffle, check_q_shuffle_sweep,
    check_shuffle_theorems,
};
use super::gf::{check_generating_function, GfFamily, GfParams};
use super::mzv::{
    check_cyclic_insertion, check_double_shuffle, check_duality, check_ohno, check_reduction,
    check_sum_formula, ReductionName,
};
use super::{CheckResult, Params};
use crate::error::{Error, Result};
use crate::numerics::Prec;
use crate::word_algebra::{Composition, Word};

/// The suite run by default: every identity family at the parameters the
/// acceptance criteria name.
pub const DEFAULT_CONFIG: &str = "\
# name key=value ...; integer values may be ranges a..b
sum_formula n=3..8
duality max_weight=9
double_shuffle u=2 v=2
double_shuffle u=2 v=3
double_shuffle u=3,1 v=2
ohno p=3 m=0..2
ohno p=4,1 m=1
cyclic_insertion m=2 n=1 orbits=true
cyclic_insertion m=3 n=1 orbits=true
cyclic_insertion m=4 n=1..2 orbits=true
cyclic_insertion m=5..6 n=2
cyclic_insertion m=0..6 n=0
gf family=zfact
gf family=z313gf
gf family=mgf
gf family=mgf x=1
gf family=drin m=0..3 n=0..3
gf family=period1
gf family=sincs n=1 t=1/2
gf family=sincs n=2 t=1/3
gf family=adef
reduction name=euler m=2..8
reduction name=markett s=3..7
reduction name=z31 n=1..3
reduction name=z313 n=1..2
reduction name=z213 n=1..2
reduction name=period1 s=2..4 k=1..4
shuffle_theorems tbinom=6 mfact=12
new_integral s=1 x=1/2
new_integral s=2 x=1/2
new_integral s=1,1 x=1/2,1/2
new_integral s=2,1 x=1/2,1/2
q_shuffle max_len=4 x=1 q=1/2
q_shuffle max_len=4 x=4/5 q=7/10
q_expansions x=1 q=1/2
q_expansions x=4/5 q=7/10
q_limit w=ab x=1
q_limit w=bca x=4/5
";

/// One configured check with fully resolved parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum CheckSpec {
    Duality { max_weight: u32 },
    SumFormula { n: u32, k: usize },
    Ohno { p: Composition, m: u32 },
    DoubleShuffle { u: Composition, v: Composition },
    CyclicInsertion { m: u32, n: u32, orbits: bool },
    Gf { family: GfFamily, params: GfParams },
    Reduction { name: ReductionName, a: u32, b: u32 },
    ShuffleTheorems { tbinom: usize, mfact: usize },
    NewIntegral { s: Composition, x: Vec<BigRational> },
    QShuffle { u: Word, v: Word, x: BigRational, q: BigRational },
    QShuffleSweep { max_len: usize, x: BigRational, q: BigRational },
    QExpansions { x: BigRational, q: BigRational },
    QLimit { w: Word, x: BigRational, steps: u32 },
}

#[derive(Clone, Debug)]
pub struct SuiteEntry {
    pub line: usize,
    pub name: String,
    pub raw: Params,
    pub spec: CheckSpec,
    pub prec: Prec,
    pub tol: Option<f64>,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub entries: Vec<SuiteEntry>,
}

fn config_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Config { line, msg: msg.into() }
}

fn parse_range(v: &str) -> Option<(u32, u32)> {
    let (a, b) = v.split_once("..")?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// Expand every `a..b` value into the Cartesian product of concrete maps.
fn expand(raw: &Params) -> Vec<Params> {
    let mut out = vec![Params::new()];
    for (k, v) in raw {
        let values: Vec<String> = match parse_range(v) {
            Some((a, b)) => (a..=b).map(|i| i.to_string()).collect(),
            None => vec![v.clone()],
        };
        out = out
            .into_iter()
            .flat_map(|m| {
                values.iter().map(move |val| {
                    let mut m = m.clone();
                    m.insert(k.clone(), val.clone());
                    m
                })
            })
            .collect();
    }
    out
}

struct Fields<'a> {
    line: usize,
    map: &'a Params,
    used: Vec<&'static str>,
}

impl<'a> Fields<'a> {
    fn get<T: FromStr>(&mut self, key: &'static str) -> Result<Option<T>> {
        self.used.push(key);
        match self.map.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| config_err(self.line, format!("bad value '{v}' for {key}"))),
        }
    }

    fn need<T: FromStr>(&mut self, key: &'static str) -> Result<T> {
        self.get(key)?
            .ok_or_else(|| config_err(self.line, format!("missing parameter {key}")))
    }

    fn rational(&mut self, key: &'static str, default: &str) -> Result<BigRational> {
        let v: String = self.get(key)?.unwrap_or_else(|| default.to_string());
        parse_rational(&v).ok_or_else(|| config_err(self.line, format!("bad rational '{v}' for {key}")))
    }

    fn composition(&mut self, key: &'static str) -> Result<Composition> {
        let v: String = self.need(key)?;
        if v == "()" || v.is_empty() {
            return Ok(Composition::empty());
        }
        v.parse()
            .map_err(|e: Error| config_err(self.line, format!("{key}: {e}")))
    }

    fn word(&mut self, key: &'static str) -> Result<Word> {
        let v: String = self.need(key)?;
        v.parse().map_err(|e: Error| config_err(self.line, format!("{key}: {e}")))
    }

    fn finish(self) -> Result<()> {
        for k in self.map.keys() {
            if !self.used.contains(&k.as_str()) && k != "prec" && k != "tol" {
                return Err(config_err(self.line, format!("unknown parameter {k}")));
            }
        }
        Ok(())
    }
}

/// Rationals written as `p/q` or as integers.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let d: num_bigint::BigInt = b.trim().parse().ok()?;
            if d == 0.into() {
                return None;
            }
            Some(BigRational::new(a.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn build(name: &str, line: usize, map: &Params) -> Result<Vec<CheckSpec>> {
    let mut f = Fields { line, map, used: Vec::new() };
    let specs = match name {
        "duality" => vec![CheckSpec::Duality { max_weight: f.need("max_weight")? }],
        "sum_formula" => {
            let n: u32 = f.need("n")?;
            match f.get::<usize>("k")? {
                Some(k) => vec![CheckSpec::SumFormula { n, k }],
                None => (1..n as usize).map(|k| CheckSpec::SumFormula { n, k }).collect(),
            }
        }
        "ohno" => vec![CheckSpec::Ohno { p: f.composition("p")?, m: f.need("m")? }],
        "double_shuffle" => vec![CheckSpec::DoubleShuffle { u: f.composition("u")?, v: f.composition("v")? }],
        "cyclic_insertion" => vec![CheckSpec::CyclicInsertion {
            m: f.need("m")?,
            n: f.need("n")?,
            orbits: f.get("orbits")?.unwrap_or(false),
        }],
        "gf" => {
            let family: GfFamily = f.need::<String>("family")?.parse().map_err(|e: Error| config_err(line, e.to_string()))?;
            let mut p = GfParams::defaults(family);
            if map.contains_key("x") {
                p.x = f.rational("x", "")?;
            }
            for key in ["z", "t"] {
                if map.contains_key(key) {
                    p.z = f.rational(key, "")?;
                }
            }
            p.trunc = f.get("N")?.unwrap_or(p.trunc);
            p.m = f.get("m")?.unwrap_or(p.m);
            p.n = f.get("n")?.unwrap_or(p.n);
            p.s = f.get("s")?.unwrap_or(p.s);
            vec![CheckSpec::Gf { family, params: p }]
        }
        "reduction" => {
            let rname: ReductionName = f.need::<String>("name")?.parse().map_err(|e: Error| config_err(line, e.to_string()))?;
            let key = match rname {
                ReductionName::Euler => "m",
                ReductionName::Markett | ReductionName::Period1 => "s",
                _ => "n",
            };
            let a = f.need(key)?;
            let b = if rname == ReductionName::Period1 { f.need("k")? } else { 0 };
            vec![CheckSpec::Reduction { name: rname, a, b }]
        }
        "shuffle_theorems" => vec![CheckSpec::ShuffleTheorems {
            tbinom: f.get("tbinom")?.unwrap_or(6),
            mfact: f.get("mfact")?.unwrap_or(12),
        }],
        "new_integral" => {
            let s = f.composition("s")?;
            let xs: String = f.need("x")?;
            let x = xs
                .split(',')
                .map(|t| parse_rational(t).ok_or_else(|| config_err(line, format!("bad rational '{t}'"))))
                .collect::<Result<Vec<_>>>()?;
            vec![CheckSpec::NewIntegral { s, x }]
        }
        "q_shuffle" => {
            let x = f.rational("x", "1")?;
            let q = f.rational("q", "1/2")?;
            if map.contains_key("u") || map.contains_key("v") {
                vec![CheckSpec::QShuffle { u: f.word("u")?, v: f.word("v")?, x, q }]
            } else {
                vec![CheckSpec::QShuffleSweep { max_len: f.get("max_len")?.unwrap_or(4), x, q }]
            }
        }
        "q_expansions" => vec![CheckSpec::QExpansions { x: f.rational("x", "1")?, q: f.rational("q", "1/2")? }],
        "q_limit" => vec![CheckSpec::QLimit {
            w: f.word("w")?,
            x: f.rational("x", "1")?,
            steps: f.get("steps")?.unwrap_or(12),
        }],
        other => return Err(config_err(line, format!("unknown check '{other}'"))),
    };
    f.finish()?;
    Ok(specs)
}

impl SuiteConfig {
    /// Parses lines of `name key=value ...`; `#` starts a comment. The keys
    /// `prec` (digits, default 40) and `tol` apply to any check.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, raw_line) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw_line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut tokens = content.split_whitespace();
            let name = tokens.next().unwrap().to_string();
            let mut raw = Params::new();
            for tok in tokens {
                let (k, v) = tok
                    .split_once('=')
                    .ok_or_else(|| config_err(line, format!("expected key=value, got '{tok}'")))?;
                if raw.insert(k.to_string(), v.to_string()).is_some() {
                    return Err(config_err(line, format!("duplicate parameter {k}")));
                }
            }
            for map in expand(&raw) {
                let digits = match map.get("prec") {
                    Some(v) => v.parse().map_err(|_| config_err(line, format!("bad precision '{v}'")))?,
                    None => 40,
                };
                let tol = match map.get("tol") {
                    Some(v) => Some(v.parse::<f64>().map_err(|_| config_err(line, format!("bad tolerance '{v}'")))?),
                    None => None,
                };
                for spec in build(&name, line, &map)? {
                    entries.push(SuiteEntry {
                        line,
                        name: name.clone(),
                        raw: map.clone(),
                        spec,
                        prec: Prec::digits(digits),
                        tol,
                    });
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn default_suite() -> Self {
        Self::parse(DEFAULT_CONFIG).expect("default config parses")
    }
}

/// Runs one configured check.
pub fn run_spec(spec: &CheckSpec, prec: Prec) -> Result<Vec<CheckResult>> {
    Ok(match spec {
        CheckSpec::Duality { max_weight } => check_duality(*max_weight, prec)?,
        CheckSpec::SumFormula { n, k } => vec![check_sum_formula(*n, *k, prec)?],
        CheckSpec::Ohno { p, m } => vec![check_ohno(p, *m, prec)?],
        CheckSpec::DoubleShuffle { u, v } => vec![check_double_shuffle(u, v, prec)?],
        CheckSpec::CyclicInsertion { m, n, orbits } => check_cyclic_insertion(*m, *n, prec, *orbits)?,
        CheckSpec::Gf { family, params } => vec![check_generating_function(*family, params, prec)?],
        CheckSpec::Reduction { name, a, b } => vec![check_reduction(*name, *a, *b, prec)?],
        CheckSpec::ShuffleTheorems { tbinom, mfact } => check_shuffle_theorems(*tbinom, *mfact),
        CheckSpec::NewIntegral { s, x } => vec![check_new_integral(s, x, prec)?],
        CheckSpec::QShuffle { u, v, x, q } => vec![check_q_shuffle(u, v, x, q)?],
        CheckSpec::QShuffleSweep { max_len, x, q } => vec![check_q_shuffle_sweep(*max_len, x, q)?],
        CheckSpec::QExpansions { x, q } => vec![check_q_expansions(x, q)?],
        CheckSpec::QLimit { w, x, steps } => vec![check_q_limit(w, x, *steps)?],
    })
}

/// Aggregated results in canonical order (by name, then parameters).
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.pass)
    }

    pub fn to_json_lines(&self) -> String {
        self.results.iter().map(|r| r.to_json() + "\n").collect()
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} checks, {} passed, {} failed\n", self.results.len(), self.results.len() - failed, failed));
        out
    }
}

fn sort_key(r: &CheckResult) -> (String, BTreeMap<String, String>) {
    (r.name.clone(), r.params.clone())
}

/// Runs every configured check on a pool of `jobs` worker threads. Results do
/// not depend on `jobs`; a check that errors is reported as a failure.
pub fn run_suite(config: &SuiteConfig, jobs: usize) -> Result<Report> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
    let mut results: Vec<CheckResult> = pool.install(|| {
        config
            .entries
            .par_iter()
            .flat_map_iter(|e| {
                let rs = match run_spec(&e.spec, e.prec) {
                    Ok(rs) => rs,
                    Err(err) => vec![CheckResult::failed(&e.name, e.raw.clone(), &err)],
                };
                rs.into_iter().map(move |r| match e.tol {
                    Some(t) => r.with_tolerance(t),
                    None => r,
                })
            })
            .collect()
    });
    results.sort_by_cached_key(sort_key);
    Ok(Report { results })
}
