use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use mzv_core::combinatorics::{dimension_exponents, stuffle_count, tau_factorizations, DimensionTarget};
use mzv_core::identities::{
    check_generating_function, parse_rational, run_suite, GfFamily, GfParams, Report, SuiteConfig,
};
use mzv_core::numerics::{euler_sum_eval, multiple_polylog_eval, Ball, ComplexBall, Prec, SignedComposition};
use mzv_core::word_algebra::{
    dual_composition, qshuffle, shuffle, shuffle_compositions, stuffle, Composition, Word,
};
use mzv_core::Error;

#[derive(Parser)]
#[command(name = "mzv", version, about = "Multiple zeta values, Euler sums and their identities")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Working precision in decimal digits
    #[arg(long, global = true, default_value_t = 40)]
    prec: u32,
    /// Outer argument x of ζ_x (rational)
    #[arg(long, global = true)]
    x: Option<String>,
    /// Deformation parameter q (rational)
    #[arg(long, global = true)]
    q: Option<String>,
    /// Truncation order N
    #[arg(long, global = true)]
    trunc: Option<u32>,
    /// Override the tolerance of every check
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// ζ_x of a signed composition; a negative entry marks a barred argument
    Eval {
        #[arg(allow_hyphen_values = true)]
        s: String,
    },
    /// Multiple polylogarithm Li_s(z_1, ..., z_k); each z is `a`, `a+bi` or `bi`
    /// (put a leading-minus z after `--`)
    Li {
        s: String,
        #[arg(required = true)]
        z: Vec<String>,
    },
    /// Expand a product of two words or compositions
    Product {
        #[arg(long = "type", value_enum)]
        kind: ProductKind,
        u: String,
        v: String,
    },
    /// Dual of an admissible composition
    Dual { s: String },
    /// Exact counts
    Count {
        /// Number of terms in the stuffle of lists of lengths m and n
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        stuffle: Option<Vec<u64>>,
        /// Factorizations of m into k distinct factors
        #[arg(long, num_args = 2, value_names = ["M", "K"])]
        tau: Option<Vec<u64>>,
    },
    /// Exponents of the product form of a dimension generating function
    Dims {
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 12)]
        weight: u32,
        #[arg(long, default_value_t = 4)]
        depth: u32,
    },
    /// Check one generating-function identity
    Gf {
        #[arg(long)]
        family: String,
        /// Series variable (z, or t for the sinc product)
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
    },
    /// Run one identity check, given as `key=value` parameters
    Verify { check: String, params: Vec<String> },
    /// Run a suite of checks from a configuration file (default: built-in suite)
    Suite {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductKind {
    Shuffle,
    Stuffle,
    Qshuffle,
}

/// Failures that end the run: usage problems (exit 2) and failed checks (exit 1).
enum Outcome {
    Usage(Error),
    Failed,
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::Usage(e)
    }
}

type Run = Result<(), Outcome>;

fn rational(text: &str, what: &str) -> Result<BigRational, Error> {
    parse_rational(text).ok_or_else(|| Error::parse(0, format!("bad rational '{text}' for {what}")))
}

fn prec(g: &Global) -> Result<Prec, Error> {
    Prec::digits(g.prec).check()
}

fn ball_json(b: &Ball) -> serde_json::Value {
    json!({ "mid": b.mid_rational().to_string(), "rad": b.rad() })
}

fn print_ball(g: &Global, label: &str, b: &Ball) {
    if g.json {
        let mut v = ball_json(b);
        v["input"] = json!(label);
        v["value"] = json!(format!("{b:.prec$}", prec = g.prec as usize));
        println!("{v}");
    } else {
        println!("{b:.prec$}", prec = g.prec as usize);
    }
}

fn eval(g: &Global, s: &str) -> Run {
    let x = rational(g.x.as_deref().unwrap_or("1"), "x")?;
    let arg = SignedComposition::parse(s, x)?;
    let v = euler_sum_eval(&arg, prec(g)?)?;
    print_ball(g, &arg.to_string(), &v);
    Ok(())
}

/// `a`, `bi`, `a+bi` or `a-bi` with rational `a`, `b`.
fn parse_complex(text: &str) -> Result<(BigRational, BigRational), Error> {
    let t = text.trim();
    let Some(body) = t.strip_suffix('i') else {
        return Ok((rational(t, "z")?, BigRational::from_integer(BigInt::from(0))));
    };
    // split at the last sign that is not leading
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .last()
        .map(|(i, _)| i);
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other.trim_start_matches('+'),
    };
    Ok((rational(re, "z")?, rational(im, "z")?))
}

fn li(g: &Global, s: &str, zs: &[String]) -> Run {
    let comp: Composition = s.parse()?;
    let p = prec(g)?;
    let z = zs
        .iter()
        .map(|t| parse_complex(t).map(|(re, im)| ComplexBall::from_rationals(&re, &im, p.bits)))
        .collect::<Result<Vec<_>, _>>()?;
    let v = multiple_polylog_eval(comp.parts(), &z, p)?;
    if g.json {
        println!("{}", json!({ "re": ball_json(&v.re), "im": ball_json(&v.im), "value": format!("{v:.prec$}", prec = g.prec as usize) }));
    } else {
        println!("{v:.prec$}", prec = g.prec as usize);
    }
    Ok(())
}

fn looks_numeric(s: &str) -> bool {
    s.chars().any(|c| c.is_ascii_digit()) && !s.chars().any(|c| c.is_ascii_lowercase())
}

fn product(g: &Global, kind: ProductKind, u: &str, v: &str) -> Run {
    let text = match kind {
        ProductKind::Stuffle => stuffle(&u.parse()?, &v.parse()?).to_string(),
        ProductKind::Shuffle if looks_numeric(u) && looks_numeric(v) => {
            shuffle_compositions(&u.parse()?, &v.parse()?).to_string()
        }
        ProductKind::Shuffle => shuffle(&u.parse::<Word>()?, &v.parse::<Word>()?).to_string(),
        ProductKind::Qshuffle => qshuffle(&u.parse::<Word>()?, &v.parse::<Word>()?).to_string(),
    };
    if g.json {
        println!("{}", json!({ "u": u, "v": v, "product": text }));
    } else {
        println!("{text}");
    }
    Ok(())
}

fn dual(g: &Global, s: &str) -> Run {
    let d = dual_composition(&s.parse()?)?;
    if g.json {
        println!("{}", json!({ "input": s, "dual": d.parts() }));
    } else {
        println!("{d}");
    }
    Ok(())
}

fn count(g: &Global, stuffle_args: Option<&[u64]>, tau: Option<&[u64]>) -> Run {
    let (label, value) = match (stuffle_args, tau) {
        (Some([m, n]), None) => (format!("f({m},{n})"), stuffle_count(*m, *n)),
        (None, Some([m, k])) => (format!("tau_{k}({m})"), tau_factorizations(*m, *k as u32)),
        _ => return Err(Error::parse(0, "give exactly one of --stuffle M N or --tau M K").into()),
    };
    if g.json {
        println!("{}", json!({ "count": label, "value": value.to_string() }));
    } else {
        println!("{value}");
    }
    Ok(())
}

fn dims(g: &Global, target: &str, weight: u32, depth: u32) -> Run {
    let target: DimensionTarget = target.replace('-', "_").parse()?;
    let table = dimension_exponents(target, weight, depth)?;
    if g.json {
        println!("{}", table.to_json());
    } else {
        print!("{}", table.to_text());
    }
    Ok(())
}

fn gf(g: &Global, family: &str, z: Option<&str>, m: Option<u32>, n: Option<u32>, s: Option<u32>) -> Run {
    let family: GfFamily = family.parse()?;
    let mut p = GfParams::defaults(family);
    if let Some(x) = &g.x {
        p.x = rational(x, "x")?;
    }
    if let Some(z) = z {
        p.z = rational(z, "z")?;
    }
    p.trunc = g.trunc.unwrap_or(p.trunc);
    p.m = m.unwrap_or(p.m);
    p.n = n.unwrap_or(p.n);
    p.s = s.unwrap_or(p.s);
    let mut r = check_generating_function(family, &p, prec(g)?)?;
    if let Some(t) = g.tol {
        r = r.with_tolerance(t);
    }
    report(g, &Report { results: vec![r] }, true)
}

fn report(g: &Global, report: &Report, details: bool) -> Run {
    if g.json {
        print!("{}", report.to_json_lines());
    } else {
        for r in &report.results {
            println!("{r}");
            if details {
                println!("  lhs: {}", r.lhs);
                println!("  rhs: {}", r.rhs);
            }
        }
        if report.results.len() > 1 {
            print!("{}", report.to_table().lines().last().map(|l| format!("{l}\n")).unwrap_or_default());
        }
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(Outcome::Failed)
    }
}

/// Fills in the global flags for entries that do not set them.
fn apply_globals(config: &mut SuiteConfig, g: &Global, explicit_prec: bool) {
    for e in &mut config.entries {
        if explicit_prec && !e.raw.contains_key("prec") {
            e.prec = Prec::digits(g.prec);
        }
        if e.tol.is_none() {
            e.tol = g.tol;
        }
    }
}

fn verify(g: &Global, check: &str, params: &[String], explicit_prec: bool) -> Run {
    let mut line = check.to_string();
    let has = |k: &str| params.iter().any(|p| p.starts_with(&format!("{k}=")));
    for p in params {
        line.push(' ');
        line.push_str(p);
    }
    for (key, value) in [("x", &g.x), ("q", &g.q)] {
        if let Some(v) = value {
            if !has(key) {
                line.push_str(&format!(" {key}={v}"));
            }
        }
    }
    if let Some(n) = g.trunc {
        if !has("N") {
            line.push_str(&format!(" N={n}"));
        }
    }
    let mut config = SuiteConfig::parse(&line)?;
    apply_globals(&mut config, g, explicit_prec);
    let r = run_suite(&config, 1)?;
    report(g, &r, r.results.len() <= 4)
}

fn suite(g: &Global, path: Option<&PathBuf>, jobs: usize, explicit_prec: bool) -> Run {
    let mut config = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Config { line: 0, msg: format!("{}: {e}", p.display()) })?;
            SuiteConfig::parse(&text)?
        }
        None => SuiteConfig::default_suite(),
    };
    apply_globals(&mut config, g, explicit_prec);
    let r = run_suite(&config, jobs)?;
    report(g, &r, false)
}

fn main() -> ExitCode {
    let explicit_prec = std::env::args().any(|a| a == "--prec" || a.starts_with("--prec="));
    let cli = Cli::parse();
    let g = &cli.global;
    let outcome = match &cli.command {
        Command::Eval { s } => eval(g, s),
        Command::Li { s, z } => li(g, s, z),
        Command::Product { kind, u, v } => product(g, *kind, u, v),
        Command::Dual { s } => dual(g, s),
        Command::Count { stuffle, tau } => count(g, stuffle.as_deref(), tau.as_deref()),
        Command::Dims { target, weight, depth } => dims(g, target, *weight, *depth),
        Command::Gf { family, z, m, n, s } => gf(g, family, z.as_deref(), *m, *n, *s),
        Command::Verify { check, params } => verify(g, check, params, explicit_prec),
        Command::Suite { config, jobs } => suite(g, config.as_ref(), *jobs, explicit_prec),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Outcome::Failed) => ExitCode::from(1),
        Err(Outcome::Usage(e)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
