//! Report building and serialization behind the `rootbox` binary.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use rootbox::bisolve::Mode;
use rootbox::multisolve::{solve, MultiOptions, SolveResultN};
use rootbox::numeric::{fmt_rational, pow2, BoxQ, IntervalQ};
use rootbox::poly::{parse_system, split_input, MultiPoly};
use rootbox::{random, univsolve, Error, ParseError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Solve(#[from] Error),
}

impl CliError {
    /// 0 success, 1 input problems, 2 not zero-dimensional, 3 budget exhausted.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) | CliError::Usage(_) => 1,
            CliError::Solve(e) => match e {
                Error::Parse(_) | Error::ArityMismatch { .. } | Error::VariableAbsent(_) => 1,
                Error::NotZeroDimensional
                | Error::NotZeroDimensionalOrUnlucky
                | Error::DegenerateCombination
                | Error::ZeroPolynomial
                | Error::BothZero
                | Error::ConstantPolynomial
                | Error::DegreeTooSmall(_) => 2,
                Error::RefinementExhausted(_) | Error::CertificationExhausted(_) | Error::DisjointnessViolated | Error::RefineAndRetry => 3,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    BoxesCsv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootOut {
    #[serde(rename = "box")]
    pub boxq: Vec<[String; 2]>,
    pub multiplicity: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LurOut {
    #[serde(rename = "R")]
    pub r: Vec<String>,
    pub shears: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelOut {
    pub vars: usize,
    pub combination: Vec<Vec<i64>>,
    pub shear: String,
    pub candidates: usize,
    pub discarded: usize,
    pub rounds: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticsOut {
    pub redraws: usize,
    pub uncertified_roots: usize,
    pub filtered: usize,
    pub s_attempts: usize,
    pub refinement_rounds: usize,
    pub fast_path: bool,
    pub shortcut_fibers: usize,
    pub levels: Vec<LevelOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub variables: Vec<String>,
    pub certified: bool,
    pub s: Vec<String>,
    pub roots: Vec<RootOut>,
    pub lur: Option<LurOut>,
    pub diagnostics: DiagnosticsOut,
}

#[derive(Clone, Debug)]
pub struct SolveArgs {
    pub mode: Mode,
    pub shortcut: bool,
    pub precision: u32,
    pub seed: u64,
    pub vars: Option<Vec<String>>,
}

impl Default for SolveArgs {
    fn default() -> Self {
        SolveArgs { mode: Mode::Certified, shortcut: false, precision: 10, seed: 0, vars: None }
    }
}

fn box_out(b: &BoxQ) -> Vec<[String; 2]> {
    b.dims.iter().map(|d| [fmt_rational(&d.lo), fmt_rational(&d.hi)]).collect()
}

fn parse_text(text: &str, vars: Option<&[String]>) -> Result<(Vec<String>, Vec<MultiPoly>), CliError> {
    let lines = split_input(text);
    if lines.is_empty() {
        return Err(ParseError { line: 1, col: 1, msg: "no polynomial in input".into() }.into());
    }
    let src: Vec<&str> = lines.iter().map(|(_, l)| l.as_str()).collect();
    let names: Option<Vec<&str>> = vars.map(|v| v.iter().map(|s| s.as_str()).collect());
    let sys = parse_system(&src, names.as_deref()).map_err(|mut e| {
        if e.line >= 1 && e.line <= lines.len() {
            e.line = lines[e.line - 1].0;
        }
        e
    })?;
    if sys.vars.is_empty() {
        return Err(CliError::Usage("input has no variables".into()));
    }
    Ok((sys.vars, sys.polys))
}

pub fn report_of(vars: Vec<String>, res: &SolveResultN) -> Report {
    let roots = res.roots.iter().map(|r| RootOut { boxq: box_out(&r.boxq), multiplicity: r.multiplicity }).collect();
    let var0 = vars[0].clone();
    let lur = res.lur.as_ref().map(|l| LurOut {
        r: l.polys.iter().map(|p| p.to_string_var(&var0)).collect(),
        shears: l.shears.iter().map(|s| s.to_string()).collect(),
    });
    let s = lur.as_ref().map(|l| l.shears.clone()).unwrap_or_default();
    let d = &res.diagnostics;
    let mut diagnostics = DiagnosticsOut {
        redraws: d.redraws,
        uncertified_roots: d.uncertified_roots,
        filtered: d.filtered,
        levels: d
            .levels
            .iter()
            .map(|l| LevelOut {
                vars: l.vars,
                combination: l.combination.rows.clone(),
                shear: l.shear.to_string(),
                candidates: l.candidates,
                discarded: l.discarded,
                rounds: l.rounds,
            })
            .collect(),
        ..Default::default()
    };
    if let Some(b) = &res.bivariate {
        diagnostics.s_attempts = b.diagnostics.s_attempts;
        diagnostics.refinement_rounds = b.diagnostics.refinement_rounds;
        diagnostics.fast_path = b.diagnostics.fast_path;
        diagnostics.shortcut_fibers = b.diagnostics.shortcut_fibers;
        diagnostics.uncertified_roots = b.diagnostics.uncertified_roots;
    }
    Report { variables: vars, certified: res.certified, s, roots, lur, diagnostics }
}

pub fn cmd_solve(text: &str, args: &SolveArgs) -> Result<Report, CliError> {
    let (vars, polys) = parse_text(text, args.vars.as_deref())?;
    let opts = MultiOptions { mode: args.mode, shortcut: args.shortcut, precision: args.precision, seed: args.seed, ..Default::default() };
    let res = solve(&polys, &opts)?;
    Ok(report_of(vars, &res))
}

pub fn cmd_isolate1(text: &str, args: &SolveArgs) -> Result<Report, CliError> {
    let (vars, polys) = parse_text(text, args.vars.as_deref())?;
    if polys.len() != 1 {
        return Err(Error::ArityMismatch { expected: 1, got: polys.len() }.into());
    }
    if vars.len() != 1 {
        return Err(CliError::Usage(format!("isolate1 needs one variable, found {}", vars.len())));
    }
    let f = polys[0].to_uni(0).expect("univariate");
    let roots = univsolve::isolate(&f, Some(&pow2(-(args.precision as i64))))?;
    let roots =
        roots.iter().map(|u| RootOut { boxq: box_out(&BoxQ::new(vec![u.interval.clone()])), multiplicity: Some(u.multiplicity) }).collect();
    Ok(Report { variables: vars, certified: true, s: Vec::new(), roots, lur: None, diagnostics: DiagnosticsOut::default() })
}

fn iv_text(lo: &str, hi: &str) -> String {
    if lo == hi {
        format!("[{lo}]")
    } else {
        format!("[{lo}, {hi}]")
    }
}

pub fn render(rep: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(rep).expect("serializable") + "\n",
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "variables: {}", rep.variables.join(", ")).unwrap();
            writeln!(out, "certified: {}", rep.certified).unwrap();
            if !rep.s.is_empty() {
                writeln!(out, "shears: {}", rep.s.join(", ")).unwrap();
            }
            writeln!(out, "roots: {}", rep.roots.len()).unwrap();
            for r in &rep.roots {
                let dims: Vec<String> =
                    rep.variables.iter().zip(&r.boxq).map(|(v, [lo, hi])| format!("{v} in {}", iv_text(lo, hi))).collect();
                let m = r.multiplicity.map(|m| m.to_string()).unwrap_or_else(|| "unknown".into());
                writeln!(out, "  {}  multiplicity {m}", dims.join(", ")).unwrap();
            }
            if let Some(l) = &rep.lur {
                for (k, p) in l.r.iter().enumerate() {
                    writeln!(out, "R{}: {p}", k + 1).unwrap();
                }
            }
            out
        }
        Format::BoxesCsv => {
            let mut out = String::from("root,multiplicity");
            for v in &rep.variables {
                write!(out, ",{v}_lo,{v}_hi").unwrap();
            }
            out.push('\n');
            for (k, r) in rep.roots.iter().enumerate() {
                write!(out, "{k},{}", r.multiplicity.map(|m| m.to_string()).unwrap_or_default()).unwrap();
                for [lo, hi] in &r.boxq {
                    write!(out, ",{},{}", approx(lo), approx(hi)).unwrap();
                }
                out.push('\n');
            }
            out
        }
    }
}

fn approx(q: &str) -> f64 {
    rootbox::numeric::parse_rational(q).and_then(|r| r.to_f64()).unwrap_or(f64::NAN)
}

/// Rebuild the exact boxes of a report.
pub fn boxes_of(rep: &Report) -> Option<Vec<BoxQ>> {
    rep.roots
        .iter()
        .map(|r| {
            let dims = r
                .boxq
                .iter()
                .map(|[lo, hi]| Some(IntervalQ::new(rootbox::numeric::parse_rational(lo)?, rootbox::numeric::parse_rational(hi)?)))
                .collect::<Option<Vec<_>>>()?;
            Some(BoxQ::new(dims))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recipe {
    Dense,
    Critical,
}

#[derive(Clone, Debug)]
pub struct BenchArgs {
    pub degree: u32,
    pub coeff_bits: Option<u32>,
    pub terms: Option<usize>,
    pub count: usize,
    pub seed: u64,
    pub recipe: Recipe,
    pub mode: Mode,
    pub timing: bool,
}

/// One CSV row per random bivariate system.
pub fn cmd_bench(args: &BenchArgs) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let bound = match args.coeff_bits {
        Some(b) => (BigInt::from(1) << b) - 1,
        None => BigInt::from(100),
    };
    let mut out = String::from("system,degree,roots,max_multiplicity,certified,fast_path,s,s_attempts,status");
    if args.timing {
        out.push_str(",ms");
    }
    out.push('\n');
    for k in 0..args.count {
        let gen = |rng: &mut ChaCha8Rng| match args.terms {
            Some(t) => random::sparse(rng, 2, args.degree, &bound, t),
            None => random::dense(rng, 2, args.degree, &bound),
        };
        let f = gen(&mut rng);
        let g = match args.recipe {
            Recipe::Dense => gen(&mut rng),
            Recipe::Critical => f.derivative(1),
        };
        let opts = MultiOptions { mode: args.mode, seed: args.seed, ..Default::default() };
        let t0 = Instant::now();
        let res = solve(&[f, g], &opts);
        let ms = t0.elapsed().as_secs_f64() * 1e3;
        match res {
            Ok(r) => {
                let b = r.bivariate.as_ref();
                let maxm = r.roots.iter().filter_map(|x| x.multiplicity).max().unwrap_or(0);
                let s = r.lur.as_ref().and_then(|l| l.shears.first().map(|s| s.to_string())).unwrap_or_default();
                write!(
                    out,
                    "{k},{},{},{maxm},{},{},{s},{},ok",
                    args.degree,
                    r.roots.len(),
                    r.certified,
                    b.map(|b| b.diagnostics.fast_path).unwrap_or(false),
                    b.map(|b| b.diagnostics.s_attempts).unwrap_or(0)
                )
                .unwrap();
            }
            Err(e) => {
                let tag = CliError::from(e).exit_code();
                write!(out, "{k},{},,,,,,,error{tag}", args.degree).unwrap();
            }
        }
        if args.timing {
            write!(out, ",{ms:.3}").unwrap();
        }
        out.push('\n');
    }
    out
}
