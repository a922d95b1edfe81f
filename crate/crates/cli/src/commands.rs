use std::fs;
use std::path::Path;

use quatspec::io::{matrix_from_json, scan_csv, to_json};
use quatspec::spectrum::{scan as scan_grid, spectrum_report};
use quatspec::structured::{parse_expr, Env};
use quatspec::verify::{run_suite, suite_names, CriterionReport, SuiteReport, Tally};
use quatspec::{fredholm, Error, Quaternion};

use crate::{exit_code, Global};

const GOLDEN_DIAG12: &str = include_str!("../tests/data/diag12.json");
const GOLDEN_IDENTITY: &str = include_str!("../tests/data/identity2.json");
const GOLDEN_SPECTRUM: &str = include_str!("../tests/golden/spectrum_diag12.json");
const GOLDEN_SCAN: &str = include_str!("../tests/golden/scan_identity.csv");
const GOLDEN_FREDHOLM: &str = include_str!("../tests/golden/fredholm_s3.json");

pub struct Failure {
    pub code: u8,
    message: String,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "error: {}", self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

fn input(message: String) -> Failure {
    Failure { code: 2, message }
}

type Outcome = std::result::Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn emit(g: &Global, text: &str) -> Result<(), Failure> {
    match &g.out {
        Some(p) => fs::write(p, text).map_err(|e| input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn tol(g: &Global) -> Result<Option<f64>, Failure> {
    match g.tol {
        Some(t) if !(t > 0.0 && t.is_finite()) => Err(input(format!("--tol must be positive, got {t}"))),
        t => Ok(t),
    }
}

pub fn spectrum_text(matrix_json: &str, tol: Option<f64>) -> Result<String, Error> {
    let a = matrix_from_json(matrix_json)?;
    to_json(&spectrum_report(&a, tol)?)
}

pub fn scan_text(matrix_json: &str, re: (f64, f64), rad_max: f64, grid: (usize, usize)) -> Result<String, Error> {
    let a = matrix_from_json(matrix_json)?;
    Ok(scan_csv(&scan_grid(&a, re, (0.0, rad_max), grid)?))
}

pub fn fredholm_text(expr: &str, env: &Env, q: Option<Quaternion>, delta: Option<f64>) -> Result<String, Error> {
    let e = parse_expr(expr, env)?;
    match q {
        Some(q) => to_json(&quatspec::essential::is_fredholm_at(&e, q)?),
        None => to_json(&fredholm::fredholm_evidence(&e, delta.unwrap_or(fredholm::DEFAULT_DELTA))?.data),
    }
}

fn parse_grid(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || input(format!("grid must be `N` or `NxM`, got `{s}`"));
    let mut parts = s.split(['x', 'X']).map(|p| p.trim().parse::<usize>().map_err(|_| bad()));
    let n = parts.next().ok_or_else(bad)??;
    let m = parts.next().transpose()?.unwrap_or(n);
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok((n, m))
}

fn parse_q(s: &str) -> Result<Quaternion, Failure> {
    let bad = || input(format!("q must be `q0,q1,q2,q3`, got `{s}`"));
    let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
    let xs: Vec<f64> = trimmed.split(',').map(|p| p.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<_, _>>()?;
    match xs[..] {
        [a, b, c, d] if xs.iter().all(|x| x.is_finite()) => Ok(Quaternion::new(a, b, c, d)),
        _ => Err(bad()),
    }
}

fn caret(expr: &str, e: Error) -> Failure {
    match &e {
        Error::Syntax { offset, .. } => {
            let col = expr.get(..*offset).map_or(*offset, |p| p.chars().count());
            Failure { code: 2, message: format!("{e}\n  {expr}\n  {}^", " ".repeat(col)) }
        }
        _ => e.into(),
    }
}

pub fn spectrum(g: &Global, path: &Path) -> Outcome {
    let text = spectrum_text(&read(path)?, tol(g)?)?;
    emit(g, &text)?;
    Ok(0)
}

pub fn scan(g: &Global, path: &Path, re: (f64, f64), rad_max: f64, grid: &str) -> Outcome {
    let grid = parse_grid(grid)?;
    let text = scan_text(&read(path)?, re, rad_max, grid)?;
    emit(g, &text)?;
    Ok(0)
}

pub fn fredholm(g: &Global, expr: &str, env: Option<&Path>, q: Option<&str>) -> Outcome {
    let env = match env {
        Some(p) => Env::from_json(&read(p)?)?,
        None => Env::default(),
    };
    let q = q.map(parse_q).transpose()?;
    let delta = tol(g)?;
    let text = fredholm_text(expr, &env, q, delta).map_err(|e| caret(expr, e))?;
    emit(g, &text)?;
    Ok(0)
}

/// Reruns the golden commands in process and compares bytes.
pub fn golden_check() -> Tally {
    let mut t = Tally::default();
    let runs: [(&str, Result<String, Error>, &str); 3] = [
        ("spectrum diag(1,2)", spectrum_text(GOLDEN_DIAG12, None), GOLDEN_SPECTRUM),
        ("scan identity", scan_text(GOLDEN_IDENTITY, (0.0, 2.0), 1.0, (21, 11)), GOLDEN_SCAN),
        ("fredholm S^3", fredholm_text("S^3", &Env::default(), None, None), GOLDEN_FREDHOLM),
    ];
    for (name, got, want) in runs {
        t.case();
        if let Some(got) = t.check_result(got, || name.to_string()) {
            t.check(got == want, || format!("{name}: output differs from golden"));
        }
    }
    t
}

pub fn verify(g: &Global, suite: &str) -> Outcome {
    let mut known = suite_names();
    known.push("golden");
    if !known.contains(&suite) {
        return Err(input(format!("unknown suite `{suite}`; known: {}", known.join(", "))));
    }
    let report = match suite {
        "golden" => SuiteReport::from_tally(suite, g.seed, golden_check()),
        "acceptance" | "all" => {
            let mut r = run_suite(suite, g.seed)?;
            let mut cs = std::mem::take(&mut r.criteria);
            let pos = cs.iter().position(|c| c.id.is_none()).unwrap_or(cs.len());
            cs.insert(pos, CriterionReport::new(11, "golden", golden_check()));
            SuiteReport::from_criteria(suite, g.seed, cs)
        }
        _ => run_suite(suite, g.seed)?,
    };
    emit(g, &to_json(&report)?)?;
    Ok(if report.passed() { 0 } else { 4 })
}
