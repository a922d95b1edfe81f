//! Seeded verification suites covering the library's laws and acceptance
//! criteria.

mod criteria;
pub mod gen;
mod laws;

use serde::Serialize;

use crate::error::{Error, Result};

pub use criteria::{criterion, CRITERIA};

#[derive(Debug, Clone, Default, Serialize)]
pub struct Tally {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Tally {
    pub fn case(&mut self) {
        self.cases += 1;
    }

    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }

    pub fn check_result<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<u32>,
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CriterionReport {
    pub fn new(id: u32, name: &str, t: Tally) -> Self {
        CriterionReport { id: Some(id), name: name.to_string(), cases: t.cases, failures: t.failures }
    }

    pub fn law(name: &str, t: Tally) -> Self {
        CriterionReport { id: None, name: name.to_string(), cases: t.cases, failures: t.failures }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub criteria: Vec<CriterionReport>,
}

impl SuiteReport {
    pub fn from_tally(suite: &str, seed: u64, t: Tally) -> Self {
        SuiteReport { suite: suite.to_string(), seed, cases: t.cases, failures: t.failures, criteria: Vec::new() }
    }

    pub fn from_criteria(suite: &str, seed: u64, criteria: Vec<CriterionReport>) -> Self {
        let cases = criteria.iter().map(|c| c.cases).sum();
        let failures = criteria
            .iter()
            .flat_map(|c| c.failures.iter().map(move |f| format!("[{}] {f}", c.name)))
            .collect();
        SuiteReport { suite: suite.to_string(), seed, cases, failures, criteria }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const LAW_SUITES: [&str; 2] = ["index-laws", "essential-laws"];

/// Names accepted by [`run_suite`].
pub fn suite_names() -> Vec<&'static str> {
    let mut v: Vec<&str> = CRITERIA.iter().map(|c| c.1).collect();
    v.extend(LAW_SUITES);
    v.push("acceptance");
    v.push("all");
    v
}

/// Runs a named suite. `acceptance` runs every library-side criterion and
/// `all` adds the law suites.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    if let Some(&(id, n)) = CRITERIA.iter().find(|c| c.1 == name) {
        let c = criterion(id, seed)?;
        let t = Tally { cases: c.cases, failures: c.failures };
        return Ok(SuiteReport::from_tally(n, seed, t));
    }
    match name {
        "index-laws" => Ok(SuiteReport::from_tally(name, seed, laws::index_laws(seed))),
        "essential-laws" => Ok(SuiteReport::from_tally(name, seed, laws::essential_laws(seed))),
        "acceptance" => {
            let cs = CRITERIA.iter().map(|c| criterion(c.0, seed)).collect::<Result<Vec<_>>>()?;
            Ok(SuiteReport::from_criteria(name, seed, cs))
        }
        "all" => {
            let mut cs = CRITERIA.iter().map(|c| criterion(c.0, seed)).collect::<Result<Vec<_>>>()?;
            cs.push(CriterionReport::law("index-laws", laws::index_laws(seed)));
            cs.push(CriterionReport::law("essential-laws", laws::essential_laws(seed)));
            Ok(SuiteReport::from_criteria(name, seed, cs))
        }
        _ => Err(Error::Input(format!("unknown suite `{name}`; known: {}", suite_names().join(", ")))),
    }
}
