//! Named diagonals and finite-rank patches referenced by expressions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Finitely supported vector in `ℓ²(ℕ, ℍ)`, sorted by index.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Quaternion)>,
}

impl SparseVec {
    pub fn new(support: &[usize], values: &[Quaternion]) -> Result<Self> {
        if support.len() != values.len() {
            return Err(Error::Input(format!(
                "sparse vector has {} indices but {} values",
                support.len(),
                values.len()
            )));
        }
        let mut entries: Vec<(usize, Quaternion)> = support.iter().copied().zip(values.iter().copied()).collect();
        entries.sort_by_key(|e| e.0);
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Input("sparse vector has a repeated index".into()));
        }
        Ok(SparseVec { entries })
    }

    pub fn entries(&self) -> &[(usize, Quaternion)] {
        &self.entries
    }

    pub fn get(&self, k: usize) -> Quaternion {
        match self.entries.binary_search_by_key(&k, |e| e.0) {
            Ok(p) => self.entries[p].1,
            Err(_) => Quaternion::ZERO,
        }
    }

    /// One past the largest index in the support.
    pub fn extent(&self) -> usize {
        self.entries.last().map_or(0, |e| e.0 + 1)
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|e| e.1.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|e| e.1.is_real())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SparseFile {
    support: Vec<usize>,
    values: Vec<Quaternion>,
}

impl Serialize for SparseVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SparseFile {
            support: self.entries.iter().map(|e| e.0).collect(),
            values: self.entries.iter().map(|e| e.1).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparseVec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = SparseFile::deserialize(d)?;
        SparseVec::new(&f.support, &f.values).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalSpec {
    pub prefix: Vec<Quaternion>,
    pub limit: Quaternion,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub u: SparseVec,
    pub v: SparseVec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatchSpec {
    pub pairs: Vec<PairSpec>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Env {
    #[serde(default)]
    pub diagonals: BTreeMap<String, DiagonalSpec>,
    #[serde(default)]
    pub patches: BTreeMap<String, PatchSpec>,
}

impl Env {
    pub fn from_json(text: &str) -> Result<Self> {
        let env: Env = serde_json::from_str(text).map_err(|e| Error::Input(format!("environment: {e}")))?;
        for (name, d) in &env.diagonals {
            let finite = d.prefix.iter().chain(std::iter::once(&d.limit)).all(|q| q.to_array().iter().all(|x| x.is_finite()));
            if !finite {
                return Err(Error::Input(format!("diagonal `{name}` has non-finite entries")));
            }
        }
        Ok(env)
    }
}
