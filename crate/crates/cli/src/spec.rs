//! Ring files: a JSON description of `R = F_p[vars]/(relations)` and
//! named ideals of it.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use hk_core::{Ideal, QuotientRing};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub char: u64,
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub assert_cm: bool,
    #[serde(default)]
    pub assert_reduced: bool,
    #[serde(default)]
    pub ideals: BTreeMap<String, Vec<String>>,
    /// Name of the ideal taken as the test ideal by `search`.
    #[serde(default)]
    pub test_ideal: Option<String>,
    /// Name of a user-supplied reduction `J`.
    #[serde(default)]
    pub reduction: Option<String>,
}

/// A parsed ring file: the ring and every named ideal, built up front so
/// that input errors surface before any computation.
pub struct Loaded {
    pub spec: RingSpec,
    pub ring: Arc<QuotientRing>,
    pub ideals: BTreeMap<String, Ideal>,
}

impl RingSpec {
    pub fn from_path(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_json(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(self, degree_cap: u32) -> anyhow::Result<Loaded> {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let rels: Vec<&str> = self.relations.iter().map(String::as_str).collect();
        let ring = QuotientRing::with_degree_cap(self.char, &vars, &rels, degree_cap)?;
        let mut ideals = BTreeMap::new();
        for (name, gens) in &self.ideals {
            let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
            let ideal = ring.ideal(&gens).with_context(|| format!("ideal `{name}`"))?;
            ideals.insert(name.clone(), ideal);
        }
        for name in self.test_ideal.iter().chain(&self.reduction) {
            if !ideals.contains_key(name) && name != "m" {
                return Err(anyhow!("ring file names undefined ideal `{name}`"));
            }
        }
        Ok(Loaded {
            spec: self,
            ring,
            ideals,
        })
    }
}

impl Loaded {
    /// A named ideal; `m` is the maximal ideal unless the file defines it.
    pub fn ideal(&self, name: &str) -> anyhow::Result<Ideal> {
        match self.ideals.get(name) {
            Some(i) => Ok(i.clone()),
            None if name == "m" => Ok(self.ring.maximal_ideal()),
            None => Err(anyhow!("no ideal named `{name}` in the ring file")),
        }
    }

    pub fn reduction(&self) -> anyhow::Result<Option<Ideal>> {
        self.spec.reduction.as_deref().map(|n| self.ideal(n)).transpose()
    }

    pub fn test_ideal(&self) -> anyhow::Result<Ideal> {
        let name = self
            .spec
            .test_ideal
            .as_deref()
            .ok_or_else(|| anyhow!("`search` needs `test_ideal` in the ring file"))?;
        self.ideal(name)
    }
}
