//! Scenario files: one JSON document describing a family, a mode, and the
//! run parameters. Schema violations are reported with field paths.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bundle::BundleFamily;
use crate::error::{Error, Result};
use crate::fieldcore::{ComponentType, DEFAULT_PRIME};

use super::figures::Fraction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Bounds,
    Certify,
    CertifyR,
    Sequence,
    Figure,
}

/// `prime` accepts one modulus or a grid of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PrimeSpec {
    One(u64),
    Many(Vec<u64>),
}

/// `direction` is either a component index or the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DirectionSpec {
    Index(usize),
    Named(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    pub n_min: u32,
    pub n_max: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub family: BundleFamily,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<PrimeSpec>,
    /// Seed grid for defect-evidence scans (together with a prime grid).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Probe component for sequence mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<usize>,
    /// Trace direction for sequence mode; defaults to the diagonal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<DirectionSpec>,
    /// Step count for sequence mode; absent means a single diagonal check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<u64>,
    /// Split fraction for figure mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fraction: Option<Fraction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<PathBuf>,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Scenario> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Scenario(format!("cannot read {}: {e}", path.display())))?;
        Scenario::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Scenario> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let scenario: Scenario = serde_path_to_error::deserialize(de).map_err(|e| {
            Error::Scenario(format!("at field '{}': {}", e.path(), e.inner()))
        })?;
        scenario.family.validate()?;
        Ok(scenario)
    }

    pub fn alpha_type(&self) -> Result<ComponentType> {
        let entries = self
            .alpha
            .clone()
            .ok_or_else(|| Error::Scenario("field 'alpha' is required for this mode".into()))?;
        let k = self.family.component_count();
        if entries.len() != k {
            return Err(Error::Scenario(format!(
                "at field 'alpha': length {} does not match the {k} components of the family",
                entries.len()
            )));
        }
        Ok(ComponentType::new(entries))
    }

    pub fn primes(&self) -> Vec<u64> {
        match &self.prime {
            None => vec![DEFAULT_PRIME],
            Some(PrimeSpec::One(p)) => vec![*p],
            Some(PrimeSpec::Many(ps)) => ps.clone(),
        }
    }

    pub fn single_prime(&self) -> Result<u64> {
        let primes = self.primes();
        if primes.len() != 1 {
            return Err(Error::Scenario(
                "at field 'prime': this mode takes a single prime".into(),
            ));
        }
        Ok(primes[0])
    }

    pub fn seed_or_default(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn trials_or_default(&self) -> u32 {
        self.trials.unwrap_or(3)
    }
}
