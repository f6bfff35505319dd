//! Level sequences: the universal input of every statistic in this crate.

use serde::{Deserialize, Serialize};

use crate::ensemble::EnsembleSpec;
use crate::error::{data, Result};

/// Physical unit of the level values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Unit {
    Dimensionless,
    #[serde(rename = "GHz")]
    GigaHertz,
}

impl Unit {
    pub fn label(self) -> &'static str {
        match self {
            Unit::Dimensionless => "dimensionless",
            Unit::GigaHertz => "GHz",
        }
    }

    pub fn parse(s: &str) -> Option<Unit> {
        match s.trim() {
            "dimensionless" => Some(Unit::Dimensionless),
            "GHz" | "ghz" => Some(Unit::GigaHertz),
            _ => None,
        }
    }
}

/// Where a level sequence came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Generated(EnsembleSpec),
    Ingested(String),
    /// Built directly from values (tests, synthetic constructions).
    Raw,
}

/// A sorted list of energy levels or eigenfrequencies.
///
/// Invariants enforced at construction: at least two levels, all finite,
/// nondecreasing. Exact ties (degeneracies) are allowed; ratio construction
/// skips them and reports the count.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSequence {
    levels: Vec<f64>,
    unit: Unit,
    provenance: Provenance,
}

impl LevelSequence {
    pub fn new(levels: Vec<f64>, unit: Unit, provenance: Provenance) -> Result<Self> {
        if levels.len() < 2 {
            return Err(data(format!("a level sequence needs at least 2 levels, got {}", levels.len())));
        }
        if let Some(bad) = levels.iter().find(|v| !v.is_finite()) {
            return Err(data(format!("non-finite level value {bad}")));
        }
        if levels.windows(2).any(|w| w[1] < w[0]) {
            return Err(data("levels must be nondecreasing".to_string()));
        }
        Ok(Self { levels, unit, provenance })
    }

    /// Sorts the input first; used by ingestion where file order is untrusted.
    pub fn from_unsorted(mut levels: Vec<f64>, unit: Unit, provenance: Provenance) -> Result<Self> {
        levels.sort_by(f64::total_cmp);
        Self::new(levels, unit, provenance)
    }

    pub fn values(&self) -> &[f64] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: len >= 2
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Keeps every `m`-th level starting at `offset` (daisy decimation).
    /// `m = 1` is the identity.
    pub fn decimate(&self, m: usize, offset: usize) -> Result<LevelSequence> {
        if m < 1 {
            return Err(crate::error::domain("decimation stride m must be >= 1"));
        }
        if offset >= m {
            return Err(crate::error::domain(format!("offset must satisfy 0 <= offset < m, got offset={offset}, m={m}")));
        }
        let kept: Vec<f64> = self.levels.iter().skip(offset).step_by(m).copied().collect();
        if kept.len() < 2 {
            return Err(crate::error::domain(format!(
                "decimation by m={m} leaves {} levels; need at least 2",
                kept.len()
            )));
        }
        LevelSequence::new(kept, self.unit, self.provenance.clone())
    }
}
