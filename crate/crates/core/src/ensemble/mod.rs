//! Seeded random level-sequence generators.
//!
//! Each ensemble is a strategy behind [`SpectrumGenerator`], registered by
//! name and constructible from a `family:params` string (`poisson`,
//! `semi-poisson`, `gamma:2,2`, `gaussian-beta:1`, `daisy:2`,
//! `superposition:0.23`). Generation is pure given (spec, seed):
//! realization r of a run draws from the derived stream `hash(seed, r)`,
//! so multi-realization runs parallelize without changing output.

pub mod generators;
pub mod tridiag;

pub use generators::{
    gaussian_beta_bulk, DaisyPoisson, GammaSpacings, GaussianBeta, Poisson, Superposition, DEFAULT_BLOCK_DIM,
    DEFAULT_BULK_FRACTION,
};
pub use tridiag::symmetric_tridiagonal_eigenvalues;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::levels::LevelSequence;
use crate::sampling::derive_seed;

/// A level-sequence generator strategy.
pub trait SpectrumGenerator: Send + Sync {
    /// Registry name, e.g. `"gamma"`.
    fn family(&self) -> &'static str;

    /// Family parameters in registry order.
    fn params(&self) -> Vec<(&'static str, f64)>;

    /// Generates `n_levels` levels deterministically from `seed`.
    fn generate(&self, n_levels: usize, seed: u64) -> Result<LevelSequence>;

    /// Serializable description of a single realization.
    fn spec(&self, n_levels: usize, seed: u64) -> EnsembleSpec {
        EnsembleSpec {
            name: self.family().to_string(),
            params: self.params().iter().map(|(_, v)| *v).collect(),
            n_levels,
            seed,
        }
    }
}

/// Generator configuration: family, parameters, size, seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub name: String,
    pub params: Vec<f64>,
    pub n_levels: usize,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn generator(&self) -> Result<Box<dyn SpectrumGenerator>> {
        build_generator(&self.name, &self.params)
    }

    /// The derived seed of realization `index`.
    pub fn realization_seed(&self, index: u64) -> u64 {
        derive_seed(self.seed, index)
    }

    /// Generates realization `index`.
    pub fn realize(&self, index: u64) -> Result<LevelSequence> {
        self.generator()?.generate(self.n_levels, self.realization_seed(index))
    }

    /// Generates `count` realizations in parallel. Output is a pure function
    /// of the spec regardless of thread count.
    pub fn realize_many(&self, count: usize) -> Result<Vec<LevelSequence>> {
        let gen = self.generator()?;
        (0..count as u64)
            .into_par_iter()
            .map(|i| gen.generate(self.n_levels, self.realization_seed(i)))
            .collect()
    }
}

/// One registered ensemble family.
pub struct EnsembleRegistration {
    pub name: &'static str,
    /// Parameter names; a trailing `?` marks optional parameters with defaults.
    pub params: &'static [&'static str],
    pub summary: &'static str,
    ctor: fn(&[f64]) -> Result<Box<dyn SpectrumGenerator>>,
}

static REGISTRY: &[EnsembleRegistration] = &[
    EnsembleRegistration {
        name: "poisson",
        params: &[],
        summary: "unit-mean exponential spacings (uncorrelated levels)",
        ctor: |_| Ok(Box::new(Poisson)),
    },
    EnsembleRegistration {
        name: "gamma",
        params: &["alpha", "lambda"],
        summary: "i.i.d. Gamma(alpha, lambda) spacings; 2,2 is the semi-Poisson generator",
        ctor: |p| Ok(Box::new(GammaSpacings::new(p[0], p[1])?)),
    },
    EnsembleRegistration {
        name: "gaussian-beta",
        params: &["beta", "bulk-fraction?"],
        summary: "tridiagonal Gaussian beta-ensemble bulk (beta=1,2,4 -> GOE,GUE,GSE)",
        ctor: |p| {
            let bulk = p.get(1).copied().unwrap_or(DEFAULT_BULK_FRACTION);
            Ok(Box::new(GaussianBeta::new(p[0], bulk)?))
        },
    },
    EnsembleRegistration {
        name: "daisy",
        params: &["m", "offset?"],
        summary: "Poisson spectrum decimated to every m-th level (m=2 -> semi-Poisson)",
        ctor: |p| {
            let m = require_index(p[0], "stride m")?;
            let offset = match p.get(1) {
                Some(&v) => require_offset(v)?,
                None => 0,
            };
            Ok(Box::new(DaisyPoisson::new(m, offset)?))
        },
    },
    EnsembleRegistration {
        name: "superposition",
        params: &["gamma"],
        summary: "independent Poisson (density gamma) and GOE (density 1-gamma) spectra merged",
        ctor: |p| Ok(Box::new(Superposition::new(p[0])?)),
    },
];

fn require_index(v: f64, what: &str) -> Result<usize> {
    if v.fract() != 0.0 || !(1.0..=1e9).contains(&v) {
        return Err(domain(format!("{what} must be a positive integer, got {v}")));
    }
    Ok(v as usize)
}

fn require_offset(v: f64) -> Result<usize> {
    if v.fract() != 0.0 || !(0.0..=1e9).contains(&v) {
        return Err(domain(format!("offset must be a nonnegative integer, got {v}")));
    }
    Ok(v as usize)
}

pub fn registrations() -> &'static [EnsembleRegistration] {
    REGISTRY
}

/// Ensemble presets mirroring the distribution shorthands.
static PRESETS: &[(&str, &str)] = &[("semi-poisson", "gamma:2,2"), ("goe", "gaussian-beta:1"), ("gue", "gaussian-beta:2"), ("gse", "gaussian-beta:4")];

pub fn presets() -> &'static [(&'static str, &'static str)] {
    PRESETS
}

fn build_generator(name: &str, params: &[f64]) -> Result<Box<dyn SpectrumGenerator>> {
    let reg = REGISTRY
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| domain(format!("unknown ensemble '{name}'")))?;
    let required = reg.params.iter().filter(|p| !p.ends_with('?')).count();
    if params.len() < required || params.len() > reg.params.len() {
        return Err(domain(format!(
            "ensemble '{}' takes {}..={} parameter(s) ({}), got {}",
            reg.name,
            required,
            reg.params.len(),
            reg.params.join(","),
            params.len()
        )));
    }
    (reg.ctor)(params)
}

/// Parses an ensemble specification: `family[:p1,p2]` plus presets
/// (`semi-poisson`, `goe`, `gue`, `gse`).
pub fn parse_generator(spec: &str) -> Result<Box<dyn SpectrumGenerator>> {
    let spec = spec.trim();
    let resolved = PRESETS
        .iter()
        .find(|(alias, _)| *alias == spec)
        .map(|(_, full)| *full)
        .unwrap_or(spec);
    let (name, param_str) = match resolved.split_once(':') {
        Some((n, p)) => (n.trim(), Some(p.trim())),
        None => (resolved, None),
    };
    let params: Vec<f64> = match param_str {
        None => Vec::new(),
        Some(s) if s.is_empty() => Vec::new(),
        Some(s) => s
            .split(',')
            .map(|tok| tok.trim().parse::<f64>().map_err(|_| domain(format!("bad parameter '{tok}' in '{spec}'"))))
            .collect::<Result<_>>()?,
    };
    build_generator(name, &params)
}
