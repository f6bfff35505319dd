//! Name-based construction of ratio laws.
//!
//! Laws are selected at runtime with a `family:params` mini-syntax:
//! `brody-atas:0.62`, `srpm:0.97`, `semi-poisson-order:3`, `poisson-order:4`,
//! `mixture:0.23`, `beta-prime:2,2`. A handful of parameter-free presets
//! (`poisson`, `semi-poisson`, `goe`, `gue`, `gse`) expand to the
//! corresponding parameterized members.

use crate::error::{domain, Result};
use crate::laws::{BetaPrime, BrodyAtas, PoissonGoeMixture, PoissonOrder, RatioLaw, SemiPoissonOrder, Srpm};

/// One registered family: name, parameter names, and a constructor.
pub struct LawRegistration {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub summary: &'static str,
    ctor: fn(&[f64]) -> Result<Box<dyn RatioLaw>>,
}

impl LawRegistration {
    pub fn construct(&self, params: &[f64]) -> Result<Box<dyn RatioLaw>> {
        if params.len() != self.params.len() {
            return Err(domain(format!(
                "family '{}' takes {} parameter(s) ({}), got {}",
                self.name,
                self.params.len(),
                self.params.join(","),
                params.len()
            )));
        }
        (self.ctor)(params)
    }
}

fn as_order(v: f64, what: &str) -> Result<u32> {
    if v.fract() != 0.0 || !(1.0..=1e6).contains(&v) {
        return Err(domain(format!("{what} must be a positive integer, got {v}")));
    }
    Ok(v as u32)
}

static REGISTRY: &[LawRegistration] = &[
    LawRegistration {
        name: "brody-atas",
        params: &["beta"],
        summary: "repulsion interpolation (r+r^2)^beta/(1+r+r^2)^(1+3beta/2); beta=1,2,4 -> GOE,GUE,GSE",
        ctor: |p| Ok(Box::new(BrodyAtas::new(p[0])?)),
    },
    LawRegistration {
        name: "srpm",
        params: &["xi"],
        summary: "short-range plasma model r^xi/(1+r)^(2xi+2); xi=0 Poisson, xi=1 semi-Poisson",
        ctor: |p| Ok(Box::new(Srpm::new(p[0])?)),
    },
    LawRegistration {
        name: "semi-poisson-order",
        params: &["k"],
        summary: "k-th order non-overlapping ratio law of a semi-Poisson spectrum (beta-prime(2k,2k))",
        ctor: |p| Ok(Box::new(SemiPoissonOrder::new(as_order(p[0], "order k")?)?)),
    },
    LawRegistration {
        name: "poisson-order",
        params: &["k"],
        summary: "k-th order non-overlapping ratio law of an uncorrelated spectrum (beta-prime(k,k))",
        ctor: |p| Ok(Box::new(PoissonOrder::new(as_order(p[0], "order k")?)?)),
    },
    LawRegistration {
        name: "mixture",
        params: &["gamma"],
        summary: "gamma*Poisson + (1-gamma)*GOE ratio-density mixture",
        ctor: |p| Ok(Box::new(PoissonGoeMixture::new(p[0])?)),
    },
    LawRegistration {
        name: "beta-prime",
        params: &["a", "b"],
        summary: "generic beta-prime law r^(a-1)/(B(a,b)(1+r)^(a+b))",
        ctor: |p| Ok(Box::new(BetaPrime::new(p[0], p[1])?)),
    },
];

/// Parameter-free shorthands.
static PRESETS: &[(&str, &str)] = &[
    ("poisson", "poisson-order:1"),
    ("semi-poisson", "semi-poisson-order:1"),
    ("goe", "brody-atas:1"),
    ("gue", "brody-atas:2"),
    ("gse", "brody-atas:4"),
];

/// All registered families, for `--help` style listings.
pub fn registrations() -> &'static [LawRegistration] {
    REGISTRY
}

pub fn presets() -> &'static [(&'static str, &'static str)] {
    PRESETS
}

/// Parses a `family:params` law specification.
pub fn parse_law(spec: &str) -> Result<Box<dyn RatioLaw>> {
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

    let reg = REGISTRY
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| domain(format!("unknown distribution family '{name}' (known: {})", known_names())))?;

    let params: Vec<f64> = match param_str {
        None => Vec::new(),
        Some(s) if s.is_empty() => Vec::new(),
        Some(s) => s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|_| domain(format!("bad parameter '{tok}' in '{spec}'")))
            })
            .collect::<Result<_>>()?,
    };

    reg.construct(&params)
}

fn known_names() -> String {
    let mut names: Vec<&str> = REGISTRY.iter().map(|r| r.name).collect();
    names.extend(PRESETS.iter().map(|(a, _)| *a));
    names.join(", ")
}
