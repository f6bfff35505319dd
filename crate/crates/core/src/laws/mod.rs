//! The analytic ratio-distribution family.
//!
//! Every member is a probability law for the gap ratio r = s_n/s_{n-1} on
//! [0, ∞), normalized to unit integral. All families here are interchangeable
//! behind the [`RatioLaw`] trait and can be constructed by name through
//! [`registry::parse_law`] (e.g. `"brody-atas:0.62"`, `"semi-poisson-order:3"`,
//! `"gue"`).
//!
//! Members:
//! - [`BrodyAtas`]: P_β(r) ∝ (r+r²)^β / (1+r+r²)^{1+3β/2} — interpolates from
//!   the uncorrelated regime (β→0 shape, see the family docs for the caveat)
//!   toward the Gaussian ensembles (β = 1, 2, 4).
//! - [`Srpm`]: P_ξ(r) ∝ r^ξ / (1+r)^{2ξ+2} — short-range plasma model,
//!   Poisson at ξ = 0, semi-Poisson at ξ = 1.
//! - [`SemiPoissonOrder`]: k-th order non-overlapping ratio law of a
//!   semi-Poisson spectrum; identical to beta-prime(2k, 2k).
//! - [`PoissonOrder`]: k-th order non-overlapping ratio law of an
//!   uncorrelated spectrum; identical to beta-prime(k, k).
//! - [`PoissonGoeMixture`]: γ·Poisson + (1−γ)·GOE surmise.
//! - [`BetaPrime`]: the generic two-parameter backbone.

mod beta_prime;
mod brody_atas;
mod mixture;
pub mod registry;
mod srpm;

pub use beta_prime::{BetaPrime, PoissonOrder, SemiPoissonOrder};
pub use brody_atas::BrodyAtas;
pub(crate) use brody_atas::ln_z_beta;
pub use mixture::PoissonGoeMixture;
pub use srpm::Srpm;

use crate::error::{domain, Result};
use crate::optimize::golden_max;
use crate::special::{integrate_on, QuadratureSpec};

/// Location of the density maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    Interior(f64),
    /// The density is maximal at the left edge (monotone decreasing), as for
    /// the Poisson law 1/(1+r)².
    Boundary(f64),
}

impl Mode {
    pub fn location(self) -> f64 {
        match self {
            Mode::Interior(r) | Mode::Boundary(r) => r,
        }
    }

    pub fn is_boundary(self) -> bool {
        matches!(self, Mode::Boundary(_))
    }
}

/// First moment of the unfolded ratio, which diverges for heavy-tailed
/// members (any law with tail exponent ≥ −2, e.g. Poisson order 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeanR {
    Finite(f64),
    Divergent,
}

impl MeanR {
    pub fn finite(self) -> Option<f64> {
        match self {
            MeanR::Finite(v) => Some(v),
            MeanR::Divergent => None,
        }
    }
}

/// A ratio-distribution strategy: one member of the analytic family.
///
/// Implementations are immutable after construction and safe to share
/// across threads.
pub trait RatioLaw: Send + Sync {
    /// Registry name of the family, e.g. `"semi-poisson-order"`.
    fn family(&self) -> &'static str;

    /// Family parameters in registry order.
    fn params(&self) -> Vec<(&'static str, f64)>;

    /// Density at r ≥ 0. Defined as 0 for r < 0.
    fn pdf(&self, r: f64) -> f64;

    /// Cumulative distribution. Monotone, cdf(0) = 0, limit 1.
    fn cdf(&self, r: f64) -> f64;

    /// Whether the law is invariant under r ↔ 1/r (change of variables),
    /// i.e. pdf(r) = pdf(1/r)/r². True for every family here except
    /// beta-prime with a ≠ b.
    fn is_symmetric(&self) -> bool;

    /// Location of the density maximum.
    fn mode(&self) -> Mode;

    /// Mean of the unfolded ratio, or an explicit divergence flag.
    fn mean_r(&self) -> MeanR;

    /// Draw one ratio distributed according to this law.
    fn sample(&self, rng: &mut dyn rand::RngCore) -> f64;

    /// Density of the folded ratio r̃ = min(r, 1/r) on [0, 1]:
    /// pdf(r̃) + pdf(1/r̃)/r̃², which is 2·pdf(r̃) for symmetric members.
    fn folded_pdf(&self, rt: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&rt) {
            return Err(domain(format!("folded ratio must lie in [0,1], got {rt}")));
        }
        if self.is_symmetric() {
            return Ok(2.0 * self.pdf(rt));
        }
        if rt == 0.0 {
            // lim_{t->0} pdf(1/t)/t² exists for tails decaying faster than r^-2
            let t = 1e-8;
            return Ok(self.pdf(0.0) + self.pdf(1.0 / t) / (t * t));
        }
        Ok(self.pdf(rt) + self.pdf(1.0 / rt) / (rt * rt))
    }

    /// ⟨r̃⟩ = ∫₀¹ r̃ · folded_pdf(r̃) dr̃, by quadrature.
    fn mean_folded(&self) -> Result<f64> {
        let est = integrate_on(
            |t| t * self.folded_pdf(t).unwrap_or(0.0),
            0.0,
            1.0,
            &QuadratureSpec::default(),
        )?;
        Ok(est.value)
    }

    /// Truncated moment ∫₀^{r_max} r^p pdf(r) dr by quadrature.
    ///
    /// Untruncated second moments diverge for every member of this family
    /// (tails are at best r^{-2-β}); the truncation point is part of the
    /// result and must be reported alongside it.
    fn truncated_moment(&self, p: u32, r_max: f64) -> Result<f64> {
        if p < 1 {
            return Err(domain("moment order p must be >= 1"));
        }
        if !(r_max > 0.0) {
            return Err(domain("r_max must be > 0"));
        }
        let est = integrate_on(|r| r.powi(p as i32) * self.pdf(r), 0.0, r_max, &QuadratureSpec::default())?;
        Ok(est.value)
    }

    /// `family:p1,p2` label used in file metadata and reports.
    fn label(&self) -> String {
        let params = self.params();
        if params.is_empty() {
            self.family().to_string()
        } else {
            let joined: Vec<String> = params.iter().map(|(_, v)| trim_float(*v)).collect();
            format!("{}:{}", self.family(), joined.join(","))
        }
    }
}

fn trim_float(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// Numeric mode search shared by the non-beta-prime families: coarse scan for
/// the global maximum followed by golden-section refinement, then a boundary
/// check against pdf(0).
pub(crate) fn numeric_mode(pdf: impl Fn(f64) -> f64) -> Mode {
    const HI: f64 = 10.0;
    const CELLS: usize = 1024;
    let mut best_i = 0;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=CELLS {
        let r = HI * i as f64 / CELLS as f64;
        let v = pdf(r);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let lo = HI * best_i.saturating_sub(1) as f64 / CELLS as f64;
    let hi = HI * (best_i + 1).min(CELLS) as f64 / CELLS as f64;
    let (x, fx) = golden_max(&pdf, lo, hi, 1e-12);
    let at_zero = pdf(0.0);
    if x < 1e-9 || at_zero >= fx {
        Mode::Boundary(0.0)
    } else {
        Mode::Interior(x)
    }
}

/// Evaluation grid for curve export and curve-to-curve comparison.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
    pub scale: GridScale,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridScale {
    Linear,
    Log,
}

impl GridSpec {
    pub fn linear(r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        Self::new(r_min, r_max, n_points, GridScale::Linear)
    }

    pub fn new(r_min: f64, r_max: f64, n_points: usize, scale: GridScale) -> Result<Self> {
        if !(r_min.is_finite() && r_max.is_finite()) || r_min >= r_max {
            return Err(domain(format!("grid needs r_min < r_max, got [{r_min}, {r_max}]")));
        }
        if n_points < 2 {
            return Err(domain("grid needs at least 2 points"));
        }
        if scale == GridScale::Log && r_min <= 0.0 {
            return Err(domain("log grid needs r_min > 0"));
        }
        Ok(Self { r_min, r_max, n_points, scale })
    }

    /// The grid points, endpoints included.
    pub fn points(&self) -> Vec<f64> {
        let n = self.n_points;
        match self.scale {
            GridScale::Linear => (0..n)
                .map(|i| self.r_min + (self.r_max - self.r_min) * i as f64 / (n - 1) as f64)
                .collect(),
            GridScale::Log => {
                let (la, lb) = (self.r_min.ln(), self.r_max.ln());
                (0..n).map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp()).collect()
            }
        }
    }
}

/// Writes a two-column `r,pdf` CSV table with 17-significant-digit floats.
pub fn write_pdf_table<W: std::io::Write>(w: &mut W, law: &dyn RatioLaw, grid: &GridSpec) -> Result<()> {
    writeln!(w, "r,pdf")?;
    for r in grid.points() {
        writeln!(w, "{r:.16e},{:.16e}", law.pdf(r))?;
    }
    Ok(())
}

/// Same table for the folded density on [0, 1].
pub fn write_folded_pdf_table<W: std::io::Write>(w: &mut W, law: &dyn RatioLaw, n_points: usize) -> Result<()> {
    let grid = GridSpec::linear(0.0, 1.0, n_points)?;
    writeln!(w, "rt,pdf")?;
    for rt in grid.points() {
        writeln!(w, "{rt:.16e},{:.16e}", law.folded_pdf(rt)?)?;
    }
    Ok(())
}
