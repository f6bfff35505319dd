//! Short-range plasma model ratio law.
//!
//! ```text
//! P_ξ(r) = (1/Z_ξ) r^ξ / (1+r)^{2ξ+2},
//! Z_ξ    = (ξ+1)² Γ⁴(ξ+1) / ( Γ(2ξ+2) Γ²(ξ+2) )
//! ```
//!
//! Z_ξ reduces algebraically to B(ξ+1, ξ+1) (cancel Γ(ξ+2) = (ξ+1)Γ(ξ+1)),
//! so the family is exactly beta-prime(ξ+1, ξ+1): Poisson at ξ = 0,
//! semi-Poisson 6r/(1+r)⁴ at ξ = 1.
//!
//! Note the convention pitfall: the literature sometimes quotes the
//! *reciprocal* ("Z = 6" for ξ = 1) where the expression above gives 1/6.
//! This implementation always divides by Z_ξ = B(ξ+1, ξ+1), which yields the
//! correctly normalized density either way.

use crate::error::{domain, Result};
use crate::laws::{BetaPrime, MeanR, Mode, RatioLaw};
use crate::special::ln_gamma_raw;

#[derive(Debug, Clone, PartialEq)]
pub struct Srpm {
    xi: f64,
    inner: BetaPrime,
}

impl Srpm {
    pub fn new(xi: f64) -> Result<Self> {
        if !(xi >= 0.0 && xi.is_finite()) {
            return Err(domain(format!("srpm requires xi >= 0, got {xi}")));
        }
        Ok(Self { xi, inner: BetaPrime::new(xi + 1.0, xi + 1.0)? })
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// Z_ξ evaluated from its explicit gamma-function form (not the beta
    /// reduction); kept separate so the algebraic identity
    /// Z_ξ = B(ξ+1, ξ+1) is testable rather than assumed.
    pub fn plasma_normalization(xi: f64) -> f64 {
        (2.0 * (xi + 1.0).ln() + 4.0 * ln_gamma_raw(xi + 1.0)
            - ln_gamma_raw(2.0 * xi + 2.0)
            - 2.0 * ln_gamma_raw(xi + 2.0))
        .exp()
    }
}

impl RatioLaw for Srpm {
    fn family(&self) -> &'static str {
        "srpm"
    }

    fn params(&self) -> Vec<(&'static str, f64)> {
        vec![("xi", self.xi)]
    }

    fn pdf(&self, r: f64) -> f64 {
        self.inner.pdf(r)
    }

    fn cdf(&self, r: f64) -> f64 {
        self.inner.cdf(r)
    }

    fn is_symmetric(&self) -> bool {
        true
    }

    fn mode(&self) -> Mode {
        self.inner.mode()
    }

    fn mean_r(&self) -> MeanR {
        self.inner.mean_r()
    }

    fn sample(&self, rng: &mut dyn rand::RngCore) -> f64 {
        self.inner.sample(rng)
    }
}
