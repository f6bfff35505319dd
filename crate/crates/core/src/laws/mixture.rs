//! Two-component ratio-law mixture for spectra with independent regular and
//! chaotic parts:
//!
//! ```text
//! P_γ(r) = γ / (1+r)²  +  (1−γ) · (27/8) (r+r²) / (1+r+r²)^{5/2}
//! ```
//!
//! γ = 1 is pure Poisson, γ = 0 the GOE surmise. This mixes ratio *densities*;
//! mixing actual spectra (see the superposition generator) produces a
//! different, non-linear combination — the two are deliberately kept apart so
//! the discrepancy can be measured.

use crate::error::{domain, Result};
use crate::laws::{numeric_mode, BrodyAtas, MeanR, Mode, RatioLaw};
use crate::special::{integrate_on, QuadratureSpec};

#[derive(Debug, Clone)]
pub struct PoissonGoeMixture {
    gamma: f64,
    goe: BrodyAtas,
}

impl PoissonGoeMixture {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(domain(format!("mixture requires gamma in [0,1], got {gamma}")));
        }
        Ok(Self { gamma, goe: BrodyAtas::new(1.0)? })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub(crate) fn poisson_component(r: f64) -> f64 {
        let q = 1.0 + r;
        1.0 / (q * q)
    }

    pub(crate) fn goe_component(r: f64) -> f64 {
        let y = 1.0 + r + r * r;
        3.375 * (r + r * r) / (y * y * y.sqrt())
    }
}

impl RatioLaw for PoissonGoeMixture {
    fn family(&self) -> &'static str {
        "mixture"
    }

    fn params(&self) -> Vec<(&'static str, f64)> {
        vec![("gamma", self.gamma)]
    }

    fn pdf(&self, r: f64) -> f64 {
        if r < 0.0 || !r.is_finite() {
            return 0.0;
        }
        self.gamma * Self::poisson_component(r) + (1.0 - self.gamma) * Self::goe_component(r)
    }

    fn cdf(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        let goe_cdf = if r <= 1.0 {
            integrate_on(Self::goe_component, 0.0, r, &QuadratureSpec::default())
                .map(|e| e.value)
                .unwrap_or(f64::NAN)
        } else {
            1.0 - integrate_on(Self::goe_component, 0.0, 1.0 / r, &QuadratureSpec::default())
                .map(|e| e.value)
                .unwrap_or(f64::NAN)
        };
        self.gamma * (r / (1.0 + r)) + (1.0 - self.gamma) * goe_cdf
    }

    fn is_symmetric(&self) -> bool {
        true // both components are r <-> 1/r symmetric
    }

    fn mode(&self) -> Mode {
        if self.gamma >= 1.0 {
            return Mode::Boundary(0.0);
        }
        numeric_mode(|r| self.pdf(r))
    }

    fn mean_r(&self) -> MeanR {
        if self.gamma > 0.0 {
            // the Poisson component alone has a divergent first moment
            return MeanR::Divergent;
        }
        match crate::special::integrate(
            |r| r * Self::goe_component(r),
            &QuadratureSpec { abs_tol: 1e-9, rel_tol: 1e-9, max_subdivisions: 20_000 },
        ) {
            Ok(est) => MeanR::Finite(est.value),
            Err(_) => MeanR::Divergent,
        }
    }

    fn sample(&self, rng: &mut dyn rand::RngCore) -> f64 {
        use rand::Rng;
        let u: f64 = rng.random();
        if u < self.gamma {
            // Poisson law = ratio of two unit exponentials
            let x = crate::sampling::exponential_variate(rng);
            let y = crate::sampling::exponential_variate(rng);
            x / y
        } else {
            self.goe.sample(rng)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_cases() {
        let pure_poisson = PoissonGoeMixture::new(1.0).unwrap();
        for r in [0.0, 0.5, 2.0, 7.0] {
            assert!((pure_poisson.pdf(r) - 1.0 / (1.0 + r).powi(2)).abs() < 1e-14, "r={r}");
        }
        assert_eq!(pure_poisson.mode(), Mode::Boundary(0.0));

        let pure_goe = PoissonGoeMixture::new(0.0).unwrap();
        let goe = BrodyAtas::new(1.0).unwrap();
        for r in [0.1, 1.0, 3.0] {
            assert!((pure_goe.pdf(r) - goe.pdf(r)).abs() < 1e-13, "r={r}");
        }
    }

    #[test]
    fn reference_values() {
        let cases = [(0.23, 0.4, 0.596_132_487_412_392), (0.5, 1.0, 0.341_506_350_946_110)];
        for (g, r, want) in cases {
            let got = PoissonGoeMixture::new(g).unwrap().pdf(r);
            assert!((got - want).abs() < 1e-13);
        }
    }

    #[test]
    fn pdf_at_zero_is_gamma() {
        for g in [0.0, 0.23, 0.8, 1.0] {
            assert!((PoissonGoeMixture::new(g).unwrap().pdf(0.0) - g).abs() < 1e-14);
        }
    }

    #[test]
    fn divergent_mean_for_positive_gamma() {
        assert_eq!(PoissonGoeMixture::new(0.23).unwrap().mean_r(), MeanR::Divergent);
        assert!(matches!(PoissonGoeMixture::new(0.0).unwrap().mean_r(), MeanR::Finite(_)));
    }

    #[test]
    fn rejects_out_of_range_gamma() {
        assert!(PoissonGoeMixture::new(-0.1).is_err());
        assert!(PoissonGoeMixture::new(1.1).is_err());
    }
}
