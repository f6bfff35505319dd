//! One-parameter repulsion family for consecutive gap ratios.
//!
//! ```text
//! P_β(r) = (1/Z_β) (r+r²)^β / (1+r+r²)^{1+3β/2}
//! Z_β    = 2π Γ(1+β) / ( 3^{3(1+β)/2} Γ(1+β/2)² )
//! ```
//!
//! β = 1, 2, 4 reproduce the GOE/GUE/GSE surmises (e.g. Z₁ = 8/27 gives the
//! familiar 27/8 prefactor). Near r = 0 the density behaves like r^β.
//!
//! Caveat: β = 0 gives 1/(Z₀(1+r+r²)), which is NOT the Poisson ratio law
//! 1/(1+r)² — the two limits are distinct family members and must not be
//! conflated. Use `poisson-order:1` for the Poisson law.

use crate::error::{domain, Result};
use crate::laws::{numeric_mode, BetaPrime, MeanR, Mode, RatioLaw};
use crate::special::{integrate_on, ln_gamma_raw, QuadratureSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct BrodyAtas {
    beta: f64,
    ln_norm: f64, // ln Z_β
    // rejection-sampling envelope: proposal beta-prime(β+1, β+1), constant
    // ln M attained at r = 1 (the log ratio is symmetric under r ↔ 1/r and
    // unimodal, so the interior critical point is the supremum)
    proposal: BetaPrime,
    ln_envelope: f64,
}

pub(crate) fn ln_z_beta(beta: f64) -> f64 {
    (2.0 * std::f64::consts::PI).ln() + ln_gamma_raw(1.0 + beta)
        - 1.5 * (1.0 + beta) * 3.0_f64.ln()
        - 2.0 * ln_gamma_raw(1.0 + beta / 2.0)
}

impl BrodyAtas {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(domain(format!("brody-atas requires beta >= 0, got {beta}")));
        }
        let ln_norm = ln_z_beta(beta);
        let proposal = BetaPrime::new(beta + 1.0, beta + 1.0)?;
        // ln[p(1)/q(1)] with p this law and q the proposal
        let ln_p1 = beta * 2.0_f64.ln() - (1.0 + 1.5 * beta) * 3.0_f64.ln() - ln_norm;
        let ln_q1 = proposal.pdf(1.0).ln();
        let ln_envelope = ln_p1 - ln_q1 + 1e-9;
        Ok(Self { beta, ln_norm, proposal, ln_envelope })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The normalization Z_β (Z₁ = 8/27 ≈ 0.2963).
    pub fn normalization(&self) -> f64 {
        self.ln_norm.exp()
    }
}

impl RatioLaw for BrodyAtas {
    fn family(&self) -> &'static str {
        "brody-atas"
    }

    fn params(&self) -> Vec<(&'static str, f64)> {
        vec![("beta", self.beta)]
    }

    fn pdf(&self, r: f64) -> f64 {
        if r < 0.0 || !r.is_finite() {
            return 0.0;
        }
        if r == 0.0 {
            return if self.beta == 0.0 { (-self.ln_norm).exp() } else { 0.0 };
        }
        let x = r + r * r;
        let y = 1.0 + r + r * r;
        (self.beta * x.ln() - (1.0 + 1.5 * self.beta) * y.ln() - self.ln_norm).exp()
    }

    fn cdf(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        // numeric; the density is smooth and the integrand bounded
        let spec = QuadratureSpec::default();
        if r <= 1.0 {
            return integrate_on(|x| self.pdf(x), 0.0, r, &spec).map(|e| e.value).unwrap_or(f64::NAN);
        }
        // symmetry: P(R <= r) = 1 - P(R < 1/r) for this r <-> 1/r invariant law
        let tail = integrate_on(|x| self.pdf(x), 0.0, 1.0 / r, &spec).map(|e| e.value).unwrap_or(f64::NAN);
        1.0 - tail
    }

    fn is_symmetric(&self) -> bool {
        true
    }

    fn mode(&self) -> Mode {
        if self.beta == 0.0 {
            return Mode::Boundary(0.0);
        }
        numeric_mode(|r| self.pdf(r))
    }

    fn mean_r(&self) -> MeanR {
        if self.beta == 0.0 {
            // tail 1/(1+r+r²) ~ r^{-2}: the first moment diverges
            return MeanR::Divergent;
        }
        // tail exponent −2−β: finite for β > 0; integrable endpoint
        // singularity after the [0,∞) → [0,1) transform, so give the
        // integrator room
        let spec = QuadratureSpec { abs_tol: 1e-9, rel_tol: 1e-9, max_subdivisions: 20_000 };
        match crate::special::integrate(|r| r * self.pdf(r), &spec) {
            Ok(est) => MeanR::Finite(est.value),
            Err(_) => MeanR::Divergent,
        }
    }

    fn sample(&self, rng: &mut dyn rand::RngCore) -> f64 {
        use rand::Rng;
        loop {
            let r = self.proposal.sample(rng);
            let ln_accept = self.pdf(r).ln() - self.proposal.pdf(r).ln() - self.ln_envelope;
            let u: f64 = rng.random();
            if u > 0.0 && u.ln() < ln_accept {
                return r;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::stream_rng;

    #[test]
    fn goe_prefactor() {
        // Z₁ = 8/27, so P₁(1) = (27/8)·2/3^{5/2}
        let goe = BrodyAtas::new(1.0).unwrap();
        assert!((goe.normalization() - 8.0 / 27.0).abs() < 1e-14);
        assert!((goe.pdf(1.0) - 0.433_012_701_892_219).abs() < 1e-13);
    }

    #[test]
    fn pdf_reference_values() {
        // scipy-frozen
        let cases = [
            (0.62, 0.5, 0.584_855_244_009_595),
            (2.0, 0.7, 0.687_310_922_538_125),
            (4.0, 1.3, 0.498_830_242_087_157),
            (0.0, 0.0, 0.826_993_343_132_688),
            (0.0, 2.0, 0.118_141_906_161_813),
        ];
        for (b, r, want) in cases {
            let got = BrodyAtas::new(b).unwrap().pdf(r);
            assert!((got - want).abs() < 1e-13, "P_{b}({r}) = {got}, want {want}");
        }
    }

    #[test]
    fn beta_zero_is_not_the_poisson_law() {
        let b0 = BrodyAtas::new(0.0).unwrap();
        let poisson = |r: f64| 1.0 / ((1.0 + r) * (1.0 + r));
        assert!((b0.pdf(1.0) - poisson(1.0)).abs() > 0.01);
    }

    #[test]
    fn mode_of_fitted_beta() {
        // golden-section mode of P_0.62: 0.35046 (scipy oracle)
        let law = BrodyAtas::new(0.62).unwrap();
        match law.mode() {
            Mode::Interior(x) => assert!((x - 0.350_460_137).abs() < 1e-6, "mode {x}"),
            m => panic!("expected interior mode, got {m:?}"),
        }
    }

    #[test]
    fn cdf_midpoint_by_symmetry() {
        for b in [0.62, 1.0, 2.0] {
            let law = BrodyAtas::new(b).unwrap();
            assert!((law.cdf(1.0) - 0.5).abs() < 1e-9, "beta={b}");
        }
    }

    #[test]
    fn mean_divergence_flags() {
        assert_eq!(BrodyAtas::new(0.0).unwrap().mean_r(), MeanR::Divergent);
        match BrodyAtas::new(1.0).unwrap().mean_r() {
            MeanR::Finite(m) => assert!((m - 1.75).abs() < 1e-6, "GOE mean {m}"),
            MeanR::Divergent => panic!("GOE mean is finite"),
        }
    }

    #[test]
    fn rejection_sampler_matches_cdf() {
        // KS distance between 20k draws and the analytic CDF below the 1%
        // critical value 1.63/sqrt(n)
        let law = BrodyAtas::new(1.0).unwrap();
        let mut rng = stream_rng(9, 0);
        let n = 20_000;
        let mut xs: Vec<f64> = (0..n).map(|_| law.sample(&mut rng)).collect();
        xs.sort_by(f64::total_cmp);
        let mut d: f64 = 0.0;
        for (i, x) in xs.iter().enumerate() {
            let f = law.cdf(*x);
            d = d.max((f - i as f64 / n as f64).abs());
            d = d.max((f - (i + 1) as f64 / n as f64).abs());
        }
        assert!(d < 1.63 / (n as f64).sqrt(), "KS = {d}");
    }

    #[test]
    fn rejects_negative_beta() {
        assert!(BrodyAtas::new(-0.1).is_err());
        assert!(BrodyAtas::new(f64::NAN).is_err());
    }
}
