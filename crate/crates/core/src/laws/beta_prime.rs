//! Beta-prime laws: the backbone of the higher-order ratio statistics.
//!
//! If X ~ Γ(a, λ) and Y ~ Γ(b, λ) are independent, R = X/Y follows the
//! beta-prime law
//!
//! ```text
//! f(r) = r^{a-1} / ( B(a,b) · (1+r)^{a+b} ),    r > 0.
//! ```
//!
//! Two named reductions cover the non-overlapping k-th order ratios:
//! a semi-Poisson spectrum has Γ(2,2) spacings, so its k-th order ratio is
//! beta-prime(2k, 2k); an uncorrelated (Poisson) spectrum has exponential
//! spacings, so its k-th order ratio is beta-prime(k, k).

use crate::error::{domain, Result};
use crate::laws::{MeanR, Mode, RatioLaw};
use crate::sampling::gamma_variate;
use crate::special::{ln_beta_raw, reg_inc_beta_raw};

/// Generic beta-prime law with shape parameters a, b > 0.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaPrime {
    a: f64,
    b: f64,
    ln_norm: f64, // ln B(a,b)
}

impl BetaPrime {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) || !(b > 0.0 && b.is_finite()) {
            return Err(domain(format!("beta-prime requires a, b > 0, got a={a}, b={b}")));
        }
        Ok(Self { a, b, ln_norm: ln_beta_raw(a, b) })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// 1/B(a,b). For integer parameters this is the integer
    /// (a+b−1)!/((a−1)!(b−1)!), computed exactly when it fits in u128
    /// (e.g. 6, 140, 2772, 51480 for a = b = 2k, k = 1..4).
    pub fn norm_constant(&self) -> f64 {
        if let Some(v) = exact_integer_norm(self.a, self.b) {
            return v;
        }
        (-self.ln_norm).exp()
    }
}

/// (a+b−1)! / ((a−1)!(b−1)!) via the multiplicative binomial recurrence,
/// None if the parameters are not integers or the value cannot be represented.
fn exact_integer_norm(a: f64, b: f64) -> Option<f64> {
    if a.fract() != 0.0 || b.fract() != 0.0 || a < 1.0 || b < 1.0 || a + b > 120.0 {
        return None;
    }
    let (a, b) = (a as u128, b as u128);
    // 1/B(a,b) = (a+b-1) * C(a+b-2, a-1)
    let n = a + b - 2;
    let k = (a - 1).min(b - 1);
    let mut c: u128 = 1;
    for i in 1..=k {
        c = c.checked_mul(n - k + i)? / i;
    }
    let v = c.checked_mul(a + b - 1)?;
    if v > (1u128 << 53) {
        return None; // not exactly representable in f64
    }
    Some(v as f64)
}

fn bp_pdf(a: f64, b: f64, ln_norm: f64, r: f64) -> f64 {
    if r < 0.0 || !r.is_finite() {
        return 0.0;
    }
    if r == 0.0 {
        return if a > 1.0 {
            0.0
        } else if a == 1.0 {
            (-ln_norm).exp()
        } else {
            f64::INFINITY
        };
    }
    ((a - 1.0) * r.ln() - (a + b) * r.ln_1p() - ln_norm).exp()
}

impl RatioLaw for BetaPrime {
    fn family(&self) -> &'static str {
        "beta-prime"
    }

    fn params(&self) -> Vec<(&'static str, f64)> {
        vec![("a", self.a), ("b", self.b)]
    }

    fn pdf(&self, r: f64) -> f64 {
        bp_pdf(self.a, self.b, self.ln_norm, r)
    }

    fn cdf(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        if r.is_infinite() {
            return 1.0;
        }
        reg_inc_beta_raw(r / (1.0 + r), self.a, self.b)
    }

    fn is_symmetric(&self) -> bool {
        self.a == self.b
    }

    fn mode(&self) -> Mode {
        if self.a <= 1.0 {
            Mode::Boundary(0.0)
        } else {
            Mode::Interior((self.a - 1.0) / (self.b + 1.0))
        }
    }

    fn mean_r(&self) -> MeanR {
        if self.b > 1.0 {
            MeanR::Finite(self.a / (self.b - 1.0))
        } else {
            MeanR::Divergent
        }
    }

    fn sample(&self, rng: &mut dyn rand::RngCore) -> f64 {
        let x = gamma_variate(rng, self.a, 1.0);
        let y = gamma_variate(rng, self.b, 1.0);
        x / y
    }
}

/// k-th order non-overlapping ratio law of a semi-Poisson spectrum:
/// beta-prime(2k, 2k), i.e.
///
/// ```text
/// P^k(r) = (4k-1)! / ((2k-1)!)² · r^{2k-1} / (1+r)^{4k}
/// ```
///
/// with mode (2k−1)/(2k+1) and mean 2k/(2k−1). All factorial ratios are
/// evaluated in log space (the k = 6 numerator involves 23!).
#[derive(Debug, Clone, PartialEq)]
pub struct SemiPoissonOrder {
    k: u32,
    inner: BetaPrime,
}

impl SemiPoissonOrder {
    pub fn new(k: u32) -> Result<Self> {
        if k < 1 {
            return Err(domain("semi-poisson order k must be >= 1"));
        }
        Ok(Self { k, inner: BetaPrime::new(2.0 * k as f64, 2.0 * k as f64)? })
    }

    pub fn order(&self) -> u32 {
        self.k
    }

    /// The prefactor (4k−1)!/((2k−1)!)², exact for small k.
    pub fn norm_constant(&self) -> f64 {
        self.inner.norm_constant()
    }
}

impl RatioLaw for SemiPoissonOrder {
    fn family(&self) -> &'static str {
        "semi-poisson-order"
    }

    fn params(&self) -> Vec<(&'static str, f64)> {
        vec![("k", self.k as f64)]
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
        let k = self.k as f64;
        Mode::Interior((2.0 * k - 1.0) / (2.0 * k + 1.0))
    }

    fn mean_r(&self) -> MeanR {
        let k = self.k as f64;
        MeanR::Finite(2.0 * k / (2.0 * k - 1.0))
    }

    fn sample(&self, rng: &mut dyn rand::RngCore) -> f64 {
        self.inner.sample(rng)
    }
}

/// k-th order non-overlapping ratio law of an uncorrelated spectrum:
/// beta-prime(k, k), i.e.
///
/// ```text
/// P^k(r) = (2k-1)! / ((k-1)!)² · r^{k-1} / (1+r)^{2k}
/// ```
///
/// For k = 1 this is the Poisson ratio law 1/(1+r)², monotone decreasing
/// (boundary mode at 0) with divergent mean.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonOrder {
    k: u32,
    inner: BetaPrime,
}

impl PoissonOrder {
    pub fn new(k: u32) -> Result<Self> {
        if k < 1 {
            return Err(domain("poisson order k must be >= 1"));
        }
        Ok(Self { k, inner: BetaPrime::new(k as f64, k as f64)? })
    }

    pub fn order(&self) -> u32 {
        self.k
    }

    pub fn norm_constant(&self) -> f64 {
        self.inner.norm_constant()
    }
}

impl RatioLaw for PoissonOrder {
    fn family(&self) -> &'static str {
        "poisson-order"
    }

    fn params(&self) -> Vec<(&'static str, f64)> {
        vec![("k", self.k as f64)]
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
        if self.k == 1 {
            Mode::Boundary(0.0)
        } else {
            let k = self.k as f64;
            Mode::Interior((k - 1.0) / (k + 1.0))
        }
    }

    fn mean_r(&self) -> MeanR {
        if self.k == 1 {
            MeanR::Divergent
        } else {
            let k = self.k as f64;
            MeanR::Finite(k / (k - 1.0))
        }
    }

    fn sample(&self, rng: &mut dyn rand::RngCore) -> f64 {
        self.inner.sample(rng)
    }
}
