//! Special functions and 1-D quadrature backing the analytic ratio laws.
//!
//! Everything here is pure and thread-safe. Accuracy targets: `ln_gamma`
//! better than 1e-12 relative on [0.5, 200]; the incomplete beta/gamma
//! functions near machine precision for the parameter ranges used by the
//! ratio laws (shape parameters up to ~50).
//!
//! # References
//!
//! - Lanczos approximation, g = 7, 9 coefficients (Godfrey's set)
//! - Numerical Recipes §6.4 (incomplete beta, Lentz continued fraction)
//! - DLMF §8.2 (incomplete gamma series / continued fraction)

use crate::error::{domain, Error, Result};

const LN_SQRT_TWO_PI: f64 = 0.918_938_533_204_672_74;

/// Lanczos g = 7 coefficients.
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

pub(crate) fn ln_gamma_raw(z: f64) -> f64 {
    debug_assert!(z > 0.0);
    // Reflection is never needed for z > 0, but small z loses accuracy in the
    // shifted sum; one recurrence step keeps the argument >= 1.5.
    if z < 1.5 {
        return ln_gamma_raw(z + 1.0) - z.ln();
    }
    let x = z - 1.0;
    let mut sum = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (x + i as f64);
    }
    let t = x + 7.5;
    LN_SQRT_TWO_PI + (x + 0.5) * t.ln() - t + sum.ln()
}

/// Natural log of the gamma function, ln Γ(z), for z > 0.
pub fn ln_gamma(z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(domain(format!("ln_gamma requires z > 0, got {z}")));
    }
    Ok(ln_gamma_raw(z))
}

pub(crate) fn ln_beta_raw(a: f64, b: f64) -> f64 {
    ln_gamma_raw(a) + ln_gamma_raw(b) - ln_gamma_raw(a + b)
}

/// Euler beta function B(a, b) = Γ(a)Γ(b)/Γ(a+b), computed in log space.
pub fn beta_fn(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(domain(format!("beta_fn requires a, b > 0, got a={a}, b={b}")));
    }
    Ok(ln_beta_raw(a, b).exp())
}

/// Regularized incomplete beta function I_x(a, b).
///
/// Continued-fraction evaluation with the symmetry switch
/// I_x(a,b) = 1 − I_{1−x}(b,a) applied for x > (a+1)/(a+b+2).
pub fn reg_inc_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(domain(format!("reg_inc_beta requires a, b > 0, got a={a}, b={b}")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(format!("reg_inc_beta requires x in [0,1], got {x}")));
    }
    Ok(reg_inc_beta_raw(x, a, b))
}

pub(crate) fn reg_inc_beta_raw(x: f64, a: f64, b: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x == 1.0 {
        return 1.0;
    }
    let front = (a * x.ln() + b * (-x).ln_1p() - ln_beta_raw(a, b)).exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(x, a, b) / a
    } else {
        1.0 - (b * (-x).ln_1p() + a * x.ln() - ln_beta_raw(a, b)).exp() * beta_cf(1.0 - x, b, a) / b
    }
}

/// Lentz's algorithm for the incomplete beta continued fraction.
fn beta_cf(x: f64, a: f64, b: f64) -> f64 {
    const MAX_ITER: usize = 400;
    const EPS: f64 = 1e-15;
    const TINY: f64 = 1e-300;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;

    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;

    for m in 1..=MAX_ITER {
        let mf = m as f64;
        let m2 = 2.0 * mf;

        let aa = mf * (b - mf) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;

        let aa = -(a + mf) * (qab + mf) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;

        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Regularized lower incomplete gamma function P(a, x) = γ(a, x)/Γ(a).
///
/// Series expansion for x < a + 1, continued fraction otherwise. Used as the
/// Γ(α, λ) CDF oracle: for X ~ Γ(shape α, rate λ), F(x) = P(α, λx).
pub fn reg_inc_gamma_lower(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(domain(format!("reg_inc_gamma_lower requires a > 0, got {a}")));
    }
    if x < 0.0 {
        return Err(domain(format!("reg_inc_gamma_lower requires x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    const EPS: f64 = 1e-15;
    const TINY: f64 = 1e-300;
    if x < a + 1.0 {
        // series: P(a,x) = x^a e^{-x} / Γ(a) * Σ_n x^n / (a(a+1)...(a+n))
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut ap = a;
        for _ in 0..1000 {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < sum.abs() * EPS {
                break;
            }
        }
        Ok((a * x.ln() - x - ln_gamma_raw(a)).exp() * sum)
    } else {
        // continued fraction for Q(a,x), then P = 1 - Q
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..1000 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < TINY {
                d = TINY;
            }
            c = b + an / c;
            if c.abs() < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < EPS {
                break;
            }
        }
        let q = (a * x.ln() - x - ln_gamma_raw(a)).exp() * h;
        Ok(1.0 - q)
    }
}

/// Tolerances and subdivision budget for the adaptive integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(abs_tol > 0.0) || !(rel_tol > 0.0) {
            return Err(domain("quadrature tolerances must be > 0"));
        }
        if max_subdivisions < 1 {
            return Err(domain("max_subdivisions must be >= 1"));
        }
        Ok(Self { abs_tol, rel_tol, max_subdivisions })
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 1e-10, max_subdivisions: 4000 }
    }
}

/// An integral value together with the achieved error estimate.
#[derive(Debug, Clone, Copy)]
pub struct IntegralEstimate {
    pub value: f64,
    pub error_estimate: f64,
}

/// 10-point Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton
/// iteration on P_10 (converges to machine precision in a handful of steps).
fn gauss_legendre_10() -> &'static [(f64, f64); 10] {
    use std::sync::OnceLock;
    static NODES: OnceLock<[(f64, f64); 10]> = OnceLock::new();
    NODES.get_or_init(|| {
        const N: usize = 10;
        let mut out = [(0.0, 0.0); N];
        for i in 0..N {
            // Chebyshev-like initial guess for the i-th root of P_N.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (N as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // evaluate P_N(x) and P_N'(x) by the three-term recurrence
                let mut p0 = 1.0;
                let mut p1 = x;
                for j in 2..=N {
                    let jf = j as f64;
                    let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = (N as f64) * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            out[i] = (x, w);
        }
        out
    })
}

fn gl10<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for &(x, w) in gauss_legendre_10() {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Adaptive integration on a finite interval [a, b].
///
/// Worst-first bisection with 10-point Gauss-Legendre panels; the per-panel
/// error proxy is the difference between the panel value and the sum of its
/// halves. Interval endpoints are never evaluated (all nodes are interior).
pub fn integrate_on<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<IntegralEstimate> {
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(domain(format!("integrate_on requires finite a < b, got [{a}, {b}]")));
    }

    struct Seg {
        a: f64,
        b: f64,
        value: f64, // refined (two-half) estimate
        err: f64,
    }

    let make = |lo: f64, hi: f64| -> Seg {
        let whole = gl10(&f, lo, hi);
        let mid = 0.5 * (lo + hi);
        let refined = gl10(&f, lo, mid) + gl10(&f, mid, hi);
        Seg { a: lo, b: hi, value: refined, err: (whole - refined).abs() }
    };

    let mut segs = vec![make(a, b)];
    for _ in 0..spec.max_subdivisions {
        let total: f64 = segs.iter().map(|s| s.value).sum();
        let err: f64 = segs.iter().map(|s| s.err).sum();
        if err <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
            return Ok(IntegralEstimate { value: total, error_estimate: err });
        }
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|(_, x), (_, y)| x.err.total_cmp(&y.err))
            .map(|(i, _)| i)
            .expect("non-empty segment list");
        let Seg { a: lo, b: hi, .. } = segs.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        segs.push(make(lo, mid));
        segs.push(make(mid, hi));
    }

    let total: f64 = segs.iter().map(|s| s.value).sum();
    let err: f64 = segs.iter().map(|s| s.err).sum();
    if err <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
        Ok(IntegralEstimate { value: total, error_estimate: err })
    } else {
        Err(Error::Accuracy { estimate: total, error_estimate: err })
    }
}

/// Adaptive integration on [0, ∞) via the substitution r = t/(1−t).
///
/// The integrand must decay at least like r^{-2}; after the transform the
/// integrand g(t) = f(t/(1−t))/(1−t)² is then bounded on [0, 1).
pub fn integrate<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<IntegralEstimate> {
    integrate_on(
        move |t| {
            let om = 1.0 - t;
            f(t / om) / (om * om)
        },
        0.0,
        1.0,
        spec,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPEC: QuadratureSpec = QuadratureSpec { abs_tol: 1e-12, rel_tol: 1e-12, max_subdivisions: 4000 };

    // Reference values: mpmath/scipy, 15 digits.
    #[test]
    fn ln_gamma_reference_values() {
        let cases: [(f64, f64); 6] = [
            (0.5, 0.572_364_942_924_700),
            (1.0, 0.0),
            (1.5, -0.120_782_237_635_245),
            (4.0, 1.791_759_469_228_055),
            (23.9, 51.291_181_019_320_078),
            (200.0, 857.933_669_825_857_464),
        ];
        for (z, want) in cases {
            let got = ln_gamma(z).unwrap();
            let scale = want.abs().max(1.0);
            assert!(
                (got - want).abs() / scale < 1e-12,
                "lnGamma({z}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn ln_gamma_integer_factorials() {
        // Γ(n+1) = n!; check ln(6) at z=4 and 23! at z=24 via recurrence-free values
        assert!((ln_gamma(4.0).unwrap() - 6.0_f64.ln()).abs() < 1e-13);
        let ln_23_fact: f64 = (2..=23).map(|k| (k as f64).ln()).sum();
        assert!((ln_gamma(24.0).unwrap() - ln_23_fact).abs() / ln_23_fact < 1e-14);
    }

    #[test]
    fn ln_gamma_rejects_nonpositive() {
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-2.5).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
    }

    #[test]
    fn beta_fn_exact_small_cases() {
        assert!((beta_fn(1.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((beta_fn(2.0, 2.0).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!((beta_fn(4.0, 4.0).unwrap() - 1.0 / 140.0).abs() < 1e-15);
        assert!(beta_fn(0.0, 1.0).is_err());
    }

    #[test]
    fn reg_inc_beta_reference_values() {
        let cases = [
            (0.3, 2.5, 3.5, 0.296_752_989_295_666),
            (0.9, 10.0, 0.7, 0.228_258_858_339_288),
            (0.5, 7.0, 7.0, 0.5),
            (0.12, 0.6, 19.0, 0.962_111_992_863_610),
        ];
        for (x, a, b, want) in cases {
            let got = reg_inc_beta(x, a, b).unwrap();
            assert!((got - want).abs() < 1e-13, "I_{x}({a},{b}) = {got}, want {want}");
        }
    }

    #[test]
    fn reg_inc_beta_endpoints_and_uniform() {
        assert_eq!(reg_inc_beta(0.0, 3.0, 4.0).unwrap(), 0.0);
        assert_eq!(reg_inc_beta(1.0, 3.0, 4.0).unwrap(), 1.0);
        assert!((reg_inc_beta(0.25, 1.0, 1.0).unwrap() - 0.25).abs() < 1e-14);
        assert!((reg_inc_beta(0.5, 2.0, 2.0).unwrap() - 0.5).abs() < 1e-14);
        assert!(reg_inc_beta(-0.1, 1.0, 1.0).is_err());
        assert!(reg_inc_beta(1.1, 1.0, 1.0).is_err());
    }

    #[test]
    fn reg_inc_beta_symmetry() {
        for &(x, a, b) in &[(0.3, 2.5, 3.5), (0.7, 1.2, 6.0), (0.111, 9.0, 0.8)] {
            let lhs = reg_inc_beta(x, a, b).unwrap();
            let rhs = 1.0 - reg_inc_beta(1.0 - x, b, a).unwrap();
            assert!((lhs - rhs).abs() < 1e-13);
        }
    }

    #[test]
    fn reg_inc_gamma_reference_values() {
        let cases = [
            (2.0, 2.0, 0.593_994_150_290_162),
            (4.0, 2.0, 0.142_876_539_501_453),
            (12.0, 10.0, 0.303_223_853_696_894),
            (0.5, 0.25, 0.520_499_877_813_047),
            (24.0, 30.0, 0.885_354_087_285_726),
        ];
        for (a, x, want) in cases {
            let got = reg_inc_gamma_lower(a, x).unwrap();
            assert!((got - want).abs() < 1e-13, "P({a},{x}) = {got}, want {want}");
        }
    }

    #[test]
    fn integrate_known_integrals() {
        // semi-Poisson ratio law normalization
        let sp = integrate(|r| 6.0 * r / (1.0 + r).powi(4), &SPEC).unwrap();
        assert!((sp.value - 1.0).abs() < 1e-10, "got {}", sp.value);
        // Poisson ratio law
        let po = integrate(|r| 1.0 / ((1.0 + r) * (1.0 + r)), &SPEC).unwrap();
        assert!((po.value - 1.0).abs() < 1e-10);
        // exponential
        let ex = integrate(|r| (-r).exp(), &SPEC).unwrap();
        assert!((ex.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn integrate_on_polynomial_is_near_exact() {
        let est = integrate_on(|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, &SPEC).unwrap();
        // ∫ = [x^4/4 - x^2 + x] from -1 to 3 = (20.25-9+3) - (0.25-1-1) = 16
        assert!((est.value - 16.0).abs() < 1e-12);
    }

    #[test]
    fn integrate_reports_nonconvergence() {
        let tight = QuadratureSpec { abs_tol: 1e-14, rel_tol: 1e-14, max_subdivisions: 1 };
        // An integrand adaptive enough to need more than one split at 1e-14.
        let res = integrate_on(|x: f64| (50.0 * x).sin().abs(), 0.0, 3.0, &tight);
        match res {
            Err(Error::Accuracy { estimate, error_estimate }) => {
                assert!(estimate.is_finite());
                assert!(error_estimate > 0.0);
            }
            other => panic!("expected accuracy error, got {other:?}"),
        }
    }

    #[test]
    fn quadrature_spec_validation() {
        assert!(QuadratureSpec::new(0.0, 1e-8, 10).is_err());
        assert!(QuadratureSpec::new(1e-8, 1e-8, 0).is_err());
        assert!(QuadratureSpec::new(1e-8, 1e-8, 10).is_ok());
    }
}
