//! Property tests for the special-function layer and ratio transforms.

use gapstat::laws::{BetaPrime, RatioLaw};
use gapstat::levels::{LevelSequence, Provenance, Unit};
use gapstat::ratio::{consecutive_ratios, fold, higher_order_ratios, StridePolicy};
use gapstat::special::{ln_gamma, reg_inc_beta};
use proptest::prelude::*;

/// Brute-force oracle for the regularized incomplete beta: trapezoid rule on
/// a double-exponential (tanh-sinh) transform of the density over (0, x),
/// 1e6 points. The transform handles the integrable endpoint singularities
/// (a or b below 1) that a plain uniform trapezoid cannot.
fn inc_beta_oracle(x: f64, a: f64, b: f64) -> f64 {
    let n = 1_000_000usize;
    let u_max = 4.0;
    let h = 2.0 * u_max / n as f64;
    let half = 0.5 * x;
    let ln_beta = gapstat::special::ln_gamma(a).unwrap() + gapstat::special::ln_gamma(b).unwrap()
        - gapstat::special::ln_gamma(a + b).unwrap();
    let mut acc = 0.0;
    for i in 0..=n {
        let u = -u_max + h * i as f64;
        let s = std::f64::consts::FRAC_PI_2 * u.sinh();
        let t = half * (1.0 + s.tanh());
        if t <= 0.0 || t >= x.min(1.0) {
            continue;
        }
        let dt = half * std::f64::consts::FRAC_PI_2 * u.cosh() / s.cosh().powi(2);
        let w = if i == 0 || i == n { 0.5 } else { 1.0 };
        acc += w * ((a - 1.0) * t.ln() + (b - 1.0) * (-t).ln_1p() - ln_beta).exp() * dt;
    }
    acc * h
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn gamma_recurrence_holds(z in 0.5f64..50.0) {
        // Γ(z+1) = z Γ(z), checked through exp(ln Γ)
        let lhs = ln_gamma(z + 1.0).unwrap().exp();
        let rhs = z * ln_gamma(z).unwrap().exp();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn reg_inc_beta_matches_brute_force(
        x in 0.02f64..0.98,
        a in 0.5f64..20.0,
        b in 0.5f64..20.0,
    ) {
        let cf = reg_inc_beta(x, a, b).unwrap();
        let oracle = inc_beta_oracle(x, a, b);
        prop_assert!((cf - oracle).abs() < 1e-10, "I_{x}({a},{b}): cf {cf} oracle {oracle}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn beta_prime_cdf_monotone_and_bounded(
        a in 0.6f64..15.0,
        b in 0.6f64..15.0,
        r1 in 0.0f64..20.0,
        r2 in 0.0f64..20.0,
    ) {
        let law = BetaPrime::new(a, b).unwrap();
        let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        let (clo, chi) = (law.cdf(lo), law.cdf(hi));
        prop_assert!((0.0..=1.0).contains(&clo));
        prop_assert!(clo <= chi + 1e-12);
        prop_assert!(law.cdf(0.0) == 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn ratios_scale_invariant_and_fold_idempotent(
        raw in proptest::collection::vec(0.01f64..10.0, 8..64),
        scale in 0.1f64..50.0,
        shift in -100.0f64..100.0,
    ) {
        let mut acc = 0.0;
        let levels: Vec<f64> = raw.iter().map(|s| { acc += s; acc }).collect();
        let seq = LevelSequence::new(levels.clone(), Unit::Dimensionless, Provenance::Raw).unwrap();
        let transformed: Vec<f64> = levels.iter().map(|&x| scale * x + shift).collect();
        let seq2 = LevelSequence::new(transformed, Unit::Dimensionless, Provenance::Raw).unwrap();

        let r1 = consecutive_ratios(&seq).unwrap();
        let r2 = consecutive_ratios(&seq2).unwrap();
        for (a, b) in r1.values.iter().zip(&r2.values) {
            prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
        }

        let folded = fold(&r1).unwrap();
        prop_assert!(folded.values.iter().all(|&v| v > 0.0 && v <= 1.0));
        let twice = fold(&folded).unwrap();
        prop_assert_eq!(&folded.values, &twice.values);

        // mean of a folded sample can never exceed 1
        let mean = gapstat::ratio::mean_ratio(&folded).unwrap();
        prop_assert!(mean <= 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn higher_order_k1_equals_consecutive(
        raw in proptest::collection::vec(0.01f64..10.0, 8..64),
    ) {
        let mut acc = 0.0;
        let levels: Vec<f64> = raw.iter().map(|s| { acc += s; acc }).collect();
        let seq = LevelSequence::new(levels, Unit::Dimensionless, Provenance::Raw).unwrap();
        let a = higher_order_ratios(&seq, 1, StridePolicy::AllN).unwrap();
        let b = consecutive_ratios(&seq).unwrap();
        prop_assert_eq!(a.values, b.values);
    }
}
