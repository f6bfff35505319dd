//! Ratio transforms: spacings, consecutive and higher-order non-overlapping
//! gap ratios, folding, histograms and empirical CDFs.
//!
//! For levels ε₁ ≤ ε₂ ≤ ... the spacings are s_n = ε_{n+1} − ε_n, the
//! consecutive ratio is r_n = s_n / s_{n−1}, the folded ratio
//! r̃_n = min(r_n, 1/r_n) ∈ [0, 1], and the k-th order non-overlapping ratio
//!
//! ```text
//! r_n^(k) = (ε_{n+2k} − ε_{n+k}) / (ε_{n+k} − ε_n)
//! ```
//!
//! whose numerator and denominator never share a spacing. Ratios are
//! invariant under affine rescaling of the levels, which is what makes them
//! usable without unfolding.

use serde::Serialize;

use crate::error::{data, domain, Result};
use crate::levels::LevelSequence;

/// Which starting indices n are used for order-k ratios.
///
/// `AllN` steps n by 1 (maximal sample usage; consecutive ratios share
/// spacings and are correlated). `StrideK` steps by k. `Stride2K` steps by 2k,
/// making the ratios fully independent for i.i.d. spacings — required when
/// validating against the beta-prime law, whose derivation assumes
/// independent numerator/denominator blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StridePolicy {
    AllN,
    StrideK,
    Stride2K,
}

impl StridePolicy {
    pub fn label(self) -> &'static str {
        match self {
            StridePolicy::AllN => "all-n",
            StridePolicy::StrideK => "stride-k",
            StridePolicy::Stride2K => "stride-2k",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "all-n" => Some(StridePolicy::AllN),
            "stride-k" => Some(StridePolicy::StrideK),
            "stride-2k" => Some(StridePolicy::Stride2K),
            _ => None,
        }
    }

    fn step(self, k: usize) -> usize {
        match self {
            StridePolicy::AllN => 1,
            StridePolicy::StrideK => k,
            StridePolicy::Stride2K => 2 * k,
        }
    }
}

/// A set of gap-ratio values with its construction metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioSample {
    pub values: Vec<f64>,
    pub order: usize,
    pub folded: bool,
    pub policy: StridePolicy,
    /// Free-form provenance, e.g. `"gamma:2,2 seed=7"` or a file path.
    pub source: String,
    /// Entries dropped because a zero spacing (degeneracy) made the ratio
    /// undefined.
    pub skipped: usize,
}

impl RatioSample {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// First differences of a level sequence. Zero spacings (degeneracies) are
/// retained in the output and counted.
#[derive(Debug, Clone, PartialEq)]
pub struct Spacings {
    pub values: Vec<f64>,
    pub degeneracies: usize,
}

pub fn spacings(levels: &LevelSequence) -> Result<Spacings> {
    let v = levels.values();
    let mut out = Vec::with_capacity(v.len() - 1);
    let mut degeneracies = 0;
    for w in v.windows(2) {
        let s = w[1] - w[0];
        if s < 0.0 {
            return Err(data("levels are not sorted"));
        }
        if s == 0.0 {
            degeneracies += 1;
        }
        out.push(s);
    }
    Ok(Spacings { values: out, degeneracies })
}

fn source_of(levels: &LevelSequence) -> String {
    match levels.provenance() {
        crate::levels::Provenance::Generated(spec) => {
            format!("{}:{:?} seed={} n={}", spec.name, spec.params, spec.seed, spec.n_levels)
        }
        crate::levels::Provenance::Ingested(path) => path.clone(),
        crate::levels::Provenance::Raw => "raw".to_string(),
    }
}

/// Consecutive gap ratios r_n = s_n / s_{n−1}, n = 2..N−1 (length N−2 when
/// no spacing is degenerate). Ratios touching a zero spacing are skipped and
/// counted in `skipped`.
pub fn consecutive_ratios(levels: &LevelSequence) -> Result<RatioSample> {
    higher_order_ratios(levels, 1, StridePolicy::AllN)
}

/// k-th order non-overlapping ratios r_n^(k) under the given stride policy.
pub fn higher_order_ratios(levels: &LevelSequence, k: usize, policy: StridePolicy) -> Result<RatioSample> {
    if k < 1 {
        return Err(domain("ratio order k must be >= 1"));
    }
    let v = levels.values();
    if v.len() < 2 * k + 1 {
        return Err(domain(format!(
            "order-{k} ratios need at least {} levels, got {}",
            2 * k + 1,
            v.len()
        )));
    }
    let step = policy.step(k);
    let mut values = Vec::with_capacity((v.len() - 2 * k) / step + 1);
    let mut skipped = 0;
    let mut n = 0;
    while n + 2 * k < v.len() {
        let den = v[n + k] - v[n];
        let num = v[n + 2 * k] - v[n + k];
        if den > 0.0 {
            values.push(num / den);
        } else {
            skipped += 1;
        }
        n += step;
    }
    Ok(RatioSample {
        values,
        order: k,
        folded: false,
        policy,
        source: source_of(levels),
        skipped,
    })
}

/// Folds each ratio to r̃ = min(r, 1/r) ∈ (0, 1]. Zero values are skipped
/// (1/r undefined) and counted. Idempotent on already-folded samples.
pub fn fold(sample: &RatioSample) -> Result<RatioSample> {
    let mut values = Vec::with_capacity(sample.values.len());
    let mut skipped = sample.skipped;
    for &r in &sample.values {
        if r > 0.0 {
            values.push(r.min(1.0 / r));
        } else {
            skipped += 1;
        }
    }
    Ok(RatioSample {
        values,
        order: sample.order,
        folded: true,
        policy: sample.policy,
        source: sample.source.clone(),
        skipped,
    })
}

/// Arithmetic mean of the sample values.
///
/// For unfolded samples from heavy-tailed laws (e.g. Poisson order 1) the
/// population mean diverges and the sample mean does not stabilize; the
/// matching analytic law's `mean_r` reports that divergence explicitly.
pub fn mean_ratio(sample: &RatioSample) -> Result<f64> {
    if sample.values.is_empty() {
        return Err(domain("cannot average an empty ratio sample"));
    }
    Ok(sample.values.iter().sum::<f64>() / sample.values.len() as f64)
}

/// Density-normalized histogram: Σ density·width = in-range fraction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramDensity {
    pub bin_edges: Vec<f64>,
    pub densities: Vec<f64>,
    pub n_samples: usize,
    pub below_range: usize,
    pub above_range: usize,
}

impl HistogramDensity {
    pub fn bin_width(&self) -> f64 {
        self.bin_edges[1] - self.bin_edges[0]
    }

    pub fn centers(&self) -> Vec<f64> {
        self.bin_edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    pub fn in_range(&self) -> usize {
        self.n_samples - self.below_range - self.above_range
    }
}

/// Histograms the sample into `n_bins` uniform bins over `range`.
/// Densities are normalized by the *total* sample count, so out-of-range
/// mass is visible as Σ density·width < 1.
pub fn histogram(sample: &RatioSample, n_bins: usize, range: (f64, f64)) -> Result<HistogramDensity> {
    let (lo, hi) = range;
    if n_bins < 1 {
        return Err(domain("histogram needs at least one bin"));
    }
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(domain(format!("degenerate histogram range [{lo}, {hi}]")));
    }
    let width = (hi - lo) / n_bins as f64;
    let mut counts = vec![0usize; n_bins];
    let mut below = 0;
    let mut above = 0;
    for &v in &sample.values {
        if v < lo {
            below += 1;
        } else if v >= hi {
            // right-open bins; the exact upper edge counts as above-range
            above += 1;
        } else {
            let idx = (((v - lo) / width) as usize).min(n_bins - 1);
            counts[idx] += 1;
        }
    }
    let n = sample.values.len();
    let densities = counts.iter().map(|&c| c as f64 / (n as f64 * width)).collect();
    let bin_edges = (0..=n_bins).map(|i| lo + width * i as f64).collect();
    Ok(HistogramDensity { bin_edges, densities, n_samples: n, below_range: below, above_range: above })
}

/// Default binning used for figure-style output: 60 bins on [0, 6] unfolded,
/// 25 bins on [0, 1] folded.
pub fn default_histogram(sample: &RatioSample) -> Result<HistogramDensity> {
    if sample.folded {
        histogram(sample, 25, (0.0, 1.0))
    } else {
        histogram(sample, 60, (0.0, 6.0))
    }
}

/// Empirical CDF backed by a sorted copy of the sample.
#[derive(Debug, Clone)]
pub struct Ecdf {
    sorted: Vec<f64>,
}

impl Ecdf {
    pub fn new(sample: &RatioSample) -> Result<Self> {
        if sample.values.is_empty() {
            return Err(domain("cannot build an ECDF from an empty sample"));
        }
        let mut sorted = sample.values.clone();
        sorted.sort_by(f64::total_cmp);
        Ok(Self { sorted })
    }

    /// Fraction of values ≤ r (right-continuous step function).
    pub fn eval(&self, r: f64) -> f64 {
        let idx = self.sorted.partition_point(|&x| x <= r);
        idx as f64 / self.sorted.len() as f64
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }
}

/// Fraction of sample values ≤ r.
pub fn ecdf(sample: &RatioSample, r: f64) -> Result<f64> {
    Ok(Ecdf::new(sample)?.eval(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levels::{Provenance, Unit};

    fn seq(v: &[f64]) -> LevelSequence {
        LevelSequence::new(v.to_vec(), Unit::Dimensionless, Provenance::Raw).unwrap()
    }

    #[test]
    fn spacings_examples() {
        let s = spacings(&seq(&[0.0, 1.0, 3.0, 6.0])).unwrap();
        assert_eq!(s.values, vec![1.0, 2.0, 3.0]);
        assert_eq!(s.degeneracies, 0);

        let s = spacings(&seq(&[0.0, 0.0, 1.0])).unwrap();
        assert_eq!(s.values, vec![0.0, 1.0]);
        assert_eq!(s.degeneracies, 1);

        let arith = seq(&[1.0, 1.5, 2.0, 2.5]);
        assert_eq!(spacings(&arith).unwrap().values, vec![0.5, 0.5, 0.5]);
    }

    #[test]
    fn consecutive_ratio_examples() {
        let r = consecutive_ratios(&seq(&[0.0, 1.0, 3.0, 6.0])).unwrap();
        assert_eq!(r.values, vec![2.0, 1.5]);
        assert_eq!(r.order, 1);
        assert!(!r.folded);

        let r = consecutive_ratios(&seq(&[0.0, 1.0, 2.0, 4.0])).unwrap();
        assert_eq!(r.values, vec![1.0, 2.0]);

        let arith = consecutive_ratios(&seq(&[0.0, 2.0, 4.0, 6.0, 8.0])).unwrap();
        assert!(arith.values.iter().all(|&x| x == 1.0));
    }

    #[test]
    fn zero_denominator_skipped_and_counted() {
        let r = consecutive_ratios(&seq(&[0.0, 0.0, 1.0, 2.0])).unwrap();
        // first ratio would divide by s_1 = 0
        assert_eq!(r.skipped, 1);
        assert_eq!(r.values, vec![1.0]);
    }

    #[test]
    fn fold_examples() {
        let sample = RatioSample {
            values: vec![2.0, 1.5, 1.0],
            order: 1,
            folded: false,
            policy: StridePolicy::AllN,
            source: "raw".into(),
            skipped: 0,
        };
        let folded = fold(&sample).unwrap();
        assert_eq!(folded.values, vec![0.5, 2.0 / 3.0, 1.0]);
        assert!(folded.folded);
        // idempotence
        let twice = fold(&folded).unwrap();
        assert_eq!(twice.values, folded.values);
        assert!(folded.values.iter().all(|&v| v > 0.0 && v <= 1.0));
    }

    #[test]
    fn higher_order_example_and_reduction() {
        let lv = seq(&[0.0, 1.0, 3.0, 6.0, 10.0]);
        let r2 = higher_order_ratios(&lv, 2, StridePolicy::AllN).unwrap();
        assert_eq!(r2.values, vec![7.0 / 3.0]);

        // k = 1, all-n reduces to consecutive ratios
        let a = higher_order_ratios(&lv, 1, StridePolicy::AllN).unwrap();
        let c = consecutive_ratios(&lv).unwrap();
        assert_eq!(a.values, c.values);
    }

    #[test]
    fn stride_policies_step_correctly() {
        // 13 levels, k = 2: starting indices all-n {0..8}, stride-k {0,2,4,6,8},
        // stride-2k {0,4,8}
        let vals: Vec<f64> = (0..13).map(|i| (i * i) as f64).collect();
        let lv = seq(&vals);
        assert_eq!(higher_order_ratios(&lv, 2, StridePolicy::AllN).unwrap().len(), 9);
        assert_eq!(higher_order_ratios(&lv, 2, StridePolicy::StrideK).unwrap().len(), 5);
        assert_eq!(higher_order_ratios(&lv, 2, StridePolicy::Stride2K).unwrap().len(), 3);
    }

    #[test]
    fn too_few_levels_is_domain_error() {
        let lv = seq(&[0.0, 1.0, 2.0, 3.0]);
        assert!(higher_order_ratios(&lv, 2, StridePolicy::AllN).is_err());
        assert!(consecutive_ratios(&seq(&[0.0, 1.0])).is_err());
    }

    #[test]
    fn scale_and_shift_invariance() {
        let base: Vec<f64> = vec![0.0, 0.7, 1.1, 2.9, 3.4, 5.0, 7.7];
        let transformed: Vec<f64> = base.iter().map(|&x| 3.25 * x - 11.0).collect();
        let r1 = consecutive_ratios(&seq(&base)).unwrap();
        let r2 = consecutive_ratios(&seq(&transformed)).unwrap();
        for (a, b) in r1.values.iter().zip(&r2.values) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn histogram_uniform_and_out_of_range() {
        let sample = RatioSample {
            values: (0..10_000).map(|i| (i as f64 + 0.5) / 10_000.0).collect(),
            order: 1,
            folded: true,
            policy: StridePolicy::AllN,
            source: "raw".into(),
            skipped: 0,
        };
        let h = histogram(&sample, 10, (0.0, 1.0)).unwrap();
        for d in &h.densities {
            assert!((d - 1.0).abs() < 0.02, "density {d}");
        }
        assert_eq!(h.below_range + h.above_range, 0);

        // disjoint range: everything lands out of range, densities all zero
        let h = histogram(&sample, 5, (2.0, 3.0)).unwrap();
        assert!(h.densities.iter().all(|&d| d == 0.0));
        assert_eq!(h.below_range, 10_000);
    }

    #[test]
    fn histogram_mass_identity() {
        let sample = RatioSample {
            values: vec![0.1, 0.4, 1.3, 2.0, 9.0],
            order: 1,
            folded: false,
            policy: StridePolicy::AllN,
            source: "raw".into(),
            skipped: 0,
        };
        let h = histogram(&sample, 4, (0.0, 4.0)).unwrap();
        let mass: f64 = h.densities.iter().map(|d| d * h.bin_width()).sum();
        assert!((mass - 0.8).abs() < 1e-12); // 4 of 5 in range
        assert_eq!(h.above_range, 1);
    }

    #[test]
    fn ecdf_bounds_and_median() {
        let sample = RatioSample {
            values: vec![3.0, 1.0, 2.0, 5.0, 4.0],
            order: 1,
            folded: false,
            policy: StridePolicy::AllN,
            source: "raw".into(),
            skipped: 0,
        };
        let e = Ecdf::new(&sample).unwrap();
        assert_eq!(e.eval(0.5), 0.0);
        assert_eq!(e.eval(10.0), 1.0);
        assert!((e.eval(3.0) - 0.6).abs() < 1e-12);
    }

    #[test]
    fn mean_ratio_empty_is_error() {
        let empty = RatioSample {
            values: vec![],
            order: 1,
            folded: false,
            policy: StridePolicy::AllN,
            source: "raw".into(),
            skipped: 0,
        };
        assert!(mean_ratio(&empty).is_err());
    }
}
