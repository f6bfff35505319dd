//! Level-spacing ratio statistics for spectral sequences.
//!
//! The crate covers the full pipeline:
//!
//! 1. [`ensemble`] — seeded generators for synthetic spectra (Poisson,
//!    gamma-spacing/semi-Poisson, tridiagonal Gaussian β-ensembles, daisy
//!    decimation, Poisson⊕GOE superposition);
//! 2. [`ratio`] — spacings, consecutive and higher-order non-overlapping gap
//!    ratios r^(k), folding to [0, 1], histograms and ECDFs;
//! 3. [`laws`] — the analytic ratio-distribution family (Brody-Atas,
//!    short-range plasma model, higher-order semi-Poisson and Poisson laws,
//!    Poisson-GOE mixture, generic beta-prime) behind one trait;
//! 4. [`fit`] — maximum-likelihood and least-squares parameter estimation
//!    with bootstrap uncertainties, Hellinger/MSE/KL distances, and the
//!    nearest-RMT-order scan;
//! 5. [`ingest`] — level-file I/O and Weyl-law completeness diagnostics.
//!
//! Everything randomized takes an explicit seed and is bit-reproducible
//! across runs and thread counts.

pub mod ensemble;
pub mod error;
pub mod fit;
pub mod ingest;
pub mod laws;
pub mod levels;
pub mod optimize;
pub mod ratio;
pub mod sampling;
pub mod special;

pub use error::{Error, Result};
pub use levels::{LevelSequence, Provenance, Unit};
