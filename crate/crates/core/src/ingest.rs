//! Level-list file I/O and smooth-counting (Weyl) diagnostics for cavity
//! spectra.
//!
//! File formats:
//! - CSV: optional `#`-prefixed `key=value` metadata lines (`# unit=GHz`),
//!   then one decimal float per line.
//! - JSON: `{"unit": "GHz", "levels": [...]}`.
//!
//! For a 2-D cavity of area A and perimeter L the smooth counting function is
//! N(k) = (A/4π)k² − (L/4π)k + const; the fluctuating part
//! N_fluc(ν) = N(ν) − N_smooth(ν) hovers around zero for a complete spectrum
//! and develops a persistent −1 step after each missed resonance.

use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{data, domain, Error, Result};
use crate::levels::{LevelSequence, Provenance, Unit};

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelFormat {
    Csv,
    Json,
}

impl LevelFormat {
    pub fn from_path(path: &Path) -> LevelFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => LevelFormat::Json,
            _ => LevelFormat::Csv,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonLevels {
    unit: String,
    levels: Vec<f64>,
}

/// Reads a level file. Unsorted or duplicated input is accepted, sorted, and
/// reported through the returned warnings.
pub fn read_levels(path: &Path, format: LevelFormat) -> Result<(LevelSequence, Vec<String>)> {
    let provenance = Provenance::Ingested(path.display().to_string());
    match format {
        LevelFormat::Json => {
            let file = std::fs::File::open(path)?;
            let parsed: JsonLevels = serde_json::from_reader(std::io::BufReader::new(file))
                .map_err(|e| Error::Parse { line: None, message: e.to_string() })?;
            let unit = Unit::parse(&parsed.unit)
                .ok_or_else(|| data(format!("unknown unit '{}' in {}", parsed.unit, path.display())))?;
            finish_read(parsed.levels, unit, provenance)
        }
        LevelFormat::Csv => {
            let file = std::fs::File::open(path)?;
            let mut unit = Unit::Dimensionless;
            let mut values = Vec::new();
            for (idx, line) in std::io::BufReader::new(file).lines().enumerate() {
                let line = line?;
                let trimmed = line.trim();
                if trimmed.is_empty() {
                    continue;
                }
                if let Some(rest) = trimmed.strip_prefix('#') {
                    for tok in rest.split_whitespace() {
                        if let Some(u) = tok.strip_prefix("unit=") {
                            unit = Unit::parse(u)
                                .ok_or_else(|| data(format!("unknown unit '{u}' in {}", path.display())))?;
                        }
                    }
                    continue;
                }
                let v: f64 = trimmed.parse().map_err(|_| Error::Parse {
                    line: Some(idx + 1),
                    message: format!("not a number: '{trimmed}'"),
                })?;
                values.push(v);
            }
            finish_read(values, unit, provenance)
        }
    }
}

fn finish_read(values: Vec<f64>, unit: Unit, provenance: Provenance) -> Result<(LevelSequence, Vec<String>)> {
    if values.len() < 2 {
        return Err(data(format!("level file holds {} levels; need at least 2", values.len())));
    }
    let mut warnings = Vec::new();
    if values.windows(2).any(|w| w[1] < w[0]) {
        warnings.push("input levels were not sorted; sorted ascending".to_string());
    }
    let seq = LevelSequence::from_unsorted(values, unit, provenance)?;
    let dups = seq.values().windows(2).filter(|w| w[1] == w[0]).count();
    if dups > 0 {
        warnings.push(format!("{dups} duplicate level(s) (exact degeneracies) present"));
    }
    Ok((seq, warnings))
}

/// Writes the CSV level format: metadata header lines then one level per line.
pub fn write_levels_csv<W: Write>(w: &mut W, seq: &LevelSequence) -> Result<()> {
    if let Provenance::Generated(spec) = seq.provenance() {
        let params: Vec<String> = spec.params.iter().map(|p| format!("{p}")).collect();
        writeln!(
            w,
            "# ensemble={} seed={} n={} params={}",
            spec.name,
            spec.seed,
            spec.n_levels,
            params.join(",")
        )?;
    }
    writeln!(w, "# unit={}", seq.unit().label())?;
    for v in seq.values() {
        writeln!(w, "{v:.16e}")?;
    }
    Ok(())
}

/// Writes the JSON level format.
pub fn write_levels_json<W: Write>(w: &mut W, seq: &LevelSequence) -> Result<()> {
    let doc = JsonLevels { unit: seq.unit().label().to_string(), levels: seq.values().to_vec() };
    serde_json::to_writer_pretty(&mut *w, &doc).map_err(|e| Error::Computation(e.to_string()))?;
    writeln!(w)?;
    Ok(())
}

/// Cavity geometry entering the smooth counting function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BilliardGeometry {
    /// Area in m².
    pub area: f64,
    /// Perimeter in m.
    pub perimeter: f64,
    /// Constant term; fitted when diagnosing a spectrum.
    pub const_term: f64,
    /// Optional cutoff frequency in GHz (above it the 2-D description fails).
    pub cutoff_ghz: Option<f64>,
}

impl BilliardGeometry {
    pub fn new(area: f64, perimeter: f64) -> Result<Self> {
        if !(area > 0.0) || !(perimeter > 0.0) {
            return Err(domain(format!("geometry requires area, perimeter > 0, got A={area}, L={perimeter}")));
        }
        Ok(Self { area, perimeter, const_term: 0.0, cutoff_ghz: None })
    }

    /// Smooth resonance count up to wavenumber k (1/m):
    /// (A/4π)k² − (L/4π)k + const.
    pub fn weyl_count(&self, k: f64) -> f64 {
        let quarter_pi = 4.0 * std::f64::consts::PI;
        (self.area / quarter_pi) * k * k - (self.perimeter / quarter_pi) * k + self.const_term
    }

    /// Inverts the smooth counting function: the wavenumber k at which the
    /// smooth count reaches `n`. Used to build synthetic complete spectra.
    pub fn smooth_count_inverse(&self, n: f64) -> f64 {
        let quarter_pi = 4.0 * std::f64::consts::PI;
        let a = self.area / quarter_pi;
        let b = self.perimeter / quarter_pi;
        let c = self.const_term - n;
        (b + (b * b - 4.0 * a * c).sqrt()) / (2.0 * a)
    }
}

/// Converts a frequency in GHz to a vacuum wavenumber k = 2πν/c in 1/m.
pub fn ghz_to_wavenumber(nu_ghz: f64) -> f64 {
    2.0 * std::f64::consts::PI * nu_ghz * 1e9 / SPEED_OF_LIGHT
}

/// Fluctuating part of the counting staircase, sampled at the levels.
#[derive(Debug, Clone, Serialize)]
pub struct WeylDiagnostics {
    /// Constant term fitted so the fluctuating part has zero mean.
    pub fitted_const: f64,
    /// (level in GHz, N_fluc at that level).
    pub points: Vec<(f64, f64)>,
}

/// N_fluc(ν_n) = n − N_smooth(ν_n), with the geometry's constant term
/// replaced by a least-squares fit (the mean residual), so N_fluc has zero
/// mean by construction. Requires GHz levels.
pub fn fluctuating_count(levels: &LevelSequence, geom: &BilliardGeometry) -> Result<WeylDiagnostics> {
    if levels.unit() != Unit::GigaHertz {
        return Err(data(
            "smooth-count diagnostics need frequency levels with a declared GHz unit tag".to_string(),
        ));
    }
    let raw: Vec<f64> = levels
        .values()
        .iter()
        .enumerate()
        .map(|(i, &nu)| {
            let k = ghz_to_wavenumber(nu);
            (i + 1) as f64 - (geom.weyl_count(k) - geom.const_term)
        })
        .collect();
    // least squares for the constant: the mean minimizes sum of squares
    let fitted_const = raw.iter().sum::<f64>() / raw.len() as f64;
    let points = levels
        .values()
        .iter()
        .zip(&raw)
        .map(|(&nu, &r)| (nu, r - fitted_const))
        .collect();
    Ok(WeylDiagnostics { fitted_const, points })
}

/// Missing-level flags from the running mean of N_fluc.
#[derive(Debug, Clone, Serialize)]
pub struct MissingLevelFlags {
    pub window: usize,
    pub threshold: f64,
    /// Indices (into the level list) where the trailing running mean first
    /// drops below the threshold, merged into contiguous runs.
    pub flagged_from: Option<usize>,
    pub n_flagged_windows: usize,
}

/// Heuristic: flag when the running mean of N_fluc over `window` consecutive
/// levels drops below `threshold` (−0.5 by default: a persistent missing
/// level shifts the staircase down by one).
pub fn flag_missing_levels(diag: &WeylDiagnostics, window: usize, threshold: f64) -> Result<MissingLevelFlags> {
    if window < 1 || window > diag.points.len() {
        return Err(domain(format!("window {window} incompatible with {} points", diag.points.len())));
    }
    let vals: Vec<f64> = diag.points.iter().map(|(_, f)| *f).collect();
    let mut first = None;
    let mut count = 0;
    let mut acc: f64 = vals[..window].iter().sum();
    let mut i = 0;
    loop {
        if acc / (window as f64) < threshold {
            count += 1;
            if first.is_none() {
                first = Some(i);
            }
        }
        if i + window >= vals.len() {
            break;
        }
        acc += vals[i + window] - vals[i];
        i += 1;
    }
    Ok(MissingLevelFlags { window, threshold, flagged_from: first, n_flagged_windows: count })
}
