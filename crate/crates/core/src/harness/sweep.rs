//! Precision sweeps: reconstruction error against working precision.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::ScalarMode;
use crate::error::{Error, Result};
use crate::geometry::random_simple_polytope_with_vertices;
use crate::matching::{reconstruct, ReconstructOptions};
use crate::moments::PolytopeOracle;
use crate::recovery::{Method, VertexCount};

use super::vertex_set_distance;

/// Error levels tracked per vertex count.
pub const ERROR_TARGETS: [f64; 3] = [1e-3, 1e-6, 1e-9];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepConfig {
    pub dim: usize,
    pub vertex_counts: Vec<usize>,
    pub bits: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub method: Method,
    /// Frame resampling budget per reconstruction.
    pub budget: usize,
}

impl SweepConfig {
    fn validate(&self) -> Result<()> {
        if self.bits.is_empty() || self.vertex_counts.is_empty() {
            return Err(Error::InvalidArgument(
                "a sweep needs at least one bit count and one vertex count".into(),
            ));
        }
        if self.budget == 0 {
            return Err(Error::InvalidArgument(
                "resample budget must be at least 1".into(),
            ));
        }
        if self.trials == 0 {
            return Err(Error::InvalidArgument(
                "trial count must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Polytope seed for one trial; independent of the bit count.
    pub fn trial_seed(&self, n: usize, trial: usize) -> u64 {
        self.seed
            .wrapping_mul(1_000_003)
            .wrapping_add((n as u64) << 20)
            .wrapping_add(trial as u64)
    }
}

/// One reconstruction; `distance` is `None` when it failed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepCell {
    pub n: usize,
    pub bits: usize,
    pub trial: usize,
    pub distance: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    /// Median distance over trials per bit count; failures count as infinite.
    pub medians: Vec<(usize, f64)>,
    /// Smallest bit count whose median meets each of [`ERROR_TARGETS`].
    pub min_bits: Vec<Option<usize>>,
    /// Steps where the median grew with more bits.
    pub inversions: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub rows: Vec<SweepRow>,
    pub cells: Vec<SweepCell>,
}

impl SweepReport {
    /// Plain-text table with one line per vertex count.
    pub fn summary(&self) -> String {
        let mut out = String::from("N     1e-3   1e-6   1e-9   inversions\n");
        for row in &self.rows {
            let cell = |b: Option<usize>| b.map_or("-".to_string(), |b| format!("{b}"));
            out += &format!(
                "{:<5} {:<6} {:<6} {:<6} {}\n",
                row.n,
                cell(row.min_bits[0]),
                cell(row.min_bits[1]),
                cell(row.min_bits[2]),
                row.inversions
            );
        }
        out
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        let (a, b) = (xs[n / 2 - 1], xs[n / 2]);
        if a.is_infinite() || b.is_infinite() {
            b
        } else {
            (a + b) / 2.0
        }
    }
}

/// One polytope reconstructed at every bit count. The frame seed is the
/// same for each bit count, so the oracle's exact moments are reused.
fn run_trial(config: &SweepConfig, bits: &[usize], n: usize, trial: usize) -> Vec<SweepCell> {
    let seed = config.trial_seed(n, trial);
    let p = match random_simple_polytope_with_vertices(config.dim, n, seed) {
        Ok(p) => p,
        Err(e) => {
            return bits
                .iter()
                .map(|&b| SweepCell {
                    n,
                    bits: b,
                    trial,
                    distance: None,
                    error: Some(e.to_string()),
                })
                .collect();
        }
    };
    let source = PolytopeOracle::new(p.clone());
    bits.iter()
        .map(|&b| {
            let opts = ReconstructOptions::new(VertexCount::Known(n), seed).method(config.method);
            let opts = ReconstructOptions {
                budget: config.budget,
                ..opts
            };
            let outcome = ScalarMode::float(b)
                .and_then(|mode| reconstruct(&source, mode, opts))
                .and_then(|r| vertex_set_distance(&r.vertices, p.vertices()));
            match outcome {
                Ok(d) => SweepCell {
                    n,
                    bits: b,
                    trial,
                    distance: Some(d.value),
                    error: None,
                },
                Err(e) => SweepCell {
                    n,
                    bits: b,
                    trial,
                    distance: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

/// Run every (vertex count, trial, bit count) cell, trials in parallel. Failed cells are
/// recorded and never abort the sweep.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let mut bits = config.bits.clone();
    bits.sort_unstable();
    bits.dedup();
    let mut cells = Vec::new();
    let mut rows = Vec::new();
    for &n in &config.vertex_counts {
        let trials: Vec<Vec<SweepCell>> = (0..config.trials)
            .into_par_iter()
            .map(|trial| run_trial(config, &bits, n, trial))
            .collect();
        let mut per_bits: Vec<Vec<f64>> = vec![Vec::new(); bits.len()];
        for trial_cells in trials {
            for (k, cell) in trial_cells.into_iter().enumerate() {
                per_bits[k].push(cell.distance.unwrap_or(f64::INFINITY));
                cells.push(cell);
            }
        }
        let medians: Vec<(usize, f64)> = bits
            .iter()
            .zip(per_bits)
            .map(|(&b, xs)| (b, median(xs)))
            .collect();
        let min_bits = ERROR_TARGETS
            .iter()
            .map(|&t| medians.iter().find(|m| m.1 <= t).map(|m| m.0))
            .collect();
        let inversions = medians.windows(2).filter(|w| w[1].1 > w[0].1).count();
        rows.push(SweepRow {
            n,
            medians,
            min_bits,
            inversions,
        });
    }
    Ok(SweepReport {
        config: config.clone(),
        rows,
        cells,
    })
}
