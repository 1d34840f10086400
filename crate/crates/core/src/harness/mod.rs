//! Experiment plumbing: error metric, file formats, sweeps, mesh export
//! and the self-check suite behind `verify`.

mod export;
mod formats;
mod sweep;
mod verify;

#[cfg(test)]
mod tests;

pub use export::{polytope_to_off, report_to_off};
pub use formats::{
    moments_from_json, moments_to_json, polytope_from_json, polytope_to_json, report_from_json,
    report_to_json, ReportFile,
};
pub use sweep::{run_sweep, SweepCell, SweepConfig, SweepReport, SweepRow, ERROR_TARGETS};
pub use verify::{verify_polytope, VerifyReport};

use crate::arith::{Rational, Scalar};
use crate::error::{Error, Result};

/// Bottleneck distance between two vertex sets.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexSetDistance {
    pub value: f64,
    /// `assignment[i]` is the index in `b` matched with `a[i]`.
    pub assignment: Vec<usize>,
}

/// `min_π max_i ‖a_i − b_π(i)‖₂`, found by bisecting over the sorted
/// pairwise distances with a bipartite matching test at each step.
/// Distances are compared exactly, so the value is zero only for equal
/// multisets.
pub fn vertex_set_distance(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Result<VertexSetDistance> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch(a.len(), b.len()));
    }
    let n = a.len();
    if n == 0 {
        return Ok(VertexSetDistance {
            value: 0.0,
            assignment: vec![],
        });
    }
    let sq: Vec<Vec<Rational>> = a
        .iter()
        .map(|x| {
            b.iter()
                .map(|y| {
                    x.iter().zip(y).fold(Rational::ZERO, |acc, (s, t)| {
                        let d = s - t;
                        acc + &d * &d
                    })
                })
                .collect()
        })
        .collect();
    let mut levels: Vec<&Rational> = sq.iter().flatten().collect();
    levels.sort();
    levels.dedup();
    let (mut lo, mut hi) = (0, levels.len() - 1);
    let mut best =
        perfect_matching(&sq, levels[hi]).expect("every pair is allowed at the top level");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match perfect_matching(&sq, levels[mid]) {
            Some(m) => {
                best = m;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    Ok(VertexSetDistance {
        value: Scalar::to_f64(levels[lo]).sqrt(),
        assignment: best,
    })
}

/// Kuhn's augmenting paths on the graph of pairs with `sq[i][j] ≤ limit`.
fn perfect_matching(sq: &[Vec<Rational>], limit: &Rational) -> Option<Vec<usize>> {
    let n = sq.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    fn augment(
        i: usize,
        sq: &[Vec<Rational>],
        limit: &Rational,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for j in 0..sq.len() {
            if seen[j] || sq[i][j] > *limit {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(k, sq, limit, seen, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 0..n {
        if !augment(i, sq, limit, &mut vec![false; n], &mut owner) {
            return None;
        }
    }
    let mut assignment = vec![0; n];
    for (j, o) in owner.iter().enumerate() {
        assignment[o.expect("perfect")] = j;
    }
    Some(assignment)
}
