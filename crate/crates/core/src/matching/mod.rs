//! Vertex coordinates from matched complex projections.
//!
//! A complex direction `z_re + i·z_j` yields the projections
//! `⟨v, z_re⟩ + i·⟨v, z_j⟩` as roots, so the real and imaginary parts of
//! each root belong to the same vertex. With `d − 1` such planes sharing
//! `z_re`, sorting every plane by its real part lines the planes up and a
//! `d × d` solve per vertex gives the coordinates.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Float, Rational, Scalar, ScalarMode};
use crate::error::{Error, Result};
use crate::linalg::{self, FullPivotLu, Matrix};
use crate::moments::{scaled_coefficients, Direction, MomentSource};
use crate::recovery::{
    projections_from_coefficients, Method, RecoveryDiagnostics, RecoveryScalar, VertexCount,
};

#[cfg(test)]
mod tests;

/// Frames are resampled this many times before giving up.
pub const DEFAULT_FRAME_BUDGET: usize = 20;
const FRAME_ENTRY_RANGE: i64 = 10;
const FRAME_SAMPLE_BUDGET: usize = 100;
/// Largest accepted `‖F‖₁·‖F⁻¹‖₁` for the frame matrix.
const FRAME_CONDITION_LIMIT: f64 = 200.0;

#[derive(Clone, Debug, PartialEq)]
pub struct DirectionFrame {
    pub z_re: Vec<Rational>,
    pub z_others: Vec<Vec<Rational>>,
}

impl DirectionFrame {
    pub fn new(z_re: Vec<Rational>, z_others: Vec<Vec<Rational>>) -> Result<Self> {
        let d = z_re.len();
        if d < 2 || z_others.len() != d - 1 || z_others.iter().any(|z| z.len() != d) {
            return Err(Error::InvalidArgument(format!(
                "a frame in dimension {d} needs d − 1 further vectors of length d"
            )));
        }
        let frame = DirectionFrame { z_re, z_others };
        if linalg::determinant(frame.matrix()).is_zero() {
            return Err(Error::SingularFrame);
        }
        Ok(frame)
    }

    pub fn from_ints(z_re: &[i64], z_others: &[&[i64]]) -> Result<Self> {
        let conv = |v: &[i64]| v.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>();
        Self::new(conv(z_re), z_others.iter().map(|z| conv(z)).collect())
    }

    pub fn dim(&self) -> usize {
        self.z_re.len()
    }

    /// Rows `z_re, z_1, …, z_{d−1}`.
    pub fn matrix(&self) -> Matrix<Rational> {
        std::iter::once(self.z_re.clone())
            .chain(self.z_others.iter().cloned())
            .collect()
    }

    pub fn plane(&self, j: usize) -> Result<Direction> {
        Direction::complex(self.z_re.clone(), self.z_others[j].clone())
    }

    fn condition(&self) -> f64 {
        let m = self.matrix();
        match FullPivotLu::new(m.clone()) {
            Some(lu) => Scalar::to_f64(&(linalg::norm_1(&m) * linalg::norm_1(&lu.inverse()))),
            None => f64::INFINITY,
        }
    }
}

/// Small-integer frame, deterministic in `seed`.
pub fn choose_direction_frame(d: usize, seed: u64) -> Result<DirectionFrame> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "frames need d ≥ 2, got {d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..FRAME_SAMPLE_BUDGET {
        let mut draw = || -> Vec<i64> {
            (0..d)
                .map(|_| rng.gen_range(-FRAME_ENTRY_RANGE..=FRAME_ENTRY_RANGE))
                .collect()
        };
        let z_re = draw();
        let others: Vec<Vec<i64>> = (1..d).map(|_| draw()).collect();
        let refs: Vec<&[i64]> = others.iter().map(Vec::as_slice).collect();
        if let Ok(frame) = DirectionFrame::from_ints(&z_re, &refs) {
            if frame.condition() <= FRAME_CONDITION_LIMIT {
                return Ok(frame);
            }
        }
    }
    Err(Error::GenerationFailed {
        attempts: FRAME_SAMPLE_BUDGET,
    })
}

/// Projections recovered from one complex plane, as `(⟨v, z_re⟩, ⟨v, z_j⟩)`
/// sorted by the first component, then the second.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneMatch<S> {
    pub pairs: Vec<(S, S)>,
    pub estimated_n: usize,
    pub diagnostics: RecoveryDiagnostics,
}

fn pair_order<S: PartialOrd>(a: &(S, S), b: &(S, S)) -> Ordering {
    a.0.partial_cmp(&b.0)
        .unwrap_or(Ordering::Equal)
        .then(a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal))
}

fn spread<S: Scalar>(sorted: &[S]) -> f64 {
    match (sorted.first(), sorted.last()) {
        (Some(a), Some(b)) => (b.clone() - a).to_f64().abs(),
        _ => 0.0,
    }
}

/// Coincident real parts make the sorted order ambiguous.
fn check_ties<S: Scalar>(pairs: &[(S, S)], plane: usize, ctx: S::Context) -> Result<()> {
    let re: Vec<S> = pairs.iter().map(|p| p.0.clone()).collect();
    let tol = S::bits(ctx).map(|b| 2f64.powf(-(b as f64) / 2.0) * spread(&re).max(1.0));
    for w in re.windows(2) {
        let tied = match tol {
            None => w[0] == w[1],
            Some(t) => (w[1].clone() - &w[0]).to_f64().abs() <= t,
        };
        if tied {
            return Err(Error::TiedProjections { plane });
        }
    }
    Ok(())
}

/// Recover the pairs `(⟨v, z_re⟩, ⟨v, z_j⟩)` from the moments of the plane
/// `z_re + i·z_j`.
pub fn match_plane<S: RecoveryScalar, M: MomentSource>(
    source: &M,
    z_re: &[Rational],
    z_j: &[Rational],
    count: VertexCount,
    method: Method,
    ctx: S::Context,
) -> Result<PlaneMatch<S>> {
    let dir = Direction::complex(z_re.to_vec(), z_j.to_vec())?;
    let d = dir.dim();
    let n_moments = count.coefficients_needed(method).saturating_sub(d).max(1);
    let seq = source.moments::<S>(&dir, n_moments, ctx)?;
    let projections =
        projections_from_coefficients(&scaled_coefficients(&seq, ctx), method, count, ctx)?;
    let mut pairs: Vec<(S, S)> = projections
        .values
        .into_iter()
        .map(|x| (x.re, x.im))
        .collect();
    pairs.sort_by(pair_order);
    Ok(PlaneMatch {
        pairs,
        estimated_n: projections.estimated_n,
        diagnostics: projections.diagnostics,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchedProjections<S> {
    /// `others[j][i] = ⟨v_i, z_{j+1}⟩`.
    pub others: Vec<Vec<S>>,
    /// Element-wise median of the per-plane sorted `⟨v, z_re⟩` lists.
    pub consensus_re: Vec<S>,
}

fn median<S: Scalar>(mut xs: Vec<S>, ctx: S::Context) -> S {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let n = xs.len();
    if n % 2 == 1 {
        xs.swap_remove(n / 2)
    } else {
        (xs[n / 2 - 1].clone() + &xs[n / 2]) / &S::from_i64(2, ctx)
    }
}

fn min_gap<S: Scalar>(sorted: &[S]) -> f64 {
    sorted
        .windows(2)
        .map(|w| Scalar::to_f64(&(w[1].clone() - &w[0])).abs())
        .fold(f64::INFINITY, f64::min)
}

/// Line up the planes by sorted index and check they agree on `⟨v, z_re⟩`.
pub fn align_planes<S: Scalar>(
    planes: &[Vec<(S, S)>],
    ctx: S::Context,
) -> Result<MatchedProjections<S>> {
    let sizes: Vec<usize> = planes.iter().map(Vec::len).collect();
    if planes.is_empty() || sizes.iter().any(|&n| n != sizes[0]) {
        return Err(Error::InconsistentN(sizes));
    }
    let n = sizes[0];
    let consensus_re: Vec<S> = (0..n)
        .map(|i| median(planes.iter().map(|p| p[i].0.clone()).collect(), ctx))
        .collect();
    let tol = S::bits(ctx).map(|_| min_gap(&consensus_re) / 4.0);
    for (j, plane) in planes.iter().enumerate() {
        for (pair, c) in plane.iter().zip(&consensus_re) {
            let dev = (pair.0.clone() - c).to_f64().abs();
            let bad = match tol {
                None => pair.0 != *c,
                Some(t) => dev > t,
            };
            if bad {
                return Err(Error::AlignmentFailed {
                    plane: j,
                    deviation: dev,
                });
            }
        }
    }
    let others = planes
        .iter()
        .map(|p| p.iter().map(|x| x.1.clone()).collect())
        .collect();
    Ok(MatchedProjections {
        others,
        consensus_re,
    })
}

/// Solve `F·v = (consensus_re[i], p_1[i], …)` for every vertex.
pub fn assemble_vertices<S: Scalar>(
    matched: &MatchedProjections<S>,
    frame: &DirectionFrame,
    ctx: S::Context,
) -> Result<Vec<Vec<S>>> {
    if matched.others.len() + 1 != frame.dim() {
        return Err(Error::InvalidArgument(format!(
            "{} planes for a frame in dimension {}",
            matched.others.len(),
            frame.dim()
        )));
    }
    let f: Matrix<S> = frame
        .matrix()
        .iter()
        .map(|row| row.iter().map(|x| S::from_rational(x, ctx)).collect())
        .collect();
    let lu = FullPivotLu::new(f).ok_or(Error::SingularFrame)?;
    Ok((0..matched.consensus_re.len())
        .map(|i| {
            let rhs: Vec<S> = std::iter::once(matched.consensus_re[i].clone())
                .chain(matched.others.iter().map(|p| p[i].clone()))
                .collect();
            lu.solve(&rhs)
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlaneReport {
    pub z_re: Vec<Rational>,
    pub z_j: Vec<Rational>,
    pub diagnostics: RecoveryDiagnostics,
}

/// One frame tried by [`reconstruct`].
#[derive(Clone, Debug, PartialEq)]
pub struct Attempt {
    pub frame: DirectionFrame,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReconstructionReport {
    /// Exact values; in float mode these are the dyadic rationals computed.
    pub vertices: Vec<Vec<Rational>>,
    pub estimated_n: usize,
    pub mode: ScalarMode,
    pub method: Method,
    pub count: VertexCount,
    pub seed: u64,
    pub planes: Vec<PlaneReport>,
    pub attempts: Vec<Attempt>,
    /// Moments requested per plane.
    pub moments_per_plane: usize,
}

impl ReconstructionReport {
    pub fn frame(&self) -> &DirectionFrame {
        &self
            .attempts
            .last()
            .expect("a report has at least one attempt")
            .frame
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReconstructOptions {
    pub method: Method,
    pub count: VertexCount,
    pub seed: u64,
    pub budget: usize,
}

impl ReconstructOptions {
    pub fn new(count: VertexCount, seed: u64) -> Self {
        ReconstructOptions {
            method: Method::Pade,
            count,
            seed,
            budget: DEFAULT_FRAME_BUDGET,
        }
    }

    pub fn method(self, method: Method) -> Self {
        ReconstructOptions { method, ..self }
    }
}

struct Solved {
    vertices: Vec<Vec<Rational>>,
    estimated_n: usize,
    planes: Vec<PlaneReport>,
}

fn solve_frame<S: RecoveryScalar, M: MomentSource>(
    source: &M,
    frame: &DirectionFrame,
    opts: &ReconstructOptions,
    ctx: S::Context,
) -> Result<Solved> {
    let mut matches = Vec::with_capacity(frame.dim() - 1);
    for (j, z_j) in frame.z_others.iter().enumerate() {
        let m = match_plane::<S, M>(source, &frame.z_re, z_j, opts.count, opts.method, ctx)?;
        check_ties(&m.pairs, j, ctx)?;
        matches.push(m);
    }
    let ns: Vec<usize> = matches.iter().map(|m| m.estimated_n).collect();
    if ns.iter().any(|&n| n != ns[0]) {
        return Err(Error::InconsistentN(ns));
    }
    let pairs: Vec<Vec<(S, S)>> = matches.iter().map(|m| m.pairs.clone()).collect();
    let matched = align_planes(&pairs, ctx)?;
    let vertices = assemble_vertices(&matched, frame, ctx)?;
    Ok(Solved {
        vertices: vertices
            .iter()
            .map(|v| v.iter().map(Scalar::to_rational).collect())
            .collect(),
        estimated_n: ns[0],
        planes: frame
            .z_others
            .iter()
            .zip(matches)
            .map(|(z_j, m)| PlaneReport {
                z_re: frame.z_re.clone(),
                z_j: z_j.clone(),
                diagnostics: m.diagnostics,
            })
            .collect(),
    })
}

fn report(
    solved: Solved,
    mode: ScalarMode,
    opts: &ReconstructOptions,
    attempts: Vec<Attempt>,
    d: usize,
) -> ReconstructionReport {
    ReconstructionReport {
        vertices: solved.vertices,
        estimated_n: solved.estimated_n,
        mode,
        method: opts.method,
        count: opts.count,
        seed: opts.seed,
        planes: solved.planes,
        attempts,
        moments_per_plane: opts
            .count
            .coefficients_needed(opts.method)
            .saturating_sub(d)
            .max(1),
    }
}

fn reconstruct_with<S: RecoveryScalar, M: MomentSource>(
    source: &M,
    mode: ScalarMode,
    opts: ReconstructOptions,
) -> Result<ReconstructionReport> {
    let ctx = S::context_for(mode)?;
    let d = source.dim();
    let mut seeds = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut attempts = Vec::new();
    for _ in 0..opts.budget.max(1) {
        let frame = choose_direction_frame(d, seeds.gen())?;
        match solve_frame::<S, M>(source, &frame, &opts, ctx) {
            Ok(solved) => {
                attempts.push(Attempt { frame, error: None });
                return Ok(report(solved, mode, &opts, attempts, d));
            }
            Err(e) if e.is_resampleable() => attempts.push(Attempt {
                frame,
                error: Some(e.to_string()),
            }),
            Err(e) => return Err(e),
        }
    }
    Err(Error::BudgetExhausted {
        attempts: attempts.len(),
        trail: attempts.into_iter().filter_map(|a| a.error).collect(),
    })
}

/// Single attempt in a caller-chosen frame, for sources that only serve
/// the directions they recorded.
pub fn reconstruct_in_frame<M: MomentSource>(
    source: &M,
    frame: &DirectionFrame,
    mode: ScalarMode,
    opts: ReconstructOptions,
) -> Result<ReconstructionReport> {
    if frame.dim() != source.dim() {
        return Err(Error::SizeMismatch(frame.dim(), source.dim()));
    }
    let solved = if mode.is_exact() {
        solve_frame::<Rational, M>(source, frame, &opts, ())?
    } else {
        solve_frame::<Float, M>(source, frame, &opts, Float::context_for(mode)?)?
    };
    Ok(report(
        solved,
        mode,
        &opts,
        vec![Attempt {
            frame: frame.clone(),
            error: None,
        }],
        frame.dim(),
    ))
}

/// Recover the vertex set of the polytope behind `source`, resampling the
/// frame whenever a plane is degenerate.
pub fn reconstruct<M: MomentSource>(
    source: &M,
    mode: ScalarMode,
    opts: ReconstructOptions,
) -> Result<ReconstructionReport> {
    if source.dim() < 2 {
        return Err(Error::InvalidArgument("reconstruction needs d ≥ 2".into()));
    }
    if mode.is_exact() {
        reconstruct_with::<Rational, M>(source, mode, opts)
    } else {
        reconstruct_with::<Float, M>(source, mode, opts)
    }
}

/// Exact `(⟨v, z_re⟩, ⟨v, z_j⟩)` pairs in the order `match_plane` returns them.
pub fn exact_pairs(
    vertices: &[Vec<Rational>],
    z_re: &[Rational],
    z_j: &[Rational],
) -> Vec<(Rational, Rational)> {
    let mut pairs: Vec<(Rational, Rational)> = vertices
        .iter()
        .map(|v| (crate::geometry::dot(v, z_re), crate::geometry::dot(v, z_j)))
        .collect();
    pairs.sort_by(pair_order);
    pairs
}
