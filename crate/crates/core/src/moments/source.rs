use std::sync::Mutex;

use super::{exact_moments, Direction, MomentSequence};
use crate::arith::{Complex, Rational, Scalar, ScalarMode};
use crate::error::{Error, Result};
use crate::geometry::Polytope;

/// Anything that can serve moments along requested directions.
pub trait MomentSource {
    fn dim(&self) -> usize;

    /// `μ_0 … μ_{count−1}` along `dir`, in the model of `ctx`.
    fn moments<S: Scalar>(
        &self,
        dir: &Direction,
        count: usize,
        ctx: S::Context,
    ) -> Result<MomentSequence<S>>;
}

/// Simulated measurements: exact forward moments of a known polytope,
/// rounded at the requested precision.
#[derive(Debug)]
pub struct PolytopeOracle {
    polytope: Polytope,
    cache: Mutex<Vec<(Direction, Vec<Complex<Rational>>)>>,
}

impl PolytopeOracle {
    pub fn new(polytope: Polytope) -> Self {
        PolytopeOracle {
            polytope,
            cache: Mutex::new(Vec::new()),
        }
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    fn exact(&self, dir: &Direction, count: usize) -> Result<Vec<Complex<Rational>>> {
        let mut cache = self.cache.lock().expect("cache lock");
        if let Some((_, m)) = cache.iter().find(|(d, m)| d == dir && m.len() >= count) {
            return Ok(m[..count].to_vec());
        }
        let m = exact_moments(&self.polytope, dir, count, None)?;
        cache.retain(|(d, _)| d != dir);
        cache.push((dir.clone(), m.clone()));
        Ok(m)
    }
}

impl MomentSource for PolytopeOracle {
    fn dim(&self) -> usize {
        self.polytope.dim()
    }

    fn moments<S: Scalar>(
        &self,
        dir: &Direction,
        count: usize,
        ctx: S::Context,
    ) -> Result<MomentSequence<S>> {
        if count == 0 {
            return Err(Error::InvalidArgument(
                "moment count must be at least 1".into(),
            ));
        }
        if let Some(bits) = S::bits(ctx) {
            // Float-mode margin on the denominators; exact values are cached separately.
            super::vertex_terms(&self.polytope, dir, Some(bits))?;
        }
        let exact = self.exact(dir, count)?;
        Ok(MomentSequence::from_exact(dir.clone(), &exact, ctx))
    }
}

/// One recorded moment sequence, values held exactly as read.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentRecord {
    pub direction: Direction,
    pub mode: ScalarMode,
    pub values: Vec<Complex<Rational>>,
}

/// Moments loaded from files; only the recorded directions are available.
#[derive(Clone, Debug, PartialEq)]
pub struct RecordedMoments {
    dim: usize,
    records: Vec<MomentRecord>,
}

impl RecordedMoments {
    pub fn new(records: Vec<MomentRecord>) -> Result<Self> {
        let dim = records
            .first()
            .map(|r| r.direction.dim())
            .ok_or_else(|| Error::InvalidArgument("no moment records".into()))?;
        if let Some(r) = records.iter().find(|r| r.direction.dim() != dim) {
            return Err(Error::SizeMismatch(dim, r.direction.dim()));
        }
        Ok(RecordedMoments { dim, records })
    }

    pub fn records(&self) -> &[MomentRecord] {
        &self.records
    }
}

impl MomentSource for RecordedMoments {
    fn dim(&self) -> usize {
        self.dim
    }

    fn moments<S: Scalar>(
        &self,
        dir: &Direction,
        count: usize,
        ctx: S::Context,
    ) -> Result<MomentSequence<S>> {
        let rec = self
            .records
            .iter()
            .find(|r| &r.direction == dir)
            .ok_or_else(|| {
                Error::InvalidArgument("no recorded moments for the requested direction".into())
            })?;
        if rec.values.len() < count {
            return Err(Error::InvalidArgument(format!(
                "recorded sequence has {} moments, {count} requested",
                rec.values.len()
            )));
        }
        Ok(MomentSequence::from_exact(
            dir.clone(),
            &rec.values[..count],
            ctx,
        ))
    }
}
