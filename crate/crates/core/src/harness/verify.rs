//! Self-checks of the forward model against the independent oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::geometry::Polytope;
use crate::moments::{
    axial_moment, harmonic_parts, integrate_with_table, verify_zero_identities, Direction, Oracle,
};
use crate::poly::MultiPoly;

const MAX_REAL_DEGREE: u32 = 6;
const MAX_COMPLEX_DEGREE: u32 = 4;
const DIRECTION_RANGE: i64 = 9;
const SAMPLE_BUDGET: usize = 100;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyReport {
    /// Sums `Σ_v ⟨v,z⟩^j D_v` checked for `j < d`.
    pub zero_identity_checks: usize,
    /// Moments compared with the triangulation oracle.
    pub oracle_checks: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Non-degenerate complex direction with small integer entries.
fn sample_direction(p: &Polytope, rng: &mut ChaCha8Rng) -> Result<Direction> {
    let d = p.dim();
    for _ in 0..SAMPLE_BUDGET {
        let mut draw = || -> Vec<i64> {
            (0..d)
                .map(|_| rng.gen_range(-DIRECTION_RANGE..=DIRECTION_RANGE))
                .collect()
        };
        let (re, im) = (draw(), draw());
        let Ok(z) = Direction::from_ints(&re, Some(&im)) else {
            continue;
        };
        let Ok(real) = Direction::from_ints(&re, None) else {
            continue;
        };
        if crate::moments::vertex_terms(p, &real, None).is_ok()
            && crate::moments::vertex_terms(p, &z, None).is_ok()
        {
            return Ok(z);
        }
    }
    Err(Error::GenerationFailed {
        attempts: SAMPLE_BUDGET,
    })
}

/// Check the vanishing identities and the vertex formula against exact
/// integration over a triangulation, for `n_directions` random planes.
pub fn verify_polytope(p: &Polytope, n_directions: usize, seed: u64) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let oracle = Oracle::new(p)?;
    let table = oracle.monomial_table(MAX_REAL_DEGREE);
    let mut report = VerifyReport::default();
    for _ in 0..n_directions {
        let z = sample_direction(p, &mut rng)?;
        let z_re = z.re().to_vec();
        let z_im = z.im().expect("sampled directions are complex").to_vec();
        let real = Direction::real(z_re.clone())?;
        for dir in [&real, &z] {
            for (j, s) in verify_zero_identities(p, dir)?.iter().enumerate() {
                report.zero_identity_checks += 1;
                if !s.is_zero() {
                    report
                        .failures
                        .push(format!("identity j={j} fails for z={:?}", dir));
                }
            }
        }
        for j in 0..=MAX_REAL_DEGREE {
            report.oracle_checks += 1;
            let mu = axial_moment(p, j as usize, &real)?;
            let want = integrate_with_table(&MultiPoly::linear(&z_re).pow(j), &table);
            if !mu.im.is_zero() || mu.re != want {
                report.failures.push(format!(
                    "real moment j={j} differs from the oracle for z={:?}",
                    z_re
                ));
            }
        }
        for j in 0..=MAX_COMPLEX_DEGREE {
            report.oracle_checks += 1;
            let mu = axial_moment(p, j as usize, &z)?;
            let (g1, g2) = harmonic_parts(j, &z_re, &z_im);
            if mu.re != integrate_with_table(&g1, &table)
                || mu.im != integrate_with_table(&g2, &table)
            {
                report.failures.push(format!(
                    "complex moment j={j} differs from the oracle for z={:?}",
                    z
                ));
            }
        }
    }
    Ok(report)
}
