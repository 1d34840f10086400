use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{intersect_halfspaces, Halfspace, Polytope};
use crate::arith::Rational;
use crate::error::{Error, Result};

pub const DEFAULT_RETRY_BUDGET: usize = 100;

const COEFF_MAX: i64 = 20;
/// Radius of the sphere the sampled hyperplanes (nearly) touch.
const RADIUS: f64 = 10.0;

fn sample_halfspace(d: usize, rng: &mut ChaCha8Rng) -> Halfspace {
    loop {
        let normal: Vec<i64> = (0..d)
            .map(|_| rng.gen_range(-COEFF_MAX..=COEFF_MAX))
            .collect();
        if normal.iter().all(|&a| a == 0) {
            continue;
        }
        let norm = (normal.iter().map(|&a| (a * a) as f64).sum::<f64>()).sqrt();
        // Integer offset at least R·‖a‖ keeps the origin strictly inside.
        let offset = (RADIUS * norm).ceil() as i64;
        return Halfspace {
            normal: normal.into_iter().map(Rational::from).collect(),
            offset: Rational::from(offset),
        };
    }
}

/// Intersect `n_facets` random integer halfspaces tangent to a sphere around
/// the origin, retrying until the result is a bounded simple polytope.
pub fn random_simple_polytope(d: usize, n_facets: usize, seed: u64) -> Result<Polytope> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("dimension {d} < 2")));
    }
    if n_facets < d + 1 {
        return Err(Error::InvalidArgument(format!(
            "need at least {} facets in dimension {d}, got {n_facets}",
            d + 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DEFAULT_RETRY_BUDGET {
        let hs: Vec<Halfspace> = (0..n_facets)
            .map(|_| sample_halfspace(d, &mut rng))
            .collect();
        match intersect_halfspaces(&hs) {
            Ok(p) if super::check_simple(&p) => return Ok(p),
            Ok(_) | Err(Error::NotBounded) | Err(Error::NotSimple { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenerationFailed {
        attempts: DEFAULT_RETRY_BUDGET,
    })
}

/// Facet count that usually yields `n` vertices when every facet is irredundant.
fn facets_for(d: usize, n: usize) -> Option<usize> {
    match d {
        2 => Some(n),
        // Simple 3-polytopes: 2E = 3V and V - E + F = 2.
        3 if n.is_multiple_of(2) && n >= 4 => Some(n / 2 + 2),
        3 => None,
        _ => Some(d + 1),
    }
}

/// Random simple polytope with exactly `n_vertices` vertices.
///
/// Successive attempts derive fresh seeds from `seed`, so the result is
/// deterministic. In dimension 3 only even vertex counts are possible.
pub fn random_simple_polytope_with_vertices(
    d: usize,
    n_vertices: usize,
    seed: u64,
) -> Result<Polytope> {
    let Some(base_facets) = facets_for(d, n_vertices) else {
        return Err(Error::InvalidArgument(format!(
            "no simple {d}-polytope has {n_vertices} vertices"
        )));
    };
    if n_vertices < d + 1 {
        return Err(Error::InvalidArgument(format!(
            "{n_vertices} vertices cannot span dimension {d}"
        )));
    }
    let mut meta = ChaCha8Rng::seed_from_u64(seed);
    let mut n_facets = base_facets;
    for attempt in 0..DEFAULT_RETRY_BUDGET {
        let p = random_simple_polytope(d, n_facets, meta.gen())?;
        if p.n_vertices() == n_vertices {
            return Ok(p);
        }
        // Above dimension 3 the vertex count is not determined by the facet
        // count, so walk the facet count towards the target.
        if d > 3 && attempt % 4 == 3 {
            if p.n_vertices() < n_vertices {
                n_facets += 1;
            } else if n_facets > d + 1 {
                n_facets -= 1;
            }
        }
    }
    Err(Error::GenerationFailed {
        attempts: DEFAULT_RETRY_BUDGET,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::check_simple;

    #[test]
    fn polygon_from_five_facets() {
        let p = random_simple_polytope(2, 5, 7).unwrap();
        assert!((3..=5).contains(&p.n_vertices()));
        assert!(check_simple(&p));
    }

    #[test]
    fn four_facets_in_space_give_a_simplex() {
        for seed in 0..5 {
            let p = random_simple_polytope(3, 4, seed).unwrap();
            assert_eq!(p.n_vertices(), 4);
            assert_eq!(p.n_edges(), 6);
        }
    }

    #[test]
    fn too_few_facets_is_rejected() {
        assert!(matches!(
            random_simple_polytope(2, 2, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(
            random_simple_polytope(3, 8, 11).unwrap(),
            random_simple_polytope(3, 8, 11).unwrap()
        );
    }

    #[test]
    fn exact_vertex_counts() {
        assert_eq!(
            random_simple_polytope_with_vertices(2, 6, 3)
                .unwrap()
                .n_vertices(),
            6
        );
        assert_eq!(
            random_simple_polytope_with_vertices(3, 12, 3)
                .unwrap()
                .n_vertices(),
            12
        );
        assert_eq!(
            random_simple_polytope_with_vertices(4, 5, 3)
                .unwrap()
                .n_vertices(),
            5
        );
        assert!(random_simple_polytope_with_vertices(3, 7, 3).is_err());
    }
}
