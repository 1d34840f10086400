use itertools::Itertools;

use super::{dot, sub, Halfspace, Point};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg;

/// Normal of the hyperplane through `pts` (d points in d dimensions) by
/// cofactor expansion; zero when the points are affinely dependent.
fn hyperplane_normal(pts: &[&Point]) -> Vec<Rational> {
    let d = pts[0].len();
    let rows: Vec<Point> = pts[1..].iter().map(|p| sub(p, pts[0])).collect();
    (0..d)
        .map(|k| {
            let minor: Vec<Vec<Rational>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(i, _)| i != k)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let det = if minor.is_empty() {
                Rational::ONE
            } else {
                linalg::determinant(minor)
            };
            if k % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

/// Facet inequalities of the convex hull of `vertices`, exact and brute force.
///
/// Every d-subset spanning a supporting hyperplane contributes one facet,
/// deduplicated in canonical integer form.
pub fn facet_hull(dim: usize, vertices: &[Point]) -> Result<Vec<Halfspace>> {
    if vertices.len() < dim + 1 || vertices.iter().any(|v| v.len() != dim) {
        return Err(Error::InvalidArgument(
            "too few points for a full-dimensional hull".into(),
        ));
    }
    let mut facets: Vec<Halfspace> = Vec::new();
    for subset in (0..vertices.len()).combinations(dim) {
        let pts: Vec<&Point> = subset.iter().map(|&i| &vertices[i]).collect();
        let normal = hyperplane_normal(&pts);
        if normal.iter().all(Rational::is_zero) {
            continue;
        }
        let offset = dot(&normal, pts[0]);
        let sides: Vec<Rational> = vertices.iter().map(|v| dot(&normal, v) - &offset).collect();
        let h = if sides.iter().all(|s| *s <= Rational::ZERO) {
            Halfspace { normal, offset }
        } else if sides.iter().all(|s| *s >= Rational::ZERO) {
            Halfspace {
                normal: normal.into_iter().map(|x| -x).collect(),
                offset: -offset,
            }
        } else {
            continue;
        };
        let h = h.canonical();
        if !facets.contains(&h) {
            facets.push(h);
        }
    }
    if facets.len() < dim + 1 {
        return Err(Error::InvalidArgument(
            "points are not full-dimensional".into(),
        ));
    }
    Ok(facets)
}
