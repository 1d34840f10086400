//! Independent integration oracle: no vertex cones, no Brion sums.
//!
//! The polytope is split into simplices by recursive pulling from the
//! lexicographically smallest vertex. Over a simplex with vertices `s_i`,
//! `∫_Δ x^α = |det| · α!/(|α| + d)! · Σ Π_i (|β_i|!/β_i!) s_i^β_i`, the sum
//! running over all splittings `α = β_0 + … + β_d`. Coordinates are scaled
//! to integers first so that the sum is accumulated without fractions.

use std::collections::{BTreeMap, BTreeSet};

use dashu::base::{Abs, Gcd};

use crate::arith::{factorial, Int, Natural, Rational};
use crate::error::{Error, Result};
use crate::geometry::{sub, Point, Polytope};
use crate::linalg;
use crate::poly::MultiPoly;

fn affine_dim(p: &Polytope, verts: &[usize]) -> usize {
    let base = &p.vertices()[verts[0]];
    let rows: Vec<Point> = verts[1..]
        .iter()
        .map(|&v| sub(&p.vertices()[v], base))
        .collect();
    if rows.is_empty() {
        0
    } else {
        linalg::rank(rows)
    }
}

/// Pulling triangulation of a `k`-dimensional face given by its vertex set.
fn triangulate_face(p: &Polytope, verts: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![verts[0]]];
    }
    let apex = *verts
        .iter()
        .min_by(|&&a, &&b| p.vertices()[a].cmp(&p.vertices()[b]))
        .expect("nonempty face");
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for f in 0..p.facets().len() {
        let sub_face: Vec<usize> = verts
            .iter()
            .copied()
            .filter(|&v| p.vertex_facets()[v].contains(&f))
            .collect();
        if sub_face.is_empty() || sub_face.contains(&apex) || sub_face.len() == verts.len() {
            continue;
        }
        if affine_dim(p, &sub_face) != k - 1 || !seen.insert(sub_face.clone()) {
            continue;
        }
        for mut s in triangulate_face(p, &sub_face, k - 1) {
            s.push(apex);
            out.push(s);
        }
    }
    out
}

struct Simplex {
    points: Vec<Point>,
    det_abs: Rational,
}

/// Triangulated polytope ready for exact polynomial integration.
pub struct Oracle {
    dim: usize,
    simplices: Vec<Simplex>,
}

impl Oracle {
    pub fn new(p: &Polytope) -> Result<Self> {
        p.validate()?;
        let d = p.dim();
        let all: Vec<usize> = (0..p.n_vertices()).collect();
        let mut simplices = Vec::new();
        for s in triangulate_face(p, &all, d) {
            let points: Vec<Point> = s.iter().map(|&v| p.vertices()[v].clone()).collect();
            let rows: Vec<Point> = points[..d].iter().map(|q| sub(q, &points[d])).collect();
            let det_abs = Abs::abs(linalg::determinant(rows));
            if det_abs.is_zero() {
                return Err(Error::InvalidArgument(
                    "degenerate simplex in triangulation".into(),
                ));
            }
            simplices.push(Simplex { points, det_abs });
        }
        Ok(Oracle { dim: d, simplices })
    }

    pub fn n_simplices(&self) -> usize {
        self.simplices.len()
    }

    pub fn volume(&self) -> Rational {
        let df = Rational::from(factorial(self.dim as u32));
        self.simplices
            .iter()
            .fold(Rational::ZERO, |acc, s| acc + s.det_abs.clone() / &df)
    }

    /// `∫_P x^α dx` for every `α` with `|α| <= max_degree`.
    pub fn monomial_table(&self, max_degree: u32) -> BTreeMap<Vec<u32>, Rational> {
        let d = self.dim;
        let alphas = exponents_up_to(d, max_degree);
        let base = max_degree as usize + 1;
        let code = |e: &[u32]| e.iter().fold(0, |acc, &x| acc * base + x as usize);
        let codes: Vec<usize> = alphas.iter().map(|a| code(a)).collect();
        let multinomial: Vec<Int> = alphas
            .iter()
            .map(|a| factorial(a.iter().sum()) / a.iter().map(|&x| factorial(x)).product::<Int>())
            .collect();
        let mut totals = vec![Rational::ZERO; alphas.len()];
        for s in &self.simplices {
            let scale = s.points.iter().flatten().fold(Natural::ONE, |acc, x| {
                let q = x.denominator();
                &acc / (&acc).gcd(q) * q
            });
            let scale_int = Int::from(scale.clone());
            let ints: Vec<Vec<Int>> = s
                .points
                .iter()
                .map(|q| {
                    q.iter()
                        .map(|x| x.numerator() * (&scale_int / Int::from(x.denominator().clone())))
                        .collect()
                })
                .collect();
            let mut sum = vec![Int::ZERO; base.pow(d as u32)];
            sum[0] = Int::ONE;
            for q in &ints {
                // term[β] = (|β|!/β!) q^β, built up one exponent at a time.
                let mut power = vec![Int::ZERO; sum.len()];
                power[0] = Int::ONE;
                for a in alphas.iter().skip(1) {
                    let k = a.iter().position(|&x| x > 0).expect("nonzero exponent");
                    let mut parent = a.clone();
                    parent[k] -= 1;
                    power[code(a)] = &power[code(&parent)] * &q[k];
                }
                let mut next = vec![Int::ZERO; sum.len()];
                for (g, &cg) in alphas.iter().zip(&codes) {
                    for ((b, &cb), m) in alphas.iter().zip(&codes).zip(&multinomial) {
                        if b.iter().zip(g).all(|(x, y)| x <= y) && !sum[cg - cb].is_zero() {
                            next[cg] += &sum[cg - cb] * &power[cb] * m;
                        }
                    }
                }
                sum = next;
            }
            for ((a, &c), total) in alphas.iter().zip(&codes).zip(totals.iter_mut()) {
                let deg: u32 = a.iter().sum();
                let weight = Rational::from(a.iter().map(|&x| factorial(x)).product::<Int>())
                    / Rational::from(
                        factorial(deg + d as u32) * Int::from(scale.pow(deg as usize)),
                    );
                *total = total.clone() + Rational::from(sum[c].clone()) * weight * &s.det_abs;
            }
        }
        alphas.into_iter().zip(totals).collect()
    }

    pub fn integrate_monomial(&self, exponents: &[u32]) -> Rational {
        let deg = exponents.iter().sum();
        self.monomial_table(deg)
            .remove(exponents)
            .unwrap_or(Rational::ZERO)
    }

    /// `∫_P g dx`.
    pub fn integrate(&self, g: &MultiPoly) -> Rational {
        let table = self.monomial_table(g.degree());
        integrate_with_table(g, &table)
    }
}

/// `∫_P g` from a precomputed [`Oracle::monomial_table`].
pub fn integrate_with_table(g: &MultiPoly, table: &BTreeMap<Vec<u32>, Rational>) -> Rational {
    g.terms().fold(Rational::ZERO, |acc, (alpha, c)| {
        acc + c.clone() * &table[alpha]
    })
}

/// Exponent vectors in `nvars` variables, graded by total degree.
fn exponents_up_to(nvars: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for deg in 0..=max_degree {
        let mut cur = vec![0u32; nvars];
        fill(&mut cur, 0, deg, &mut out);
    }
    out
}

fn fill(cur: &mut Vec<u32>, idx: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
    if idx + 1 == cur.len() {
        cur[idx] = remaining;
        out.push(cur.clone());
        return;
    }
    for a in (0..=remaining).rev() {
        cur[idx] = a;
        fill(cur, idx + 1, remaining - a, out);
    }
    cur[idx] = 0;
}

pub fn integrate_monomial_oracle(p: &Polytope, exponents: &[u32]) -> Result<Rational> {
    if exponents.len() != p.dim() {
        return Err(Error::SizeMismatch(p.dim(), exponents.len()));
    }
    Ok(Oracle::new(p)?.integrate_monomial(exponents))
}
