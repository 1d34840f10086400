//! Simple convex polytopes with exact rational coordinates.
//!
//! Vertices are enumerated from a halfspace description by brute force over
//! d-subsets of the constraints, which is plenty at the sizes this crate
//! targets (d <= 5, a few dozen facets). Adjacency follows the facet
//! incidences: two vertices of a simple polytope share an edge exactly when
//! they share d-1 tight facets.

pub mod fixtures;
mod generate;
mod hull;

use dashu::base::Abs;
use itertools::Itertools;

pub use generate::{
    random_simple_polytope, random_simple_polytope_with_vertices, DEFAULT_RETRY_BUDGET,
};
pub use hull::facet_hull;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg;

pub type Point = Vec<Rational>;

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::ZERO, |acc, (x, y)| acc + x.clone() * y)
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x.clone() - y).collect()
}

/// The constraint `⟨normal, x⟩ <= offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if normal.iter().all(Rational::is_zero) {
            return Err(Error::InvalidArgument(
                "halfspace normal must be nonzero".into(),
            ));
        }
        Ok(Halfspace { normal, offset })
    }

    pub fn from_ints(normal: &[i64], offset: i64) -> Result<Self> {
        Halfspace::new(
            normal.iter().map(|&v| Rational::from(v)).collect(),
            Rational::from(offset),
        )
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `offset - ⟨normal, x⟩`; nonnegative inside.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        self.offset.clone() - dot(&self.normal, x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.slack(x) >= Rational::ZERO
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.slack(x).is_zero()
    }

    /// Same halfspace scaled so the normal is a primitive integer vector.
    pub fn canonical(&self) -> Halfspace {
        use dashu::base::{Gcd, UnsignedAbs};
        use dashu::integer::{IBig, UBig};
        let lcm = self
            .normal
            .iter()
            .chain(std::iter::once(&self.offset))
            .fold(UBig::ONE, |acc, v| {
                let d = v.denominator().clone();
                let g = (&acc).gcd(&d);
                acc * d / g
            });
        let scale = Rational::from(IBig::from(lcm));
        let ints: Vec<IBig> = self
            .normal
            .iter()
            .chain(std::iter::once(&self.offset))
            .map(|v| (v.clone() * &scale).numerator().clone())
            .collect();
        let g = ints
            .iter()
            .map(UnsignedAbs::unsigned_abs)
            .filter(|v| *v != UBig::ZERO)
            .reduce(|a, b| (&a).gcd(&b))
            .unwrap_or(UBig::ONE);
        let g = Rational::from(IBig::from(g));
        let mut vals: Vec<Rational> = ints.into_iter().map(|v| Rational::from(v) / &g).collect();
        let offset = vals.pop().expect("offset entry");
        Halfspace {
            normal: vals,
            offset,
        }
    }
}

/// A bounded convex polytope with its vertex/facet incidences and edge graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Halfspace>,
    vertex_facets: Vec<Vec<usize>>,
    adjacency: Vec<Vec<bool>>,
}

impl Polytope {
    /// Assemble a polytope from vertices and facet inequalities, deriving the
    /// incidences and the edge graph. Does not require simplicity.
    pub fn from_vertices_and_facets(
        dim: usize,
        vertices: Vec<Point>,
        facets: Vec<Halfspace>,
    ) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidArgument(format!("dimension {dim} < 2")));
        }
        if vertices.iter().any(|v| v.len() != dim) || facets.iter().any(|f| f.dim() != dim) {
            return Err(Error::InvalidArgument(
                "coordinate length differs from dimension".into(),
            ));
        }
        let vertex_facets: Vec<Vec<usize>> = vertices
            .iter()
            .map(|v| {
                (0..facets.len())
                    .filter(|&f| facets[f].is_tight(v))
                    .collect()
            })
            .collect();
        let adjacency = edge_graph(dim, &vertices, &facets, &vertex_facets);
        let p = Polytope {
            dim,
            vertices,
            facets,
            vertex_facets,
            adjacency,
        };
        p.validate()?;
        Ok(p)
    }

    /// Build from a vertex list in convex position; facets come from [`facet_hull`].
    pub fn from_vertices(dim: usize, vertices: Vec<Point>) -> Result<Self> {
        let facets = facet_hull(dim, &vertices)?;
        Polytope::from_vertices_and_facets(dim, vertices, facets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn vertex_facets(&self) -> &[Vec<usize>] {
        &self.vertex_facets
    }

    pub fn adjacency(&self) -> &[Vec<bool>] {
        &self.adjacency
    }

    /// Neighbors of vertex `i` in ascending index order.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&j| self.adjacency[i][j])
            .collect()
    }

    pub fn n_edges(&self) -> usize {
        (0..self.n_vertices())
            .map(|i| self.neighbors(i).len())
            .sum::<usize>()
            / 2
    }

    /// Vertex indices lying on facet `f`.
    pub fn facet_vertices(&self, f: usize) -> Vec<usize> {
        (0..self.n_vertices())
            .filter(|&v| self.vertex_facets[v].contains(&f))
            .collect()
    }

    pub fn centroid(&self) -> Point {
        let n = Rational::from(self.vertices.len());
        (0..self.dim)
            .map(|k| {
                self.vertices
                    .iter()
                    .fold(Rational::ZERO, |acc, v| acc + &v[k])
                    / &n
            })
            .collect()
    }

    /// Check the structural invariants shared by every polytope in this crate.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if n < self.dim + 1 {
            return bad(format!("{n} vertices cannot span dimension {}", self.dim));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if let Some(f) = self.facets.iter().position(|f| !f.contains(v)) {
                return bad(format!("vertex {i} violates facet {f}"));
            }
            if self.vertex_facets[i].len() < self.dim {
                return bad(format!(
                    "vertex {i} is tight on fewer than {} facets",
                    self.dim
                ));
            }
        }
        if self
            .vertices
            .iter()
            .sorted()
            .tuple_windows()
            .any(|(a, b)| a == b)
        {
            return bad("duplicate vertices".into());
        }
        for i in 0..n {
            if self.adjacency[i][i] {
                return bad(format!("self-loop at vertex {i}"));
            }
            for j in 0..n {
                if self.adjacency[i][j] != self.adjacency[j][i] {
                    return bad("adjacency is not symmetric".into());
                }
            }
        }
        if !self.is_connected() {
            return bad("edge graph is disconnected".into());
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in self.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Edges: vertices u, v whose common tight facets have normal rank d-1 and
/// are tight at no third vertex.
fn edge_graph(
    dim: usize,
    vertices: &[Point],
    facets: &[Halfspace],
    vertex_facets: &[Vec<usize>],
) -> Vec<Vec<bool>> {
    let n = vertices.len();
    let mut adj = vec![vec![false; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            let common: Vec<usize> = vertex_facets[u]
                .iter()
                .copied()
                .filter(|f| vertex_facets[v].contains(f))
                .collect();
            if common.len() < dim - 1 {
                continue;
            }
            let normals: Vec<Vec<Rational>> =
                common.iter().map(|&f| facets[f].normal.clone()).collect();
            if linalg::rank(normals) != dim - 1 {
                continue;
            }
            let shared_by_other = (0..n)
                .filter(|&w| w != u && w != v)
                .any(|w| common.iter().all(|f| vertex_facets[w].contains(f)));
            if !shared_by_other {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
    }
    adj
}

/// Intersect halfspaces into a simple polytope.
///
/// Every d-subset of constraints with a unique intersection point is a vertex
/// candidate; feasible candidates are kept, sorted lexicographically so the
/// result does not depend on input order.
pub fn intersect_halfspaces(halfspaces: &[Halfspace]) -> Result<Polytope> {
    let dim = halfspaces.first().map_or(0, Halfspace::dim);
    if dim < 2 {
        return Err(Error::InvalidArgument(format!("dimension {dim} < 2")));
    }
    if halfspaces.iter().any(|h| h.dim() != dim) {
        return Err(Error::InvalidArgument(
            "halfspaces of mixed dimension".into(),
        ));
    }
    if halfspaces.len() < dim + 1 {
        return Err(Error::InvalidArgument(format!(
            "{} halfspaces cannot bound a polytope in dimension {dim}",
            halfspaces.len()
        )));
    }

    let mut vertices: Vec<Point> = Vec::new();
    for subset in (0..halfspaces.len()).combinations(dim) {
        let a: Vec<Vec<Rational>> = subset
            .iter()
            .map(|&i| halfspaces[i].normal.clone())
            .collect();
        let b: Vec<Rational> = subset
            .iter()
            .map(|&i| halfspaces[i].offset.clone())
            .collect();
        let Some(x) = linalg::solve(a, b) else {
            continue;
        };
        if halfspaces.iter().all(|h| h.contains(&x)) {
            vertices.push(x);
        }
    }
    vertices.sort();
    vertices.dedup();
    if vertices.is_empty() {
        return Err(Error::NotBounded);
    }

    for (i, v) in vertices.iter().enumerate() {
        let tight = halfspaces.iter().filter(|h| h.is_tight(v)).count();
        if tight > dim {
            return Err(Error::NotSimple { vertex: i, tight });
        }
    }

    // Keep only constraints that are tight somewhere; the rest are redundant.
    let facets: Vec<Halfspace> = halfspaces
        .iter()
        .filter(|h| vertices.iter().any(|v| h.is_tight(v)))
        .cloned()
        .collect();
    let vertex_facets: Vec<Vec<usize>> = vertices
        .iter()
        .map(|v| {
            (0..facets.len())
                .filter(|&f| facets[f].is_tight(v))
                .collect()
        })
        .collect();
    let adjacency = edge_graph(dim, &vertices, &facets, &vertex_facets);

    // In a simple polyhedron every vertex has d edge directions; a missing
    // neighbor means an unbounded edge.
    if adjacency
        .iter()
        .any(|row| row.iter().filter(|&&e| e).count() < dim)
    {
        return Err(Error::NotBounded);
    }
    let p = Polytope {
        dim,
        vertices,
        facets,
        vertex_facets,
        adjacency,
    };
    p.validate().map_err(|_| Error::NotBounded)?;
    Ok(p)
}

/// The cone spanned at a vertex by its incident edges.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentCone {
    pub apex: Point,
    /// `u - v` for each neighbor `u`, in ascending neighbor index order.
    pub edges: Vec<Point>,
    /// `|det(w_1, …, w_d)|`.
    pub det_abs: Rational,
}

pub fn tangent_cone(p: &Polytope, vertex_index: usize) -> Result<TangentCone> {
    if vertex_index >= p.n_vertices() {
        return Err(Error::InvalidArgument(format!(
            "vertex index {vertex_index} out of range"
        )));
    }
    let nbrs = p.neighbors(vertex_index);
    if nbrs.len() != p.dim() {
        return Err(Error::NonSimpleVertex {
            vertex: vertex_index,
            degree: nbrs.len(),
        });
    }
    let apex = p.vertices()[vertex_index].clone();
    let edges: Vec<Point> = nbrs.iter().map(|&u| sub(&p.vertices()[u], &apex)).collect();
    // Rows are edge vectors; det of the transpose is the same.
    let det_abs = Abs::abs(linalg::determinant(edges.clone()));
    if det_abs.is_zero() {
        return Err(Error::NonSimpleVertex {
            vertex: vertex_index,
            degree: nbrs.len(),
        });
    }
    Ok(TangentCone {
        apex,
        edges,
        det_abs,
    })
}

/// True iff every vertex has exactly d neighbors with independent edge vectors.
pub fn check_simple(p: &Polytope) -> bool {
    (0..p.n_vertices()).all(|i| tangent_cone(p, i).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rational;

    fn pt(v: &[i64]) -> Point {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    fn hs(n: &[i64], b: i64) -> Halfspace {
        Halfspace::from_ints(n, b).unwrap()
    }

    fn unit_square_halfspaces() -> Vec<Halfspace> {
        vec![
            hs(&[-1, 0], 0),
            hs(&[0, -1], 0),
            hs(&[1, 0], 1),
            hs(&[0, 1], 1),
        ]
    }

    #[test]
    fn unit_square_from_halfspaces() {
        let p = intersect_halfspaces(&unit_square_halfspaces()).unwrap();
        assert_eq!(
            p.vertices(),
            &[pt(&[0, 0]), pt(&[0, 1]), pt(&[1, 0]), pt(&[1, 1])]
        );
        // 4-cycle: (0,0)-(0,1)-(1,1)-(1,0)
        assert_eq!(p.neighbors(0), vec![1, 2]);
        assert_eq!(p.neighbors(3), vec![1, 2]);
        assert_eq!(p.n_edges(), 4);
        assert!(check_simple(&p));
    }

    #[test]
    fn standard_simplex_is_complete_graph() {
        let h = vec![
            hs(&[-1, 0, 0], 0),
            hs(&[0, -1, 0], 0),
            hs(&[0, 0, -1], 0),
            hs(&[1, 1, 1], 1),
        ];
        let p = intersect_halfspaces(&h).unwrap();
        assert_eq!(p.n_vertices(), 4);
        assert_eq!(p.n_edges(), 6);
        let origin = p
            .vertices()
            .iter()
            .position(|v| v.iter().all(Rational::is_zero))
            .unwrap();
        let cone = tangent_cone(&p, origin).unwrap();
        assert_eq!(cone.det_abs, Rational::ONE);
        let mut edges = cone.edges.clone();
        edges.sort();
        assert_eq!(edges, vec![pt(&[0, 0, 1]), pt(&[0, 1, 0]), pt(&[1, 0, 0])]);
    }

    #[test]
    fn empty_and_unbounded_intersections_fail() {
        let empty = vec![
            hs(&[-1, 0], 0),
            hs(&[0, -1], 0),
            hs(&[1, 1], 1),
            hs(&[-1, -1], -2),
        ];
        assert_eq!(intersect_halfspaces(&empty), Err(Error::NotBounded));
        let wedge = vec![hs(&[-1, 0], 0), hs(&[0, -1], 0), hs(&[1, -1], 3)];
        assert_eq!(intersect_halfspaces(&wedge), Err(Error::NotBounded));
    }

    #[test]
    fn degenerate_vertex_is_not_simple() {
        // Square pyramid apex lies on four facets.
        let h = vec![
            hs(&[0, 0, -1], 0),
            hs(&[2, 0, 1], 2),
            hs(&[-2, 0, 1], 2),
            hs(&[0, 2, 1], 2),
            hs(&[0, -2, 1], 2),
        ];
        assert!(matches!(
            intersect_halfspaces(&h),
            Err(Error::NotSimple { tight: 4, .. })
        ));
    }

    #[test]
    fn too_few_halfspaces_is_rejected() {
        assert!(matches!(
            intersect_halfspaces(&[hs(&[1, 0], 1), hs(&[0, 1], 1)]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn unit_square_tangent_cone() {
        let p = intersect_halfspaces(&unit_square_halfspaces()).unwrap();
        let cone = tangent_cone(&p, 0).unwrap();
        assert_eq!(cone.edges, vec![pt(&[0, 1]), pt(&[1, 0])]);
        assert_eq!(cone.det_abs, Rational::ONE);
    }

    #[test]
    fn canonical_halfspace_is_primitive() {
        let h = Halfspace::new(
            vec![
                parse_rational("1/2").unwrap(),
                parse_rational("-3/4").unwrap(),
            ],
            parse_rational("5/8").unwrap(),
        )
        .unwrap()
        .canonical();
        assert_eq!(h, hs(&[4, -6], 5));
        assert_eq!(hs(&[2, 4], 6).canonical(), hs(&[1, 2], 3));
    }

    #[test]
    fn intersection_ignores_input_order() {
        let mut h = unit_square_halfspaces();
        h.push(hs(&[1, 1], 5));
        let a = intersect_halfspaces(&h).unwrap();
        h.reverse();
        let b = intersect_halfspaces(&h).unwrap();
        assert_eq!(a.vertices(), b.vertices());
        assert_eq!(a.facets().len(), 4);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn generated_polytopes_satisfy_invariants(d in 2usize..4, extra in 1usize..6, seed in any::<u64>()) {
                let p = random_simple_polytope(d, d + extra, seed).unwrap();
                prop_assert!(check_simple(&p));
                for (i, v) in p.vertices().iter().enumerate() {
                    let tight = p.facets().iter().filter(|f| f.is_tight(v)).count();
                    prop_assert_eq!(tight, d, "vertex {}", i);
                    prop_assert!(p.facets().iter().all(|f| f.contains(v)));
                }
                if d == 3 {
                    let v = p.n_vertices() as i64;
                    let e = p.n_edges() as i64;
                    let f = p.facets().len() as i64;
                    prop_assert_eq!(v - e + f, 2);
                }
            }

            #[test]
            fn vertex_set_ignores_halfspace_order(seed in any::<u64>(), rot in 0usize..7) {
                let p = random_simple_polytope(3, 7, seed).unwrap();
                let mut hs = p.facets().to_vec();
                let k = rot % hs.len();
                hs.rotate_left(k);
                hs.reverse();
                let q = intersect_halfspaces(&hs).unwrap();
                prop_assert_eq!(p.vertices(), q.vertices());
            }
        }
    }
}
