//! Built-in polytopes used by tests, the CLI and the experiment harness.

use super::{
    intersect_halfspaces, random_simple_polytope_with_vertices, Halfspace, Point, Polytope,
};
use crate::arith::{parse_rational, Rational};
use crate::error::{Error, Result};

/// Seed that makes [`twenty_vertex`] reproducible.
pub const TWENTY_VERTEX_SEED: u64 = 4;

const EIGHT_VERTEX_COORDS: [[&str; 3]; 8] = [
    ["17/4", "-14/3", "-7/12"],
    ["249/121", "-211/121", "1963/121"],
    ["-719/74", "-373/74", "426/37"],
    ["-66/43", "-267/43", "-108/43"],
    ["-82/91", "-219/91", "-148/13"],
    ["-1588/133", "414/133", "-46/133"],
    ["545/37", "765/37", "-85/37"],
    ["69/7", "59/21", "-41/3"],
];

/// Edge graph of [`eight_vertex`], zero-based.
pub const EIGHT_VERTEX_ADJACENCY: [[usize; 3]; 8] = [
    [1, 3, 7],
    [0, 2, 6],
    [1, 3, 5],
    [0, 2, 4],
    [3, 5, 7],
    [2, 4, 6],
    [1, 5, 7],
    [0, 4, 6],
];

pub const NAMES: [&str; 6] = ["square", "cube", "simplex3", "pyramid", "poly8", "poly20"];

fn box_halfspaces(d: usize) -> Vec<Halfspace> {
    let mut hs = Vec::with_capacity(2 * d);
    for i in 0..d {
        let mut lo = vec![0i64; d];
        lo[i] = -1;
        let mut hi = vec![0i64; d];
        hi[i] = 1;
        hs.push(Halfspace::from_ints(&lo, 0).expect("nonzero"));
        hs.push(Halfspace::from_ints(&hi, 1).expect("nonzero"));
    }
    hs
}

pub fn unit_square() -> Polytope {
    intersect_halfspaces(&box_halfspaces(2)).expect("unit square")
}

pub fn unit_cube() -> Polytope {
    intersect_halfspaces(&box_halfspaces(3)).expect("unit cube")
}

/// `{x >= 0, Σ x_i <= 1}`.
pub fn standard_simplex(d: usize) -> Polytope {
    let mut hs: Vec<Halfspace> = (0..d)
        .map(|i| {
            let mut n = vec![0i64; d];
            n[i] = -1;
            Halfspace::from_ints(&n, 0).expect("nonzero")
        })
        .collect();
    hs.push(Halfspace::from_ints(&vec![1; d], 1).expect("nonzero"));
    intersect_halfspaces(&hs).expect("standard simplex")
}

/// Square pyramid; the apex has four neighbors, so it is not simple.
pub fn square_pyramid() -> Polytope {
    let pts: Vec<Point> = [[0, 0, 0], [2, 0, 0], [2, 2, 0], [0, 2, 0], [1, 1, 1]]
        .iter()
        .map(|p| p.iter().map(|&x| Rational::from(x)).collect())
        .collect();
    Polytope::from_vertices(3, pts).expect("square pyramid")
}

/// Combinatorial cube with rational vertices, in the reference vertex order.
pub fn eight_vertex() -> Polytope {
    let pts: Vec<Point> = EIGHT_VERTEX_COORDS
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| parse_rational(s).expect("literal"))
                .collect()
        })
        .collect();
    Polytope::from_vertices(3, pts).expect("eight-vertex polyhedron")
}

/// Seeded random simple 3-polytope with 20 vertices.
pub fn twenty_vertex() -> Polytope {
    random_simple_polytope_with_vertices(3, 20, TWENTY_VERTEX_SEED)
        .expect("twenty-vertex polyhedron")
}

pub fn by_name(name: &str) -> Result<Polytope> {
    Ok(match name {
        "square" => unit_square(),
        "cube" => unit_cube(),
        "simplex3" => standard_simplex(3),
        "pyramid" => square_pyramid(),
        "poly8" => eight_vertex(),
        "poly20" => twenty_vertex(),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown fixture {name:?}; expected one of {}",
                NAMES.join(", ")
            )))
        }
    })
}
