//! Python module `polyrecon`.

use ::polyrecon::arith::{parse_rational, Rational, Scalar, ScalarMode};
use ::polyrecon::geometry::{
    self, fixtures, random_simple_polytope, random_simple_polytope_with_vertices,
};
use ::polyrecon::harness;
use ::polyrecon::matching::{self, ReconstructOptions};
use ::polyrecon::moments::{exact_moments, Direction, PolytopeOracle};
use ::polyrecon::recovery::{Method, VertexCount};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: ::polyrecon::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_point(coords: &[String]) -> PyResult<Vec<Rational>> {
    coords
        .iter()
        .map(|c| parse_rational(c).map_err(err))
        .collect()
}

fn to_strings(points: &[Vec<Rational>]) -> Vec<Vec<String>> {
    points
        .iter()
        .map(|p| p.iter().map(ToString::to_string).collect())
        .collect()
}

fn to_floats(points: &[Vec<Rational>]) -> Vec<Vec<f64>> {
    points
        .iter()
        .map(|p| p.iter().map(Scalar::to_f64).collect())
        .collect()
}

fn scalar_mode(bits: Option<usize>) -> PyResult<ScalarMode> {
    bits.map_or(Ok(ScalarMode::exact()), |b| {
        ScalarMode::float(b).map_err(err)
    })
}

/// A simple convex polytope with exact rational vertices.
#[pyclass(name = "Polytope", module = "polyrecon", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPolytope {
    inner: geometry::Polytope,
}

#[pymethods]
impl PyPolytope {
    /// Build from vertex coordinates given as strings such as `"3/4"`.
    #[new]
    fn new(vertices: Vec<Vec<String>>) -> PyResult<Self> {
        let dim = vertices.first().map_or(0, Vec::len);
        let points = vertices
            .iter()
            .map(|v| parse_point(v))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyPolytope {
            inner: geometry::Polytope::from_vertices(dim, points).map_err(err)?,
        })
    }

    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        Ok(PyPolytope {
            inner: fixtures::by_name(name).map_err(err)?,
        })
    }

    /// Random simple polytope with `facets` facets, or with exactly
    /// `vertices` vertices when that is given instead.
    #[staticmethod]
    #[pyo3(signature = (dim, seed, facets=None, vertices=None))]
    fn generate(
        dim: usize,
        seed: u64,
        facets: Option<usize>,
        vertices: Option<usize>,
    ) -> PyResult<Self> {
        let inner = match (facets, vertices) {
            (Some(f), None) => random_simple_polytope(dim, f, seed),
            (None, Some(n)) => random_simple_polytope_with_vertices(dim, n, seed),
            _ => {
                return Err(PyValueError::new_err(
                    "give exactly one of facets or vertices",
                ))
            }
        };
        Ok(PyPolytope {
            inner: inner.map_err(err)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn __len__(&self) -> usize {
        self.inner.n_vertices()
    }

    fn vertices(&self) -> Vec<Vec<f64>> {
        to_floats(self.inner.vertices())
    }

    fn exact_vertices(&self) -> Vec<Vec<String>> {
        to_strings(self.inner.vertices())
    }

    fn is_simple(&self) -> bool {
        geometry::check_simple(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Polytope(dim={}, vertices={})",
            self.inner.dim(),
            self.inner.n_vertices()
        )
    }
}

/// Exact moments `μ_0 … μ_{count−1}` along `z`, as `(re, im)` string pairs.
#[pyfunction]
#[pyo3(signature = (polytope, z_re, count, z_im=None))]
fn moments(
    polytope: &PyPolytope,
    z_re: Vec<String>,
    count: usize,
    z_im: Option<Vec<String>>,
) -> PyResult<Vec<(String, String)>> {
    let re = parse_point(&z_re)?;
    let dir = match z_im {
        Some(im) => Direction::complex(re, parse_point(&im)?),
        None => Direction::real(re),
    }
    .map_err(err)?;
    let m = exact_moments(&polytope.inner, &dir, count, None).map_err(err)?;
    Ok(m.iter()
        .map(|c| (c.re.to_string(), c.im.to_string()))
        .collect())
}

/// Recover the vertices of `polytope` from its moments. `bits=None` runs
/// exactly; otherwise floats of that precision are used. Give `n` when the
/// vertex count is known and `nmax` for an upper bound.
#[pyfunction]
#[pyo3(signature = (polytope, n=None, nmax=None, bits=None, seed=0, method="pade"))]
fn reconstruct(
    polytope: &PyPolytope,
    n: Option<usize>,
    nmax: Option<usize>,
    bits: Option<usize>,
    seed: u64,
    method: &str,
) -> PyResult<Vec<Vec<String>>> {
    let count = match (n, nmax) {
        (Some(n), None) => VertexCount::Known(n),
        (None, Some(n)) => VertexCount::AtMost(n),
        _ => return Err(PyValueError::new_err("give exactly one of n or nmax")),
    };
    let method: Method = method.parse().map_err(err)?;
    let opts = ReconstructOptions::new(count, seed).method(method);
    let report = matching::reconstruct(
        &PolytopeOracle::new(polytope.inner.clone()),
        scalar_mode(bits)?,
        opts,
    )
    .map_err(err)?;
    Ok(to_strings(&report.vertices))
}

/// Bottleneck distance between two vertex sets of equal size.
#[pyfunction]
fn vertex_set_distance(a: Vec<Vec<String>>, b: Vec<Vec<String>>) -> PyResult<f64> {
    let parse = |s: &[Vec<String>]| {
        s.iter()
            .map(|p| parse_point(p))
            .collect::<PyResult<Vec<_>>>()
    };
    Ok(harness::vertex_set_distance(&parse(&a)?, &parse(&b)?)
        .map_err(err)?
        .value)
}

#[pymodule]
#[pyo3(name = "polyrecon")]
fn polyrecon_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolytope>()?;
    m.add_function(wrap_pyfunction!(moments, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_set_distance, m)?)?;
    Ok(())
}
