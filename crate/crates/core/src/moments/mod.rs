//! Forward model: axial and complex moments of a polytope from its vertices.
//!
//! For a direction z with nonvanishing edge denominators,
//!
//! ```text
//! μ_j(z) = j!·(−1)^d/(j+d)! · Σ_v ⟨v,z⟩^{j+d} D_v(z),   D_v(z) = |det K_v| / Π_k ⟨w_k(v), z⟩
//! ```
//!
//! and the rescaled sequence `c_k = Σ_v ⟨v,z⟩^k D_v(z)` is a pure power sum
//! whose first d entries vanish. Complex directions use the unconjugated
//! product `⟨v,z⟩ = ⟨v,z_re⟩ + i·⟨v,z_im⟩`.

mod harmonic;
mod oracle;
mod source;

pub use harmonic::{harmonic_check, harmonic_parts};
pub use oracle::{integrate_monomial_oracle, integrate_with_table, Oracle};
pub use source::{MomentRecord, MomentSource, PolytopeOracle, RecordedMoments};

use crate::arith::{factorial, pow, Complex, Rational, Scalar, ScalarMode};
use crate::error::{Error, Result};
use crate::geometry::{dot, tangent_cone, Polytope};
use crate::linalg;

/// Real direction `z_re`, or complex `z_re + i·z_im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    re: Vec<Rational>,
    im: Option<Vec<Rational>>,
}

impl Direction {
    pub fn real(re: Vec<Rational>) -> Result<Self> {
        if re.iter().all(Rational::is_zero) {
            return Err(Error::InvalidArgument("direction must be nonzero".into()));
        }
        Ok(Direction { re, im: None })
    }

    pub fn complex(re: Vec<Rational>, im: Vec<Rational>) -> Result<Self> {
        let mut dir = Direction::real(re)?;
        if im.len() != dir.re.len() {
            return Err(Error::SizeMismatch(dir.re.len(), im.len()));
        }
        if linalg::rank(vec![dir.re.clone(), im.clone()]) < 2 {
            return Err(Error::InvalidArgument(
                "imaginary part must be nonzero and not parallel to the real part".into(),
            ));
        }
        dir.im = Some(im);
        Ok(dir)
    }

    pub fn from_ints(re: &[i64], im: Option<&[i64]>) -> Result<Self> {
        let conv = |v: &[i64]| v.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>();
        match im {
            None => Direction::real(conv(re)),
            Some(im) => Direction::complex(conv(re), conv(im)),
        }
    }

    pub fn dim(&self) -> usize {
        self.re.len()
    }

    pub fn re(&self) -> &[Rational] {
        &self.re
    }

    pub fn im(&self) -> Option<&[Rational]> {
        self.im.as_deref()
    }

    pub fn is_complex(&self) -> bool {
        self.im.is_some()
    }

    /// `⟨x, z⟩` exactly.
    pub fn project(&self, x: &[Rational]) -> Complex<Rational> {
        let re = dot(x, &self.re);
        match &self.im {
            Some(im) => Complex::new(re, dot(x, im)),
            None => Complex::real(re),
        }
    }

    fn norm_f64(&self) -> f64 {
        let sq = |v: &[Rational]| v.iter().map(|x| Scalar::to_f64(x).powi(2)).sum::<f64>();
        (sq(&self.re) + self.im.as_deref().map_or(0.0, sq)).sqrt()
    }
}

/// Rejects `⟨w,z⟩ = 0` exactly, and in float mode also
/// `|⟨w,z⟩| < 2^(−bits/2)·‖w‖·‖z‖`.
fn check_denominator(
    w: &[Rational],
    wz: &Complex<Rational>,
    dir: &Direction,
    bits: Option<usize>,
    vertex: usize,
) -> Result<()> {
    if wz.re.is_zero() && wz.im.is_zero() {
        return Err(Error::DegenerateDirection { vertex });
    }
    if let Some(bits) = bits {
        let wn = w
            .iter()
            .map(|x| Scalar::to_f64(x).powi(2))
            .sum::<f64>()
            .sqrt();
        let tol = 2f64.powf(-(bits as f64) / 2.0) * wn * dir.norm_f64();
        if wz.abs_f64() < tol {
            return Err(Error::DegenerateDirection { vertex });
        }
    }
    Ok(())
}

/// Per-vertex pairs `(⟨v,z⟩, D_v(z))`, computed exactly.
///
/// `bits` enables the float-mode degeneracy margin.
pub fn vertex_terms(
    p: &Polytope,
    dir: &Direction,
    bits: Option<usize>,
) -> Result<Vec<(Complex<Rational>, Complex<Rational>)>> {
    if dir.dim() != p.dim() {
        return Err(Error::SizeMismatch(p.dim(), dir.dim()));
    }
    (0..p.n_vertices())
        .map(|i| {
            let cone = tangent_cone(p, i)?;
            let mut den = Complex::real(Rational::ONE);
            for w in &cone.edges {
                let wz = dir.project(w);
                check_denominator(w, &wz, dir, bits, i)?;
                den = den * &wz;
            }
            let dv = Complex::real(cone.det_abs) / &den;
            Ok((dir.project(&p.vertices()[i]), dv))
        })
        .collect()
}

pub fn dv(p: &Polytope, vertex_index: usize, dir: &Direction) -> Result<Complex<Rational>> {
    if dir.dim() != p.dim() {
        return Err(Error::SizeMismatch(p.dim(), dir.dim()));
    }
    let cone = tangent_cone(p, vertex_index)?;
    let mut den = Complex::real(Rational::ONE);
    for w in &cone.edges {
        let wz = dir.project(w);
        check_denominator(w, &wz, dir, None, vertex_index)?;
        den = den * &wz;
    }
    Ok(Complex::real(cone.det_abs) / &den)
}

/// `c_k = Σ_v ⟨v,z⟩^k D_v(z)` for `k < count`.
pub fn power_sums(
    terms: &[(Complex<Rational>, Complex<Rational>)],
    count: usize,
) -> Vec<Complex<Rational>> {
    let mut out = vec![Complex::real(Rational::ZERO); count];
    for (x, d) in terms {
        let mut acc = d.clone();
        for slot in out.iter_mut() {
            *slot = slot.clone() + &acc;
            acc = acc * x;
        }
    }
    out
}

/// `j!·(−1)^d/(j+d)!`.
fn brion_factor(j: usize, d: usize) -> Rational {
    let num = Rational::from(factorial(j as u32));
    let den = Rational::from(factorial((j + d) as u32));
    let f = num / den;
    if d % 2 == 1 {
        -f
    } else {
        f
    }
}

pub fn axial_moment(p: &Polytope, j: usize, dir: &Direction) -> Result<Complex<Rational>> {
    let terms = vertex_terms(p, dir, None)?;
    let d = p.dim();
    let sum = terms
        .iter()
        .fold(Complex::real(Rational::ZERO), |acc, (x, dv)| {
            acc + pow(x, (j + d) as u32) * dv
        });
    Ok(sum.scale(&brion_factor(j, d)))
}

/// Exact `μ_0 … μ_{count−1}`.
pub fn exact_moments(
    p: &Polytope,
    dir: &Direction,
    count: usize,
    bits: Option<usize>,
) -> Result<Vec<Complex<Rational>>> {
    let d = p.dim();
    let c = power_sums(&vertex_terms(p, dir, bits)?, count + d);
    Ok((0..count)
        .map(|j| c[j + d].scale(&brion_factor(j, d)))
        .collect())
}

/// `Σ_v ⟨v,z⟩^j D_v(z)` for `j = 0 … d−1`; all zero for a valid polytope.
pub fn verify_zero_identities(p: &Polytope, dir: &Direction) -> Result<Vec<Complex<Rational>>> {
    Ok(power_sums(&vertex_terms(p, dir, None)?, p.dim()))
}

/// Moments along one direction in a given arithmetic model.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence<S: Scalar> {
    pub direction: Direction,
    pub moments: Vec<Complex<S>>,
    pub mode: ScalarMode,
}

impl<S: Scalar> MomentSequence<S> {
    /// Round exact moments into the model of `ctx`.
    pub fn from_exact(direction: Direction, exact: &[Complex<Rational>], ctx: S::Context) -> Self {
        let moments = exact
            .iter()
            .map(|m| m.map(|x| S::from_rational(x, ctx)))
            .collect();
        MomentSequence {
            direction,
            moments,
            mode: S::mode(ctx),
        }
    }
}

/// `c_0 … c_n` with `c_k = 0` for `k < d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledCoefficients<S: Scalar> {
    pub c: Vec<Complex<S>>,
    pub d: usize,
}

impl<S: Scalar> ScaledCoefficients<S> {
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// Keep only `c_0 … c_{n−1}`.
    pub fn truncated(&self, n: usize) -> Self {
        ScaledCoefficients {
            c: self.c[..n.min(self.c.len())].to_vec(),
            d: self.d,
        }
    }
}

/// `c_k = k!·(−1)^d/(k−d)! · μ_{k−d}` for `k >= d`, zero below.
pub fn scaled_coefficients<S: Scalar>(
    seq: &MomentSequence<S>,
    ctx: S::Context,
) -> ScaledCoefficients<S> {
    let d = seq.direction.dim();
    let zero = Complex::zero(ctx);
    let mut c = vec![zero; d];
    for (j, mu) in seq.moments.iter().enumerate() {
        let k = j + d;
        let mut f = Rational::from(factorial(k as u32)) / Rational::from(factorial(j as u32));
        if d % 2 == 1 {
            f = -f;
        }
        c.push(mu.scale(&S::from_rational(&f, ctx)));
    }
    ScaledCoefficients { c, d }
}

/// Exact moments of `p`, rounded once into the model of `ctx`.
///
/// This is the only place where measurement precision enters.
pub fn moment_provider<S: Scalar>(
    p: &Polytope,
    dir: &Direction,
    count: usize,
    ctx: S::Context,
) -> Result<MomentSequence<S>> {
    if count == 0 {
        return Err(Error::InvalidArgument(
            "moment count must be at least 1".into(),
        ));
    }
    let exact = exact_moments(p, dir, count, S::bits(ctx))?;
    Ok(MomentSequence::from_exact(dir.clone(), &exact, ctx))
}
