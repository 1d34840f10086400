//! Projections `⟨v, z⟩` from scaled coefficients.
//!
//! Two routes share the root finder:
//!
//! * Prony: the minimal monic `p(t) = a_0 + … + a_{M−1} t^{M−1} + t^M` whose
//!   coefficient vector lies in the kernel of the Hankel matrix
//!   `H_ij = c_{i+j}`; its roots are the projections and `M = N`.
//! * Padé: the `[N−1/N]` approximant `p/q` of `Σ c_k t^k`; the reversed
//!   denominator `t^N q(1/t)` has the projections as roots, including any
//!   projection equal to zero (which shows up as a degree drop of `q`).
//!
//! In float mode the coefficients are first rescaled by an exact power of
//! two so the projections have modulus near one.

pub mod roots;
mod svd;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

pub use roots::{find_roots_exact, find_roots_float, root_order, RootSet};
pub use svd::singular_values;

use crate::arith::{Complex, Field, Float, Precision, Rational, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{self, FullPivotLu, Matrix};
use crate::moments::ScaledCoefficients;

/// Square Hankel matrix `entries[i][j] = c_{i+j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelMatrix<F> {
    pub m: usize,
    pub entries: Matrix<F>,
}

pub fn build_hankel<F: Field>(c: &[F], m: usize) -> Result<HankelMatrix<F>> {
    let needed = (2 * m).saturating_sub(1);
    if m == 0 || c.len() < needed {
        return Err(Error::InsufficientCoefficients {
            needed,
            got: c.len(),
        });
    }
    let entries = (0..m)
        .map(|i| (0..m).map(|j| c[i + j].clone()).collect())
        .collect();
    Ok(HankelMatrix { m, entries })
}

/// Monic `a_0 + … + a_{M−1} t^{M−1} + t^M`.
#[derive(Clone, Debug, PartialEq)]
pub struct PronyPolynomial<F> {
    pub coefficients: Vec<F>,
}

impl<F: Field> PronyPolynomial<F> {
    pub fn degree(&self) -> usize {
        self.coefficients.len()
    }

    /// Ascending coefficients including the leading one.
    pub fn full(&self, one: F) -> Vec<F> {
        let mut v = self.coefficients.clone();
        v.push(one);
        v
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct KernelDiagnostics {
    pub rank: usize,
    /// Float mode only, descending.
    pub singular_values: Vec<f64>,
    pub threshold: f64,
    /// `‖H·(a, 1, 0, …)‖₁`, zero in exact mode.
    pub residual: f64,
}

/// Arithmetic-specific pieces of the recovery pipeline.
pub trait RecoveryScalar: Scalar {
    /// Smallest `M` with `(a_0, …, a_{M−1}, 1, 0, …) ∈ Ker H`.
    fn kernel_vector(
        h: &HankelMatrix<Complex<Self>>,
        ctx: Self::Context,
    ) -> Result<(PronyPolynomial<Complex<Self>>, KernelDiagnostics)>;

    fn roots(p: &[Complex<Self>]) -> Result<RootSet<Self>>;

    /// Solve the Padé Toeplitz system, with a condition estimate where it means something.
    fn solve_pade(
        mat: &Matrix<Complex<Self>>,
        y: &[Complex<Self>],
        ctx: Self::Context,
    ) -> Result<(Vec<Complex<Self>>, Option<f64>)>;

    /// Whether a recovered root counts as real.
    fn is_real_root(r: &Complex<Self>, ctx: Self::Context) -> bool;
}

impl RecoveryScalar for Rational {
    fn kernel_vector(
        h: &HankelMatrix<Complex<Rational>>,
        _: (),
    ) -> Result<(PronyPolynomial<Complex<Rational>>, KernelDiagnostics)> {
        if h.entries.iter().flatten().all(Field::is_zero) {
            return Err(Error::CannotDetermineN {
                reason: "all coefficients vanish".into(),
            });
        }
        let dep = linalg::first_dependent_column_exact(&h.entries).ok_or_else(|| {
            Error::CannotDetermineN {
                reason: format!(
                    "Hankel matrix of size {} has full rank; N_max is too small",
                    h.m
                ),
            }
        })?;
        let diag = KernelDiagnostics {
            rank: dep.column,
            ..Default::default()
        };
        Ok((
            PronyPolynomial {
                coefficients: dep.coefficients,
            },
            diag,
        ))
    }

    fn roots(p: &[Complex<Rational>]) -> Result<RootSet<Rational>> {
        find_roots_exact(p)
    }

    fn solve_pade(
        mat: &Matrix<Complex<Rational>>,
        y: &[Complex<Rational>],
        _: (),
    ) -> Result<(Vec<Complex<Rational>>, Option<f64>)> {
        let b = linalg::solve_exact(mat, y).ok_or(Error::PadeIllConditioned {
            condition: f64::INFINITY,
        })?;
        Ok((b, None))
    }

    fn is_real_root(r: &Complex<Rational>, _: ()) -> bool {
        r.im.is_zero()
    }
}

impl RecoveryScalar for Float {
    fn kernel_vector(
        h: &HankelMatrix<Complex<Float>>,
        ctx: Precision,
    ) -> Result<(PronyPolynomial<Complex<Float>>, KernelDiagnostics)> {
        let sv = singular_values(&h.entries, ctx);
        let sv_f64: Vec<f64> = sv.iter().map(Scalar::to_f64).collect();
        let threshold = 2f64.powf(-(ctx.0 as f64) / 2.0) * sv_f64.first().copied().unwrap_or(0.0);
        let rank = sv_f64.iter().filter(|&&s| s > threshold && s > 0.0).count();
        let mut diag = KernelDiagnostics {
            rank,
            singular_values: sv_f64,
            threshold,
            residual: 0.0,
        };
        if rank == 0 {
            return Err(Error::CannotDetermineN {
                reason: "all coefficients vanish numerically".into(),
            });
        }
        if rank == h.m {
            return Err(Error::CannotDetermineN {
                reason: format!(
                    "Hankel matrix of size {} has full numerical rank; N_max is too small",
                    h.m
                ),
            });
        }
        let poly = solve_leading_system(h, rank)?;
        diag.residual = kernel_residual(h, &poly);
        Ok((poly, diag))
    }

    fn roots(p: &[Complex<Float>]) -> Result<RootSet<Float>> {
        find_roots_float(p)
    }

    /// The normwise estimate badly overstates the error of the roots on
    /// graded Toeplitz systems, so only singularity is fatal.
    fn solve_pade(
        mat: &Matrix<Complex<Float>>,
        y: &[Complex<Float>],
        _: Precision,
    ) -> Result<(Vec<Complex<Float>>, Option<f64>)> {
        let lu = FullPivotLu::new(mat.clone()).ok_or(Error::PadeIllConditioned {
            condition: f64::INFINITY,
        })?;
        let inverse_norm =
            inverse_norm1_f64(lu.factors()).unwrap_or_else(|| f64_norm1(&lu.inverse()));
        let condition = f64_norm1(mat) * inverse_norm;
        if !condition.is_finite() {
            return Err(Error::PadeIllConditioned { condition });
        }
        Ok((lu.solve(y), Some(condition)))
    }

    fn is_real_root(r: &Complex<Float>, ctx: Precision) -> bool {
        let tol = 2f64.powf(-(ctx.0 as f64) / 2.0) * Scalar::to_f64(&r.re).abs().max(1.0);
        Scalar::to_f64(&r.im).abs() <= tol
    }
}

/// Solve `H[..M, ..M]·a = −H[..M, M]` for the Prony coefficients of degree `M`.
fn solve_leading_system<S: Scalar>(
    h: &HankelMatrix<Complex<S>>,
    m: usize,
) -> Result<PronyPolynomial<Complex<S>>> {
    if m >= h.m {
        return Err(Error::CannotDetermineN {
            reason: format!("degree {m} needs a Hankel matrix larger than {}", h.m),
        });
    }
    let a: Matrix<Complex<S>> = (0..m).map(|i| h.entries[i][..m].to_vec()).collect();
    let b: Vec<Complex<S>> = (0..m).map(|i| -h.entries[i][m].clone()).collect();
    let lu = FullPivotLu::new(a).ok_or_else(|| Error::CannotDetermineN {
        reason: format!("leading {m}×{m} Hankel block is singular"),
    })?;
    Ok(PronyPolynomial {
        coefficients: lu.solve(&b),
    })
}

fn kernel_residual<S: Scalar>(
    h: &HankelMatrix<Complex<S>>,
    p: &PronyPolynomial<Complex<S>>,
) -> f64 {
    let one = h.entries[0][0].one_like();
    let v = p.full(one);
    h.entries
        .iter()
        .map(|row| {
            row.iter()
                .zip(&v)
                .fold(row[0].zero_like(), |acc, (x, y)| acc + &(x.clone() * y))
                .abs_f64()
        })
        .sum()
}

pub fn minimal_kernel_vector<S: RecoveryScalar>(
    h: &HankelMatrix<Complex<S>>,
    ctx: S::Context,
) -> Result<(usize, PronyPolynomial<Complex<S>>, KernelDiagnostics)> {
    let (p, diag) = S::kernel_vector(h, ctx)?;
    Ok((p.degree(), p, diag))
}

/// `p(t)/q(t)` with `b_0 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct PadeApproximant<F> {
    pub numerator: Vec<F>,
    pub denominator: Vec<F>,
    /// `‖C‖₁·‖C⁻¹‖₁`, float mode only.
    pub condition: Option<f64>,
}

impl<F: Field> PadeApproximant<F> {
    /// Degree of `q` after dropping exactly-zero top coefficients.
    pub fn denominator_degree(&self) -> usize {
        self.denominator
            .iter()
            .rposition(|b| !b.is_zero())
            .unwrap_or(0)
    }
}

/// Solve `C·(b_1, …, b_m) = −(c_{ℓ+1}, …, c_{ℓ+m})` with `C_ij = c_{ℓ+i−j}`.
pub fn pade_denominator<S: RecoveryScalar>(
    c: &[Complex<S>],
    l: usize,
    m: usize,
    ctx: S::Context,
) -> Result<PadeApproximant<Complex<S>>> {
    let needed = l + m + 1;
    if c.len() < needed || m == 0 {
        return Err(Error::InsufficientCoefficients {
            needed,
            got: c.len(),
        });
    }
    let zero = Complex::zero(ctx);
    let entry = |k: isize| {
        if k < 0 {
            zero.clone()
        } else {
            c[k as usize].clone()
        }
    };
    let mat: Matrix<Complex<S>> = (1..=m)
        .map(|i| {
            (1..=m)
                .map(|j| entry(l as isize + i as isize - j as isize))
                .collect()
        })
        .collect();
    let y: Vec<Complex<S>> = (1..=m).map(|i| -c[l + i].clone()).collect();
    let (b, condition) = S::solve_pade(&mat, &y, ctx)?;
    let mut denominator = vec![Complex::one(ctx)];
    denominator.extend(b);
    let numerator = (0..=l)
        .map(|k| {
            (0..=k.min(m)).fold(zero.clone(), |acc, j| {
                acc + &(denominator[j].clone() * &c[k - j])
            })
        })
        .collect();
    Ok(PadeApproximant {
        numerator,
        denominator,
        condition,
    })
}

fn f64_norm1<S: Scalar>(a: &Matrix<Complex<S>>) -> f64 {
    let n = a.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| a.iter().map(|row| row[j].abs_f64()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `‖(LU)⁻¹‖₁` from packed factors rounded to f64; `None` when they do not
/// fit. Permutations leave the norm unchanged.
fn inverse_norm1_f64(lu: &Matrix<Complex<Float>>) -> Option<f64> {
    let a: Vec<Vec<C64>> = lu
        .iter()
        .map(|row| {
            row.iter()
                .map(|z| C64::new(Scalar::to_f64(&z.re), Scalar::to_f64(&z.im)))
                .collect()
        })
        .collect();
    if a.iter()
        .flatten()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return None;
    }
    let n = a.len();
    let mut norm = 0.0f64;
    for k in 0..n {
        let mut x = vec![C64::new(0.0, 0.0); n];
        x[k] = C64::new(1.0, 0.0);
        for i in 0..n {
            for j in 0..i {
                x[i] = x[i] - a[i][j] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                x[i] = x[i] - a[i][j] * x[j];
            }
            x[i] /= a[i][i];
        }
        norm = norm.max(x.iter().map(|z| z.norm()).sum());
    }
    norm.is_finite().then_some(norm)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Prony,
    Pade,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prony" => Ok(Method::Prony),
            "pade" => Ok(Method::Pade),
            _ => Err(Error::Parse(format!(
                "unknown method {s:?}; expected prony or pade"
            ))),
        }
    }
}

/// What the caller knows about the vertex count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexCount {
    Known(usize),
    AtMost(usize),
}

impl VertexCount {
    pub fn bound(self) -> usize {
        match self {
            VertexCount::Known(n) | VertexCount::AtMost(n) => n,
        }
    }

    /// Scaled coefficients `c_0 … c_{n−1}` the chosen method consumes.
    pub fn coefficients_needed(self, method: Method) -> usize {
        match (self, method) {
            (VertexCount::Known(n), Method::Pade) => 2 * n,
            (VertexCount::Known(n), Method::Prony) | (VertexCount::AtMost(n), _) => 2 * n + 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecoveryDiagnostics {
    pub method: Method,
    pub estimated_n: usize,
    pub hankel: Option<KernelDiagnostics>,
    pub pade_condition: Option<f64>,
    /// `N − deg q`; the number of zero projections on the Padé route.
    pub degree_drop: usize,
    pub max_root_residual: f64,
    pub root_precision: usize,
    /// Projections were recovered for `c_k·2^(−k·e)` and scaled back by `2^e`.
    pub scale_exponent: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionSet<S: Scalar> {
    /// Sorted by real part, then imaginary part.
    pub values: Vec<Complex<S>>,
    pub estimated_n: usize,
    pub diagnostics: RecoveryDiagnostics,
}

impl<S: RecoveryScalar> ProjectionSet<S> {
    /// Real parts of the roots that are real to working precision.
    pub fn real_values(&self, ctx: S::Context) -> Vec<S> {
        self.values
            .iter()
            .filter(|r| S::is_real_root(r, ctx))
            .map(|r| r.re.clone())
            .collect()
    }
}

/// Exponent `e` such that the projections divided by `2^e` have modulus
/// of order one, read off the growth of `|c_k|`.
fn scale_exponent<S: Scalar>(c: &[Complex<S>]) -> i64 {
    let mut best: Option<f64> = None;
    for (k, ck) in c.iter().enumerate().skip(1) {
        let m = ck.abs_f64();
        if m == 0.0 || !m.is_finite() {
            continue;
        }
        let e = m.log2() / k as f64;
        best = Some(best.map_or(e, |b: f64| b.max(e)));
    }
    best.map_or(0, |e| e.round() as i64)
}

fn scale_by_pow2<S: Scalar>(x: &Complex<S>, e: i64, ctx: S::Context) -> Complex<S> {
    if e == 0 {
        return x.clone();
    }
    let p = Rational::from(dashu::integer::IBig::ONE << e.unsigned_abs() as usize);
    let f = if e > 0 { p } else { Rational::ONE / p };
    x.scale(&S::from_rational(&f, ctx))
}

/// Recover the multiset `{⟨v, z⟩}` from scaled coefficients.
pub fn projections_from_coefficients<S: RecoveryScalar>(
    coeffs: &ScaledCoefficients<S>,
    method: Method,
    count: VertexCount,
    ctx: S::Context,
) -> Result<ProjectionSet<S>> {
    let needed = count.coefficients_needed(method);
    if coeffs.len() < needed {
        return Err(Error::InsufficientCoefficients {
            needed,
            got: coeffs.len(),
        });
    }
    let e = if S::EXACT {
        0
    } else {
        scale_exponent(&coeffs.c[..needed])
    };
    let c: Vec<Complex<S>> = coeffs.c[..needed]
        .iter()
        .enumerate()
        .map(|(k, ck)| scale_by_pow2(ck, -e * k as i64, ctx))
        .collect();

    let one = Complex::one(ctx);
    let mut hankel_diag = None;
    let mut estimate = None;
    let n = match count {
        VertexCount::Known(n) => n,
        VertexCount::AtMost(n_max) => {
            let h = build_hankel(&c, n_max + 1)?;
            let (m, p, diag) = minimal_kernel_vector(&h, ctx)?;
            hankel_diag = Some(diag);
            estimate = Some(p);
            m
        }
    };
    if n == 0 {
        return Err(Error::CannotDetermineN {
            reason: "zero vertices".into(),
        });
    }

    let (poly, pade_condition, degree_drop) = match method {
        Method::Prony => {
            let h = build_hankel(&c, n + 1)?;
            let p = match (estimate, S::EXACT) {
                (Some(p), _) => p,
                (None, true) => {
                    let (m, p, diag) = minimal_kernel_vector(&h, ctx)?;
                    if m != n {
                        return Err(Error::InconsistentN(vec![n, m]));
                    }
                    hankel_diag.get_or_insert(diag);
                    p
                }
                (None, false) => {
                    let p = solve_leading_system(&h, n)?;
                    hankel_diag = Some(KernelDiagnostics {
                        rank: n,
                        residual: kernel_residual(&h, &p),
                        ..Default::default()
                    });
                    p
                }
            };
            (p.full(one), None, 0)
        }
        Method::Pade => {
            let approx = pade_denominator(&c, n - 1, n, ctx)?;
            let drop = n - approx.denominator_degree();
            let mut rev = approx.denominator.clone();
            rev.reverse();
            (rev, approx.condition, drop)
        }
    };

    let rs = S::roots(&poly)?;
    let mut values: Vec<Complex<S>> = rs.roots.iter().map(|r| scale_by_pow2(r, e, ctx)).collect();
    values.sort_by(root_order);
    Ok(ProjectionSet {
        estimated_n: values.len(),
        values,
        diagnostics: RecoveryDiagnostics {
            method,
            estimated_n: n,
            hankel: hankel_diag,
            pade_condition,
            degree_drop,
            max_root_residual: rs.max_residual,
            root_precision: rs.precision,
            scale_exponent: e,
        },
    })
}
