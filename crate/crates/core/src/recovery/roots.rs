//! Polynomial roots: Aberth–Ehrlich iteration in k-bit complex arithmetic,
//! and exact Gaussian-rational roots recovered from high-precision
//! approximations.

use std::cmp::Ordering;

use dashu::base::{BitTest, Gcd, UnsignedAbs};
use dashu::integer::{IBig, UBig};
use num_complex::Complex64 as C64;

use crate::arith::{
    float_log2_floor, rationalize_float, Complex, Field, Float, Precision, Rational, Scalar,
};
use crate::error::{Error, Result};
use crate::poly::{deflate, derivative, eval, trim_leading_zeros};

/// Result of a root computation with its worst scaled residual.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet<S: Scalar> {
    pub roots: Vec<Complex<S>>,
    /// `max_r |p(r)| / (‖p‖₁·max(1,|r|)^deg)`.
    pub max_residual: f64,
    /// Working precision used (exact mode: the precision of the final attempt).
    pub precision: usize,
}

/// Order by real part, then imaginary part.
pub fn root_order<S: Scalar>(a: &Complex<S>, b: &Complex<S>) -> Ordering {
    a.re.partial_cmp(&b.re)
        .unwrap_or(Ordering::Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
}

fn norm1(p: &[Complex<Float>]) -> f64 {
    p.iter().map(|c| c.abs_f64()).sum()
}

/// `|p(r)| / (‖p‖₁·max(1,|r|)^deg)` computed in f64 via log scaling.
fn scaled_residual(p: &[Complex<Float>], r: &Complex<Float>) -> f64 {
    let value = eval(p, r);
    if value.is_zero() {
        return 0.0;
    }
    let deg = (p.len() - 1) as f64;
    let log_val = log2_modulus(&value);
    let log_norm = norm1(p).log2();
    let log_r = if r.is_zero() {
        0.0
    } else {
        log2_modulus(r).max(0.0)
    };
    (log_val - log_norm - deg * log_r).exp2()
}

fn log2_modulus(z: &Complex<Float>) -> f64 {
    let m = z.norm_sqr();
    if m.is_zero() {
        return f64::NEG_INFINITY;
    }
    // Split off the binary exponent so huge or tiny moduli stay finite in f64.
    let e = float_log2_floor(&m);
    let mantissa = Scalar::to_f64(&(m * Float::from_rational(&pow2(-(e as i64)), Precision(64))));
    (e as f64 + mantissa.log2()) / 2.0
}

fn pow2(e: i64) -> Rational {
    let p = Rational::from(IBig::ONE << e.unsigned_abs() as usize);
    if e >= 0 {
        p
    } else {
        Rational::ONE / p
    }
}

/// All roots of `p` (ascending coefficients, nonzero leading term) by
/// Aberth–Ehrlich iteration at the coefficients' precision.
pub fn aberth(p: &[Complex<Float>], prec: usize) -> Result<RootSet<Float>> {
    let p = trim_leading_zeros(p.to_vec());
    if p.is_empty() {
        return Err(Error::InvalidArgument(
            "zero polynomial has no finite root set".into(),
        ));
    }
    let ctx = Precision(prec);
    let lead = p.last().expect("nonempty").clone();
    let monic: Vec<Complex<Float>> = p.iter().map(|c| c.clone() / &lead).collect();

    // Exactly vanishing low coefficients are roots at zero.
    let zeros = monic.iter().take_while(|c| c.is_zero()).count();
    let reduced = &monic[zeros..];
    let n = reduced.len() - 1;
    let mut roots: Vec<Complex<Float>> = vec![Complex::zero(ctx); zeros];
    if n > 0 {
        roots.extend(aberth_nonzero(reduced, ctx)?);
    }
    roots.sort_by(root_order);
    let max_residual = roots
        .iter()
        .map(|r| scaled_residual(&monic, r))
        .fold(0.0, f64::max);
    let tol = 2f64.powf(-(prec as f64) / 2.0);
    if !(max_residual <= tol) {
        return Err(Error::RootFindingFailed { max_residual });
    }
    Ok(RootSet {
        roots,
        max_residual,
        precision: prec,
    })
}

/// Aberth–Ehrlich in f64, used to seed the k-bit iteration. Returns
/// `None` when the coefficients do not fit in f64.
fn aberth_f64(p: &[C64]) -> Option<Vec<C64>> {
    if p.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) || p[0] == C64::new(0.0, 0.0) {
        return None;
    }
    let n = p.len() - 1;
    let dp: Vec<C64> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    let horner = |q: &[C64], x: C64| {
        q.iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, c| acc * x + c)
    };
    let radius = p[0].norm().powf(1.0 / n as f64);
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    let abs_coeffs: Vec<f64> = p.iter().map(|c| c.norm()).collect();
    let mut done = vec![false; n];
    for _ in 0..500 {
        let mut moved = false;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let pz = horner(p, z[i]);
            let noise = 4.0
                * (n + 1) as f64
                * f64::EPSILON
                * abs_coeffs
                    .iter()
                    .rev()
                    .fold(0.0, |acc, a| acc * z[i].norm() + a);
            let dpz = horner(&dp, z[i]);
            if pz.norm() <= noise || dpz.norm() == 0.0 {
                done[i] = true;
                continue;
            }
            let ratio = pz / dpz;
            let sum: C64 = (0..n)
                .filter(|&j| j != i && z[j] != z[i])
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (C64::new(1.0, 0.0) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() > 1e-15 * z[i].norm().max(1e-300) {
                moved = true;
            } else {
                done[i] = true;
            }
        }
        if !moved {
            break;
        }
    }
    z.iter()
        .all(|r| r.re.is_finite() && r.im.is_finite())
        .then_some(z)
}

fn to_c64(c: &Complex<Float>) -> C64 {
    C64::new(Scalar::to_f64(&c.re), Scalar::to_f64(&c.im))
}

fn aberth_nonzero(p: &[Complex<Float>], ctx: Precision) -> Result<Vec<Complex<Float>>> {
    let n = p.len() - 1;
    let dp = derivative(p);
    let from_f64 = |re: f64, im: f64| {
        let conv = |x: f64| Rational::try_from(x).unwrap_or(Rational::ZERO);
        Complex::new(
            Float::from_rational(&conv(re), ctx),
            Float::from_rational(&conv(im), ctx),
        )
    };
    let seeds = aberth_f64(&p.iter().map(to_c64).collect::<Vec<_>>());
    let mut z: Vec<Complex<Float>> = match seeds {
        Some(s) => s.iter().map(|r| from_f64(r.re, r.im)).collect(),
        // Initial guesses on a circle of radius |a_0|^{1/n}, the geometric
        // mean of the root moduli, with an irrational angular offset.
        None => {
            let radius = (log2_modulus(&p[0]) / n as f64).exp2();
            let radius = if radius.is_finite() { radius } else { 1.0 };
            (0..n)
                .map(|k| {
                    let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
                    from_f64(radius * theta.cos(), radius * theta.sin())
                })
                .collect()
        }
    };
    // Coincident seeds would stall the Aberth correction.
    for i in 0..n {
        for j in 0..i {
            if z[i] == z[j] {
                let nudge =
                    Float::from_rational(&pow2(-20), ctx) * Float::from_i64(i as i64 + 1, ctx);
                z[i] = Complex::new(z[i].re.clone() + &nudge, z[i].im.clone() - &nudge);
            }
        }
    }

    let eps_log = -(ctx.0 as f64) + 3.0;
    // Rounding-error level of Horner evaluation: below it a root cannot
    // improve, so iterating further only burns the budget.
    let log_coeffs: Vec<f64> = p.iter().map(log2_modulus).collect();
    let noise_log = |z: &Complex<Float>| {
        let lz = log2_modulus(z);
        let terms: Vec<f64> = log_coeffs
            .iter()
            .enumerate()
            .map(|(k, la)| if k == 0 { *la } else { la + k as f64 * lz })
            .collect();
        let top = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = terms.iter().map(|t| (t - top).exp2()).sum();
        -(ctx.0 as f64) + (4.0 * (n + 1) as f64).log2() + top + sum.log2()
    };
    let mut z64: Vec<C64> = z.iter().map(to_c64).collect();
    let mut done = vec![false; n];
    let budget = 200 + 20 * n;
    for _ in 0..budget {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let pz = eval(p, &z[i]);
            if pz.is_zero() || log2_modulus(&pz) <= noise_log(&z[i]) {
                done[i] = true;
                continue;
            }
            let dpz = eval(&dp, &z[i]);
            // The sum enters the correction at second order, so f64 is
            // enough unless iterates coincide in f64.
            let diffs: Vec<C64> = (0..n)
                .filter(|&j| j != i)
                .map(|j| z64[i] - z64[j])
                .collect();
            let sum = if diffs.iter().all(|d| d.norm() > 0.0 && d.norm().is_finite()) {
                let s: C64 = diffs.iter().map(|d| d.inv()).sum();
                from_f64(s.re, s.im)
            } else {
                let mut sum = Complex::zero(ctx);
                for j in 0..n {
                    if j != i {
                        let diff = z[i].clone() - &z[j];
                        if !diff.is_zero() {
                            sum = sum + &(Complex::one(ctx) / &diff);
                        }
                    }
                }
                sum
            };
            let w = if dpz.is_zero() {
                // Stationary point: nudge instead of dividing by zero.
                Complex::new(
                    Float::from_rational(&pow2(-8), ctx),
                    Float::from_rational(&pow2(-9), ctx),
                )
            } else {
                let ratio = pz / &dpz;
                let den = Complex::one(ctx) - &(ratio.clone() * &sum);
                if den.is_zero() {
                    ratio
                } else {
                    ratio / &den
                }
            };
            z[i] = z[i].clone() - &w;
            z64[i] = to_c64(&z[i]);
            let scale = log2_modulus(&z[i]).max(0.0);
            if w.is_zero() || log2_modulus(&w) <= eps_log + scale {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    // Newton polishing for roots the budget left unconverged.
    for (zi, _) in z.iter_mut().zip(&done).filter(|(_, &d)| !d) {
        for _ in 0..3 {
            let dpz = eval(&dp, zi);
            if dpz.is_zero() {
                break;
            }
            let step = eval(p, zi) / &dpz;
            *zi = zi.clone() - &step;
            if step.is_zero() || log2_modulus(&step) <= eps_log + log2_modulus(zi).max(0.0) {
                break;
            }
        }
    }
    Ok(z)
}

/// Roots in k-bit complex arithmetic with the residual contract
/// `|p(r)| <= 2^(−k/2)·‖p‖₁·max(1,|r|)^deg`.
pub fn find_roots_float(p: &[Complex<Float>]) -> Result<RootSet<Float>> {
    let prec = p
        .iter()
        .map(|c| c.re.precision().max(c.im.precision()))
        .max()
        .unwrap_or(53);
    aberth(p, prec)
}

/// `L` with `L·r` a Gaussian integer for every root `r` of `p`.
///
/// Clearing denominators gives an integer polynomial; by the rational root
/// theorem over `Z[i]` every root denominator divides its leading coefficient.
pub fn root_denominator_bound(p: &[Complex<Rational>]) -> UBig {
    let lcm = p
        .iter()
        .flat_map(|c| [&c.re, &c.im])
        .fold(UBig::ONE, |acc, v| {
            let d = v.denominator();
            let g = (&acc).gcd(d);
            acc * d / g
        });
    let scale = Rational::from(IBig::from(lcm));
    let ints: Vec<UBig> = p
        .iter()
        .flat_map(|c| [&c.re, &c.im])
        .map(|v| (v.clone() * &scale).numerator().unsigned_abs())
        .filter(|v| *v != UBig::ZERO)
        .collect();
    let content = ints
        .iter()
        .cloned()
        .reduce(|a, b| (&a).gcd(&b))
        .unwrap_or(UBig::ONE);
    let lead = p.last().expect("nonempty");
    let lc_re = (lead.re.clone() * &scale).numerator().unsigned_abs();
    let lc_im = (lead.im.clone() * &scale).numerator().unsigned_abs();
    // A root u/w has w | lc in Z[i]; an integer lc clears it directly,
    // otherwise the norm lc·conj(lc) does.
    let bound = if lc_im == UBig::ZERO {
        lc_re / content
    } else {
        (&lc_re * &lc_re + &lc_im * &lc_im) / (&content * &content)
    };
    if bound == UBig::ZERO {
        UBig::ONE
    } else {
        bound
    }
}

/// Exact roots of a polynomial whose roots are Gaussian rationals.
///
/// Approximates the roots at a precision derived from the denominator
/// bound, rationalizes each coordinate, and certifies the candidates by
/// exact deflation. Precision doubles on failure.
pub fn find_roots_exact(p: &[Complex<Rational>]) -> Result<RootSet<Rational>> {
    let p = trim_leading_zeros(p.to_vec());
    if p.is_empty() {
        return Err(Error::InvalidArgument(
            "zero polynomial has no finite root set".into(),
        ));
    }
    let bound = root_denominator_bound(&p);
    let bound_bits = bound.bit_len();
    let coeff_bits = p
        .iter()
        .flat_map(|c| [&c.re, &c.im])
        .map(|v| {
            v.numerator().unsigned_abs().bit_len() as isize - v.denominator().bit_len() as isize
        })
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    let mut prec = 2 * bound_bits + coeff_bits + 64;
    let mut last_residual = f64::INFINITY;
    for _ in 0..6 {
        let ctx = Precision(prec);
        let approx: Vec<Complex<Float>> = p
            .iter()
            .map(|c| c.map(|x| Float::from_rational(x, ctx)))
            .collect();
        match aberth(&approx, prec) {
            Ok(rs) => {
                let candidates: Vec<Complex<Rational>> = rs
                    .roots
                    .iter()
                    .map(|r| {
                        Complex::new(
                            rationalize_float(&r.re, &bound),
                            rationalize_float(&r.im, &bound),
                        )
                    })
                    .collect();
                if certify(&p, &candidates) {
                    let mut roots = candidates;
                    roots.sort_by(root_order);
                    return Ok(RootSet {
                        roots,
                        max_residual: 0.0,
                        precision: prec,
                    });
                }
                last_residual = rs.max_residual;
            }
            Err(Error::RootFindingFailed { max_residual }) => last_residual = max_residual,
            Err(e) => return Err(e),
        }
        prec *= 2;
    }
    Err(Error::RootFindingFailed {
        max_residual: last_residual,
    })
}

/// True iff `p` factors exactly as `lc·Π(t − r)` over the candidates.
fn certify(p: &[Complex<Rational>], candidates: &[Complex<Rational>]) -> bool {
    let mut q = p.to_vec();
    for r in candidates {
        let (quot, rem) = deflate(&q, r);
        if !rem.is_zero() {
            return false;
        }
        q = quot;
    }
    q.len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rational;

    fn qr(s: &str) -> Complex<Rational> {
        Complex::real(parse_rational(s).unwrap())
    }

    fn from_roots(roots: &[Complex<Rational>]) -> Vec<Complex<Rational>> {
        roots.iter().fold(vec![qr("1")], |acc, r| {
            crate::poly::multiply(&acc, &[-r.clone(), qr("1")])
        })
    }

    #[test]
    fn quadratic_exact() {
        let rs = find_roots_exact(&[qr("2"), qr("-3"), qr("1")]).unwrap();
        assert_eq!(rs.roots, vec![qr("1"), qr("2")]);
    }

    #[test]
    fn quartic_with_zero_root() {
        let p = from_roots(&[qr("0"), qr("1"), qr("3"), qr("2")]);
        let rs = find_roots_exact(&p).unwrap();
        assert_eq!(rs.roots, vec![qr("0"), qr("1"), qr("2"), qr("3")]);
    }

    #[test]
    fn reciprocal_pade_roots() {
        // 1 − 6t + 11t² − 6t³ = (1−t)(1−2t)(1−3t)
        let rs = find_roots_exact(&[qr("1"), qr("-6"), qr("11"), qr("-6")]).unwrap();
        assert_eq!(rs.roots, vec![qr("1/3"), qr("1/2"), qr("1")]);
    }

    #[test]
    fn gaussian_rational_roots() {
        let roots = vec![
            Complex::new(
                parse_rational("-719/74").unwrap(),
                parse_rational("3/5").unwrap(),
            ),
            Complex::new(
                parse_rational("17/4").unwrap(),
                parse_rational("-7/12").unwrap(),
            ),
            Complex::new(
                parse_rational("17/4").unwrap(),
                parse_rational("1963/121").unwrap(),
            ),
        ];
        let p = from_roots(&roots);
        let mut expect = roots.clone();
        expect.sort_by(root_order);
        assert_eq!(find_roots_exact(&p).unwrap().roots, expect);
        // Non-monic scaling keeps the roots.
        let scaled: Vec<_> = p
            .iter()
            .map(|c| c.scale(&parse_rational("-22/7").unwrap()))
            .collect();
        assert_eq!(find_roots_exact(&scaled).unwrap().roots, expect);
    }

    #[test]
    fn float_roots_meet_residual_contract() {
        let p: Vec<Complex<Float>> = [-6, 11, -6, 1]
            .iter()
            .map(|&v| Complex::real(Float::from_i64(v, Precision(53))))
            .collect();
        let rs = find_roots_float(&p).unwrap();
        assert_eq!(rs.roots.len(), 3);
        for (r, want) in rs.roots.iter().zip([1.0, 2.0, 3.0]) {
            assert!((Scalar::to_f64(&r.re) - want).abs() < 1e-10);
            assert!(Scalar::to_f64(&r.im).abs() < 1e-10);
        }
        assert!(rs.max_residual <= 2f64.powf(-26.5));
    }

    #[test]
    fn complex_conjugate_pair() {
        // t² + 1
        let p: Vec<Complex<Float>> = [1, 0, 1]
            .iter()
            .map(|&v| Complex::real(Float::from_i64(v, Precision(40))))
            .collect();
        let rs = find_roots_float(&p).unwrap();
        assert!((Scalar::to_f64(&rs.roots[0].im) + 1.0).abs() < 1e-9);
        assert!((Scalar::to_f64(&rs.roots[1].im) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn denominator_bound_covers_roots() {
        let p = from_roots(&[qr("3/4"), qr("-5/6")]);
        let b = root_denominator_bound(&p);
        assert_eq!(&b % UBig::from(12u8), UBig::ZERO);
    }
}
