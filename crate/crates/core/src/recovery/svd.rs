//! Singular values of a complex matrix by one-sided (Hestenes) Jacobi.
//!
//! Columns are rotated pairwise until mutually orthogonal; the singular
//! values are then the column norms. Each rotation is unitary, so the
//! result is accurate to the working precision relative to `‖A‖`.

use crate::arith::{float_sqrt, Complex, Field, Float, Precision, Scalar};
use crate::linalg::Matrix;

fn column_dot(a: &Matrix<Complex<Float>>, p: usize, q: usize, ctx: Precision) -> Complex<Float> {
    a.iter().fold(Complex::zero(ctx), |acc, row| {
        acc + &(row[p].conj() * &row[q])
    })
}

fn column_norm_sqr(a: &Matrix<Complex<Float>>, p: usize, ctx: Precision) -> Float {
    a.iter()
        .fold(Float::zero(ctx), |acc, row| acc + row[p].norm_sqr())
}

/// Singular values in descending order.
pub fn singular_values(a: &Matrix<Complex<Float>>, ctx: Precision) -> Vec<Float> {
    let mut a = a.clone();
    let n = a.first().map_or(0, Vec::len);
    let eps = Float::from_rational(&crate::arith::Rational::ONE, ctx)
        / Float::from_rational(
            &crate::arith::Rational::from(dashu::integer::IBig::ONE << ctx.0.saturating_sub(2)),
            ctx,
        );
    let one = Float::one(ctx);
    for _sweep in 0..40 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = column_norm_sqr(&a, p, ctx);
                let beta = column_norm_sqr(&a, q, ctx);
                let gamma = column_dot(&a, p, q, ctx);
                let g_abs = float_sqrt(&gamma.norm_sqr());
                if g_abs.is_zero() || g_abs <= eps.clone() * float_sqrt(&(alpha.clone() * &beta)) {
                    continue;
                }
                rotated = true;
                // Rotate (a_p, a_q·conj(phase)) where phase = γ/|γ| makes the
                // inner product real and positive.
                let phase_conj =
                    Complex::new(gamma.re.clone() / &g_abs, -(gamma.im.clone() / &g_abs));
                let zeta = (beta - &alpha) / &(g_abs.clone() + &g_abs);
                let root = float_sqrt(&(one.clone() + &(zeta.clone() * &zeta)));
                let t = if zeta >= Float::zero(ctx) {
                    one.clone() / &(zeta.clone() + &root)
                } else {
                    -(one.clone() / &(root - &zeta))
                };
                let c = one.clone() / &float_sqrt(&(one.clone() + &(t.clone() * &t)));
                let s = c.clone() * &t;
                for row in a.iter_mut() {
                    let ap = row[p].clone();
                    let bq = row[q].clone() * &phase_conj;
                    row[p] = ap.scale(&c) - &bq.scale(&s);
                    row[q] = ap.scale(&s) + &bq.scale(&c);
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<Float> = (0..n)
        .map(|p| float_sqrt(&column_norm_sqr(&a, p, ctx)))
        .collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    sv
}
