use crate::arith::Rational;
use crate::poly::MultiPoly;

/// Real and imaginary parts `(g₁, g₂)` of `(⟨x,z_re⟩ + i·⟨x,z_im⟩)^j`.
pub fn harmonic_parts(j: u32, z_re: &[Rational], z_im: &[Rational]) -> (MultiPoly, MultiPoly) {
    let n = z_re.len();
    let a = MultiPoly::linear(z_re);
    let b = MultiPoly::linear(z_im);
    let mut re = MultiPoly::constant(n, Rational::ONE);
    let mut im = MultiPoly::zero(n);
    for _ in 0..j {
        let next_re = re.mul(&a).sub(&im.mul(&b));
        let next_im = re.mul(&b).add(&im.mul(&a));
        re = next_re;
        im = next_im;
    }
    (re, im)
}

/// Laplacians `(Δg₁, Δg₂)`; both vanish when `z_re ⊥ z_im` with equal norms.
pub fn harmonic_check(j: u32, z_re: &[Rational], z_im: &[Rational]) -> (MultiPoly, MultiPoly) {
    let (g1, g2) = harmonic_parts(j, z_re, z_im);
    (g1.laplacian(), g2.laplacian())
}
