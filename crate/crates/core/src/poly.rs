//! Univariate polynomial helpers (ascending coefficients) and a small sparse
//! multivariate polynomial type over the rationals.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::arith::{Field, Rational};

/// Horner evaluation of `Σ c_k x^k`.
pub fn eval<F: Field>(coeffs: &[F], x: &F) -> F {
    let mut it = coeffs.iter().rev();
    let Some(first) = it.next() else {
        return x.zero_like();
    };
    it.fold(first.clone(), |acc, c| acc * x + c)
}

pub fn derivative<F: Field>(coeffs: &[F]) -> Vec<F> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| {
            let mut acc = c.zero_like();
            for _ in 0..k {
                acc = acc + c;
            }
            acc
        })
        .collect()
}

/// Synthetic division by `(x - root)`: returns quotient and remainder.
pub fn deflate<F: Field>(coeffs: &[F], root: &F) -> (Vec<F>, F) {
    let n = coeffs.len();
    assert!(n >= 1);
    let mut q = vec![root.zero_like(); n.saturating_sub(1)];
    let mut carry = coeffs[n - 1].clone();
    for k in (0..n - 1).rev() {
        q[k] = carry.clone();
        carry = coeffs[k].clone() + &(carry * root);
    }
    (q, carry)
}

pub fn multiply<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![a[0].zero_like(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + &(x.clone() * y);
        }
    }
    out
}

/// Drop exactly-zero leading (highest-degree) coefficients.
pub fn trim_leading_zeros<F: Field>(mut coeffs: Vec<F>) -> Vec<F> {
    while coeffs.last().is_some_and(Field::is_zero) {
        coeffs.pop();
    }
    coeffs
}

/// Sparse polynomial in `nvars` variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// `Σ_i coeffs[i] · x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = MultiPoly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn monomial(exponents: &[u32], c: Rational) -> Self {
        let mut p = MultiPoly::zero(exponents.len());
        p.add_term(exponents.to_vec(), c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms.get(exponents).cloned().unwrap_or(Rational::ZERO)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, exponents: Vec<u32>, c: Rational) {
        debug_assert_eq!(exponents.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.scale(&-Rational::ONE))
    }

    pub fn scale(&self, k: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * k);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.nvars, Rational::ONE);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂/∂x_var`, applied term by term.
    pub fn partial(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[var] -= 1;
            out.add_term(d, c.clone() * Rational::from(e[var]));
        }
        out
    }

    /// `Σ_i ∂²/∂x_i²`.
    pub fn laplacian(&self) -> MultiPoly {
        (0..self.nvars).fold(MultiPoly::zero(self.nvars), |acc, i| {
            acc.add(&self.partial(i).partial(i))
        })
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::ZERO, |acc, (e, c)| {
            let term = e
                .iter()
                .zip(x)
                .fold(c.clone(), |t, (&k, xi)| t * crate::arith::pow(xi, k));
            acc + term
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn horner_and_deflation() {
        // (x - 1)(x - 2) = x^2 - 3x + 2
        let p = vec![r(2), r(-3), r(1)];
        assert_eq!(eval(&p, &r(1)), r(0));
        assert_eq!(eval(&p, &r(5)), r(12));
        let (q, rem) = deflate(&p, &r(2));
        assert_eq!(q, vec![r(-1), r(1)]);
        assert_eq!(rem, r(0));
        let (_, rem) = deflate(&p, &r(3));
        assert_eq!(rem, r(2));
        assert_eq!(derivative(&p), vec![r(-3), r(2)]);
        assert_eq!(multiply(&[r(-1), r(1)], &[r(-2), r(1)]), p);
    }

    #[test]
    fn trims_leading_zeros() {
        assert_eq!(
            trim_leading_zeros(vec![r(1), r(2), r(0), r(0)]),
            vec![r(1), r(2)]
        );
    }

    #[test]
    fn laplacian_of_classical_harmonic() {
        // x^2 - y^2 and 2xy are harmonic; x^2 + y^2 has Laplacian 4.
        let x = MultiPoly::monomial(&[1, 0], r(1));
        let y = MultiPoly::monomial(&[0, 1], r(1));
        assert!(x.mul(&x).sub(&y.mul(&y)).laplacian().is_zero());
        assert!(x.mul(&y).scale(&r(2)).laplacian().is_zero());
        assert_eq!(
            x.mul(&x).add(&y.mul(&y)).laplacian(),
            MultiPoly::constant(2, r(4))
        );
    }

    #[test]
    fn linear_power_evaluates_consistently() {
        let l = MultiPoly::linear(&[r(1), r(2), r(-1)]);
        let p = l.pow(4);
        let pt = [r(3), r(-1), r(2)];
        // (3 - 2 - 2)^4 = 1
        assert_eq!(p.eval(&pt), r(1));
        assert_eq!(p.degree(), 4);
    }
}
