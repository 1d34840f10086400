use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Field, Scalar};

/// `re + i·im` with both parts in the same arithmetic model.
///
/// Inner products with a complex direction use the unconjugated extension
/// `⟨v, z⟩ = ⟨v, z_re⟩ + i·⟨v, z_im⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex<S> {
    pub re: S,
    pub im: S,
}

impl<S: Scalar> Complex<S> {
    pub fn new(re: S, im: S) -> Self {
        Complex { re, im }
    }

    pub fn real(re: S) -> Self {
        let im = re.zero_like();
        Complex { re, im }
    }

    pub fn zero(ctx: S::Context) -> Self {
        Complex::real(S::zero(ctx))
    }

    pub fn one(ctx: S::Context) -> Self {
        Complex::real(S::one(ctx))
    }

    pub fn conj(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sqr(&self) -> S {
        self.re.clone() * &self.re + self.im.clone() * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, k: &S) -> Self {
        Complex {
            re: self.re.clone() * k,
            im: self.im.clone() * k,
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Modulus as `f64`; only for diagnostics and tolerances.
    pub fn abs_f64(&self) -> f64 {
        let (re, im) = self.to_f64_pair();
        re.hypot(im)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Complex<T> {
        Complex {
            re: f(&self.re),
            im: f(&self.im),
        }
    }
}

impl<S: Scalar> Field for Complex<S> {
    type Real = S;

    fn zero_like(&self) -> Self {
        Complex::real(self.re.zero_like())
    }

    fn one_like(&self) -> Self {
        Complex::real(self.re.one_like())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn magnitude(&self) -> S {
        self.re.abs() + self.im.abs()
    }

    fn from_real(r: S) -> Self {
        Complex::real(r)
    }
}

impl<S: Scalar> Add<&Complex<S>> for Complex<S> {
    type Output = Complex<S>;
    fn add(self, rhs: &Complex<S>) -> Complex<S> {
        Complex {
            re: self.re + &rhs.re,
            im: self.im + &rhs.im,
        }
    }
}

impl<S: Scalar> Sub<&Complex<S>> for Complex<S> {
    type Output = Complex<S>;
    fn sub(self, rhs: &Complex<S>) -> Complex<S> {
        Complex {
            re: self.re - &rhs.re,
            im: self.im - &rhs.im,
        }
    }
}

impl<S: Scalar> Mul<&Complex<S>> for Complex<S> {
    type Output = Complex<S>;
    fn mul(self, rhs: &Complex<S>) -> Complex<S> {
        // Purely real operands stay purely real with an exact zero imaginary part.
        if self.im.is_zero() && rhs.im.is_zero() {
            let im = self.im;
            return Complex {
                re: self.re * &rhs.re,
                im,
            };
        }
        let re = self.re.clone() * &rhs.re - self.im.clone() * &rhs.im;
        let im = self.re * &rhs.im + self.im * &rhs.re;
        Complex { re, im }
    }
}

impl<S: Scalar> Div<&Complex<S>> for Complex<S> {
    type Output = Complex<S>;
    fn div(self, rhs: &Complex<S>) -> Complex<S> {
        if rhs.im.is_zero() {
            return Complex {
                re: self.re / &rhs.re,
                im: self.im / &rhs.re,
            };
        }
        let den = rhs.norm_sqr();
        let re = self.re.clone() * &rhs.re + self.im.clone() * &rhs.im;
        let im = self.im * &rhs.re - self.re * &rhs.im;
        Complex {
            re: re / &den,
            im: im / &den,
        }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr<Complex<S>> for Complex<S> {
            type Output = Complex<S>;
            fn $m(self, rhs: Complex<S>) -> Complex<S> {
                $tr::$m(self, &rhs)
            }
        }
    };
}

by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);

impl<S: Scalar> Neg for Complex<S> {
    type Output = Complex<S>;
    fn neg(self) -> Complex<S> {
        Complex {
            re: -self.re,
            im: -self.im,
        }
    }
}
