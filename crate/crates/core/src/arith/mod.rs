//! Scalar contract shared by every numeric module.
//!
//! Two arithmetic models are supported: exact rationals backed by
//! arbitrary-size integers, and binary floating point with a caller-chosen
//! mantissa width and round-to-nearest-even. Complex values are pairs of
//! same-mode reals. Algorithms are written once against [`Field`] and
//! [`Scalar`] and monomorphized for [`Rational`] or [`Float`].

mod complex;
mod precision;

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use dashu::base::{Abs, Signed};
use dashu::float::round::mode::HalfEven;
use dashu::float::FBig;
use serde::{Deserialize, Serialize};

pub use complex::Complex;
pub use precision::{
    format_rational, parse_rational, rationalize, rationalize_float, trim_f64, trim_to_precision,
};

use crate::error::{Error, Result};

pub type Int = dashu::integer::IBig;
pub type Natural = dashu::integer::UBig;
pub type Rational = dashu::rational::RBig;
/// Binary floating point, precision carried per value, ties to even.
pub type Float = FBig<HalfEven, 2>;

/// Smallest mantissa width accepted anywhere.
pub const MIN_BITS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Arithmetic {
    ExactRational,
    Float { bits: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ScalarMode {
    pub kind: Arithmetic,
    pub complex_enabled: bool,
}

impl ScalarMode {
    pub fn exact() -> Self {
        ScalarMode {
            kind: Arithmetic::ExactRational,
            complex_enabled: true,
        }
    }

    pub fn float(bits: usize) -> Result<Self> {
        check_bits(bits)?;
        Ok(ScalarMode {
            kind: Arithmetic::Float { bits },
            complex_enabled: true,
        })
    }

    pub fn real_only(self) -> Self {
        ScalarMode {
            complex_enabled: false,
            ..self
        }
    }

    pub fn bits(&self) -> Option<usize> {
        match self.kind {
            Arithmetic::ExactRational => None,
            Arithmetic::Float { bits } => Some(bits),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == Arithmetic::ExactRational
    }
}

impl Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Arithmetic::ExactRational => f.write_str("rational"),
            Arithmetic::Float { bits } => write!(f, "float:{bits}"),
        }
    }
}

impl FromStr for ScalarMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rational" {
            return Ok(ScalarMode::exact());
        }
        match s.strip_prefix("float:") {
            Some(bits) => {
                let bits = bits
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad bit count in mode {s:?}")))?;
                ScalarMode::float(bits)
            }
            None => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

impl Serialize for ScalarMode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ScalarMode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn check_bits(bits: usize) -> Result<()> {
    if bits < MIN_BITS {
        Err(Error::PrecisionTooLow(bits))
    } else {
        Ok(())
    }
}

/// Field operations needed by the generic linear algebra.
///
/// Constants are derived from an existing value (`zero_like`, `one_like`) so
/// float precision travels with the data instead of through every signature.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    type Real: Scalar;

    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Pivoting magnitude: `|x|` for reals, `|re| + |im|` for complex values.
    fn magnitude(&self) -> Self::Real;
    fn from_real(r: Self::Real) -> Self;
}

/// A real scalar in one of the two arithmetic models.
pub trait Scalar: Field<Real = Self> + PartialOrd {
    type Context: Copy + Debug + PartialEq + Send + Sync + 'static;
    const EXACT: bool;

    fn from_rational(r: &Rational, ctx: Self::Context) -> Self;
    fn context_of(&self) -> Self::Context;
    fn bits(ctx: Self::Context) -> Option<usize>;
    fn to_f64(&self) -> f64;
    /// Exact rational value (floats are dyadic rationals).
    fn to_rational(&self) -> Rational;
    fn abs(&self) -> Self;
    /// Lossless text form used by the file formats.
    fn encode(&self) -> String;
    fn decode(s: &str, ctx: Self::Context) -> Result<Self>;
    /// Context matching `mode`, or an error if the mode belongs to the other model.
    fn context_for(mode: ScalarMode) -> Result<Self::Context>;

    fn mode(ctx: Self::Context) -> ScalarMode {
        match Self::bits(ctx) {
            None => ScalarMode::exact(),
            Some(bits) => ScalarMode {
                kind: Arithmetic::Float { bits },
                complex_enabled: true,
            },
        }
    }

    fn zero(ctx: Self::Context) -> Self {
        Self::from_rational(&Rational::ZERO, ctx)
    }

    fn one(ctx: Self::Context) -> Self {
        Self::from_rational(&Rational::ONE, ctx)
    }

    fn from_i64(v: i64, ctx: Self::Context) -> Self {
        Self::from_rational(&Rational::from(v), ctx)
    }

    fn to_float(&self, bits: usize) -> Float {
        self.to_rational().to_float::<HalfEven, 2>(bits).value()
    }
}

impl Field for Rational {
    type Real = Rational;

    fn zero_like(&self) -> Self {
        Rational::ZERO
    }

    fn one_like(&self) -> Self {
        Rational::ONE
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn magnitude(&self) -> Rational {
        Abs::abs(self.clone())
    }

    fn from_real(r: Rational) -> Self {
        r
    }
}

impl Scalar for Rational {
    type Context = ();
    const EXACT: bool = true;

    fn from_rational(r: &Rational, _: ()) -> Self {
        r.clone()
    }

    fn context_of(&self) {}

    fn bits(_: ()) -> Option<usize> {
        None
    }

    fn to_f64(&self) -> f64 {
        Rational::to_f64(self).value()
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }

    fn abs(&self) -> Self {
        Abs::abs(self.clone())
    }

    fn encode(&self) -> String {
        format_rational(self)
    }

    fn decode(s: &str, _: ()) -> Result<Self> {
        parse_rational(s)
    }

    fn context_for(mode: ScalarMode) -> Result<()> {
        match mode.kind {
            Arithmetic::ExactRational => Ok(()),
            Arithmetic::Float { .. } => Err(Error::InvalidArgument(format!("{mode} is not exact"))),
        }
    }
}

/// Mantissa width for [`Float`] values built from constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision(pub usize);

impl Field for Float {
    type Real = Float;

    fn zero_like(&self) -> Self {
        Float::ZERO.with_precision(self.precision().max(1)).value()
    }

    fn one_like(&self) -> Self {
        Float::ONE.with_precision(self.precision().max(1)).value()
    }

    fn is_zero(&self) -> bool {
        self.repr().is_zero()
    }

    fn magnitude(&self) -> Float {
        Scalar::abs(self)
    }

    fn from_real(r: Float) -> Self {
        r
    }
}

impl Scalar for Float {
    type Context = Precision;
    const EXACT: bool = false;

    fn from_rational(r: &Rational, ctx: Precision) -> Self {
        r.to_float::<HalfEven, 2>(ctx.0).value()
    }

    fn context_of(&self) -> Precision {
        Precision(self.precision())
    }

    fn bits(ctx: Precision) -> Option<usize> {
        Some(ctx.0)
    }

    fn to_f64(&self) -> f64 {
        Float::to_f64(self).value()
    }

    fn to_rational(&self) -> Rational {
        Rational::try_from(self.clone()).expect("finite float converts to rational")
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn encode(&self) -> String {
        precision::format_float(self)
    }

    fn decode(s: &str, ctx: Precision) -> Result<Self> {
        Ok(Self::from_rational(&parse_rational(s)?, ctx))
    }

    fn context_for(mode: ScalarMode) -> Result<Precision> {
        match mode.kind {
            Arithmetic::Float { bits } => {
                check_bits(bits)?;
                Ok(Precision(bits))
            }
            Arithmetic::ExactRational => Err(Error::InvalidArgument(
                "rational mode has no bit width".into(),
            )),
        }
    }
}

/// Square root at the operand's precision; negative input is clamped to zero.
pub fn float_sqrt(x: &Float) -> Float {
    use dashu::base::SquareRoot;
    if x.is_negative() || x.repr().is_zero() {
        x.zero_like()
    } else {
        x.sqrt()
    }
}

/// Integer power by repeated squaring.
pub fn pow<F: Field>(base: &F, mut exp: u32) -> F {
    let mut acc = base.one_like();
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * &b;
        }
        exp >>= 1;
        if exp > 0 {
            b = b.clone() * &b;
        }
    }
    acc
}

pub fn factorial(n: u32) -> Int {
    (1..=n).fold(Int::ONE, |acc, k| acc * Int::from(k))
}

/// Floor of log2 |x| for a nonzero float.
pub fn float_log2_floor(x: &Float) -> isize {
    let repr = x.repr();
    repr.exponent() + repr.digits() as isize - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn mode_round_trips_through_text() {
        for text in ["rational", "float:25", "float:200"] {
            let mode: ScalarMode = text.parse().unwrap();
            assert_eq!(mode.to_string(), text);
        }
        assert!("float:4".parse::<ScalarMode>().is_err());
        assert!("double".parse::<ScalarMode>().is_err());
    }

    #[test]
    fn float_constants_keep_precision() {
        let x = Float::from_rational(&q("1/3"), Precision(40));
        assert_eq!(x.precision(), 40);
        assert_eq!(x.zero_like().precision(), 40);
        assert_eq!(x.one_like().precision(), 40);
        let y = x.clone() / x.one_like();
        assert_eq!(y, x);
    }

    #[test]
    fn float_to_rational_is_exact() {
        let x = Float::from_rational(&q("1/3"), Precision(4));
        assert_eq!(x.to_rational(), q("11/32"));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let b = q("-3/2");
        let mut acc = Rational::ONE;
        for e in 0..12u32 {
            assert_eq!(pow(&b, e), acc);
            acc *= &b;
        }
    }

    #[test]
    fn log2_floor_of_powers() {
        let ctx = Precision(30);
        assert_eq!(float_log2_floor(&Float::from_i64(1, ctx)), 0);
        assert_eq!(float_log2_floor(&Float::from_i64(7, ctx)), 2);
        assert_eq!(float_log2_floor(&Float::from_i64(8, ctx)), 3);
        assert_eq!(float_log2_floor(&Float::from_rational(&q("3/16"), ctx)), -3);
    }

    mod exact_closure {
        use super::*;
        use proptest::prelude::*;

        #[derive(Debug, Clone)]
        enum Expr {
            Leaf(i64, i64),
            Add(Box<Expr>, Box<Expr>),
            Sub(Box<Expr>, Box<Expr>),
            Mul(Box<Expr>, Box<Expr>),
            Div(Box<Expr>, Box<Expr>),
        }

        fn expr() -> impl Strategy<Value = Expr> {
            let leaf = (-50i64..50, 1i64..30).prop_map(|(p, q)| Expr::Leaf(p, q));
            leaf.prop_recursive(4, 24, 2, |inner| {
                prop_oneof![
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(a.into(), b.into())),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(a.into(), b.into())),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(a.into(), b.into())),
                    (inner.clone(), inner).prop_map(|(a, b)| Expr::Div(a.into(), b.into())),
                ]
            })
        }

        fn eval(e: &Expr) -> Option<Rational> {
            Some(match e {
                Expr::Leaf(p, q) => Rational::from_parts(Int::from(*p), Natural::from(*q as u64)),
                Expr::Add(a, b) => eval(a)? + eval(b)?,
                Expr::Sub(a, b) => eval(a)? - eval(b)?,
                Expr::Mul(a, b) => eval(a)? * eval(b)?,
                Expr::Div(a, b) => {
                    let d = eval(b)?;
                    if d.is_zero() {
                        return None;
                    }
                    eval(a)? / d
                }
            })
        }

        // Textbook fractions over i128: cross-multiply, reduce by gcd.
        fn gcd(a: i128, b: i128) -> i128 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }

        fn reduce(n: i128, d: i128) -> (i128, i128) {
            let g = gcd(n, d).max(1);
            let (n, d) = (n / g, d / g);
            if d < 0 {
                (-n, -d)
            } else {
                (n, d)
            }
        }

        fn oracle(e: &Expr) -> Option<(i128, i128)> {
            let bin = |a: &Expr, b: &Expr| Some((oracle(a)?, oracle(b)?));
            let r = match e {
                Expr::Leaf(p, q) => reduce(*p as i128, *q as i128),
                Expr::Add(a, b) => {
                    let ((an, ad), (bn, bd)) = bin(a, b)?;
                    reduce(
                        an.checked_mul(bd)?.checked_add(bn.checked_mul(ad)?)?,
                        ad.checked_mul(bd)?,
                    )
                }
                Expr::Sub(a, b) => {
                    let ((an, ad), (bn, bd)) = bin(a, b)?;
                    reduce(
                        an.checked_mul(bd)?.checked_sub(bn.checked_mul(ad)?)?,
                        ad.checked_mul(bd)?,
                    )
                }
                Expr::Mul(a, b) => {
                    let ((an, ad), (bn, bd)) = bin(a, b)?;
                    reduce(an.checked_mul(bn)?, ad.checked_mul(bd)?)
                }
                Expr::Div(a, b) => {
                    let ((an, ad), (bn, bd)) = bin(a, b)?;
                    if bn == 0 {
                        return None;
                    }
                    reduce(an.checked_mul(bd)?, ad.checked_mul(bn)?)
                }
            };
            Some(r)
        }

        proptest! {
            #[test]
            fn rational_expressions_reduce_like_textbook_fractions(e in expr()) {
                if let (Some(ours), Some((n, d))) = (eval(&e), oracle(&e)) {
                    prop_assert_eq!(ours.numerator().to_string(), n.to_string());
                    prop_assert_eq!(ours.denominator().to_string(), d.to_string());
                }
            }
        }
    }
}
