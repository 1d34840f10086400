use dashu::base::{Abs, DivEuclid};
use dashu::float::round::mode::HalfEven;

use super::{Float, Int, Natural, Rational};
use crate::error::{Error, Result};

/// Round `x` to a `bits`-bit mantissa, ties to even.
///
/// Any positive width is accepted here; arithmetic modes enforce the 8-bit floor.
pub fn trim_to_precision(x: &Rational, bits: usize) -> Result<Float> {
    if bits == 0 {
        return Err(Error::PrecisionTooLow(0));
    }
    Ok(x.to_float::<HalfEven, 2>(bits).value())
}

pub fn trim_f64(x: f64, bits: usize) -> Result<Float> {
    if !x.is_finite() {
        return Err(Error::NonFinite);
    }
    let exact = Float::try_from(x).map_err(|_| Error::NonFinite)?;
    if bits == 0 {
        return Err(Error::PrecisionTooLow(0));
    }
    Ok(exact.with_precision(bits).value())
}

/// Best rational approximation with denominator at most `bound`.
///
/// Walks the continued-fraction convergents of `x` and, once the next
/// convergent would exceed the bound, compares the last convergent with the
/// largest admissible semiconvergent.
pub fn rationalize(x: &Rational, bound: &Natural) -> Rational {
    assert!(*bound >= Natural::ONE, "denominator bound must be positive");
    let bound = Int::from(bound.clone());
    let (mut num, den) = x.clone().into_parts();
    let mut den = Int::from(den);

    let (mut p0, mut q0) = (Int::ZERO, Int::ONE);
    let (mut p1, mut q1) = (Int::ONE, Int::ZERO);
    loop {
        let a = (&num).div_euclid(&den);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > bound {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let rem = num - &a * &den;
        if rem == Int::ZERO {
            return from_ints(p1, q1);
        }
        num = den;
        den = rem;
    }

    let k = (&bound - &q0).div_euclid(&q1);
    let convergent = from_ints(p1.clone(), q1.clone());
    if k == Int::ZERO {
        return convergent;
    }
    let semi = from_ints(&p0 + &k * &p1, &q0 + &k * &q1);
    let dc = Abs::abs(x.clone() - &convergent);
    let ds = Abs::abs(x.clone() - &semi);
    if ds < dc {
        semi
    } else {
        convergent
    }
}

pub fn rationalize_float(x: &Float, bound: &Natural) -> Rational {
    let exact = Rational::try_from(x.clone()).expect("finite float");
    rationalize(&exact, bound)
}

fn from_ints(p: Int, q: Int) -> Rational {
    let (sign, q) = q.into_parts();
    let p = if sign == dashu::base::Sign::Negative {
        -p
    } else {
        p
    };
    Rational::from_parts(p, q)
}

/// Accepts `p/q`, integers, and decimals with optional exponent.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: Int = p.trim().parse().map_err(|_| bad())?;
        let q: Int = q.trim().parse().map_err(|_| bad())?;
        if q == Int::ZERO {
            return Err(bad());
        }
        return Ok(Rational::from(p) / Rational::from(q));
    }

    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut value = Rational::from(all.parse::<Int>().map_err(|_| bad())?);
    let shift = exp - frac_part.len() as i64;
    let ten_pow = Rational::from(Int::from(10u8).pow(shift.unsigned_abs() as usize));
    if shift >= 0 {
        value *= ten_pow;
    } else {
        value /= ten_pow;
    }
    Ok(if negative { -value } else { value })
}

pub fn format_rational(x: &Rational) -> String {
    if x.denominator() == &Natural::ONE {
        x.numerator().to_string()
    } else {
        format!("{}/{}", x.numerator(), x.denominator())
    }
}

/// Scientific decimal with enough digits to round-trip at the value's precision.
pub(crate) fn format_float(x: &Float) -> String {
    let digits = (x.precision() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
    let dec = x.clone().with_base_and_precision::<10>(digits).value();
    let repr = dec.repr();
    if repr.is_zero() {
        return "0".to_string();
    }
    let (sign, mag) = repr.significand().clone().into_parts();
    let text = mag.to_string();
    let exp = repr.exponent() + text.len() as isize - 1;
    let trimmed = text.trim_end_matches('0');
    let trimmed = if trimmed.is_empty() { "0" } else { trimmed };
    let (lead, rest) = trimmed.split_at(1);
    let sign = if sign == dashu::base::Sign::Negative {
        "-"
    } else {
        ""
    };
    if rest.is_empty() {
        format!("{sign}{lead}e{exp}")
    } else {
        format!("{sign}{lead}.{rest}e{exp}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Precision, Scalar};
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn trim_examples() {
        assert_eq!(
            trim_to_precision(&q("1/2"), 10).unwrap().to_rational(),
            q("1/2")
        );
        assert_eq!(
            trim_to_precision(&q("1/3"), 4).unwrap().to_rational(),
            q("11/32")
        );
        assert!(trim_to_precision(&q("0"), 8)
            .unwrap()
            .to_rational()
            .is_zero());
    }

    #[test]
    fn trim_rejects_bad_input() {
        assert_eq!(trim_f64(f64::NAN, 10), Err(Error::NonFinite));
        assert_eq!(trim_f64(f64::INFINITY, 10), Err(Error::NonFinite));
        assert_eq!(
            trim_to_precision(&q("1/3"), 0),
            Err(Error::PrecisionTooLow(0))
        );
    }

    #[test]
    fn trim_ties_go_to_even() {
        // 257 = 1_0000_0001b sits halfway between 256 and 258 at 8 bits.
        assert_eq!(
            trim_to_precision(&q("257"), 8).unwrap().to_rational(),
            q("256")
        );
        assert_eq!(
            trim_to_precision(&q("259"), 8).unwrap().to_rational(),
            q("260")
        );
    }

    #[test]
    fn rationalize_examples() {
        let hundred = Natural::from(100u8);
        assert_eq!(rationalize(&q("0.25"), &hundred), q("1/4"));
        assert_eq!(
            rationalize(&q("0.333333343"), &Natural::from(10u8)),
            q("1/3")
        );
        assert_eq!(rationalize(&q("4.25"), &Natural::from(1000u16)), q("17/4"));
        assert_eq!(
            rationalize(&q("-4.25"), &Natural::from(1000u16)),
            q("-17/4")
        );
    }

    #[test]
    fn rationalize_uses_semiconvergents() {
        // pi ~ 3.14159265: convergents 3, 22/7, 333/106; with bound 15 the best is 22/7,
        // with bound 57 the semiconvergent 179/57 beats 22/7.
        let pi = q("3.14159265358979");
        assert_eq!(rationalize(&pi, &Natural::from(15u8)), q("22/7"));
        assert_eq!(rationalize(&pi, &Natural::from(57u8)), q("179/57"));
    }

    #[test]
    fn parse_accepts_common_spellings() {
        assert_eq!(q("-17/4"), q("-4.25"));
        assert_eq!(q("1.5e2"), q("150"));
        assert_eq!(q("25e-2"), q("1/4"));
        assert_eq!(q(".5"), q("1/2"));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "-7", "17/4", "-1588/133"] {
            assert_eq!(format_rational(&q(s)), s);
        }
    }

    #[test]
    fn float_text_round_trip() {
        for bits in [8usize, 25, 53, 75, 200] {
            for s in ["1/3", "-82.30000001", "1e-40", "123456789/7", "0"] {
                let x = Float::from_rational(&q(s), Precision(bits));
                let text = x.encode();
                let back = Float::decode(&text, Precision(bits)).unwrap();
                assert_eq!(back, x, "{s} at {bits} bits via {text}");
            }
        }
    }

    proptest! {
        #[test]
        fn trim_is_idempotent_and_nested(n in -1_000_000i64..1_000_000, d in 1i64..100_000, k1 in 8usize..60, extra in 0usize..40) {
            let x = Rational::from(n) / Rational::from(d);
            let once = trim_to_precision(&x, k1).unwrap();
            let twice = trim_to_precision(&once.to_rational(), k1).unwrap();
            prop_assert_eq!(&once, &twice);
            let wider = trim_to_precision(&once.to_rational(), k1 + extra).unwrap();
            prop_assert_eq!(wider.to_rational(), once.to_rational());
        }

        #[test]
        fn trim_error_is_bounded(n in 1i64..1_000_000_000, d in 1i64..1_000_000, k in 8usize..50, neg in any::<bool>()) {
            let x = Rational::from(if neg { -n } else { n }) / Rational::from(d);
            let t = trim_to_precision(&x, k).unwrap().to_rational();
            let err = Abs::abs(t - &x);
            // 2^(-k) * 2^(floor(log2|x|) + 1)
            let xf = x.to_f64().value().abs();
            let e = xf.log2().floor() as i32 + 1 - k as i32;
            let bound = Rational::try_from(2f64.powi(e)).unwrap();
            prop_assert!(err <= bound);
        }
    }
}
