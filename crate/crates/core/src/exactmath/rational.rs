//! Exact rational scalars.
//!
//! Every coefficient, initial condition and convergence control parameter in
//! the crate is a [`Rational`]: an arbitrary-precision fraction kept in lowest
//! terms with a positive denominator. The arithmetic itself comes from
//! `num-rational`; this module adds the text format used by problem files,
//! solution JSON and the command line.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{CheckedDiv, One, Signed, ToPrimitive, Zero};

use super::MathError;

/// Arbitrary-precision fraction in canonical form.
pub type Rational = BigRational;

/// Builds `numer / denom` from machine integers, reduced to lowest terms.
///
/// Panics if `denom` is zero; use [`checked_div`] for fallible division.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational, MathError> {
    a.checked_div(b).ok_or(MathError::DivisionByZero)
}

/// Arithmetic operation selector for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arith(a: &Rational, b: &Rational, op: ArithOp) -> Result<Rational, MathError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => return checked_div(a, b),
    })
}

pub fn compare(a: &Rational, b: &Rational) -> Ordering {
    a.cmp(b)
}

/// Parses `"n"`, `"n/d"` or an exact decimal such as `"-1.25"`.
///
/// Decimals are converted without rounding, so `"-1.2"` is `-6/5`.
pub fn parse_rational(text: &str) -> Result<Rational, MathError> {
    let s = text.trim();
    let bad = || MathError::Parse(format!("invalid rational literal {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let numer = parse_int(n).ok_or_else(bad)?;
        let denom = parse_int(d).ok_or_else(bad)?;
        if denom.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        return Ok(Rational::new(numer, denom));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let (negative, whole) = match whole.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, whole.strip_prefix('+').unwrap_or(whole)),
        };
        if (whole.is_empty() && frac.is_empty())
            || !whole.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{whole}{frac}");
        let numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let denom = num_traits::pow(BigInt::from(10u32), frac.len());
        let value = Rational::new(numer, denom);
        return Ok(if negative { -value } else { value });
    }
    parse_int(s).map(Rational::from_integer).ok_or_else(bad)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical text form: `"n"` when the denominator is one, else `"n/d"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest `f64` to `r`.
pub fn to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        return v;
    }
    // Out of range of the fast path; fall back to a quotient of shifted integers.
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    let numer = r.numer().abs();
    let denom = r.denom().clone();
    let shift = numer.bits() as i64 - denom.bits() as i64 - 60;
    let q = if shift >= 0 {
        numer / (denom << shift as usize)
    } else {
        (numer << (-shift) as usize) / denom
    };
    sign * q.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(shift as i32)
}

/// Exact rational value of a finite float.
pub fn from_f64(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_reduces() {
        assert_eq!(arith(&ratio(1, 3), &ratio(1, 6), ArithOp::Add).unwrap(), ratio(1, 2));
    }

    #[test]
    fn construction_normalizes() {
        let r = ratio(2, 4);
        assert_eq!(r.numer(), &BigInt::from(1));
        assert_eq!(r.denom(), &BigInt::from(2));
        let neg = ratio(3, -6);
        assert_eq!(neg.numer(), &BigInt::from(-1));
        assert_eq!(neg.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&ratio(0, 7)), "0");
        assert_eq!(ratio(0, 7).denom(), &BigInt::from(1));
    }

    #[test]
    fn mul_sign_and_gcd() {
        assert_eq!(arith(&ratio(-6, 5), &ratio(-1, 3), ArithOp::Mul).unwrap(), ratio(2, 5));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(arith(&ratio(1, 2), &int(0), ArithOp::Div), Err(MathError::DivisionByZero));
        assert_eq!(parse_rational("3/0"), Err(MathError::DivisionByZero));
    }

    #[test]
    fn compare_orders() {
        assert_eq!(compare(&ratio(-6, 5), &int(-1)), Ordering::Less);
        assert_eq!(compare(&ratio(2, 4), &ratio(1, 2)), Ordering::Equal);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-1.2").unwrap(), ratio(-6, 5));
        assert_eq!(parse_rational("-6/5").unwrap(), ratio(-6, 5));
        assert_eq!(parse_rational("0.05").unwrap(), ratio(1, 20));
        assert_eq!(parse_rational("-.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("3.").unwrap(), int(3));
        assert_eq!(parse_rational(" 12 ").unwrap(), int(12));
        assert_eq!(parse_rational("+4/8").unwrap(), ratio(1, 2));
        for bad in ["", "abc", "1/2/3", "1.2.3", "-", ".", "1e5", "1/-", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn text_form_round_trips() {
        for s in ["0", "-7", "1/3", "-56786346435546875/7962624"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
    }

    #[test]
    fn float_conversion() {
        assert_eq!(to_f64(&ratio(2, 5)), 0.4);
        assert_eq!(to_f64(&ratio(-13, 10)), -1.3);
        let huge = Rational::new(num_traits::pow(BigInt::from(10), 400), num_traits::pow(BigInt::from(10), 399));
        assert_eq!(to_f64(&huge), 10.0);
        assert_eq!(from_f64(0.5).unwrap(), ratio(1, 2));
    }
}
