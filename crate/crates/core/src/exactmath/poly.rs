//! Dense univariate polynomials in `t` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, int, parse_rational, to_f64, Rational};
use super::MathError;

/// Degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which orders below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Polynomial `c_0 + c_1 t + ... + c_n t^n`, coefficients stored lowest
/// exponent first. The leading stored coefficient is never zero; the zero
/// polynomial stores nothing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// `c * t^exp`
    pub fn monomial(c: Rational, exp: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); exp + 1];
        coeffs[exp] = c;
        Polynomial { coeffs }
    }

    /// The identity polynomial `t`.
    pub fn t() -> Self {
        Polynomial::monomial(Rational::one(), 1)
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^exp`, zero past the degree.
    pub fn coeff(&self, exp: usize) -> Rational {
        self.coeffs.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending exponent.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn num_terms(&self) -> usize {
        self.terms().count()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Cauchy product.
    pub fn mul_poly(&self, other: &Polynomial) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        self.mul_truncated(other, self.coeffs.len() + other.coeffs.len() - 2)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Polynomial::one();
        for _ in 0..n {
            acc = acc.mul_poly(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Polynomial::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// Antiderivative `P` with `P(t0) = 0`, i.e. `t ↦ ∫_{t0}^{t} p(ξ) dξ`.
    pub fn integrate_from(&self, t0: &Rational) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / int(k as i64 + 1)),
        );
        let mut antiderivative = Polynomial::from_coeffs(coeffs);
        if !t0.is_zero() {
            let offset = antiderivative.eval(t0);
            antiderivative = antiderivative - Polynomial::constant(offset);
        }
        antiderivative
    }

    /// `∫_a^b p(t) dt`
    pub fn definite_integral(&self, a: &Rational, b: &Rational) -> Rational {
        let antiderivative = self.integrate_from(&Rational::zero());
        antiderivative.eval(b) - antiderivative.eval(a)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Horner evaluation in double precision.
    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + to_f64(c))
    }

    /// Drops every term of degree greater than `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        if self.coeffs.len() <= max_degree + 1 {
            return self.clone();
        }
        Polynomial::from_coeffs(self.coeffs[..=max_degree].to_vec())
    }

    /// Product truncated at `max_degree`, without forming the dropped terms.
    ///
    /// Both factors are scaled to integer coefficients first, so the
    /// convolution itself runs on integers and each output coefficient is
    /// reduced once.
    pub fn mul_truncated(&self, other: &Polynomial, max_degree: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let (a, da) = self.integer_coeffs();
        let (b, db) = other.integer_coeffs();
        let len = (a.len() + b.len() - 1).min(max_degree + 1);
        let mut out = vec![BigInt::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let denom = da * db;
        Polynomial::from_coeffs(
            out.into_iter()
                .map(|n| Rational::new(n, denom.clone()))
                .collect(),
        )
    }

    /// `(n, d)` with `self = n(t) / d`, `n` integral and `d` the lcm of the
    /// coefficient denominators.
    fn integer_coeffs(&self) -> (Vec<BigInt>, BigInt) {
        let denom = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numers = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        (numers, denom)
    }

    /// Serializable term list: ascending exponents, zero coefficients omitted.
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms()
            .map(|(exp, c)| TermRecord {
                exp: exp as i64,
                coeff: format_rational(c),
            })
            .collect()
    }

    /// Builds a polynomial from term records.
    ///
    /// Negative exponents and repeated exponents are rejected. Zero
    /// coefficients are accepted and dropped.
    pub fn from_records(records: &[TermRecord]) -> Result<Self, MathError> {
        let mut coeffs: Vec<Option<Rational>> = Vec::new();
        for rec in records {
            let exp = usize::try_from(rec.exp)
                .map_err(|_| MathError::Invalid(format!("negative exponent {}", rec.exp)))?;
            let c = parse_rational(&rec.coeff)?;
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, None);
            }
            if coeffs[exp].is_some() {
                return Err(MathError::Invalid(format!("duplicate exponent {exp}")));
            }
            coeffs[exp] = Some(c);
        }
        Ok(Polynomial::from_coeffs(
            coeffs.into_iter().map(Option::unwrap_or_default).collect(),
        ))
    }
}

/// One `{"exp": .., "coeff": ".."}` entry of the JSON polynomial format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exp: i64,
    pub coeff: String,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_records().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        Polynomial::from_records(&records).map_err(serde::de::Error::custom)
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_poly(rhs)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        self.mul_poly(&rhs)
    }
}

/// Ascending-exponent rendering, e.g. `t + 1/3*t^3 - 2/25*t^5`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (exp, c)) in self.terms().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let coeff = format_rational(&magnitude);
            match exp {
                0 => f.write_str(&coeff)?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    f.write_str("t")?;
                    if exp > 1 {
                        write!(f, "^{exp}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::ratio;

    fn poly(terms: &[(usize, i64, i64)]) -> Polynomial {
        terms
            .iter()
            .fold(Polynomial::zero(), |acc, &(e, n, d)| acc + Polynomial::monomial(ratio(n, d), e))
    }

    #[test]
    fn zero_has_sentinel_degree() {
        assert_eq!(Polynomial::zero().degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(Polynomial::from_coeffs(vec![int(0), int(0)]), Polynomial::zero());
        assert_eq!(Polynomial::constant(int(3)).degree(), Degree::Finite(0));
    }

    #[test]
    fn multiplication() {
        let t = Polynomial::t();
        assert_eq!(&t * &t, Polynomial::monomial(int(1), 2));
        let p = poly(&[(1, 1, 1), (3, 1, 3)]);
        assert_eq!(&p * &p, poly(&[(2, 1, 1), (4, 2, 3), (6, 1, 9)]));
        assert_eq!(&p * &Polynomial::zero(), Polynomial::zero());
        assert_eq!((&p * &p).degree(), p.degree() + p.degree());
    }

    #[test]
    fn derivative() {
        assert_eq!(poly(&[(3, 1, 3)]).derivative(), poly(&[(2, 1, 1)]));
        assert_eq!(Polynomial::constant(ratio(5, 7)).derivative(), Polynomial::zero());
        assert_eq!(
            poly(&[(1, 1, 1), (3, 1, 3), (5, 2, 15)]).derivative(),
            poly(&[(0, 1, 1), (2, 1, 1), (4, 2, 3)])
        );
    }

    #[test]
    fn integrate_from() {
        assert_eq!(poly(&[(2, 1, 1)]).integrate_from(&int(0)), poly(&[(3, 1, 3)]));
        assert_eq!(Polynomial::zero().integrate_from(&ratio(3, 4)), Polynomial::zero());
        assert_eq!(
            Polynomial::one().integrate_from(&ratio(1, 2)),
            poly(&[(1, 1, 1), (0, -1, 2)])
        );
    }

    #[test]
    fn definite_integral() {
        let (m1, p1) = (int(-1), int(1));
        assert_eq!(poly(&[(4, 1, 1)]).definite_integral(&m1, &p1), ratio(2, 5));
        assert_eq!(poly(&[(3, 1, 1)]).definite_integral(&m1, &p1), int(0));
        assert_eq!(Polynomial::t().definite_integral(&int(0), &p1), ratio(1, 2));
    }

    #[test]
    fn evaluation() {
        assert_eq!(poly(&[(1, 1, 1), (3, 1, 3)]).eval(&int(1)), ratio(4, 3));
        assert_eq!(Polynomial::zero().eval(&ratio(7, 3)), int(0));
        assert_eq!(Polynomial::zero().eval_f64(2.5), 0.0);
        // Oracle: exact rational evaluation at 1/2, then converted.
        let fourth = poly(&[(1, 1, 1), (3, 1, 3), (5, 2, 15), (7, 17, 315), (9, 62, 2835)]);
        let exact = to_f64(&fourth.eval(&ratio(1, 2)));
        assert!((fourth.eval_f64(0.5) - exact).abs() < 1e-15);
        assert!((exact - 0.546_297_7).abs() < 1e-7);
    }

    #[test]
    fn truncation() {
        let p = poly(&[(1, 1, 1), (3, 1, 3), (5, 2, 15)]);
        assert_eq!(p.truncate(3), poly(&[(1, 1, 1), (3, 1, 3)]));
        assert_eq!(p.truncate(5), p);
        assert_eq!(poly(&[(7, 1, 63)]).truncate(5), Polynomial::zero());
    }

    #[test]
    fn truncated_product_matches_full_product() {
        let p = poly(&[(0, 1, 2), (1, 1, 1), (3, -2, 7), (4, 1, 5)]);
        let q = poly(&[(1, 3, 1), (2, 1, 9), (5, 1, 1)]);
        for k in 0..12 {
            assert_eq!(p.mul_truncated(&q, k), (&p * &q).truncate(k));
        }
    }

    #[test]
    fn records() {
        let p = poly(&[(1, 1, 1), (3, -2, 25)]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[{"exp":1,"coeff":"1"},{"exp":3,"coeff":"-2/25"}]"#);
        let back: Polynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&Polynomial::zero()).unwrap(), "[]");
        let dup = [
            TermRecord { exp: 1, coeff: "1".into() },
            TermRecord { exp: 1, coeff: "2".into() },
        ];
        assert!(Polynomial::from_records(&dup).is_err());
        let neg = [TermRecord { exp: -1, coeff: "1".into() }];
        assert!(Polynomial::from_records(&neg).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[(1, 1, 1), (3, 1, 3)]).to_string(), "t + 1/3*t^3");
        assert_eq!(poly(&[(0, -1, 2), (3, -2, 25)]).to_string(), "-1/2 - 2/25*t^3");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }
}
