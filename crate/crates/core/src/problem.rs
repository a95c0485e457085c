//! Problem model: `x' = f(t, x)`, `x(t0) = x0`, with `f` a polynomial in
//! `t` and `x`, plus the initial guess the solvers start from.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{format_rational, parse_rational, Polynomial, Rational, TermRecord};

/// `f(t, x) = Σ t_exp/x_exp coeff · t^t_exp · x^x_exp`.
///
/// Stored as one polynomial in `t` per power of `x`, so
/// `f(t, x) = Σ_j a_j(t) x^j` with `a_j = by_x_power[j]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePolynomial {
    by_x_power: Vec<Polynomial>,
}

/// One `{"t_exp", "x_exp", "coeff"}` entry of a problem file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BivariateTerm {
    pub t_exp: i64,
    pub x_exp: i64,
    pub coeff: String,
}

impl BivariatePolynomial {
    /// Builds `f` from `(t_exp, x_exp, coeff)` triples. Repeated exponent
    /// pairs are an error; zero coefficients are dropped.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut seen = std::collections::BTreeSet::new();
        let mut by_x_power: Vec<Polynomial> = Vec::new();
        for (t_exp, x_exp, coeff) in terms {
            if !seen.insert((t_exp, x_exp)) {
                return Err(Error::validation(format!(
                    "duplicate term t^{t_exp} x^{x_exp} in f"
                )));
            }
            if by_x_power.len() <= x_exp {
                by_x_power.resize(x_exp + 1, Polynomial::zero());
            }
            by_x_power[x_exp] = &by_x_power[x_exp] + &Polynomial::monomial(coeff, t_exp);
        }
        Ok(Self::from_x_coefficients(by_x_power))
    }

    /// `f(t, x) = Σ_j coeffs[j](t) x^j`
    pub fn from_x_coefficients(mut by_x_power: Vec<Polynomial>) -> Self {
        while by_x_power.last().is_some_and(Polynomial::is_zero) {
            by_x_power.pop();
        }
        BivariatePolynomial { by_x_power }
    }

    /// Coefficient polynomial of `x^j`.
    pub fn x_coefficient(&self, j: usize) -> Polynomial {
        self.by_x_power.get(j).cloned().unwrap_or_default()
    }

    /// Highest power of `x` with a nonzero coefficient (0 for `f = 0`).
    pub fn x_degree(&self) -> usize {
        self.by_x_power.len().saturating_sub(1)
    }

    /// Nonzero terms as `(t_exp, x_exp, coeff)`, sorted by `x_exp` then `t_exp`.
    pub fn terms(&self) -> Vec<(usize, usize, Rational)> {
        self.by_x_power
            .iter()
            .enumerate()
            .flat_map(|(j, a)| a.terms().map(move |(i, c)| (i, j, c.clone())))
            .collect()
    }

    /// Exact composition `f(t, p(t))`.
    pub fn substitute(&self, p: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        let mut power = Polynomial::one();
        for (j, a) in self.by_x_power.iter().enumerate() {
            if j > 0 {
                power = &power * p;
            }
            if !a.is_zero() {
                acc = &acc + &(a * &power);
            }
        }
        acc
    }

    /// Coefficients `[c_0, ..., c_order]` of `q^j` in `f(t, Σ_k u_k q^k)`.
    ///
    /// All products in `q` are truncated at `order`; missing `u_k` count as
    /// zero.
    pub fn substitute_q_series(&self, u: &[Polynomial], order: usize) -> Vec<Polynomial> {
        let len = order + 1;
        let phi: Vec<Polynomial> = (0..len).map(|k| u.get(k).cloned().unwrap_or_default()).collect();
        let mut out = vec![Polynomial::zero(); len];
        let mut power = q_series_one(len);
        for (j, a) in self.by_x_power.iter().enumerate() {
            if j > 0 {
                power = q_series_mul(&power, &phi);
            }
            if a.is_zero() {
                continue;
            }
            for (slot, coeff) in out.iter_mut().zip(&power) {
                if !coeff.is_zero() {
                    *slot = &*slot + &(a * coeff);
                }
            }
        }
        out
    }

    pub fn to_records(&self) -> Vec<BivariateTerm> {
        self.terms()
            .into_iter()
            .map(|(i, j, c)| BivariateTerm {
                t_exp: i as i64,
                x_exp: j as i64,
                coeff: format_rational(&c),
            })
            .collect()
    }

    pub fn from_records(records: &[BivariateTerm]) -> Result<Self> {
        let mut terms = Vec::with_capacity(records.len());
        for rec in records {
            let t_exp = usize::try_from(rec.t_exp)
                .map_err(|_| Error::validation(format!("negative t_exp {} in f", rec.t_exp)))?;
            let x_exp = usize::try_from(rec.x_exp)
                .map_err(|_| Error::validation(format!("negative x_exp {} in f", rec.x_exp)))?;
            terms.push((t_exp, x_exp, parse_rational(&rec.coeff)?));
        }
        Self::from_terms(terms)
    }
}

fn q_series_one(len: usize) -> Vec<Polynomial> {
    let mut s = vec![Polynomial::zero(); len];
    s[0] = Polynomial::one();
    s
}

/// Product of two series in `q` with polynomial coefficients, truncated to
/// the length of `a`.
fn q_series_mul(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let len = a.len();
    (0..len)
        .map(|n| {
            (0..=n)
                .filter(|&i| i < b.len() && !a[n - i].is_zero() && !b[i].is_zero())
                .fold(Polynomial::zero(), |acc, i| &acc + &(&a[n - i] * &b[i]))
        })
        .collect()
}

/// Initial value problem `x' = f(t, x)`, `x(t0) = x0`, with the initial
/// guess `u_0` used by every solver. The guess always satisfies
/// `u_0(t0) = x0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ivp {
    f: BivariatePolynomial,
    t0: Rational,
    x0: Rational,
    initial_guess: Polynomial,
}

impl Ivp {
    /// Without a guess, `u_0` is the constant `x0`.
    pub fn new(
        f: BivariatePolynomial,
        t0: Rational,
        x0: Rational,
        initial_guess: Option<Polynomial>,
    ) -> Result<Self> {
        let initial_guess = initial_guess.unwrap_or_else(|| Polynomial::constant(x0.clone()));
        let at_t0 = initial_guess.eval(&t0);
        if at_t0 != x0 {
            return Err(Error::validation(format!(
                "initial guess evaluates to {} at t0 = {}, expected x0 = {}",
                format_rational(&at_t0),
                format_rational(&t0),
                format_rational(&x0)
            )));
        }
        Ok(Ivp {
            f,
            t0,
            x0,
            initial_guess,
        })
    }

    /// `x' = 1 + x²`, `x(0) = 0`, guess `u_0 = t`; exact solution `tan t`.
    pub fn tangent() -> Self {
        let f = BivariatePolynomial::from_x_coefficients(vec![
            Polynomial::one(),
            Polynomial::zero(),
            Polynomial::one(),
        ]);
        Ivp::new(f, Rational::zero(), Rational::zero(), Some(Polynomial::t()))
            .expect("u_0 = t vanishes at t0 = 0")
    }

    pub fn f(&self) -> &BivariatePolynomial {
        &self.f
    }

    pub fn t0(&self) -> &Rational {
        &self.t0
    }

    pub fn x0(&self) -> &Rational {
        &self.x0
    }

    pub fn initial_guess(&self) -> &Polynomial {
        &self.initial_guess
    }

    /// Same problem with a different initial guess.
    pub fn with_initial_guess(&self, guess: Polynomial) -> Result<Self> {
        Ivp::new(self.f.clone(), self.t0.clone(), self.x0.clone(), Some(guess))
    }

    /// The nonlinear operator `N[x] = x' − f(t, x)`.
    pub fn apply_n(&self, x: &Polynomial) -> Polynomial {
        &x.derivative() - &self.f.substitute(x)
    }

    /// Serializes to the problem-file schema (guess always written).
    pub fn to_json(&self) -> String {
        let file = ProblemFile {
            t0: format_rational(&self.t0),
            x0: format_rational(&self.x0),
            f: self.f.to_records(),
            initial_guess: Some(self.initial_guess.to_records()),
        };
        serde_json::to_string_pretty(&file).expect("problem file serializes")
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    t0: String,
    x0: String,
    f: Vec<BivariateTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    initial_guess: Option<Vec<TermRecord>>,
}

/// Parses a JSON problem file.
pub fn parse_problem(text: &str) -> Result<Ivp> {
    let file: ProblemFile = serde_json::from_str(text)?;
    let f = BivariatePolynomial::from_records(&file.f)?;
    let t0 = parse_rational(&file.t0)?;
    let x0 = parse_rational(&file.x0)?;
    let guess = file
        .initial_guess
        .map(|records| Polynomial::from_records(&records))
        .transpose()?;
    Ivp::new(f, t0, x0, guess)
}

pub fn load_problem(path: &std::path::Path) -> Result<Ivp> {
    parse_problem(&std::fs::read_to_string(path)?)
}
