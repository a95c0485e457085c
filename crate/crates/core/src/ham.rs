//! Classic homotopy analysis with the linear operator `d/dt`.
//!
//! The homotopy series `φ(t; q) = Σ u_n(t) q^n` is built term by term from
//! the high-order deformation equations
//!
//! ```text
//! d/dt [u_n − χ_n u_{n−1}] = c0 · D_{n−1}[N[φ]],   χ_1 = 0, χ_n = 1 (n ≥ 2)
//! ```
//!
//! where `D_k` extracts the coefficient of `q^k`. Each `u_n` for `n ≥ 1`
//! vanishes at `t0`, so every partial sum carries the initial condition of
//! the guess `u_0`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Polynomial, Rational};
use crate::problem::Ivp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Ham,
    Ifoham,
    Picard,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Ham => "ham",
            Method::Ifoham => "ifoham",
            Method::Picard => "picard",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ham" => Ok(Method::Ham),
            "ifoham" => Ok(Method::Ifoham),
            "picard" => Ok(Method::Picard),
            other => Err(Error::validation(format!("unknown method {other:?}"))),
        }
    }
}

/// Terms `u_0..u_m` of a series solution together with the partial sums
/// `x_m = u_0 + ... + u_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSeries {
    method: Method,
    c0: Option<Rational>,
    terms: Vec<Polynomial>,
    partial_sums: Vec<Polynomial>,
    ivp: Ivp,
}

impl SolutionSeries {
    pub(crate) fn from_terms(method: Method, c0: Option<Rational>, ivp: &Ivp, terms: Vec<Polynomial>) -> Self {
        let mut partial_sums = Vec::with_capacity(terms.len());
        let mut acc = Polynomial::zero();
        for u in &terms {
            acc = &acc + u;
            partial_sums.push(acc.clone());
        }
        SolutionSeries {
            method,
            c0,
            terms,
            partial_sums,
            ivp: ivp.clone(),
        }
    }

    pub(crate) fn from_partial_sums(
        method: Method,
        c0: Option<Rational>,
        ivp: &Ivp,
        partial_sums: Vec<Polynomial>,
    ) -> Self {
        let terms = partial_sums
            .iter()
            .enumerate()
            .map(|(m, x)| if m == 0 { x.clone() } else { x - &partial_sums[m - 1] })
            .collect();
        SolutionSeries {
            method,
            c0,
            terms,
            partial_sums,
            ivp: ivp.clone(),
        }
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Convergence control parameter; `None` for Picard iteration.
    pub fn c0(&self) -> Option<&Rational> {
        self.c0.as_ref()
    }

    pub fn terms(&self) -> &[Polynomial] {
        &self.terms
    }

    pub fn partial_sums(&self) -> &[Polynomial] {
        &self.partial_sums
    }

    pub fn ivp(&self) -> &Ivp {
        &self.ivp
    }

    /// Highest order `m` computed.
    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    /// `x_m`, the m-th order approximate solution.
    pub fn approximation(&self, m: usize) -> &Polynomial {
        &self.partial_sums[m]
    }
}

pub(crate) fn require_nonzero_c0(c0: &Rational) -> Result<()> {
    if c0.is_zero() {
        Err(Error::validation("c0 must be nonzero"))
    } else {
        Ok(())
    }
}

/// `D_{n−1}[N[φ]] = u'_{n−1} − D_{n−1}[f(t, φ)]`, using `u_0..u_{n−1}`.
///
/// For `n = 1` this is `N[u_0]`.
pub fn ham_rhs_term(ivp: &Ivp, u: &[Polynomial], n: usize) -> Polynomial {
    assert!(n >= 1 && u.len() >= n, "need u_0..u_{{n-1}} for n >= 1");
    let k = n - 1;
    let f_coeff = ivp.f().substitute_q_series(&u[..n], k).swap_remove(k);
    &u[k].derivative() - &f_coeff
}

/// Yields `u_0, u_1, ...` of the homotopy series one term at a time.
#[derive(Clone, Debug)]
pub struct HamTerms<'a> {
    ivp: &'a Ivp,
    c0: Rational,
    terms: Vec<Polynomial>,
}

impl<'a> HamTerms<'a> {
    pub fn new(ivp: &'a Ivp, c0: &Rational) -> Result<Self> {
        require_nonzero_c0(c0)?;
        Ok(HamTerms {
            ivp,
            c0: c0.clone(),
            terms: Vec::new(),
        })
    }

    fn next_term(&self) -> Polynomial {
        let n = self.terms.len();
        if n == 0 {
            return self.ivp.initial_guess().clone();
        }
        let rhs = ham_rhs_term(self.ivp, &self.terms, n);
        let mut u_n = rhs.integrate_from(self.ivp.t0()).scale(&self.c0);
        if n >= 2 {
            u_n = &u_n + &self.terms[n - 1];
        }
        debug_assert!(u_n.eval(self.ivp.t0()).is_zero());
        u_n
    }
}

impl Iterator for HamTerms<'_> {
    type Item = Polynomial;

    fn next(&mut self) -> Option<Polynomial> {
        let u = self.next_term();
        self.terms.push(u.clone());
        Some(u)
    }
}

/// Solves the deformation equations up to `order`.
pub fn ham_solve(ivp: &Ivp, c0: &Rational, order: usize) -> Result<SolutionSeries> {
    let terms = HamTerms::new(ivp, c0)?.take(order + 1).collect();
    Ok(SolutionSeries::from_terms(Method::Ham, Some(c0.clone()), ivp, terms))
}
