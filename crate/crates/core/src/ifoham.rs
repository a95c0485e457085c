//! Iterated first-order deformation (IFOHAM) and Picard iteration.
//!
//! IFOHAM reapplies the first-order deformation equation to the running
//! partial sum instead of expanding the whole homotopy:
//!
//! ```text
//! d/dt u_{m+1} = c0 · N[x_m],   u_{m+1}(t0) = 0,   x_m = u_0 + ... + u_m
//! ```
//!
//! With `N[x] = x' − f(t, x)` this is the same sequence as the weighted map
//! `x_{m+1} = (1 + c0) x_m − c0 (x0 + ∫_{t0}^t f(ξ, x_m) dξ)`, and at
//! `c0 = −1` it is exactly Picard iteration.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{Polynomial, Rational};
use crate::ham::{require_nonzero_c0, Method, SolutionSeries};
use crate::problem::Ivp;

fn require_initial_condition(ivp: &Ivp, x: &Polynomial) -> Result<()> {
    if &x.eval(ivp.t0()) != ivp.x0() {
        Err(Error::validation("iterate does not satisfy x(t0) = x0"))
    } else {
        Ok(())
    }
}

/// The correction `u_{m+1} = c0 · ∫_{t0}^t N[x_m]`.
pub fn ifoham_step(ivp: &Ivp, x_m: &Polynomial, c0: &Rational) -> Result<Polynomial> {
    require_nonzero_c0(c0)?;
    require_initial_condition(ivp, x_m)?;
    Ok(ivp_step(ivp, x_m, c0))
}

/// One Picard update `x0 + ∫_{t0}^t f(ξ, x(ξ)) dξ`.
pub fn picard_step(ivp: &Ivp, x: &Polynomial) -> Polynomial {
    let integral = ivp.f().substitute(x).integrate_from(ivp.t0());
    &integral + &Polynomial::constant(ivp.x0().clone())
}

/// `x_{m+1} = (1 + c0) x_m − c0 · picard_step(x_m)`.
pub fn weighted_step(ivp: &Ivp, x_m: &Polynomial, c0: &Rational) -> Result<Polynomial> {
    require_nonzero_c0(c0)?;
    require_initial_condition(ivp, x_m)?;
    let keep = x_m.scale(&(Rational::one() + c0));
    let pull = picard_step(ivp, x_m).scale(c0);
    Ok(&keep - &pull)
}

/// Yields the partial sums `x_0, x_1, ...` of IFOHAM (or of Picard
/// iteration when built with [`Iterates::picard`]).
#[derive(Clone, Debug)]
pub struct Iterates<'a> {
    ivp: &'a Ivp,
    c0: Option<Rational>,
    truncate_degree: Option<usize>,
    current: Option<Polynomial>,
}

impl<'a> Iterates<'a> {
    /// IFOHAM iterates.
    ///
    /// With `truncate_degree`, each new partial sum is cut to that degree
    /// before the next step and its constant term readjusted so that
    /// `x(t0) = x0` still holds. That is an approximation; the exact
    /// sequence needs `None`.
    pub fn ifoham(ivp: &'a Ivp, c0: &Rational, truncate_degree: Option<usize>) -> Result<Self> {
        require_nonzero_c0(c0)?;
        Ok(Iterates {
            ivp,
            c0: Some(c0.clone()),
            truncate_degree,
            current: None,
        })
    }

    pub fn picard(ivp: &'a Ivp, truncate_degree: Option<usize>) -> Self {
        Iterates {
            ivp,
            c0: None,
            truncate_degree,
            current: None,
        }
    }

    fn advance(&self, x: &Polynomial) -> Polynomial {
        let next = match &self.c0 {
            // Preconditions hold by construction: c0 != 0 and x(t0) = x0.
            Some(c0) => x + &ivp_step(self.ivp, x, c0),
            None => picard_step(self.ivp, x),
        };
        match self.truncate_degree {
            Some(max_degree) => truncate_keeping_initial_value(self.ivp, &next, max_degree),
            None => next,
        }
    }
}

fn ivp_step(ivp: &Ivp, x: &Polynomial, c0: &Rational) -> Polynomial {
    ivp.apply_n(x).integrate_from(ivp.t0()).scale(c0)
}

impl Iterator for Iterates<'_> {
    type Item = Polynomial;

    fn next(&mut self) -> Option<Polynomial> {
        let next = match &self.current {
            None => self.ivp.initial_guess().clone(),
            Some(x) => self.advance(x),
        };
        self.current = Some(next.clone());
        Some(next)
    }
}

/// Runs `order` IFOHAM steps from the initial guess. See
/// [`Iterates::ifoham`] for the meaning of `truncate_degree`.
pub fn ifoham_solve(
    ivp: &Ivp,
    c0: &Rational,
    order: usize,
    truncate_degree: Option<usize>,
) -> Result<SolutionSeries> {
    let sums = Iterates::ifoham(ivp, c0, truncate_degree)?.take(order + 1).collect();
    Ok(SolutionSeries::from_partial_sums(Method::Ifoham, Some(c0.clone()), ivp, sums))
}

fn truncate_keeping_initial_value(ivp: &Ivp, x: &Polynomial, max_degree: usize) -> Polynomial {
    let cut = x.truncate(max_degree);
    let drift = ivp.x0() - cut.eval(ivp.t0());
    if drift.is_zero() {
        cut
    } else {
        &cut + &Polynomial::constant(drift)
    }
}

/// Picard iterates `x_0 = u_0`, `x_{m+1} = picard_step(x_m)`.
pub fn picard_solve(ivp: &Ivp, order: usize) -> SolutionSeries {
    let sums = Iterates::picard(ivp, None).take(order + 1).collect();
    SolutionSeries::from_partial_sums(Method::Picard, None, ivp, sums)
}

/// `(1 + w)·alpha − w·beta`. For `w ∈ [−1, 0]` this is a convex combination
/// of `alpha` and `beta`, so its magnitude never exceeds `max(|alpha|, |beta|)`.
pub fn weighted_combination(alpha: f64, beta: f64, w: f64) -> f64 {
    (1.0 + w) * alpha - w * beta
}
