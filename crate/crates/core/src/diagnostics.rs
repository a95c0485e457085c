//! Residuals, convergence-control sweeps and contraction bounds.
//!
//! The squared residual of an approximation `x` on `Ω = [lo, hi]` is
//! `E = ∫_Ω (x' − f(t, x))² dt`, computed exactly.

use std::io::Write;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmath::rational::{int, to_f64};
use crate::exactmath::{Polynomial, Rational};
use crate::ham::{require_nonzero_c0, HamTerms, Method, SolutionSeries};
use crate::ifoham::Iterates;
use crate::problem::Ivp;

/// Closed interval `[lo, hi]` with `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::validation("integration interval must satisfy lo < hi"));
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }
}

impl Default for Interval {
    /// `[-1, 1]`
    fn default() -> Self {
        Interval {
            lo: int(-1),
            hi: int(1),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub order: usize,
    pub exact: Rational,
    pub value: f64,
    /// Wall time spent producing the approximation (not the residual).
    pub cpu_seconds: f64,
}

impl ResidualReport {
    pub fn new(order: usize, exact: Rational, cpu_seconds: f64) -> Self {
        let value = to_f64(&exact);
        ResidualReport {
            order,
            exact,
            value,
            cpu_seconds,
        }
    }

    /// `E_m` with three significant figures, e.g. `4.00e-01`.
    pub fn rendered(&self) -> String {
        format_sci3(self.value)
    }
}

/// Exact `∫_Ω (N[x])² dt`.
pub fn squared_residual(ivp: &Ivp, x: &Polynomial, omega: &Interval) -> Rational {
    let r = ivp.apply_n(x);
    (&r * &r).definite_integral(omega.lo(), omega.hi())
}

/// Builds the partial-sum iterator of `method`. `c0` is ignored for Picard.
pub fn partial_sums<'a>(
    ivp: &'a Ivp,
    method: Method,
    c0: &Rational,
    truncate_degree: Option<usize>,
) -> Result<Box<dyn Iterator<Item = Polynomial> + Send + 'a>> {
    Ok(match method {
        Method::Ham => {
            let mut acc = Polynomial::zero();
            Box::new(HamTerms::new(ivp, c0)?.map(move |u| {
                acc = &acc + &u;
                acc.clone()
            }))
        }
        Method::Ifoham => Box::new(Iterates::ifoham(ivp, c0, truncate_degree)?),
        Method::Picard => Box::new(Iterates::picard(ivp, truncate_degree)),
    })
}

/// Runs `method` to `order`. `truncate_degree` applies to IFOHAM and Picard.
pub fn solve(
    ivp: &Ivp,
    method: Method,
    c0: &Rational,
    order: usize,
    truncate_degree: Option<usize>,
) -> Result<SolutionSeries> {
    match method {
        Method::Ham => crate::ham::ham_solve(ivp, c0, order),
        Method::Ifoham => crate::ifoham::ifoham_solve(ivp, c0, order, truncate_degree),
        Method::Picard => {
            let sums = Iterates::picard(ivp, truncate_degree).take(order + 1).collect();
            Ok(SolutionSeries::from_partial_sums(Method::Picard, None, ivp, sums))
        }
    }
}

/// Residual for each partial sum `x_0..x_{max_order}`, with the cumulative
/// time taken by the solver to reach that order.
pub fn residual_table(
    ivp: &Ivp,
    method: Method,
    c0: &Rational,
    max_order: usize,
    omega: &Interval,
    truncate_degree: Option<usize>,
) -> Result<Vec<ResidualReport>> {
    let (sums, times) = timed_partial_sums(ivp, method, c0, max_order, truncate_degree)?;
    Ok(sums
        .iter()
        .zip(times)
        .enumerate()
        .map(|(m, (x, secs))| ResidualReport::new(m, squared_residual(ivp, x, omega), secs))
        .collect())
}

/// Partial sums up to `max_order` and cumulative seconds to produce each.
pub fn timed_partial_sums(
    ivp: &Ivp,
    method: Method,
    c0: &Rational,
    max_order: usize,
    truncate_degree: Option<usize>,
) -> Result<(Vec<Polynomial>, Vec<f64>)> {
    let start = Instant::now();
    let mut sums = Vec::with_capacity(max_order + 1);
    let mut times = Vec::with_capacity(max_order + 1);
    for x in partial_sums(ivp, method, c0, truncate_degree)?.take(max_order + 1) {
        sums.push(x);
        times.push(if times.is_empty() { 0.0 } else { start.elapsed().as_secs_f64() });
    }
    Ok((sums, times))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub c0: Rational,
    pub order: usize,
    pub exact: Rational,
    pub value: f64,
}

/// Squared residual for every `(c0, order)` pair, sorted by `c0` then order.
pub fn c0_sweep(
    ivp: &Ivp,
    method: Method,
    grid: &[Rational],
    orders: &[usize],
    omega: &Interval,
) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(Error::validation("c0 grid is empty"));
    }
    if grid.iter().any(Zero::is_zero) {
        return Err(Error::validation("c0 grid must not contain 0"));
    }
    let Some(&max_order) = orders.iter().max() else {
        return Err(Error::validation("no orders requested"));
    };
    let mut orders = orders.to_vec();
    orders.sort_unstable();
    orders.dedup();

    let per_c0: Vec<Vec<SweepRow>> = grid
        .par_iter()
        .map(|c0| -> Result<Vec<SweepRow>> {
            let sums: Vec<Polynomial> = partial_sums(ivp, method, c0, None)?.take(max_order + 1).collect();
            Ok(orders
                .iter()
                .map(|&m| {
                    let exact = squared_residual(ivp, &sums[m], omega);
                    SweepRow {
                        c0: c0.clone(),
                        order: m,
                        value: to_f64(&exact),
                        exact,
                    }
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut rows: Vec<SweepRow> = per_c0.into_iter().flatten().collect();
    rows.sort_by(|a, b| a.c0.cmp(&b.c0).then(a.order.cmp(&b.order)));
    Ok(rows)
}

/// Rows of `order` with the smallest residual (all ties).
pub fn sweep_argmin(rows: &[SweepRow], order: usize) -> Vec<&SweepRow> {
    let at_order: Vec<&SweepRow> = rows.iter().filter(|r| r.order == order).collect();
    let Some(best) = at_order.iter().map(|r| &r.exact).min() else {
        return Vec::new();
    };
    at_order.iter().copied().filter(|r| &r.exact == best).collect()
}

/// `start, start + step, ...` up to and including `stop`.
pub fn rational_grid(start: &Rational, stop: &Rational, step: &Rational) -> Result<Vec<Rational>> {
    if !step.is_positive() {
        return Err(Error::validation("grid step must be positive"));
    }
    if start > stop {
        return Err(Error::validation("grid start must not exceed stop"));
    }
    let mut out = Vec::new();
    let mut c = start.clone();
    while &c <= stop {
        out.push(c.clone());
        c += step;
    }
    Ok(out)
}

/// Writes `c0,order,E` CSV with LF line endings and 17 significant digits.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    out.write_all(b"c0,order,E\n")?;
    for r in rows {
        writeln!(out, "{},{},{:.16e}", to_f64(&r.c0), r.order, r.value)?;
    }
    Ok(())
}

/// Scientific notation with 3 significant figures and a two-digit signed
/// exponent: `4.00e-01`, `1.70e-03`, `0.00e+00`.
pub fn format_sci3(v: f64) -> String {
    format_sci(v, 2)
}

pub(crate) fn format_sci(v: f64, decimals: usize) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let s = format!("{v:.decimals$e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// `min(a, b / M)`, the half-width of the interval on which the solution
/// is guaranteed to exist.
pub fn existence_radius(a: f64, b: f64, m: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && m > 0.0) {
        return Err(Error::validation("a, b and M must be positive"));
    }
    Ok(a.min(b / m))
}

/// Inputs of the contraction bound for the weighted iteration map
/// `F(x) = (1 + c0) x − c0 (x0 + ∫ f)` in the norm
/// `max |x(t)| e^{−L̃ |t − t0|}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContractionParams {
    /// Lipschitz constant `L` of `f` in `x`.
    pub lipschitz: f64,
    /// Norm weight `L̃ > L`.
    pub weight: f64,
    /// Existence radius `A`.
    pub radius: f64,
    pub c0: f64,
}

impl ContractionParams {
    /// Derives the radius from the box half-widths `a`, `b` and the bound `M`.
    pub fn from_box(a: f64, b: f64, m: f64, lipschitz: f64, weight: f64, c0: f64) -> Result<Self> {
        Ok(ContractionParams {
            lipschitz,
            weight,
            radius: existence_radius(a, b, m)?,
            c0,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContractionBound {
    pub k: f64,
    /// `0 < k < 1`
    pub contracts: bool,
}

/// `k = 1 + (1 − (L/L̃)(1 − e^{−L̃ A})) c0`.
// Negated comparisons so that NaN inputs are rejected too.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn contraction_constant(p: &ContractionParams) -> Result<ContractionBound> {
    let ContractionParams {
        lipschitz,
        weight,
        radius,
        c0,
    } = *p;
    if !(lipschitz > 0.0) {
        return Err(Error::validation("L must be positive"));
    }
    if !(weight > lipschitz) {
        return Err(Error::validation("L_tilde must exceed L"));
    }
    if !(radius > 0.0) {
        return Err(Error::validation("A must be positive"));
    }
    if !c0.is_finite() {
        return Err(Error::validation("c0 must be finite"));
    }
    let slope = 1.0 - (lipschitz / weight) * (-(-weight * radius).exp_m1());
    let k = 1.0 + slope * c0;
    Ok(ContractionBound {
        k,
        contracts: k > 0.0 && k < 1.0,
    })
}

/// For each order, the largest `|x_m(t) − reference(t)|` over the sample
/// points `(t, reference(t))`.
pub fn compare_reference(series: &SolutionSeries, reference: &[(f64, f64)]) -> Vec<f64> {
    series
        .partial_sums()
        .iter()
        .map(|x| {
            reference
                .iter()
                .map(|&(t, y)| (x.eval_f64(t) - y).abs())
                .fold(0.0, f64::max)
        })
        .collect()
}

/// Validates that `c0` is usable for `method`.
pub fn check_c0(method: Method, c0: &Rational) -> Result<()> {
    match method {
        Method::Picard => Ok(()),
        _ => require_nonzero_c0(c0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::ratio;
    use crate::problem::BivariatePolynomial;

    #[test]
    fn residual_of_first_terms() {
        let ivp = Ivp::tangent();
        let omega = Interval::default();
        let e0 = squared_residual(&ivp, &Polynomial::t(), &omega);
        assert_eq!(e0, ratio(2, 5));
        assert_eq!(format_sci3(to_f64(&e0)), "4.00e-01");
        let x1 = &Polynomial::t() + &Polynomial::monomial(ratio(1, 3), 3);
        let e1 = squared_residual(&ivp, &x1, &omega);
        // (2t⁴/3 + t⁶/9)² integrated termwise over [-1, 1]
        let oracle = int(2) * (ratio(4, 81) + ratio(4, 297) + ratio(1, 1053));
        assert_eq!(e1, oracle);
        assert_eq!(format_sci3(to_f64(&e1)), "1.28e-01");
    }

    #[test]
    fn residual_zero_for_exact_solution() {
        let f = BivariatePolynomial::from_terms([(1, 0, int(3))]).unwrap();
        let x = Polynomial::monomial(ratio(3, 2), 2);
        let ivp = Ivp::new(f, int(0), int(0), Some(x.clone())).unwrap();
        assert!(squared_residual(&ivp, &x, &Interval::default()).is_zero());
    }

    #[test]
    fn degenerate_interval_rejected() {
        assert!(Interval::new(int(1), int(1)).is_err());
        assert!(Interval::new(int(2), int(1)).is_err());
    }

    #[test]
    fn sci_formatting() {
        assert_eq!(format_sci3(0.4), "4.00e-01");
        assert_eq!(format_sci3(0.0017), "1.70e-03");
        assert_eq!(format_sci3(0.0), "0.00e+00");
        assert_eq!(format_sci3(123456.0), "1.23e+05");
        assert_eq!(format_sci3(-5.45e-6), "-5.45e-06");
        assert_eq!(format_sci3(1e-120), "1.00e-120");
    }

    #[test]
    fn table_one_residuals() {
        let rows = residual_table(&Ivp::tangent(), Method::Ham, &int(-1), 4, &Interval::default(), None).unwrap();
        let rendered: Vec<String> = rows.iter().map(ResidualReport::rendered).collect();
        assert_eq!(rendered, ["4.00e-01", "1.28e-01", "3.38e-02", "7.88e-03", "1.70e-03"]);
        assert_eq!(rows[0].cpu_seconds, 0.0);
        assert!(rows.windows(2).all(|w| w[0].cpu_seconds <= w[1].cpu_seconds));
    }

    #[test]
    fn grids() {
        let g = rational_grid(&ratio(-13, 10), &ratio(-1, 20), &ratio(1, 20)).unwrap();
        assert_eq!(g.len(), 26);
        assert_eq!(g[0], ratio(-13, 10));
        assert_eq!(g[25], ratio(-1, 20));
        assert_eq!(rational_grid(&int(-1), &int(-1), &int(1)).unwrap(), vec![int(-1)]);
        assert!(rational_grid(&int(0), &int(1), &int(0)).is_err());
    }

    #[test]
    fn sweep_rejects_zero_and_sorts() {
        let ivp = Ivp::tangent();
        let omega = Interval::default();
        assert!(c0_sweep(&ivp, Method::Ham, &[int(-1), int(0)], &[1], &omega).is_err());
        assert!(c0_sweep(&ivp, Method::Ham, &[], &[1], &omega).is_err());
        let rows = c0_sweep(&ivp, Method::Ifoham, &[ratio(-1, 2), int(-1)], &[2, 0, 1], &omega).unwrap();
        let keys: Vec<(Rational, usize)> = rows.iter().map(|r| (r.c0.clone(), r.order)).collect();
        assert_eq!(
            keys,
            vec![(int(-1), 0), (int(-1), 1), (int(-1), 2), (ratio(-1, 2), 0), (ratio(-1, 2), 1), (ratio(-1, 2), 2)]
        );
        let best = sweep_argmin(&rows, 2);
        assert_eq!(best.len(), 1);
        assert_eq!(best[0].c0, int(-1));
    }

    #[test]
    fn sweep_csv_layout() {
        let rows = vec![SweepRow { c0: ratio(-13, 10), order: 4, exact: ratio(2, 5), value: 0.4 }];
        let mut buf = Vec::new();
        write_sweep_csv(&rows, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "c0,order,E\n-1.3,4,4.0000000000000002e-1\n");
    }

    #[test]
    fn radius() {
        assert_eq!(existence_radius(2.0, 1.0, 4.0).unwrap(), 0.25);
        assert_eq!(existence_radius(1.0, 10.0, 1.0).unwrap(), 1.0);
        assert_eq!(existence_radius(1.0, 2.0, 2.0).unwrap(), 1.0);
        assert!(existence_radius(0.0, 1.0, 1.0).is_err());
        assert!(existence_radius(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn contraction() {
        let p = ContractionParams { lipschitz: 1.0, weight: 2.0, radius: 1.0, c0: -1.0 };
        let bound = contraction_constant(&p).unwrap();
        // (1/2)(1 − e⁻²) = 0.43233235838169365...
        assert!((bound.k - 0.432_332_358_381_693_65).abs() < 1e-15);
        assert!(bound.contracts);
        let near_zero = contraction_constant(&ContractionParams { c0: -1e-12, ..p }).unwrap();
        assert!((near_zero.k - 1.0).abs() < 1e-11);
        let ks: Vec<f64> = [-1.0, -0.75, -0.5, -0.25]
            .iter()
            .map(|&c0| contraction_constant(&ContractionParams { c0, ..p }).unwrap().k)
            .collect();
        assert!(ks.windows(2).all(|w| w[0] < w[1]));
        assert!(contraction_constant(&ContractionParams { weight: 0.5, ..p }).is_err());
        assert!(contraction_constant(&ContractionParams { lipschitz: 0.0, ..p }).is_err());
        assert!(contraction_constant(&ContractionParams { radius: 0.0, ..p }).is_err());
        let positive = contraction_constant(&ContractionParams { c0: 0.5, ..p }).unwrap();
        assert!(!positive.contracts);
    }

    #[test]
    fn reference_comparison() {
        let s = crate::ham::ham_solve(&Ivp::tangent(), &int(-1), 4).unwrap();
        let reference: Vec<(f64, f64)> = [-0.5f64, 0.0, 0.5].iter().map(|&t| (t, t.tan())).collect();
        let errs = compare_reference(&s, &reference);
        assert!((errs[4] - 4.8e-6).abs() < 0.1e-6, "{}", errs[4]);
        assert!(errs.windows(2).all(|w| w[1] <= w[0]));
        let origin = compare_reference(&s, &[(0.0, 0.0)]);
        assert_eq!(origin[0], 0.0);
    }
}
