//! IFOHAM with c0 = -1 is Picard iteration, and for any c0 the IFOHAM partial
//! sums follow the weighted map x -> (1 + c0) x - c0 P[x].
//!
//!     cargo run --example picard_equivalence

use ifoham::exactmath::rational::{int, ratio};
use ifoham::{ifoham_solve, picard_solve, weighted_step, BivariatePolynomial, Ivp};

fn main() -> ifoham::Result<()> {
    // x' = t + x^2, x(0) = 1
    let f = BivariatePolynomial::from_terms([(1, 0, int(1)), (0, 2, int(1))])?;
    let ivp = Ivp::new(f, int(0), int(1), None)?;

    let picard = picard_solve(&ivp, 4);
    let ifo = ifoham_solve(&ivp, &int(-1), 4, None)?;
    for (m, (p, q)) in picard.partial_sums().iter().zip(ifo.partial_sums()).enumerate() {
        println!("m = {m}: equal = {}, degree {:?}", p == q, p.degree());
    }

    let c0 = ratio(-1, 2);
    let ifo = ifoham_solve(&ivp, &c0, 4, None)?;
    let mut x = ivp.initial_guess().clone();
    for (m, expected) in ifo.partial_sums().iter().enumerate().skip(1) {
        x = weighted_step(&ivp, &x, &c0)?;
        println!("c0 = {c0}, m = {m}: weighted map agrees = {}", &x == expected);
    }
    Ok(())
}
