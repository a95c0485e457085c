//! IFOHAM iterates for the tangent problem at two values of the
//! convergence-control parameter, side by side with their residuals.
//!
//!     cargo run --example ifoham_tables

use ifoham::diagnostics::{residual_table, Interval};
use ifoham::exactmath::rational::ratio;
use ifoham::{ifoham_solve, Ivp, Method};

fn main() -> ifoham::Result<()> {
    let ivp = Ivp::tangent();
    for c0 in [ratio(-1, 1), ratio(-6, 5)] {
        println!("== c0 = {c0}");
        let series = ifoham_solve(&ivp, &c0, 4, None)?;
        for (k, u) in series.terms().iter().enumerate().take(4) {
            println!("u_{k} = {u}");
        }
        // u_4 has degree 31; print just its extreme terms.
        let u4 = &series.terms()[4];
        let (lo, hi) = (u4.terms().next().unwrap(), u4.terms().last().unwrap());
        println!("u_4 = {}*t^{} + ... + {}*t^{}  ({} terms)", lo.1, lo.0, hi.1, hi.0, u4.num_terms());

        let reports = residual_table(&ivp, Method::Ifoham, &c0, 4, &Interval::default(), None)?;
        let col: Vec<String> = reports.iter().map(|r| r.rendered()).collect();
        println!("E_0..E_4: {}\n", col.join("  "));
    }
    Ok(())
}
