//! Solve x' = 1 + x^2, x(0) = 0 with the homotopy analysis method and watch
//! the partial sums reproduce the Maclaurin series of tan t.
//!
//!     cargo run --example tan_ham

use ifoham::diagnostics::{residual_table, Interval};
use ifoham::exactmath::rational::int;
use ifoham::{ham_solve, Ivp, Method};

fn main() -> ifoham::Result<()> {
    let ivp = Ivp::tangent();
    let series = ham_solve(&ivp, &int(-1), 7)?;

    for (k, u) in series.terms().iter().enumerate() {
        println!("u_{k} = {u}");
    }
    println!("\nx_7 = {}", series.approximation(7));

    println!("\nm  E_m");
    for row in residual_table(&ivp, Method::Ham, &int(-1), 7, &Interval::default(), None)? {
        println!("{}  {}", row.order, row.rendered());
    }
    Ok(())
}
