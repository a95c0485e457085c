//! Scan the convergence-control parameter and locate the minimum of E_4.
//!
//!     cargo run --release --example c0_sweep

use ifoham::diagnostics::{c0_sweep, rational_grid, sweep_argmin, write_sweep_csv, Interval};
use ifoham::exactmath::rational::ratio;
use ifoham::{Ivp, Method};

fn main() -> ifoham::Result<()> {
    let ivp = Ivp::tangent();
    let grid = rational_grid(&ratio(-13, 10), &ratio(-1, 20), &ratio(1, 20))?;
    let omega = Interval::default();

    for method in [Method::Ham, Method::Ifoham] {
        let rows = c0_sweep(&ivp, method, &grid, &[4], &omega)?;
        let best: Vec<String> = sweep_argmin(&rows, 4).iter().map(|r| format!("{} (E_4 = {:.3e})", r.c0, r.value)).collect();
        println!("{method}: argmin c0 = {}", best.join(", "));
    }

    let rows = c0_sweep(&ivp, Method::Ifoham, &grid[..4], &[0, 1, 2], &omega)?;
    println!();
    write_sweep_csv(&rows, std::io::stdout().lock())?;
    Ok(())
}
