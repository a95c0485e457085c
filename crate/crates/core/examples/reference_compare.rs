//! Pointwise error of HAM partial sums against tan t, from a problem file.
//!
//!     cargo run --example reference_compare

use ifoham::diagnostics::compare_reference;
use ifoham::exactmath::rational::int;
use ifoham::problem::load_problem;
use ifoham::ham_solve;

fn main() -> ifoham::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/problems/tan.json");
    let ivp = load_problem(path.as_ref())?;
    let reference: Vec<(f64, f64)> = (-10..=10).map(|i| f64::from(i) / 20.0).map(|t| (t, t.tan())).collect();

    let series = ham_solve(&ivp, &int(-1), 6)?;
    for (m, err) in compare_reference(&series, &reference).iter().enumerate() {
        println!("m = {m}: max |x_m - tan| on [-0.5, 0.5] = {err:.3e}");
    }
    Ok(())
}
