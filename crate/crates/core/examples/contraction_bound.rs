//! Contraction constant of the IFOHAM operator in the weighted norm, as a
//! function of c0.
//!
//!     cargo run --example contraction_bound

use ifoham::diagnostics::{contraction_constant, existence_radius, ContractionParams};

fn main() -> ifoham::Result<()> {
    // |x| <= b on |t| <= a with |f| <= M.
    let (a, b, m) = (2.0, 1.0, 4.0);
    let radius = existence_radius(a, b, m)?;
    println!("A = {radius}");

    for c0 in [-1.0, -0.75, -0.5, -0.25, 0.25] {
        let p = ContractionParams { lipschitz: 1.0, weight: 2.0, radius, c0 };
        let bound = contraction_constant(&p)?;
        println!("c0 = {c0:>5}: k = {:.6}  contraction: {}", bound.k, bound.contracts);
    }
    Ok(())
}
