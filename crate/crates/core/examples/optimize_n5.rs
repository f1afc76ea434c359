//! Search all supporting directions of the regular 5-simplex for the largest
//! mirror-hull ratio and compare with the rotated construction.

use std::time::Instant;

use simplex_mirror::cases::{g5_max_value, x_of_phi, phi_max};
use simplex_mirror::{optimize, Objective};

fn main() -> simplex_mirror::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let t = Instant::now();
    let res = optimize(n, 20_000, 42, Objective::Reflection)?;
    println!("n = {n}  ({:.2?})", t.elapsed());
    println!("best ratio   {:.15}", res.best_ratio);
    println!("hull oracle  {:.15}", res.oracle_ratio);
    println!("touching {:?}, upper facets {}, x = {:.9}", res.touching, res.upper_k, res.x);
    println!("angle to nearest u0: {:.3e}", res.angle_to_u0);
    println!("{}", res.label);
    for c in &res.candidate_table {
        println!("  {:<8} {:.12}", c.label, c.ratio);
    }
    if n == 5 {
        println!("closed form  {:.15}", 10.0 * g5_max_value());
        println!("x at phi_max {:.9}", x_of_phi(phi_max()));
    }
    Ok(())
}
