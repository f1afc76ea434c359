//! Ratio along the rotation family of the 5-simplex, printed as CSV.

use simplex_mirror::cases::phi_max;
use simplex_mirror::report::{sweep_rows, Family};

fn main() -> simplex_mirror::Result<()> {
    let points: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(91);
    let rows = sweep_rows(Family::Phi, 5, points)?;
    println!("param,ratio,k_upper,x");
    for r in &rows {
        println!("{:.6},{:.12},{},{:.9}", r.param, r.ratio, r.k_upper, r.x);
    }
    let best = rows.iter().max_by(|a, b| a.ratio.total_cmp(&b.ratio)).unwrap();
    eprintln!("grid max {:.9} at phi {:.6}; phi_max = {:.6}", best.ratio, best.param, phi_max());
    Ok(())
}
