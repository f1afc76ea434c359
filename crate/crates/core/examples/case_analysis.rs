//! The quartic case table and the one-dimensional maximizations behind the
//! small-dimension bound.

use simplex_mirror::cases::{case_table, g5, maximize_g4, maximize_g5, maximize_h5, phi_max, substitution_bridge, x_of_phi};

fn main() -> simplex_mirror::Result<()> {
    println!("{:>2} {:>2} {:>10} {:>10}  roots (x^2)", "n", "k", "A", "B");
    for c in case_table(8) {
        let roots = match c.real_roots {
            Some((a, b)) => format!("{:.6}, {:.6}", a.min(b), a.max(b)),
            None => "-".into(),
        };
        println!(
            "{:>2} {:>2} {:>10.6} {:>10.6}  {roots}{}",
            c.n,
            c.k,
            c.a,
            c.b,
            if c.feasible { "  feasible" } else { "" }
        );
    }

    let g4 = maximize_g4();
    println!("\ng4: concave stretch max {:.6} at {:.6}", g4.concave_stretch.value, g4.concave_stretch.x);
    println!("g4: feasible interval max {:.6} at {:.6}", g4.feasible_interval.value, g4.feasible_interval.x);
    let h5 = maximize_h5();
    println!("h5: max {:.6} at {:.6}, doubled {:.6}", h5.value, h5.x, 2.0 * h5.value);
    let g = maximize_g5();
    println!("g5: max {:.9} at phi {:.9} (phi_max {:.9})", g.value, g.x, phi_max());

    let b = substitution_bridge(x_of_phi(phi_max()))?;
    println!("endpoint form {:.12} vs trig form {:.12} (g5 {:.12})", b.endpoint_form, b.trig_form, g5(phi_max()));
    Ok(())
}
