//! Regular unit-edge simplices and their closed-form constants.

use simplex_mirror::simplex::closed_form;
use simplex_mirror::build_simplex;

fn main() -> simplex_mirror::Result<()> {
    for n in 2..=8 {
        let s = build_simplex(n)?;
        let mut max_edge_err = 0.0f64;
        for (i, a) in s.vertices().iter().enumerate() {
            for b in &s.vertices()[i + 1..] {
                max_edge_err = max_edge_err.max((a.distance(b) - 1.0).abs());
            }
        }
        println!(
            "n={n}  vol={:.6e}  |s|={:.6} (closed {:.6})  height={:.6}  <u_0,u_1>={:+.6}  edge err {:.1e}",
            s.volume(),
            s.s().norm(),
            closed_form::s_norm(n),
            s.height(),
            s.facet_normal(0)?.dot(s.facet_normal(1)?),
            max_edge_err
        );
    }

    let s = build_simplex(3)?;
    println!("\nvertices of the 3-simplex:");
    for v in s.vertices() {
        println!("  {:?}", v.coords());
    }
    Ok(())
}
