//! Evaluate the mirror-hull ratio for a few supporting directions and compare
//! the closed form with the hull oracle.

use simplex_mirror::hull::hull_ratio;
use simplex_mirror::{build_simplex, ratio_formula, support_from_direction, Vector};

fn main() -> simplex_mirror::Result<()> {
    let s = build_simplex(4)?;
    let mut dirs = vec![("u0".to_string(), s.facet_normal(0)?.clone())];
    for r in 1..4 {
        dirs.push((format!("r={r}"), s.r_family_normal(r)?));
    }
    dirs.push(("tilted".into(), Vector::from([0.3, -0.2, 0.9, 0.1]).normalized().unwrap()));

    println!("{:<8} {:>14} {:>14} {:>3} {:>9}  touching", "dir", "formula", "hull", "k", "x");
    for (label, u) in dirs {
        let h = support_from_direction(&s, &u)?;
        let rep = ratio_formula(&s, &h)?;
        println!(
            "{label:<8} {:>14.10} {:>14.10} {:>3} {:>9.5}  {:?}",
            rep.ratio,
            hull_ratio(&s, &h)?,
            rep.k,
            rep.x,
            rep.touching
        );
    }
    Ok(())
}
