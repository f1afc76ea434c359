//! Exact convex hull volumes by facet enumeration.

use itertools::Itertools;
use simplex_mirror::hull::hull_volume;
use simplex_mirror::simplex::regular_simplex_volume;
use simplex_mirror::{build_simplex, Vector};

fn main() -> simplex_mirror::Result<()> {
    for d in 1..=4 {
        let corners: Vec<Vector> = (0..d)
            .map(|_| [0.0, 1.0])
            .multi_cartesian_product()
            .map(Vector::new)
            .collect();
        let p = hull_volume(&corners, d)?;
        println!("unit {d}-cube: volume {:.12}, {} facets", p.volume, p.facets.len());
    }

    for n in 2..=6 {
        let s = build_simplex(n)?;
        let p = hull_volume(s.vertices(), n)?;
        println!(
            "regular {n}-simplex: volume {:.6e} (closed form {:.6e})",
            p.volume,
            regular_simplex_volume(n)
        );
    }

    // a flat point set is reported, not rejected
    let flat = vec![Vector::from([0.0, 0.0, 0.0]), Vector::from([1.0, 0.0, 0.0]), Vector::from([0.0, 1.0, 0.0]), Vector::from([1.0, 1.0, 0.0])];
    let p = hull_volume(&flat, 3)?;
    println!("flat square in R^3: volume {}, degenerate {}", p.volume, p.degenerate);
    Ok(())
}
