//! Rejection-sampling volume estimates against exact hull volumes.

use simplex_mirror::hull::{hull_volume, mirrored_point_set, monte_carlo_volume};
use simplex_mirror::remark::{closed_form, remark_fixture};
use simplex_mirror::{build_simplex, support_from_direction};

fn main() -> simplex_mirror::Result<()> {
    let samples = 1_000_000;
    for n in 2..=6 {
        let s = build_simplex(n)?;
        let h = support_from_direction(&s, s.facet_normal(0)?)?;
        let p = hull_volume(&mirrored_point_set(&s, &h)?, n)?;
        let est = monte_carlo_volume(&p, samples, 7)?;
        println!(
            "n={n} mirror hull at u0: exact {:.6e}  estimate {:.6e} +- {:.1e}  z = {:+.2}",
            p.volume,
            est.estimate,
            est.stderr,
            est.z_score(p.volume)
        );
    }
    let p = hull_volume(&remark_fixture().optimal_vertices_5d(), 5)?;
    let est = monte_carlo_volume(&p, samples, 7)?;
    println!(
        "11-vertex optimum: exact {:.6e}  estimate {:.6e} +- {:.1e}  z = {:+.2}",
        closed_form::total(),
        est.estimate,
        est.stderr,
        est.z_score(closed_form::total())
    );
    Ok(())
}
