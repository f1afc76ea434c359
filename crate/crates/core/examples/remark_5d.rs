//! The five-dimensional construction that beats 2n: rotated simplex, its
//! eleven-vertex mirror hull and the pyramid decomposition.

use simplex_mirror::hull::hull_volume;
use simplex_mirror::optimizer::phi_family_ratio;
use simplex_mirror::remark::{closed_form, remark_decomposition, remark_fixture};
use simplex_mirror::simplex::regular_simplex_volume;

fn main() -> simplex_mirror::Result<()> {
    let fx = remark_fixture();
    println!("a = {:.12}, b = {:.12}, phi_max = {:.12}", fx.a, fx.b, fx.phi_max);
    println!("upper facet normals at phi_max:");
    println!("  {:?}", fx.u0_at_max.coords());
    println!("  {:?}", fx.u1_at_max.coords());

    println!("optimal vertices (frame coordinates):");
    for v in &fx.optimal_vertices {
        println!("  {:?}", v.coords().iter().map(|c| format!("{c:+.5}")).collect::<Vec<_>>());
    }

    let hull = hull_volume(&fx.optimal_vertices_5d(), 5)?;
    let dec = remark_decomposition();
    println!("hull volume     {:.15}", hull.volume);
    println!("pyramids        {:.15}", dec.pyramids_vol);
    println!("simplex part    {:.15}", dec.simplex_part_vol);
    println!("sum             {:.15}", dec.total);
    println!("closed form     {:.15}", closed_form::total());
    println!("ratio           {:.15}", hull.volume / regular_simplex_volume(5));
    println!("phi-family      {:.15}", phi_family_ratio(fx.phi_max)?);
    Ok(())
}
