//! Explicit five-dimensional optimum.
//!
//! Start from the position where the edge `s_0 s_1` lies in `H` and the other
//! four vertices span a face parallel to `H`, then rotate the simplex in the
//! plane spanned by `s_1` and the normal `u` by an angle `phi`. The frame used
//! here is the orthonormal basis `{1/sqrt(6) (1,...,1), f_1, f_2, f_3, s_1, u}`
//! of the ambient `R^6`; its first coordinate is identically zero for every
//! difference vector, so dropping it gives intrinsic 5-d coordinates.

use serde::Serialize;

use crate::cases::{phi_max, root_27_77};
use crate::error::Result;
use crate::linalg::signed_simplex_volume;
use crate::simplex::{build_simplex, RegularSimplex};
use crate::vector::Vector;

pub type Matrix6 = [[f64; 6]; 6];

/// The orthogonal basis-change matrix; column `j` is the `j`-th frame vector
/// in ambient coordinates.
pub fn basis_matrix() -> Matrix6 {
    let r2 = 1.0 / 2f64.sqrt();
    let r3 = 1.0 / 3f64.sqrt();
    let r6 = 1.0 / 6f64.sqrt();
    let h3 = 1.0 / (2.0 * 3f64.sqrt());
    [
        [r6, 0.0, 0.0, 0.0, -r2, -r3],
        [r6, 0.0, 0.0, 0.0, r2, -r3],
        [r6, -r2, 0.0, 0.5, 0.0, h3],
        [r6, 0.0, -r2, -0.5, 0.0, h3],
        [r6, 0.0, r2, -0.5, 0.0, h3],
        [r6, r2, 0.0, 0.5, 0.0, h3],
    ]
}

fn mat_vec(m: &Matrix6, v: &[f64; 6]) -> [f64; 6] {
    let mut out = [0.0; 6];
    for (i, row) in m.iter().enumerate() {
        out[i] = row.iter().zip(v).map(|(a, b)| a * b).sum();
    }
    out
}

fn mat_t_vec(m: &Matrix6, v: &[f64; 6]) -> [f64; 6] {
    let mut out = [0.0; 6];
    for (j, slot) in out.iter_mut().enumerate() {
        *slot = (0..6).map(|i| m[i][j] * v[i]).sum();
    }
    out
}

/// Rotation by `phi` in the last two frame coordinates (the `(s_1, u)` plane).
pub fn rotate(v: &Vector, phi: f64) -> Vector {
    let d = v.dim();
    let (s, c) = phi.sin_cos();
    let mut out = v.coords().to_vec();
    out[d - 2] = c * v[d - 2] - s * v[d - 1];
    out[d - 1] = s * v[d - 2] + c * v[d - 1];
    Vector::new(out)
}

/// Drop the leading all-ones coordinate of a 6-d frame vector.
pub fn reduce(v: &Vector) -> Vector {
    Vector::new(v.coords()[1..].to_vec())
}

/// All closed-form ingredients of the five-dimensional optimum, in 6-d frame
/// coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Construction5D {
    /// `1 + sqrt(27/77)`.
    pub a: f64,
    /// `1 - sqrt(27/77)`.
    pub b: f64,
    pub phi_max: f64,
    pub basis_matrix: Matrix6,
    /// `s_0 .. s_5` before rotation, obtained from the basis matrix.
    pub frame_vertices: Vec<Vector>,
    pub u0: Vector,
    /// Normal of `H` in the frame: `e_6`.
    pub u: Vector,
    /// The eleven vertices of the optimal hull: the origin, then
    /// `(p, p')` mirror pairs for `s_1 .. s_5`.
    pub optimal_vertices: Vec<Vector>,
    /// Outward normals of the two upper facets at `phi_max`.
    pub u0_at_max: Vector,
    pub u1_at_max: Vector,
}

impl Construction5D {
    /// Rotated vertices `s_i(phi)` in frame coordinates.
    pub fn vertices_at(&self, phi: f64) -> Vec<Vector> {
        self.frame_vertices.iter().map(|v| rotate(v, phi)).collect()
    }

    /// The rotated simplex in 5-d coordinates.
    pub fn simplex_at(&self, phi: f64) -> Result<RegularSimplex> {
        RegularSimplex::from_vertices(self.vertices_at(phi).iter().map(reduce).collect())
    }

    /// Normal of `H` in 5-d coordinates.
    pub fn normal_5d(&self) -> Vector {
        reduce(&self.u)
    }

    pub fn optimal_vertices_5d(&self) -> Vec<Vector> {
        self.optimal_vertices.iter().map(reduce).collect()
    }

    /// Map a frame vector into the intrinsic coordinates of
    /// [`build_simplex`]`(5)`, which share the vertex labelling.
    pub fn to_intrinsic(&self, v: &Vector) -> Result<Vector> {
        let arr: [f64; 6] = v.coords().try_into().map_err(|_| crate::Error::DimensionMismatch {
            expected: 6,
            got: v.dim(),
        })?;
        let ambient = mat_vec(&self.basis_matrix, &arr);
        build_simplex(5)?.from_ambient(&Vector::from(ambient))
    }

    /// Direction of `H` relative to the unrotated simplex that reproduces the
    /// rotated configuration at angle `phi`, in intrinsic coordinates.
    pub fn intrinsic_direction(&self, phi: f64) -> Result<Vector> {
        self.to_intrinsic(&rotate(&self.u, -phi))
    }
}

pub fn remark_fixture() -> Construction5D {
    let r = root_27_77();
    let (a, b) = (1.0 + r, 1.0 - r);
    let basis = basis_matrix();
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;

    // frame coordinates of (e_i - e_0)/sqrt(2): B^T applied, then re-based at s_0
    let frame_vertices: Vec<Vector> = (0..6)
        .map(|i| {
            let mut amb = [0.0; 6];
            if i > 0 {
                amb[i] = inv_sqrt2;
                amb[0] = -inv_sqrt2;
            }
            Vector::from(mat_t_vec(&basis, &amb))
        })
        .collect();
    let u_amb = [-2.0, -2.0, 1.0, 1.0, 1.0, 1.0].map(|c| c / (2.0 * 3f64.sqrt()));
    let u0_amb = [-5.0, 1.0, 1.0, 1.0, 1.0, 1.0].map(|c| c / 30f64.sqrt());
    let u = Vector::from(mat_t_vec(&basis, &u_amb));
    let u0 = Vector::from(mat_t_vec(&basis, &u0_amb));

    let top = (a / 8.0).sqrt() - (3.0 * b / 16.0).sqrt();
    let side = (3.0 * a / 16.0).sqrt() + (b / 8.0).sqrt();
    let r8 = 1.0 / 8f64.sqrt();
    let mut optimal_vertices = vec![Vector::zeros(6)];
    for sign in [1.0, -1.0] {
        optimal_vertices.push(Vector::from([0.0, 0.0, 0.0, 0.0, (a / 2.0).sqrt(), sign * (b / 2.0).sqrt()]));
    }
    for (p, q, w) in [(-0.5, 0.0, r8), (0.0, -0.5, -r8), (0.0, 0.5, -r8), (0.5, 0.0, r8)] {
        for sign in [1.0, -1.0] {
            optimal_vertices.push(Vector::from([0.0, p, q, w, top, sign * side]));
        }
    }
    let u0_at_max = Vector::from([
        0.0,
        0.0,
        0.0,
        0.0,
        (0.3 * a).sqrt() - (0.2 * b).sqrt(),
        (0.2 * a).sqrt() + (0.3 * b).sqrt(),
    ]);
    let u1_at_max = Vector::from([
        0.0,
        0.0,
        0.0,
        0.0,
        -(0.3 * a).sqrt() - (0.2 * b).sqrt(),
        (0.2 * a).sqrt() - (0.3 * b).sqrt(),
    ]);
    Construction5D {
        a,
        b,
        phi_max: phi_max(),
        basis_matrix: basis,
        frame_vertices,
        u0,
        u,
        optimal_vertices,
        u0_at_max,
        u1_at_max,
    }
}

/// Volumes of the pieces of the optimal hull: a 4-d prism shared as base by
/// two pyramids with apexes `s_0` and `s_1(phi_max)`, plus one simplex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstructionDecomposition {
    pub prism_base_vol4: f64,
    pub pyramids_vol: f64,
    pub simplex_part_vol: f64,
    pub total: f64,
}

pub fn remark_decomposition() -> ConstructionDecomposition {
    let fx = remark_fixture();
    let (a, b) = (fx.a, fx.b);
    // triangle-prism base: 1/6 * 1 * 1 * 1 * 1/sqrt(2) times the mirror gap
    let gap = 2.0 * ((3.0 * a / 16.0).sqrt() + (b / 8.0).sqrt());
    let prism_base_vol4 = 1.0 / (6.0 * 2f64.sqrt()) * gap;
    // combined pyramid height is the height of s_1(phi_max) along s_1's axis
    let pyramids_vol = (a / 2.0).sqrt() * prism_base_vol4 / 5.0;
    // simplex on +-s_1 and the mirrored s_2 .. s_5
    let v = fx.optimal_vertices_5d();
    let simplex: Vec<Vector> = [1usize, 2, 4, 6, 8, 10].iter().map(|&i| v[i].clone()).collect();
    let simplex_part_vol = signed_simplex_volume(&simplex).abs();
    ConstructionDecomposition {
        prism_base_vol4,
        pyramids_vol,
        simplex_part_vol,
        total: pyramids_vol + simplex_part_vol,
    }
}

/// Closed forms for the decomposition pieces.
pub mod closed_form {
    pub fn prism_base_vol4(a: f64, b: f64) -> f64 {
        ((3.0 * a / 32.0).sqrt() + (b / 16.0).sqrt()) / 3.0
    }
    pub fn pyramids_vol() -> f64 {
        (3f64.sqrt() + 19.0 / 77f64.sqrt()) / 120.0
    }
    pub fn simplex_part_vol() -> f64 {
        (3f64.sqrt() + 1.0 / 77f64.sqrt()) / 480.0
    }
    /// `(5 sqrt(3) + sqrt(77)) / (4 * 5!)`.
    pub fn total() -> f64 {
        (5.0 * 3f64.sqrt() + 77f64.sqrt()) / 480.0
    }
    /// `10 (1/2 + sqrt(77) / (10 sqrt(3)))`.
    pub fn optimal_ratio() -> f64 {
        10.0 * (0.5 + 77f64.sqrt() / (10.0 * 3f64.sqrt()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::hull_volume;
    use crate::hyperplane::{project, reflect, support_from_direction, upper_facets};
    use crate::prism::ratio_formula;

    const T: f64 = 1e-12;

    #[test]
    fn basis_matrix_is_orthogonal() {
        let m = basis_matrix();
        for i in 0..6 {
            for j in 0..6 {
                let dot: f64 = (0..6).map(|r| m[r][i] * m[r][j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < T);
            }
        }
    }

    #[test]
    fn a_and_b() {
        let fx = remark_fixture();
        assert!((fx.a + fx.b - 2.0).abs() < T);
        assert!((fx.a * fx.b - 50.0 / 77.0).abs() < T);
    }

    #[test]
    fn frame_coordinates_match_printed_values() {
        let fx = remark_fixture();
        let v = &fx.frame_vertices;
        assert!(v[0].norm() < T);
        assert!(v[1].distance(&Vector::from([0.0, 0.0, 0.0, 0.0, 1.0, 0.0])) < T);
        let r8 = 1.0 / 8f64.sqrt();
        let r38 = (3.0f64 / 8.0).sqrt();
        let printed = [
            [0.0, -0.5, 0.0, r8, 0.5, r38],
            [0.0, 0.0, -0.5, -r8, 0.5, r38],
            [0.0, 0.0, 0.5, -r8, 0.5, r38],
            [0.0, 0.5, 0.0, r8, 0.5, r38],
        ];
        for (i, p) in printed.iter().enumerate() {
            assert!(v[i + 2].distance(&Vector::from(*p)) < T, "s_{}", i + 2);
        }
        assert!(fx.u.distance(&Vector::unit(6, 5)) < T);
        let u0 = Vector::from([0.0, 0.0, 0.0, 0.0, 15f64.sqrt() / 5.0, 10f64.sqrt() / 5.0]);
        assert!(fx.u0.distance(&u0) < T);
        // u0 = sqrt(15)/5 s_1 + sqrt(10)/5 u
        let combo = (&v[1] * (15f64.sqrt() / 5.0)).axpy(10f64.sqrt() / 5.0, &fx.u);
        assert!(fx.u0.distance(&combo) < T);
    }

    #[test]
    fn rotation_preserves_gram_matrix() {
        let fx = remark_fixture();
        let base = fx.vertices_at(0.0);
        for i in 0..=20 {
            let phi = i as f64 * 0.1;
            let rot = fx.vertices_at(phi);
            for p in 0..6 {
                for q in 0..6 {
                    assert!((rot[p].dot(&rot[q]) - base[p].dot(&base[q])).abs() < T);
                }
            }
        }
    }

    #[test]
    fn optimal_vertices_are_rotated_vertices_and_mirrors() {
        let fx = remark_fixture();
        let rot = fx.vertices_at(fx.phi_max);
        let ov = &fx.optimal_vertices;
        assert_eq!(ov.len(), 11);
        assert!(ov[0].norm() < T);
        for i in 1..6 {
            let up = &ov[2 * i - 1];
            let down = &ov[2 * i];
            assert!(up.distance(&rot[i]) < T, "s_{i}");
            let mirrored = Vector::new(
                rot[i].coords()[..5].iter().copied().chain([-rot[i][5]]).collect(),
            );
            assert!(down.distance(&mirrored) < T);
        }
    }

    #[test]
    fn upper_facet_normals_at_optimum() {
        let fx = remark_fixture();
        let s = fx.simplex_at(fx.phi_max).unwrap();
        let h = support_from_direction(&s, &fx.normal_5d()).unwrap();
        assert_eq!(h.touching(), &[0]);
        let up = upper_facets(&s, &h).unwrap();
        assert_eq!(up.indices, vec![0, 1]);
        assert!(up.normals[0].distance(&reduce(&fx.u0_at_max)) < 1e-9);
        assert!(up.normals[1].distance(&reduce(&fx.u1_at_max)) < 1e-9);
        assert!(reduce(&rotate(&fx.u0, fx.phi_max)).distance(&reduce(&fx.u0_at_max)) < T);
    }

    #[test]
    fn projection_and_reflection_match_listed_vertices() {
        let fx = remark_fixture();
        let s = fx.simplex_at(fx.phi_max).unwrap();
        let h = support_from_direction(&s, &fx.normal_5d()).unwrap();
        let proj = project(s.vertices(), &h).unwrap();
        let refl = reflect(s.vertices(), &h).unwrap();
        let ov = fx.optimal_vertices_5d();
        for i in 2..6 {
            assert!(proj[i][4].abs() < T);
            assert!(refl[i].distance(&ov[2 * i]) < T);
            for d in 0..4 {
                assert!((proj[i][d] - ov[2 * i][d]).abs() < T);
            }
        }
    }

    #[test]
    fn hull_volume_of_optimal_vertices() {
        let fx = remark_fixture();
        let p = hull_volume(&fx.optimal_vertices_5d(), 5).unwrap();
        assert!((p.volume - closed_form::total()).abs() < 1e-10);
        let ratio = p.volume / (3f64.sqrt() / 480.0);
        assert!((ratio - closed_form::optimal_ratio()).abs() < 1e-8);
    }

    #[test]
    fn decomposition_matches_closed_forms() {
        let fx = remark_fixture();
        let d = remark_decomposition();
        assert!((d.prism_base_vol4 - closed_form::prism_base_vol4(fx.a, fx.b)).abs() < T);
        assert!((d.pyramids_vol - closed_form::pyramids_vol()).abs() < T);
        assert!((d.simplex_part_vol - closed_form::simplex_part_vol()).abs() < T);
        assert!((d.total - closed_form::total()).abs() < T);
    }

    #[test]
    fn prism_base_matches_hull_oracle() {
        // the eight base points share the s_1-axis coordinate; drop it
        let fx = remark_fixture();
        let ov = fx.optimal_vertices_5d();
        let base: Vec<Vector> = (3..11)
            .map(|i| {
                let c = ov[i].coords();
                Vector::from([c[0], c[1], c[2], c[4]])
            })
            .collect();
        let p = hull_volume(&base, 4).unwrap();
        assert!((p.volume - remark_decomposition().prism_base_vol4).abs() < 1e-12);
    }

    #[test]
    fn intrinsic_direction_reproduces_phi_family() {
        let fx = remark_fixture();
        let s5 = build_simplex(5).unwrap();
        for i in 0..=15 {
            let phi = i as f64 * 0.1;
            let s = fx.simplex_at(phi).unwrap();
            let h = support_from_direction(&s, &fx.normal_5d()).unwrap();
            let want = ratio_formula(&s, &h).unwrap().ratio;
            let u = fx.intrinsic_direction(phi).unwrap();
            let hi = support_from_direction(&s5, &u).unwrap();
            let got = ratio_formula(&s5, &hi).unwrap().ratio;
            assert!((got - want).abs() < 1e-12, "phi={phi}");
        }
        // the unrotated normal is the r = 1 member
        let u = fx.intrinsic_direction(0.0).unwrap();
        assert!(u.distance(&s5.r_family_normal(1).unwrap()) < T);
    }
}
