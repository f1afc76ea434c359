//! The unit-edge regular `n`-simplex and its closed-form constants.
//!
//! Vertices live in intrinsic `n`-dimensional coordinates. They come from the
//! ambient vectors `s_i = (e_i - e_0) / sqrt(2)` in `R^{n+1}` mapped through a
//! fixed Helmert basis of the subspace orthogonal to `(1, ..., 1)`, so vertex 0
//! sits at the origin and the construction is bit-for-bit deterministic.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{cofactor_normal, factorial};
use crate::tol;
use crate::vector::Vector;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularSimplex {
    n: usize,
    vertices: Vec<Vector>,
    centroid: Vector,
    facet_normals: Vec<Vector>,
    /// Sum of all vertices.
    s: Vector,
}

/// Build the unit-edge regular `n`-simplex, `1 <= n <= 8`.
pub fn build_simplex(n: usize) -> Result<RegularSimplex> {
    if !(1..=tol::MAX_DIM).contains(&n) {
        return Err(Error::DimensionOutOfRange {
            n,
            min: 1,
            max: tol::MAX_DIM,
        });
    }
    let basis = helmert_basis(n);
    let vertices = (0..=n)
        .map(|i| {
            let mut ambient = vec![0.0; n + 1];
            if i > 0 {
                ambient[i] = std::f64::consts::FRAC_1_SQRT_2;
                ambient[0] = -std::f64::consts::FRAC_1_SQRT_2;
            }
            to_intrinsic(&basis, &ambient)
        })
        .collect();
    RegularSimplex::assemble(n, vertices)
}

/// Helmert basis of `{x in R^{n+1} : sum x = 0}`; column `k` (1-based) has
/// `-1` in slots `0..k`, `k` in slot `k`, scaled to unit length.
fn helmert_basis(n: usize) -> Vec<Vec<f64>> {
    (1..=n)
        .map(|k| {
            let scale = 1.0 / ((k * (k + 1)) as f64).sqrt();
            let mut col = vec![0.0; n + 1];
            col[..k].iter_mut().for_each(|c| *c = -scale);
            col[k] = k as f64 * scale;
            col
        })
        .collect()
}

fn to_intrinsic(basis: &[Vec<f64>], ambient: &[f64]) -> Vector {
    Vector::new(
        basis
            .iter()
            .map(|col| col.iter().zip(ambient).map(|(a, b)| a * b).sum())
            .collect(),
    )
}

impl RegularSimplex {
    /// Wrap an arbitrary unit-edge regular simplex given by `dim + 1` vertices
    /// in `R^dim`. Edge lengths are checked to [`tol::GEOM`].
    pub fn from_vertices(vertices: Vec<Vector>) -> Result<Self> {
        let n = vertices.len().saturating_sub(1);
        if n == 0 {
            return Err(Error::NotRegular("need at least two vertices".into()));
        }
        for v in &vertices {
            v.ensure_dim(n)?;
        }
        for i in 0..=n {
            for j in (i + 1)..=n {
                let d = vertices[i].distance(&vertices[j]);
                if !tol::close(d, 1.0, tol::GEOM) {
                    return Err(Error::NotRegular(format!("|v{i} - v{j}| = {d}")));
                }
            }
        }
        Self::assemble(n, vertices)
    }

    fn assemble(n: usize, vertices: Vec<Vector>) -> Result<Self> {
        let s = Vector::sum(n, &vertices);
        let centroid = &s * (1.0 / (n + 1) as f64);
        let facet_normals = (0..=n)
            .map(|j| outward_normal(&vertices, &centroid, j))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n,
            vertices,
            centroid,
            facet_normals,
            s,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vector {
        &self.vertices[i]
    }

    pub fn centroid(&self) -> &Vector {
        &self.centroid
    }

    /// Sum of all vertices. With vertex 0 at the origin this is `s_1 + ... + s_n`.
    pub fn s(&self) -> &Vector {
        &self.s
    }

    pub fn facet_normals(&self) -> &[Vector] {
        &self.facet_normals
    }

    /// Outward unit normal of the facet opposite vertex `j`.
    pub fn facet_normal(&self, j: usize) -> Result<&Vector> {
        self.facet_normals.get(j).ok_or(Error::IndexOutOfRange {
            index: j,
            max: self.n,
        })
    }

    /// Sum of the vertices with the given indices, `s_{2,k}` when the indices
    /// are the non-apex upper-facet vertices.
    pub fn vertex_sum(&self, indices: &[usize]) -> Result<Vector> {
        let mut acc = Vector::zeros(self.n);
        for &i in indices {
            let v = self.vertices.get(i).ok_or(Error::IndexOutOfRange {
                index: i,
                max: self.n,
            })?;
            acc = &acc + v;
        }
        Ok(acc)
    }

    /// Unit inner normal of the supporting hyperplane through `s_0, ..., s_r`
    /// parallel to the affine hull of the remaining vertices.
    ///
    /// Only meaningful for the canonical simplex from [`build_simplex`], whose
    /// vertex order matches the ambient frame used here.
    pub fn r_family_normal(&self, r: usize) -> Result<Vector> {
        let n = self.n;
        if r >= n {
            return Err(Error::IndexOutOfRange {
                index: r,
                max: n - 1,
            });
        }
        let scale = 1.0 / (((n - r) * (r + 1) * (n + 1)) as f64).sqrt();
        let ambient: Vec<f64> = (0..=n)
            .map(|i| {
                if i <= r {
                    -((n - r) as f64) * scale
                } else {
                    (r + 1) as f64 * scale
                }
            })
            .collect();
        Ok(to_intrinsic(&helmert_basis(n), &ambient))
    }

    /// Map intrinsic coordinates back to the `(n+1)`-dimensional ambient frame
    /// in which vertex `i` is `(e_i - e_0) / sqrt(2)`.
    pub fn to_ambient(&self, v: &Vector) -> Result<Vector> {
        v.ensure_dim(self.n)?;
        let basis = helmert_basis(self.n);
        let mut out = Vector::zeros(self.n + 1);
        for (k, col) in basis.iter().enumerate() {
            out = out.axpy(v[k], &Vector::new(col.clone()));
        }
        Ok(out)
    }

    /// Inverse of [`Self::to_ambient`]; the input must be orthogonal to the
    /// all-ones direction.
    pub fn from_ambient(&self, v: &Vector) -> Result<Vector> {
        v.ensure_dim(self.n + 1)?;
        Ok(to_intrinsic(&helmert_basis(self.n), v.coords()))
    }

    pub fn ambient_vertices(&self) -> Vec<Vector> {
        self.vertices
            .iter()
            .map(|v| self.to_ambient(v).expect("vertex has intrinsic dimension"))
            .collect()
    }

    /// `n`-volume of a unit-edge regular `n`-simplex: `sqrt(n+1) / (n! 2^{n/2})`.
    pub fn volume(&self) -> f64 {
        regular_simplex_volume(self.n)
    }

    /// Distance from a vertex to the opposite facet.
    pub fn height(&self) -> f64 {
        closed_form::height(self.n)
    }
}

pub fn regular_simplex_volume(n: usize) -> f64 {
    ((n + 1) as f64).sqrt() / (factorial(n) * 2f64.powf(n as f64 / 2.0))
}

fn outward_normal(vertices: &[Vector], centroid: &Vector, j: usize) -> Result<Vector> {
    let n = centroid.dim();
    let facet: Vec<&Vector> = vertices
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != j)
        .map(|(_, v)| v)
        .collect();
    let diffs: Vec<Vector> = facet[1..].iter().map(|v| *v - facet[0]).collect();
    let raw = cofactor_normal(&diffs, n);
    let unit = raw
        .normalized()
        .ok_or_else(|| Error::NotRegular(format!("facet {j} is degenerate")))?;
    let facet_centroid = Vector::mean(n, facet.iter().copied());
    if unit.dot(&(&facet_centroid - centroid)) >= 0.0 {
        Ok(unit)
    } else {
        Ok(-unit)
    }
}

/// Closed forms for the unit-edge regular `n`-simplex with vertex 0 at the
/// origin.
pub mod closed_form {
    /// `|s| = sqrt(n(n+1)/2)`.
    pub fn s_norm(n: usize) -> f64 {
        ((n * (n + 1)) as f64 / 2.0).sqrt()
    }

    /// `|c| = sqrt(n / (2(n+1)))`.
    pub fn centroid_norm(n: usize) -> f64 {
        (n as f64 / (2.0 * (n + 1) as f64)).sqrt()
    }

    /// `h = |s| / n = sqrt((n+1) / (2n))`.
    pub fn height(n: usize) -> f64 {
        ((n + 1) as f64 / (2.0 * n as f64)).sqrt()
    }

    /// `|s_{2,k}| = sqrt((k-1)k/2)`.
    pub fn s2k_norm(k: usize) -> f64 {
        (((k - 1) * k) as f64 / 2.0).sqrt()
    }

    /// `<u_i, u_j> = -1/n` for distinct facet normals.
    pub fn normal_cosine(n: usize) -> f64 {
        -1.0 / n as f64
    }

    /// `<u, u_0>` for the r-family normal: `sqrt((n-r)/(r+1)) / sqrt(n)`.
    pub fn r_family_cosine(n: usize, r: usize) -> f64 {
        ((n - r) as f64 / (r + 1) as f64).sqrt() / (n as f64).sqrt()
    }
}

/// Constants attached to a pair `(n, k)`: the norm of `s_{2,k}` and the angle
/// `beta` between `s_{2,k}` and `u_0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimplexConstants {
    pub n: usize,
    pub k: usize,
    pub s2k_norm: f64,
    pub cos_beta: f64,
    pub sin_beta: f64,
}

impl SimplexConstants {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 2 || k < 2 || k > n {
            return Err(Error::OutOfRange(format!(
                "need 2 <= k <= n, got n={n} k={k}"
            )));
        }
        let sin2 = (n - k + 1) as f64 / (n * k) as f64;
        Ok(Self {
            n,
            k,
            s2k_norm: closed_form::s2k_norm(k),
            cos_beta: (1.0 - sin2).sqrt(),
            sin_beta: sin2.sqrt(),
        })
    }
}
