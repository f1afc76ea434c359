//! Small dense linear-algebra helpers on top of `nalgebra`.

use nalgebra::DMatrix;

use crate::vector::Vector;

/// Normal of the hyperplane spanned by `dim - 1` difference vectors in `R^dim`,
/// via the generalized cross product (signed cofactors).
///
/// The result is not normalized; its length equals the `(dim-1)`-volume of the
/// parallelotope spanned by `diffs`, so a near-zero result flags a degenerate
/// spanning set.
pub fn cofactor_normal(diffs: &[Vector], dim: usize) -> Vector {
    assert_eq!(diffs.len() + 1, dim, "cofactor_normal needs dim-1 vectors");
    if dim == 1 {
        return Vector::from([1.0]);
    }
    let rows = diffs.len();
    let mut out = vec![0.0; dim];
    let mut minor = DMatrix::<f64>::zeros(rows, rows);
    for (skip, slot) in out.iter_mut().enumerate() {
        for (r, d) in diffs.iter().enumerate() {
            let mut c = 0;
            for j in 0..dim {
                if j != skip {
                    minor[(r, c)] = d[j];
                    c += 1;
                }
            }
        }
        let sign = if (skip + rows).is_multiple_of(2) { 1.0 } else { -1.0 };
        *slot = sign * minor.clone().determinant();
    }
    Vector::new(out)
}

/// Orthonormal basis of the orthogonal complement of the unit vector `normal`.
pub fn complement_basis(normal: &Vector) -> Vec<Vector> {
    let dim = normal.dim();
    let mut basis: Vec<Vector> = vec![normal.clone()];
    for i in 0..dim {
        let mut v = Vector::unit(dim, i);
        for b in &basis {
            v = v.axpy(-v.dot(b), b);
        }
        // second pass for stability
        for b in &basis {
            v = v.axpy(-v.dot(b), b);
        }
        if let Some(v) = v.normalized().filter(|_| v.norm() > 1e-6) {
            basis.push(v);
        }
        if basis.len() == dim {
            break;
        }
    }
    basis.remove(0);
    basis
}

/// `k`-dimensional measure of the simplex with the given `k + 1` vertices,
/// computed from the Gram determinant of its edge vectors.
pub fn simplex_measure(vertices: &[Vector]) -> f64 {
    let k = vertices.len().saturating_sub(1);
    if k == 0 {
        return 1.0;
    }
    let base = &vertices[0];
    let edges: Vec<Vector> = vertices[1..].iter().map(|v| v - base).collect();
    let gram = DMatrix::from_fn(k, k, |i, j| edges[i].dot(&edges[j]));
    let det = gram.determinant().max(0.0);
    det.sqrt() / factorial(k)
}

/// Signed `n`-volume of an `n`-simplex in `R^n`.
pub fn signed_simplex_volume(vertices: &[Vector]) -> f64 {
    let n = vertices.len() - 1;
    let base = &vertices[0];
    let m = DMatrix::from_fn(n, n, |i, j| vertices[i + 1][j] - base[j]);
    m.determinant() / factorial(n)
}

/// Affine rank of a point set, judged by singular values relative to `tol`.
pub fn affine_rank(points: &[Vector], tol: f64) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let dim = points[0].dim();
    let base = &points[0];
    let m = DMatrix::from_fn(points.len() - 1, dim, |i, j| points[i + 1][j] - base[j]);
    let svd = m.svd(false, false);
    svd.singular_values.iter().filter(|s| **s > tol).count()
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}
