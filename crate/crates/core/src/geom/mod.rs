//! Polytope geometry: hulls, halfspace intersections, volumes, facet data,
//! Minkowski sums, projections and containment.

mod halfspace;
mod hull;
mod lp;
mod polytope;

pub use halfspace::{halfspace_intersection, has_recession_direction, HalfspaceSystem};
pub use hull::{convex_hull_structure, HullStructure, MergedFacet};
pub use lp::{relative_inradius, simplex_maximize, LpOutcome};
pub use polytope::{convex_hull, hausdorff_distance, sphere_directions, Facet, Polytope};

use crate::scalar::Scalar;

/// Dense coordinate vector. Free functions keep the generic code terse.
pub type Vector<S> = Vec<S>;

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}

pub fn vec_add<S: Scalar>(a: &[S], b: &[S]) -> Vector<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_sub<S: Scalar>(a: &[S], b: &[S]) -> Vector<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_scale<S: Scalar>(a: &[S], c: &S) -> Vector<S> {
    a.iter().map(|x| x.clone() * c.clone()).collect()
}

pub fn vec_neg<S: Scalar>(a: &[S]) -> Vector<S> {
    a.iter().map(|x| -x.clone()).collect()
}

pub fn vec_to_f64<S: Scalar>(a: &[S]) -> Vec<f64> {
    a.iter().map(Scalar::to_f64).collect()
}

pub fn vec_from_f64<S: Scalar>(a: &[f64]) -> Vector<S> {
    a.iter().map(|&x| S::from_f64(x)).collect()
}

pub fn norm_f64(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn normalize_f64(a: &[f64]) -> Vec<f64> {
    let n = norm_f64(a);
    a.iter().map(|x| x / n).collect()
}

/// Generalized cross product of `n-1` vectors in dimension `n`: the unique
/// vector `c` with `c · y = det([rows; y])` for all `y`.
pub fn cross_vector<S: Scalar>(rows: &[Vector<S>]) -> Vector<S> {
    let n = rows.len() + 1;
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let mut c = Vec::with_capacity(n);
    for j in 0..n {
        let minor: Vec<Vec<S>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let m = crate::scalar::det_generic(&minor);
        c.push(if (n - 1 + j) % 2 == 0 { m } else { -m });
    }
    c
}

/// Solve a square linear system by Gaussian elimination with the pivot rule
/// appropriate to the scalar (exact nonzero for rationals, max-abs for f64).
/// Returns `None` when the matrix is singular (or negligibly so).
pub fn solve_linear<S: Scalar>(matrix: &[Vec<S>], rhs: &[S]) -> Option<Vector<S>> {
    let n = matrix.len();
    let mut a: Vec<Vec<S>> = matrix.to_vec();
    let mut b: Vec<S> = rhs.to_vec();
    let scale = a
        .iter()
        .flatten()
        .map(|x| x.abs())
        .fold(S::one(), |m, x| if x > m { x } else { m });
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let pivot_row = (col..n).max_by(|&i, &j| {
            a[perm[i]][col]
                .abs()
                .partial_cmp(&a[perm[j]][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[perm[pivot_row]][col].is_negligible(&scale) {
            return None;
        }
        perm.swap(col, pivot_row);
        let p = perm[col];
        for r in (col + 1)..n {
            let row = perm[r];
            if a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone() / a[p][col].clone();
            for c in col..n {
                a[row][c] = a[row][c].clone() - factor.clone() * a[p][c].clone();
            }
            b[row] = b[row].clone() - factor * b[p].clone();
        }
    }
    let mut x = vec![S::zero(); n];
    for col in (0..n).rev() {
        let p = perm[col];
        let mut acc = b[p].clone();
        for c in (col + 1)..n {
            acc = acc - a[p][c].clone() * x[c].clone();
        }
        x[col] = acc / a[p][col].clone();
    }
    Some(x)
}

/// Incremental rank tracker used for affine-independence tests.
pub struct RankTracker<S: Scalar> {
    rows: Vec<Vector<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> RankTracker<S> {
    pub fn new() -> Self {
        RankTracker { rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the accepted rows; if a nonzero remainder survives,
    /// accept it and return `true`.
    pub fn try_extend(&mut self, v: Vector<S>) -> bool {
        let scale = v.iter().map(|x| x.abs()).fold(S::one(), |m, x| if x > m { x } else { m });
        let mut v = v;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone() / row[p].clone();
            for k in 0..v.len() {
                v[k] = v[k].clone() - factor.clone() * row[k].clone();
            }
        }
        let pivot = (0..v.len())
            .filter(|&k| !v[k].is_negligible(&scale))
            .max_by(|&i, &j| v[i].abs().partial_cmp(&v[j].abs()).unwrap_or(std::cmp::Ordering::Equal));
        match pivot {
            Some(p) => {
                self.pivots.push(p);
                self.rows.push(v);
                true
            }
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    #[test]
    fn cross_vector_3d_matches_usual_cross() {
        let rows = vec![vec![1.0f64, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
        assert_eq!(cross_vector(&rows), vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn cross_vector_identity() {
        // c · y == det([rows; y]) for a probe y.
        let rows = vec![vec![1.0f64, 2.0, 3.0], vec![4.0, 5.0, 6.0]];
        let c = cross_vector(&rows);
        let y = vec![7.0, 8.0, 10.0];
        let mut m = rows.clone();
        m.push(y.clone());
        let det = crate::scalar::det_generic(&m);
        assert!((dot(&c, &y) - det).abs() < 1e-9);
    }

    #[test]
    fn solve_linear_exact() {
        let m = vec![
            vec![Rat::from_int(2), Rat::from_int(1)],
            vec![Rat::from_int(1), Rat::from_int(3)],
        ];
        let b = vec![Rat::from_int(5), Rat::from_int(10)];
        let x = solve_linear(&m, &b).unwrap();
        assert_eq!(x, vec![Rat::from_int(1), Rat::from_int(3)]);
    }

    #[test]
    fn rank_tracker_detects_dependence() {
        let mut t = RankTracker::<Rat>::new();
        assert!(t.try_extend(vec![Rat::from_int(1), Rat::from_int(0)]));
        assert!(!t.try_extend(vec![Rat::from_int(2), Rat::from_int(0)]));
        assert!(t.try_extend(vec![Rat::from_int(1), Rat::from_int(1)]));
        assert_eq!(t.rank(), 2);
    }
}
