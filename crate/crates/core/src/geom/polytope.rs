//! The polytope type: vertex representation with derived facet data.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hull::{convex_hull_structure, MergedFacet};
use super::{dot, norm_f64, normalize_f64, vec_add, vec_scale, vec_to_f64, Vector};
use crate::error::{GeomError, Result};
use crate::scalar::Scalar;

/// A bounded convex polytope in vertex representation.
///
/// Vertices are always the extreme points (the constructor runs a hull).
/// `rank` is the affine rank: segments and faces are legal operands of sums,
/// support values and mixed volumes, with volume zero.
#[derive(Debug, Clone)]
pub struct Polytope<S: Scalar> {
    dim: usize,
    rank: usize,
    vertices: Vec<Vector<S>>,
    facets: OnceLock<Vec<MergedFacet<S>>>,
}

/// Facet view with unit normal, support offset and (n-1)-measure.
///
/// The exact payload is the outward area vector `measure * normal`, which is
/// rational whenever the vertices are; normal, offset and measure are derived
/// floating-point views of it.
#[derive(Debug, Clone)]
pub struct Facet<S: Scalar> {
    pub area_vector: Vector<S>,
    pub support: S,
    pub vertices: Vec<usize>,
}

impl<S: Scalar> Facet<S> {
    pub fn measure(&self) -> f64 {
        norm_f64(&vec_to_f64(&self.area_vector))
    }

    pub fn normal(&self) -> Vec<f64> {
        normalize_f64(&vec_to_f64(&self.area_vector))
    }

    pub fn offset(&self) -> f64 {
        self.support.to_f64() / self.measure()
    }
}

/// Convex hull requiring a full-dimensional result.
pub fn convex_hull<S: Scalar>(points: &[Vector<S>]) -> Result<Polytope<S>> {
    let p = Polytope::hull_any(points);
    if p.rank < p.dim {
        return Err(GeomError::DegenerateInput(format!(
            "points have affine rank {} in dimension {}",
            p.rank, p.dim
        )));
    }
    Ok(p)
}

impl<S: Scalar> Polytope<S> {
    /// Hull that flags lower-dimensional inputs instead of failing.
    pub fn hull_any(points: &[Vector<S>]) -> Self {
        let h = convex_hull_structure(points);
        let vertices: Vec<Vector<S>> = h.vertex_ids.iter().map(|&i| h.points[i].clone()).collect();
        let facets = if h.rank == h.dim {
            // Remap facet vertex indices to the extreme-point list.
            let lookup: std::collections::HashMap<usize, usize> =
                h.vertex_ids.iter().enumerate().map(|(new, &old)| (old, new)).collect();
            let remapped: Vec<MergedFacet<S>> = h
                .facets
                .into_iter()
                .map(|f| MergedFacet {
                    vertices: f.vertices.iter().map(|v| lookup[v]).collect(),
                    area_vector: f.area_vector,
                    support: f.support,
                })
                .collect();
            let cell = OnceLock::new();
            let _ = cell.set(remapped);
            cell
        } else {
            OnceLock::new()
        };
        Polytope { dim: h.dim, rank: h.rank, vertices, facets }
    }

    /// Construct from vertices known to be extreme (still verified by hull).
    pub fn from_vertices(points: Vec<Vector<S>>) -> Self {
        Self::hull_any(&points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.rank == self.dim
    }

    pub fn vertices(&self) -> &[Vector<S>] {
        &self.vertices
    }

    pub fn vertices_f64(&self) -> Vec<Vec<f64>> {
        self.vertices.iter().map(|v| vec_to_f64(v)).collect()
    }

    /// Derived facet list; errors on lower-dimensional polytopes.
    pub fn facets(&self) -> Result<Vec<Facet<S>>> {
        if !self.is_full_dimensional() {
            return Err(GeomError::DegenerateInput(format!(
                "facets of a rank-{} body in dimension {}",
                self.rank, self.dim
            )));
        }
        Ok(self
            .merged_facets()
            .iter()
            .map(|f| Facet {
                area_vector: f.area_vector.clone(),
                support: f.support.clone(),
                vertices: f.vertices.clone(),
            })
            .collect())
    }

    fn merged_facets(&self) -> &[MergedFacet<S>] {
        self.facets.get_or_init(|| {
            let h = convex_hull_structure(&self.vertices);
            h.facets
        })
    }

    /// n-volume; zero for lower-dimensional bodies, exact for rational input.
    pub fn volume(&self) -> S {
        if !self.is_full_dimensional() {
            return S::zero();
        }
        let mut acc = S::zero();
        for f in self.merged_facets() {
            acc = acc + f.support.clone();
        }
        acc / S::from_int(self.dim as i64)
    }

    /// Support value h(u) = max over vertices of u·v. `u` need not be unit.
    pub fn support_value(&self, u: &[S]) -> Result<S> {
        if u.iter().all(|x| x.is_zero()) {
            return Err(GeomError::ZeroDirection);
        }
        if u.len() != self.dim {
            return Err(GeomError::DimensionMismatch(u.len(), self.dim));
        }
        let mut best: Option<S> = None;
        for v in &self.vertices {
            let s = dot(u, v);
            best = Some(match best {
                None => s,
                Some(b) => {
                    if s > b {
                        s
                    } else {
                        b
                    }
                }
            });
        }
        Ok(best.expect("polytope has vertices"))
    }

    /// Minkowski sum via the hull of pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &Polytope<S>) -> Result<Polytope<S>> {
        if self.dim != other.dim {
            return Err(GeomError::DimensionMismatch(self.dim, other.dim));
        }
        let mut sums = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                sums.push(vec_add(a, b));
            }
        }
        Ok(Polytope::hull_any(&sums))
    }

    /// Map vertices by x -> lambda x + t.
    pub fn scale_translate(&self, lambda: &S, t: &[S]) -> Result<Polytope<S>> {
        if *lambda < S::zero() {
            return Err(GeomError::NegativeScale(lambda.to_f64()));
        }
        if t.len() != self.dim {
            return Err(GeomError::DimensionMismatch(t.len(), self.dim));
        }
        let mapped: Vec<Vector<S>> =
            self.vertices.iter().map(|v| vec_add(&vec_scale(v, lambda), t)).collect();
        Ok(Polytope::hull_any(&mapped))
    }

    pub fn translate(&self, t: &[S]) -> Result<Polytope<S>> {
        self.scale_translate(&S::one(), t)
    }

    /// Delete coordinate `j`: the image under the projection that forgets it.
    pub fn project_out(&self, j: usize) -> Polytope<S> {
        assert!(j < self.dim, "coordinate index out of range");
        let projected: Vec<Vector<S>> = self
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        Polytope::hull_any(&projected)
    }

    /// Mean of the vertices; used as the canonical translation normalization.
    pub fn vertex_centroid(&self) -> Vector<S> {
        let count = S::from_int(self.vertices.len() as i64);
        (0..self.dim)
            .map(|k| {
                let mut acc = S::zero();
                for v in &self.vertices {
                    acc = acc + v[k].clone();
                }
                acc / count.clone()
            })
            .collect()
    }

    /// Re-center so the vertex centroid sits at the origin.
    pub fn centered(&self) -> Polytope<S> {
        let c = self.vertex_centroid();
        let neg: Vector<S> = c.iter().map(|x| -x.clone()).collect();
        self.translate(&neg).expect("translation cannot fail")
    }

    /// Largest pairwise vertex distance.
    pub fn diameter_f64(&self) -> f64 {
        let vs = self.vertices_f64();
        let mut best = 0.0f64;
        for i in 0..vs.len() {
            for j in (i + 1)..vs.len() {
                let d = norm_f64(&vs[i].iter().zip(&vs[j]).map(|(a, b)| a - b).collect::<Vec<_>>());
                best = best.max(d);
            }
        }
        best
    }

    /// Whether every vertex of `other` satisfies this polytope's facet
    /// inequalities. Exact in rational mode; tolerance `tol` (relative to the
    /// facet scale) applies in float mode.
    pub fn contains_polytope(&self, other: &Polytope<S>, tol: f64) -> Result<bool> {
        let facets = self.facets()?;
        for v in other.vertices() {
            for f in &facets {
                let lhs = dot(&f.area_vector, v);
                let slack = f.support.clone() - lhs;
                if S::EXACT {
                    if slack < S::zero() {
                        return Ok(false);
                    }
                } else {
                    let scale = f.measure().max(1.0) * (1.0 + norm_f64(&vec_to_f64(v)));
                    if slack.to_f64() < -tol * scale {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Convert the scalar representation (e.g. exact -> float).
    pub fn map_scalar<T: Scalar>(&self) -> Polytope<T> {
        let verts: Vec<Vector<T>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| T::from_f64(x.to_f64())).collect())
            .collect();
        Polytope::hull_any(&verts)
    }
}

/// Deterministic quasi-uniform directions on the unit sphere.
///
/// Exact equal spacing on the circle; a fixed-seed Gaussian sample in higher
/// dimensions (deterministic across runs).
pub fn sphere_directions(dim: usize, count: usize) -> Vec<Vec<f64>> {
    if dim == 1 {
        return vec![vec![1.0], vec![-1.0]];
    }
    if dim == 2 {
        return (0..count)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * (k as f64) / (count as f64);
                vec![theta.cos(), theta.sin()]
            })
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_D1CE);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: Vec<f64> = (0..dim)
            .map(|_| {
                let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
                let u2: f64 = rng.gen_range(0.0..1.0);
                (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
            })
            .collect();
        let n = norm_f64(&v);
        if n > 1e-6 {
            out.push(v.iter().map(|x| x / n).collect());
        }
    }
    out
}

/// Hausdorff distance estimate: max of |h_P(u) - h_Q(u)| over the evaluation
/// set (facet normals of both bodies, vertex directions, pairwise vertex
/// differences in the plane, and a quasi-uniform 10 n^2 sphere sample).
/// A lower bound in general and exact in dimension two.
pub fn hausdorff_distance<S: Scalar>(p: &Polytope<S>, q: &Polytope<S>) -> Result<f64> {
    if p.dim() != q.dim() {
        return Err(GeomError::DimensionMismatch(p.dim(), q.dim()));
    }
    let dim = p.dim();
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for body in [p, q] {
        if body.is_full_dimensional() {
            for f in body.facets()? {
                dirs.push(f.normal());
            }
        }
        for v in body.vertices_f64() {
            let n = norm_f64(&v);
            if n > 1e-12 {
                dirs.push(v.iter().map(|x| x / n).collect());
            }
        }
    }
    if dim == 2 {
        // Differences of vertices across the two bodies: together with the
        // fan rays these realize the supremum over the circle.
        for a in p.vertices_f64() {
            for b in q.vertices_f64() {
                let d: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
                let n = norm_f64(&d);
                if n > 1e-12 {
                    dirs.push(d.iter().map(|x| x / n).collect());
                    dirs.push(d.iter().map(|x| -x / n).collect());
                }
            }
        }
    }
    dirs.extend(sphere_directions(dim, 10 * dim * dim));

    let pv = p.vertices_f64();
    let qv = q.vertices_f64();
    let support = |verts: &[Vec<f64>], u: &[f64]| -> f64 {
        verts
            .iter()
            .map(|v| v.iter().zip(u).map(|(a, b)| a * b).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let mut best = 0.0f64;
    for u in &dirs {
        best = best.max((support(&pv, u) - support(&qv, u)).abs());
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn rv(coords: &[i64]) -> Vector<Rat> {
        coords.iter().map(|&c| Rat::from_int(c)).collect()
    }

    fn unit_cube() -> Polytope<Rat> {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(rv(&[x, y, z]));
                }
            }
        }
        Polytope::from_vertices(pts)
    }

    fn simplex3() -> Polytope<Rat> {
        Polytope::from_vertices(vec![rv(&[0, 0, 0]), rv(&[1, 0, 0]), rv(&[0, 1, 0]), rv(&[0, 0, 1])])
    }

    #[test]
    fn volumes_are_exact() {
        assert_eq!(unit_cube().volume(), Rat::one());
        assert_eq!(simplex3().volume(), Rat::new(1, 6));
    }

    #[test]
    fn cube_facet_data() {
        let facets = unit_cube().facets().unwrap();
        assert_eq!(facets.len(), 6);
        for f in &facets {
            assert!((f.measure() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn triangle_facets_match_edge_lengths() {
        let t = Polytope::from_vertices(vec![rv(&[0, 0]), rv(&[1, 0]), rv(&[0, 1])]);
        let mut m: Vec<f64> = t.facets().unwrap().iter().map(|f| f.measure()).collect();
        m.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((m[0] - 1.0).abs() < 1e-12);
        assert!((m[1] - 1.0).abs() < 1e-12);
        assert!((m[2] - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn volume_scaling_homogeneity() {
        let t = simplex3();
        let s = t.scale_translate(&Rat::from_int(3), &rv(&[5, -2, 7])).unwrap();
        assert_eq!(s.volume(), Rat::new(27, 6));
    }

    #[test]
    fn scale_zero_collapses_to_point() {
        let t = simplex3();
        let p = t.scale_translate(&Rat::zero(), &rv(&[2, 2, 2])).unwrap();
        assert_eq!(p.rank(), 0);
        assert_eq!(p.vertices().len(), 1);
        assert_eq!(p.volume(), Rat::zero());
    }

    #[test]
    fn negative_scale_rejected() {
        let t = simplex3();
        assert!(matches!(
            t.scale_translate(&Rat::from_int(-1), &rv(&[0, 0, 0])),
            Err(GeomError::NegativeScale(_))
        ));
    }

    #[test]
    fn support_additivity_under_sum() {
        let a = unit_cube();
        let b = simplex3();
        let s = a.minkowski_sum(&b).unwrap();
        let u = rv(&[3, -1, 2]);
        assert_eq!(
            s.support_value(&u).unwrap(),
            a.support_value(&u).unwrap() + b.support_value(&u).unwrap()
        );
    }

    #[test]
    fn sum_with_point_translates() {
        let a = simplex3();
        let point = Polytope::from_vertices(vec![rv(&[4, 5, 6])]);
        let s = a.minkowski_sum(&point).unwrap();
        let t = a.translate(&rv(&[4, 5, 6])).unwrap();
        assert_eq!(s.volume(), t.volume());
        assert_eq!(s.vertices().len(), t.vertices().len());
    }

    #[test]
    fn square_plus_square_doubles() {
        let sq = Polytope::from_vertices(vec![rv(&[0, 0]), rv(&[1, 0]), rv(&[0, 1]), rv(&[1, 1])]);
        let s = sq.minkowski_sum(&sq).unwrap();
        assert_eq!(s.volume(), Rat::from_int(4));
        assert_eq!(s.support_value(&rv(&[1, 0])).unwrap(), Rat::from_int(2));
    }

    #[test]
    fn projection_of_cube_is_square() {
        let c = unit_cube();
        let p = c.project_out(2);
        assert_eq!(p.dim(), 2);
        assert_eq!(p.volume(), Rat::one());
    }

    #[test]
    fn projection_of_triangle_is_segment() {
        let t = Polytope::from_vertices(vec![rv(&[0, 0]), rv(&[1, 0]), rv(&[0, 1])]);
        let p = t.project_out(1);
        assert_eq!(p.dim(), 1);
        assert_eq!(p.volume(), Rat::one());
    }

    #[test]
    fn zero_direction_is_an_error() {
        let t = simplex3();
        assert!(matches!(t.support_value(&rv(&[0, 0, 0])), Err(GeomError::ZeroDirection)));
    }

    #[test]
    fn hausdorff_identity_and_translation() {
        let sq = Polytope::from_vertices(vec![rv(&[-1, -1]), rv(&[1, -1]), rv(&[-1, 1]), rv(&[1, 1])]);
        assert_eq!(hausdorff_distance(&sq, &sq).unwrap(), 0.0);
        let t = sq.translate(&rv(&[3, 4])).unwrap();
        let d = hausdorff_distance(&sq, &t).unwrap();
        assert!((d - 5.0).abs() < 1e-9);
    }

    #[test]
    fn hausdorff_dilate() {
        // Square vs its 1.1-dilate about the center: distance 0.1 * h-range.
        let sq = Polytope::from_vertices(vec![rv(&[-1, -1]), rv(&[1, -1]), rv(&[-1, 1]), rv(&[1, 1])]);
        let d = sq
            .scale_translate(&Rat::new(11, 10), &rv(&[0, 0]))
            .unwrap();
        let h = hausdorff_distance(&sq, &d).unwrap();
        // max over the circle of 0.1 * h_sq(u) is attained at the corner
        // direction: 0.1 * sqrt(2).
        assert!((h - 0.1 * 2.0f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn containment_checks() {
        let cube = unit_cube();
        let inner = cube.scale_translate(&Rat::new(1, 2), &rv(&[0, 0, 0])).unwrap();
        assert!(cube.contains_polytope(&inner, 0.0).unwrap());
        assert!(!inner.contains_polytope(&cube, 0.0).unwrap());
    }
}
