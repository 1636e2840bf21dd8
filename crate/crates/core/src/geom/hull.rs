//! Incremental convex hull with exact (or exactly-filtered) orientation
//! predicates, for any ambient dimension at desk scale.
//!
//! The algorithm is beneath-beyond: start from a full-dimensional simplex,
//! insert the remaining points one at a time, replace the facets strictly
//! visible from the new point by the cone over the horizon ridges. Strict
//! visibility plus exact sign decisions make the result combinatorially
//! correct; points on a facet hyperplane are never vertices unless they are
//! genuinely extreme (in which case some other facet sees them strictly).
//!
//! Simplicial facets are merged into geometric facets afterwards by walking
//! ridge adjacencies and testing coplanarity with the same predicate.

use std::collections::HashMap;

use super::{cross_vector, dot, vec_scale, vec_sub, RankTracker, Vector};
use crate::scalar::Scalar;

/// One geometric (merged) facet of a full-dimensional hull.
#[derive(Debug, Clone)]
pub struct MergedFacet<S: Scalar> {
    /// Indices into the hull's point list.
    pub vertices: Vec<usize>,
    /// Outward vector of length equal to the facet's (n-1)-volume.
    pub area_vector: Vector<S>,
    /// Support value: `area_vector · v` for every facet vertex `v`.
    pub support: S,
}

/// Result of a hull computation over a deduplicated point set.
#[derive(Debug, Clone)]
pub struct HullStructure<S: Scalar> {
    pub dim: usize,
    /// Affine rank of the point set (== dim iff full-dimensional).
    pub rank: usize,
    /// The deduplicated input points.
    pub points: Vec<Vector<S>>,
    /// Indices of extreme points.
    pub vertex_ids: Vec<usize>,
    /// Oriented simplicial boundary facets (full-dimensional case only).
    pub simplices: Vec<Vec<usize>>,
    /// Merged geometric facets (full-dimensional case only).
    pub facets: Vec<MergedFacet<S>>,
}

fn orientation<S: Scalar>(points: &[Vector<S>], facet: &[usize], x: &[S]) -> i8 {
    let w0 = &points[facet[0]];
    let mut rows: Vec<Vector<S>> = facet[1..].iter().map(|&i| vec_sub(&points[i], w0)).collect();
    rows.push(vec_sub(x, w0));
    S::det_sign(&rows)
}

/// Convex hull of `points`; handles lower-dimensional inputs by recursing in
/// affine coordinates (such inputs yield `rank < dim` and no facet data).
pub fn convex_hull_structure<S: Scalar>(points_in: &[Vector<S>]) -> HullStructure<S> {
    assert!(!points_in.is_empty(), "hull of empty point set");
    let dim = points_in[0].len();

    // Deduplicate exactly equal points.
    let mut points: Vec<Vector<S>> = Vec::new();
    for p in points_in {
        assert_eq!(p.len(), dim, "mixed dimensions in hull input");
        if !points.iter().any(|q| q == p) {
            points.push(p.clone());
        }
    }

    // Affine basis.
    let mut tracker = RankTracker::<S>::new();
    let mut basis = vec![0usize];
    for (i, p) in points.iter().enumerate().skip(1) {
        if tracker.try_extend(vec_sub(p, &points[0])) {
            basis.push(i);
            if tracker.rank() == dim {
                break;
            }
        }
    }
    let rank = tracker.rank();

    if rank < dim {
        return lower_dimensional_hull(dim, rank, points, &tracker, &basis);
    }
    if dim == 1 {
        return hull_dim1(points);
    }
    full_dimensional_hull(dim, points, basis)
}

fn hull_dim1<S: Scalar>(points: Vec<Vector<S>>) -> HullStructure<S> {
    let mut lo = 0usize;
    let mut hi = 0usize;
    for (i, p) in points.iter().enumerate() {
        if p[0] < points[lo][0] {
            lo = i;
        }
        if p[0] > points[hi][0] {
            hi = i;
        }
    }
    let facets = vec![
        MergedFacet { vertices: vec![lo], area_vector: vec![-S::one()], support: -points[lo][0].clone() },
        MergedFacet { vertices: vec![hi], area_vector: vec![S::one()], support: points[hi][0].clone() },
    ];
    HullStructure {
        dim: 1,
        rank: 1,
        points,
        vertex_ids: if lo == hi { vec![lo] } else { vec![lo, hi] },
        simplices: vec![vec![lo], vec![hi]],
        facets,
    }
}

fn lower_dimensional_hull<S: Scalar>(
    dim: usize,
    rank: usize,
    points: Vec<Vector<S>>,
    tracker: &RankTracker<S>,
    basis: &[usize],
) -> HullStructure<S> {
    if rank == 0 {
        return HullStructure {
            dim,
            rank,
            vertex_ids: vec![0],
            points,
            simplices: Vec::new(),
            facets: Vec::new(),
        };
    }
    // Affine coordinates: solve x - p0 = B^T lambda restricted to pivot columns.
    let b_rows: Vec<Vector<S>> = basis[1..].iter().map(|&i| vec_sub(&points[i], &points[0])).collect();
    let cols = tracker.pivots();
    let matrix: Vec<Vec<S>> = (0..rank)
        .map(|r| cols.iter().map(|&c| b_rows[r][c].clone()).collect())
        .collect();
    // The system is lambda^T * matrix = rhs; transpose for column solve.
    let mt: Vec<Vec<S>> = (0..rank)
        .map(|i| (0..rank).map(|j| matrix[j][i].clone()).collect())
        .collect();
    let projected: Vec<Vector<S>> = points
        .iter()
        .map(|p| {
            let d = vec_sub(p, &points[0]);
            let rhs: Vec<S> = cols.iter().map(|&c| d[c].clone()).collect();
            super::solve_linear(&mt, &rhs).expect("basis system must be solvable")
        })
        .collect();
    let inner = convex_hull_structure(&projected);
    HullStructure {
        dim,
        rank,
        vertex_ids: inner.vertex_ids,
        simplices: inner.simplices,
        points,
        facets: Vec::new(),
    }
}

fn full_dimensional_hull<S: Scalar>(
    dim: usize,
    points: Vec<Vector<S>>,
    basis: Vec<usize>,
) -> HullStructure<S> {
    let n_plus_1 = S::from_int((dim + 1) as i64);
    let interior: Vector<S> = (0..dim)
        .map(|k| {
            let mut acc = S::zero();
            for &i in &basis {
                acc = acc + points[i][k].clone();
            }
            acc / n_plus_1.clone()
        })
        .collect();

    // Initial simplex facets: leave one basis vertex out at a time.
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for skip in 0..basis.len() {
        let f: Vec<usize> = basis
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != skip)
            .map(|(_, &i)| i)
            .collect();
        facets.push(orient_outward(&points, f, &interior));
    }

    let in_basis = |i: usize| basis.contains(&i);
    for p_idx in 0..points.len() {
        if in_basis(p_idx) {
            continue;
        }
        let p = points[p_idx].clone();
        let visible: Vec<usize> = (0..facets.len())
            .filter(|&f| orientation(&points, &facets[f], &p) > 0)
            .collect();
        if visible.is_empty() {
            continue;
        }
        // Ridges of the visible region that occur once are the horizon.
        let mut ridge_count: HashMap<Vec<usize>, usize> = HashMap::new();
        for &f in &visible {
            for skip in 0..facets[f].len() {
                let mut ridge: Vec<usize> = facets[f]
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                ridge.sort_unstable();
                *ridge_count.entry(ridge).or_insert(0) += 1;
            }
        }
        let horizon: Vec<Vec<usize>> = ridge_count
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(r, _)| r)
            .collect();
        let mut keep: Vec<Vec<usize>> = facets
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !visible.contains(i))
            .map(|(_, f)| f)
            .collect();
        for ridge in horizon {
            let mut f = ridge;
            f.push(p_idx);
            keep.push(orient_outward(&points, f, &interior));
        }
        facets = keep;
    }

    let mut vertex_ids: Vec<usize> = facets.iter().flatten().copied().collect();
    vertex_ids.sort_unstable();
    vertex_ids.dedup();

    let merged = merge_coplanar(dim, &points, &facets);

    HullStructure { dim, rank: dim, points, vertex_ids, simplices: facets, facets: merged }
}

fn orient_outward<S: Scalar>(points: &[Vector<S>], mut f: Vec<usize>, interior: &[S]) -> Vec<usize> {
    let s = orientation(points, &f, interior);
    debug_assert!(s != 0, "interior point on facet hyperplane");
    if s > 0 {
        let len = f.len();
        f.swap(len - 1, len - 2);
    }
    f
}

fn simplex_area_vector<S: Scalar>(points: &[Vector<S>], f: &[usize]) -> Vector<S> {
    let n = points[0].len();
    let w0 = &points[f[0]];
    let rows: Vec<Vector<S>> = f[1..].iter().map(|&i| vec_sub(&points[i], w0)).collect();
    let c = cross_vector(&rows);
    // The stored orientation makes det([rows; x - w0]) < 0 for interior x,
    // i.e. c points outward already; scale by 1/(n-1)!.
    let mut fact = S::one();
    for k in 2..n {
        fact = fact * S::from_int(k as i64);
    }
    vec_scale(&c, &(S::one() / fact))
}

fn merge_coplanar<S: Scalar>(
    dim: usize,
    points: &[Vector<S>],
    simplices: &[Vec<usize>],
) -> Vec<MergedFacet<S>> {
    let m = simplices.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }

    // Adjacency via shared ridges.
    let mut ridge_map: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (fi, f) in simplices.iter().enumerate() {
        for skip in 0..f.len() {
            let mut ridge: Vec<usize> = f
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != skip)
                .map(|(_, &v)| v)
                .collect();
            ridge.sort_unstable();
            ridge_map.entry(ridge).or_default().push(fi);
        }
    }
    for (ridge, fs) in &ridge_map {
        if fs.len() != 2 {
            continue;
        }
        let (a, b) = (fs[0], fs[1]);
        // Vertex of b that is not on the shared ridge.
        let apex = simplices[b].iter().copied().find(|v| !ridge.contains(v)).unwrap();
        if orientation(points, &simplices[a], &points[apex]) == 0 {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }

    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..m {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }

    let mut out = Vec::new();
    for (_, group) in groups {
        let mut verts: Vec<usize> = group.iter().flat_map(|&i| simplices[i].iter().copied()).collect();
        verts.sort_unstable();
        verts.dedup();
        let mut area = vec![S::zero(); dim];
        for &i in &group {
            let a = simplex_area_vector(points, &simplices[i]);
            for k in 0..dim {
                area[k] = area[k].clone() + a[k].clone();
            }
        }
        // Mean of per-vertex supports: identical values in exact mode,
        // averaged rounding in float mode.
        let count = S::from_int(verts.len() as i64);
        let mut support = S::zero();
        for &v in &verts {
            support = support + dot(&area, &points[v]);
        }
        support = support / count;
        out.push(MergedFacet { vertices: verts, area_vector: area, support });
    }
    // Deterministic order.
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn rv(coords: &[i64]) -> Vector<Rat> {
        coords.iter().map(|&c| Rat::from_int(c)).collect()
    }

    #[test]
    fn unit_square_hull() {
        let pts = vec![rv(&[0, 0]), rv(&[1, 0]), rv(&[0, 1]), rv(&[1, 1])];
        let h = convex_hull_structure(&pts);
        assert_eq!(h.rank, 2);
        assert_eq!(h.vertex_ids.len(), 4);
        assert_eq!(h.facets.len(), 4);
        for f in &h.facets {
            let m: f64 = f.area_vector.iter().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt();
            assert!((m - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn interior_point_dropped() {
        let pts = vec![rv(&[0, 0]), rv(&[2, 0]), rv(&[0, 2]), vec![Rat::from_int(1), Rat::new(1, 2)]];
        let h = convex_hull_structure(&pts);
        assert_eq!(h.vertex_ids, vec![0, 1, 2]);
    }

    #[test]
    fn boundary_point_dropped() {
        // Midpoint of an edge is not extreme.
        let pts = vec![rv(&[0, 0]), rv(&[2, 0]), rv(&[0, 2]), rv(&[1, 0])];
        let h = convex_hull_structure(&pts);
        assert_eq!(h.vertex_ids, vec![0, 1, 2]);
    }

    #[test]
    fn cube_hull_facets() {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(rv(&[x, y, z]));
                }
            }
        }
        let h = convex_hull_structure(&pts);
        assert_eq!(h.vertex_ids.len(), 8);
        assert_eq!(h.facets.len(), 6, "coplanar triangles must merge");
        // Closedness: sum of area vectors vanishes exactly.
        for k in 0..3 {
            let mut acc = Rat::zero();
            for f in &h.facets {
                acc = acc + f.area_vector[k].clone();
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn segment_is_lower_dimensional() {
        let pts = vec![rv(&[0, 0, 0]), rv(&[1, 1, 1]), rv(&[2, 2, 2])];
        let h = convex_hull_structure(&pts);
        assert_eq!(h.rank, 1);
        assert_eq!(h.vertex_ids, vec![0, 2]);
    }

    #[test]
    fn float_hull_with_near_degenerate_point() {
        let pts: Vec<Vec<f64>> = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.5, 0.5], // exactly on the hypotenuse
        ];
        let h = convex_hull_structure(&pts);
        assert_eq!(h.vertex_ids, vec![0, 1, 2]);
    }
}
