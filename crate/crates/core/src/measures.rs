//! Mixed volumes, surface area measures, mixed area measures and the pairing
//! between measures and support-function data.
//!
//! Exactness convention: an atom of a [`SurfaceMeasure`] is stored as a
//! single outward vector whose length is the weight. For measures coming
//! from polytopes this is the facet area vector, which is rational whenever
//! the vertices are, even though the unit normal and the weight separately
//! are not. All pairings reduce to support values at unnormalized vectors,
//! so they stay exact in rational mode.
//!
//! Normalization convention: `mixed_volume` satisfies V(K,...,K) = vol(K),
//! hence V(K_1,...,K_{n-1}, L) = (1/n) * pairing(S(K_1,...,K_{n-1}), h_L).

use crate::error::{GeomError, Result};
use crate::geom::{dot, vec_scale, vec_sub, vec_to_f64, norm_f64, Polytope, Vector};
use crate::scalar::Scalar;

/// Angular threshold under which two float unit normals are the same atom.
/// Rational mode uses exact ray equality instead.
pub const NORMAL_MERGE_ANGLE: f64 = 1e-9;

/// Finite positive atomic measure on the sphere.
///
/// Each atom is an outward vector; weight = |vector|, normal = vector/|vector|.
#[derive(Debug, Clone)]
pub struct SurfaceMeasure<S: Scalar> {
    pub dim: usize,
    pub atoms: Vec<Vector<S>>,
}

impl<S: Scalar> SurfaceMeasure<S> {
    pub fn new(dim: usize, atoms: Vec<Vector<S>>) -> Self {
        SurfaceMeasure { dim, atoms }
    }

    /// Build from (normal, weight) pairs as they appear in the JSON schema.
    pub fn from_weighted_normals(dim: usize, pairs: &[(Vector<S>, S)]) -> Self {
        let atoms = pairs.iter().map(|(u, w)| vec_scale(u, w)).collect();
        SurfaceMeasure { dim, atoms }
    }

    pub fn weights_f64(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| norm_f64(&vec_to_f64(a))).collect()
    }

    pub fn unit_normals_f64(&self) -> Vec<Vec<f64>> {
        self.atoms
            .iter()
            .map(|a| {
                let v = vec_to_f64(a);
                let n = norm_f64(&v);
                v.iter().map(|x| x / n).collect()
            })
            .collect()
    }

    /// Total mass (float view).
    pub fn total_mass_f64(&self) -> f64 {
        self.weights_f64().iter().sum()
    }

    /// Sum of the atom vectors: zero exactly for polytope measures.
    pub fn centroid_defect(&self) -> Vector<S> {
        let mut acc = vec![S::zero(); self.dim];
        for a in &self.atoms {
            for k in 0..self.dim {
                acc[k] = acc[k].clone() + a[k].clone();
            }
        }
        acc
    }

    /// Merge atoms whose rays coincide (exact for rationals, within
    /// [`NORMAL_MERGE_ANGLE`] for floats). Weights on a common ray add.
    pub fn merged(&self) -> SurfaceMeasure<S> {
        let mut merged: Vec<Vector<S>> = Vec::new();
        for a in &self.atoms {
            if a.iter().all(|x| x.is_zero()) {
                continue;
            }
            match merged.iter_mut().find(|b| same_ray(b, a)) {
                Some(b) => {
                    for k in 0..self.dim {
                        b[k] = b[k].clone() + a[k].clone();
                    }
                }
                None => merged.push(a.clone()),
            }
        }
        SurfaceMeasure { dim: self.dim, atoms: merged }
    }

    /// Do the atom normals linearly span the ambient space?
    pub fn normals_span(&self) -> bool {
        let mut tracker = crate::geom::RankTracker::<S>::new();
        for a in &self.atoms {
            tracker.try_extend(a.clone());
            if tracker.rank() == self.dim {
                return true;
            }
        }
        false
    }

    pub fn scale(&self, c: &S) -> SurfaceMeasure<S> {
        SurfaceMeasure {
            dim: self.dim,
            atoms: self.atoms.iter().map(|a| vec_scale(a, c)).collect(),
        }
    }

    /// Sum of two measures with atom merging.
    pub fn add(&self, other: &SurfaceMeasure<S>) -> Result<SurfaceMeasure<S>> {
        if self.dim != other.dim {
            return Err(GeomError::DimensionMismatch(self.dim, other.dim));
        }
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Ok(SurfaceMeasure { dim: self.dim, atoms }.merged())
    }

    pub fn map_scalar<T: Scalar>(&self) -> SurfaceMeasure<T> {
        SurfaceMeasure {
            dim: self.dim,
            atoms: self
                .atoms
                .iter()
                .map(|a| a.iter().map(|x| T::from_f64(x.to_f64())).collect())
                .collect(),
        }
    }
}

/// Are `a` and `b` positive multiples of each other?
pub fn same_ray<S: Scalar>(a: &[S], b: &[S]) -> bool {
    if S::EXACT {
        // a = c b with c > 0: cross-ratios must agree and signs match.
        let mut c: Option<(S, S)> = None; // (a_k, b_k) reference pair
        for (x, y) in a.iter().zip(b) {
            match (x.is_zero(), y.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return false,
                (false, false) => {
                    if (x.clone() > S::zero()) != (y.clone() > S::zero()) {
                        return false;
                    }
                    match &c {
                        None => c = Some((x.clone(), y.clone())),
                        Some((rx, ry)) => {
                            if x.clone() * ry.clone() != y.clone() * rx.clone() {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        c.is_some()
    } else {
        let av = vec_to_f64(a);
        let bv = vec_to_f64(b);
        let (na, nb) = (norm_f64(&av), norm_f64(&bv));
        if na == 0.0 || nb == 0.0 {
            return false;
        }
        let cos = av.iter().zip(&bv).map(|(x, y)| x * y).sum::<f64>() / (na * nb);
        cos >= (1.0 - 0.5 * NORMAL_MERGE_ANGLE * NORMAL_MERGE_ANGLE).min(1.0)
    }
}

/// Finite sample of a continuous function on the sphere: directions (not
/// necessarily unit, interpreted 1-homogeneously) with values.
#[derive(Debug, Clone)]
pub struct SupportSample<S: Scalar> {
    pub dim: usize,
    pub directions: Vec<Vector<S>>,
    pub values: Vec<S>,
}

impl<S: Scalar> SupportSample<S> {
    /// Validating constructor: directions pairwise distinct as rays and not
    /// contained in a closed halfspace (so halfspace bodies are bounded).
    pub fn new(dim: usize, directions: Vec<Vector<S>>, values: Vec<S>) -> Result<Self> {
        if directions.len() != values.len() {
            return Err(GeomError::SchemaError(format!(
                "{} directions vs {} values",
                directions.len(),
                values.len()
            )));
        }
        for d in &directions {
            if d.len() != dim {
                return Err(GeomError::DimensionMismatch(d.len(), dim));
            }
            if d.iter().all(|x| x.is_zero()) {
                return Err(GeomError::ZeroDirection);
            }
        }
        for i in 0..directions.len() {
            for j in (i + 1)..directions.len() {
                if same_ray(&directions[i], &directions[j]) {
                    return Err(GeomError::InvariantViolation(format!(
                        "directions {i} and {j} coincide as rays"
                    )));
                }
            }
        }
        let sample = SupportSample { dim, directions, values };
        if !sample.directions_positively_span() {
            return Err(GeomError::InvariantViolation(
                "directions lie in a closed halfspace".into(),
            ));
        }
        Ok(sample)
    }

    /// Same-direction sample with different values (shares the validation of
    /// an existing sample).
    pub fn with_values(&self, values: Vec<S>) -> SupportSample<S> {
        assert_eq!(values.len(), self.directions.len());
        SupportSample { dim: self.dim, directions: self.directions.clone(), values }
    }

    fn directions_positively_span(&self) -> bool {
        // No nonzero d with u_i . d <= 0 for all i.
        let sys = crate::geom::HalfspaceSystem::new(
            self.dim,
            self.directions.iter().map(|u| (u.clone(), S::one())).collect(),
        );
        !crate::geom::has_recession_direction(&sys)
    }

    /// Value at a direction parallel to `dir` (1-homogeneous semantics).
    pub fn value_at_ray(&self, dir: &[S]) -> Result<S> {
        for (u, v) in self.directions.iter().zip(&self.values) {
            if same_ray(u, dir) {
                let c = parallel_ratio(dir, u);
                return Ok(v.clone() * c);
            }
        }
        Err(GeomError::MissingDirection(vec_to_f64(dir)))
    }

    /// Sample of the support function of `p` at this sample's directions.
    pub fn of_polytope(p: &Polytope<S>, directions: Vec<Vector<S>>) -> Result<SupportSample<S>> {
        let values: Result<Vec<S>> = directions.iter().map(|u| p.support_value(u)).collect();
        Ok(SupportSample { dim: p.dim(), directions, values: values? })
    }

    /// The linear function x -> a.x sampled at this sample's directions.
    pub fn linear(&self, a: &[S]) -> SupportSample<S> {
        let values = self.directions.iter().map(|u| dot(a, u)).collect();
        self.with_values(values)
    }

    pub fn is_strictly_positive(&self) -> Result<()> {
        for (i, v) in self.values.iter().enumerate() {
            if *v <= S::zero() {
                return Err(GeomError::NonPositive { index: i, value: v.to_f64() });
            }
        }
        Ok(())
    }

    pub fn map_scalar<T: Scalar>(&self) -> SupportSample<T> {
        SupportSample {
            dim: self.dim,
            directions: self
                .directions
                .iter()
                .map(|u| u.iter().map(|x| T::from_f64(x.to_f64())).collect())
                .collect(),
            values: self.values.iter().map(|v| T::from_f64(v.to_f64())).collect(),
        }
    }
}

/// The positive factor c with `a = c * b`, assuming `same_ray(a, b)`.
fn parallel_ratio<S: Scalar>(a: &[S], b: &[S]) -> S {
    for (x, y) in a.iter().zip(b) {
        if !y.is_zero() && !x.is_zero() {
            return x.clone() / y.clone();
        }
    }
    // Parallel nonzero vectors share a nonzero coordinate.
    unreachable!("parallel_ratio on non-parallel vectors")
}

/// Either side of the measure/function pairing.
pub enum SupportFn<'a, S: Scalar> {
    Body(&'a Polytope<S>),
    Sample(&'a SupportSample<S>),
}

impl<'a, S: Scalar> SupportFn<'a, S> {
    fn value_at(&self, dir: &[S]) -> Result<S> {
        match self {
            SupportFn::Body(p) => p.support_value(dir),
            SupportFn::Sample(f) => f.value_at_ray(dir),
        }
    }
}

/// Pairing sum f(normal_i) * weight_i. Linear in both arguments; vanishes on
/// linear functions when the centroid defect is zero.
pub fn integrate<S: Scalar>(measure: &SurfaceMeasure<S>, f: SupportFn<'_, S>) -> Result<S> {
    let mut acc = S::zero();
    for a in &measure.atoms {
        // f(a/|a|) * |a| = f(a) by 1-homogeneity: exact for polytopes and for
        // ray-matched samples.
        acc = acc + f.value_at(a)?;
    }
    Ok(acc)
}

/// Surface area measure of a full-dimensional polytope: one atom per facet.
pub fn area_measure<S: Scalar>(p: &Polytope<S>) -> Result<SurfaceMeasure<S>> {
    let facets = p.facets()?;
    Ok(SurfaceMeasure {
        dim: p.dim(),
        atoms: facets.into_iter().map(|f| f.area_vector).collect(),
    })
}

/// Area measure extended to degenerate bodies, as required inside the mixed
/// polarization: a body flat in a hyperplane carries its (n-1)-volume at both
/// unit normals of that hyperplane; anything flatter carries no measure.
pub fn area_measure_any<S: Scalar>(p: &Polytope<S>) -> Result<SurfaceMeasure<S>> {
    let n = p.dim();
    if p.is_full_dimensional() {
        return area_measure(p);
    }
    if p.rank() + 1 < n {
        return Ok(SurfaceMeasure { dim: n, atoms: Vec::new() });
    }
    let vector = flat_volume_vector(p)?;
    if vector.iter().all(|x| x.is_zero()) {
        return Ok(SurfaceMeasure { dim: n, atoms: Vec::new() });
    }
    let neg: Vector<S> = vector.iter().map(|x| -x.clone()).collect();
    Ok(SurfaceMeasure { dim: n, atoms: vec![vector, neg] })
}

/// (n-1)-volume of a hyperplane-flat body, as a vector normal to its span.
fn flat_volume_vector<S: Scalar>(p: &Polytope<S>) -> Result<Vector<S>> {
    let n = p.dim();
    debug_assert_eq!(p.rank() + 1, n);
    let verts = p.vertices();
    let structure = crate::geom::convex_hull_structure(verts);
    // Cone the lower-dimensional boundary simplices from vertex 0 to get a
    // triangulation of the flat body, then sum aligned cross vectors.
    let v0 = structure.vertex_ids[0];
    let mut total: Option<Vector<S>> = None;
    if p.rank() == 1 {
        // Segment: cross of the single edge.
        let edge = vec_sub(&verts[1], &verts[0]);
        let c = crate::geom::cross_vector(&[edge]);
        return Ok(vec_scale(&c, &(S::one() / factorial::<S>(n - 1))));
    }
    for simplex in &structure.simplices {
        if simplex.contains(&v0) {
            continue;
        }
        let mut rows: Vec<Vector<S>> = Vec::with_capacity(n - 1);
        let base = &structure.points[v0];
        for &vi in simplex {
            rows.push(vec_sub(&structure.points[vi], base));
        }
        if rows.len() != n - 1 {
            continue;
        }
        let c = crate::geom::cross_vector(&rows);
        if c.iter().all(|x| x.is_zero()) {
            continue;
        }
        total = Some(match total {
            None => c,
            Some(t) => {
                let align = dot(&t, &c);
                let sign = if align >= S::zero() { S::one() } else { -S::one() };
                let mut t2 = t;
                for k in 0..n {
                    t2[k] = t2[k].clone() + sign.clone() * c[k].clone();
                }
                t2
            }
        });
    }
    let total = total.ok_or_else(|| {
        GeomError::DegenerateInput("flat body produced no nondegenerate simplices".into())
    })?;
    Ok(vec_scale(&total, &(S::one() / factorial::<S>(n - 1))))
}

fn factorial<S: Scalar>(k: usize) -> S {
    let mut acc = S::one();
    for i in 2..=k {
        acc = acc * S::from_int(i as i64);
    }
    acc
}

fn binomial(n: usize, k: usize) -> i64 {
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * ((n - i) as i64) / ((i + 1) as i64);
    }
    acc
}

/// Mixed volume of `n` bodies in dimension `n` by polarization over subset
/// sums: V = (1/n!) sum over nonempty S of (-1)^{n-|S|} vol(sum_{i in S} K_i).
pub fn mixed_volume<S: Scalar>(bodies: &[&Polytope<S>]) -> Result<S> {
    if bodies.is_empty() {
        return Err(GeomError::SchemaError("mixed volume of no bodies".into()));
    }
    let n = bodies[0].dim();
    if bodies.len() != n {
        return Err(GeomError::SchemaError(format!(
            "mixed volume needs {n} bodies in dimension {n}, got {}",
            bodies.len()
        )));
    }
    for b in bodies {
        if b.dim() != n {
            return Err(GeomError::DimensionMismatch(b.dim(), n));
        }
    }
    let mut acc = S::zero();
    // Depth-first over subsets, reusing the partial Minkowski sums.
    fn recurse<S: Scalar>(
        bodies: &[&Polytope<S>],
        idx: usize,
        current: Option<&Polytope<S>>,
        size: usize,
        acc: &mut S,
    ) -> Result<()> {
        if idx == bodies.len() {
            if let Some(p) = current {
                let n = bodies.len();
                let term = p.volume();
                *acc = if (n - size) % 2 == 0 { acc.clone() + term } else { acc.clone() - term };
            }
            return Ok(());
        }
        recurse(bodies, idx + 1, current, size, acc)?;
        let with = match current {
            None => bodies[idx].clone(),
            Some(p) => p.minkowski_sum(bodies[idx])?,
        };
        recurse(bodies, idx + 1, Some(&with), size + 1, acc)?;
        Ok(())
    }
    recurse(bodies, 0, None, 0, &mut acc)?;
    Ok(acc / factorial::<S>(n))
}

/// Mixed volume with multiplicities: V(K_1^{m_1}, ..., K_r^{m_r}). This is
/// the same polarization with subset choices grouped by multiplicity, so it
/// needs far fewer distinct volume evaluations for repeated bodies.
pub fn mixed_volume_grouped<S: Scalar>(groups: &[(&Polytope<S>, usize)]) -> Result<S> {
    let n: usize = groups.iter().map(|(_, m)| m).sum();
    if n == 0 {
        return Err(GeomError::SchemaError("mixed volume of no bodies".into()));
    }
    for (b, _) in groups {
        if b.dim() != n {
            return Err(GeomError::DimensionMismatch(b.dim(), n));
        }
    }
    let mut acc = S::zero();
    let mut counts = vec![0usize; groups.len()];
    loop {
        let total: usize = counts.iter().sum();
        if total > 0 {
            // Body sum_j counts[j] * K_j, via scaling and summing.
            let mut sum: Option<Polytope<S>> = None;
            for (j, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let scaled = groups[j]
                    .0
                    .scale_translate(&S::from_int(c as i64), &vec![S::zero(); groups[j].0.dim()])?;
                sum = Some(match sum {
                    None => scaled,
                    Some(p) => p.minkowski_sum(&scaled)?,
                });
            }
            let vol = sum.expect("nonempty combination").volume();
            let mut coeff: i64 = 1;
            for (j, &c) in counts.iter().enumerate() {
                coeff *= binomial(groups[j].1, c);
            }
            let term = S::from_int(coeff) * vol;
            acc = if (n - total) % 2 == 0 { acc + term } else { acc - term };
        }
        // Advance the multi-index.
        let mut j = 0;
        loop {
            if j == counts.len() {
                return Ok(acc / factorial::<S>(n));
            }
            if counts[j] < groups[j].1 {
                counts[j] += 1;
                break;
            }
            counts[j] = 0;
            j += 1;
        }
    }
}

/// Mixed area measure of n-1 bodies by polarization of area measures, atoms
/// merged by the ray-identification rule. A negative residue beyond the
/// cancellation tolerance is an error.
pub fn mixed_area_measure<S: Scalar>(bodies: &[&Polytope<S>]) -> Result<SurfaceMeasure<S>> {
    if bodies.is_empty() {
        return Err(GeomError::SchemaError("mixed area measure of no bodies".into()));
    }
    let n = bodies[0].dim();
    if bodies.len() != n - 1 {
        return Err(GeomError::SchemaError(format!(
            "mixed area measure needs {} bodies in dimension {n}, got {}",
            n - 1,
            bodies.len()
        )));
    }
    for b in bodies {
        if b.dim() != n {
            return Err(GeomError::DimensionMismatch(b.dim(), n));
        }
    }
    // Signed accumulation of area-measure atoms over subset sums. The sign
    // is kept separate from the atom vector: a negative contribution on a
    // ray subtracts there rather than feeding the opposite ray.
    let mut signed_atoms: Vec<(bool, Vector<S>)> = Vec::new();
    let subset_count: u32 = 1 << (n - 1);
    let mut full_dim_sum = false;
    for mask in 1..subset_count {
        let mut sum: Option<Polytope<S>> = None;
        for (j, b) in bodies.iter().enumerate() {
            if mask & (1 << j) == 0 {
                continue;
            }
            sum = Some(match sum {
                None => (*b).clone(),
                Some(p) => p.minkowski_sum(b)?,
            });
        }
        let body = sum.expect("nonempty subset");
        if mask == subset_count - 1 && body.is_full_dimensional() {
            full_dim_sum = true;
        }
        let size = mask.count_ones() as usize;
        let measure = area_measure_any(&body)?;
        let positive = (n - 1 - size) % 2 == 0;
        for a in measure.atoms {
            signed_atoms.push((positive, a));
        }
    }
    if !full_dim_sum {
        return Err(GeomError::DegenerateInput(
            "Minkowski sum of the bodies is not full-dimensional".into(),
        ));
    }

    // Merge along oriented rays; net cancellation below zero is an error.
    let factor = S::one() / factorial::<S>(n - 1);
    let mut rays: Vec<(Vector<S>, Vector<S>)> = Vec::new(); // (reference ray, accumulated vector)
    for (positive, a) in signed_atoms {
        if a.iter().all(|x| x.is_zero()) {
            continue;
        }
        let contribution: Vector<S> = if positive {
            a.clone()
        } else {
            a.iter().map(|x| -x.clone()).collect()
        };
        let mut placed = false;
        for (ray, acc) in rays.iter_mut() {
            if same_ray(ray, &a) {
                for k in 0..acc.len() {
                    acc[k] = acc[k].clone() + contribution[k].clone();
                }
                placed = true;
                break;
            }
        }
        if !placed {
            rays.push((a, contribution));
        }
    }
    let scale_f64: f64 = rays
        .iter()
        .map(|(_, acc)| norm_f64(&vec_to_f64(acc)))
        .fold(1.0, f64::max);
    let mut atoms: Vec<Vector<S>> = Vec::new();
    for (ray, acc) in rays {
        let weight = norm_f64(&vec_to_f64(&acc));
        if weight <= 1e-10 * scale_f64 && !S::EXACT {
            continue;
        }
        if acc.iter().all(|x| x.is_zero()) {
            continue;
        }
        // Did cancellation flip the ray? That is a negative atom.
        if dot(&ray, &acc) < S::zero() {
            return Err(GeomError::NumericalResidue(weight));
        }
        atoms.push(vec_scale(&acc, &factor));
    }
    Ok(SurfaceMeasure { dim: n, atoms })
}

/// V(K_1,...,K_{n-1}, L) through the mixed area measure:
/// (1/n) * sum over atoms of h_L(normal) * weight.
pub fn mixed_volume_via_measure<S: Scalar>(
    bodies: &[&Polytope<S>],
    target: SupportFn<'_, S>,
) -> Result<S> {
    let measure = mixed_area_measure(bodies)?;
    let pairing = integrate(&measure, target)?;
    let n = measure.dim;
    Ok(pairing / S::from_int(n as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Polytope;
    use crate::scalar::Rat;

    fn rv(coords: &[i64]) -> Vector<Rat> {
        coords.iter().map(|&c| Rat::from_int(c)).collect()
    }

    fn unit_square() -> Polytope<Rat> {
        Polytope::from_vertices(vec![rv(&[0, 0]), rv(&[1, 0]), rv(&[0, 1]), rv(&[1, 1])])
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

    fn axis_box(n: usize, sides: &[(i64, i64)]) -> Polytope<Rat> {
        let mut pts = vec![vec![]];
        for k in 0..n {
            let mut next = Vec::new();
            for p in &pts {
                for v in [sides[k].0, sides[k].1] {
                    let mut q: Vec<Rat> = p.clone();
                    q.push(Rat::from_int(v));
                    next.push(q);
                }
            }
            pts = next;
        }
        Polytope::from_vertices(pts)
    }

    #[test]
    fn area_measure_of_square() {
        let m = area_measure(&unit_square()).unwrap();
        assert_eq!(m.atoms.len(), 4);
        let mut weights = m.weights_f64();
        weights.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(weights.iter().all(|w| (w - 1.0).abs() < 1e-12));
        // Translation invariance.
        let t = unit_square().translate(&rv(&[7, -2])).unwrap();
        let mt = area_measure(&t).unwrap();
        for a in &m.atoms {
            assert!(mt.atoms.iter().any(|b| b == a));
        }
    }

    #[test]
    fn area_measure_scaling_homogeneity() {
        let p = unit_cube();
        let s = p.scale_translate(&Rat::from_int(3), &rv(&[0, 0, 0])).unwrap();
        let m = area_measure(&s).unwrap();
        for w in m.weights_f64() {
            assert!((w - 9.0).abs() < 1e-9);
        }
    }

    #[test]
    fn area_measure_of_triangle() {
        let t = Polytope::from_vertices(vec![rv(&[0, 0]), rv(&[1, 0]), rv(&[0, 1])]);
        let m = area_measure(&t).unwrap();
        assert_eq!(m.atoms.len(), 3);
        assert!(m.atoms.iter().any(|a| a == &rv(&[0, -1])));
        assert!(m.atoms.iter().any(|a| a == &rv(&[-1, 0])));
        assert!(m.atoms.iter().any(|a| a == &rv(&[1, 1])));
    }

    #[test]
    fn centroid_defect_zero_for_polytopes() {
        let m = area_measure(&unit_cube()).unwrap();
        assert!(m.centroid_defect().iter().all(|x| x.is_zero()));
        let single = SurfaceMeasure::new(2, vec![rv(&[1, 0])]);
        assert_eq!(single.centroid_defect(), rv(&[1, 0]));
    }

    #[test]
    fn mixed_volume_diagonal_is_volume() {
        let c = unit_cube();
        let v = mixed_volume(&[&c, &c, &c]).unwrap();
        assert_eq!(v, Rat::one());
    }

    #[test]
    fn mixed_volume_square_segment() {
        let sq = unit_square();
        let seg = Polytope::from_vertices(vec![rv(&[0, 0]), rv(&[1, 0])]);
        let v = mixed_volume(&[&sq, &seg]).unwrap();
        assert_eq!(v, Rat::new(1, 2));
    }

    #[test]
    fn mixed_volume_axis_boxes_closed_form() {
        // V = (a1 b2 + a2 b1) / 2 for axis boxes with side lengths a, b.
        let a = axis_box(2, &[(0, 3), (0, 2)]);
        let b = axis_box(2, &[(0, 5), (0, 7)]);
        let v = mixed_volume(&[&a, &b]).unwrap();
        assert_eq!(v, Rat::new(3 * 7 + 2 * 5, 2));
    }

    #[test]
    fn mixed_volume_symmetric_and_multilinear() {
        let a = axis_box(2, &[(0, 1), (0, 2)]);
        let b = Polytope::from_vertices(vec![rv(&[0, 0]), rv(&[2, 1]), rv(&[1, 3])]);
        let ab = mixed_volume(&[&a, &b]).unwrap();
        let ba = mixed_volume(&[&b, &a]).unwrap();
        assert_eq!(ab, ba);
        // V(2a, b) = 2 V(a, b) exactly.
        let a2 = a.scale_translate(&Rat::from_int(2), &rv(&[0, 0])).unwrap();
        assert_eq!(mixed_volume(&[&a2, &b]).unwrap(), Rat::from_int(2) * ab.clone());
        // Additivity in the first slot.
        let c = axis_box(2, &[(0, 2), (0, 1)]);
        let ac = a.minkowski_sum(&c).unwrap();
        let lhs = mixed_volume(&[&ac, &b]).unwrap();
        let rhs = ab + mixed_volume(&[&c, &b]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn grouped_matches_plain() {
        let a = unit_cube();
        let b = Polytope::from_vertices(vec![
            rv(&[0, 0, 0]),
            rv(&[2, 0, 1]),
            rv(&[0, 3, 1]),
            rv(&[1, 1, 2]),
        ]);
        let plain = mixed_volume(&[&a, &a, &b]).unwrap();
        let grouped = mixed_volume_grouped(&[(&a, 2), (&b, 1)]).unwrap();
        assert_eq!(plain, grouped);
    }

    #[test]
    fn mixed_area_measure_diagonal() {
        let c = unit_cube();
        let m = mixed_area_measure(&[&c, &c]).unwrap();
        let direct = area_measure(&c).unwrap();
        assert_eq!(m.atoms.len(), direct.atoms.len());
        for a in &direct.atoms {
            assert!(m.atoms.iter().any(|b| b == a));
        }
    }

    #[test]
    fn mixed_area_measure_cube_segment_prism() {
        // Atoms sit on the four lateral normals; the weight 1/2 each is
        // pinned by V(cube, cube, seg) = 1/3 via the pairing identity below.
        let c = unit_cube();
        let seg = Polytope::from_vertices(vec![rv(&[0, 0, 0]), rv(&[0, 0, 1])]);
        let m = mixed_area_measure(&[&c, &seg]).unwrap();
        assert_eq!(m.atoms.len(), 4);
        for a in &m.atoms {
            assert!(a[2].is_zero(), "no vertical atoms: {a:?}");
        }
        for w in m.weights_f64() {
            assert!((w - 0.5).abs() < 1e-12);
        }
        // Defining identity: V(cube, seg, L) = (1/3) pairing(S(cube, seg), h_L).
        let via = mixed_volume_via_measure(&[&c, &seg], SupportFn::Body(&c)).unwrap();
        let direct = mixed_volume(&[&c, &seg, &c]).unwrap();
        assert_eq!(via, direct);
        assert_eq!(direct, Rat::new(1, 3));
    }

    #[test]
    fn measure_oracle_agreement_examples() {
        let sq = unit_square();
        let seg = Polytope::from_vertices(vec![rv(&[0, 0]), rv(&[1, 0])]);
        let via = mixed_volume_via_measure(&[&sq], SupportFn::Body(&seg)).unwrap();
        assert_eq!(via, Rat::new(1, 2));
        let c = unit_cube();
        let via3 = mixed_volume_via_measure(&[&c, &c], SupportFn::Body(&c)).unwrap();
        assert_eq!(via3, Rat::one());
    }

    #[test]
    fn pairing_with_point_is_zero() {
        // A single point's support function is linear; the pairing against a
        // centroid-zero measure vanishes exactly.
        let c = unit_cube();
        let point = Polytope::from_vertices(vec![rv(&[3, -1, 2])]);
        let v = mixed_volume_via_measure(&[&c, &c], SupportFn::Body(&point)).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn pairing_reproduces_mixed_volume_and_kills_linear() {
        let sq = unit_square();
        let m = area_measure(&sq).unwrap();
        let pair = integrate(&m, SupportFn::Body(&sq)).unwrap();
        // n V(K, K) = n vol = 2 * 1.
        assert_eq!(pair, Rat::from_int(2));
        let lin = SupportSample::of_polytope(&sq, m.atoms.clone()).unwrap().linear(&rv(&[5, -3]));
        let z = integrate(&m, SupportFn::Sample(&lin)).unwrap();
        assert!(z.is_zero());
        // Nonnegative sample pairs nonnegatively.
        let ones = lin.with_values(vec![Rat::one(); lin.values.len()]);
        assert!(integrate(&m, SupportFn::Sample(&ones)).unwrap() > Rat::zero());
    }

    #[test]
    fn missing_direction_is_reported() {
        let sq = unit_square();
        let m = area_measure(&sq).unwrap();
        let partial = SupportSample {
            dim: 2,
            directions: vec![rv(&[1, 0])],
            values: vec![Rat::one()],
        };
        assert!(matches!(
            integrate(&m, SupportFn::Sample(&partial)),
            Err(GeomError::MissingDirection(_))
        ));
    }

    #[test]
    fn mixed_area_normals_span() {
        let c = unit_cube();
        let o = Polytope::from_vertices(vec![
            rv(&[1, 0, 0]),
            rv(&[-1, 0, 0]),
            rv(&[0, 1, 0]),
            rv(&[0, -1, 0]),
            rv(&[0, 0, 1]),
            rv(&[0, 0, -1]),
        ]);
        let m = mixed_area_measure(&[&c, &o]).unwrap();
        assert!(m.normals_span());
    }
}
