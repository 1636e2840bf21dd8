//! Numerical solution of Minkowski's existence problem for polytopes, plus
//! Blaschke addition and mixed bodies built on top of it.
//!
//! Given a positive atomic measure with zero centroid whose normals span,
//! the solver finds the polytope P = {x : u_i . x <= h_i} whose facet areas
//! match the atom weights. It runs a damped Newton iteration on the support
//! numbers for the classical variational characterization
//!
//!   minimize sum_i f_i h_i  subject to vol(P(h)) = 1,
//!
//! whose KKT condition is f = lambda F(h) with F the facet areas, followed by
//! the rescaling that turns proportionality into equality. The Jacobian
//! dF/dh is obtained by finite differences of facet measures; translations
//! span its kernel, so the Newton system carries a translation-pinning
//! regularization term (the target's zero centroid makes the system
//! consistent, and the pinned solution is the one without translation drift).

use crate::error::{GeomError, Result};
use crate::geom::{
    dot, norm_f64, normalize_f64, solve_linear, vec_to_f64, Polytope, RankTracker, Vector,
};
use crate::measures::{area_measure, mixed_area_measure, SurfaceMeasure};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct SolverOptions {
    /// Relative facet-area error target.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Initial Newton damping factor.
    pub damping: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tolerance: 1e-8, max_iterations: 200, damping: 1.0 }
    }
}

#[derive(Debug, Clone)]
pub struct SolveDiagnostics {
    pub iterations: usize,
    /// Max relative facet-area error of the returned polytope.
    pub max_relative_area_error: f64,
    /// Centroid defect |sum w_i u_i| of the achieved measure.
    pub centroid_defect: f64,
}

/// Tolerance on the centroid defect of an admissible target measure,
/// relative to the total mass.
pub const CENTROID_TOLERANCE: f64 = 1e-8;

struct Evaluation {
    vertices: Vec<Vec<f64>>,
    /// Per-constraint facet (n-1)-measures, zero when the facet is empty.
    facet_areas: Vec<f64>,
    volume: f64,
}

/// Vertices and facet areas of P(h) = {x : u_i . x <= h_i}; `None` when the
/// body is empty or the enumeration degenerates.
fn evaluate_body(normals: &[Vec<f64>], h: &[f64]) -> Option<Evaluation> {
    let n = normals[0].len();
    let m = normals.len();
    let scale = h.iter().fold(1.0f64, |a, &x| a.max(x.abs()));
    let tol = 1e-9 * scale;

    let mut vertices: Vec<Vec<f64>> = Vec::new();
    let mut active: Vec<Vec<usize>> = Vec::new();
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let matrix: Vec<Vec<f64>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let rhs: Vec<f64> = subset.iter().map(|&i| h[i]).collect();
        if let Some(x) = solve_linear(&matrix, &rhs) {
            let mut feasible = true;
            let mut act: Vec<usize> = Vec::new();
            for (j, u) in normals.iter().enumerate() {
                let s = dot(u, &x);
                if s > h[j] + tol {
                    feasible = false;
                    break;
                }
                if (s - h[j]).abs() <= tol {
                    act.push(j);
                }
            }
            if feasible {
                let dup = vertices.iter().position(|v| {
                    v.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) <= 10.0 * tol
                });
                match dup {
                    Some(k) => {
                        for j in act {
                            if !active[k].contains(&j) {
                                active[k].push(j);
                            }
                        }
                    }
                    None => {
                        vertices.push(x);
                        active.push(act);
                    }
                }
            }
        }
        // Next combination.
        let mut i = n;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if subset[i] < m - n + i {
                subset[i] += 1;
                for j in (i + 1)..n {
                    subset[j] = subset[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    if vertices.len() < n + 1 {
        return None;
    }

    let mut facet_areas = vec![0.0f64; m];
    for (i, u) in normals.iter().enumerate() {
        let incident: Vec<&Vec<f64>> = vertices
            .iter()
            .zip(&active)
            .filter(|(_, a)| a.contains(&i))
            .map(|(v, _)| v)
            .collect();
        if incident.len() < n {
            continue;
        }
        facet_areas[i] = facet_measure(u, &incident);
    }
    let volume = dot(h, &facet_areas) / n as f64;
    Some(Evaluation { vertices, facet_areas, volume })
}

/// (n-1)-measure of the facet with normal `u` through the given vertices,
/// computed in an orthonormal frame of the hyperplane.
fn facet_measure(u: &[f64], verts: &[&Vec<f64>]) -> f64 {
    let n = u.len();
    let basis = hyperplane_basis(u);
    let projected: Vec<Vec<f64>> = verts
        .iter()
        .map(|v| basis.iter().map(|b| dot(b, v)).collect())
        .collect();
    if n == 2 {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in &projected {
            lo = lo.min(p[0]);
            hi = hi.max(p[0]);
        }
        return (hi - lo).max(0.0);
    }
    Polytope::<f64>::hull_any(&projected).volume()
}

/// Orthonormal basis of the hyperplane orthogonal to `u`.
fn hyperplane_basis(u: &[f64]) -> Vec<Vec<f64>> {
    let n = u.len();
    let un = normalize_f64(u);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n - 1);
    for k in 0..n {
        let mut e = vec![0.0; n];
        e[k] = 1.0;
        // Project out u and the accepted basis vectors.
        let cu = dot(&e, &un);
        for (j, x) in e.iter_mut().enumerate() {
            *x -= cu * un[j];
        }
        for b in &basis {
            let c = dot(&e, b);
            for (j, x) in e.iter_mut().enumerate() {
                *x -= c * b[j];
            }
        }
        let norm = norm_f64(&e);
        if norm > 1e-8 {
            basis.push(e.iter().map(|x| x / norm).collect());
            if basis.len() == n - 1 {
                break;
            }
        }
    }
    basis
}

/// Solve Minkowski's problem: find the polytope (unique up to translation)
/// whose facet normals are the target atoms' normals and whose facet areas
/// are the weights. The result is translated so its vertex centroid is zero.
pub fn solve_minkowski<S: Scalar>(
    target: &SurfaceMeasure<S>,
    opts: &SolverOptions,
) -> Result<(Polytope<f64>, SolveDiagnostics)> {
    let merged = target.merged();
    let n = merged.dim;
    let normals: Vec<Vec<f64>> = merged.unit_normals_f64();
    let weights: Vec<f64> = merged.weights_f64();
    let m = normals.len();
    if m == 0 || weights.iter().any(|&w| w <= 0.0) {
        return Err(GeomError::SchemaError("target measure must have positive atoms".into()));
    }

    // Linear span of the normals.
    let mut tracker = RankTracker::<f64>::new();
    for u in &normals {
        tracker.try_extend(u.clone());
    }
    if tracker.rank() < n {
        return Err(GeomError::GreatSubsphere);
    }

    // Zero centroid.
    let total: f64 = weights.iter().sum();
    let mut defect = vec![0.0f64; n];
    for (u, &w) in normals.iter().zip(&weights) {
        for k in 0..n {
            defect[k] += w * u[k];
        }
    }
    let defect_norm = norm_f64(&defect);
    if defect_norm > CENTROID_TOLERANCE * total {
        return Err(GeomError::CentroidNonzero(defect_norm / total));
    }

    // Normalize the target mass to keep the iteration well-scaled; the
    // final rescale restores it. F and f scale together, so the achieved
    // relative errors are unaffected.
    let mass_scale = total / m as f64;
    let f: Vec<f64> = weights.iter().map(|&w| w / mass_scale).collect();

    // Initialization: the unit-support body, rescaled to volume one.
    let mut h = vec![1.0f64; m];
    let mut eval = evaluate_body(&normals, &h)
        .ok_or_else(|| GeomError::NoConvergence("initial body is degenerate".into()))?;
    let v0 = eval.volume;
    if !(v0 > 0.0) {
        return Err(GeomError::NoConvergence("initial body has zero volume".into()));
    }
    let c0 = v0.powf(-1.0 / n as f64);
    for x in h.iter_mut() {
        *x *= c0;
    }
    eval = evaluate_body(&normals, &h)
        .ok_or_else(|| GeomError::NoConvergence("initial rescale degenerated".into()))?;
    let mut lambda = dot(&f, &h) / (n as f64 * eval.volume);

    let mut iterations = 0usize;
    let mut converged = false;
    while iterations < opts.max_iterations {
        iterations += 1;

        // Convergence: after the optimal rescale, areas must match.
        let lambda_hat = dot(&f, &h) / (n as f64 * eval.volume);
        let rel_err = f
            .iter()
            .zip(&eval.facet_areas)
            .map(|(&fi, &ai)| (lambda_hat * ai - fi).abs() / fi)
            .fold(0.0, f64::max);
        if rel_err <= opts.tolerance && eval.facet_areas.iter().all(|&a| a > 0.0) {
            converged = true;
            break;
        }

        // Finite-difference Jacobian A = dF/dh (symmetrized).
        let step = 1e-6 * h.iter().fold(1.0f64, |a, &x| a.max(x.abs()));
        let mut jac = vec![vec![0.0f64; m]; m];
        let mut ok = true;
        for j in 0..m {
            let mut hp = h.clone();
            hp[j] += step;
            match evaluate_body(&normals, &hp) {
                Some(ep) => {
                    for i in 0..m {
                        jac[i][j] = (ep.facet_areas[i] - eval.facet_areas[i]) / step;
                    }
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            return Err(GeomError::NoConvergence(format!(
                "Jacobian evaluation degenerated at iteration {iterations}"
            )));
        }
        for i in 0..m {
            for j in (i + 1)..m {
                let s = 0.5 * (jac[i][j] + jac[j][i]);
                jac[i][j] = s;
                jac[j][i] = s;
            }
        }

        // KKT system with translation pinning rho * U U^T.
        let a_scale = jac
            .iter()
            .flatten()
            .fold(0.0f64, |acc, &x| acc.max(x.abs()));
        let rho = lambda.abs() * a_scale + 1.0;
        let mut kkt = vec![vec![0.0f64; m + 1]; m + 1];
        for i in 0..m {
            for j in 0..m {
                let mut uut = 0.0;
                for k in 0..n {
                    uut += normals[i][k] * normals[j][k];
                }
                kkt[i][j] = -lambda * jac[i][j] - rho * uut;
            }
            kkt[i][m] = -eval.facet_areas[i];
            kkt[m][i] = eval.facet_areas[i];
        }
        let mut rhs = vec![0.0f64; m + 1];
        for i in 0..m {
            rhs[i] = -(f[i] - lambda * eval.facet_areas[i]);
        }
        rhs[m] = -(eval.volume - 1.0);
        let delta = match solve_linear(&kkt, &rhs) {
            Some(d) => d,
            None => {
                return Err(GeomError::NoConvergence(format!(
                    "singular Newton system at iteration {iterations}"
                )))
            }
        };

        // Damped line search: keep all facets alive and the volume tame.
        let area_floor = 1e-12 * eval.facet_areas.iter().fold(0.0f64, |a, &x| a.max(x));
        let mut alpha = opts.damping.min(1.0);
        let mut accepted = false;
        for _ in 0..40 {
            let h_try: Vec<f64> = h.iter().zip(&delta[..m]).map(|(&x, &d)| x + alpha * d).collect();
            if let Some(e_try) = evaluate_body(&normals, &h_try) {
                let alive = e_try.facet_areas.iter().all(|&a| a > area_floor);
                let vol_ok = e_try.volume > 0.5 * eval.volume && e_try.volume < 2.0 * eval.volume;
                if alive && vol_ok {
                    h = h_try;
                    lambda += alpha * delta[m];
                    eval = e_try;
                    accepted = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if !accepted {
            return Err(GeomError::NoConvergence(format!(
                "line search stalled at iteration {iterations} (step collapsed)"
            )));
        }
    }

    let lambda_hat = dot(&f, &h) / (n as f64 * eval.volume);
    let final_rel_err = f
        .iter()
        .zip(&eval.facet_areas)
        .map(|(&fi, &ai)| (lambda_hat * ai - fi).abs() / fi)
        .fold(0.0, f64::max);
    if !converged {
        return Err(GeomError::NoConvergence(format!(
            "no convergence in {} iterations (max relative area error {:.3e})",
            iterations, final_rel_err
        )));
    }

    // Rescale so the areas match the original weights: areas scale with
    // c^{n-1} and the mass normalization contributes mass_scale.
    let c = (lambda_hat * mass_scale).powf(1.0 / (n as f64 - 1.0));
    let vertices: Vec<Vector<f64>> = eval
        .vertices
        .iter()
        .map(|v| v.iter().map(|x| x * c).collect())
        .collect();
    let body = Polytope::<f64>::hull_any(&vertices).centered();
    if !body.is_full_dimensional() {
        return Err(GeomError::NoConvergence("solution degenerated to lower dimension".into()));
    }

    // Honest final check against the body's own facet data. Float
    // reconstruction of non-simple bodies can split a facet into coplanar
    // shards, so weights are summed over a matching cone around each target
    // normal (well inside the separation of distinct targets).
    let achieved = area_measure(&body)?.merged();
    let ach_defect = norm_f64(&vec_to_f64(&achieved.centroid_defect()));
    let mut min_sep = f64::INFINITY;
    for i in 0..m {
        for j in (i + 1)..m {
            let cos = dot(&normals[i], &normals[j]).clamp(-1.0, 1.0);
            min_sep = min_sep.min(cos.acos());
        }
    }
    let cone = (min_sep / 4.0).min(1e-6);
    let cos_cone = cone.cos();
    let ach_normals = achieved.unit_normals_f64();
    let ach_weights = achieved.weights_f64();
    let mut matched = vec![false; ach_normals.len()];
    let mut max_err = 0.0f64;
    for (u, &w) in normals.iter().zip(&weights) {
        let mut sum = 0.0;
        for (k, au) in ach_normals.iter().enumerate() {
            if dot(u, au) >= cos_cone {
                sum += ach_weights[k];
                matched[k] = true;
            }
        }
        if sum == 0.0 {
            return Err(GeomError::NoConvergence(format!(
                "target normal {u:?} has no facet in the solution"
            )));
        }
        max_err = max_err.max((sum - w).abs() / w);
    }
    let stray: f64 = ach_weights
        .iter()
        .zip(&matched)
        .filter(|(_, &hit)| !hit)
        .map(|(w, _)| w)
        .sum();
    if stray > opts.tolerance * total {
        return Err(GeomError::NoConvergence(format!(
            "solution carries stray facet mass {stray:.3e}"
        )));
    }

    Ok((
        body,
        SolveDiagnostics {
            iterations,
            max_relative_area_error: max_err.max(final_rel_err),
            centroid_defect: ach_defect,
        },
    ))
}

/// Blaschke addition: the body whose surface area measure is the sum of the
/// two inputs' measures. Commutative up to translation.
pub fn blaschke_add<S: Scalar>(
    k: &Polytope<S>,
    l: &Polytope<S>,
    opts: &SolverOptions,
) -> Result<(Polytope<f64>, SolveDiagnostics)> {
    if k.dim() != l.dim() {
        return Err(GeomError::DimensionMismatch(k.dim(), l.dim()));
    }
    let sum = area_measure(k)?.add(&area_measure(l)?)?;
    solve_minkowski(&sum, opts)
}

/// Mixed body [K_1, ..., K_{n-1}]: the body whose surface area measure is
/// the mixed area measure of the inputs.
pub fn mixed_body<S: Scalar>(
    bodies: &[&Polytope<S>],
    opts: &SolverOptions,
) -> Result<(Polytope<f64>, SolveDiagnostics)> {
    let measure = mixed_area_measure(bodies)?;
    solve_minkowski(&measure, opts)
}
