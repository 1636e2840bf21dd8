//! Halfspace systems and their intersection (H-to-V conversion).
//!
//! Vertex enumeration is by n-subset solving with feasibility filtering,
//! which is exact in rational mode and entirely adequate at desk scale.

use super::lp::{simplex_maximize, LpOutcome};
use super::{dot, solve_linear, Polytope, Vector};
use crate::error::{GeomError, Result};
use crate::scalar::Scalar;

/// A finite list of constraints `normal · x <= bound`.
#[derive(Debug, Clone)]
pub struct HalfspaceSystem<S: Scalar> {
    pub dim: usize,
    pub constraints: Vec<(Vector<S>, S)>,
}

impl<S: Scalar> HalfspaceSystem<S> {
    pub fn new(dim: usize, constraints: Vec<(Vector<S>, S)>) -> Self {
        HalfspaceSystem { dim, constraints }
    }
}

/// Does a nonzero recession direction `d` (with `a_i · d <= 0` for all i)
/// exist? Checked by maximizing each coordinate over the recession cone
/// intersected with the unit box.
pub fn has_recession_direction<S: Scalar>(system: &HalfspaceSystem<S>) -> bool {
    let n = system.dim;
    // Variables d = d+ - d-, all components in [0, 1].
    let mut constraints: Vec<(Vector<S>, S)> = Vec::new();
    for (a, _) in &system.constraints {
        let mut row: Vector<S> = Vec::with_capacity(2 * n);
        row.extend(a.iter().cloned());
        row.extend(a.iter().map(|x| -x.clone()));
        constraints.push((row, S::zero()));
    }
    for j in 0..2 * n {
        let mut row = vec![S::zero(); 2 * n];
        row[j] = S::one();
        constraints.push((row, S::one()));
    }
    // Maximize +/- d_j = +/- (d+_j - d-_j) for each coordinate.
    for j in 0..n {
        for sign in [1i64, -1] {
            let mut objective = vec![S::zero(); 2 * n];
            objective[j] = S::from_int(sign);
            objective[n + j] = S::from_int(-sign);
            match simplex_maximize(&objective, &constraints) {
                LpOutcome::Optimal { value, .. } => {
                    if !value.is_negligible(&S::one()) && value > S::zero() {
                        return true;
                    }
                }
                // The box makes the LP bounded and d = 0 keeps it feasible.
                _ => unreachable!("recession LP is bounded and feasible"),
            }
        }
    }
    false
}

fn is_feasible<S: Scalar>(system: &HalfspaceSystem<S>) -> bool {
    let n = system.dim;
    // Find any x = x+ - x- with a_i · x <= b_i; objective 0.
    let constraints: Vec<(Vector<S>, S)> = system
        .constraints
        .iter()
        .map(|(a, b)| {
            let mut row: Vector<S> = Vec::with_capacity(2 * n);
            row.extend(a.iter().cloned());
            row.extend(a.iter().map(|x| -x.clone()));
            (row, b.clone())
        })
        .collect();
    let objective = vec![S::zero(); 2 * n];
    matches!(simplex_maximize(&objective, &constraints), LpOutcome::Optimal { .. })
}

/// Vertex representation of the intersection.
///
/// Every returned vertex has `n` linearly independent active constraints and
/// satisfies all others. Redundant constraints simply produce no facet.
pub fn halfspace_intersection<S: Scalar>(system: &HalfspaceSystem<S>) -> Result<Polytope<S>> {
    let n = system.dim;
    let m = system.constraints.len();
    for (a, _) in &system.constraints {
        if a.len() != n {
            return Err(GeomError::DimensionMismatch(a.len(), n));
        }
        if a.iter().all(|x| x.is_zero()) {
            return Err(GeomError::ZeroDirection);
        }
    }
    if !is_feasible(system) {
        return Err(GeomError::Empty);
    }
    if m < n || has_recession_direction(system) {
        return Err(GeomError::Unbounded);
    }

    let mut vertices: Vec<Vector<S>> = Vec::new();
    let scale = system
        .constraints
        .iter()
        .map(|(_, b)| b.abs())
        .fold(S::one(), |acc, v| if v > acc { v } else { acc });
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let matrix: Vec<Vec<S>> = subset.iter().map(|&i| system.constraints[i].0.clone()).collect();
        let rhs: Vec<S> = subset.iter().map(|&i| system.constraints[i].1.clone()).collect();
        if let Some(x) = solve_linear(&matrix, &rhs) {
            let ok = system.constraints.iter().all(|(a, b)| {
                let slack = b.clone() - dot(a, &x);
                slack >= S::zero() || slack.is_negligible(&scale)
            });
            if ok && !vertices.iter().any(|v| v == &x) {
                vertices.push(x);
            }
        }
        if !next_combination(&mut subset, m) {
            break;
        }
    }
    finish(vertices)
}

/// Advance to the next n-combination of 0..m in lexicographic order.
fn next_combination(subset: &mut [usize], m: usize) -> bool {
    let n = subset.len();
    let mut i = n;
    while i > 0 {
        i -= 1;
        if subset[i] < m - n + i {
            subset[i] += 1;
            for j in (i + 1)..n {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn finish<S: Scalar>(vertices: Vec<Vector<S>>) -> Result<Polytope<S>> {
    if vertices.is_empty() {
        return Err(GeomError::Empty);
    }
    Ok(Polytope::hull_any(&vertices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn rv(coords: &[i64]) -> Vector<Rat> {
        coords.iter().map(|&c| Rat::from_int(c)).collect()
    }

    fn square_system() -> HalfspaceSystem<Rat> {
        HalfspaceSystem::new(
            2,
            vec![
                (rv(&[1, 0]), Rat::one()),
                (rv(&[-1, 0]), Rat::one()),
                (rv(&[0, 1]), Rat::one()),
                (rv(&[0, -1]), Rat::one()),
            ],
        )
    }

    #[test]
    fn square_intersection() {
        let p = halfspace_intersection(&square_system()).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.volume(), Rat::from_int(4));
    }

    #[test]
    fn redundant_constraint_yields_no_facet() {
        let mut sys = square_system();
        sys.constraints.push((rv(&[1, 1]), Rat::from_int(3)));
        let p = halfspace_intersection(&sys).unwrap();
        assert_eq!(p.volume(), Rat::from_int(4));
        assert_eq!(p.facets().unwrap().len(), 4);
    }

    #[test]
    fn unbounded_detected() {
        let sys = HalfspaceSystem::new(2, vec![(rv(&[1, 0]), Rat::one()), (rv(&[0, 1]), Rat::one())]);
        assert!(matches!(halfspace_intersection(&sys), Err(GeomError::Unbounded)));
    }

    #[test]
    fn strip_is_unbounded() {
        let sys =
            HalfspaceSystem::new(2, vec![(rv(&[1, 0]), Rat::one()), (rv(&[-1, 0]), Rat::one())]);
        assert!(matches!(halfspace_intersection(&sys), Err(GeomError::Unbounded)));
    }

    #[test]
    fn empty_detected() {
        let sys =
            HalfspaceSystem::new(1, vec![(rv(&[1]), Rat::from_int(-1)), (rv(&[-1]), Rat::from_int(-1))]);
        assert!(matches!(halfspace_intersection(&sys), Err(GeomError::Empty)));
    }

    #[test]
    fn round_trips_exactly_with_vertex_form() {
        // V -> H -> V on a simplex: exact in rational mode.
        let simplex = Polytope::from_vertices(vec![rv(&[0, 0, 0]), rv(&[2, 0, 0]), rv(&[0, 3, 0]), rv(&[0, 0, 4])]);
        let facets = simplex.facets().unwrap();
        let sys = HalfspaceSystem::new(
            3,
            facets.iter().map(|f| (f.area_vector.clone(), f.support.clone())).collect(),
        );
        let back = halfspace_intersection(&sys).unwrap();
        assert_eq!(back.volume(), simplex.volume());
        assert_eq!(back.vertices().len(), 4);
        for v in back.vertices() {
            assert!(simplex.vertices().contains(v));
        }
    }
}
