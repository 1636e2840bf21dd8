//! Small dense linear programming: a two-phase tableau simplex with Bland's
//! rule, exact under rational arithmetic, and the containment LP behind the
//! relative inradius.

use super::{dot, Polytope, Vector};
use crate::error::{GeomError, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub enum LpOutcome<S: Scalar> {
    Optimal { x: Vec<S>, value: S },
    Infeasible,
    Unbounded,
}

/// Maximize `objective · x` subject to `row · x <= bound` for each constraint
/// and `x >= 0`. Desk-scale sizes only; Bland's rule guarantees termination.
pub fn simplex_maximize<S: Scalar>(objective: &[S], constraints: &[(Vector<S>, S)]) -> LpOutcome<S> {
    let n = objective.len();
    let m = constraints.len();

    // Columns: n structural + m slacks + (phase-1 artificials appended).
    let mut a: Vec<Vec<S>> = Vec::with_capacity(m);
    let mut b: Vec<S> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut artificials: Vec<usize> = Vec::new();

    let mut num_cols = n + m;
    for (i, (row, bound)) in constraints.iter().enumerate() {
        assert_eq!(row.len(), n);
        let mut r: Vec<S> = row.clone();
        r.resize(n + m, S::zero());
        let mut bb = bound.clone();
        let negate = bb < S::zero();
        if negate {
            for x in r.iter_mut() {
                *x = -x.clone();
            }
            bb = -bb;
        }
        r[n + i] = if negate { -S::one() } else { S::one() };
        if negate {
            // Needs an artificial basic variable.
            artificials.push(num_cols);
            basis.push(num_cols);
            num_cols += 1;
        } else {
            basis.push(n + i);
        }
        a.push(r);
        b.push(bb);
    }
    for (row_idx, r) in a.iter_mut().enumerate() {
        r.resize(num_cols, S::zero());
        if basis[row_idx] >= n + m {
            r[basis[row_idx]] = S::one();
        }
    }

    let scale = constraints
        .iter()
        .flat_map(|(r, bb)| r.iter().chain(std::iter::once(bb)))
        .map(|x| x.abs())
        .fold(S::one(), |acc, x| if x > acc { x } else { acc });

    if !artificials.is_empty() {
        // Phase 1: maximize -sum(artificials).
        let mut c1 = vec![S::zero(); num_cols];
        for &j in &artificials {
            c1[j] = -S::one();
        }
        if run_simplex(&mut a, &mut b, &mut basis, &c1, &scale).is_none() {
            // Phase 1 is bounded by construction; treat as numerical failure.
            return LpOutcome::Infeasible;
        }
        let mut infeas = S::zero();
        for (i, &bv) in basis.iter().enumerate() {
            if artificials.contains(&bv) {
                infeas = infeas + b[i].clone();
            }
        }
        if !infeas.is_negligible(&scale) {
            return LpOutcome::Infeasible;
        }
        // Drive remaining zero-level artificials out of the basis.
        let mut drop_rows: Vec<usize> = Vec::new();
        for i in 0..basis.len() {
            if !artificials.contains(&basis[i]) {
                continue;
            }
            let pivot_col = (0..n + m).find(|&j| !a[i][j].is_negligible(&scale));
            match pivot_col {
                Some(j) => pivot(&mut a, &mut b, &mut basis, i, j),
                None => drop_rows.push(i),
            }
        }
        for &i in drop_rows.iter().rev() {
            a.remove(i);
            b.remove(i);
            basis.remove(i);
        }
        for r in a.iter_mut() {
            r.truncate(n + m);
        }
    }

    let mut c2 = objective.to_vec();
    c2.resize(n + m, S::zero());
    match run_simplex(&mut a, &mut b, &mut basis, &c2, &scale) {
        None => LpOutcome::Unbounded,
        Some(()) => {
            let mut x = vec![S::zero(); n];
            for (i, &bv) in basis.iter().enumerate() {
                if bv < n {
                    x[bv] = b[i].clone();
                }
            }
            let value = dot(&c2[..n], &x);
            LpOutcome::Optimal { x, value }
        }
    }
}

/// Bland-rule simplex iterations; `None` signals an unbounded direction.
fn run_simplex<S: Scalar>(
    a: &mut [Vec<S>],
    b: &mut [S],
    basis: &mut [usize],
    c: &[S],
    scale: &S,
) -> Option<()> {
    let num_cols = a.first().map_or(0, |r| r.len());
    loop {
        // Reduced costs: c_j - sum_i c_basis[i] * a[i][j].
        let mut entering = None;
        for j in 0..num_cols {
            if basis.contains(&j) {
                continue;
            }
            let mut red = c.get(j).cloned().unwrap_or_else(S::zero);
            for (i, &bv) in basis.iter().enumerate() {
                let cb = c.get(bv).cloned().unwrap_or_else(S::zero);
                if !cb.is_zero() && !a[i][j].is_zero() {
                    red = red - cb * a[i][j].clone();
                }
            }
            if !red.is_negligible(scale) && red > S::zero() {
                entering = Some(j);
                break; // Bland: smallest improving index.
            }
        }
        let e = match entering {
            None => return Some(()),
            Some(e) => e,
        };
        // Ratio test with Bland tie-breaking on the leaving variable index.
        let mut leave: Option<(usize, S)> = None;
        for i in 0..a.len() {
            if a[i][e].is_negligible(scale) || a[i][e] <= S::zero() {
                continue;
            }
            let ratio = b[i].clone() / a[i][e].clone();
            leave = match leave {
                None => Some((i, ratio)),
                Some((best_i, best_r)) => {
                    if ratio < best_r || (ratio == best_r && basis[i] < basis[best_i]) {
                        Some((i, ratio))
                    } else {
                        Some((best_i, best_r))
                    }
                }
            };
        }
        let (row, _) = leave?;
        pivot_slices(a, b, basis, row, e);
    }
}

fn pivot<S: Scalar>(a: &mut Vec<Vec<S>>, b: &mut Vec<S>, basis: &mut Vec<usize>, row: usize, col: usize) {
    pivot_slices(a, b, basis, row, col);
}

fn pivot_slices<S: Scalar>(a: &mut [Vec<S>], b: &mut [S], basis: &mut [usize], row: usize, col: usize) {
    let p = a[row][col].clone();
    for x in a[row].iter_mut() {
        *x = x.clone() / p.clone();
    }
    b[row] = b[row].clone() / p;
    for i in 0..a.len() {
        if i == row || a[i][col].is_zero() {
            continue;
        }
        let f = a[i][col].clone();
        for j in 0..a[i].len() {
            a[i][j] = a[i][j].clone() - f.clone() * a[row][j].clone();
        }
        b[i] = b[i].clone() - f * b[row].clone();
    }
    basis[row] = col;
}

/// Relative inradius r(K, L) = max { lambda : lambda L + t subset K } with a
/// witness translation. Containment in a polytope is exactly the finite set
/// of facet constraints lambda h_L(a_i) + t . a_i <= h_K(a_i).
pub fn relative_inradius<S: Scalar>(k: &Polytope<S>, l: &Polytope<S>) -> Result<(S, Vector<S>)> {
    if !k.is_full_dimensional() || !l.is_full_dimensional() {
        return Err(GeomError::DegenerateInput(
            "relative inradius needs full-dimensional bodies".into(),
        ));
    }
    let n = k.dim();
    let facets = k.facets()?;
    // Variables: lambda, t+ (n), t- (n); all nonnegative.
    let mut constraints: Vec<(Vector<S>, S)> = Vec::with_capacity(facets.len());
    for f in &facets {
        let hl = l.support_value(&f.area_vector)?;
        let mut row: Vector<S> = Vec::with_capacity(1 + 2 * n);
        row.push(hl);
        for t in 0..n {
            row.push(f.area_vector[t].clone());
        }
        for t in 0..n {
            row.push(-f.area_vector[t].clone());
        }
        constraints.push((row, f.support.clone()));
    }
    let mut objective = vec![S::zero(); 1 + 2 * n];
    objective[0] = S::one();
    match simplex_maximize(&objective, &constraints) {
        LpOutcome::Optimal { x, .. } => {
            let lambda = x[0].clone();
            let t: Vector<S> = (0..n).map(|i| x[1 + i].clone() - x[1 + n + i].clone()).collect();
            Ok((lambda, t))
        }
        LpOutcome::Infeasible => Err(GeomError::DegenerateInput("containment LP infeasible".into())),
        LpOutcome::Unbounded => Err(GeomError::DegenerateInput("containment LP unbounded".into())),
    }
}
