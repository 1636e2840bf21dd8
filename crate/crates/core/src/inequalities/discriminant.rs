//! Mixed discriminants of symmetric matrices and the matrix-level reverse
//! Khovanskii-Teissier inequality.

use serde_json::json;

use super::CheckReport;
use crate::error::{GeomError, Result};
use crate::tolerances::EQUALITY_EXACT;

/// Real symmetric n x n matrix.
#[derive(Debug, Clone)]
pub struct SymmetricMatrix {
    entries: Vec<Vec<f64>>,
}

impl SymmetricMatrix {
    pub fn new(entries: Vec<Vec<f64>>) -> Result<Self> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(GeomError::SchemaError("matrix is not square".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if (entries[i][j] - entries[j][i]).abs() > 1e-12 * entries[i][j].abs().max(1.0) {
                    return Err(GeomError::SchemaError(format!(
                        "matrix not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(SymmetricMatrix { entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut e = vec![vec![0.0; n]; n];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        SymmetricMatrix { entries: e }
    }

    pub fn diagonal(d: &[f64]) -> Self {
        let n = d.len();
        let mut e = vec![vec![0.0; n]; n];
        for i in 0..n {
            e[i][i] = d[i];
        }
        SymmetricMatrix { entries: e }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    pub fn det(&self) -> f64 {
        det_lu(&self.entries)
    }

    /// Cholesky-based positive definiteness test.
    pub fn is_positive_definite(&self) -> bool {
        let n = self.dim();
        let mut l = vec![vec![0.0f64; n]; n];
        for i in 0..n {
            for j in 0..=i {
                let mut s = self.entries[i][j];
                for k in 0..j {
                    s -= l[i][k] * l[j][k];
                }
                if i == j {
                    if s <= 0.0 {
                        return false;
                    }
                    l[i][j] = s.sqrt();
                } else {
                    l[i][j] = s / l[j][j];
                }
            }
        }
        true
    }
}

fn det_lu(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut det = 1.0f64;
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()
        });
        let p = pivot.unwrap();
        if a[p][col] == 0.0 {
            return 0.0;
        }
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= a[col][col];
        for r in (col + 1)..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    det
}

fn factorial(k: usize) -> f64 {
    (2..=k).map(|i| i as f64).product::<f64>().max(1.0)
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Fully polarized mixed discriminant of n matrices:
/// D = (1/n!) sum over nonempty subsets of (-1)^{n-|S|} det(sum of S).
pub fn mixed_discriminant(matrices: &[&SymmetricMatrix]) -> Result<f64> {
    let n = matrices.first().map_or(0, |m| m.dim());
    if matrices.len() != n || n == 0 {
        return Err(GeomError::DimensionMismatch(matrices.len(), n));
    }
    for m in matrices {
        if m.dim() != n {
            return Err(GeomError::DimensionMismatch(m.dim(), n));
        }
    }
    let mut acc = 0.0f64;
    for mask in 1u32..(1 << n) {
        let mut sum = vec![vec![0.0f64; n]; n];
        for (j, m) in matrices.iter().enumerate() {
            if mask & (1 << j) == 0 {
                continue;
            }
            for r in 0..n {
                for c in 0..n {
                    sum[r][c] += m.entries[r][c];
                }
            }
        }
        let term = det_lu(&sum);
        let size = mask.count_ones() as usize;
        acc += if (n - size) % 2 == 0 { term } else { -term };
    }
    Ok(acc / factorial(n))
}

/// D(A^k, B^{n-k}) via the grouped polarization
/// (1/n!) sum_{i,j} (-1)^{n-i-j} C(k,i) C(n-k,j) det(iA + jB).
pub fn mixed_discriminant_pair(a: &SymmetricMatrix, b: &SymmetricMatrix, k: usize) -> Result<f64> {
    let n = a.dim();
    if b.dim() != n || k > n {
        return Err(GeomError::DimensionMismatch(b.dim(), n));
    }
    let mut acc = 0.0f64;
    for i in 0..=k {
        for j in 0..=(n - k) {
            if i + j == 0 {
                continue;
            }
            let mut sum = vec![vec![0.0f64; n]; n];
            for r in 0..n {
                for c in 0..n {
                    sum[r][c] = i as f64 * a.entries[r][c] + j as f64 * b.entries[r][c];
                }
            }
            let term = binomial(k, i) * binomial(n - k, j) * det_lu(&sum);
            acc += if (n - i - j) % 2 == 0 { term } else { -term };
        }
    }
    Ok(acc / factorial(n))
}

/// Matrix reverse Khovanskii-Teissier: for positive definite A, B, C,
/// D(A^k, B^{n-k}) D(B^k, C^{n-k}) >= (k!(n-k)!/n!) det(B) D(A^k, C^{n-k}).
pub fn check_mixed_discriminant_kt(
    a: &SymmetricMatrix,
    b: &SymmetricMatrix,
    c: &SymmetricMatrix,
    k: usize,
) -> Result<CheckReport> {
    let n = a.dim();
    if !(a.is_positive_definite() && b.is_positive_definite() && c.is_positive_definite()) {
        return Err(GeomError::NotPositiveDefinite);
    }
    if k == 0 || k >= n {
        return Err(GeomError::SchemaError(format!("k must satisfy 1 <= k <= {}", n - 1)));
    }
    let d_ab = mixed_discriminant_pair(a, b, k)?;
    let d_bc = mixed_discriminant_pair(b, c, k)?;
    let d_ac = mixed_discriminant_pair(a, c, k)?;
    let factor = factorial(k) * factorial(n - k) / factorial(n);
    let lhs = d_ab * d_bc;
    let rhs = factor * b.det() * d_ac;
    Ok(CheckReport::new(
        "mixed-discriminant-kt",
        lhs,
        rhs,
        EQUALITY_EXACT,
        json!({
            "k": k,
            "factor": factor,
            "d_ab": d_ab,
            "d_bc": d_bc,
            "d_ac": d_ac,
            "det_b": b.det(),
        }),
    ))
}
