//! Seeded random instance generation. All randomness in the crate flows
//! from explicit seeds so failing instances can be reproduced; sub-streams
//! are derived per purpose to keep instance sets independent of evaluation
//! order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{Polytope, Vector};
use crate::scalar::Scalar;

/// Dyadic denominator used for rational coordinates in exact mode.
pub const COORD_DENOMINATOR: i64 = 1 << 16;

pub fn rng_for(seed: u64, stream: &str, index: u64) -> ChaCha8Rng {
    // Stable stream derivation: fold the stream name into the seed.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in stream.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x1000_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Random full-dimensional polytope: the hull of `vertex_count` points drawn
/// uniformly from a ball, rejection-resampled until full-dimensional.
/// Coordinates are dyadic rationals (denominator 2^16), so exact and float
/// instances coincide.
pub fn random_polytope<S: Scalar>(rng: &mut ChaCha8Rng, dim: usize, vertex_count: usize) -> Polytope<S> {
    assert!(vertex_count >= dim + 1, "need at least dim+1 points");
    loop {
        let mut pts: Vec<Vector<S>> = Vec::with_capacity(vertex_count);
        for _ in 0..vertex_count {
            pts.push(random_ball_point(rng, dim));
        }
        let p = Polytope::hull_any(&pts);
        if p.is_full_dimensional() {
            return p;
        }
    }
}

fn random_ball_point<S: Scalar>(rng: &mut ChaCha8Rng, dim: usize) -> Vector<S> {
    loop {
        let raw: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if raw.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
            return raw
                .iter()
                .map(|&x| {
                    let q = (x * COORD_DENOMINATOR as f64).round() as i64;
                    S::from_f64(q as f64) / S::from_f64(COORD_DENOMINATOR as f64)
                })
                .collect();
        }
    }
}

/// Random symmetric positive definite matrix via L L^T with a well-spread
/// Cholesky factor.
pub fn random_spd(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    let mut l = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            l[i][j] = if i == j {
                rng.gen_range(0.2..2.0)
            } else {
                rng.gen_range(-1.0..1.0)
            };
        }
    }
    let mut a = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += l[i][k] * l[j][k];
            }
            a[i][j] = acc;
        }
    }
    a
}

/// Random diagonal positive definite matrix with log-uniform entries; the
/// near-degenerate aspect ratios exercise the sharp direction of the
/// reverse Khovanskii-Teissier constants.
pub fn random_spd_diagonal(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    let mut a = vec![vec![0.0f64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        let log: f64 = rng.gen_range(-3.0..1.0);
        row[i] = 10f64.powf(log);
    }
    a
}

/// Random axis box with log-uniform side lengths (thin boxes included).
pub fn random_thin_box<S: Scalar>(rng: &mut ChaCha8Rng, dim: usize) -> Polytope<S> {
    let sides: Vec<f64> = (0..dim).map(|_| 10f64.powf(rng.gen_range(-2.0..0.5))).collect();
    let mut pts: Vec<Vector<S>> = vec![Vec::new()];
    for s in &sides {
        let q = ((s * COORD_DENOMINATOR as f64).round() as i64).max(1);
        let side = S::from_f64(q as f64) / S::from_f64(COORD_DENOMINATOR as f64);
        let mut next = Vec::new();
        for p in &pts {
            let mut lo = p.clone();
            lo.push(S::zero());
            let mut hi = p.clone();
            hi.push(side.clone());
            next.push(lo);
            next.push(hi);
        }
        pts = next;
    }
    Polytope::hull_any(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    #[test]
    fn seeded_polytope_is_reproducible() {
        let a: Polytope<Rat> = random_polytope(&mut rng_for(7, "t", 0), 3, 8);
        let b: Polytope<Rat> = random_polytope(&mut rng_for(7, "t", 0), 3, 8);
        assert_eq!(a.vertices(), b.vertices());
        let c: Polytope<Rat> = random_polytope(&mut rng_for(8, "t", 0), 3, 8);
        assert!(a.vertices() != c.vertices());
    }

    #[test]
    fn random_polytopes_are_full_dimensional() {
        for i in 0..20 {
            let p: Polytope<f64> = random_polytope(&mut rng_for(3, "fd", i), 2, 3);
            assert!(p.is_full_dimensional());
            assert!(p.volume() > 0.0);
        }
    }

    #[test]
    fn spd_matrices_have_positive_diagonal() {
        let m = random_spd(&mut rng_for(1, "spd", 0), 4);
        for i in 0..4 {
            assert!(m[i][i] > 0.0);
            for j in 0..4 {
                assert!((m[i][j] - m[j][i]).abs() < 1e-15);
            }
        }
    }
}
