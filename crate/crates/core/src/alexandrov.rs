//! The Alexandrov body of a strictly positive support sample and the
//! decomposition f = P(f) + N(f) it induces: P(f) is the support data of the
//! maximal body under f, N(f) >= 0 vanishes at every facet normal of that
//! body, and the pairing of N(f) against the body's area measure is zero
//! (exactly so in rational arithmetic).
//!
//! Sample semantics are 1-homogeneous: a direction need not be unit, and all
//! statements are made at the sample's own directions.

use crate::error::{GeomError, Result};
use crate::geom::{halfspace_intersection, HalfspaceSystem, Polytope};
use crate::measures::{area_measure, integrate, SupportFn, SupportSample};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct Decomposition<S: Scalar> {
    /// The Alexandrov body K of f.
    pub body: Polytope<S>,
    /// P(f): h_K sampled at f's directions.
    pub positive_part: SupportSample<S>,
    /// N(f) = f - P(f), nonnegative.
    pub negative_part: SupportSample<S>,
    /// Pairing of N(f) with the area measure of K.
    pub orthogonality_defect: S,
}

/// The maximal convex body whose support function is at most `f` at the
/// sample directions: the intersection of the sampled halfspaces.
pub fn alexandrov_body<S: Scalar>(f: &SupportSample<S>) -> Result<Polytope<S>> {
    f.is_strictly_positive()?;
    let sys = HalfspaceSystem::new(
        f.dim,
        f.directions.iter().cloned().zip(f.values.iter().cloned()).collect(),
    );
    halfspace_intersection(&sys)
}

pub fn decompose<S: Scalar>(f: &SupportSample<S>) -> Result<Decomposition<S>> {
    let body = alexandrov_body(f)?;
    let mut positive = Vec::with_capacity(f.directions.len());
    let mut negative = Vec::with_capacity(f.directions.len());
    for (u, v) in f.directions.iter().zip(&f.values) {
        let h = body.support_value(u)?;
        let n = v.clone() - h.clone();
        debug_assert!(
            n.clone().to_f64() >= -1e-12,
            "support exceeded the sample: N = {n:?}"
        );
        positive.push(h);
        negative.push(n);
    }
    let positive_part = f.with_values(positive);
    let negative_part = f.with_values(negative);
    let defect = integrate(&area_measure(&body)?, SupportFn::Sample(&negative_part))?;
    Ok(Decomposition { body, positive_part, negative_part, orthogonality_defect: defect })
}

/// vol(f) := vol of the Alexandrov body.
pub fn volume_of_function<S: Scalar>(f: &SupportSample<S>) -> Result<S> {
    Ok(alexandrov_body(f)?.volume())
}

/// Legendre-Fenchel-type volume: the minimum over candidate bodies K of
///
///   ( pairing(f, S(K^{n-1})) / n / vol(K)^{(n-1)/n} )^n ,
///
/// with the Alexandrov body of f always injected into the candidate list
/// (where the infimum is attained). Candidates whose facet normals the
/// sample does not cover cannot be paired and are skipped; the sample always
/// covers its own Alexandrov body. Returns the minimum and its argmin.
pub fn polar_volume<S: Scalar>(
    f: &SupportSample<S>,
    candidates: &[&Polytope<S>],
) -> Result<(f64, Polytope<S>)> {
    f.is_strictly_positive()?;
    let own = alexandrov_body(f)?;
    let n = f.dim as f64;
    let mut best: Option<(f64, Polytope<S>)> = None;
    let mut consider = |body: &Polytope<S>| -> Result<()> {
        let vol = body.volume().to_f64();
        if vol <= 0.0 {
            return Ok(());
        }
        let pairing = match integrate(&area_measure(body)?, SupportFn::Sample(f)) {
            Ok(p) => p.to_f64(),
            Err(GeomError::MissingDirection(_)) => return Ok(()),
            Err(e) => return Err(e),
        };
        let q = (pairing / n / vol.powf((n - 1.0) / n)).powf(n);
        if best.as_ref().map_or(true, |(b, _)| q < *b) {
            best = Some((q, body.clone()));
        }
        Ok(())
    };
    for c in candidates {
        consider(c)?;
    }
    consider(&own)?;
    Ok(best.expect("alexandrov body is always a candidate"))
}

/// Derivative of t -> vol(f + t g) at zero: the analytic value is the
/// pairing of g against the area measure of the Alexandrov body of f, the
/// numeric value a central finite difference of the volume.
pub fn derivative_of_volume<S: Scalar>(
    f: &SupportSample<S>,
    g: &SupportSample<S>,
) -> Result<(f64, f64)> {
    f.is_strictly_positive()?;
    if f.dim != g.dim {
        return Err(GeomError::DimensionMismatch(f.dim, g.dim));
    }
    let body = alexandrov_body(f)?;
    let analytic = integrate(&area_measure(&body)?, SupportFn::Sample(g))?.to_f64();

    let scale = f.values.iter().map(|v| v.to_f64().abs()).fold(1.0, f64::max);
    let mut eps = 1e-5 * scale;
    // Keep both perturbed samples strictly positive.
    loop {
        let ok = f.directions.iter().zip(f.values.iter()).all(|(u, v)| {
            let gv = g.value_at_ray(u).map(|x| x.to_f64()).unwrap_or(f64::NAN);
            gv.is_finite() && v.to_f64() - eps * gv.abs() > 0.0
        });
        if ok || eps < 1e-12 * scale {
            break;
        }
        eps *= 0.5;
    }
    let shifted = |sign: f64| -> Result<S> {
        let values: Result<Vec<S>> = f
            .directions
            .iter()
            .zip(&f.values)
            .map(|(u, v)| {
                let gv = g.value_at_ray(u)?;
                Ok(v.clone() + S::from_f64(sign * eps) * gv)
            })
            .collect();
        volume_of_function(&f.with_values(values?))
    };
    let vp = shifted(1.0)?.to_f64();
    let vm = shifted(-1.0)?.to_f64();
    let numeric = (vp - vm) / (2.0 * eps);
    Ok((analytic, numeric))
}
