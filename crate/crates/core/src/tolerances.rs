//! Tolerance constants used by the checks and the acceptance suite, in one
//! place with their rationale.

/// PASS rule for an inequality report: slack >= -PASS_REL * max(1, |lhs|, |rhs|).
pub const PASS_REL: f64 = 1e-9;

/// Equality detection for checks evaluated without the solver: volumes and
/// mixed volumes carry only f64 root-taking error on top of exact data.
pub const EQUALITY_EXACT: f64 = 1e-9;

/// Equality detection for solver-mediated checks: solver area error (1e-8
/// relative) dominates, amplified through volumes and roots.
pub const EQUALITY_SOLVER: f64 = 1e-6;

/// Homothety detector: least-squares residual bound, relative to the
/// support scale, for h_L = lambda h_K + t . u over both normal fans.
pub const HOMOTHETY_RESIDUAL: f64 = 1e-9;

/// Orthogonality defect of the Alexandrov decomposition, relative to
/// (total measure mass) * max |f|; exact zero in rational mode.
pub const ORTHOGONALITY_REL: f64 = 1e-10;

/// Closedness of facet data: |sum of area vectors| relative to total area.
pub const CLOSEDNESS_REL: f64 = 1e-10;

/// Agreement between the polarization and measure routes to mixed volumes.
pub const ORACLE_REL: f64 = 1e-9;

/// Derivative lemma: analytic vs central finite difference at 1e-5 scale.
pub const DERIVATIVE_REL: f64 = 1e-3;

/// Solver round-trip: Hausdorff distance bound relative to the diameter.
pub const ROUNDTRIP_HAUSDORFF_REL: f64 = 1e-6;

/// Richardson-extrapolated counts vs closed-form volumes (1 percent), with a
/// small absolute floor covering exact-zero volumes where the relative
/// criterion is vacuous and only f64 rounding of the extrapolation remains.
pub const EXTRAPOLATION_REL: f64 = 1e-2;
pub const EXTRAPOLATION_ABS: f64 = 1e-9;
