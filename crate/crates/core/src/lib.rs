//! Convex-body computations for polytopes: hulls and halfspace
//! intersections in exact rational or floating-point arithmetic, mixed
//! volumes and surface area measures, a damped-Newton solver for the
//! Minkowski problem (with Blaschke addition and mixed bodies built on it),
//! the Alexandrov body decomposition, a harness of geometric-inequality
//! checks with equality detection, and lattice-point/volume asymptotics for
//! a family of projective-bundle divisors.

pub mod alexandrov;
pub mod error;
pub mod geom;
pub mod inequalities;
pub mod measures;
pub mod random;
pub mod scalar;
pub mod solver;
pub mod tolerances;
pub mod toric;

pub use alexandrov::{
    alexandrov_body, decompose, derivative_of_volume, polar_volume, volume_of_function,
    Decomposition,
};
pub use error::{GeomError, Result};
pub use geom::{
    convex_hull, halfspace_intersection, hausdorff_distance, relative_inradius, Facet,
    HalfspaceSystem, Polytope,
};
pub use inequalities::{
    check_box_bound, check_brunn_minkowski, check_diskant_bound, check_improved_bm,
    check_kneser_suss, check_log_concavity, check_loomis_whitney, check_mixed_body_volume,
    check_mixed_discriminant_kt, check_mixed_volume_linearity, check_morse, check_reverse_kt,
    detect_homothety, is_axis_box, mixed_discriminant, CheckReport, SymmetricMatrix,
};
pub use measures::{
    area_measure, integrate, mixed_area_measure, mixed_volume, mixed_volume_grouped,
    mixed_volume_via_measure, SupportFn, SupportSample, SurfaceMeasure,
};
pub use scalar::{Rat, Scalar};
pub use solver::{blaschke_add, mixed_body, solve_minkowski, SolveDiagnostics, SolverOptions};
pub use toric::{
    check_flop_volume, check_volume_correspondence, lattice_point_count, section_count_flop,
    volume_flop, FlopDivisor, LatticePolytope,
};
