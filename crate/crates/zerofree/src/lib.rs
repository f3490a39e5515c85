//! Computation and visualization of the limit zero-free region of the
//! independence polynomial for bounded-degree graphs.
//!
//! The crate has five parts:
//!
//! * [`cardioid`] — closed-form geometry of the finite-degree cardioids and
//!   their rescaled limit, the fixed-point correspondence of the exponential
//!   family, known zero-free disk radii, and Hausdorff-distance estimation.
//! * [`orbit`] — the exponential semi-group: weighted exponential maps, the
//!   polygonal approximation of the convex orbit hull of the origin, and the
//!   origin-on-boundary membership test that classifies parameters.
//! * [`gamma`] — the explicit boundary curve near the positive real
//!   endpoint, its parabolic fixed-point identities, and the invariant wedge
//!   region certifying it up to angle 0.18.
//! * [`graphs`] / [`poly`] / [`fspec`] — the exact finite-degree side:
//!   independence polynomials with arbitrary-precision coefficients,
//!   occupation ratios and their composition under graph substitution,
//!   polynomial zeros, and the rescaled tree ratios converging to the
//!   semi-group observables.
//! * [`raster`] — parameter-plane sweeps over a pixel window with
//!   deterministic PPM and CSV output.
//!
//! All operations are pure functions of their inputs; values are immutable
//! and safe to share between threads, so parameter sweeps parallelize
//! trivially.

pub mod cardioid;
pub mod fspec;
pub mod gamma;
pub mod geometry;
pub mod graphs;
pub mod orbit;
pub mod poly;
pub mod raster;

pub use cardioid::{
    cardioid_boundary, cardioid_contains, fixed_point, known_zero_free_radius,
    real_contraction_derivative, real_interval, rescaled_boundary, CardioidSpec, Containment,
    FixedPointData, KnownRegion, RealInterval, RealTrace,
};
pub use fspec::{f_eval, fspec_from_gspec, fspec_to_tree, gspec_to_tree, rescaled_ratio, FSpec};
pub use gamma::{
    gamma_point, invariance_margins, solve_gamma, t_theta_polygon, theta_max_search,
    verify_parabolic, GammaPoint, TThetaRegion,
};
pub use geometry::{hausdorff_distance, ConvexPolygon, SampledBoundary};
pub use graphs::{
    compose_ratio, ind_poly, ratio, ratio_pair, substitute, RatioPair, RatioValue, RootedGraph,
};
pub use orbit::{
    apply_e, classify_membership, classify_membership_detailed, eval_gspec, hull_iterate,
    star_convexity_probe, strict_invariant_candidate, GSpec, HullApproximation, HullStatus,
    Membership, OrbitConfig, WeightTuple,
};
pub use poly::{poly_roots, IndPolynomial};
pub use raster::{
    classify_pixel, export_csv, raster, render, ClassFilter, Palette, PixelClass, RasterConfig,
    RasterGrid,
};
