//! The transcendental engine: weighted exponential maps, the semi-group they
//! generate, and the growing polygonal approximation of the convex orbit
//! hull, with the origin-on-boundary membership test.
//!
//! The iteration `K_{n+1} = hull(K_n ∪ E(sample(∂K_n)))` converges to the
//! convex hull of the orbit of 0 whenever that orbit is bounded: extreme
//! points of `hull(E(K))` lie in `E(∂K)` because `E` is holomorphic and
//! open, so boundary sampling suffices.

use num_complex::Complex64;

use crate::geometry::ConvexPolygon;

const WEIGHT_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum OrbitError {
    ArityMismatch { weights: usize, arguments: usize },
    NegativeWeight(f64),
    WeightSumExceedsOne(f64),
    ConfigError(&'static str),
}

impl std::fmt::Display for OrbitError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrbitError::ArityMismatch { weights, arguments } => {
                write!(f, "weight tuple has {weights} entries but {arguments} arguments given")
            }
            OrbitError::NegativeWeight(w) => write!(f, "weights must be nonnegative, got {w}"),
            OrbitError::WeightSumExceedsOne(s) => {
                write!(f, "weight sum must be at most 1, got {s}")
            }
            OrbitError::ConfigError(what) => write!(f, "invalid configuration: {what}"),
        }
    }
}

impl std::error::Error for OrbitError {}

/// Nonnegative weights with sum at most one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTuple(Vec<f64>);

impl WeightTuple {
    pub fn new(weights: Vec<f64>) -> Result<WeightTuple, OrbitError> {
        let mut sum = 0.0;
        for &w in &weights {
            if !(w >= 0.0) {
                return Err(OrbitError::NegativeWeight(w));
            }
            sum += w;
        }
        if sum > 1.0 + WEIGHT_SUM_TOL {
            return Err(OrbitError::WeightSumExceedsOne(sum));
        }
        Ok(WeightTuple(weights))
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `E(Z_1, ..., Z_n) = lambda * exp(-s_1 Z_1 - ... - s_n Z_n)`.
pub fn apply_e(
    lambda: Complex64,
    weights: &WeightTuple,
    args: &[Complex64],
) -> Result<Complex64, OrbitError> {
    if weights.len() != args.len() {
        return Err(OrbitError::ArityMismatch {
            weights: weights.len(),
            arguments: args.len(),
        });
    }
    let mut exponent = Complex64::new(0.0, 0.0);
    for (s, z) in weights.weights().iter().zip(args) {
        exponent -= z * *s;
    }
    Ok(lambda * exponent.exp())
}

/// The one-variable map `Z -> lambda exp(-Z)`.
#[inline]
pub fn exp_map(lambda: Complex64, z: Complex64) -> Complex64 {
    lambda * (-z).exp()
}

/// Expression tree for an element of the exponential semi-group: either the
/// identity, or a weighted exponential applied to child elements.
#[derive(Debug, Clone, PartialEq)]
pub enum GSpec {
    Identity,
    Compose {
        weights: WeightTuple,
        children: Vec<GSpec>,
    },
}

impl GSpec {
    pub fn compose(weights: WeightTuple, children: Vec<GSpec>) -> Result<GSpec, OrbitError> {
        if weights.len() != children.len() {
            return Err(OrbitError::ArityMismatch {
                weights: weights.len(),
                arguments: children.len(),
            });
        }
        Ok(GSpec::Compose { weights, children })
    }

    /// Leaf with an empty weight tuple: the constant map `Z -> lambda`.
    pub fn constant() -> GSpec {
        GSpec::Compose {
            weights: WeightTuple(Vec::new()),
            children: Vec::new(),
        }
    }
}

/// Recursive evaluation of a semi-group element at `z`.
pub fn eval_gspec(g: &GSpec, lambda: Complex64, z: Complex64) -> Result<Complex64, OrbitError> {
    match g {
        GSpec::Identity => Ok(z),
        GSpec::Compose { weights, children } => {
            if weights.len() != children.len() {
                return Err(OrbitError::ArityMismatch {
                    weights: weights.len(),
                    arguments: children.len(),
                });
            }
            let mut exponent = Complex64::new(0.0, 0.0);
            for (s, child) in weights.weights().iter().zip(children) {
                exponent -= eval_gspec(child, lambda, z)? * *s;
            }
            Ok(lambda * exponent.exp())
        }
    }
}

/// Tuning for the hull iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitConfig {
    pub boundary_samples: usize,
    pub max_iter: usize,
    pub escape_radius: f64,
    pub stab_tol: f64,
    /// Relative interior tolerance for the gray-region test: the origin
    /// counts as interior when its clearance exceeds this fraction of the
    /// hull diameter.
    pub interior_tol: f64,
}

impl Default for OrbitConfig {
    fn default() -> OrbitConfig {
        OrbitConfig {
            boundary_samples: 1024,
            max_iter: 500,
            escape_radius: 50.0,
            stab_tol: 1e-9,
            interior_tol: 1e-4,
        }
    }
}

impl OrbitConfig {
    pub fn validate(&self) -> Result<(), OrbitError> {
        if self.boundary_samples == 0 {
            return Err(OrbitError::ConfigError("boundary_samples must be positive"));
        }
        if self.max_iter == 0 {
            return Err(OrbitError::ConfigError("max_iter must be positive"));
        }
        if !(self.escape_radius > 0.0) {
            return Err(OrbitError::ConfigError("escape_radius must be positive"));
        }
        if !(self.stab_tol > 0.0) {
            return Err(OrbitError::ConfigError("stab_tol must be positive"));
        }
        if !(self.interior_tol > 0.0) {
            return Err(OrbitError::ConfigError("interior_tol must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullStatus {
    Converged,
    Escaped,
    MaxIter,
}

/// Result of the orbit-hull iteration.
#[derive(Debug, Clone)]
pub struct HullApproximation {
    pub polygon: ConvexPolygon,
    pub status: HullStatus,
    pub iterations: usize,
    /// Distance from the origin to the hull boundary; the origin is inside
    /// the hull by construction, so this is nonnegative up to rounding.
    pub origin_clearance: f64,
    pub diameter: f64,
}

/// No bounded convex set invariant under the exponential map can contain a
/// point with |Im| >= 2*pi: the spiral `t -> lambda exp(-t z)` then closes a
/// full turn around the origin inside the hull, forcing the origin into the
/// interior. Growth past this line certifies an unbounded orbit set.
const IM_ESCAPE: f64 = 2.0 * std::f64::consts::PI;

fn escaped(poly: &ConvexPolygon, escape_radius: f64) -> bool {
    poly.max_abs_im() >= IM_ESCAPE || poly.diameter() > escape_radius
}

/// Grows the polygonal approximation of the convex orbit hull of 0 for the
/// map `Z -> lambda exp(-Z)`, starting from `hull{0, lambda}`.
pub fn hull_iterate(
    lambda: Complex64,
    cfg: &OrbitConfig,
) -> Result<HullApproximation, OrbitError> {
    cfg.validate()?;
    let zero = Complex64::new(0.0, 0.0);
    let mut hull = ConvexPolygon::hull_of(&[zero, lambda]);
    let mut status = HullStatus::MaxIter;
    let mut iterations = 0;

    if escaped(&hull, cfg.escape_radius) {
        status = HullStatus::Escaped;
    } else {
        let mut candidates: Vec<Complex64> = Vec::with_capacity(cfg.boundary_samples + 64);
        for it in 1..=cfg.max_iter {
            iterations = it;
            let samples = hull.sample_boundary(cfg.boundary_samples);
            candidates.clear();
            candidates.extend_from_slice(hull.vertices());
            let mut finite = true;
            for s in samples {
                let img = exp_map(lambda, s);
                if !img.re.is_finite() || !img.im.is_finite() {
                    finite = false;
                    break;
                }
                candidates.push(img);
            }
            if !finite {
                status = HullStatus::Escaped;
                break;
            }
            candidates.sort_unstable_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            candidates.dedup();
            let next = ConvexPolygon::hull_of_sorted(&candidates);
            let growth = hull.growth_from(&next, cfg.stab_tol);
            hull = next;
            if escaped(&hull, cfg.escape_radius) {
                status = HullStatus::Escaped;
                break;
            }
            if growth < cfg.stab_tol {
                status = HullStatus::Converged;
                break;
            }
        }
    }

    let origin_clearance = hull.boundary_distance(zero);
    let diameter = hull.diameter();
    Ok(HullApproximation {
        polygon: hull,
        status,
        iterations,
        origin_clearance,
        diameter,
    })
}

/// Verdict of the origin-on-boundary membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Member,
    ExcludedEscape,
    ExcludedInterior,
    Undecided,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

/// Classifies `lambda` against the bounded-orbit set. A parameter with
/// bounded orbit set keeps the origin on the hull boundary; a converged
/// approximation with the origin strictly interior therefore certifies
/// exclusion, and escape past the configured bounds certifies it as well.
pub fn classify_membership(lambda: Complex64, cfg: &OrbitConfig) -> Membership {
    classify_membership_detailed(lambda, cfg).0
}

/// Classification together with the hull approximation that produced it.
pub fn classify_membership_detailed(
    lambda: Complex64,
    cfg: &OrbitConfig,
) -> (Membership, Option<HullApproximation>) {
    match hull_iterate(lambda, cfg) {
        Err(_) => (Membership::Undecided, None),
        Ok(h) => {
            let m = match h.status {
                HullStatus::Escaped => Membership::ExcludedEscape,
                HullStatus::MaxIter => Membership::Undecided,
                HullStatus::Converged => {
                    if h.origin_clearance > cfg.interior_tol * h.diameter {
                        Membership::ExcludedInterior
                    } else {
                        Membership::Member
                    }
                }
            };
            (m, Some(h))
        }
    }
}

/// A polygon certified (numerically) to be strictly forward invariant.
#[derive(Debug, Clone)]
pub struct StrictInvariantRegion {
    pub polygon: ConvexPolygon,
    /// Smallest clearance of any sampled boundary image inside the polygon.
    pub min_clearance: f64,
    /// Sector-augmentation angle used, when the unscaled region needed one.
    pub sector_epsilon: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StrictInvariantError {
    RealParameter,
    ScaleNotAboveOne(f64),
    BaseNotMember(Membership),
    NotStrict { min_clearance: f64 },
    Orbit(OrbitError),
}

impl std::fmt::Display for StrictInvariantError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StrictInvariantError::RealParameter => {
                write!(f, "strict invariant construction requires a non-real parameter")
            }
            StrictInvariantError::ScaleNotAboveOne(t) => write!(f, "scale factor must exceed 1, got {t}"),
            StrictInvariantError::BaseNotMember(m) => {
                write!(f, "scaled parameter is not a member: {m:?}")
            }
            StrictInvariantError::NotStrict { min_clearance } => {
                write!(f, "strictness not certified, worst clearance {min_clearance}")
            }
            StrictInvariantError::Orbit(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for StrictInvariantError {}

fn min_image_clearance(lambda: Complex64, region: &ConvexPolygon, samples: usize) -> f64 {
    region
        .sample_boundary(samples)
        .into_iter()
        .map(|s| region.signed_clearance(exp_map(lambda, s)))
        .fold(f64::INFINITY, f64::min)
}

/// Builds a candidate strictly invariant region for a non-real parameter by
/// shrinking the orbit hull of the scaled parameter `t * lambda` by
/// `t' = (1 + t)/2`, then certifying strictness on sampled boundary images.
/// When certification fails, a thin sector past the maximal-modulus vertex
/// is added (angle halving from 1e-2) and the check is repeated.
pub fn strict_invariant_candidate(
    lambda: Complex64,
    t: f64,
    cfg: &OrbitConfig,
) -> Result<StrictInvariantRegion, StrictInvariantError> {
    if lambda.im == 0.0 {
        return Err(StrictInvariantError::RealParameter);
    }
    if !(t > 1.0) {
        return Err(StrictInvariantError::ScaleNotAboveOne(t));
    }
    let scaled = lambda * t;
    let (membership, hull) = classify_membership_detailed(scaled, cfg);
    if membership != Membership::Member {
        return Err(StrictInvariantError::BaseNotMember(membership));
    }
    let hull = hull.expect("member classification implies a hull");
    let t_prime = (1.0 + t) / 2.0;
    let base: Vec<Complex64> = hull
        .polygon
        .vertices()
        .iter()
        .map(|v| v / t_prime)
        .collect();
    let region = ConvexPolygon::hull_of(&base);

    let clearance = min_image_clearance(lambda, &region, cfg.boundary_samples);
    if clearance > 0.0 {
        return Ok(StrictInvariantRegion {
            polygon: region,
            min_clearance: clearance,
            sector_epsilon: None,
        });
    }

    // sector augmentation past the maximal-modulus vertex
    let far = region
        .vertices()
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("non-empty polygon");
    let (r, alpha) = far.to_polar();
    let mut best = clearance;
    let mut eps = 1e-2;
    while eps >= 1e-8 {
        let mut pts = base.clone();
        pts.push(Complex64::from_polar(r, alpha + eps));
        let augmented = ConvexPolygon::hull_of(&pts);
        let c = min_image_clearance(lambda, &augmented, cfg.boundary_samples);
        if c > 0.0 {
            return Ok(StrictInvariantRegion {
                polygon: augmented,
                min_clearance: c,
                sector_epsilon: Some(eps),
            });
        }
        best = best.max(c);
        eps *= 0.5;
    }
    Err(StrictInvariantError::NotStrict { min_clearance: best })
}

/// Classifies `t * lambda` for each `t`; star-convexity predicts that
/// members never reappear after the first exclusion along a ray.
pub fn star_convexity_probe(
    lambda: Complex64,
    ts: &[f64],
    cfg: &OrbitConfig,
) -> Vec<Membership> {
    ts.iter()
        .map(|&t| classify_membership(lambda * t, cfg))
        .collect()
}
