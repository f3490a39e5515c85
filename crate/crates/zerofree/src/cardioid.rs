//! Closed-form geometry of the finite cardioids and their infinite-degree
//! limit: boundary parameterizations, the fixed-point correspondence of the
//! exponential family, known zero-free disk radii, real traces, and the
//! log-coordinate contraction derivative on the positive axis.

use num_complex::Complex64;

use crate::geometry::SampledBoundary;

pub const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Degree selector: a finite cardioid of degree `d >= 2` or the rescaled
/// infinite-degree limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CardioidSpec {
    Finite(u32),
    Infinity,
}

impl CardioidSpec {
    pub fn finite(d: u32) -> Result<CardioidSpec, CardioidError> {
        if d < 2 {
            Err(CardioidError::DegreeTooSmall(d))
        } else {
            Ok(CardioidSpec::Finite(d))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CardioidError {
    DegreeTooSmall(u32),
    TooFewSamples(usize),
    NoConvergence { parameter: Complex64 },
    DomainError,
}

impl std::fmt::Display for CardioidError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CardioidError::DegreeTooSmall(d) => write!(f, "cardioid degree must be >= 2, got {d}"),
            CardioidError::TooFewSamples(n) => write!(f, "boundary needs >= 3 samples, got {n}"),
            CardioidError::NoConvergence { parameter } => {
                write!(f, "fixed-point iteration did not converge for {parameter}")
            }
            CardioidError::DomainError => write!(f, "argument outside the valid domain"),
        }
    }
}

impl std::error::Error for CardioidError {}

/// The distinguished fixed point of `Z -> lambda * exp(-Z)` together with its
/// multiplier. The multiplier equals `-point` identically: differentiating
/// gives E'(p) = -E(p) = -p at a fixed point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointData {
    pub parameter: Complex64,
    pub point: Complex64,
    pub multiplier: Complex64,
}

/// Boundary value at parameter `u` on the unit circle.
fn boundary_value(spec: CardioidSpec, u: Complex64) -> Complex64 {
    match spec {
        // -d^d u / (u+d)^{d+1} = -(u/d) (1 + u/d)^{-(d+1)}, stable for large d
        CardioidSpec::Finite(d) => {
            let d = d as f64;
            -(u / d) * (-(d + 1.0) * (Complex64::new(1.0, 0.0) + u / d).ln()).exp()
        }
        CardioidSpec::Infinity => -u * (-u).exp(),
    }
}

/// Samples the boundary curve at the `n_samples`-th roots of unity.
pub fn cardioid_boundary(
    spec: CardioidSpec,
    n_samples: usize,
) -> Result<SampledBoundary, CardioidError> {
    if n_samples < 3 {
        return Err(CardioidError::TooFewSamples(n_samples));
    }
    let points = (0..n_samples)
        .map(|k| boundary_value(spec, Complex64::from_polar(1.0, TAU * k as f64 / n_samples as f64)))
        .collect();
    Ok(SampledBoundary::new(points, true))
}

/// Boundary of the degree-`d` cardioid rescaled by `d`; converges to the
/// infinite-degree boundary as `d` grows.
pub fn rescaled_boundary(d: u32, n_samples: usize) -> Result<SampledBoundary, CardioidError> {
    if d < 2 {
        return Err(CardioidError::DegreeTooSmall(d));
    }
    if n_samples < 3 {
        return Err(CardioidError::TooFewSamples(n_samples));
    }
    let df = d as f64;
    let points = (0..n_samples)
        .map(|k| {
            let u = Complex64::from_polar(1.0, TAU * k as f64 / n_samples as f64);
            -u * (-(df + 1.0) * (Complex64::new(1.0, 0.0) + u / df).ln()).exp()
        })
        .collect();
    Ok(SampledBoundary::new(points, true))
}

const FIXED_POINT_TOL: f64 = 1e-12;
const FIXED_POINT_MAX_STEPS: usize = 200;

/// Solves `lambda * exp(-p) = p` by damped Newton iteration, seeking the
/// branch that continues `p = 0` at `lambda = 0`. Seeds start at
/// `lambda / (1 + |lambda|)` with fixed fallbacks.
pub fn fixed_point(lambda: Complex64) -> Result<FixedPointData, CardioidError> {
    if lambda == Complex64::new(0.0, 0.0) {
        return Ok(FixedPointData {
            parameter: lambda,
            point: Complex64::new(0.0, 0.0),
            multiplier: Complex64::new(0.0, 0.0),
        });
    }
    let target = FIXED_POINT_TOL * lambda.norm().max(1.0);
    let seeds = [
        lambda / (1.0 + lambda.norm()),
        Complex64::new(0.5, 0.0),
        Complex64::new(-0.5, 0.0),
        Complex64::new(0.0, 0.5),
        Complex64::new(0.0, -0.5),
    ];
    for &seed in &seeds {
        if let Some(p) = newton_damped(lambda, seed, target) {
            return Ok(FixedPointData {
                parameter: lambda,
                point: p,
                multiplier: -p,
            });
        }
    }
    Err(CardioidError::NoConvergence { parameter: lambda })
}

fn newton_damped(lambda: Complex64, seed: Complex64, target: f64) -> Option<Complex64> {
    let f = |p: Complex64| lambda * (-p).exp() - p;
    let mut p = seed;
    let mut res = f(p).norm();
    for _ in 0..FIXED_POINT_MAX_STEPS {
        if res <= target {
            return Some(p);
        }
        let fp = f(p);
        let dfp = -lambda * (-p).exp() - 1.0;
        if dfp.norm() < 1e-300 {
            return None;
        }
        let full = fp / dfp;
        // halve the step until the residual stops increasing
        let mut damp = 1.0f64;
        loop {
            let cand = p - full * damp;
            let cand_res = f(cand).norm();
            if cand_res <= res || damp < 1e-8 {
                p = cand;
                res = cand_res;
                break;
            }
            damp *= 0.5;
        }
        if !p.re.is_finite() || !p.im.is_finite() {
            return None;
        }
    }
    if res <= target {
        Some(p)
    } else {
        None
    }
}

const CONTAINS_BOUNDARY_SAMPLES: usize = 4096;
const OPEN_REGION_TOL: f64 = 1e-12;

/// Containment verdict with a convergence diagnostic for the branch-tracking
/// fallback outside the modulus bound of the closed cardioid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Outside,
    /// The fixed-point solver failed; the parameter is reported outside.
    OutsideUnresolved,
}

impl Containment {
    pub fn is_inside(&self) -> bool {
        matches!(self, Containment::Inside)
    }
}

/// Membership of `lambda` in the open cardioid.
///
/// Infinite degree: `lambda` is inside exactly when the fixed point of
/// `Z -> lambda exp(-Z)` has multiplier modulus `< 1`, since `p e^p = lambda`
/// with `|p| < 1` inverts the boundary parameterization. Finite degree:
/// winding number of the sampled boundary curve around `lambda`.
pub fn cardioid_contains(spec: CardioidSpec, lambda: Complex64) -> Containment {
    match spec {
        CardioidSpec::Infinity => match fixed_point(lambda) {
            Ok(fp) => {
                if fp.multiplier.norm() < 1.0 - OPEN_REGION_TOL {
                    Containment::Inside
                } else {
                    Containment::Outside
                }
            }
            Err(_) => Containment::OutsideUnresolved,
        },
        CardioidSpec::Finite(_) => {
            let boundary = cardioid_boundary(spec, CONTAINS_BOUNDARY_SAMPLES).expect("samples >= 3");
            if boundary.winding_number(lambda) != 0 {
                Containment::Inside
            } else {
                Containment::Outside
            }
        }
    }
}

/// Known zero-free disk families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnownRegion {
    Shearer,
    SemiDisk,
}

/// Radius of the named zero-free region. Finite degrees give the unscaled
/// radius; `Infinity` gives the limit of the radius rescaled by `d`.
pub fn known_zero_free_radius(kind: KnownRegion, spec: CardioidSpec) -> f64 {
    match (kind, spec) {
        (KnownRegion::Shearer, CardioidSpec::Finite(d)) => {
            let d = d as f64;
            if d <= 100.0 {
                d.powi(d as i32) / (d + 1.0).powi(d as i32 + 1)
            } else {
                (d * d.ln() - (d + 1.0) * (d + 1.0).ln()).exp()
            }
        }
        (KnownRegion::Shearer, CardioidSpec::Infinity) => (-1.0f64).exp(),
        (KnownRegion::SemiDisk, CardioidSpec::Finite(d)) => {
            0.875 * (std::f64::consts::PI / (2.0 * d as f64)).tan()
        }
        (KnownRegion::SemiDisk, CardioidSpec::Infinity) => 7.0 * std::f64::consts::PI / 16.0,
    }
}

/// Which real-axis trace to report for the infinite-degree objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealTrace {
    /// Intersection of the open cardioid with the real axis.
    Cardioid,
    /// Real parameters with bounded orbit sets: `[-1/e, inf)` in the limit.
    BoundedOrbits,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealInterval {
    pub left: f64,
    pub right: f64,
    pub left_closed: bool,
    pub right_closed: bool,
}

/// Real-axis trace of the cardioid, or of the bounded-orbit set when the
/// `BoundedOrbits` flag is selected for the infinite-degree case. At finite
/// degree the two traces coincide, so the flag has no effect there.
pub fn real_interval(spec: CardioidSpec, trace: RealTrace) -> RealInterval {
    match (spec, trace) {
        (CardioidSpec::Finite(d), _) => {
            let df = d as f64;
            let left = -known_zero_free_radius(KnownRegion::Shearer, spec);
            let right = if df <= 100.0 {
                df.powi(d as i32) / (df - 1.0).powi(d as i32 + 1)
            } else {
                (df * df.ln() - (df + 1.0) * (df - 1.0).ln()).exp()
            };
            RealInterval {
                left,
                right,
                left_closed: false,
                right_closed: false,
            }
        }
        (CardioidSpec::Infinity, RealTrace::Cardioid) => RealInterval {
            left: -(-1.0f64).exp(),
            right: std::f64::consts::E,
            left_closed: false,
            right_closed: false,
        },
        (CardioidSpec::Infinity, RealTrace::BoundedOrbits) => RealInterval {
            left: -(-1.0f64).exp(),
            right: f64::INFINITY,
            left_closed: true,
            right_closed: false,
        },
    }
}

/// Derivative of the conjugated map `h(x) = log(1 + lambda exp(-(e^x - 1)))`
/// on the positive axis: `h'(x) = -e^x / (1 + (1/lambda) e^{e^x - 1})`.
/// Strictly smaller than one in modulus for `lambda` in `(0, e)`.
/// Evaluated in log space so that large `x` does not overflow.
pub fn real_contraction_derivative(lambda: f64, x: f64) -> Result<f64, CardioidError> {
    if !(lambda > 0.0 && lambda < std::f64::consts::E) || x < 0.0 {
        return Err(CardioidError::DomainError);
    }
    // |h'(x)| = exp(x - softplus(e^x - 1 - ln lambda))
    let t = x.exp() - 1.0 - lambda.ln();
    let softplus = if t > 0.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    };
    Ok(-(x - softplus).exp())
}

pub use crate::geometry::hausdorff_distance;
