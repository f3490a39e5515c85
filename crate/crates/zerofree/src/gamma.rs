//! The explicit boundary curve near the positive real endpoint: for each
//! angle `theta` a companion angle `gamma` solves
//! `gamma^2 - sin(gamma)^2 = theta^2`, and closed forms give a parameter
//! `lambda_hat` on the curve, a weight `c_hat`, and a point `z_hat` that is
//! a parabolic fixed point (multiplier exactly 1) of the two-step map
//! `H = E_lambda ∘ E_{lambda,c}`. A wedge-with-rays region certifies forward
//! invariance for angles up to at least 0.18.

use num_complex::Complex64;

use crate::geometry::ConvexPolygon;
use crate::orbit::exp_map;

use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaError {
    /// `theta` outside `[0, pi)`.
    ThetaOutOfRange,
    /// The wedge construction needs both angles in `(0, pi/2)`.
    AngleBeyondQuarterTurn,
    /// Truncation abscissa does not clear the segment endpoints.
    TruncationTooSmall,
}

impl std::fmt::Display for GammaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GammaError::ThetaOutOfRange => write!(f, "theta must lie in [0, pi)"),
            GammaError::AngleBeyondQuarterTurn => {
                write!(f, "theta and gamma must lie in (0, pi/2)")
            }
            GammaError::TruncationTooSmall => {
                write!(f, "truncation must exceed the segment endpoints' real parts")
            }
        }
    }
}

impl std::error::Error for GammaError {}

/// Unique root of `g(x) = x^2 - sin(x)^2 - theta^2` in `[theta, pi)`.
///
/// `g` is strictly increasing there (`g' = 2x - sin 2x > 0`), so bisection
/// on `[theta, pi)` is unconditionally safe; two Newton steps polish the
/// bisection result.
pub fn solve_gamma(theta: f64) -> Result<f64, GammaError> {
    if !(0.0..PI).contains(&theta) {
        return Err(GammaError::ThetaOutOfRange);
    }
    if theta == 0.0 {
        return Ok(0.0);
    }
    let g = |x: f64| x * x - x.sin() * x.sin() - theta * theta;
    let mut lo = theta;
    let mut hi = PI - 1e-12;
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..2 {
        let dg = 2.0 * x - (2.0 * x).sin();
        if dg != 0.0 {
            x -= g(x) / dg;
        }
    }
    Ok(x)
}

/// One point of the boundary curve with its parabolic fixed-point data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPoint {
    pub theta: f64,
    pub gamma: f64,
    pub lambda_hat: Complex64,
    pub c_hat: f64,
    pub z_hat: Complex64,
}

/// Evaluates the closed forms at `theta`; the continuous extension at 0
/// returns `(gamma, lambda, c, z) = (0, e, 1, 1)`.
pub fn gamma_point(theta: f64) -> Result<GammaPoint, GammaError> {
    if theta == 0.0 {
        return Ok(GammaPoint {
            theta: 0.0,
            gamma: 0.0,
            lambda_hat: Complex64::new(std::f64::consts::E, 0.0),
            c_hat: 1.0,
            z_hat: Complex64::new(1.0, 0.0),
        });
    }
    let gamma = solve_gamma(theta)?;
    let cot = gamma.cos() / gamma.sin();
    let scale = (gamma + theta) / gamma.sin();
    let lambda_hat = Complex64::from_polar(scale * ((gamma - theta) * cot).exp(), theta);
    let c_hat = (gamma - theta) / (gamma + theta) * (2.0 * theta * cot).exp();
    let z_hat = Complex64::from_polar(scale * (-2.0 * theta * cot).exp(), -gamma);
    Ok(GammaPoint {
        theta,
        gamma,
        lambda_hat,
        c_hat,
        z_hat,
    })
}

/// Residuals of the parabolic fixed-point identities at a curve point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolicResiduals {
    /// `|H(z_hat) - z_hat|`
    pub fixed_residual: f64,
    /// `|H'(z_hat) - 1|`
    pub multiplier_residual: f64,
}

/// Checks `H(z) = lambda exp(-lambda exp(-c z))` fixing `z_hat` with unit
/// derivative; `H'(z) = c * E_{lambda,c}(z) * H(z)`.
pub fn verify_parabolic(p: &GammaPoint) -> ParabolicResiduals {
    let inner = exp_map(p.lambda_hat, p.z_hat * p.c_hat);
    let h = exp_map(p.lambda_hat, inner);
    let dh = inner * h * p.c_hat;
    ParabolicResiduals {
        fixed_residual: (h - p.z_hat).norm(),
        multiplier_residual: (dh - Complex64::new(1.0, 0.0)).norm(),
    }
}

/// Margins of the two forward-invariance inequalities plus the spiral-peak
/// identity value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceMargins {
    /// `1 - sin(theta)/sin(gamma) * exp((gamma-theta) cot gamma)`
    pub ineq1_margin: f64,
    /// `(pi/2 - theta) - (gamma+theta) * exp((gamma-theta) cot gamma)`
    pub ineq2_margin: f64,
    /// Maximal imaginary part of the image spiral; equals `gamma + theta`.
    pub spiral_peak: f64,
}

/// Evaluates the invariance margins; both must be nonnegative for the wedge
/// region to absorb its own image.
pub fn invariance_margins(theta: f64) -> Result<InvarianceMargins, GammaError> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(GammaError::AngleBeyondQuarterTurn);
    }
    let p = gamma_point(theta)?;
    if p.gamma >= FRAC_PI_2 {
        return Err(GammaError::AngleBeyondQuarterTurn);
    }
    let cot = p.gamma.cos() / p.gamma.sin();
    let stretch = ((p.gamma - theta) * cot).exp();
    let lhs1 = theta.sin() / p.gamma.sin() * stretch;
    let lhs2 = (p.gamma + theta) * stretch;
    // the image of the slanted segment is a logarithmic spiral; its highest
    // point occurs at t* and must reach exactly gamma + theta
    let t_star = (p.gamma - theta) / (FRAC_PI_2 - theta);
    let spiral_peak = p.lambda_hat.norm()
        * (t_star * (theta - FRAC_PI_2) * cot).exp()
        * (theta + t_star * (FRAC_PI_2 - theta)).sin();
    Ok(InvarianceMargins {
        ineq1_margin: 1.0 - lhs1,
        ineq2_margin: (FRAC_PI_2 - theta) - lhs2,
        spiral_peak,
    })
}

/// The wedge-with-rays region: two segments from the origin and two
/// horizontal rays, truncated at a finite abscissa for polygonal use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TThetaRegion {
    pub theta: f64,
    /// Endpoint of the vertical segment: `(theta + gamma) i`.
    pub segment_i1_end: Complex64,
    /// Endpoint of the slanted segment: `((pi/2 - theta)/sin gamma) e^{-i gamma}`.
    pub segment_i2_end: Complex64,
    pub truncation_re: f64,
}

impl TThetaRegion {
    /// Region for `theta` with the default truncation `3 (|lambda_hat| + pi)`,
    /// far beyond the image's maximal real part.
    pub fn new(theta: f64) -> Result<TThetaRegion, GammaError> {
        let p = gamma_point(theta)?;
        TThetaRegion::with_truncation(theta, 3.0 * (p.lambda_hat.norm() + PI))
    }

    pub fn with_truncation(theta: f64, truncation_re: f64) -> Result<TThetaRegion, GammaError> {
        if !(theta > 0.0 && theta < FRAC_PI_2) {
            return Err(GammaError::AngleBeyondQuarterTurn);
        }
        let gamma = solve_gamma(theta)?;
        if gamma >= FRAC_PI_2 {
            return Err(GammaError::AngleBeyondQuarterTurn);
        }
        let i1 = Complex64::new(0.0, theta + gamma);
        let i2 = Complex64::from_polar((FRAC_PI_2 - theta) / gamma.sin(), -gamma);
        if truncation_re <= i1.re.max(i2.re) {
            return Err(GammaError::TruncationTooSmall);
        }
        Ok(TThetaRegion {
            theta,
            segment_i1_end: i1,
            segment_i2_end: i2,
            truncation_re,
        })
    }

    pub fn polygon(&self) -> ConvexPolygon {
        ConvexPolygon::hull_of(&[
            Complex64::new(0.0, 0.0),
            self.segment_i2_end,
            Complex64::new(self.truncation_re, self.segment_i2_end.im),
            Complex64::new(self.truncation_re, self.segment_i1_end.im),
            self.segment_i1_end,
        ])
    }
}

/// Truncated polygon for the invariant wedge region.
pub fn t_theta_polygon(theta: f64, truncation_re: f64) -> Result<ConvexPolygon, GammaError> {
    Ok(TThetaRegion::with_truncation(theta, truncation_re)?.polygon())
}

/// Whether `z_hat` lies on the slanted segment of the wedge: collinear with
/// `e^{-i gamma}` (relative tolerance 1e-9) and within the segment's length.
pub fn z_hat_on_segment(p: &GammaPoint) -> bool {
    let dir = Complex64::from_polar(1.0, -p.gamma);
    let cross = dir.re * p.z_hat.im - dir.im * p.z_hat.re;
    let len = p.z_hat.norm();
    if cross.abs() > 1e-9 * len.max(1.0) {
        return false;
    }
    let along = dir.re * p.z_hat.re + dir.im * p.z_hat.im;
    along >= 0.0 && along <= (FRAC_PI_2 - p.theta) / p.gamma.sin()
}

/// Scans `theta = resolution, 2 resolution, ...` and returns the last grid
/// value at which both invariance margins are nonnegative and `z_hat` lies
/// on the wedge's slanted segment. A grid value, not a certified supremum.
pub fn theta_max_search(resolution: f64) -> f64 {
    assert!(resolution > 0.0, "resolution must be positive");
    let mut last_pass = 0.0;
    let mut k = 1u64;
    loop {
        let theta = k as f64 * resolution;
        if theta >= FRAC_PI_2 {
            return last_pass;
        }
        match invariance_margins(theta) {
            Err(_) => return last_pass,
            Ok(m) => {
                let point = match gamma_point(theta) {
                    Ok(p) => p,
                    Err(_) => return last_pass,
                };
                if m.ineq1_margin >= 0.0 && m.ineq2_margin >= 0.0 && z_hat_on_segment(&point) {
                    last_pass = theta;
                } else {
                    return last_pass;
                }
            }
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_at_zero_and_near_pi() {
        assert_eq!(solve_gamma(0.0).unwrap(), 0.0);
        let g = solve_gamma(PI - 1e-4).unwrap();
        assert!(g > 3.1, "gamma should approach pi, got {g}");
        assert!(solve_gamma(-0.1).is_err());
        assert!(solve_gamma(PI).is_err());
    }

    #[test]
    fn gamma_residual_and_small_theta_asymptotic() {
        // bisection oracle cross-check at theta = 0.18
        let theta = 0.18f64;
        let g = solve_gamma(theta).unwrap();
        let res = g * g - g.sin() * g.sin() - theta * theta;
        assert!(res.abs() < 1e-13, "equation residual {res}");
        // small-theta asymptotic gamma ~ (3 theta^2)^{1/4}
        let asym = (3.0 * theta * theta).powf(0.25);
        assert!((g - asym).abs() < 0.01, "g = {g}, asym = {asym}");
        for k in 1..40 {
            let theta = 0.002 * k as f64;
            let g = solve_gamma(theta).unwrap();
            let asym = (3.0 * theta * theta).powf(0.25);
            assert!((g - asym).abs() < 0.02 * asym.max(1e-3));
        }
    }

    #[test]
    fn gamma_point_extension_at_zero() {
        let p = gamma_point(0.0).unwrap();
        assert_eq!(p.gamma, 0.0);
        assert_eq!(p.lambda_hat, Complex64::new(std::f64::consts::E, 0.0));
        assert_eq!(p.c_hat, 1.0);
        assert_eq!(p.z_hat, Complex64::new(1.0, 0.0));
        let r = verify_parabolic(&p);
        assert!(r.fixed_residual < 1e-12);
        assert!(r.multiplier_residual < 1e-12);
    }

    #[test]
    fn parabolic_identities_along_curve() {
        for k in 1..=100 {
            let theta = 0.18 * k as f64 / 100.0;
            let p = gamma_point(theta).unwrap();
            assert!(p.c_hat > 0.0 && p.c_hat < 1.0, "c_hat = {} at {theta}", p.c_hat);
            let res = verify_parabolic(&p);
            assert!(res.fixed_residual < 1e-9, "fixed {} at {theta}", res.fixed_residual);
            assert!(
                res.multiplier_residual < 1e-9,
                "mult {} at {theta}",
                res.multiplier_residual
            );
            // multiplier identity in real form: (gamma^2-theta^2)/sin^2 = 1
            let mult = (p.gamma * p.gamma - theta * theta) / (p.gamma.sin() * p.gamma.sin());
            assert!((mult - 1.0).abs() < 1e-10);
        }
        // a larger angle still satisfies the identities
        let p = gamma_point(0.5).unwrap();
        let res = verify_parabolic(&p);
        assert!(res.fixed_residual < 1e-9 && res.multiplier_residual < 1e-9);
    }

    #[test]
    fn image_corner_lands_on_horizontal_ray() {
        // E(c z) has modulus (gamma+theta)/sin gamma at argument gamma, so its
        // imaginary part is exactly gamma + theta
        let p = gamma_point(0.18).unwrap();
        let corner = exp_map(p.lambda_hat, p.z_hat * p.c_hat);
        assert!((corner.im - (p.gamma + p.theta)).abs() < 1e-12);
    }

    #[test]
    fn margins_nonnegative_up_to_018() {
        for k in 1..=180 {
            let theta = 1e-3 * k as f64;
            let m = invariance_margins(theta).unwrap();
            assert!(m.ineq1_margin >= 0.0, "ineq1 at {theta}: {}", m.ineq1_margin);
            assert!(m.ineq2_margin >= 0.0, "ineq2 at {theta}: {}", m.ineq2_margin);
            let p = gamma_point(theta).unwrap();
            assert!(
                (m.spiral_peak - (p.gamma + theta)).abs() < 1e-10,
                "spiral peak off at {theta}"
            );
        }
        let tiny = invariance_margins(0.01).unwrap();
        assert!(tiny.ineq1_margin > 0.5 && tiny.ineq2_margin > 1.0);
    }

    #[test]
    fn theta_max_reaches_the_published_bound() {
        let coarse = theta_max_search(0.1);
        assert!(coarse >= 0.1, "coarse = {coarse}");
        let fine = theta_max_search(1e-3);
        assert!(fine >= 0.18, "fine = {fine}");
        let finer = theta_max_search(1e-4);
        assert!(finer >= fine - 1e-3, "finer = {finer}, fine = {fine}");
    }

    #[test]
    fn wedge_polygon_shape() {
        let theta = 0.18;
        let region = TThetaRegion::new(theta).unwrap();
        let poly = region.polygon();
        assert_eq!(poly.vertices().len(), 5);
        assert!(poly.contains(Complex64::new(0.0, 0.0), 1e-12));
        let p = gamma_point(theta).unwrap();
        assert!(poly.contains(p.z_hat, 1e-9));
        assert!(z_hat_on_segment(&p));
        assert!(matches!(
            t_theta_polygon(theta, 0.1),
            Err(GammaError::TruncationTooSmall)
        ));
    }

    #[test]
    fn wedge_forward_invariance_sampled() {
        for &theta in &[0.05, 0.1, 0.18] {
            let region = TThetaRegion::new(theta).unwrap();
            let poly = region.polygon();
            let p = gamma_point(theta).unwrap();
            for s in poly.sample_boundary(4096) {
                let image = exp_map(p.lambda_hat, s);
                assert!(
                    poly.contains(image, 1e-9),
                    "image {image} of {s} left the wedge at theta = {theta}"
                );
            }
        }
    }

    #[test]
    fn conjugate_curve_mirrors() {
        let p = gamma_point(0.12).unwrap();
        let conj = p.lambda_hat.conj();
        // conjugated data satisfies the same identities
        let inner = exp_map(conj, p.z_hat.conj() * p.c_hat);
        let h = exp_map(conj, inner);
        assert!((h - p.z_hat.conj()).norm() < 1e-9);
        let dh = inner * h * p.c_hat;
        assert!((dh - Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }
}
