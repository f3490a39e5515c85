//! Exact-coefficient independence polynomials and a deterministic
//! simultaneous root finder.
//!
//! Coefficients are arbitrary-precision nonnegative integers indexed by
//! independent-set size; combinatorial growth would silently saturate any
//! fixed-width type.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

/// Generating function of independent-set sizes: `coeffs[k]` counts the
/// independent sets of size `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndPolynomial {
    coeffs: Vec<BigUint>,
}

impl IndPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigUint>) -> IndPolynomial {
        while coeffs.len() > 1 && coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigUint::zero());
        }
        IndPolynomial { coeffs }
    }

    pub fn coefficients(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation after conversion to `f64` coefficients; accurate
    /// while coefficients stay within `f64` range (graphs up to a few
    /// hundred vertices).
    pub fn eval(&self, lambda: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * lambda + c.to_f64().unwrap_or(f64::INFINITY);
        }
        acc
    }
}

/// Dense coefficient-vector helpers used by the counting recursions.
pub(crate) fn poly_add(a: &mut Vec<BigUint>, b: &[BigUint]) {
    if a.len() < b.len() {
        a.resize(b.len(), BigUint::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// Multiply by `lambda^k`.
pub(crate) fn poly_shift(a: &[BigUint], k: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + k];
    out[k..].clone_from_slice(a);
    out
}

pub(crate) fn poly_mul(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn eval_coeffs(coeffs: &[BigUint], lambda: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * lambda + c.to_f64().unwrap_or(f64::INFINITY);
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootError {
    ConstantPolynomial,
    NoConvergence,
}

impl std::fmt::Display for RootError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootError::ConstantPolynomial => write!(f, "polynomial has degree zero"),
            RootError::NoConvergence => write!(f, "root iteration did not converge"),
        }
    }
}

impl std::error::Error for RootError {}

const ROOT_TOL: f64 = 1e-10;
const ROOT_MAX_SWEEPS: usize = 1000;

/// All complex roots by Durand-Kerner iteration with the deterministic
/// `(0.4 + 0.9i)^k` starting configuration, sorted by `(re, im)`.
pub fn poly_roots(p: &IndPolynomial) -> Result<Vec<Complex64>, RootError> {
    let coeffs: Vec<f64> = p
        .coeffs
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    roots_from_f64(&coeffs)
}

pub(crate) fn roots_from_f64(coeffs: &[f64]) -> Result<Vec<Complex64>, RootError> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Err(RootError::ConstantPolynomial);
    }
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };

    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..ROOT_MAX_SWEEPS {
        let mut worst_step = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    let diff = z[i] - z[j];
                    denom *= if diff.norm() < 1e-30 {
                        Complex64::new(1e-30, 1e-30)
                    } else {
                        diff
                    };
                }
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            worst_step = worst_step.max(step.norm());
        }
        if worst_step < ROOT_TOL {
            z.sort_unstable_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            return Ok(z);
        }
    }
    Err(RootError::NoConvergence)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[u64]) -> IndPolynomial {
        IndPolynomial::from_coeffs(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    #[test]
    fn linear_root() {
        let r = poly_roots(&poly(&[1, 2])).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] - Complex64::new(-0.5, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn single_vertex_root() {
        let r = poly_roots(&poly(&[1, 1])).unwrap();
        assert!((r[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn four_cycle_roots_match_quadratic_formula() {
        // 1 + 4x + 2x^2 has roots -1 -/+ sqrt(2)/2
        let r = poly_roots(&poly(&[1, 4, 2])).unwrap();
        let s = 2.0f64.sqrt() / 2.0;
        assert!((r[0] - Complex64::new(-1.0 - s, 0.0)).norm() < 1e-9);
        assert!((r[1] - Complex64::new(-1.0 + s, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn complex_pair() {
        // 1 + x + x^2: roots are the primitive sixth roots of unity squared
        let r = poly_roots(&poly(&[1, 1, 1])).unwrap();
        for root in &r {
            assert!((root.norm() - 1.0).abs() < 1e-9);
            let v = root * root + root + 1.0;
            assert!(v.norm() < 1e-9);
        }
    }

    #[test]
    fn constant_rejected() {
        assert_eq!(poly_roots(&poly(&[5])), Err(RootError::ConstantPolynomial));
    }

    #[test]
    fn trailing_zero_normalization() {
        let p = IndPolynomial::from_coeffs(vec![
            BigUint::from(1u32),
            BigUint::from(2u32),
            BigUint::from(0u32),
        ]);
        assert_eq!(p.degree(), 1);
    }

    #[test]
    fn eval_matches_direct() {
        let p = poly(&[1, 4, 2]);
        let z = Complex64::new(0.3, -0.7);
        let direct = Complex64::new(1.0, 0.0) + z * 4.0 + z * z * 2.0;
        assert!((p.eval(z) - direct).norm() < 1e-12);
    }
}
