//! Moebius-group classification of fractional-linear transformations.
//!
//! A 2x2 complex matrix acts on the extended complex plane through
//! p -> (m10 + m11 p)/(m00 + m01 p). After normalizing to unit determinant,
//! the square of the trace, sigma, sorts the transformation into one of four
//! classes (plus the degenerate identity).

use std::fmt;

use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::scalar::{lit, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoebiusClass {
    /// sigma real in [0, 4): rotation about two fixed points, no dominance.
    Elliptic,
    /// sigma real > 4: flow from a repulsive to an attractive fixed point.
    Hyperbolic,
    /// sigma anywhere else in the complex plane: spiralling dominance.
    Loxodromic,
    /// sigma = 4 with a non-identity (defective) matrix: single fixed point.
    Parabolic,
    /// The matrix is proportional to the identity.
    Identity,
}

impl MoebiusClass {
    pub fn name(&self) -> &'static str {
        match self {
            MoebiusClass::Elliptic => "Elliptic",
            MoebiusClass::Hyperbolic => "Hyperbolic",
            MoebiusClass::Loxodromic => "Loxodromic",
            MoebiusClass::Parabolic => "Parabolic",
            MoebiusClass::Identity => "Identity",
        }
    }
}

impl fmt::Display for MoebiusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Trace-square diagnostic of the unit-determinant normalization of `u`.
pub fn sigma<T: Scalar>(u: &Mat2<T>) -> Result<num_complex::Complex<T>> {
    let det = u.det();
    if det.norm() == T::zero() || !det.re.is_finite() || !det.im.is_finite() {
        return Err(Error::SingularMatrix);
    }
    let tr = u.trace();
    // Tr^2(u / sqrt(det)) = Tr^2(u) / det; no square-root branch enters.
    Ok(tr * tr / det)
}

/// Classify the Moebius transformation induced by `u`.
///
/// `tol` controls the parabolic band |sigma - 4| <= tol, the realness test
/// |Im sigma| <= tol * max(|sigma|, 1), and the identity test.
pub fn classify_transform<T: Scalar>(u: &Mat2<T>, tol: T) -> Result<MoebiusClass> {
    let det = u.det();
    let scale = u.norm();
    // the determinant is formed from entry products, so below this floor it is
    // numerically indistinguishable from zero
    let floor = scale * scale * T::epsilon() * lit(16.0);
    if det.norm() <= floor || !det.re.is_finite() || !det.im.is_finite() {
        return Err(Error::SingularMatrix);
    }
    let v = u.scale(det.sqrt().inv());
    let id = Mat2::identity();
    let vnorm = v.norm();
    if (v - id).norm() <= tol * vnorm || (v + id).norm() <= tol * vnorm {
        return Ok(MoebiusClass::Identity);
    }
    let tr = v.trace();
    let sig = tr * tr;
    let four = lit::<T>(4.0);
    if (sig - num_complex::Complex::new(four, T::zero())).norm() <= tol {
        return Ok(MoebiusClass::Parabolic);
    }
    let is_real = sig.im.abs() <= tol * sig.norm().max(T::one());
    if is_real {
        if sig.re >= -tol && sig.re < four {
            return Ok(MoebiusClass::Elliptic);
        }
        if sig.re > four {
            return Ok(MoebiusClass::Hyperbolic);
        }
    }
    Ok(MoebiusClass::Loxodromic)
}

/// True when `m` is proportional to the identity within `tol` (relative to its norm).
pub fn proportional_to_identity<T: Scalar>(m: &Mat2<T>, tol: T) -> bool {
    let scale = m.norm();
    let off = (m.m[0][1].norm_sqr() + m.m[1][0].norm_sqr()).sqrt();
    let diag = (m.m[0][0] - m.m[1][1]).norm();
    off <= tol * scale && diag <= tol * scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    type M = Mat2<f64>;
    const TOL: f64 = 1e-9;

    fn c(re: f64, im: f64) -> num_complex::Complex<f64> {
        cplx(re, im)
    }

    #[test]
    fn identity_class() {
        assert_eq!(classify_transform(&M::identity(), TOL).unwrap(), MoebiusClass::Identity);
        let minus = M::identity().scale(c(-3.0, 0.0));
        assert_eq!(classify_transform(&minus, TOL).unwrap(), MoebiusClass::Identity);
    }

    #[test]
    fn parabolic_ep_propagator() {
        // EP propagator at t=1: unit determinant, trace 2.
        let u = M::new(c(1.0, 0.0), c(0.0, -1.0), c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(classify_transform(&u, TOL).unwrap(), MoebiusClass::Parabolic);
        assert!((sigma(&u).unwrap() - c(4.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn hyperbolic_diagonal() {
        let u = M::new(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0));
        assert_eq!(classify_transform(&u, TOL).unwrap(), MoebiusClass::Hyperbolic);
        assert!((sigma(&u).unwrap() - c(6.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn elliptic_rotation() {
        let (s, co) = (0.6f64, 0.8f64);
        let u = M::new(c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0));
        assert_eq!(classify_transform(&u, TOL).unwrap(), MoebiusClass::Elliptic);
    }

    #[test]
    fn elliptic_half_turn_sigma_zero() {
        // trace 0, sigma = 0: quarter-period elliptic evolution.
        let u = M::new(c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0));
        assert_eq!(classify_transform(&u, TOL).unwrap(), MoebiusClass::Elliptic);
    }

    #[test]
    fn loxodromic_cases() {
        // complex sigma
        let u = M::new(c(2.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(classify_transform(&u, TOL).unwrap(), MoebiusClass::Loxodromic);
        // real sigma < 0 (purely imaginary trace)
        let v = M::new(c(0.0, 2.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -0.5));
        let s = sigma(&v).unwrap();
        assert!(s.im.abs() < 1e-15 && s.re < 0.0);
        assert_eq!(classify_transform(&v, TOL).unwrap(), MoebiusClass::Loxodromic);
    }

    #[test]
    fn singular_rejected() {
        let u = M::new(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        assert_eq!(classify_transform(&u, TOL), Err(Error::SingularMatrix));
    }

    #[test]
    fn proportionality_test() {
        let m = M::identity().scale(c(0.0, -2.0));
        assert!(proportional_to_identity(&m, 1e-12));
        let j = M::new(c(1.0, 0.0), c(1e-3, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert!(!proportional_to_identity(&j, 1e-8));
    }
}
