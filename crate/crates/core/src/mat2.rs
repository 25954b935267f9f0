//! Minimal complex 2x2 linear algebra.
//!
//! Everything in this crate lives in a two-dimensional complex state space, so
//! a hand-rolled matrix type with closed-form inverse and eigensolver beats a
//! general linear-algebra dependency.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, C};

/// Complex 2x2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T: Scalar> {
    pub m: [[C<T>; 2]; 2],
}

impl<T: Scalar> Mat2<T> {
    pub fn new(m00: C<T>, m01: C<T>, m10: C<T>, m11: C<T>) -> Self {
        Self { m: [[m00, m01], [m10, m11]] }
    }

    pub fn identity() -> Self {
        let o = C::new(T::one(), T::zero());
        let z = C::new(T::zero(), T::zero());
        Self::new(o, z, z, o)
    }

    pub fn zero() -> Self {
        let z = C::new(T::zero(), T::zero());
        Self::new(z, z, z, z)
    }

    pub fn trace(&self) -> C<T> {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> C<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Frobenius norm.
    pub fn norm(&self) -> T {
        let s = self.m[0][0].norm_sqr()
            + self.m[0][1].norm_sqr()
            + self.m[1][0].norm_sqr()
            + self.m[1][1].norm_sqr();
        s.sqrt()
    }

    pub fn scale(&self, k: C<T>) -> Self {
        Self::new(self.m[0][0] * k, self.m[0][1] * k, self.m[1][0] * k, self.m[1][1] * k)
    }

    pub fn scale_re(&self, k: T) -> Self {
        self.scale(C::new(k, T::zero()))
    }

    /// `self + k * other` with a real coefficient; the integrator's workhorse.
    pub fn axpy(&self, k: T, other: &Self) -> Self {
        let kk = C::new(k, T::zero());
        Self::new(
            self.m[0][0] + other.m[0][0] * kk,
            self.m[0][1] + other.m[0][1] * kk,
            self.m[1][0] + other.m[1][0] * kk,
            self.m[1][1] + other.m[1][1] * kk,
        )
    }

    pub fn apply(&self, v: (C<T>, C<T>)) -> (C<T>, C<T>) {
        (
            self.m[0][0] * v.0 + self.m[0][1] * v.1,
            self.m[1][0] * v.0 + self.m[1][1] * v.1,
        )
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if !d.re.is_finite() || !d.im.is_finite() || d.norm_sqr() == T::zero() {
            return Err(Error::SingularMatrix);
        }
        let inv = C::new(T::one(), T::zero()) / d;
        Ok(Self::new(
            self.m[1][1] * inv,
            -self.m[0][1] * inv,
            -self.m[1][0] * inv,
            self.m[0][0] * inv,
        ))
    }

    /// Eigenvalues by the quadratic formula, principal branch of the square root.
    pub fn eigenvalues(&self) -> (C<T>, C<T>) {
        let half = C::new(lit_half::<T>(), T::zero());
        let mean = self.trace() * half;
        let disc = mean * mean - self.det();
        let root = disc.sqrt();
        (mean + root, mean - root)
    }

    /// A unit-norm eigenvector for the given eigenvalue.
    ///
    /// Built from the larger row of `A - lambda I`; for a defective matrix the
    /// single eigendirection comes out of either row.
    pub fn eigenvector(&self, lambda: C<T>) -> (C<T>, C<T>) {
        // (A - lambda) v = 0 has solutions (A01, lambda - A00) and (lambda - A11, A10).
        let v1 = (self.m[0][1], lambda - self.m[0][0]);
        let v2 = (lambda - self.m[1][1], self.m[1][0]);
        let n1 = v1.0.norm_sqr() + v1.1.norm_sqr();
        let n2 = v2.0.norm_sqr() + v2.1.norm_sqr();
        let v = if n1 >= n2 { v1 } else { v2 };
        let n = (v.0.norm_sqr() + v.1.norm_sqr()).sqrt();
        if n == T::zero() {
            // A is a multiple of the identity: every vector works.
            return (C::new(T::one(), T::zero()), C::new(T::zero(), T::zero()));
        }
        let inv = C::new(T::one() / n, T::zero());
        (v.0 * inv, v.1 * inv)
    }

    pub fn max_abs(&self) -> T {
        let mut best = T::zero();
        for r in 0..2 {
            for c in 0..2 {
                let a = self.m[r][c].norm();
                if a > best {
                    best = a;
                }
            }
        }
        best
    }
}

#[inline]
fn lit_half<T: Scalar>() -> T {
    T::from_f64(0.5).unwrap()
}

impl<T: Scalar> Mul for Mat2<T> {
    type Output = Mat2<T>;
    fn mul(self, r: Mat2<T>) -> Mat2<T> {
        Mat2::new(
            self.m[0][0] * r.m[0][0] + self.m[0][1] * r.m[1][0],
            self.m[0][0] * r.m[0][1] + self.m[0][1] * r.m[1][1],
            self.m[1][0] * r.m[0][0] + self.m[1][1] * r.m[1][0],
            self.m[1][0] * r.m[0][1] + self.m[1][1] * r.m[1][1],
        )
    }
}

impl<T: Scalar> Add for Mat2<T> {
    type Output = Mat2<T>;
    fn add(self, r: Mat2<T>) -> Mat2<T> {
        Mat2::new(
            self.m[0][0] + r.m[0][0],
            self.m[0][1] + r.m[0][1],
            self.m[1][0] + r.m[1][0],
            self.m[1][1] + r.m[1][1],
        )
    }
}

impl<T: Scalar> Sub for Mat2<T> {
    type Output = Mat2<T>;
    fn sub(self, r: Mat2<T>) -> Mat2<T> {
        Mat2::new(
            self.m[0][0] - r.m[0][0],
            self.m[0][1] - r.m[0][1],
            self.m[1][0] - r.m[1][0],
            self.m[1][1] - r.m[1][1],
        )
    }
}

impl<T: Scalar> Neg for Mat2<T> {
    type Output = Mat2<T>;
    fn neg(self) -> Mat2<T> {
        self.scale_re(-T::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    type M = Mat2<f64>;

    fn c(re: f64, im: f64) -> C<f64> {
        cplx(re, im)
    }

    #[test]
    fn inverse_roundtrip() {
        let a = M::new(c(1.0, 2.0), c(0.5, -1.0), c(3.0, 0.0), c(-2.0, 0.25));
        let p = a * a.inverse().unwrap();
        assert!((p - M::identity()).norm() < 1e-14);
    }

    #[test]
    fn singular_rejected() {
        let a = M::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0));
        assert_eq!(a.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn eigen_pauli_x() {
        let a = M::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let (l1, l2) = a.eigenvalues();
        assert!((l1 - c(1.0, 0.0)).norm() < 1e-15);
        assert!((l2 + c(1.0, 0.0)).norm() < 1e-15);
        let v = a.eigenvector(l1);
        let av = a.apply(v);
        assert!((av.0 - l1 * v.0).norm() < 1e-14);
        assert!((av.1 - l1 * v.1).norm() < 1e-14);
    }

    #[test]
    fn eigen_complex_entries() {
        let a = M::new(c(1.0, 1.0), c(0.0, 2.0), c(-1.0, 0.5), c(0.0, -1.0));
        let (l1, l2) = a.eigenvalues();
        // characteristic polynomial residual
        for l in [l1, l2] {
            let chi = (a.m[0][0] - l) * (a.m[1][1] - l) - a.m[0][1] * a.m[1][0];
            assert!(chi.norm() < 1e-13, "chi residual {}", chi.norm());
        }
        assert!((l1 + l2 - a.trace()).norm() < 1e-14);
        assert!((l1 * l2 - a.det()).norm() < 1e-14);
    }

    #[test]
    fn defective_eigenvector() {
        // Jordan block: single eigendirection (1, 0).
        let a = M::new(c(2.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0));
        let (l1, _) = a.eigenvalues();
        let v = a.eigenvector(l1);
        assert!(v.1.norm() < 1e-14);
        assert!((v.0.norm() - 1.0).abs() < 1e-14);
    }
}
