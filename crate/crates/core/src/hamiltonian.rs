//! Non-diagonal complex 2x2 Hamiltonians in the (tau, eta, b, mu) parametrization.
//!
//! With tau the mean diagonal, eta the half detuning and b the upper coupling,
//! the deformation mu = c + eta^2/b measures the distance from the exceptional
//! point: eigenvalues tau +- sqrt(b mu) coalesce exactly at mu = 0, where the
//! matrix becomes defective with the single eigenvector (b, -eta).

use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::moebius::MoebiusClass;
use crate::scalar::{lit, Scalar, C};

/// Default relative tolerance for classification predicates.
pub fn default_tol<T: Scalar>() -> T {
    lit(1e-9)
}

/// Which of the two eigenvalues tau +- sqrt(b mu) dominates long-time evolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominant {
    Plus,
    Minus,
}

/// Eigenvalue pair of a [`Hamiltonian`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum<T: Scalar> {
    pub lambda_plus: C<T>,
    pub lambda_minus: C<T>,
    /// Set to the root with the larger imaginary part; `None` at or near a
    /// degeneracy, where neither eigenstate dominates.
    pub dominant: Option<Dominant>,
}

/// Eigenvectors of a [`Hamiltonian`]; a single coalesced vector at an EP.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Eigenvectors<T: Scalar> {
    Coalesced((C<T>, C<T>)),
    Pair { plus: (C<T>, C<T>), minus: (C<T>, C<T>) },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hamiltonian<T: Scalar> {
    tau: C<T>,
    eta: C<T>,
    b: C<T>,
    mu: C<T>,
}

impl<T: Scalar> Hamiltonian<T> {
    pub fn new(tau: C<T>, eta: C<T>, b: C<T>, mu: C<T>) -> Result<Self> {
        for (z, name) in [(tau, "tau"), (eta, "eta"), (b, "b"), (mu, "mu")] {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite(name));
            }
        }
        if b.norm_sqr() == T::zero() {
            return Err(Error::DiagonalInput);
        }
        Ok(Self { tau, eta, b, mu })
    }

    /// Parametrize a raw matrix [[a, b], [c, d]].
    pub fn from_matrix(a: C<T>, b: C<T>, c: C<T>, d: C<T>) -> Result<Self> {
        let half = C::new(lit::<T>(0.5), T::zero());
        let tau = (a + d) * half;
        let eta = (a - d) * half;
        if b.norm_sqr() == T::zero() {
            return Err(Error::DiagonalInput);
        }
        let mu = c + eta * eta / b;
        Self::new(tau, eta, b, mu)
    }

    pub fn tau(&self) -> C<T> {
        self.tau
    }
    pub fn eta(&self) -> C<T> {
        self.eta
    }
    pub fn b(&self) -> C<T> {
        self.b
    }
    pub fn mu(&self) -> C<T> {
        self.mu
    }

    /// The product b*mu that controls the Moebius class.
    pub fn b_mu(&self) -> C<T> {
        self.b * self.mu
    }

    /// Reconstruct the matrix [[tau+eta, b], [mu - eta^2/b, tau-eta]].
    pub fn to_matrix(&self) -> Mat2<T> {
        Mat2::new(
            self.tau + self.eta,
            self.b,
            self.mu - self.eta * self.eta / self.b,
            self.tau - self.eta,
        )
    }

    /// The traceless part N = H - tau I; N^2 = (b mu) I.
    pub fn traceless_part(&self) -> Mat2<T> {
        Mat2::new(
            self.eta,
            self.b,
            self.mu - self.eta * self.eta / self.b,
            -self.eta,
        )
    }

    /// Eigenvalues tau +- sqrt(b mu), principal branch.
    pub fn eigenvalues(&self) -> Spectrum<T> {
        let root = self.b_mu().sqrt();
        let tol = default_tol::<T>();
        let dominant = if root.im.abs() > tol * root.norm().max(T::one()) {
            Some(if root.im > T::zero() { Dominant::Plus } else { Dominant::Minus })
        } else {
            None
        };
        Spectrum {
            lambda_plus: self.tau + root,
            lambda_minus: self.tau - root,
            dominant,
        }
    }

    /// The eigenvectors (b, -eta +- sqrt(b mu)); coalesced to (b, -eta) at an EP.
    pub fn eigenvectors(&self) -> Eigenvectors<T> {
        if self.is_exceptional(default_tol()) {
            return Eigenvectors::Coalesced((self.b, -self.eta));
        }
        let root = self.b_mu().sqrt();
        Eigenvectors::Pair {
            plus: (self.b, -self.eta + root),
            minus: (self.b, -self.eta - root),
        }
    }

    /// True iff |mu| <= tol.
    pub fn is_exceptional(&self, tol: T) -> bool {
        self.mu.norm() <= tol
    }

    /// The nilpotent N = H - tau I, valid only at an exceptional point.
    pub fn nilpotent_part(&self, tol: T) -> Result<Mat2<T>> {
        if !self.is_exceptional(tol) {
            return Err(Error::NotExceptional);
        }
        Ok(Mat2::new(
            self.eta,
            self.b,
            -self.eta * self.eta / self.b,
            -self.eta,
        ))
    }

    /// Similarity transform S = [[b, 0], [-eta, 1]] bringing H to its Jordan
    /// normal form [[tau, 1], [0, tau]]; only defined at an exceptional point.
    pub fn jordan_transform(&self, tol: T) -> Result<(Mat2<T>, Mat2<T>)> {
        if !self.is_exceptional(tol) {
            return Err(Error::NotExceptional);
        }
        let z = C::new(T::zero(), T::zero());
        let o = C::new(T::one(), T::zero());
        let s = Mat2::new(self.b, z, -self.eta, o);
        let j = Mat2::new(self.tau, o, z, self.tau);
        Ok((s, j))
    }

    /// Moebius class of the induced polarisation flow, read off b*mu:
    /// parabolic at 0, elliptic on the positive real axis, hyperbolic on the
    /// negative real axis, loxodromic anywhere else.
    pub fn classify(&self, tol: T) -> MoebiusClass {
        let bm = self.b_mu();
        let mag = bm.norm();
        if mag <= tol {
            return MoebiusClass::Parabolic;
        }
        if bm.im.abs() <= tol * mag {
            if bm.re > T::zero() {
                return MoebiusClass::Elliptic;
            }
            return MoebiusClass::Hyperbolic;
        }
        MoebiusClass::Loxodromic
    }

    /// Detect the pseudo-hermitian deformation family mu = s * conj(b) with s
    /// real; returns s when the residual is within the relative tolerance.
    /// s > 0 is elliptic, s < 0 hyperbolic, s = 0 the exceptional point.
    pub fn pseudo_hermitian_parameter(&self, tol: T) -> Option<T> {
        let s = self.mu / self.b.conj();
        if s.im.abs() <= tol * s.norm() {
            Some(s.re)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    type H = Hamiltonian<f64>;

    fn c(re: f64, im: f64) -> C<f64> {
        cplx(re, im)
    }

    fn h(tau: f64, eta: f64, b: f64, mu: C<f64>) -> H {
        H::new(c(tau, 0.0), c(eta, 0.0), c(b, 0.0), mu).unwrap()
    }

    #[test]
    fn from_matrix_examples() {
        let a = H::from_matrix(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(a.tau(), c(0.0, 0.0));
        assert_eq!(a.eta(), c(0.0, 0.0));
        assert_eq!(a.mu(), c(0.0, 0.0));

        let b = H::from_matrix(c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0)).unwrap();
        assert_eq!(b.tau(), c(0.0, 0.0));
        assert_eq!(b.eta(), c(1.0, 0.0));
        assert!((b.mu()).norm() < 1e-15); // c + eta^2/b = -1 + 1

        let s = H::from_matrix(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(s.mu(), c(1.0, 0.0));
    }

    #[test]
    fn diagonal_rejected() {
        assert_eq!(
            H::from_matrix(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)),
            Err(Error::DiagonalInput)
        );
        assert_eq!(H::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)), Err(Error::DiagonalInput));
    }

    #[test]
    fn nonfinite_rejected() {
        assert_eq!(
            H::new(c(f64::NAN, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
            Err(Error::NonFinite("tau"))
        );
    }

    #[test]
    fn parametrization_roundtrip() {
        let orig = H::new(c(0.3, -0.7), c(1.1, 0.4), c(-0.6, 2.0), c(0.05, -1.3)).unwrap();
        let m = orig.to_matrix();
        let back = H::from_matrix(m.m[0][0], m.m[0][1], m.m[1][0], m.m[1][1]).unwrap();
        assert!((back.tau() - orig.tau()).norm() < 1e-14);
        assert!((back.eta() - orig.eta()).norm() < 1e-14);
        assert!((back.b() - orig.b()).norm() < 1e-14);
        assert!((back.mu() - orig.mu()).norm() < 1e-14);
    }

    #[test]
    fn eigenvalues_examples() {
        let sx = h(0.0, 0.0, 1.0, c(1.0, 0.0));
        let sp = sx.eigenvalues();
        assert!((sp.lambda_plus - c(1.0, 0.0)).norm() < 1e-15);
        assert!((sp.lambda_minus + c(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(sp.dominant, None);

        let ep = h(0.0, 1.0, 1.0, c(0.0, 0.0));
        let sp = ep.eigenvalues();
        assert!(sp.lambda_plus.norm() < 1e-15 && sp.lambda_minus.norm() < 1e-15);
        assert_eq!(sp.dominant, None);

        // b mu = i: lambda = +-e^{i pi/4}, plus root dominates.
        let lox = h(0.0, 0.0, 1.0, c(0.0, 1.0));
        let sp = lox.eigenvalues();
        let expect = C::new(0.0, std::f64::consts::FRAC_PI_4).exp();
        assert!((sp.lambda_plus - expect).norm() < 1e-15);
        assert_eq!(sp.dominant, Some(Dominant::Plus));
    }

    #[test]
    fn eigenvalues_match_direct_eigensolve() {
        // independent route: quadratic formula on the reconstructed matrix
        let cases = [
            h(0.0, 0.0, 1.0, c(0.0, 1.0)),
            h(0.5, -1.0, 2.0, c(0.3, 0.4)),
            H::new(c(0.1, 0.2), c(-0.4, 1.0), c(0.0, -2.0), c(1.0, 1.0)).unwrap(),
        ];
        for ham in cases {
            let sp = ham.eigenvalues();
            let (l1, l2) = ham.to_matrix().eigenvalues();
            let d11 = (sp.lambda_plus - l1).norm() + (sp.lambda_minus - l2).norm();
            let d12 = (sp.lambda_plus - l2).norm() + (sp.lambda_minus - l1).norm();
            assert!(d11.min(d12) < 1e-12 * (1.0 + l1.norm() + l2.norm()));
        }
    }

    #[test]
    fn eigenvectors_examples() {
        let ep = h(0.0, 1.0, 1.0, c(0.0, 0.0));
        match ep.eigenvectors() {
            Eigenvectors::Coalesced(v) => {
                assert_eq!(v, (c(1.0, 0.0), c(-1.0, 0.0)));
            }
            _ => panic!("expected coalesced"),
        }

        let sx = h(0.0, 0.0, 1.0, c(1.0, 0.0));
        match sx.eigenvectors() {
            Eigenvectors::Pair { plus, minus } => {
                assert_eq!(plus, (c(1.0, 0.0), c(1.0, 0.0)));
                assert_eq!(minus, (c(1.0, 0.0), c(-1.0, 0.0)));
            }
            _ => panic!("expected pair"),
        }

        // (tau=2, eta=0, b=2, mu=2i): second components -+ sqrt(4i) = +-(sqrt2 + i sqrt2)
        let g = h(2.0, 0.0, 2.0, c(0.0, 2.0));
        let root = c(std::f64::consts::SQRT_2, std::f64::consts::SQRT_2);
        match g.eigenvectors() {
            Eigenvectors::Pair { plus, minus } => {
                assert!((plus.0 - c(2.0, 0.0)).norm() < 1e-15);
                assert!((plus.1 - root).norm() < 1e-14);
                assert!((minus.1 + root).norm() < 1e-14);
                // independent check: both really are eigenvectors of the matrix
                let m = g.to_matrix();
                let sp = g.eigenvalues();
                for (v, l) in [(plus, sp.lambda_plus), (minus, sp.lambda_minus)] {
                    let mv = m.apply(v);
                    assert!((mv.0 - l * v.0).norm() < 1e-13);
                    assert!((mv.1 - l * v.1).norm() < 1e-13);
                }
            }
            _ => panic!("expected pair"),
        }
    }

    #[test]
    fn exceptional_detection() {
        assert!(h(0.0, 1.0, 1.0, c(0.0, 0.0)).is_exceptional(1e-12));
        assert!(!h(0.0, 0.0, 1.0, c(1e-3, 0.0)).is_exceptional(1e-12));
        // eigenvalue collapse condition bc = -eta^2 on a raw matrix
        let m = H::from_matrix(c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0)).unwrap();
        assert!(m.is_exceptional(1e-12));
    }

    #[test]
    fn nilpotent_examples() {
        let n = h(5.0, 0.0, 1.0, c(0.0, 0.0)).nilpotent_part(1e-12).unwrap();
        assert_eq!(n.m[0][1], c(1.0, 0.0));
        assert_eq!(n.m[0][0], c(0.0, 0.0));

        let n = h(0.0, 1.0, 1.0, c(0.0, 0.0)).nilpotent_part(1e-12).unwrap();
        assert_eq!(n, Mat2::new(c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0)));

        let n = h(0.0, 2.0, 4.0, c(0.0, 0.0)).nilpotent_part(1e-12).unwrap();
        assert_eq!(n, Mat2::new(c(2.0, 0.0), c(4.0, 0.0), c(-1.0, 0.0), c(-2.0, 0.0)));
        let sq = n * n;
        assert!(sq.norm() < 1e-14);

        assert_eq!(h(0.0, 0.0, 1.0, c(0.5, 0.0)).nilpotent_part(1e-12), Err(Error::NotExceptional));
    }

    #[test]
    fn jordan_examples() {
        let (s, j) = h(0.0, 0.0, 1.0, c(0.0, 0.0)).jordan_transform(1e-12).unwrap();
        assert_eq!(s, Mat2::identity());
        assert_eq!(j, Mat2::new(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)));

        for ham in [h(3.0, 1.0, 2.0, c(0.0, 0.0)), h(0.0, 1.0, 1.0, c(0.0, 0.0))] {
            let (s, j) = ham.jordan_transform(1e-12).unwrap();
            let prod = s.inverse().unwrap() * ham.to_matrix() * s;
            assert!((prod - j).norm() < 1e-13 * ham.to_matrix().norm().max(1.0));
        }
    }

    #[test]
    fn classify_examples() {
        let tol = 1e-9;
        assert_eq!(h(0.0, 0.0, 1.0, c(-1.0, 0.0)).classify(tol), MoebiusClass::Hyperbolic);
        assert_eq!(h(0.0, 0.0, 1.0, c(1.0, 0.0)).classify(tol), MoebiusClass::Elliptic);
        assert_eq!(h(0.0, 0.0, 1.0, c(0.0, 1.0)).classify(tol), MoebiusClass::Loxodromic);
        assert_eq!(h(0.0, 1.0, 1.0, c(0.0, 0.0)).classify(tol), MoebiusClass::Parabolic);
    }

    #[test]
    fn classify_invariant_under_rescaling() {
        let tol = 1e-9;
        let g = c(0.3, -1.7);
        let a = H::new(c(0.0, 0.0), c(0.2, 0.1), c(1.0, 0.5), c(-0.4, 0.9)).unwrap();
        let scaled = H::new(a.tau(), a.eta(), a.b() * g, a.mu() / g).unwrap();
        assert_eq!(a.classify(tol), scaled.classify(tol));
        assert!((a.b_mu() - scaled.b_mu()).norm() < 1e-14);
    }

    #[test]
    fn pseudo_hermitian_examples() {
        let tol = 1e-9;
        let a = h(0.0, 0.0, 1.0, c(2.0, 0.0));
        assert_eq!(a.pseudo_hermitian_parameter(tol), Some(2.0));

        // b = i, mu = 3 conj(i) = -3i  =>  s = 3
        let b = H::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0), c(0.0, -3.0)).unwrap();
        let s = b.pseudo_hermitian_parameter(tol).unwrap();
        assert!((s - 3.0).abs() < 1e-14);

        let absent = h(0.0, 0.0, 1.0, c(0.0, 1.0));
        assert_eq!(absent.pseudo_hermitian_parameter(tol), None);

        // mu = 0: s = 0 (the EP itself belongs to the family)
        assert_eq!(h(0.0, 1.0, 1.0, c(0.0, 0.0)).pseudo_hermitian_parameter(tol), Some(0.0));
    }

    #[test]
    fn pseudo_hermitian_spectrum_is_real_or_conjugate() {
        // s > 0: both eigenvalues real (relative to tau); s < 0: conjugate pair.
        for (s, b) in [(0.7, c(0.8, -0.6)), (-1.3, c(0.0, 2.0)), (2.0, c(1.0, 0.0))] {
            let mu = b.conj() * c(s, 0.0);
            let ham = H::new(c(0.0, 0.0), c(0.0, 0.0), b, mu).unwrap();
            assert!(ham.pseudo_hermitian_parameter(1e-9).is_some());
            let sp = ham.eigenvalues();
            if s > 0.0 {
                assert!(sp.lambda_plus.im.abs() < 1e-10 && sp.lambda_minus.im.abs() < 1e-10);
            } else {
                assert!((sp.lambda_plus - sp.lambda_minus.conj()).norm() < 1e-10);
            }
        }
    }
}
