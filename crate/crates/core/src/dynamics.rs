//! Exact time evolution for static Hamiltonians and the induced polarisation
//! flow on the Poincare sphere.
//!
//! The propagator is evaluated in closed form,
//! U(t) = e^{-i tau t} [cos(sqrt(b mu) t) I - i t sinc(sqrt(b mu) t) N],
//! which stays finite through the exceptional point: near mu = 0 the even
//! functions cos and sinc are evaluated as truncated series in z^2 = b mu t^2,
//! so no square-root branch is ever taken there.

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hamiltonian::{default_tol, Dominant, Eigenvectors, Hamiltonian};
use crate::mat2::Mat2;
use crate::moebius::{classify_transform, MoebiusClass};
use crate::scalar::{i, lit, Scalar, C};

/// Two-component state vector (psi1, psi2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State2<T: Scalar> {
    pub psi1: C<T>,
    pub psi2: C<T>,
}

impl<T: Scalar> State2<T> {
    pub fn new(psi1: C<T>, psi2: C<T>) -> Result<Self> {
        if !(psi1.re.is_finite() && psi1.im.is_finite() && psi2.re.is_finite() && psi2.im.is_finite()) {
            return Err(Error::NonFinite("state component"));
        }
        if psi1.norm_sqr() == T::zero() && psi2.norm_sqr() == T::zero() {
            return Err(Error::InvalidParameter("state must be nonzero"));
        }
        Ok(Self { psi1, psi2 })
    }

    pub fn polarisation(&self) -> Polarisation<T> {
        if self.psi1.norm_sqr() == T::zero() {
            Polarisation::Infinity
        } else {
            Polarisation::Finite(self.psi2 / self.psi1)
        }
    }

    pub fn norm(&self) -> T {
        (self.psi1.norm_sqr() + self.psi2.norm_sqr()).sqrt()
    }
}

/// Point on the extended complex plane: the ratio psi2/psi1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Polarisation<T: Scalar> {
    Finite(C<T>),
    Infinity,
}

impl<T: Scalar> Polarisation<T> {
    /// Map to the Poincare sphere; infinity is the south pole (0, 0, -1).
    /// Stereographic projection from the south pole sends the sphere point
    /// back to the plane value itself, so the top hemisphere (|p| < 1) fills
    /// the unit disk.
    pub fn to_sphere(&self) -> [T; 3] {
        match self {
            Polarisation::Infinity => [T::zero(), T::zero(), -T::one()],
            Polarisation::Finite(p) => {
                let n = p.norm_sqr();
                if !n.is_finite() {
                    return [T::zero(), T::zero(), -T::one()];
                }
                let d = T::one() + n;
                let two = lit::<T>(2.0);
                [two * p.re / d, two * p.im / d, (T::one() - n) / d]
            }
        }
    }

    /// Chordal distance: euclidean distance between the sphere images (<= 2).
    pub fn chordal_distance(&self, other: &Self) -> T {
        let a = self.to_sphere();
        let b = other.to_sphere();
        let mut s = T::zero();
        for k in 0..3 {
            let d = a[k] - b[k];
            s = s + d * d;
        }
        s.sqrt()
    }

    /// Inverse of [`to_sphere`](Self::to_sphere).
    pub fn from_sphere(x: T, y: T, z: T) -> Self {
        let d = T::one() + z;
        if d <= T::epsilon() {
            Polarisation::Infinity
        } else {
            Polarisation::Finite(C::new(x / d, y / d))
        }
    }
}

/// Evolution operator over an elapsed time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Propagator<T: Scalar> {
    pub u: Mat2<T>,
    pub t: T,
}

impl<T: Scalar> Propagator<T> {
    pub fn classify(&self, tol: T) -> Result<MoebiusClass> {
        classify_transform(&self.u, tol)
    }

    /// Apply the induced Moebius transformation to a polarisation, evaluated in
    /// homogeneous coordinates so infinity needs no special path.
    pub fn apply_polarisation(&self, p: Polarisation<T>) -> Polarisation<T> {
        let w = match p {
            Polarisation::Finite(p) => (C::new(T::one(), T::zero()), p),
            Polarisation::Infinity => (C::new(T::zero(), T::zero()), C::new(T::one(), T::zero())),
        };
        let (w1, w2) = self.u.apply(w);
        if w1.norm_sqr() == T::zero() {
            Polarisation::Infinity
        } else {
            Polarisation::Finite(w2 / w1)
        }
    }
}

/// cos(z) and t*sinc(z) for z^2 = w, evaluated as series when |w| is tiny so
/// the EP limit needs no branch.
fn cos_and_tsinc<T: Scalar>(w: C<T>, t: T) -> (C<T>, C<T>) {
    let crossover = lit::<T>(1e-8); // |z| < 1e-4
    if w.norm() < crossover {
        let half = lit::<T>(0.5);
        let c24 = lit::<T>(1.0 / 24.0);
        let c6 = lit::<T>(1.0 / 6.0);
        let c120 = lit::<T>(1.0 / 120.0);
        let one = C::new(T::one(), T::zero());
        let cos = one - w * half + w * w * c24;
        let sinc = one - w * c6 + w * w * c120;
        (cos, sinc * t)
    } else {
        let z = w.sqrt();
        (z.cos(), z.sin() / z * t)
    }
}

/// Closed-form propagator U(t) = e^{-i tau t}[cos(sqrt(b mu) t) I - i t sinc(sqrt(b mu) t) N].
pub fn propagator<T: Scalar>(h: &Hamiltonian<T>, t: T) -> Propagator<T> {
    let n = h.traceless_part();
    let w = h.b_mu() * (t * t);
    let (cos, tsinc) = cos_and_tsinc(w, t);
    let phase = (-i::<T>() * h.tau() * t).exp();
    let u = (Mat2::identity().scale(cos) - n.scale(i::<T>() * tsinc)).scale(phase);
    Propagator { u, t }
}

/// Evolve a state: U(t) |psi>.
pub fn evolve<T: Scalar>(h: &Hamiltonian<T>, s: &State2<T>, t: T) -> State2<T> {
    let (a, b) = propagator(h, t).u.apply((s.psi1, s.psi2));
    State2 { psi1: a, psi2: b }
}

/// Push a polarisation through the flow for time t.
pub fn polarisation_flow<T: Scalar>(h: &Hamiltonian<T>, t: T, p0: Polarisation<T>) -> Polarisation<T> {
    propagator(h, t).apply_polarisation(p0)
}

/// The attracting fixed point of the polarisation flow: the polarisation
/// (-eta + sqrt(b mu))/b of the dominant eigenstate, or -eta/b at an EP.
/// Elliptic Hamiltonians (b mu real positive) have no dominant state.
pub fn limit_polarisation<T: Scalar>(h: &Hamiltonian<T>) -> Result<Polarisation<T>> {
    let tol = default_tol::<T>();
    if h.is_exceptional(tol) {
        return Ok(Polarisation::Finite(-h.eta() / h.b()));
    }
    let sp = h.eigenvalues();
    let root = h.b_mu().sqrt();
    match sp.dominant {
        None => Err(Error::NoDominantState),
        Some(Dominant::Plus) => Ok(Polarisation::Finite((-h.eta() + root) / h.b())),
        Some(Dominant::Minus) => Ok(Polarisation::Finite((-h.eta() - root) / h.b())),
    }
}

/// One sampled polarisation trajectory of a portrait.
#[derive(Debug, Clone)]
pub struct PortraitTrajectory<T: Scalar> {
    pub points: Vec<Polarisation<T>>,
}

/// Random-initial-condition portrait of the polarisation flow.
#[derive(Debug, Clone)]
pub struct Portrait<T: Scalar> {
    pub times: Vec<T>,
    pub samples: Vec<PortraitTrajectory<T>>,
    /// Polarisations of the eigenstates (the flow's fixed points).
    pub markers: Vec<Polarisation<T>>,
}

/// Evolve `n_samples` sphere-uniform random initial polarisations on a uniform
/// time grid. The seed fully determines the output; trajectories are evaluated
/// in parallel but stored by sample index.
pub fn poincare_portrait<T: Scalar>(
    h: &Hamiltonian<T>,
    n_samples: usize,
    t_max: T,
    n_steps: usize,
    seed: u64,
) -> Result<Portrait<T>> {
    if n_samples < 1 {
        return Err(Error::InvalidParameter("n_samples must be >= 1"));
    }
    if n_steps < 2 {
        return Err(Error::InvalidParameter("n_steps must be >= 2"));
    }
    if t_max.is_nan() || t_max <= T::zero() {
        return Err(Error::InvalidParameter("t_max must be positive"));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut initial = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        // area-preserving inverse transform: z uniform on (-1, 1], azimuth uniform
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        let z = lit::<T>(1.0 - 2.0 * u);
        let phi = lit::<T>(2.0 * std::f64::consts::PI * v);
        let r = (T::one() - z * z).max(T::zero()).sqrt();
        initial.push(Polarisation::from_sphere(r * phi.cos(), r * phi.sin(), z));
    }

    let steps = lit::<T>((n_steps - 1) as f64);
    let times: Vec<T> = (0..n_steps)
        .map(|k| t_max * lit::<T>(k as f64) / steps)
        .collect();

    let samples: Vec<PortraitTrajectory<T>> = initial
        .par_iter()
        .map(|p0| PortraitTrajectory {
            points: times.iter().map(|&t| polarisation_flow(h, t, *p0)).collect(),
        })
        .collect();

    let markers = match h.eigenvectors() {
        Eigenvectors::Coalesced(v) => vec![State2 { psi1: v.0, psi2: v.1 }.polarisation()],
        Eigenvectors::Pair { plus, minus } => vec![
            State2 { psi1: plus.0, psi2: plus.1 }.polarisation(),
            State2 { psi1: minus.0, psi2: minus.1 }.polarisation(),
        ],
    };

    Ok(Portrait { times, samples, markers })
}

impl<T: Scalar> Portrait<T> {
    /// CSV columns: sample_id, step, t, re_p, im_p, sphere_x, sphere_y, sphere_z.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "sample_id,step,t,re_p,im_p,sphere_x,sphere_y,sphere_z")?;
        for (sid, traj) in self.samples.iter().enumerate() {
            for (step, p) in traj.points.iter().enumerate() {
                let [x, y, z] = p.to_sphere();
                let (re, im) = match p {
                    Polarisation::Finite(v) => (v.re, v.im),
                    Polarisation::Infinity => (T::infinity(), T::infinity()),
                };
                writeln!(
                    w,
                    "{},{},{},{},{},{},{},{}",
                    sid, step, self.times[step], re, im, x, y, z
                )?;
            }
        }
        Ok(())
    }
}
