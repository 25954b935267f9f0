//! Floquet analysis of periodically modulated Hamiltonians.
//!
//! With tau = 0 and constant eta, the first state component obeys the Hill
//! equation psi1'' = -p(t) psi1 with p = b mu(t). The solver integrates the
//! companion system Y' = [[0, 1], [-p, 0]] Y for the pair (psi1, dpsi1) from
//! identity initial data and maps solutions into state space through
//! psi2 = (i dpsi1 - eta psi1)/b, the row map
//!     C = [[1, 0], [-eta/b, i/b]].
//! The fundamental matrix is Psi(t) = C Y(t) and the evolution operator
//! U(t) = Psi(t) Psi(0)^{-1} = C Y(t) C^{-1}.

use std::io::{self, Write};

use crate::dynamics::{Propagator, State2};
use crate::error::{Error, Result};
use crate::integrate::{integrate_checkpoints, IntegratorOptions};
use crate::mat2::Mat2;
use crate::modulation::ModulationCurve;
use crate::moebius::{classify_transform, proportional_to_identity, MoebiusClass};
use crate::scalar::{lit, Scalar, C};

/// The Hill coefficient t -> p(t) = b mu(t) + i d_t eta of a curve (eta constant).
#[derive(Debug, Clone, Copy)]
pub struct HillCoefficient<'a, T: Scalar> {
    curve: &'a ModulationCurve<T>,
}

impl<'a, T: Scalar> HillCoefficient<'a, T> {
    pub fn new(curve: &'a ModulationCurve<T>) -> Self {
        Self { curve }
    }

    pub fn eval(&self, t: T) -> C<T> {
        self.curve.hill_coefficient_at(t)
    }
}

/// Fundamental matrix Psi(t): columns are the two independent solutions mapped
/// into state space. det Psi is constant in t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalMatrix<T: Scalar> {
    pub psi: Mat2<T>,
    pub t: T,
}

/// Evolution operator over exactly one period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monodromy<T: Scalar> {
    pub m: Mat2<T>,
    pub period: T,
}

/// Floquet multipliers, exponents and the lambda = i nu convention that makes
/// the circular-modulation spectrum coincide with the static one.
/// lambda is only defined modulo 2 pi / period (principal log branch).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloquetSpectrum<T: Scalar> {
    pub multipliers: [C<T>; 2],
    pub exponents: [C<T>; 2],
    pub lambda: [C<T>; 2],
    pub period: T,
}

fn hill_rhs<T: Scalar>(curve: &ModulationCurve<T>) -> impl Fn(T, &Mat2<T>) -> Mat2<T> + '_ {
    move |t, y| {
        let p = curve.hill_coefficient_at(t);
        Mat2::new(y.m[1][0], y.m[1][1], -p * y.m[0][0], -p * y.m[0][1])
    }
}

/// Row map C and its inverse for the curve's (b, eta).
fn state_map<T: Scalar>(curve: &ModulationCurve<T>) -> (Mat2<T>, Mat2<T>) {
    let z = C::new(T::zero(), T::zero());
    let o = C::new(T::one(), T::zero());
    let i = C::new(T::zero(), T::one());
    let b = curve.b();
    let eta = curve.eta();
    let c = Mat2::new(o, z, -eta / b, i / b);
    let c_inv = Mat2::new(o, z, -i * eta, -i * b);
    (c, c_inv)
}

fn resolve_opts<T: Scalar>(opts: &IntegratorOptions<T>, period: T) -> IntegratorOptions<T> {
    IntegratorOptions {
        initial_step: Some(opts.initial_step.unwrap_or(period / lit(1000.0))),
        max_step: Some(opts.max_step.unwrap_or(period / lit(10.0))),
        ..*opts
    }
}

/// Segment boundary times in (0, t_end), periodically extended; corners are
/// forced step points so nothing smooths across them.
fn breakpoints_until<T: Scalar>(curve: &ModulationCurve<T>, t_end: T) -> Vec<T> {
    let period = curve.period();
    let bounds = curve.boundaries();
    let mut out = Vec::new();
    let mut k = T::zero();
    'outer: loop {
        let base = period * k;
        if base >= t_end {
            break;
        }
        for &c in &bounds {
            let t = base + c;
            if t >= t_end {
                break 'outer;
            }
            out.push(t);
        }
        k = k + T::one();
    }
    out
}

/// Integrate the companion matrix Y(t) (identity at t = 0).
fn companion_matrix<T: Scalar>(
    curve: &ModulationCurve<T>,
    t: T,
    opts: &IntegratorOptions<T>,
) -> Result<Mat2<T>> {
    if t.is_nan() || t < T::zero() {
        return Err(Error::InvalidParameter("time must be >= 0"));
    }
    if t == T::zero() {
        return Ok(Mat2::identity());
    }
    let rhs = hill_rhs(curve);
    let mut stops = breakpoints_until(curve, t);
    stops.push(t);
    let opts = resolve_opts(opts, curve.period());
    integrate_checkpoints(&rhs, T::zero(), Mat2::identity(), &stops, &opts, |_, _, _| {})
}

/// Fundamental matrix at time t; Psi(0) equals the row map C.
pub fn fundamental_matrix<T: Scalar>(
    curve: &ModulationCurve<T>,
    t: T,
    opts: &IntegratorOptions<T>,
) -> Result<FundamentalMatrix<T>> {
    let y = companion_matrix(curve, t, opts)?;
    let (c, _) = state_map(curve);
    Ok(FundamentalMatrix { psi: c * y, t })
}

/// Evolution operator U(t) = Psi(t) Psi(0)^{-1}.
pub fn evolution_operator<T: Scalar>(
    curve: &ModulationCurve<T>,
    t: T,
    opts: &IntegratorOptions<T>,
) -> Result<Propagator<T>> {
    let y = companion_matrix(curve, t, opts)?;
    let (c, c_inv) = state_map(curve);
    Ok(Propagator { u: c * y * c_inv, t })
}

/// Evolution operator over exactly one period.
pub fn monodromy<T: Scalar>(
    curve: &ModulationCurve<T>,
    opts: &IntegratorOptions<T>,
) -> Result<Monodromy<T>> {
    let period = curve.period();
    let u = evolution_operator(curve, period, opts)?;
    Ok(Monodromy { m: u.u, period })
}

/// Multipliers (eigenvalues of M), principal-branch exponents nu with
/// multiplier = e^{nu T}, and lambda = i nu.
pub fn floquet_spectrum<T: Scalar>(m: &Monodromy<T>) -> Result<FloquetSpectrum<T>> {
    let det = m.m.det();
    if det.norm() == T::zero() || !det.re.is_finite() || !det.im.is_finite() {
        return Err(Error::SingularMatrix);
    }
    let (m1, m2) = m.m.eigenvalues();
    let i = C::new(T::zero(), T::one());
    let nu1 = m1.ln() / m.period;
    let nu2 = m2.ln() / m.period;
    Ok(FloquetSpectrum {
        multipliers: [m1, m2],
        exponents: [nu1, nu2],
        lambda: [i * nu1, i * nu2],
        period: m.period,
    })
}

/// Moebius class of the monodromy (unit-determinant normalization).
pub fn classify_monodromy<T: Scalar>(m: &Monodromy<T>, tol: T) -> Result<MoebiusClass> {
    classify_transform(&m.m, tol)
}

/// A Floquet EP: degenerate multipliers with a defective monodromy,
/// i.e. parabolic class and not proportional to the identity.
pub fn is_floquet_ep<T: Scalar>(m: &Monodromy<T>, tol: T) -> Result<bool> {
    let class = classify_monodromy(m, tol)?;
    Ok(class == MoebiusClass::Parabolic && !proportional_to_identity(&m.m, lit(1e-8)))
}

/// Eigenpairs (multiplier, unit eigenvector) of the monodromy; a single pair
/// when the multipliers are degenerate within `tol` (relative).
pub fn stroboscopic_eigenstates<T: Scalar>(m: &Monodromy<T>, tol: T) -> Vec<(C<T>, State2<T>)> {
    let (m1, m2) = m.m.eigenvalues();
    let state_of = |l: C<T>| {
        let v = m.m.eigenvector(l);
        State2 { psi1: v.0, psi2: v.1 }
    };
    if (m1 - m2).norm() <= tol * m1.norm().max(T::one()) {
        vec![(m1, state_of(m1))]
    } else {
        vec![(m1, state_of(m1)), (m2, state_of(m2))]
    }
}

/// Dense state evolution sampled uniformly in time.
#[derive(Debug, Clone)]
pub struct StateTrajectory<T: Scalar> {
    pub times: Vec<T>,
    pub states: Vec<State2<T>>,
}

impl<T: Scalar> StateTrajectory<T> {
    /// CSV columns: component, step, t, re, im.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "component,step,t,re,im")?;
        for (step, (t, s)) in self.times.iter().zip(&self.states).enumerate() {
            writeln!(w, "1,{},{},{},{}", step, t, s.psi1.re, s.psi1.im)?;
            writeln!(w, "2,{},{},{},{}", step, t, s.psi2.re, s.psi2.im)?;
        }
        Ok(())
    }
}

/// Evolve `s0` over `n_periods`, sampling `samples_per_period` times per period
/// (plus the initial point).
pub fn trajectory<T: Scalar>(
    curve: &ModulationCurve<T>,
    s0: &State2<T>,
    n_periods: usize,
    samples_per_period: usize,
    opts: &IntegratorOptions<T>,
) -> Result<StateTrajectory<T>> {
    if n_periods < 1 {
        return Err(Error::InvalidParameter("n_periods must be >= 1"));
    }
    if samples_per_period < 1 {
        return Err(Error::InvalidParameter("samples_per_period must be >= 1"));
    }
    let period = curve.period();
    let n_samples = n_periods * samples_per_period;
    let spp = lit::<T>(samples_per_period as f64);
    let sample_times: Vec<T> = (0..=n_samples)
        .map(|k| period * lit::<T>(k as f64) / spp)
        .collect();
    let t_end = *sample_times.last().unwrap();

    // merge segment corners and sample times into one checkpoint list
    let mut stops: Vec<(T, Option<usize>)> = breakpoints_until(curve, t_end)
        .into_iter()
        .map(|t| (t, None))
        .collect();
    for (k, &t) in sample_times.iter().enumerate() {
        if t > T::zero() {
            stops.push((t, Some(k)));
        }
    }
    stops.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let (cmat, c_inv) = state_map(curve);
    let z0 = c_inv.apply((s0.psi1, s0.psi2));
    let mut states = vec![
        State2 { psi1: s0.psi1, psi2: s0.psi2 };
        sample_times.len()
    ];

    let rhs = hill_rhs(curve);
    let times_only: Vec<T> = stops.iter().map(|s| s.0).collect();
    let opts = resolve_opts(opts, period);
    integrate_checkpoints(
        &rhs,
        T::zero(),
        Mat2::identity(),
        &times_only,
        &opts,
        |idx, _t, y| {
            if let Some(sample_idx) = stops[idx].1 {
                let zt = y.apply(z0);
                let st = cmat.apply(zt);
                states[sample_idx] = State2 { psi1: st.0, psi2: st.1 };
            }
        },
    )?;

    Ok(StateTrajectory { times: sample_times, states })
}
