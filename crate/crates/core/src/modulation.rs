//! Periodic piecewise modulation curves mu(t) in the complex plane.
//!
//! A curve is an ordered list of segments, each evaluated in local time
//! s in [0, duration]. The built-in families are the circular loop
//! Delta + rho e^{i omega t}, the two-parabola lens, the rectangle of width
//! rho and aspect ratio alpha, and the ellipse Delta + rho(cos + i alpha sin).

use crate::error::{Error, Result};
use crate::scalar::{cplx, lit, Scalar, C};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentKind<T: Scalar> {
    Constant { value: C<T> },
    /// start + rate * s
    Linear { start: C<T>, rate: C<T> },
    /// c0 + c1 s + c2 s^2
    Quadratic { c0: C<T>, c1: C<T>, c2: C<T> },
    /// center + radius e^{i(phase + omega s)}
    CircularArc { center: C<T>, radius: T, omega: T, phase: T },
    /// center + rho cos(phase + omega s) + i alpha rho sin(phase + omega s)
    EllipticArc { center: C<T>, rho: T, alpha: T, omega: T, phase: T },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment<T: Scalar> {
    pub duration: T,
    pub kind: SegmentKind<T>,
}

impl<T: Scalar> Segment<T> {
    pub fn new(duration: T, kind: SegmentKind<T>) -> Result<Self> {
        if duration.is_nan() || duration <= T::zero() || !duration.is_finite() {
            return Err(Error::InvalidParameter("segment duration must be positive and finite"));
        }
        Ok(Self { duration, kind })
    }

    /// Evaluate at local time s in [0, duration].
    pub fn eval(&self, s: T) -> C<T> {
        match self.kind {
            SegmentKind::Constant { value } => value,
            SegmentKind::Linear { start, rate } => start + rate * s,
            SegmentKind::Quadratic { c0, c1, c2 } => c0 + c1 * s + c2 * (s * s),
            SegmentKind::CircularArc { center, radius, omega, phase } => {
                let ang = phase + omega * s;
                center + C::new(T::zero(), ang).exp() * radius
            }
            SegmentKind::EllipticArc { center, rho, alpha, omega, phase } => {
                let ang = phase + omega * s;
                center + C::new(rho * ang.cos(), alpha * rho * ang.sin())
            }
        }
    }

    /// Stretch the segment in time by `g` without changing its trace in the plane.
    fn time_scaled(&self, g: T) -> Self {
        let kind = match self.kind {
            SegmentKind::Constant { value } => SegmentKind::Constant { value },
            SegmentKind::Linear { start, rate } => SegmentKind::Linear { start, rate: rate / g },
            SegmentKind::Quadratic { c0, c1, c2 } => {
                SegmentKind::Quadratic { c0, c1: c1 / g, c2: c2 / (g * g) }
            }
            SegmentKind::CircularArc { center, radius, omega, phase } => {
                SegmentKind::CircularArc { center, radius, omega: omega / g, phase }
            }
            SegmentKind::EllipticArc { center, rho, alpha, omega, phase } => {
                SegmentKind::EllipticArc { center, rho, alpha, omega: omega / g, phase }
            }
        };
        Segment { duration: self.duration * g, kind }
    }
}

/// Periodic modulation curve with its fixed coupling b and constant detuning eta.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulationCurve<T: Scalar> {
    segments: Vec<Segment<T>>,
    b: C<T>,
    eta: C<T>,
    period: T,
}

/// Coupling for the two-parabola lens family, calibrated so that the Delta = 0
/// lens has a defective (parabolic) monodromy: the lens geometry alone does not
/// place that degeneracy at the origin, the coupling does.
pub fn quadratic_pair_coupling<T: Scalar>() -> C<T> {
    cplx(13.227637834983, -2.158273491463)
}

impl<T: Scalar> ModulationCurve<T> {
    /// Assemble a curve from explicit segments. Closure of the loop is checked
    /// by [`closure_residual`](Self::closure_residual), not enforced.
    pub fn new(segments: Vec<Segment<T>>, b: C<T>, eta: C<T>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidParameter("curve needs at least one segment"));
        }
        if b.norm_sqr() == T::zero() {
            return Err(Error::DiagonalInput);
        }
        if !(b.re.is_finite() && b.im.is_finite() && eta.re.is_finite() && eta.im.is_finite()) {
            return Err(Error::NonFinite("curve parameters"));
        }
        let mut period = T::zero();
        for s in &segments {
            period = period + s.duration;
        }
        Ok(Self { segments, b, eta, period })
    }

    pub fn segments(&self) -> &[Segment<T>] {
        &self.segments
    }
    pub fn b(&self) -> C<T> {
        self.b
    }
    pub fn eta(&self) -> C<T> {
        self.eta
    }
    pub fn period(&self) -> T {
        self.period
    }

    pub fn with_coupling(mut self, b: C<T>) -> Result<Self> {
        if b.norm_sqr() == T::zero() {
            return Err(Error::DiagonalInput);
        }
        self.b = b;
        Ok(self)
    }

    pub fn with_detuning(mut self, eta: C<T>) -> Self {
        self.eta = eta;
        self
    }

    /// Slow the traversal down by `g` (> 0): durations scale, the trace in the
    /// plane is unchanged.
    pub fn with_speed(self, g: T) -> Result<Self> {
        if g.is_nan() || g <= T::zero() || !g.is_finite() {
            return Err(Error::InvalidParameter("speed factor must be positive"));
        }
        let segments = self.segments.iter().map(|s| s.time_scaled(g)).collect();
        Self::new(segments, self.b, self.eta)
    }

    /// Evaluate mu at any time; t is reduced modulo the period.
    pub fn mu_at(&self, t: T) -> C<T> {
        let mut s = t % self.period;
        if s < T::zero() {
            s = s + self.period;
        }
        let mut acc = T::zero();
        let last = self.segments.len() - 1;
        for (idx, seg) in self.segments.iter().enumerate() {
            let end = acc + seg.duration;
            if s < end || idx == last {
                return seg.eval((s - acc).max(T::zero()).min(seg.duration));
            }
            acc = end;
        }
        unreachable!("segment walk covers the period")
    }

    /// Hill coefficient p(t) = b mu(t) + i d_t eta; eta is constant here.
    pub fn hill_coefficient_at(&self, t: T) -> C<T> {
        self.b * self.mu_at(t)
    }

    /// |mu(T) - mu(0)|: zero for a closed loop.
    pub fn closure_residual(&self) -> T {
        let first = self.segments.first().unwrap();
        let last = self.segments.last().unwrap();
        (last.eval(last.duration) - first.eval(T::zero())).norm()
    }

    pub fn is_closed(&self, tol: T) -> bool {
        self.closure_residual() <= tol
    }

    /// Segment boundary times within one period, ending with the period itself.
    pub fn boundaries(&self) -> Vec<T> {
        let mut acc = T::zero();
        self.segments
            .iter()
            .map(|s| {
                acc = acc + s.duration;
                acc
            })
            .collect()
    }

    /// Winding number of the sampled loop around the origin of the mu plane.
    pub fn winding_number(&self, n_samples: usize) -> i32 {
        let n = n_samples.max(8);
        let step = self.period / lit::<T>(n as f64);
        let mut total = T::zero();
        let mut prev = self.mu_at(T::zero());
        for k in 1..=n {
            let cur = self.mu_at(step * lit::<T>(k as f64));
            if prev.norm_sqr() > T::zero() && cur.norm_sqr() > T::zero() {
                total = total + (cur / prev).arg();
            }
            prev = cur;
        }
        let turns = total / (lit::<T>(2.0) * T::PI());
        turns.round().to_f64().unwrap_or(0.0) as i32
    }
}

/// mu(t) = Delta + rho e^{i omega t}, period 2 pi / |omega|, coupling 1.
pub fn circular<T: Scalar>(delta: C<T>, rho: T, omega: T) -> Result<ModulationCurve<T>> {
    if rho.is_nan() || rho < T::zero() {
        return Err(Error::InvalidParameter("rho must be >= 0"));
    }
    if omega == T::zero() || !omega.is_finite() {
        return Err(Error::InvalidParameter("omega must be nonzero"));
    }
    let period = lit::<T>(2.0) * T::PI() / omega.abs();
    let seg = Segment::new(
        period,
        SegmentKind::CircularArc { center: delta, radius: rho, omega, phase: T::zero() },
    )?;
    ModulationCurve::new(vec![seg], cplx(1.0, 0.0), cplx(0.0, 0.0))
}

/// The concave two-parabola lens: Delta - (1+i)/2 + (1+4i)t - 4it^2 on [0,1]
/// and its partner arc on [1,2]; period 2, calibrated coupling.
pub fn quadratic_pair<T: Scalar>(delta: C<T>) -> Result<ModulationCurve<T>> {
    let one = T::one();
    let seg_a = Segment::new(
        one,
        SegmentKind::Quadratic {
            c0: delta + cplx(-0.5, -0.5),
            c1: cplx(1.0, 4.0),
            c2: cplx(0.0, -4.0),
        },
    )?;
    // second arc in local time s = t - 1: Delta + (1-i)/2 + (-1+3i)s - 3is^2
    let seg_b = Segment::new(
        one,
        SegmentKind::Quadratic {
            c0: delta + cplx(0.5, -0.5),
            c1: cplx(-1.0, 3.0),
            c2: cplx(0.0, -3.0),
        },
    )?;
    ModulationCurve::new(vec![seg_a, seg_b], quadratic_pair_coupling(), cplx(0.0, 0.0))
}

/// Rectangle of width rho and aspect ratio alpha traversed in four unit-length
/// linear segments (period 4), vertices Delta +- rho/2 +- i alpha rho / 2.
pub fn rectangular<T: Scalar>(delta: C<T>, rho: T, alpha: T) -> Result<ModulationCurve<T>> {
    if rho.is_nan() || rho <= T::zero() {
        return Err(Error::InvalidParameter("rho must be > 0"));
    }
    if alpha.is_nan() || alpha < T::zero() {
        return Err(Error::InvalidParameter("alpha must be >= 0"));
    }
    let one = T::one();
    let half = lit::<T>(0.5);
    let hw = C::new(rho * half, T::zero());
    let hh = C::new(T::zero(), alpha * rho * half);
    let re_rate = C::new(rho, T::zero());
    let im_rate = C::new(T::zero(), alpha * rho);
    let segs = vec![
        Segment::new(one, SegmentKind::Linear { start: delta - hw + hh, rate: re_rate })?,
        Segment::new(one, SegmentKind::Linear { start: delta + hw + hh, rate: -im_rate })?,
        Segment::new(one, SegmentKind::Linear { start: delta + hw - hh, rate: -re_rate })?,
        Segment::new(one, SegmentKind::Linear { start: delta - hw - hh, rate: im_rate })?,
    ];
    ModulationCurve::new(segs, cplx(1.0, 0.0), cplx(0.0, 0.0))
}

/// mu(t) = Delta + rho cos(omega t) + i alpha rho sin(omega t); alpha = 1 is the
/// circular loop, alpha = 0 a purely real cosine.
pub fn elliptical<T: Scalar>(delta: C<T>, rho: T, alpha: T, omega: T) -> Result<ModulationCurve<T>> {
    if rho.is_nan() || rho < T::zero() {
        return Err(Error::InvalidParameter("rho must be >= 0"));
    }
    if alpha.is_nan() || alpha < T::zero() {
        return Err(Error::InvalidParameter("alpha must be >= 0"));
    }
    if omega == T::zero() || !omega.is_finite() {
        return Err(Error::InvalidParameter("omega must be nonzero"));
    }
    let period = lit::<T>(2.0) * T::PI() / omega.abs();
    let seg = Segment::new(
        period,
        SegmentKind::EllipticArc { center: delta, rho, alpha, omega, phase: T::zero() },
    )?;
    ModulationCurve::new(vec![seg], cplx(1.0, 0.0), cplx(0.0, 0.0))
}
