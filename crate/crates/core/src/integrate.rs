//! Adaptive matrix ODE integration.
//!
//! The primary driver is an embedded Dormand-Prince 5(4) step with PI-free
//! standard step control, marching a complex 2x2 matrix Y through
//! Y' = f(t, Y). Checkpoints (segment corners, requested output times) are
//! always landed on exactly; nothing is ever interpolated across a corner.
//!
//! `fixed` holds an intentionally separate fixed-step classical RK4 used as an
//! independent cross-check of the adaptive results.

use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::scalar::{lit, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorOptions<T: Scalar> {
    /// Per-step relative error control.
    pub rel_tol: T,
    /// Absolute floor of the error weight.
    pub abs_tol: T,
    /// First trial step; defaults to span/1000 of the first checkpoint interval.
    pub initial_step: Option<T>,
    /// Hard cap on the step size; defaults to span/10.
    pub max_step: Option<T>,
    /// Safety valve on the total number of stages.
    pub max_steps: usize,
}

impl<T: Scalar> Default for IntegratorOptions<T> {
    fn default() -> Self {
        Self {
            rel_tol: lit(1e-10),
            abs_tol: lit(1e-12),
            initial_step: None,
            max_step: None,
            max_steps: 4_000_000,
        }
    }
}

impl<T: Scalar> IntegratorOptions<T> {
    pub fn with_rel_tol(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }
}

// Dormand-Prince 5(4) tableau.
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
const B: [f64; 6] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
];
// b - b_hat: the embedded 4th-order error weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

struct Controller<T: Scalar> {
    h: T,
    h_max: T,
    rel: T,
    abs: T,
    steps_left: usize,
}

/// March Y from `t_start` through every checkpoint in `stops` (strictly
/// increasing, all > t_start), invoking `on_stop(index, t, &Y)` as each is
/// reached. Returns Y at the final checkpoint.
pub fn integrate_checkpoints<T, F, O>(
    f: &F,
    t_start: T,
    y0: Mat2<T>,
    stops: &[T],
    opts: &IntegratorOptions<T>,
    mut on_stop: O,
) -> Result<Mat2<T>>
where
    T: Scalar,
    F: Fn(T, &Mat2<T>) -> Mat2<T>,
    O: FnMut(usize, T, &Mat2<T>),
{
    let last = match stops.last() {
        Some(&t) => t,
        None => return Ok(y0),
    };
    let span = last - t_start;
    if span.is_nan() || span <= T::zero() {
        // all checkpoints at the start time
        for (k, &t) in stops.iter().enumerate() {
            on_stop(k, t, &y0);
        }
        return Ok(y0);
    }
    let h_max = opts.max_step.unwrap_or(span / lit(10.0));
    let mut ctl = Controller {
        h: opts.initial_step.unwrap_or(span / lit(1000.0)).min(h_max),
        h_max,
        rel: opts.rel_tol,
        abs: opts.abs_tol,
        steps_left: opts.max_steps,
    };
    let mut t = t_start;
    let mut y = y0;
    let mut k1 = f(t, &y);
    for (idx, &stop) in stops.iter().enumerate() {
        while t < stop {
            step_to(f, &mut t, &mut y, &mut k1, stop, &mut ctl)?;
        }
        on_stop(idx, stop, &y);
    }
    Ok(y)
}

/// Advance one accepted DOPRI5 step, clamped so it never overshoots `stop`.
fn step_to<T, F>(
    f: &F,
    t: &mut T,
    y: &mut Mat2<T>,
    k1: &mut Mat2<T>,
    stop: T,
    ctl: &mut Controller<T>,
) -> Result<()>
where
    T: Scalar,
    F: Fn(T, &Mat2<T>) -> Mat2<T>,
{
    let h_floor = (t.abs().max(stop.abs()) + T::one()) * T::epsilon() * lit(32.0);
    loop {
        if ctl.steps_left == 0 {
            return Err(Error::IntegratorFailure { t: t.to_f64().unwrap_or(f64::NAN) });
        }
        ctl.steps_left -= 1;

        let mut h = ctl.h.min(ctl.h_max);
        let mut hit_stop = false;
        if *t + h >= stop {
            h = stop - *t;
            hit_stop = true;
        }
        if h < h_floor {
            if hit_stop {
                // the remaining sliver is below resolution; snap to the stop
                *t = stop;
                return Ok(());
            }
            return Err(Error::IntegratorFailure { t: t.to_f64().unwrap_or(f64::NAN) });
        }

        let y1 = y.axpy(h * lit(A2[0]), k1);
        let k2 = f(*t + h * lit(C2), &y1);
        let y2 = y.axpy(h * lit(A3[0]), k1).axpy(h * lit(A3[1]), &k2);
        let k3 = f(*t + h * lit(C3), &y2);
        let y3 = y
            .axpy(h * lit(A4[0]), k1)
            .axpy(h * lit(A4[1]), &k2)
            .axpy(h * lit(A4[2]), &k3);
        let k4 = f(*t + h * lit(C4), &y3);
        let y4 = y
            .axpy(h * lit(A5[0]), k1)
            .axpy(h * lit(A5[1]), &k2)
            .axpy(h * lit(A5[2]), &k3)
            .axpy(h * lit(A5[3]), &k4);
        let k5 = f(*t + h * lit(C5), &y4);
        let y5 = y
            .axpy(h * lit(A6[0]), k1)
            .axpy(h * lit(A6[1]), &k2)
            .axpy(h * lit(A6[2]), &k3)
            .axpy(h * lit(A6[3]), &k4)
            .axpy(h * lit(A6[4]), &k5);
        let k6 = f(*t + h, &y5);
        let y_new = y
            .axpy(h * lit(B[0]), k1)
            .axpy(h * lit(B[2]), &k3)
            .axpy(h * lit(B[3]), &k4)
            .axpy(h * lit(B[4]), &k5)
            .axpy(h * lit(B[5]), &k6);
        let k7 = f(*t + h, &y_new);

        let err_mat = Mat2::zero()
            .axpy(h * lit(E[0]), k1)
            .axpy(h * lit(E[2]), &k3)
            .axpy(h * lit(E[3]), &k4)
            .axpy(h * lit(E[4]), &k5)
            .axpy(h * lit(E[5]), &k6)
            .axpy(h * lit(E[6]), &k7);

        let mut err_sq = T::zero();
        for r in 0..2 {
            for c in 0..2 {
                let scale = ctl.abs + ctl.rel * y.m[r][c].norm().max(y_new.m[r][c].norm());
                let ratio = err_mat.m[r][c].norm() / scale;
                err_sq = err_sq + ratio * ratio;
            }
        }
        let err = (err_sq / lit(4.0)).sqrt();

        let order_inv = lit::<T>(0.2);
        let safety = lit::<T>(0.9);
        let fac = if err > T::zero() {
            (safety * err.powf(-order_inv)).max(lit(0.2)).min(lit(5.0))
        } else {
            lit(5.0)
        };

        if err <= T::one() {
            *t = if hit_stop { stop } else { *t + h };
            *y = y_new;
            *k1 = k7; // FSAL
            ctl.h = (h * fac).min(ctl.h_max);
            return Ok(());
        }
        ctl.h = h * fac.min(T::one());
    }
}

pub mod fixed {
    //! Independent fixed-step classical Runge-Kutta oracle.

    use crate::mat2::Mat2;
    use crate::scalar::{lit, Scalar};

    /// Integrate Y' = f(t, Y) from t0 to t1 with `n_steps` RK4 steps.
    pub fn rk4_matrix<T, F>(f: &F, t0: T, t1: T, y0: Mat2<T>, n_steps: usize) -> Mat2<T>
    where
        T: Scalar,
        F: Fn(T, &Mat2<T>) -> Mat2<T>,
    {
        let n = n_steps.max(1);
        let h = (t1 - t0) / lit(n as f64);
        let half = h * lit::<T>(0.5);
        let sixth = h / lit::<T>(6.0);
        let mut y = y0;
        for k in 0..n {
            let t = t0 + h * lit(k as f64);
            let k1 = f(t, &y);
            let k2 = f(t + half, &y.axpy(half, &k1));
            let k3 = f(t + half, &y.axpy(half, &k2));
            let k4 = f(t + h, &y.axpy(h, &k3));
            y = y
                .axpy(sixth, &k1)
                .axpy(sixth + sixth, &k2)
                .axpy(sixth + sixth, &k3)
                .axpy(sixth, &k4);
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cplx, C};

    type M = Mat2<f64>;

    fn c(re: f64, im: f64) -> C<f64> {
        cplx(re, im)
    }

    /// Y' = A Y with constant A = [[0,1],[-w^2,0]]: rotation of frequency w.
    fn harmonic(w: f64) -> impl Fn(f64, &M) -> M {
        move |_t, y: &M| {
            M::new(
                y.m[1][0],
                y.m[1][1],
                -w * w * y.m[0][0],
                -w * w * y.m[0][1],
            )
        }
    }

    fn harmonic_exact(w: f64, t: f64) -> M {
        M::new(
            c((w * t).cos(), 0.0),
            c((w * t).sin() / w, 0.0),
            c(-w * (w * t).sin(), 0.0),
            c((w * t).cos(), 0.0),
        )
    }

    #[test]
    fn dopri5_matches_harmonic_oscillator() {
        let w = 2.0;
        let f = harmonic(w);
        let opts = IntegratorOptions::default();
        let y = integrate_checkpoints(&f, 0.0, M::identity(), &[3.7], &opts, |_, _, _| {}).unwrap();
        let exact = harmonic_exact(w, 3.7);
        assert!((y - exact).norm() < 1e-9, "err {}", (y - exact).norm());
    }

    #[test]
    fn dopri5_handles_time_dependent_complex_coefficient() {
        // Y' = [[0,1],[-p(t),0]] Y with p(t) = i t: cross-check against the oracle.
        let f = |t: f64, y: &M| {
            let p = c(0.0, 1.0) * t;
            M::new(y.m[1][0], y.m[1][1], -p * y.m[0][0], -p * y.m[0][1])
        };
        let opts = IntegratorOptions::default();
        let adaptive =
            integrate_checkpoints(&f, 0.0, M::identity(), &[2.0], &opts, |_, _, _| {}).unwrap();
        let oracle = fixed::rk4_matrix(&f, 0.0, 2.0, M::identity(), 40_000);
        assert!((adaptive - oracle).norm() < 1e-9);
    }

    #[test]
    fn checkpoints_are_exact_and_observed() {
        let f = harmonic(1.0);
        let opts = IntegratorOptions::default();
        let stops = [0.5, 1.0, 2.5];
        let mut seen = Vec::new();
        let y = integrate_checkpoints(&f, 0.0, M::identity(), &stops, &opts, |i, t, yk| {
            seen.push((i, t, *yk));
        })
        .unwrap();
        assert_eq!(seen.len(), 3);
        for (i, t, yk) in &seen {
            assert_eq!(stops[*i], *t);
            let exact = harmonic_exact(1.0, *t);
            assert!((*yk - exact).norm() < 1e-9);
        }
        assert!((y - seen[2].2).norm() == 0.0);
    }

    #[test]
    fn empty_stop_list_is_identity() {
        let f = harmonic(1.0);
        let opts = IntegratorOptions::default();
        let y = integrate_checkpoints(&f, 0.0, M::identity(), &[], &opts, |_, _, _| {}).unwrap();
        assert!((y - M::identity()).norm() == 0.0);
    }

    #[test]
    fn step_budget_exhaustion_fails_cleanly() {
        let f = harmonic(50.0);
        let opts = IntegratorOptions { max_steps: 10, ..Default::default() };
        let out = integrate_checkpoints(&f, 0.0, M::identity(), &[10.0], &opts, |_, _, _| {});
        assert!(matches!(out, Err(Error::IntegratorFailure { .. })));
    }

    #[test]
    fn rk4_first_order_decay() {
        // scalar test embedded in the (0,0) entry: y' = -y
        let f = |_t: f64, y: &M| y.scale(c(-1.0, 0.0));
        let y0 = M::identity();
        let y = fixed::rk4_matrix(&f, 0.0, 1.0, y0, 1000);
        assert!((y.m[0][0].re - (-1.0f64).exp()).abs() < 1e-12);
    }
}
