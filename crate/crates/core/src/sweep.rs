//! Parallel Moebius classification over a (Delta, rho) parameter grid.
//!
//! Cells are independent monodromy computations; results are written by cell
//! index, so the grid contents are identical for any worker count. Failed
//! cells are stored as unresolved rather than aborting the sweep.

use std::io::{self, Read, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::floquet::monodromy;
use crate::integrate::IntegratorOptions;
use crate::modulation::{
    circular, elliptical, rectangular, ModulationCurve, Segment, SegmentKind,
};
use crate::moebius::{classify_transform, sigma, MoebiusClass};
use crate::scalar::{cplx, lit, Scalar, C};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveFamily {
    Rectangular,
    Elliptical,
    Circular,
    QuadraticPair,
}

impl CurveFamily {
    pub fn name(&self) -> &'static str {
        match self {
            CurveFamily::Rectangular => "rectangular",
            CurveFamily::Elliptical => "elliptical",
            CurveFamily::Circular => "circular",
            CurveFamily::QuadraticPair => "quadratic-pair",
        }
    }
}

/// Inclusive linear range with `count` samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec<T: Scalar> {
    pub min: T,
    pub max: T,
    pub count: usize,
}

impl<T: Scalar> AxisSpec<T> {
    pub fn new(min: T, max: T, count: usize) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() || min >= max {
            return Err(Error::InvalidParameter("axis range must be finite with min < max"));
        }
        if count < 2 {
            return Err(Error::InvalidParameter("axis count must be >= 2"));
        }
        Ok(Self { min, max, count })
    }

    pub fn values(&self) -> Vec<T> {
        let n = lit::<T>((self.count - 1) as f64);
        (0..self.count)
            .map(|k| self.min + (self.max - self.min) * lit::<T>(k as f64) / n)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec<T: Scalar> {
    pub family: CurveFamily,
    /// Aspect ratio for the rectangular/elliptical families.
    pub alpha: T,
    /// Angular frequency for the circular/elliptical families; the default
    /// pi/2 gives them the same period (4) as the rectangular family.
    pub omega: T,
    /// Global time-scale factor on the curve traversal.
    pub speed: T,
    /// Real-axis sweep of the curve center.
    pub delta_axis: AxisSpec<T>,
    /// Sweep of the modulation depth.
    pub rho_axis: AxisSpec<T>,
    pub b: C<T>,
    pub integrator: IntegratorOptions<T>,
    /// Classification tolerance on the trace-square diagnostic.
    pub class_tol: T,
}

impl<T: Scalar> SweepSpec<T> {
    pub fn new(family: CurveFamily, delta_axis: AxisSpec<T>, rho_axis: AxisSpec<T>) -> Self {
        Self {
            family,
            alpha: T::zero(),
            omega: T::FRAC_PI_2(),
            speed: T::one(),
            delta_axis,
            rho_axis,
            b: cplx(1.0, 0.0),
            integrator: IntegratorOptions::default(),
            class_tol: lit(1e-7),
        }
    }

    /// Build the family member for one grid cell. rho at or below zero
    /// degenerates to the constant curve mu = Delta over the family period.
    pub fn cell_curve(&self, delta: T, rho: T) -> Result<ModulationCurve<T>> {
        let d = C::new(delta, T::zero());
        let curve = match self.family {
            CurveFamily::Circular => circular(d, rho.max(T::zero()), self.omega)?,
            CurveFamily::Elliptical => elliptical(d, rho.max(T::zero()), self.alpha, self.omega)?,
            CurveFamily::Rectangular => {
                if rho > T::zero() {
                    rectangular(d, rho, self.alpha)?
                } else {
                    let seg = Segment::new(lit(4.0), SegmentKind::Constant { value: d })?;
                    ModulationCurve::new(vec![seg], cplx(1.0, 0.0), cplx(0.0, 0.0))?
                }
            }
            CurveFamily::QuadraticPair => {
                // rho scales the lens: mu = Delta + rho * lens0(t)
                let r = C::new(rho.max(T::zero()), T::zero());
                let seg_a = Segment::new(
                    T::one(),
                    SegmentKind::Quadratic {
                        c0: d + cplx::<T>(-0.5, -0.5) * r,
                        c1: cplx::<T>(1.0, 4.0) * r,
                        c2: cplx::<T>(0.0, -4.0) * r,
                    },
                )?;
                let seg_b = Segment::new(
                    T::one(),
                    SegmentKind::Quadratic {
                        c0: d + cplx::<T>(0.5, -0.5) * r,
                        c1: cplx::<T>(-1.0, 3.0) * r,
                        c2: cplx::<T>(0.0, -3.0) * r,
                    },
                )?;
                ModulationCurve::new(vec![seg_a, seg_b], cplx(1.0, 0.0), cplx(0.0, 0.0))?
            }
        };
        curve.with_coupling(self.b)?.with_speed(self.speed)
    }
}

/// One classified grid cell; `class` is `None` when the integrator failed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell<T: Scalar> {
    pub class: Option<MoebiusClass>,
    pub sigma: C<T>,
}

/// Classified grid; cell index = delta_index * n_rho + rho_index.
#[derive(Debug, Clone)]
pub struct ClassGrid<T: Scalar> {
    pub spec: SweepSpec<T>,
    pub deltas: Vec<T>,
    pub rhos: Vec<T>,
    pub cells: Vec<Cell<T>>,
}

impl<T: Scalar> ClassGrid<T> {
    pub fn cell(&self, delta_idx: usize, rho_idx: usize) -> &Cell<T> {
        &self.cells[delta_idx * self.rhos.len() + rho_idx]
    }

    pub fn count_class(&self, class: MoebiusClass) -> usize {
        self.cells.iter().filter(|c| c.class == Some(class)).count()
    }

    /// CSV columns: delta, rho, class, re_sigma, im_sigma.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "delta,rho,class,re_sigma,im_sigma")?;
        for (di, &d) in self.deltas.iter().enumerate() {
            for (ri, &r) in self.rhos.iter().enumerate() {
                let cell = self.cell(di, ri);
                let name = cell.class.map(|c| c.name()).unwrap_or("Unresolved");
                writeln!(w, "{},{},{},{},{}", d, r, name, cell.sigma.re, cell.sigma.im)?;
            }
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("vec write");
        String::from_utf8(buf).expect("csv is utf8")
    }

    /// Compact binary layout: magic "MFGRID01", u32 LE dims, the two axes as
    /// f64 LE, row-major (delta-major) class bytes, then sigma pairs as f64 LE.
    pub fn write_binary<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(b"MFGRID01")?;
        w.write_all(&(self.deltas.len() as u32).to_le_bytes())?;
        w.write_all(&(self.rhos.len() as u32).to_le_bytes())?;
        for &d in &self.deltas {
            w.write_all(&d.to_f64().unwrap_or(f64::NAN).to_le_bytes())?;
        }
        for &r in &self.rhos {
            w.write_all(&r.to_f64().unwrap_or(f64::NAN).to_le_bytes())?;
        }
        for cell in &self.cells {
            w.write_all(&[class_byte(cell.class)])?;
        }
        for cell in &self.cells {
            w.write_all(&cell.sigma.re.to_f64().unwrap_or(f64::NAN).to_le_bytes())?;
            w.write_all(&cell.sigma.im.to_f64().unwrap_or(f64::NAN).to_le_bytes())?;
        }
        Ok(())
    }
}

pub fn class_byte(class: Option<MoebiusClass>) -> u8 {
    match class {
        Some(MoebiusClass::Elliptic) => 0,
        Some(MoebiusClass::Hyperbolic) => 1,
        Some(MoebiusClass::Loxodromic) => 2,
        Some(MoebiusClass::Parabolic) => 3,
        Some(MoebiusClass::Identity) => 4,
        None => 255,
    }
}

pub fn class_from_byte(byte: u8) -> Option<MoebiusClass> {
    match byte {
        0 => Some(MoebiusClass::Elliptic),
        1 => Some(MoebiusClass::Hyperbolic),
        2 => Some(MoebiusClass::Loxodromic),
        3 => Some(MoebiusClass::Parabolic),
        4 => Some(MoebiusClass::Identity),
        _ => None,
    }
}

/// Binary grid payload as read back from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct GridData {
    pub deltas: Vec<f64>,
    pub rhos: Vec<f64>,
    pub classes: Vec<Option<MoebiusClass>>,
    pub sigmas: Vec<(f64, f64)>,
}

pub fn read_binary<R: Read>(mut r: R) -> io::Result<GridData> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != b"MFGRID01" {
        return Err(io::Error::new(io::ErrorKind::InvalidData, "bad grid magic"));
    }
    let mut u = [0u8; 4];
    r.read_exact(&mut u)?;
    let nd = u32::from_le_bytes(u) as usize;
    r.read_exact(&mut u)?;
    let nr = u32::from_le_bytes(u) as usize;
    let mut f = [0u8; 8];
    let mut read_f64 = |r: &mut R| -> io::Result<f64> {
        r.read_exact(&mut f)?;
        Ok(f64::from_le_bytes(f))
    };
    let deltas: Vec<f64> = (0..nd).map(|_| read_f64(&mut r)).collect::<io::Result<_>>()?;
    let rhos: Vec<f64> = (0..nr).map(|_| read_f64(&mut r)).collect::<io::Result<_>>()?;
    let mut bytes = vec![0u8; nd * nr];
    r.read_exact(&mut bytes)?;
    let classes = bytes.into_iter().map(class_from_byte).collect();
    let mut sigmas = Vec::with_capacity(nd * nr);
    for _ in 0..nd * nr {
        let mut f = [0u8; 8];
        r.read_exact(&mut f)?;
        let re = f64::from_le_bytes(f);
        r.read_exact(&mut f)?;
        let im = f64::from_le_bytes(f);
        sigmas.push((re, im));
    }
    Ok(GridData { deltas, rhos, classes, sigmas })
}

fn classify_cell<T: Scalar>(spec: &SweepSpec<T>, delta: T, rho: T) -> Cell<T> {
    let nan = C::new(T::nan(), T::nan());
    let curve = match spec.cell_curve(delta, rho) {
        Ok(c) => c,
        Err(_) => return Cell { class: None, sigma: nan },
    };
    let m = match monodromy(&curve, &spec.integrator) {
        Ok(m) => m,
        Err(_) => return Cell { class: None, sigma: nan },
    };
    let sig = match sigma(&m.m) {
        Ok(s) => s,
        Err(_) => return Cell { class: None, sigma: nan },
    };
    match classify_transform(&m.m, spec.class_tol) {
        Ok(class) => Cell { class: Some(class), sigma: sig },
        Err(_) => Cell { class: None, sigma: sig },
    }
}

/// Classify every grid cell. Embarrassingly parallel over the current rayon
/// pool; output is index-ordered and scheduler-independent.
pub fn run_sweep<T: Scalar>(spec: &SweepSpec<T>) -> Result<ClassGrid<T>> {
    let deltas = spec.delta_axis.values();
    let rhos = spec.rho_axis.values();
    let n_rho = rhos.len();
    let cells: Vec<Cell<T>> = (0..deltas.len() * n_rho)
        .into_par_iter()
        .map(|idx| {
            let di = idx / n_rho;
            let ri = idx % n_rho;
            classify_cell(spec, deltas[di], rhos[ri])
        })
        .collect();
    Ok(ClassGrid { spec: spec.clone(), deltas, rhos, cells })
}

/// A boundary point between two differently classified cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint<T: Scalar> {
    pub delta: T,
    pub rho: T,
}

/// All boundary points between one (unordered) pair of classes.
#[derive(Debug, Clone)]
pub struct BoundarySet<T: Scalar> {
    pub classes: (MoebiusClass, MoebiusClass),
    pub points: Vec<BoundaryPoint<T>>,
}

/// Mark every edge between differently classified neighbours. Without
/// refinement, boundary points are edge midpoints; with refinement, the class
/// change is bisected along the edge to 1e-6 in parameter space.
pub fn extract_boundaries<T: Scalar>(grid: &ClassGrid<T>, refine: bool) -> Vec<BoundarySet<T>> {
    let nd = grid.deltas.len();
    let nr = grid.rhos.len();
    let mut sets: Vec<BoundarySet<T>> = Vec::new();
    let mut push = |pair: (MoebiusClass, MoebiusClass), p: BoundaryPoint<T>| {
        let key = if pair.0 <= pair.1 { pair } else { (pair.1, pair.0) };
        if let Some(set) = sets.iter_mut().find(|s| s.classes == key) {
            set.points.push(p);
        } else {
            sets.push(BoundarySet { classes: key, points: vec![p] });
        }
    };
    let half = lit::<T>(0.5);
    let tol = lit::<T>(1e-6);
    for di in 0..nd {
        for ri in 0..nr {
            let a = grid.cell(di, ri);
            let Some(ca) = a.class else { continue };
            // edge toward +delta
            if di + 1 < nd {
                if let Some(cb) = grid.cell(di + 1, ri).class {
                    if cb != ca {
                        let rho = grid.rhos[ri];
                        let (mut lo, mut hi) = (grid.deltas[di], grid.deltas[di + 1]);
                        if refine {
                            while hi - lo > tol {
                                let mid = (lo + hi) * half;
                                let c = classify_cell(&grid.spec, mid, rho);
                                if c.class == Some(ca) {
                                    lo = mid;
                                } else {
                                    hi = mid;
                                }
                            }
                        }
                        push((ca, cb), BoundaryPoint { delta: (lo + hi) * half, rho });
                    }
                }
            }
            // edge toward +rho
            if ri + 1 < nr {
                if let Some(cb) = grid.cell(di, ri + 1).class {
                    if cb != ca {
                        let delta = grid.deltas[di];
                        let (mut lo, mut hi) = (grid.rhos[ri], grid.rhos[ri + 1]);
                        if refine {
                            while hi - lo > tol {
                                let mid = (lo + hi) * half;
                                let c = classify_cell(&grid.spec, delta, mid);
                                if c.class == Some(ca) {
                                    lo = mid;
                                } else {
                                    hi = mid;
                                }
                            }
                        }
                        push((ca, cb), BoundaryPoint { delta, rho: (lo + hi) * half });
                    }
                }
            }
        }
    }
    sets.sort_by_key(|s| s.classes);
    sets
}
