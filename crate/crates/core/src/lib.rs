//! Simulation and classification of two-level non-hermitian time evolution:
//! exact static propagators through the exceptional point, Moebius-class
//! polarisation dynamics on the Poincare sphere, Hill-equation Floquet
//! analysis of periodic modulation curves, Floquet-EP detection, and parallel
//! parametric-resonance stability diagrams.
//!
//! The numeric kernel is generic over the real scalar type via [`scalar::Scalar`]
//! (`f32` or `f64`); the `*64` aliases below pin the common case.

pub mod dynamics;
pub mod error;
pub mod floquet;
pub mod hamiltonian;
pub mod integrate;
pub mod mat2;
pub mod modulation;
pub mod moebius;
pub mod scalar;
pub mod sweep;

pub use dynamics::{
    evolve, limit_polarisation, poincare_portrait, polarisation_flow, propagator, Polarisation,
    Portrait, Propagator, State2,
};
pub use error::{Error, Result};
pub use floquet::{
    classify_monodromy, evolution_operator, floquet_spectrum, fundamental_matrix, is_floquet_ep,
    monodromy, stroboscopic_eigenstates, trajectory, FloquetSpectrum, FundamentalMatrix,
    HillCoefficient, Monodromy, StateTrajectory,
};
pub use hamiltonian::{default_tol, Dominant, Eigenvectors, Hamiltonian, Spectrum};
pub use integrate::IntegratorOptions;
pub use mat2::Mat2;
pub use modulation::{
    circular, elliptical, quadratic_pair, quadratic_pair_coupling, rectangular, ModulationCurve,
    Segment, SegmentKind,
};
pub use moebius::{classify_transform, sigma, MoebiusClass};
pub use scalar::{Scalar, C};
pub use sweep::{
    extract_boundaries, run_sweep, AxisSpec, BoundaryPoint, BoundarySet, Cell, ClassGrid,
    CurveFamily, SweepSpec,
};

pub type C64 = C<f64>;
pub type Mat64 = Mat2<f64>;
pub type Hamiltonian64 = Hamiltonian<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type State64 = State2<f64>;
pub type Polarisation64 = Polarisation<f64>;
pub type Propagator64 = Propagator<f64>;
pub type ModulationCurve64 = ModulationCurve<f64>;
pub type Monodromy64 = Monodromy<f64>;
pub type FloquetSpectrum64 = FloquetSpectrum<f64>;
pub type IntegratorOptions64 = IntegratorOptions<f64>;
pub type SweepSpec64 = SweepSpec<f64>;
pub type ClassGrid64 = ClassGrid<f64>;
