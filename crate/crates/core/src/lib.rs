//! A real Clifford algebra Cl(3,0) toolkit for relativistic physics.
//!
//! Space is a grade-1 vector, time a grade-2 bivector, and the two combine
//! into the multivector x + i c t whose square is the invariant interval.
//! On top of the fixed-size multivector arithmetic this crate builds
//! exponential maps (boosts and rotors), Lorentz conjugation transforms for
//! fields and coordinates, momentum-multivector kinematics with a Compton
//! scattering solver, wave-mechanics residual checks, and free Gaussian
//! wave-packet propagation with a bivector-valued imaginary unit.
//!
//! Everything is plain `f64` data with pure functions; all values are
//! immutable after construction and safe to share across threads.

pub mod error;
pub mod exponential;
pub mod interactions;
pub mod lorentz;
pub mod multivector;
pub mod quad;
pub mod schrodinger;
pub mod spacetime;
pub mod waves;

pub use error::{Error, Result};
pub use exponential::{
    exp_bivector, exp_general, exp_vector, rapidity_from_speed, Rapidity, EXP_DEFAULT_TOL,
};
pub use interactions::{
    compton_solve_multivector, compton_wavelength_shift, ComptonSolution, InteractionLedger,
};
pub use lorentz::{
    boost_event, boost_event_components, boost_field, reflect, rotate, FieldMultivector,
    LorentzOperator,
};
pub use multivector::{geometric_product, Multivector, Vector3, BASIS_LABELS, DEFAULT_TOL};
pub use schrodinger::{
    fit_spread,
    closed_form, phase_rotation_rate, propagate_quadrature, spread, ComplexLike, QuadratureSpec,
    WavePacketParams,
};
pub use spacetime::{
    gamma, orthogonal_time_direction, proper_velocity, Event, MomentumMultivector, ORTHO_TOL,
};
pub use waves::{
    current, dirac_equation_residual, dirac_factorization_residual, dispersion_residual,
    kg_residual, phase, wave_from_momentum, Current, GridSpec, WaveMultivector,
};
