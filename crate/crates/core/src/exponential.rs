//! Exponential maps of multivectors.
//!
//! `exp_general` sums the Taylor series for an arbitrary multivector argument
//! with scaling-and-squaring to keep the series well conditioned. Pure-vector
//! arguments (boosts) and pure-bivector arguments (rotors) have closed forms,
//! which are the production path; the series doubles as their oracle and
//! handles mixed arguments such as a combined boost-rotation generator.

use crate::error::{Error, Result};
use crate::multivector::{Multivector, Vector3};

/// Default relative truncation tolerance for the Taylor series.
pub const EXP_DEFAULT_TOL: f64 = 1e-14;

/// Iteration cap for the Taylor series; unreachable for finite scaled input.
pub const EXP_MAX_TERMS: usize = 200;

const UNIT_TOL: f64 = 1e-12;

/// A boost parameter: rapidity phi along a unit axis, with tanh(phi) = |v|/c.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Rapidity {
    phi: f64,
    axis: Vector3,
}

impl Rapidity {
    pub fn new(phi: f64, axis: Vector3) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite rapidity {phi}")));
        }
        if !axis.is_unit(UNIT_TOL) {
            return Err(Error::NonUnitAxis { norm: axis.norm() });
        }
        Ok(Rapidity { phi, axis })
    }

    /// Rapidity for a speed ratio |v|/c in [0, 1).
    pub fn from_speed(speed_ratio: f64, axis: Vector3) -> Result<Self> {
        Self::new(rapidity_from_speed(speed_ratio)?, axis)
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn axis(&self) -> Vector3 {
        self.axis
    }

    /// The associated Lorentz factor gamma = cosh(phi).
    pub fn gamma(&self) -> f64 {
        self.phi.cosh()
    }

    pub fn inverse(&self) -> Rapidity {
        Rapidity {
            phi: -self.phi,
            axis: self.axis,
        }
    }
}

/// Rapidity from a speed ratio: atanh(|v|/c), so cosh gives the Lorentz
/// factor gamma.
pub fn rapidity_from_speed(speed_ratio: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&speed_ratio) {
        return Err(Error::Superluminal(speed_ratio));
    }
    Ok(speed_ratio.atanh())
}

/// Taylor-series exponential of a general multivector.
///
/// The argument is halved until its largest coefficient is below 0.5, the
/// series is summed until the next term falls below `tol` relative to the
/// accumulated sum, and the result is squared back up.
pub fn exp_general(m: &Multivector, tol: f64) -> Result<Multivector> {
    if tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite {
            context: "exp_general argument",
        });
    }

    let mut halvings = 0u32;
    let mut scaled = *m;
    while scaled.max_coeff() >= 0.5 {
        scaled = scaled * 0.5;
        halvings += 1;
    }

    let mut sum = Multivector::ONE;
    let mut term = Multivector::ONE;
    let mut converged = false;
    for n in 1..=EXP_MAX_TERMS {
        term = term * scaled * (1.0 / n as f64);
        sum = sum + term;
        if term.max_coeff() < tol * sum.max_coeff() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            max_terms: EXP_MAX_TERMS,
        });
    }

    for _ in 0..halvings {
        sum = sum * sum;
    }
    if !sum.is_finite() {
        return Err(Error::NonFinite {
            context: "exp_general result",
        });
    }
    Ok(sum)
}

/// Closed-form exponential of a pure vector argument phi * axis:
/// cosh(phi) + axis sinh(phi), the boost operator gamma (1 + v/c).
pub fn exp_vector(r: &Rapidity) -> Multivector {
    Multivector::scalar(r.phi.cosh()) + Multivector::from_vector(r.axis * r.phi.sinh())
}

/// Closed-form exponential of a pure bivector argument i * axis * theta:
/// cos(theta) + i axis sin(theta), the rotor for the plane dual to `axis`.
pub fn exp_bivector(theta: f64, axis: Vector3) -> Result<Multivector> {
    if !axis.is_unit(UNIT_TOL) {
        return Err(Error::NonUnitAxis { norm: axis.norm() });
    }
    if !theta.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite angle {theta}")));
    }
    Ok(Multivector::scalar(theta.cos()) + Multivector::from_bivector_dual(axis * theta.sin()))
}
