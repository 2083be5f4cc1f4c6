//! Lorentz-group operators and conjugation transforms.
//!
//! A general restricted Lorentz transformation is the product of a boost
//! exponential and a rotor, applied by two-sided conjugation. Fields boost
//! with half-rapidity factors along the boost axis; coordinates boost with
//! the axis perpendicular to the boost velocity. The two are deliberately
//! distinct code paths. Reflections and rotations of plain vectors come from
//! the same conjugation machinery.

use crate::error::{Error, Result};
use crate::exponential::{exp_bivector, exp_general, exp_vector, Rapidity, EXP_DEFAULT_TOL};
use crate::multivector::{Multivector, Vector3};
use crate::spacetime::{check_orthogonal, Event};

const UNIT_TOL: f64 = 1e-12;
const OPERATOR_TOL: f64 = 1e-12;

fn require_unit(axis: &Vector3) -> Result<()> {
    if !axis.is_unit(UNIT_TOL) {
        return Err(Error::NonUnitAxis { norm: axis.norm() });
    }
    Ok(())
}

/// A restricted Lorentz transformation L together with its cached inverse
/// L_dagger, with L * L_dagger = 1 enforced to 1e-12 on all coefficients.
#[derive(Clone, Debug)]
pub struct LorentzOperator {
    l: Multivector,
    l_dagger: Multivector,
}

impl LorentzOperator {
    fn validated(l: Multivector, l_dagger: Multivector) -> Result<Self> {
        let residual = l * l_dagger - Multivector::ONE;
        if residual.max_coeff() > OPERATOR_TOL {
            return Err(Error::InvariantViolation(format!(
                "L L_dagger deviates from 1 by {:.3e}",
                residual.max_coeff()
            )));
        }
        Ok(LorentzOperator { l, l_dagger })
    }

    /// Combined boost and rotation. Takes the full rapidity and full
    /// rotation angle; the half-argument factors of the two-sided
    /// conjugation live inside the operator, so
    /// L = exp(-v_hat phi/2) exp(-i w_hat theta/2) and the dagger reverses
    /// the factors with negated arguments.
    ///
    /// Conjugating a vector with a pure rotation rotates it anticlockwise by
    /// `theta` about `w_hat`; conjugating a field multivector with a pure
    /// boost applies the standard field boost.
    pub fn new(phi: f64, v_hat: Vector3, theta: f64, w_hat: Vector3) -> Result<Self> {
        let boost = Rapidity::new(-phi / 2.0, v_hat)?;
        let rotor = exp_bivector(-theta / 2.0, w_hat)?;
        let boost_inv = Rapidity::new(phi / 2.0, v_hat)?;
        let rotor_inv = exp_bivector(theta / 2.0, w_hat)?;
        Self::validated(
            exp_vector(&boost) * rotor,
            rotor_inv * exp_vector(&boost_inv),
        )
    }

    /// Single-exponential operator with the mixed generator
    /// -(phi v_hat + i theta w_hat)/2. The mixed generator does not factor
    /// into the two-exponential form; it captures the Thomas rotation in one
    /// map.
    pub fn thomas(phi: f64, v_hat: Vector3, theta: f64, w_hat: Vector3) -> Result<Self> {
        require_unit(&v_hat)?;
        require_unit(&w_hat)?;
        let generator = (Multivector::from_vector(v_hat * phi)
            + Multivector::from_bivector_dual(w_hat * theta))
            * -0.5;
        let l = exp_general(&generator, EXP_DEFAULT_TOL)?;
        let l_dagger = exp_general(&(-generator), EXP_DEFAULT_TOL)?;
        Self::validated(l, l_dagger)
    }

    pub fn operator(&self) -> &Multivector {
        &self.l
    }

    pub fn dagger(&self) -> &Multivector {
        &self.l_dagger
    }

    /// Conjugation L m L_dagger. Squares of transformed event multivectors
    /// are preserved, which is the interval invariance.
    pub fn transform(&self, m: &Multivector) -> Multivector {
        self.l * *m * self.l_dagger
    }
}

/// An electromagnetic field state E + i c B, combining the polar electric
/// field and the axial magnetic field in one multivector.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct FieldMultivector {
    pub e: Vector3,
    pub b: Vector3,
    pub c: f64,
}

impl FieldMultivector {
    pub fn new(e: Vector3, b: Vector3, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "speed of light must be positive and finite, got {c}"
            )));
        }
        if !e.is_finite() || !b.is_finite() {
            return Err(Error::NonFinite {
                context: "FieldMultivector",
            });
        }
        Ok(FieldMultivector { e, b, c })
    }

    pub fn as_multivector(&self) -> Multivector {
        Multivector::from_vector(self.e) + Multivector::from_bivector_dual(self.b * self.c)
    }

    /// Split a vector+bivector multivector back into E and B, rejecting
    /// scalar or trivector residue.
    pub fn from_multivector(m: &Multivector, c: f64) -> Result<Self> {
        let off = m.scalar_part().abs().max(m.trivector_part().abs());
        let scale = m.max_coeff().max(1.0);
        if off > 1e-10 * scale {
            return Err(Error::InvariantViolation(format!(
                "field multivector has scalar/trivector residue {off:.3e}"
            )));
        }
        FieldMultivector::new(m.vector_part(), m.bivector_dual() * (1.0 / c), c)
    }
}

/// Boost an electromagnetic field: F' = exp(-v_hat phi/2) F exp(v_hat phi/2).
/// The component parallel to the boost is unchanged; perpendicular components
/// scale by gamma and induce the complementary field.
pub fn boost_field(f: &FieldMultivector, phi: f64, v_hat: Vector3) -> Result<FieldMultivector> {
    let half = Rapidity::new(phi / 2.0, v_hat)?;
    let left = exp_vector(&half.inverse());
    let right = exp_vector(&half);
    let transformed = left * f.as_multivector() * right;
    FieldMultivector::from_multivector(&transformed, f.c)
}

/// Boost direction for coordinates: the normalized component of x
/// perpendicular to the boost velocity.
fn perpendicular_axis(x: &Vector3, v_hat: &Vector3) -> Result<Vector3> {
    let x_perp = *x - *v_hat * x.dot(v_hat);
    let n = x_perp.norm();
    if n <= 1e-12 * x.norm().max(1.0) {
        return Err(Error::DegenerateGeometry(
            "position is parallel to the boost velocity, so the perpendicular \
             conjugation axis is undefined; use boost_event_components instead"
                .to_string(),
        ));
    }
    Ok(x_perp * (1.0 / n))
}

/// Boost spacetime coordinates by conjugating with the axis perpendicular to
/// the boost velocity: X' = exp(-v_perp phi/2) X exp(v_perp phi/2).
///
/// Requires the event time vector to lie along the direction orthogonal to
/// both the boost velocity and the perpendicular axis (the gauge in which
/// the conjugation reproduces the component-form boost).
pub fn boost_event(event: &Event, phi: f64, v_hat: Vector3) -> Result<Event> {
    require_unit(&v_hat)?;
    let x = event.x();
    let t = event.t();
    let v_perp = perpendicular_axis(&x, &v_hat)?;
    if t.norm() > 0.0 {
        check_orthogonal(&t, &v_hat)?;
        check_orthogonal(&t, &v_perp)?;
    }

    let half = Rapidity::new(phi / 2.0, v_perp)?;
    let transformed = exp_vector(&half.inverse()) * event.as_multivector() * exp_vector(&half);
    let x_new = transformed.vector_part();
    let t_new = transformed.bivector_dual() * (1.0 / event.c());
    let residue = transformed
        .scalar_part()
        .abs()
        .max(transformed.trivector_part().abs());
    if residue > 1e-10 * transformed.max_coeff().max(1.0) {
        return Err(Error::InvariantViolation(format!(
            "boosted event has scalar/trivector residue {residue:.3e}"
        )));
    }
    Event::new(x_new, t_new, event.c())
}

/// Component-form Lorentz boost, the fallback for events whose position is
/// parallel to the boost velocity (where the conjugation axis is undefined).
///
/// The scalar time is read off the time vector along a reference direction:
/// the same orientation the conjugation path uses when the position has a
/// perpendicular component (so the two paths agree on their shared domain),
/// and the time vector's own direction otherwise.
pub fn boost_event_components(event: &Event, phi: f64, v_hat: Vector3) -> Result<Event> {
    require_unit(&v_hat)?;
    let c = event.c();
    let v = phi.tanh() * c;
    let g = phi.cosh();
    let x = event.x();
    let t = event.t();
    if t.norm() > 0.0 {
        check_orthogonal(&t, &v_hat)?;
    }

    let x_par = x.dot(&v_hat);
    let x_perp = x - v_hat * x_par;
    let t_ref = match perpendicular_axis(&x, &v_hat) {
        Ok(v_perp) => v_perp.cross(&v_hat),
        Err(_) => match t.normalized() {
            Ok(dir) => dir,
            Err(_) => crate::spacetime::orthogonal_time_direction(&v_hat),
        },
    };
    let t_scalar = t.dot(&t_ref);
    let t_off = t - t_ref * t_scalar;
    if t_off.norm() > crate::spacetime::ORTHO_TOL * t.norm() {
        return Err(Error::InvalidArgument(
            "time vector is not aligned with the admissible boost gauge".to_string(),
        ));
    }
    let x_new = v_hat * (g * (x_par - v * t_scalar)) + x_perp;
    let t_new = t_ref * (g * (t_scalar - v * x_par / (c * c)));
    Event::new(x_new, t_new, c)
}

/// Reflect a ray off a surface with unit normal n: r = -n I n. The normal
/// component of I is negated, the tangential component preserved.
pub fn reflect(incident: Vector3, n: Vector3) -> Result<Vector3> {
    require_unit(&n)?;
    let nm = Multivector::from_vector(n);
    let reflected = -(nm * Multivector::from_vector(incident) * nm);
    Vector3::try_from(reflected)
}

/// Rotate a vector by theta about the unit axis u_hat (anticlockwise,
/// right-hand rule) via rotor conjugation exp(-i u theta/2) v exp(i u theta/2).
pub fn rotate(v: Vector3, theta: f64, u_hat: Vector3) -> Result<Vector3> {
    let left = exp_bivector(-theta / 2.0, u_hat)?;
    let right = exp_bivector(theta / 2.0, u_hat)?;
    let rotated = left * Multivector::from_vector(v) * right;
    // Rotor conjugation of a vector stays grade 1 up to rounding; project.
    Ok(rotated.vector_part())
}
