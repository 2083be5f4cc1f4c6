//! Spacetime events, intervals, proper velocity, and momentum multivectors.
//!
//! An event pairs a position three-vector with a time three-vector, combined
//! as x + i c t. The two vectors must be orthogonal; that orthogonality is
//! what makes the square of the event multivector a pure scalar, the
//! invariant interval x^2 - c^2 t^2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multivector::{Multivector, Vector3};

/// Relative tolerance for the orthogonality constraints on constructed types.
pub const ORTHO_TOL: f64 = 1e-9;

pub(crate) fn check_orthogonal(u: &Vector3, v: &Vector3) -> Result<()> {
    let d = u.dot(v).abs();
    let tol = ORTHO_TOL * u.norm() * v.norm();
    if d > tol {
        return Err(Error::NonOrthogonal { dot: d, tol });
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct EventJson {
    x: [f64; 3],
    t: [f64; 3],
    c: f64,
}

/// A spacetime point: position vector x, time vector t, and the speed of
/// light c carried explicitly (natural units c = 1 by default).
///
/// Constructor-enforced invariant: dot(x, t) = 0 within `ORTHO_TOL` relative.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "EventJson", into = "EventJson")]
pub struct Event {
    x: Vector3,
    t: Vector3,
    c: f64,
}

impl TryFrom<EventJson> for Event {
    type Error = Error;
    fn try_from(raw: EventJson) -> Result<Event> {
        Event::new(Vector3(raw.x), Vector3(raw.t), raw.c)
    }
}

impl From<Event> for EventJson {
    fn from(e: Event) -> EventJson {
        EventJson {
            x: e.x.0,
            t: e.t.0,
            c: e.c,
        }
    }
}

impl Event {
    pub fn new(x: Vector3, t: Vector3, c: f64) -> Result<Event> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "speed of light must be positive and finite, got {c}"
            )));
        }
        if !x.is_finite() || !t.is_finite() {
            return Err(Error::NonFinite { context: "Event" });
        }
        check_orthogonal(&x, &t)?;
        Ok(Event { x, t, c })
    }

    /// Worldline point of a particle moving at velocity v, at proper time
    /// tau. The moving-frame time vector has length gamma * tau, so reading
    /// back |t| exhibits time dilation directly.
    pub fn from_proper_time(tau: f64, v: Vector3, c: f64) -> Result<Event> {
        let g = gamma(&v, c)?;
        let t_hat = orthogonal_time_direction(&v);
        let t = t_hat * (g * tau);
        let x = v * (g * tau);
        Event::new(x, t, c)
    }

    pub fn x(&self) -> Vector3 {
        self.x
    }

    pub fn t(&self) -> Vector3 {
        self.t
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// The event as the multivector x + i c t.
    pub fn as_multivector(&self) -> Multivector {
        Multivector::from_vector(self.x) + Multivector::from_bivector_dual(self.t * self.c)
    }

    /// Invariant interval x^2 - c^2 t^2, computed as the scalar part of the
    /// squared event multivector. The remaining grades of that square must
    /// vanish (they measure the orthogonality defect).
    pub fn interval_squared(&self) -> Result<f64> {
        let m = self.as_multivector();
        let square = m * m;
        // Grades 1 and 2 vanish identically; the trivector carries 2c(x.t).
        let scale = self.x.norm_sq() + (self.c * self.c) * self.t.norm_sq();
        if square.trivector_part().abs() > 2.0 * ORTHO_TOL * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::InvariantViolation(format!(
                "event square has trivector residue {:.3e}; x and t are not orthogonal",
                square.trivector_part()
            )));
        }
        Ok(square.scalar_part())
    }
}

/// Lorentz factor 1 / sqrt(1 - v^2/c^2).
pub fn gamma(v: &Vector3, c: f64) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "speed of light must be positive and finite, got {c}"
        )));
    }
    let beta_sq = v.norm_sq() / (c * c);
    if beta_sq >= 1.0 {
        return Err(Error::Superluminal(beta_sq.sqrt()));
    }
    Ok(1.0 / (1.0 - beta_sq).sqrt())
}

/// A deterministic gauge for the time direction of a moving particle: the
/// component of e3 orthogonal to v, normalized, falling back to e2 when v is
/// parallel to e3.
pub fn orthogonal_time_direction(v: &Vector3) -> Vector3 {
    let n = v.norm();
    if n == 0.0 {
        return Vector3::E3;
    }
    let v_hat = *v * (1.0 / n);
    let proj = Vector3::E3 - v_hat * v_hat.dot(&Vector3::E3);
    match proj.normalized() {
        Ok(dir) => dir,
        Err(_) => Vector3::E2,
    }
}

/// Proper velocity multivector U = gamma (v + i c t_hat), the derivative of
/// the event multivector with respect to proper time. Satisfies U^2 = -c^2.
pub fn proper_velocity(v: &Vector3, t_hat: &Vector3, c: f64) -> Result<Multivector> {
    let g = gamma(v, c)?;
    if !t_hat.is_unit(1e-12) {
        return Err(Error::NonUnitAxis { norm: t_hat.norm() });
    }
    check_orthogonal(v, t_hat)?;
    Ok(
        (Multivector::from_vector(*v) + Multivector::from_bivector_dual(*t_hat * c))
            * g,
    )
}

#[derive(Serialize, Deserialize)]
struct MomentumJson {
    p: [f64; 3],
    e_vec: [f64; 3],
    c: f64,
}

/// The momentum multivector P = p + i E/c: relativistic momentum plus a
/// vector-valued energy, mutually orthogonal. For a massive particle
/// P^2 = -m^2 c^2; for a photon P^2 = 0.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MomentumJson", into = "MomentumJson")]
pub struct MomentumMultivector {
    p: Vector3,
    e_vec: Vector3,
    c: f64,
}

impl TryFrom<MomentumJson> for MomentumMultivector {
    type Error = Error;
    fn try_from(raw: MomentumJson) -> Result<MomentumMultivector> {
        MomentumMultivector::from_parts(Vector3(raw.p), Vector3(raw.e_vec), raw.c)
    }
}

impl From<MomentumMultivector> for MomentumJson {
    fn from(m: MomentumMultivector) -> MomentumJson {
        MomentumJson {
            p: m.p.0,
            e_vec: m.e_vec.0,
            c: m.c,
        }
    }
}

impl MomentumMultivector {
    /// Assemble from raw momentum and energy vectors, validating the
    /// orthogonality invariant.
    pub fn from_parts(p: Vector3, e_vec: Vector3, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "speed of light must be positive and finite, got {c}"
            )));
        }
        if !p.is_finite() || !e_vec.is_finite() {
            return Err(Error::NonFinite {
                context: "MomentumMultivector",
            });
        }
        check_orthogonal(&p, &e_vec)?;
        Ok(MomentumMultivector { p, e_vec, c })
    }

    /// Momentum multivector of a massive particle: p = gamma m v and
    /// E = gamma m c^2 along the supplied time direction.
    pub fn massive(m: f64, v: Vector3, t_hat: Vector3, c: f64) -> Result<Self> {
        if !(m > 0.0 && m.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "mass must be positive and finite, got {m}"
            )));
        }
        let g = gamma(&v, c)?;
        if !t_hat.is_unit(1e-12) {
            return Err(Error::NonUnitAxis { norm: t_hat.norm() });
        }
        check_orthogonal(&v, &t_hat)?;
        Ok(MomentumMultivector {
            p: v * (g * m),
            e_vec: t_hat * (g * m * c * c),
            c,
        })
    }

    /// Photon momentum multivector p + i |p| c_hat, a null multivector.
    pub fn photon(p: Vector3, c_hat: Vector3, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "speed of light must be positive and finite, got {c}"
            )));
        }
        if !c_hat.is_unit(1e-12) {
            return Err(Error::NonUnitAxis { norm: c_hat.norm() });
        }
        check_orthogonal(&p, &c_hat)?;
        Ok(MomentumMultivector {
            p,
            e_vec: c_hat * (p.norm() * c),
            c,
        })
    }

    pub fn momentum(&self) -> Vector3 {
        self.p
    }

    /// Vector-valued total energy.
    pub fn energy_vec(&self) -> Vector3 {
        self.e_vec
    }

    pub fn energy(&self) -> f64 {
        self.e_vec.norm()
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// P as the raw multivector p + i E/c.
    pub fn as_multivector(&self) -> Multivector {
        Multivector::from_vector(self.p)
            + Multivector::from_bivector_dual(self.e_vec * (1.0 / self.c))
    }

    /// Scalar part of P^2: p^2 - E^2/c^2, which is -m^2 c^2 on shell.
    pub fn invariant_squared(&self) -> f64 {
        let m = self.as_multivector();
        (m * m).scalar_part()
    }

    /// Rest mass recovered from the invariant E^2 - p^2 c^2 = m^2 c^4.
    /// Zero (up to rounding) for a photon.
    pub fn mass(&self) -> f64 {
        let c2 = self.c * self.c;
        let m2c4 = self.e_vec.norm_sq() - self.p.norm_sq() * c2;
        m2c4.max(0.0).sqrt() / c2
    }
}
