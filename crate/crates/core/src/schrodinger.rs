//! Free Gaussian wave-packet propagation with a bivector imaginary unit.
//!
//! The usual scalar sqrt(-1) of the Schroedinger equation is replaced by the
//! bivector iota = e1 e2, which squares to -1 and commutes with scalars, so
//! the wave function lives in the two-dimensional subalgebra spanned by
//! {1, e1e2} — represented here by [`ComplexLike`]. A minimum-uncertainty
//! packet in wavenumber space then evolves in closed form; the quadrature
//! propagator re-derives the same state by direct integration and serves as
//! the cross check.
//!
//! Conventions: the packet amplitude is Gaussian with width `sigma` in
//! wavenumber space, centered at `k0`, with the nonrelativistic dispersion
//! E(k) = hbar^2 k^2 / (2 m). The closed form carries the full phase,
//! including the arctan factor that settles to -pi/4 at late times; overall
//! normalization follows the closed form as written, and the quadrature is
//! scaled by the matching constant.

use crate::error::{Error, Result};
use crate::quad::{hermite_rule, simpson_complex};

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const PI: f64 = std::f64::consts::PI;

/// A number a + iota b with iota = e1 e2. Exactly isomorphic to complex
/// arithmetic; kept as its own type to mark which imaginary is meant.
#[derive(Copy, Clone, Debug, Default, PartialEq)]
pub struct ComplexLike {
    pub re: f64,
    pub im: f64,
}

impl ComplexLike {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexLike { re, im }
    }

    /// Unit phasor e^(iota theta).
    pub fn phasor(theta: f64) -> Self {
        ComplexLike {
            re: theta.cos(),
            im: theta.sin(),
        }
    }

    pub fn mul(&self, other: &ComplexLike) -> ComplexLike {
        ComplexLike {
            re: self.re * other.re - self.im * other.im,
            im: self.re * other.im + self.im * other.re,
        }
    }

    pub fn add(&self, other: &ComplexLike) -> ComplexLike {
        ComplexLike {
            re: self.re + other.re,
            im: self.im + other.im,
        }
    }

    pub fn scale(&self, factor: f64) -> ComplexLike {
        ComplexLike {
            re: self.re * factor,
            im: self.im * factor,
        }
    }

    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn arg(&self) -> f64 {
        self.im.atan2(self.re)
    }

    /// Lift into the full algebra as scalar + e12 bivector.
    pub fn as_multivector(&self) -> crate::multivector::Multivector {
        crate::multivector::Multivector::new(self.re, [0.0; 3], [0.0, 0.0, self.im], 0.0)
    }
}

/// Parameters of a minimum-uncertainty Gaussian packet: wavenumber-space
/// width sigma, central wavenumber k0, mass m, and hbar.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct WavePacketParams {
    pub sigma: f64,
    pub k0: f64,
    pub m: f64,
    pub hbar: f64,
}

impl WavePacketParams {
    pub fn new(sigma: f64, k0: f64, m: f64, hbar: f64) -> Result<Self> {
        for (value, name) in [(sigma, "sigma"), (k0, "k0"), (m, "m"), (hbar, "hbar")] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        Ok(WavePacketParams { sigma, k0, m, hbar })
    }

    /// The ratio A = k0 / sigma; large A means many oscillations under the
    /// envelope.
    pub fn a_ratio(&self) -> f64 {
        self.k0 / self.sigma
    }

    /// Narrow-packet regime, where the phase-rotation analysis applies.
    pub fn is_narrow(&self) -> bool {
        self.a_ratio() >= 5.0
    }

    /// Group velocity hbar k0 / m of the packet center.
    pub fn group_velocity(&self) -> f64 {
        self.hbar * self.k0 / self.m
    }

    /// De Broglie rotation rate w0 = hbar k0^2 / (2 m).
    pub fn w0(&self) -> f64 {
        self.hbar * self.k0 * self.k0 / (2.0 * self.m)
    }
}

/// Spread s(t) of the position-space Gaussian envelope:
/// sqrt(2 (m^2 + sigma^4 hbar^2 t^2)) / (sigma m). Starts at sqrt(2)/sigma
/// and grows asymptotically linearly.
pub fn spread(params: &WavePacketParams, t: f64) -> f64 {
    let m = params.m;
    let s2 = params.sigma * params.sigma;
    (2.0 * (m * m + s2 * s2 * params.hbar * params.hbar * t * t)).sqrt() / (params.sigma * m)
}

/// Closed-form wave function of the free packet at position x and time t,
/// with the full phase content: the w0 t rotation, the carrier k0 x_m, the
/// quadratic chirp, and the arctan settling factor.
pub fn closed_form(params: &WavePacketParams, x: f64, t: f64) -> ComplexLike {
    let (sigma, k0, m, hbar) = (params.sigma, params.k0, params.m, params.hbar);
    let x_m = x - params.group_velocity() * t;
    let s2 = sigma * sigma;
    let denom = m * m + s2 * s2 * hbar * hbar * t * t;

    let norm = sigma.powf(1.5) * (m / k0).sqrt() / (PI.powf(0.25) * denom.powf(0.25));
    let envelope = (-(s2 * m * m * x_m * x_m) / (2.0 * denom)).exp();
    let phase = hbar * k0 * k0 * t / (2.0 * m)
        + k0 * x_m
        + m * hbar * t * s2 * s2 * x_m * x_m / (2.0 * denom)
        - 0.5 * (hbar * s2 * t / m).atan();

    ComplexLike::phasor(phase).scale(norm * envelope)
}

/// Numerical controls for the quadrature propagator: Gauss-Hermite degree
/// (also the floor for the Simpson fallback) and the half-width of the
/// wavenumber window in units of sigma.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub nodes: usize,
    pub half_width_sigmas: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            nodes: 257,
            half_width_sigmas: 8.0,
        }
    }
}

// Relative Gaussian mass beyond |u| = coverage, for the weight e^(-u^2):
// bounded by e^(-U^2) / (U sqrt(pi)).
fn tail_mass(coverage: f64) -> f64 {
    if coverage <= 0.0 {
        return 1.0;
    }
    (-coverage * coverage).exp() / (coverage * PI.sqrt())
}

const TAIL_LIMIT: f64 = 1e-10;

/// Propagate the packet by direct integration over wavenumber space:
/// psi(x, t) = C * integral A(k) e^(iota (k x - hbar k^2 t / 2m)) dk with
/// A(k) = e^(-(k - k0)^2 / (2 sigma^2)), scaled so the result converges to
/// [`closed_form`].
///
/// Gauss-Hermite quadrature matches the Gaussian-times-oscillation structure
/// of the integrand; when the estimated oscillation count outgrows the node
/// budget the integral switches to composite Simpson on a truncated window
/// with a point count scaled to the oscillation.
pub fn propagate_quadrature(
    params: &WavePacketParams,
    x: f64,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<ComplexLike> {
    let (sigma, k0, m, hbar) = (params.sigma, params.k0, params.m, params.hbar);
    if quad.nodes < 64 {
        return Err(Error::Accuracy(format!(
            "node count {} below the minimum of 64",
            quad.nodes
        )));
    }

    // Phase of the integrand at wavenumber k.
    let phase_at = |k: f64| k * x - hbar * k * k * t / (2.0 * m);

    // Largest phase slope in u = (k - k0)/(sqrt(2) sigma) over the effective
    // range governs how oscillatory the integrand is.
    let x_m = x - params.group_velocity() * t;
    let coverage_u = quad.half_width_sigmas / SQRT_2;
    let slope = SQRT_2 * sigma * (x_m.abs() + SQRT_2 * sigma * coverage_u * hbar * t.abs() / m);

    let norm = (sigma / k0).sqrt() / (PI.powf(0.25) * (2.0 * PI).sqrt());

    let use_hermite = slope <= quad.nodes as f64 / 6.0;
    let (raw_re, raw_im) = if use_hermite {
        let rule = hermite_rule(quad.nodes)?;
        let max_node = rule
            .iter()
            .fold(0.0f64, |acc, (node, _)| acc.max(node.abs()));
        if tail_mass(max_node.min(coverage_u)) > TAIL_LIMIT {
            return Err(Error::Accuracy(format!(
                "estimated Gaussian tail mass beyond the quadrature range exceeds {TAIL_LIMIT:.0e}"
            )));
        }
        let mut re = 0.0;
        let mut im = 0.0;
        for (u, w) in rule.iter() {
            let k = k0 + SQRT_2 * sigma * u;
            let phi = phase_at(k);
            re += w * phi.cos();
            im += w * phi.sin();
        }
        (re * SQRT_2 * sigma, im * SQRT_2 * sigma)
    } else {
        if tail_mass(coverage_u) > TAIL_LIMIT {
            return Err(Error::Accuracy(format!(
                "window of {} sigma leaves tail mass above {TAIL_LIMIT:.0e}",
                quad.half_width_sigmas
            )));
        }
        let oscillations = slope * coverage_u / PI;
        let mut points = (quad.nodes as f64).max(40.0 * oscillations + 201.0) as usize;
        if points % 2 == 0 {
            points += 1;
        }
        let a = k0 - quad.half_width_sigmas * sigma;
        let b = k0 + quad.half_width_sigmas * sigma;
        simpson_complex(a, b, points, |k| {
            let q = k - k0;
            let damp = (-q * q / (2.0 * sigma * sigma)).exp();
            let phi = phase_at(k);
            (damp * phi.cos(), damp * phi.sin())
        })?
    };

    Ok(ComplexLike::new(raw_re, raw_im).scale(norm))
}

/// Least-squares fit of the envelope width at time t: regress
/// ln |psi(x, t)|^2 against x_m^2, where the closed form predicts slope
/// -2 / s(t)^2. Returns the fitted s.
pub fn fit_spread(params: &WavePacketParams, t: f64) -> Result<f64> {
    let s = spread(params, t);
    let center = params.group_velocity() * t;
    let n = 81;
    let mut sum_q = 0.0;
    let mut sum_y = 0.0;
    let mut sum_qq = 0.0;
    let mut sum_qy = 0.0;
    for i in 0..n {
        let x_m = -2.0 * s + 4.0 * s * i as f64 / (n - 1) as f64;
        let psi = closed_form(params, center + x_m, t);
        let density = psi.modulus() * psi.modulus();
        if density <= 0.0 {
            return Err(Error::Accuracy(
                "envelope underflowed during the spread fit".to_string(),
            ));
        }
        let q = x_m * x_m;
        let y = density.ln();
        sum_q += q;
        sum_y += y;
        sum_qq += q * q;
        sum_qy += q * y;
    }
    let nf = n as f64;
    let slope = (nf * sum_qy - sum_q * sum_y) / (nf * sum_qq - sum_q * sum_q);
    if slope >= 0.0 {
        return Err(Error::Accuracy(
            "spread fit produced a non-decaying envelope".to_string(),
        ));
    }
    Ok((-2.0 / slope).sqrt())
}

/// Fitted rotation rate of the wave-function phase at the packet center over
/// the window (t0, t1): samples the closed form at x_m = 0, unwraps the
/// phase, and fits a line. In the narrow-packet regime the slope is the de
/// Broglie rate w0 = hbar k0^2 / (2 m).
///
/// The window must start after t = 0 (the arctan factor's transient) and be
/// long enough for at least one full rotation.
pub fn phase_rotation_rate(params: &WavePacketParams, window: (f64, f64)) -> Result<f64> {
    let (t0, t1) = window;
    if !params.is_narrow() {
        return Err(Error::InvalidArgument(format!(
            "phase-rotation fit needs the narrow-packet regime (k0/sigma >= 5), got {}",
            params.a_ratio()
        )));
    }
    if !(t0 > 0.0 && t1 > t0) {
        return Err(Error::InvalidArgument(format!(
            "window must satisfy 0 < t0 < t1, got ({t0}, {t1})"
        )));
    }
    let w0 = params.w0();
    if (t1 - t0) * w0 < 2.0 * PI {
        return Err(Error::InvalidArgument(
            "window too short for a phase fit: it spans less than one rotation".to_string(),
        ));
    }

    // Sample densely enough that consecutive phases never jump by more than
    // ~pi/4, so unwrapping is unambiguous.
    let dt = ((t1 - t0) / 256.0).min(PI / (4.0 * w0));
    let n = ((t1 - t0) / dt).ceil() as usize + 1;

    let mut prev = 0.0;
    let mut offset = 0.0;
    let mut sum_t = 0.0;
    let mut sum_y = 0.0;
    let mut sum_tt = 0.0;
    let mut sum_ty = 0.0;
    for i in 0..n {
        let t = t0 + (t1 - t0) * i as f64 / (n - 1) as f64;
        let x = params.group_velocity() * t;
        let psi = closed_form(params, x, t);
        let mut theta = psi.arg();
        if i > 0 {
            while theta + offset - prev > PI {
                offset -= 2.0 * PI;
            }
            while theta + offset - prev < -PI {
                offset += 2.0 * PI;
            }
        }
        theta += offset;
        prev = theta;
        sum_t += t;
        sum_y += theta;
        sum_tt += t * t;
        sum_ty += t * theta;
    }
    let nf = n as f64;
    Ok((nf * sum_ty - sum_t * sum_y) / (nf * sum_tt - sum_t * sum_t))
}
