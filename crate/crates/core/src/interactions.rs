//! Momentum-multivector conservation and the Compton scattering solver.
//!
//! Conservation of energy and momentum collapses into one statement: the sum
//! of momentum multivectors before an interaction equals the sum after.
//! Compton scattering is solved in a fixed geometric gauge — incoming photon
//! along e1, scattering plane e1-e2, photon energy directions along e3 — in
//! which the squared conservation relation reduces to a scalar equation for
//! the scattered photon momentum.

use crate::error::{Error, Result};
use crate::multivector::{Multivector, Vector3};
use crate::spacetime::MomentumMultivector;

/// Bookkeeping for one interaction: all incoming and all outgoing momentum
/// multivectors. For a physical interaction the sums agree.
#[derive(Clone, Debug, Default)]
pub struct InteractionLedger {
    pub incoming: Vec<MomentumMultivector>,
    pub outgoing: Vec<MomentumMultivector>,
}

impl InteractionLedger {
    pub fn new(incoming: Vec<MomentumMultivector>, outgoing: Vec<MomentumMultivector>) -> Self {
        InteractionLedger { incoming, outgoing }
    }

    /// Sum(incoming) - Sum(outgoing) as a raw multivector; the zero
    /// multivector iff the interaction conserves momentum and energy.
    pub fn conservation_residual(&self) -> Result<Multivector> {
        if self.incoming.is_empty() || self.outgoing.is_empty() {
            return Err(Error::InvalidArgument(
                "ledger needs at least one incoming and one outgoing state".to_string(),
            ));
        }
        let c0 = self.incoming[0].c();
        for state in self.incoming.iter().chain(self.outgoing.iter()) {
            if (state.c() - c0).abs() > 1e-12 * c0 {
                return Err(Error::UnitMismatch {
                    left: c0,
                    right: state.c(),
                });
            }
        }
        let sum = |states: &[MomentumMultivector]| {
            states
                .iter()
                .fold(Multivector::ZERO, |acc, s| acc + s.as_multivector())
        };
        Ok(sum(&self.incoming) - sum(&self.outgoing))
    }
}

fn check_positive(value: f64, name: &str) -> Result<()> {
    if !(value > 0.0 && value.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "{name} must be positive and finite, got {value}"
        )));
    }
    Ok(())
}

/// Compton's formula: the wavelength shift (h / m c)(1 - cos theta) of a
/// photon scattered by angle theta off a particle of mass m at rest.
pub fn compton_wavelength_shift(lambda_i: f64, theta: f64, m: f64, h: f64, c: f64) -> Result<f64> {
    check_positive(lambda_i, "incident wavelength")?;
    check_positive(m, "mass")?;
    check_positive(h, "Planck constant")?;
    check_positive(c, "speed of light")?;
    if !theta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "scattering angle must be finite, got {theta}"
        )));
    }
    Ok(h / (m * c) * (1.0 - theta.cos()))
}

/// Result of the multivector Compton solve: scattered wavelength plus the
/// full interaction ledger (photon in, electron at rest in; photon out,
/// electron out).
#[derive(Clone, Debug)]
pub struct ComptonSolution {
    pub lambda_f: f64,
    pub shift: f64,
    pub ledger: InteractionLedger,
}

/// Solve Compton scattering through momentum-multivector conservation.
///
/// Geometry: incoming photon momentum along e1 with energy direction e3; the
/// electron at rest with its energy direction also along e3 (orthogonal to
/// the scattering plane); scattered photon at angle theta in the e1-e2 plane
/// with energy direction e3, so that the perpendicular energy vectors of the
/// two photons are parallel. Squaring the conservation relation then gives
/// a scalar equation with the closed-form solution
/// |p_f| = m c |p_i| / (m c + |p_i| (1 - cos theta)).
///
/// The final electron is read off the ledger, not assumed: its momentum and
/// energy vectors must come out orthogonal and on shell.
pub fn compton_solve_multivector(
    lambda_i: f64,
    theta: f64,
    m: f64,
    h: f64,
    c: f64,
) -> Result<ComptonSolution> {
    check_positive(lambda_i, "incident wavelength")?;
    check_positive(m, "mass")?;
    check_positive(h, "Planck constant")?;
    check_positive(c, "speed of light")?;
    if !theta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "scattering angle must be finite, got {theta}"
        )));
    }

    let p_i = h / lambda_i;
    let p_f = m * c * p_i / (m * c + p_i * (1.0 - theta.cos()));
    let lambda_f = h / p_f;

    let photon_in = MomentumMultivector::photon(Vector3::E1 * p_i, Vector3::E3, c)?;
    let electron_in = MomentumMultivector::massive(m, Vector3::ZERO, Vector3::E3, c)?;
    let photon_out = MomentumMultivector::photon(
        Vector3::new(p_f * theta.cos(), p_f * theta.sin(), 0.0),
        Vector3::E3,
        c,
    )?;

    // Electron out, solved from the ledger: P_f = Gamma_i + P_i - Gamma_f.
    let residual_mv = photon_in.as_multivector() + electron_in.as_multivector()
        - photon_out.as_multivector();
    let electron_p = residual_mv.vector_part();
    let electron_e = residual_mv.bivector_dual() * c;
    let electron_out = MomentumMultivector::from_parts(electron_p, electron_e, c)
        .map_err(|e| Error::InvariantViolation(format!("solved electron state invalid: {e}")))?;

    // On-shell checks: the solved electron must satisfy P^2 = -m^2 c^2 with a
    // pure-scalar square.
    let sq = electron_out.as_multivector() * electron_out.as_multivector();
    let target = -m * m * c * c;
    if (sq.scalar_part() - target).abs() > 1e-9 * target.abs() {
        return Err(Error::InvariantViolation(format!(
            "solved electron is off shell: P^2 = {}, expected {target}",
            sq.scalar_part()
        )));
    }
    if (sq - Multivector::scalar(sq.scalar_part())).max_coeff() > 1e-9 * target.abs() {
        return Err(Error::InvariantViolation(
            "solved electron square has non-scalar grades".to_string(),
        ));
    }

    let ledger = InteractionLedger::new(
        vec![photon_in, electron_in],
        vec![photon_out, electron_out],
    );

    Ok(ComptonSolution {
        lambda_f,
        shift: lambda_f - lambda_i,
        ledger,
    })
}
