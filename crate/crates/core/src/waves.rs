//! Wave multivectors, the relativistic dispersion relation, and the
//! first-order factorization of the energy-momentum relation.
//!
//! De Broglie scaling turns a momentum multivector into a wave multivector
//! K = k + i w/c whose square gives the dispersion relation
//! k^2 - w^2/c^2 = -1/lambda_c^2. Plane waves exp(i K.X) then satisfy a
//! second-order wave equation over three space and three time coordinates,
//! checked here by central finite differences. The factorization
//! (P + i m c)(P - i m c) vanishes on shell without any matrix algebra.

use crate::error::{Error, Result};
use crate::multivector::{Multivector, Vector3};
use crate::spacetime::{check_orthogonal, Event, MomentumMultivector};

/// A wave state: wave vector k (1/length) and angular-frequency vector w
/// (1/time), mutually orthogonal, with c carried explicitly.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct WaveMultivector {
    k: Vector3,
    w: Vector3,
    c: f64,
}

impl WaveMultivector {
    pub fn new(k: Vector3, w: Vector3, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "speed of light must be positive and finite, got {c}"
            )));
        }
        if !k.is_finite() || !w.is_finite() {
            return Err(Error::NonFinite {
                context: "WaveMultivector",
            });
        }
        check_orthogonal(&k, &w)?;
        Ok(WaveMultivector { k, w, c })
    }

    pub fn k(&self) -> Vector3 {
        self.k
    }

    pub fn w(&self) -> Vector3 {
        self.w
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// K as the raw multivector k + i w/c.
    pub fn as_multivector(&self) -> Multivector {
        Multivector::from_vector(self.k) + Multivector::from_bivector_dual(self.w * (1.0 / self.c))
    }
}

/// De Broglie relations p = hbar k and E = hbar w: the wave multivector is
/// the momentum multivector divided by hbar.
pub fn wave_from_momentum(p: &MomentumMultivector, hbar: f64) -> Result<WaveMultivector> {
    if !(hbar > 0.0 && hbar.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "hbar must be positive and finite, got {hbar}"
        )));
    }
    WaveMultivector::new(
        p.momentum() * (1.0 / hbar),
        p.energy_vec() * (1.0 / hbar),
        p.c(),
    )
}

/// Scalar part of K^2 plus 1/lambda_c^2; zero exactly when the wave is on
/// shell. The reduced Compton wavelength lambda_c = hbar/(m c) degenerates
/// gracefully for m = 0, where the target is K^2 = 0.
pub fn dispersion_residual(k: &WaveMultivector, m: f64, hbar: f64) -> f64 {
    let mv = k.as_multivector();
    let inv_lambda_c = m * k.c() / hbar;
    (mv * mv).scalar_part() + inv_lambda_c * inv_lambda_c
}

/// Phase of a traveling wave: K.X = k.x - w.t.
pub fn phase(k: &WaveMultivector, x: &Event) -> Result<f64> {
    if (k.c() - x.c()).abs() > 1e-12 * k.c() {
        return Err(Error::UnitMismatch {
            left: k.c(),
            right: x.c(),
        });
    }
    Ok(k.k().dot(&x.x()) - k.w().dot(&x.t()))
}

/// Sampling layout for the finite-difference wave-equation check: spacing
/// and point count along one space direction and one time direction (the
/// remaining four coordinates are held at zero; derivatives are still taken
/// along all six axes).
#[derive(Copy, Clone, Debug)]
pub struct GridSpec {
    pub dx: f64,
    pub dt: f64,
    pub nx: usize,
    pub nt: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            dx: 1e-2,
            dt: 1e-2,
            nx: 5,
            nt: 5,
        }
    }
}

// Plane wave exp(i (k.x - w.t)) as its two pseudoscalar-channel components.
fn plane_wave(k: &WaveMultivector, x: [f64; 3], t: [f64; 3]) -> (f64, f64) {
    let kx = k.k().dot(&Vector3(x));
    let wt = k.w().dot(&Vector3(t));
    let phi = kx - wt;
    (phi.cos(), phi.sin())
}

/// Max-norm residual of the second-order wave equation
/// (grad_t^2 - grad_x^2) psi + (m^2 c^2 / hbar^2) psi = 0
/// for the plane wave psi = exp(i K.X), evaluated by central finite
/// differences along all three space and three time axes at each sample
/// point. Second-order accurate: on shell the residual scales as
/// O(spacing^2).
pub fn kg_residual(k: &WaveMultivector, m: f64, hbar: f64, grid: &GridSpec) -> Result<f64> {
    if !(grid.dx > 0.0 && grid.dt > 0.0) || grid.nx == 0 || grid.nt == 0 {
        return Err(Error::InvalidArgument(format!(
            "degenerate grid: dx = {}, dt = {}, nx = {}, nt = {}",
            grid.dx, grid.dt, grid.nx, grid.nt
        )));
    }
    if !(hbar > 0.0 && hbar.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "hbar must be positive and finite, got {hbar}"
        )));
    }

    let c = k.c();
    let mass_term = (m * c / hbar) * (m * c / hbar);
    let x_dir = k.k().normalized().unwrap_or(Vector3::E1);
    let t_dir = k.w().normalized().unwrap_or(Vector3::E1);

    let mut worst = 0.0f64;
    for a in 0..grid.nx {
        for b in 0..grid.nt {
            let x0 = (x_dir * (a as f64 * grid.dx)).0;
            let t0 = (t_dir * (b as f64 * grid.dt)).0;
            let center = plane_wave(k, x0, t0);

            let mut lap_x = (0.0, 0.0);
            let mut lap_t = (0.0, 0.0);
            for axis in 0..3 {
                let mut xp = x0;
                let mut xm = x0;
                xp[axis] += grid.dx;
                xm[axis] -= grid.dx;
                let (pp, pi) = plane_wave(k, xp, t0);
                let (mp, mi) = plane_wave(k, xm, t0);
                lap_x.0 += (pp - 2.0 * center.0 + mp) / (grid.dx * grid.dx);
                lap_x.1 += (pi - 2.0 * center.1 + mi) / (grid.dx * grid.dx);

                let mut tp = t0;
                let mut tm = t0;
                tp[axis] += grid.dt;
                tm[axis] -= grid.dt;
                let (pp, pi) = plane_wave(k, x0, tp);
                let (mp, mi) = plane_wave(k, x0, tm);
                lap_t.0 += (pp - 2.0 * center.0 + mp) / (grid.dt * grid.dt);
                lap_t.1 += (pi - 2.0 * center.1 + mi) / (grid.dt * grid.dt);
            }

            // grad_t carries a 1/c per derivative.
            let res_re = lap_t.0 / (c * c) - lap_x.0 + mass_term * center.0;
            let res_im = lap_t.1 / (c * c) - lap_x.1 + mass_term * center.1;
            worst = worst.max(res_re.hypot(res_im));
        }
    }
    Ok(worst)
}

/// The factorization residual (P + i m c)(P - i m c) as a raw multivector.
/// Expands to P^2 + m^2 c^2 because the pseudoscalar term commutes, so it
/// vanishes exactly on shell.
pub fn dirac_factorization_residual(p: &MomentumMultivector, m: f64) -> Multivector {
    let pm = p.as_multivector();
    let imc = Multivector::trivector(m * p.c());
    (pm + imc) * (pm - imc)
}

/// Residual of the first-order equation P psi = psi* M, where the star is
/// the grade-involution negating grades 1 and 3 and M is any multivector
/// whose square is a pure (negative) scalar.
///
/// Also verifies the chain P^2 psi = (scalar P^2) psi — the statement that
/// any candidate solution automatically satisfies the second-order wave
/// equation — which holds by associativity because P^2 is a pure scalar.
pub fn dirac_equation_residual(
    psi: &Multivector,
    p: &MomentumMultivector,
    m_op: &Multivector,
) -> Result<Multivector> {
    dirac_equation_residual_with(psi, p, m_op, |m| m.star())
}

/// Same residual with a caller-chosen involution in place of the star. The
/// right involution for the first-order equation is not uniquely pinned
/// down, so it stays a parameter; [`dirac_equation_residual`] uses the
/// grade-1/3 negation.
pub fn dirac_equation_residual_with<F>(
    psi: &Multivector,
    p: &MomentumMultivector,
    m_op: &Multivector,
    involution: F,
) -> Result<Multivector>
where
    F: Fn(&Multivector) -> Multivector,
{
    let m_sq = *m_op * *m_op;
    let off_scalar = (m_sq - Multivector::scalar(m_sq.scalar_part())).max_coeff();
    if off_scalar > 1e-10 * m_sq.scalar_part().abs().max(1.0) {
        return Err(Error::InvalidArgument(format!(
            "M^2 must be a pure scalar; off-scalar magnitude {off_scalar:.3e}"
        )));
    }

    let pm = p.as_multivector();
    let p_sq = pm * pm;
    let chained = pm * (pm * *psi);
    let direct = *psi * p_sq.scalar_part();
    let chain_defect = (chained - direct).max_coeff();
    let scale = direct.max_coeff().max(1.0);
    if chain_defect > 1e-9 * scale {
        return Err(Error::InvariantViolation(format!(
            "P^2 psi deviates from (scalar P^2) psi by {chain_defect:.3e}"
        )));
    }

    Ok(pm * *psi - psi.star() * *m_op)
}

/// Probability current J = psi psi~: a nonnegative density rho and a current
/// vector. Reversion symmetry kills grades 2 and 3 of the product.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Current {
    pub rho: f64,
    pub j: Vector3,
}

pub fn current(psi: &Multivector) -> Current {
    let product = *psi * psi.reverse();
    debug_assert!(
        product.bivector_dual().norm() + product.trivector_part().abs()
            <= 1e-12 * product.max_coeff().max(1.0),
        "psi psi~ acquired grade-2/3 parts"
    );
    Current {
        rho: product.scalar_part(),
        j: product.vector_part(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn on_shell_momentum() -> MomentumMultivector {
        MomentumMultivector::massive(1.3, Vector3::E1 * 0.5, Vector3::E2, 1.0).unwrap()
    }

    #[test]
    fn rest_particle_wave() {
        let p = MomentumMultivector::massive(2.0, Vector3::ZERO, Vector3::E3, 1.0).unwrap();
        let k = wave_from_momentum(&p, 1.0).unwrap();
        assert_eq!(k.k(), Vector3::ZERO);
        // |w| = m c^2 / hbar = 2.
        assert!((k.w().norm() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn wave_scales_linearly_with_momentum() {
        let p = on_shell_momentum();
        let k1 = wave_from_momentum(&p, 1.0).unwrap();
        let k2 = wave_from_momentum(&p, 0.5).unwrap();
        assert!((k2.k() - k1.k() * 2.0).norm() < 1e-12);
        assert!((k2.w() - k1.w() * 2.0).norm() < 1e-12);
    }

    #[test]
    fn round_trip_through_hbar() {
        let p = on_shell_momentum();
        let hbar = 0.7;
        let k = wave_from_momentum(&p, hbar).unwrap();
        assert!((k.k() * hbar - p.momentum()).norm() < 1e-12);
        assert!((k.w() * hbar - p.energy_vec()).norm() < 1e-12);
    }

    #[test]
    fn dispersion_on_shell() {
        let hbar = 0.9;
        let p = on_shell_momentum();
        let k = wave_from_momentum(&p, hbar).unwrap();
        let residual = dispersion_residual(&k, 1.3, hbar);
        assert!(residual.abs() < 1e-12);
        // K^2 scalar part is -1/lambda_c^2.
        let mv = k.as_multivector();
        let lambda_c = hbar / (1.3 * 1.0);
        assert!(((mv * mv).scalar_part() + 1.0 / (lambda_c * lambda_c)).abs() < 1e-12);
    }

    #[test]
    fn massless_wave_is_null() {
        let k = WaveMultivector::new(Vector3::E1 * 2.0, Vector3::E3 * 2.0, 1.0).unwrap();
        assert!(dispersion_residual(&k, 0.0, 1.0).abs() < 1e-15);
    }

    #[test]
    fn off_shell_has_predictable_sign() {
        let hbar = 1.0;
        let p = on_shell_momentum();
        let k0 = wave_from_momentum(&p, hbar).unwrap();
        // Inflate |w| by 1%: K^2 becomes more negative, residual negative.
        let k = WaveMultivector::new(k0.k(), k0.w() * 1.01, 1.0).unwrap();
        assert!(dispersion_residual(&k, 1.3, hbar) < 0.0);
    }

    #[test]
    fn phase_at_origin_is_zero() {
        let k = WaveMultivector::new(Vector3::E1, Vector3::E2, 1.0).unwrap();
        let origin = Event::new(Vector3::ZERO, Vector3::ZERO, 1.0).unwrap();
        assert_eq!(phase(&k, &origin).unwrap(), 0.0);
    }

    #[test]
    fn phase_along_wave_vector() {
        let k0 = 3.0;
        let k = WaveMultivector::new(Vector3::E1 * k0, Vector3::E2, 1.0).unwrap();
        let x = 0.4;
        let e = Event::new(Vector3::E1 * x, Vector3::ZERO, 1.0).unwrap();
        assert!((phase(&k, &e).unwrap() - k0 * x).abs() < 1e-15);
    }

    #[test]
    fn phase_rejects_mismatched_c() {
        let k = WaveMultivector::new(Vector3::E1, Vector3::E2, 1.0).unwrap();
        let e = Event::new(Vector3::E1, Vector3::E2, 2.0).unwrap();
        assert!(matches!(phase(&k, &e), Err(Error::UnitMismatch { .. })));
    }

    #[test]
    fn kg_residual_small_on_shell() {
        let hbar = 1.0;
        let m = 1.3;
        let p = on_shell_momentum();
        let k = wave_from_momentum(&p, hbar).unwrap();
        let grid = GridSpec {
            dx: 1e-2,
            dt: 1e-2,
            nx: 4,
            nt: 4,
        };
        let r = kg_residual(&k, m, hbar, &grid).unwrap();
        // Truncation-scale: C h^2 with C ~ k^4/6-ish, well under 1e-2 here.
        assert!(r < 1e-2, "residual {r}");
    }

    #[test]
    fn kg_residual_converges_second_order() {
        let hbar = 1.0;
        let m = 1.3;
        let k = wave_from_momentum(&on_shell_momentum(), hbar).unwrap();
        let coarse = kg_residual(
            &k,
            m,
            hbar,
            &GridSpec {
                dx: 2e-2,
                dt: 2e-2,
                nx: 3,
                nt: 3,
            },
        )
        .unwrap();
        let fine = kg_residual(
            &k,
            m,
            hbar,
            &GridSpec {
                dx: 1e-2,
                dt: 1e-2,
                nx: 3,
                nt: 3,
            },
        )
        .unwrap();
        let ratio = coarse / fine;
        assert!((ratio - 4.0).abs() < 0.3, "ratio {ratio}");
    }

    #[test]
    fn kg_residual_floor_off_shell() {
        let hbar = 1.0;
        let m = 1.3;
        let k0 = wave_from_momentum(&on_shell_momentum(), hbar).unwrap();
        let k = WaveMultivector::new(k0.k(), k0.w() * 1.01, 1.0).unwrap();
        let expected = dispersion_residual(&k, m, hbar).abs();
        let r1 = kg_residual(
            &k,
            m,
            hbar,
            &GridSpec {
                dx: 1e-2,
                dt: 1e-2,
                nx: 3,
                nt: 3,
            },
        )
        .unwrap();
        let r2 = kg_residual(
            &k,
            m,
            hbar,
            &GridSpec {
                dx: 5e-3,
                dt: 5e-3,
                nx: 3,
                nt: 3,
            },
        )
        .unwrap();
        // Residual floor is the dispersion defect, independent of spacing.
        assert!((r1 - expected).abs() < 0.05 * expected);
        assert!((r2 - expected).abs() < 0.05 * expected);
    }

    #[test]
    fn kg_rejects_degenerate_grid() {
        let k = wave_from_momentum(&on_shell_momentum(), 1.0).unwrap();
        let bad = GridSpec {
            dx: 0.0,
            dt: 1e-2,
            nx: 3,
            nt: 3,
        };
        assert!(kg_residual(&k, 1.0, 1.0, &bad).is_err());
    }

    #[test]
    fn factorization_vanishes_on_shell() {
        let p = MomentumMultivector::massive(1.7, Vector3::ZERO, Vector3::E3, 1.0).unwrap();
        assert!(dirac_factorization_residual(&p, 1.7).max_coeff() < 1e-12);

        let moving = on_shell_momentum();
        assert!(dirac_factorization_residual(&moving, 1.3).max_coeff() < 1e-10);
    }

    #[test]
    fn factorization_detects_mass_mismatch() {
        let m_true = 1.3;
        let m_wrong = 1.4;
        let p = MomentumMultivector::massive(m_true, Vector3::E1 * 0.5, Vector3::E2, 1.0).unwrap();
        let r = dirac_factorization_residual(&p, m_wrong);
        let expected = -(m_true * m_true - m_wrong * m_wrong);
        assert!((r.scalar_part() - expected).abs() < 1e-10);
    }

    #[test]
    fn dirac_residual_zero_psi() {
        let p = on_shell_momentum();
        // M = P/hbar with hbar = 1 squares to a pure negative scalar.
        let m_op = p.as_multivector();
        let r = dirac_equation_residual(&Multivector::ZERO, &p, &m_op).unwrap();
        assert!(r.max_coeff() < 1e-15);
    }

    #[test]
    fn dirac_rejects_non_scalar_m_squared() {
        let p = on_shell_momentum();
        // e1 + e23: squares to a multivector with non-scalar grades.
        let bad = Multivector::from_vector(Vector3::E1)
            + Multivector::from_bivector_dual(Vector3::E1 * 0.3)
            + Multivector::scalar(0.2);
        assert!(dirac_equation_residual(&Multivector::ONE, &p, &bad).is_err());
    }

    #[test]
    fn scalar_psi_solves_m_equals_p() {
        // P * 1 = 1_star * P exactly.
        let p = on_shell_momentum();
        let m_op = p.as_multivector();
        let r = dirac_equation_residual(&Multivector::ONE, &p, &m_op).unwrap();
        assert!(r.max_coeff() < 1e-14);
    }

    #[test]
    fn current_of_unit_scalar() {
        let c = current(&Multivector::ONE);
        assert_eq!(c.rho, 1.0);
        assert_eq!(c.j, Vector3::ZERO);
    }

    #[test]
    fn current_density_is_sum_of_squares() {
        let psi = Multivector::new(0.3, [1.0, -0.5, 0.2], [0.7, 0.1, -0.9], -0.4);
        let c = current(&psi);
        let expected: f64 = psi.coefficients().iter().map(|x| x * x).sum();
        assert!((c.rho - expected).abs() < 1e-12);
        assert!(c.rho >= 0.0);
    }
}
