//! Wave-mechanics oracles: dispersion over random states, grid-convergence
//! study for the second-order wave equation, the Dirac-form factorization,
//! the chaining identity, and an 8x8 linear-system oracle that finds an
//! exact solution of the first-order equation.

use cl3::multivector::{Multivector, Vector3};
use cl3::spacetime::{orthogonal_time_direction, MomentumMultivector};
use cl3::waves::{
    current, dirac_equation_residual, dirac_factorization_residual, dispersion_residual,
    kg_residual, wave_from_momentum, GridSpec,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn random_unit(rng: &mut impl Rng) -> Vector3 {
    loop {
        let v = Vector3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 0.1 {
            return v * (1.0 / n);
        }
    }
}

fn random_momentum(rng: &mut impl Rng, m: f64) -> MomentumMultivector {
    let dir = random_unit(rng);
    let v = dir * rng.gen_range(0.0..0.9);
    let t_hat = orthogonal_time_direction(&v);
    MomentumMultivector::massive(m, v, t_hat, 1.0).unwrap()
}

fn random_multivector(rng: &mut impl Rng) -> Multivector {
    let mut c = [0.0f64; 8];
    for slot in &mut c {
        *slot = rng.gen_range(-2.0..2.0);
    }
    Multivector::from_coefficients(c)
}

#[test]
fn dispersion_matches_compton_scale_over_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..1_000 {
        let m = rng.gen_range(0.2..4.0);
        let hbar = rng.gen_range(0.5..2.0);
        let p = random_momentum(&mut rng, m);
        let k = wave_from_momentum(&p, hbar).unwrap();
        let mv = k.as_multivector();
        let inv_lambda_sq = (m / hbar) * (m / hbar); // c = 1
        let scalar = (mv * mv).scalar_part();
        assert!(
            (scalar + inv_lambda_sq).abs() < 1e-12 * inv_lambda_sq,
            "K^2 = {scalar}, want {}",
            -inv_lambda_sq
        );
        assert!(dispersion_residual(&k, m, hbar).abs() < 1e-12 * inv_lambda_sq);
    }
}

#[test]
fn kg_second_order_convergence_with_measured_constant() {
    let p = MomentumMultivector::massive(1.0, Vector3::E1 * 0.6, Vector3::E2, 1.0).unwrap();
    let k = wave_from_momentum(&p, 1.0).unwrap();
    let spacings = [4e-2, 2e-2, 1e-2];
    let residuals: Vec<f64> = spacings
        .iter()
        .map(|&h| {
            kg_residual(
                &k,
                1.0,
                1.0,
                &GridSpec {
                    dx: h,
                    dt: h,
                    nx: 3,
                    nt: 3,
                },
            )
            .unwrap()
        })
        .collect();
    for pair in residuals.windows(2) {
        let ratio = pair[0] / pair[1];
        assert!((ratio - 4.0).abs() < 0.3, "convergence ratio {ratio}");
    }
    // Report the measured truncation constant C in residual ~ C h^2.
    let c_measured = residuals[2] / (spacings[2] * spacings[2]);
    println!("kg truncation constant: {c_measured:.3}");
    assert!(c_measured.is_finite() && c_measured > 0.0);
}

#[test]
fn factorization_residual_over_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..1_000 {
        let m = rng.gen_range(0.2..4.0);
        let p = random_momentum(&mut rng, m);
        let residual = dirac_factorization_residual(&p, m);
        assert!(
            residual.max_coeff() < 1e-10 * (m * m).max(1.0),
            "residual {:.3e}",
            residual.max_coeff()
        );
    }
}

#[test]
fn chaining_identity_over_random_wave_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..1_000 {
        let m = rng.gen_range(0.2..3.0);
        let p = random_momentum(&mut rng, m).as_multivector();
        // M with M^2 = -m^2 c^2, a pure bivector along a random direction.
        let m_op = Multivector::from_bivector_dual(random_unit(&mut rng) * m);
        let psi = random_multivector(&mut rng);

        let left = p * (p * psi);
        let right = (psi * m_op) * m_op;
        let scale = psi.max_coeff() * m * m;
        assert!(
            (left - right).max_coeff() < 1e-10 * scale.max(1.0),
            "chaining identity violated: {:.3e}",
            (left - right).max_coeff()
        );
    }
}

#[test]
fn dirac_linear_system_oracle_finds_a_solution() {
    // psi |-> P psi - psi* M is linear over the eight coefficients. Build
    // its matrix, extract a null vector by SVD, and check the residual.
    let p = MomentumMultivector::massive(1.4, Vector3::E1 * 0.5, Vector3::E2, 1.0).unwrap();
    let m_op = p.as_multivector(); // hbar = 1: M = P is admissible

    let mut columns = [[0.0f64; 8]; 8];
    for (j, column) in columns.iter_mut().enumerate() {
        let basis = Multivector::basis(j).unwrap();
        let image = dirac_equation_residual(&basis, &p, &m_op).unwrap();
        *column = image.coefficients();
    }
    let a = nalgebra::SMatrix::<f64, 8, 8>::from_fn(|i, j| columns[j][i]);
    let svd = a.svd(true, true);
    let smallest = svd
        .singular_values
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    assert!(
        smallest < 1e-10,
        "no null space found, smallest singular value {smallest:.3e}"
    );

    // The right-singular vector of the smallest singular value solves it.
    let v_t = svd.v_t.unwrap();
    let idx = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.partial_cmp(y.1).unwrap())
        .unwrap()
        .0;
    let mut coeffs = [0.0f64; 8];
    for (k, slot) in coeffs.iter_mut().enumerate() {
        *slot = v_t[(idx, k)];
    }
    let psi = Multivector::from_coefficients(coeffs);
    assert!(psi.max_coeff() > 0.1, "null vector degenerated");

    let residual = dirac_equation_residual(&psi, &p, &m_op).unwrap();
    assert!(
        residual.max_coeff() < 1e-10,
        "constructed solution residual {:.3e}",
        residual.max_coeff()
    );
}

#[test]
fn rest_frame_scalar_solution() {
    // At rest with M = i m c along the same energy direction, psi = 1
    // solves the equation exactly.
    let m = 2.0;
    let p = MomentumMultivector::massive(m, Vector3::ZERO, Vector3::E3, 1.0).unwrap();
    let m_op = Multivector::from_bivector_dual(Vector3::E3 * m);
    let residual = dirac_equation_residual(&Multivector::ONE, &p, &m_op).unwrap();
    assert!(residual.max_coeff() < 1e-14);
}

#[test]
fn current_properties_over_random_wave_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..1_000 {
        let psi = random_multivector(&mut rng);
        let c = current(&psi);
        let expected: f64 = psi.coefficients().iter().map(|x| x * x).sum();
        assert!(c.rho >= 0.0);
        assert!((c.rho - expected).abs() < 1e-12 * expected.max(1.0));
        // Grades 2 and 3 of psi psi~ vanish by reversion symmetry.
        let product = psi * psi.reverse();
        assert!(product.bivector_dual().norm() < 1e-12 * expected.max(1.0));
        assert!(product.trivector_part().abs() < 1e-12 * expected.max(1.0));
    }
    // rho = 0 iff psi = 0.
    assert_eq!(current(&Multivector::ZERO).rho, 0.0);
}
