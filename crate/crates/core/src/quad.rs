//! Quadrature backends for the wave-packet propagator.
//!
//! Gauss-Hermite rules (via `gauss_quad`) handle the Gaussian-weighted
//! integrand directly; composite Simpson over a truncated window is the
//! fallback for strongly oscillatory phases. Hermite node sets are memoized
//! per degree since building one costs an eigensolve.

use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::GaussHermite;

use crate::error::{Error, Result};

/// Node-weight pairs of the Gauss-Hermite rule of the given degree, for the
/// weight e^(-u^2) on the whole real line.
pub fn hermite_rule(degree: usize) -> Result<Arc<[(f64, f64)]>> {
    let degree = NonZeroUsize::new(degree).ok_or_else(|| {
        Error::InvalidArgument("quadrature degree must be nonzero".to_string())
    })?;

    static CACHE: OnceLock<Mutex<Vec<(usize, Arc<[(f64, f64)]>)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut cache = cache.lock().expect("hermite rule cache poisoned");
    if let Some((_, rule)) = cache.iter().find(|(d, _)| *d == degree.get()) {
        return Ok(rule.clone());
    }
    let rule: Arc<[(f64, f64)]> = GaussHermite::new(degree)
        .as_node_weight_pairs()
        .to_vec()
        .into();
    cache.push((degree.get(), rule.clone()));
    Ok(rule)
}

/// Composite Simpson integration of a complex-valued integrand over [a, b]
/// with a fixed, odd number of sample points. Summation order is fixed, so
/// results are bitwise deterministic.
pub fn simpson_complex<F>(a: f64, b: f64, points: usize, mut f: F) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> (f64, f64),
{
    if points < 3 || points % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "Simpson rule needs an odd point count >= 3, got {points}"
        )));
    }
    if !(b > a) {
        return Err(Error::InvalidArgument(format!(
            "empty integration window [{a}, {b}]"
        )));
    }
    let h = (b - a) / (points - 1) as f64;
    let mut sum_re = 0.0;
    let mut sum_im = 0.0;
    for i in 0..points {
        let x = a + i as f64 * h;
        let w = if i == 0 || i == points - 1 {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let (re, im) = f(x);
        sum_re += w * re;
        sum_im += w * im;
    }
    Ok((sum_re * h / 3.0, sum_im * h / 3.0))
}
