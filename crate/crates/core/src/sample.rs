//! Seeded generators of random polynomials in the zero-free classes.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::{Polynomial, RootForm};

/// Generator for trial `stream` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Roots `r e^{i theta}` with `r` uniform in `[1, r_max]`, uniform angles and a
/// random complex leading coefficient.
pub fn random_zero_free<R: Rng>(rng: &mut R, n: usize, r_max: f64) -> RootForm {
    let roots = (0..n)
        .map(|_| Complex64::from_polar(rng.gen_range(1.0..=r_max), rng.gen_range(0.0..2.0 * PI)))
        .collect();
    let leading = Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..2.0 * PI));
    RootForm { leading, roots }
}

/// Real polynomial of degree `n` built from conjugate pairs and real roots, all
/// of modulus at least one. About a fifth of the moduli are exactly one.
pub fn random_real_zero_free<R: Rng>(rng: &mut R, n: usize, r_max: f64) -> Polynomial {
    let radius = |rng: &mut R| {
        if rng.gen_bool(0.2) {
            1.0
        } else {
            rng.gen_range(1.0..=r_max)
        }
    };
    let mut factors = Polynomial::from_real(&[if rng.gen_bool(0.5) { 1.0 } else { -1.0 }]);
    let mut remaining = n;
    while remaining > 0 {
        if remaining >= 2 && rng.gen_bool(0.6) {
            let z = Complex64::from_polar(radius(rng), rng.gen_range(0.0..PI));
            factors = &factors * &Polynomial::from_real(&[z.norm_sqr(), -2.0 * z.re, 1.0]);
            remaining -= 2;
        } else {
            let r = radius(rng) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            factors = &factors * &Polynomial::from_real(&[-r, 1.0]);
            remaining -= 1;
        }
    }
    factors
}
