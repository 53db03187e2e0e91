//! Dense complex polynomials in the monomial basis, and the product form
//! `leading * prod (z - z_j)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Trailing coefficients below this fraction of the largest modulus are dropped.
pub const TRIM_RELATIVE: f64 = 1e-14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Complex polynomial, coefficients in ascending powers.
///
/// The coefficient vector is never empty. The zero polynomial is stored as
/// `[0]` and reports `is_zero() == true` with degree 0.
#[derive(Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let threshold = TRIM_RELATIVE * max;
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() <= threshold) {
            coeffs.pop();
        }
        if coeffs.is_empty() || max == 0.0 {
            coeffs = vec![ZERO];
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![ZERO] }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `leading * prod_j (x - roots[j])`.
    pub fn from_roots(roots: &[Complex64], leading: Complex64) -> Result<Self> {
        if leading == ZERO || !leading.is_finite() {
            return Err(Error::invalid("leading coefficient must be nonzero and finite"));
        }
        let mut coeffs = vec![ZERO; roots.len() + 1];
        coeffs[0] = ONE;
        for (len, &root) in roots.iter().enumerate() {
            // multiply the degree-`len` prefix by (x - root)
            for k in (0..=len + 1).rev() {
                let shifted = if k > 0 { coeffs[k - 1] } else { ZERO };
                let kept = if k <= len { coeffs[k] } else { ZERO };
                coeffs[k] = shifted - root * kept;
            }
        }
        Ok(Self::new(coeffs.into_iter().map(|c| c * leading).collect()))
    }

    /// `(1 + sign * x)^n` with `sign` = +1 or -1.
    pub fn one_plus_sign_x_pow(sign: f64, n: usize) -> Self {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut binom = 1.0_f64;
        for k in 0..=n {
            coeffs.push(Complex64::new(binom * sign.powi(k as i32), 0.0));
            binom = binom * (n - k) as f64 / (k + 1) as f64;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == ZERO
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    pub fn max_coeff_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn eval_real(&self, x: f64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc.scale(x) + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut value = ZERO;
        let mut deriv = ZERO;
        for &c in self.coeffs.iter().rev() {
            deriv = deriv * z + value;
            value = value * z + c;
        }
        (value, deriv)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(k as f64))
                .collect(),
        )
    }

    /// `z -> conj(p(conj(z)))`: conjugates every coefficient.
    pub fn conjugate_reflect(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    /// `x -> p(-x)`.
    pub fn reflect(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
                .collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// True when every imaginary part is at most `rel_tol` times the largest modulus.
    pub fn is_real(&self, rel_tol: f64) -> bool {
        let bound = rel_tol * self.max_coeff_modulus();
        self.coeffs.iter().all(|c| c.im.abs() <= bound)
    }

    pub fn real_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.re).collect()
    }

    /// Coefficients of `|p(x)|^2` for real `x`, i.e. of `p * conjugate_reflect(p)`.
    /// The product is real up to rounding, so only real parts are kept.
    pub fn modulus_squared_on_reals(&self) -> Vec<f64> {
        (self * &self.conjugate_reflect()).real_coeffs()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Polynomial").field(&self.coeffs).finish()
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let at = |c: &[Complex64], k: usize| c.get(k).copied().unwrap_or(ZERO);
        Polynomial::new(
            (0..len)
                .map(|k| at(&self.coeffs, k) + at(&rhs.coeffs, k))
                .collect(),
        )
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

/// Polynomial given by its leading coefficient and roots (with repetition).
#[derive(Debug, Clone, PartialEq)]
pub struct RootForm {
    pub leading: Complex64,
    pub roots: Vec<Complex64>,
}

impl RootForm {
    pub fn new(leading: Complex64, roots: Vec<Complex64>) -> Result<Self> {
        if leading == ZERO || !leading.is_finite() {
            return Err(Error::invalid("leading coefficient must be nonzero and finite"));
        }
        Ok(Self { leading, roots })
    }

    pub fn expand(&self) -> Polynomial {
        Polynomial::from_roots(&self.roots, self.leading)
            .expect("RootForm always carries a nonzero leading coefficient")
    }

    /// Smallest root modulus; infinite for a constant.
    pub fn min_modulus(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min)
    }

    /// Root of smallest modulus, if any.
    pub fn innermost_root(&self) -> Option<Complex64> {
        self.roots
            .iter()
            .copied()
            .min_by(|a, b| a.norm().total_cmp(&b.norm()))
    }
}

/// Anything that can be evaluated together with its first derivative.
///
/// The product form evaluates far more accurately than an expanded
/// high-degree coefficient vector, so the scans accept either.
pub trait Evaluate {
    fn degree(&self) -> usize;
    fn value(&self, z: Complex64) -> Complex64;
    fn derivative_value(&self, z: Complex64) -> Complex64;

    fn value_real(&self, x: f64) -> Complex64 {
        self.value(Complex64::new(x, 0.0))
    }
}

impl Evaluate for Polynomial {
    fn degree(&self) -> usize {
        Polynomial::degree(self)
    }

    fn value(&self, z: Complex64) -> Complex64 {
        self.eval(z)
    }

    fn value_real(&self, x: f64) -> Complex64 {
        self.eval_real(x)
    }

    fn derivative_value(&self, z: Complex64) -> Complex64 {
        self.eval_with_derivative(z).1
    }
}

impl Evaluate for RootForm {
    fn degree(&self) -> usize {
        self.roots.len()
    }

    fn value(&self, z: Complex64) -> Complex64 {
        self.roots
            .iter()
            .fold(self.leading, |acc, &root| acc * (z - root))
    }

    fn derivative_value(&self, z: Complex64) -> Complex64 {
        // prefix/suffix products avoid dividing by a vanishing factor
        let n = self.roots.len();
        let factors: Vec<Complex64> = self.roots.iter().map(|&r| z - r).collect();
        let mut suffix = vec![ONE; n + 1];
        for j in (0..n).rev() {
            suffix[j] = suffix[j + 1] * factors[j];
        }
        let mut prefix = ONE;
        let mut sum = ZERO;
        for j in 0..n {
            sum += prefix * suffix[j + 1];
            prefix *= factors[j];
        }
        self.leading * sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_coeffs(p: &Polynomial, expected: &[Complex64], tol: f64) {
        assert_eq!(p.coeffs().len(), expected.len(), "{p:?}");
        for (a, b) in p.coeffs().iter().zip(expected) {
            assert!((a - b).norm() <= tol, "{p:?} vs {expected:?}");
        }
    }

    #[test]
    fn from_roots_double_root() {
        let p = Polynomial::from_roots(&[c(-1.0, 0.0), c(-1.0, 0.0)], ONE).unwrap();
        assert_coeffs(&p, &[c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)], 0.0);
    }

    #[test]
    fn from_roots_cubic_q() {
        let p = Polynomial::from_roots(&[c(-1.0, 0.0), c(0.0, -1.0), c(0.0, 1.0)], ONE).unwrap();
        assert_coeffs(&p, &[ONE; 4], 1e-15);
    }

    #[test]
    fn from_roots_rejects_zero_leading() {
        assert!(matches!(
            Polynomial::from_roots(&[ONE], ZERO),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn from_roots_matches_shuffled_convolution() {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let roots: Vec<Complex64> = (0..6)
            .map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
            .collect();
        let leading = c(2.0, 1.0);
        let p = Polynomial::from_roots(&roots, leading).unwrap();

        let mut factors: Vec<Polynomial> = roots.iter().map(|&r| Polynomial::new(vec![-r, ONE])).collect();
        factors.shuffle(&mut rng);
        let oracle = factors
            .iter()
            .fold(Polynomial::constant(leading), |acc, f| &acc * f);
        assert_coeffs(&p, oracle.coeffs(), 1e-12 * oracle.max_coeff_modulus());
    }

    #[test]
    fn evaluate_examples() {
        let q = Polynomial::from_real(&[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(q.eval(ONE), c(4.0, 0.0));
        let p = Polynomial::from_real(&[1.0, 2.0, 1.0]);
        assert_eq!(p.eval(c(-1.0, 0.0)), ZERO);

        let r = Polynomial::from_real(&[1.0, -0.5, 1.5]);
        let z = c(0.25, 0.77);
        let naive: Complex64 = r
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, &a)| a * z.powu(k as u32))
            .sum();
        assert!((r.eval(z) - naive).norm() <= 1e-13);
    }

    #[test]
    fn evaluate_integer_inputs_exactly() {
        let coeffs: Vec<f64> = (0..=20).map(|k| ((k * 7) % 5) as f64 - 2.0).collect();
        let p = Polynomial::from_real(&coeffs);
        for x in -1..=1i64 {
            let exact: i64 = coeffs
                .iter()
                .enumerate()
                .map(|(k, &a)| a as i64 * x.pow(k as u32))
                .sum();
            assert_eq!(p.eval_real(x as f64), c(exact as f64, 0.0));
        }
        // larger points stay exact while every partial sum fits in 53 bits
        let small = Polynomial::from_real(&[3.0, -1.0, 2.0, 0.0, 1.0]);
        assert_eq!(small.eval_real(5.0).re, 3.0 - 5.0 + 50.0 + 625.0);
    }

    #[test]
    fn derivative_examples() {
        let p = Polynomial::from_real(&[1.0, 2.0, 1.0]);
        assert_coeffs(&p.derivative(), &[c(2.0, 0.0), c(2.0, 0.0)], 0.0);
        assert!(Polynomial::from_real(&[5.0]).derivative().is_zero());
    }

    #[test]
    fn derivative_matches_root_sum() {
        // P(-1) * sum 1/(-1 - z_j) for the n = 5 Halasz polynomial
        let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 5.0);
        let roots = vec![ONE, zeta, zeta, zeta * zeta, zeta * zeta];
        let p = Polynomial::from_roots(&roots, ONE).unwrap();
        let at = c(-1.0, 0.0);
        let oracle = p.eval(at) * roots.iter().map(|&z| (at - z).inv()).sum::<Complex64>();
        assert!((p.derivative().eval(at) - oracle).norm() <= 1e-12);
        let form = RootForm::new(ONE, roots).unwrap();
        assert!((form.derivative_value(at) - oracle).norm() <= 1e-12);
    }

    #[test]
    fn conjugate_reflect_examples() {
        let real = Polynomial::from_real(&[1.0, -3.0, 2.0]);
        assert_eq!(real.conjugate_reflect(), real);
        let p = Polynomial::new(vec![c(0.0, 1.0), ONE]);
        assert_coeffs(&p.conjugate_reflect(), &[c(0.0, -1.0), ONE], 0.0);
    }

    #[test]
    fn multiply_examples() {
        let p = Polynomial::new(vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 1.0)]);
        assert_eq!(&p * &Polynomial::constant(ONE), p);
        let prod = &Polynomial::from_real(&[1.0, 1.0]) * &Polynomial::from_real(&[1.0, -1.0]);
        assert_coeffs(&prod, &[ONE, ZERO, c(-1.0, 0.0)], 0.0);
    }

    #[test]
    fn trim_drops_noise() {
        let p = Polynomial::new(vec![ONE, c(2.0, 0.0), c(1e-16, 0.0)]);
        assert_eq!(p.degree(), 1);
        let z = Polynomial::new(vec![ZERO, ZERO]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), 0);
    }

    #[test]
    fn one_plus_x_power() {
        let p = Polynomial::one_plus_sign_x_pow(1.0, 4);
        assert_eq!(p.real_coeffs(), vec![1.0, 4.0, 6.0, 4.0, 1.0]);
        let m = Polynomial::one_plus_sign_x_pow(-1.0, 3);
        assert_eq!(m.real_coeffs(), vec![1.0, -3.0, 3.0, -1.0]);
    }
}
