//! Sup-norms of polynomials on real intervals, plain and weighted.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Evaluate, Polynomial};
use crate::weight::Weight;

pub const DEFAULT_WEIGHTED_GRID: usize = 8192;
pub const GOLDEN_TOL: f64 = 1e-12;
const BISECTION_TOL: f64 = 1e-14;
const REFINED_BRACKETS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMethod {
    DerivativeRoots,
    GridRefine,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormResult {
    pub value: f64,
    pub argmax: f64,
    pub method: NormMethod,
    pub grid_size: usize,
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`, stopping when the
/// bracket is shorter than `tol`. Returns the best point seen.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Nodes of a uniform grid of `grid + 1` points over `[lo, hi]`, hitting `hi` exactly.
fn uniform_nodes(lo: f64, hi: f64, grid: usize) -> Vec<f64> {
    let h = (hi - lo) / grid as f64;
    (0..=grid)
        .map(|k| if k == grid { hi } else { lo + h * k as f64 })
        .collect()
}

/// Maximizes `f` on a uniform grid of `grid + 1` points over `[lo, hi]`, then
/// refines the best few discrete local maxima by golden-section search.
/// Ties keep the smallest abscissa.
pub fn grid_refine_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, grid: usize, tol: f64) -> (f64, f64) {
    let xs = uniform_nodes(lo, hi, grid.max(2));
    let values: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    refine_peaks(f, &xs, &values, tol)
}

/// Golden-section refinement of the largest discrete local maxima of `values`
/// sampled at `xs`. A refined point replaces the grid point only if strictly better.
fn refine_peaks<F: Fn(f64) -> f64>(f: F, xs: &[f64], values: &[f64], tol: f64) -> (f64, f64) {
    let last = xs.len() - 1;
    let mut peaks: Vec<usize> = (0..=last)
        .filter(|&k| {
            let left = k == 0 || values[k] >= values[k - 1];
            let right = k == last || values[k] >= values[k + 1];
            left && right
        })
        .collect();
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    peaks.truncate(REFINED_BRACKETS);

    let mut best = (xs[peaks[0]], values[peaks[0]]);
    for &k in &peaks {
        let a = xs[k.saturating_sub(1)];
        let b = xs[(k + 1).min(last)];
        let (x, v) = golden_max(&f, a, b, tol);
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}

/// `max |p|` over `[lo, hi]` from the real critical points of `|p|^2`.
///
/// Critical points are bracketed by sign changes of `(|p|^2)'` on a Chebyshev
/// grid of `max(64, 32 deg p)` points and bisected to `1e-14`.
pub fn sup_norm(p: &Polynomial, lo: f64, hi: f64) -> Result<NormResult> {
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::invalid(format!("degenerate interval [{lo}, {hi}]")));
    }
    let grid_size = 64.max(32 * p.degree());
    let modulus = |x: f64| p.eval_real(x).norm();
    let mut best = (lo, modulus(lo));
    let mut consider = |x: f64| {
        let v = modulus(x);
        if v > best.1 {
            best = (x, v);
        }
    };
    consider(hi);

    if p.degree() >= 1 {
        let g = p.modulus_squared_on_reals();
        let dg: Vec<f64> = g.iter().enumerate().skip(1).map(|(k, &c)| k as f64 * c).collect();
        let eval = |x: f64| dg.iter().rev().fold(0.0, |acc, &c| acc * x + c);

        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let nodes: Vec<f64> = (0..grid_size)
            .rev()
            .map(|k| {
                let x = mid + half * (PI * k as f64 / (grid_size - 1) as f64).cos();
                x.clamp(lo, hi)
            })
            .collect();
        let mut prev = (nodes[0], eval(nodes[0]));
        for &x in &nodes[1..] {
            let fx = eval(x);
            if fx == 0.0 {
                consider(x);
            } else if prev.1 != 0.0 && (prev.1 > 0.0) != (fx > 0.0) {
                consider(bisect_sign_change(&eval, prev.0, x, prev.1));
            }
            consider(x);
            prev = (x, fx);
        }
    }

    Ok(NormResult {
        value: best.1,
        argmax: best.0,
        method: NormMethod::DerivativeRoots,
        grid_size,
    })
}

fn bisect_sign_change<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, fa: f64) -> f64 {
    let positive_at_a = fa > 0.0;
    while b - a > BISECTION_TOL {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == positive_at_a {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// `max |p(x)| phi(|x|)` over `[-1, 1]` with the default grid.
pub fn weighted_sup_norm(p: &Polynomial, w: &Weight) -> NormResult {
    weighted_sup_norm_with_grid(p, w, DEFAULT_WEIGHTED_GRID)
}

pub fn weighted_sup_norm_with_grid(p: &Polynomial, w: &Weight, grid: usize) -> NormResult {
    weighted_sup_norm_of(p, w, grid)
}

/// Weighted norm for any evaluable polynomial representation.
pub fn weighted_sup_norm_of<E: Evaluate + ?Sized>(p: &E, w: &Weight, grid: usize) -> NormResult {
    WeightedGrid::new(w, grid).norm_of(p)
}

/// `|p(x)|` without the overflow guard of `hypot`, which costs more than the
/// evaluation itself at low degree.
fn modulus<E: Evaluate + ?Sized>(p: &E, x: f64) -> f64 {
    p.value_real(x).norm_sqr().sqrt()
}

/// A weight tabulated on the uniform grid of `[-1, 1]`, for computing many
/// weighted norms with the same weight.
#[derive(Debug, Clone)]
pub struct WeightedGrid {
    weight: Weight,
    xs: Vec<f64>,
    ws: Vec<f64>,
}

impl WeightedGrid {
    pub fn new(w: &Weight, grid: usize) -> Self {
        let xs = uniform_nodes(-1.0, 1.0, grid.max(2));
        let ws = xs.iter().map(|&x| w.at_signed(x)).collect();
        Self {
            weight: w.clone(),
            xs,
            ws,
        }
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    /// `max |p(x)| phi(|x|)` over `[-1, 1]`.
    pub fn norm_of<E: Evaluate + ?Sized>(&self, p: &E) -> NormResult {
        let values: Vec<f64> = self
            .xs
            .iter()
            .zip(&self.ws)
            .map(|(&x, &w)| modulus(p, x) * w)
            .collect();
        let f = |x: f64| modulus(p, x) * self.weight.at_signed(x);
        let (argmax, value) = refine_peaks(f, &self.xs, &values, GOLDEN_TOL);
        NormResult {
            value,
            argmax,
            method: NormMethod::GridRefine,
            grid_size: self.xs.len() - 1,
        }
    }
}

/// Unweighted sup-norm on `[-1, 1]` by grid and refinement; used for product
/// forms whose expanded coefficients would lose accuracy.
pub fn sampled_sup_norm<E: Evaluate + ?Sized>(p: &E, grid: usize) -> NormResult {
    let f = |x: f64| p.value(Complex64::new(x, 0.0)).norm();
    let (argmax, value) = grid_refine_max(f, -1.0, 1.0, grid, GOLDEN_TOL);
    NormResult {
        value,
        argmax,
        method: NormMethod::GridRefine,
        grid_size: grid.max(2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dense_grid_norm(p: &Polynomial, lo: f64, hi: f64, points: usize) -> f64 {
        (0..points)
            .map(|k| lo + (hi - lo) * k as f64 / (points - 1) as f64)
            .map(|x| p.eval_real(x).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v) = golden_max(|x| -(x - 0.3) * (x - 0.3) + 2.0, 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn one_plus_x_power_norm() {
        for n in 0..12 {
            let r = sup_norm(&Polynomial::one_plus_sign_x_pow(1.0, n), -1.0, 1.0).unwrap();
            assert_eq!(r.value, 2f64.powi(n as i32));
            if n > 0 {
                assert_eq!(r.argmax, 1.0);
            }
            assert_eq!(r.method, NormMethod::DerivativeRoots);
        }
    }

    #[test]
    fn interior_and_endpoint_ties() {
        let r = sup_norm(&Polynomial::from_real(&[-0.5, 0.0, 1.0]), -1.0, 1.0).unwrap();
        assert!((r.value - 0.5).abs() < 1e-15);
        assert!([-1.0, 0.0, 1.0].iter().any(|&x| (r.argmax - x).abs() < 1e-12));
    }

    #[test]
    fn rejects_degenerate_interval() {
        let p = Polynomial::from_real(&[1.0, 1.0]);
        assert!(sup_norm(&p, 1.0, 1.0).is_err());
        assert!(sup_norm(&p, 2.0, -1.0).is_err());
    }

    #[test]
    fn random_degree_10_matches_dense_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..3 {
            let p = Polynomial::new(
                (0..=10)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            );
            let fast = sup_norm(&p, -1.0, 1.0).unwrap();
            let oracle = dense_grid_norm(&p, -1.0, 1.0, 1_000_000);
            assert!(
                (fast.value - oracle).abs() <= 1e-8 * oracle,
                "{} vs {oracle}",
                fast.value
            );
            assert!((fast.value - p.eval_real(fast.argmax).norm()).abs() <= 1e-12 * fast.value);
        }
    }

    #[test]
    fn sup_norm_on_subinterval() {
        // x^2 on [0.5, 2] peaks at the right end
        let r = sup_norm(&Polynomial::from_real(&[0.0, 0.0, 1.0]), 0.5, 2.0).unwrap();
        assert_eq!(r.value, 4.0);
        assert_eq!(r.argmax, 2.0);
    }

    #[test]
    fn weighted_power_norm_closed_form() {
        for &alpha in &[0.5, 1.0, 2.0] {
            for n in 1..8 {
                let w = Weight::power(alpha).unwrap();
                let r = weighted_sup_norm(&Polynomial::one_plus_sign_x_pow(1.0, n), &w);
                let nf = n as f64;
                let a = nf / (nf + 2.0 * alpha);
                let expected = (1.0 + a).powi(n as i32) * (1.0 - a * a).powf(alpha);
                assert!((r.value - expected).abs() <= 1e-12 * expected);
                assert!((r.argmax - a).abs() < 1e-5);
                assert!(r.argmax >= 0.0);
            }
        }
    }

    #[test]
    fn unit_weight_matches_plain_norm() {
        let p = Polynomial::new(vec![
            Complex64::new(0.3, -1.0),
            Complex64::new(1.0, 0.2),
            Complex64::new(-0.7, 0.4),
            Complex64::new(0.1, 0.9),
        ]);
        let plain = sup_norm(&p, -1.0, 1.0).unwrap();
        let weighted = weighted_sup_norm(&p, &Weight::unit());
        assert!((plain.value - weighted.value).abs() <= 1e-12 * plain.value);
    }

    #[test]
    fn constant_with_power_weight_peaks_at_zero() {
        let r = weighted_sup_norm(&Polynomial::from_real(&[1.0]), &Weight::power(1.0).unwrap());
        assert_eq!(r.value, 1.0);
        assert!(r.argmax.abs() < 1e-9);
    }
}
