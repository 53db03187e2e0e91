//! Simultaneous root finding (Aberth–Ehrlich) and the unit-disk membership test.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, RootForm};

pub const DEFAULT_MAX_ITERATIONS: usize = 200;
pub const DEFAULT_CORRECTION_TOL: f64 = 1e-13;
/// Slack on `|z| >= 1` so that roots on the unit circle count as outside `D`.
pub const DEFAULT_DISK_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy)]
pub struct RootFinder {
    pub max_iterations: usize,
    /// An approximation is final once its correction drops below this
    /// (relative to `max(1, |z|)`) or its residual reaches rounding level.
    pub correction_tol: f64,
}

impl Default for RootFinder {
    fn default() -> Self {
        Self {
            max_iterations: DEFAULT_MAX_ITERATIONS,
            correction_tol: DEFAULT_CORRECTION_TOL,
        }
    }
}

pub fn find_roots(p: &Polynomial) -> Result<RootForm> {
    RootFinder::default().find(p)
}

/// Returns `(inside-free, min |z_j|)`. Constants are zero-free with infinite
/// minimum modulus.
pub fn zero_free_in_disk(p: &Polynomial, tol: f64) -> Result<(bool, f64)> {
    if p.is_zero() {
        return Err(Error::invalid("the zero polynomial vanishes on the disk"));
    }
    if p.degree() == 0 {
        return Ok((true, f64::INFINITY));
    }
    let form = find_roots(p)?;
    let min = form.min_modulus();
    Ok((min >= 1.0 - tol, min))
}

impl RootFinder {
    pub fn find(&self, p: &Polynomial) -> Result<RootForm> {
        if p.is_zero() || p.degree() == 0 {
            return Err(Error::invalid("root finding needs degree >= 1"));
        }
        let leading = p.leading();
        let coeffs = p.coeffs();

        // exact zeros at the origin
        let zeros_at_origin = coeffs.iter().take_while(|c| **c == ZERO).count();
        let monic: Vec<Complex64> = coeffs[zeros_at_origin..].iter().map(|&c| c / leading).collect();
        let mut roots = vec![ZERO; zeros_at_origin];
        let n = monic.len() - 1;
        match n {
            0 => {}
            1 => roots.push(-monic[0]),
            _ => {
                let found = self.aberth(&monic)?;
                roots.extend(merge_clusters(&monic, found));
            }
        }
        RootForm::new(leading, roots)
    }

    fn aberth(&self, monic: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = monic.len() - 1;
        let abs_coeffs: Vec<f64> = monic.iter().map(|c| c.norm()).collect();
        let mut z = initial_guesses(monic);
        let mut done = vec![false; n];

        for _ in 0..self.max_iterations {
            for i in 0..n {
                if done[i] {
                    continue;
                }
                let (value, deriv) = horner_with_derivative(monic, z[i]);
                if value.norm() <= rounding_bound(&abs_coeffs, z[i].norm()) {
                    done[i] = true;
                    continue;
                }
                let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
                let correction = (deriv / value - repulsion).inv();
                if !correction.is_finite() {
                    return Err(Error::NumericFailure {
                        message: "Aberth correction is not finite".into(),
                        best: z,
                    });
                }
                z[i] -= correction;
                if correction.norm() <= self.correction_tol * z[i].norm().max(1.0) {
                    done[i] = true;
                }
            }
            if done.iter().all(|&d| d) {
                return Ok(z);
            }
        }
        Err(Error::NumericFailure {
            message: format!(
                "Aberth iteration did not converge in {} iterations",
                self.max_iterations
            ),
            best: z,
        })
    }
}

/// Points on a circle around the root centroid, with radius the geometric
/// mean of the root distances when that is informative.
fn initial_guesses(monic: &[Complex64]) -> Vec<Complex64> {
    let n = monic.len() - 1;
    let center = -monic[n - 1] / n as f64;
    let mut radius = horner(monic, center).norm().powf(1.0 / n as f64);
    if !(radius.is_finite() && radius > 1e-8 * (1.0 + center.norm())) {
        radius = (0..n)
            .map(|k| monic[k].norm().powf(1.0 / (n - k) as f64))
            .fold(0.0, f64::max)
            .max(1e-3);
    }
    (0..n)
        .map(|k| center + Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect()
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
}

fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut value = ZERO;
    let mut deriv = ZERO;
    for &c in coeffs.iter().rev() {
        deriv = deriv * z + value;
        value = value * z + c;
    }
    (value, deriv)
}

/// Running-error bound of Horner's scheme at a point of modulus `r`.
fn rounding_bound(abs_coeffs: &[f64], r: f64) -> f64 {
    let n = abs_coeffs.len() as f64;
    let magnitude = abs_coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c);
    4.0 * n * f64::EPSILON * magnitude
}

/// Replaces each numerically multiple root, found as a cluster of simple
/// approximations, by the cluster centroid.
///
/// Clusters are the connected components of the inclusion discs
/// `D(z_i, n |W_i|)` with `W_i` the Weierstrass correction inflated by the
/// evaluation error. A component of size `k` is accepted as a `k`-fold root at
/// its centroid only if the first `k` Taylor coefficients there vanish to
/// rounding level.
fn merge_clusters(monic: &[Complex64], mut z: Vec<Complex64>) -> Vec<Complex64> {
    let n = z.len();
    let abs_coeffs: Vec<f64> = monic.iter().map(|c| c.norm()).collect();
    let radii: Vec<f64> = (0..n)
        .map(|i| {
            let value = horner(monic, z[i]).norm() + rounding_bound(&abs_coeffs, z[i].norm());
            let denom: f64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).norm()).product();
            n as f64 * value / denom
        })
        .collect();

    let mut component: Vec<usize> = (0..n).collect();
    fn find(component: &mut [usize], i: usize) -> usize {
        let mut root = i;
        while component[root] != root {
            root = component[root];
        }
        component[i] = root;
        root
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (z[i] - z[j]).norm() <= radii[i] + radii[j] {
                let (a, b) = (find(&mut component, i), find(&mut component, j));
                component[a] = b;
            }
        }
    }

    let mut visited = vec![false; n];
    for i in 0..n {
        let label = find(&mut component, i);
        if visited[label] {
            continue;
        }
        visited[label] = true;
        let members: Vec<usize> = (0..n).filter(|&j| find(&mut component, j) == label).collect();
        if members.len() < 2 {
            continue;
        }
        let centroid = members.iter().map(|&j| z[j]).sum::<Complex64>() / members.len() as f64;
        let centroid = polish_multiple_root(monic, centroid, members.len());
        if vanishes_to_order(monic, &abs_coeffs, centroid, members.len()) {
            for &j in &members {
                z[j] = centroid;
            }
        }
    }
    z
}

/// Newton iteration on `p^(k-1)`, which has a simple root at a `k`-fold root of `p`.
fn polish_multiple_root(monic: &[Complex64], start: Complex64, multiplicity: usize) -> Complex64 {
    let mut deriv = monic.to_vec();
    for _ in 1..multiplicity {
        deriv = deriv
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
    }
    let mut c = start;
    let mut last_step = f64::INFINITY;
    for _ in 0..50 {
        let (value, slope) = horner_with_derivative(&deriv, c);
        let step = value / slope;
        if !step.is_finite() || step.norm() >= last_step {
            break;
        }
        c -= step;
        last_step = step.norm();
        if last_step <= f64::EPSILON * c.norm().max(1.0) {
            break;
        }
    }
    c
}

/// True when `p^(j)(c) / j!` is at rounding level for every `j < order`.
fn vanishes_to_order(monic: &[Complex64], abs_coeffs: &[f64], c: Complex64, order: usize) -> bool {
    let n = monic.len() - 1;
    let mut shifted = monic.to_vec();
    let mut magnitudes = abs_coeffs.to_vec();
    let r = c.norm();
    let slack = 1e3 * n as f64 * f64::EPSILON;
    for j in 0..order {
        // one synthetic-division pass: shifted[j] becomes the j-th Taylor coefficient
        for k in (j..n).rev() {
            let upper = shifted[k + 1];
            shifted[k] += c * upper;
            magnitudes[k] += r * magnitudes[k + 1];
        }
        if shifted[j].norm() > slack * magnitudes[j] {
            return false;
        }
    }
    true
}
