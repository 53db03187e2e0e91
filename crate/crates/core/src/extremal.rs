//! Numerical experiments around the Schur ratio: multistart search over root
//! configurations, the Halász polynomial, Bernstein-factor scans, the Markov
//! bound obtained from the logarithmic weight, and the non-convexity example.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lorentz::{lorentz_degree, to_lorentz};
use crate::norm::{
    grid_refine_max, sampled_sup_norm, sup_norm, weighted_sup_norm, WeightedGrid, DEFAULT_WEIGHTED_GRID,
    GOLDEN_TOL,
};
use crate::poly::{Evaluate, Polynomial, RootForm};
use crate::roots::{find_roots, zero_free_in_disk, DEFAULT_DISK_TOL};
use crate::sample::stream_rng;
use crate::schur::{require_zero_free, schur_constant, HOLDS_SLACK};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_radius: f64,
    /// Grid for the weighted norm inside the objective.
    pub grid: usize,
    /// Hard cap on objective evaluations per trial.
    pub max_evaluations: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.3,
            min_step: 1e-6,
            max_radius: 3.0,
            grid: DEFAULT_WEIGHTED_GRID,
            max_evaluations: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub n: usize,
    pub weight: String,
    pub best_roots: Vec<Complex64>,
    pub best_ratio: f64,
    pub constant: f64,
    pub gap: f64,
    pub trials: usize,
    pub seed: u64,
    pub evaluations: usize,
    /// Largest ratio seen anywhere during the search.
    pub max_seen_ratio: f64,
    /// Evaluations whose ratio exceeded `constant * (1 + 1e-9)`.
    pub violations: usize,
}

#[derive(Debug, Clone)]
struct TrialOutcome {
    roots: Vec<Complex64>,
    ratio: f64,
    evaluations: usize,
    max_seen: f64,
    violations: usize,
}

struct Objective {
    weighted: WeightedGrid,
    constant: f64,
}

impl Objective {
    fn new(w: &Weight, n: usize, grid: usize) -> Result<Self> {
        Ok(Self {
            weighted: WeightedGrid::new(w, grid),
            constant: schur_constant(w, n)?,
        })
    }

    fn ratio(&self, roots: &[Complex64]) -> f64 {
        let p = Polynomial::from_roots(roots, Complex64::new(1.0, 0.0)).expect("unit leading coefficient");
        let norm_pw = self.weighted.norm_of(&p).value;
        match sup_norm(&p, -1.0, 1.0) {
            Ok(norm_p) if norm_pw > 0.0 => norm_p.value / norm_pw,
            _ => f64::NAN,
        }
    }
}

fn to_roots(params: &[(f64, f64)]) -> Vec<Complex64> {
    params
        .iter()
        .map(|&(r, theta)| Complex64::from_polar(r, theta))
        .collect()
}

/// Coordinate ascent on `(r_j, theta_j)` with `r_j >= 1`, halving the step
/// whenever a full sweep brings no improvement.
fn coordinate_ascent(objective: &Objective, start: Vec<(f64, f64)>, opts: &SearchOptions) -> TrialOutcome {
    let mut params = start;
    for p in &mut params {
        p.0 = p.0.max(1.0);
    }
    let threshold = objective.constant * (1.0 + HOLDS_SLACK);
    let mut evaluations = 1;
    let mut best = objective.ratio(&to_roots(&params));
    let mut max_seen = best;
    let mut violations = usize::from(best > threshold);
    let mut step = opts.initial_step;

    'outer: while step >= opts.min_step {
        let mut improved = false;
        for coord in 0..2 * params.len() {
            for dir in [1.0, -1.0] {
                if evaluations >= opts.max_evaluations {
                    break 'outer;
                }
                let mut candidate = params.clone();
                let slot = &mut candidate[coord / 2];
                if coord % 2 == 0 {
                    slot.0 = (slot.0 + dir * step).max(1.0);
                } else {
                    slot.1 += dir * step;
                }
                if candidate == params {
                    continue;
                }
                let value = objective.ratio(&to_roots(&candidate));
                evaluations += 1;
                if value > max_seen {
                    max_seen = value;
                }
                if value > threshold {
                    violations += 1;
                }
                if value > best {
                    best = value;
                    params = candidate;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    TrialOutcome {
        roots: to_roots(&params),
        ratio: best,
        evaluations,
        max_seen,
        violations,
    }
}

/// Local search from a given root configuration (moduli are clamped to `>= 1`).
pub fn refine_from(roots: &[Complex64], w: &Weight, opts: &SearchOptions) -> Result<(Vec<Complex64>, f64)> {
    if roots.is_empty() {
        return Err(Error::invalid("need at least one root"));
    }
    let objective = Objective::new(w, roots.len(), opts.grid)?;
    let start = roots.iter().map(|z| (z.norm(), z.arg())).collect();
    let outcome = coordinate_ascent(&objective, start, opts);
    Ok((outcome.roots, outcome.ratio))
}

pub fn extremal_search(n: usize, w: &Weight, trials: usize, seed: u64) -> Result<ExtremalResult> {
    extremal_search_with(n, w, trials, seed, &SearchOptions::default())
}

/// Multistart maximization of `||p|| / ||p phi||` over monic `p` with roots
/// outside the open disk. Trials run in parallel; each draws from its own
/// stream of `seed`, and the best ratio wins with ties to the lowest trial.
pub fn extremal_search_with(
    n: usize,
    w: &Weight,
    trials: usize,
    seed: u64,
    opts: &SearchOptions,
) -> Result<ExtremalResult> {
    if n == 0 || trials == 0 {
        return Err(Error::invalid("extremal search needs n >= 1 and trials >= 1"));
    }
    let objective = Objective::new(w, n, opts.grid)?;
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = stream_rng(seed, trial as u64);
            let start = (0..n)
                .map(|_| (rng.gen_range(1.0..=opts.max_radius), rng.gen_range(0.0..2.0 * PI)))
                .collect();
            coordinate_ascent(&objective, start, opts)
        })
        .collect();

    let mut best = &outcomes[0];
    for outcome in &outcomes[1..] {
        if outcome.ratio > best.ratio {
            best = outcome;
        }
    }
    Ok(ExtremalResult {
        n,
        weight: w.to_string(),
        best_roots: best.roots.clone(),
        best_ratio: best.ratio,
        constant: objective.constant,
        gap: objective.constant - best.ratio,
        trials,
        seed,
        evaluations: outcomes.iter().map(|o| o.evaluations).sum(),
        max_seen_ratio: outcomes
            .iter()
            .map(|o| o.max_seen)
            .fold(f64::NEG_INFINITY, f64::max),
        violations: outcomes.iter().map(|o| o.violations).sum(),
    })
}

/// `(z - 1) prod_{j=1..m} (z - e^{2 pi i j/(2m+1)})^2` with `m = floor((n-1)/2)`.
pub fn halasz_polynomial(n: usize) -> Result<RootForm> {
    if n < 3 {
        return Err(Error::invalid("Halász polynomial needs n >= 3"));
    }
    let m = (n - 1) / 2;
    let mut roots = vec![Complex64::new(1.0, 0.0)];
    for j in 1..=m {
        let zeta = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / (2 * m + 1) as f64);
        roots.push(zeta);
        roots.push(zeta);
    }
    RootForm::new(Complex64::new(1.0, 0.0), roots)
}

pub const CIRCLE_GRID: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalaszReport {
    pub n: usize,
    pub m: usize,
    pub degree: usize,
    /// `max |P|` on the unit circle.
    pub circle_norm: f64,
    /// `max |P|` on `[-1, 1]`.
    pub interval_norm: f64,
    pub value_at_minus1: f64,
    pub deriv_at_minus1: f64,
    pub ratio_nlogn: f64,
}

pub fn halasz_report(n: usize) -> Result<HalaszReport> {
    let p = halasz_polynomial(n)?;
    let on_circle = |theta: f64| p.value(Complex64::from_polar(1.0, theta)).norm();
    let (_, circle_norm) = grid_refine_max(on_circle, 0.0, 2.0 * PI, CIRCLE_GRID, GOLDEN_TOL);
    let minus_one = Complex64::new(-1.0, 0.0);
    let deriv_at_minus1 = p.derivative_value(minus_one).norm();
    Ok(HalaszReport {
        n,
        m: (n - 1) / 2,
        degree: p.roots.len(),
        circle_norm,
        interval_norm: sampled_sup_norm(&p, CIRCLE_GRID).value,
        value_at_minus1: p.value(minus_one).norm(),
        deriv_at_minus1,
        ratio_nlogn: deriv_at_minus1 / (n as f64 * (n as f64).ln()),
    })
}

/// `n log(e / (1 - x^2))` for `|x| < 1`.
pub fn bernstein_factor(x: f64, n: usize) -> Result<f64> {
    if x.is_nan() || x.abs() >= 1.0 {
        return Err(Error::invalid(format!("|x| = {} must be below 1", x.abs())));
    }
    Ok(n as f64 * (1.0 - (-x * x).ln_1p()))
}

/// A polynomial representation that can be scanned on `[-1, 1]`.
pub trait ScanTarget: Evaluate {
    fn require_zero_free(&self) -> Result<()>;
    fn interval_norm(&self, grid: usize) -> Result<f64>;
}

impl ScanTarget for Polynomial {
    fn require_zero_free(&self) -> Result<()> {
        require_zero_free(self)
    }

    fn interval_norm(&self, _grid: usize) -> Result<f64> {
        Ok(sup_norm(self, -1.0, 1.0)?.value)
    }
}

impl ScanTarget for RootForm {
    fn require_zero_free(&self) -> Result<()> {
        match self.innermost_root() {
            Some(root) if root.norm() < 1.0 - DEFAULT_DISK_TOL => Err(Error::NotInClass {
                root,
                modulus: root.norm(),
            }),
            _ => Ok(()),
        }
    }

    fn interval_norm(&self, grid: usize) -> Result<f64> {
        Ok(sampled_sup_norm(self, grid.max(8192)).value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BernsteinScan {
    pub n: usize,
    pub max_ratio: f64,
    pub argmax: f64,
    pub norm: f64,
    pub grid_size: usize,
}

/// `max |p'(x)| / (n log(e/(1-x^2)) ||p||)` over an interior grid of `[-1, 1]`.
pub fn bernstein_scan<P: ScanTarget + ?Sized>(p: &P, grid_size: usize) -> Result<BernsteinScan> {
    p.require_zero_free()?;
    if grid_size < 2 {
        return Err(Error::invalid("scan grid needs at least two points"));
    }
    let n = p.degree();
    let norm = p.interval_norm(grid_size)?;
    let edge = 1.0 - 1e-6;
    let mut best = (f64::NEG_INFINITY, 0.0);
    for k in 0..grid_size {
        let x = -edge + 2.0 * edge * k as f64 / (grid_size - 1) as f64;
        let ratio = p.derivative_value(Complex64::new(x, 0.0)).norm() / (bernstein_factor(x, n)? * norm);
        if ratio > best.0 {
            best = (ratio, x);
        }
    }
    Ok(BernsteinScan {
        n,
        max_ratio: best.0,
        argmax: best.1,
        norm,
        grid_size,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkovBound {
    pub n: usize,
    pub x0: f64,
    /// `2^n / ((1+x0)^n phi_log(x0))` with `x0 = 1 - 2/n`.
    pub x0_bound: f64,
    /// `2^n / ||(1+x)^n phi_log(x)||`.
    pub sharp_bound: f64,
    pub x0_bound_over_log_n: f64,
}

pub fn markov_bound(n: usize) -> Result<MarkovBound> {
    if n < 3 {
        return Err(Error::invalid("Markov bound needs n >= 3"));
    }
    let w = Weight::log_bernstein();
    let nf = n as f64;
    let x0 = 1.0 - 2.0 / nf;
    let x0_bound = (nf * std::f64::consts::LN_2 - nf * x0.ln_1p() - w.ln_at(x0)).exp();
    Ok(MarkovBound {
        n,
        x0,
        x0_bound,
        sharp_bound: schur_constant(&w, n)?,
        x0_bound_over_log_n: x0_bound / nf.ln(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkovChainCheck {
    pub n: usize,
    pub derivative_norm: f64,
    pub weighted_derivative_norm: f64,
    pub bound: f64,
    pub holds: bool,
}

/// `||p'|| <= markov_bound(n) * max_x phi_log(x) |p'(x)|` for `p` of degree `n`.
pub fn markov_chain_check(p: &Polynomial) -> Result<MarkovChainCheck> {
    require_zero_free(p)?;
    let n = p.degree();
    let bound = markov_bound(n)?.x0_bound;
    let dp = p.derivative();
    let derivative_norm = sup_norm(&dp, -1.0, 1.0)?.value;
    let weighted_derivative_norm = weighted_sup_norm(&dp, &Weight::log_bernstein()).value;
    Ok(MarkovChainCheck {
        n,
        derivative_norm,
        weighted_derivative_norm,
        bound,
        holds: derivative_norm <= bound * weighted_derivative_norm * (1.0 + HOLDS_SLACK),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonconvexReport {
    pub a: f64,
    pub p_coeffs: Vec<f64>,
    pub q_coeffs: Vec<f64>,
    pub r_coeffs: Vec<f64>,
    pub p_zero_free: bool,
    pub q_zero_free: bool,
    pub r_zero_free: bool,
    pub p_min_modulus: f64,
    pub q_min_modulus: f64,
    pub root_modulus: f64,
    pub expected_root_modulus: f64,
    pub root_modulus_ok: bool,
    pub lorentz_degree_p: Option<usize>,
    pub lorentz_degree_q: Option<usize>,
    pub lorentz_degree_r: Option<usize>,
    pub lorentz_r_degree2: Vec<f64>,
    pub lorentz_r_degree2_expected: Vec<f64>,
    pub lorentz_coeffs_ok: bool,
    pub all_ok: bool,
}

/// `p = (1-x)(x^2 - 2ax + 1)` and `q = 1 + x + x^2 + x^3` have no zeros in the
/// disk, but their midpoint does.
pub fn reproduce_nonconvex(a: f64) -> Result<NonconvexReport> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::invalid(format!("a = {a} must lie in (0, 1)")));
    }
    let p = &Polynomial::from_real(&[1.0, -1.0]) * &Polynomial::from_real(&[1.0, -2.0 * a, 1.0]);
    let q = Polynomial::from_real(&[1.0, 1.0, 1.0, 1.0]);
    let r = (&p + &q).scale(Complex64::new(0.5, 0.0));

    let (p_zero_free, p_min_modulus) = zero_free_in_disk(&p, DEFAULT_DISK_TOL)?;
    let (q_zero_free, q_min_modulus) = zero_free_in_disk(&q, DEFAULT_DISK_TOL)?;
    let (r_zero_free, _) = zero_free_in_disk(&r, DEFAULT_DISK_TOL)?;
    let r_roots = find_roots(&r)?.roots;
    let expected_root_modulus = 1.0 / (1.0 + a).sqrt();
    let root_modulus = r_roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let root_modulus_ok = r_roots
        .iter()
        .all(|z| (z.norm() - expected_root_modulus).abs() <= 1e-10);

    let lorentz_r_degree2 = to_lorentz(&r, 2)?.a;
    let lorentz_r_degree2_expected = vec![0.5, -a / 2.0, (1.0 + a) / 2.0];
    let lorentz_coeffs_ok = lorentz_r_degree2
        .iter()
        .zip(&lorentz_r_degree2_expected)
        .all(|(x, y)| (x - y).abs() <= 1e-12);

    let lorentz_degree_p = lorentz_degree(&p)?.found();
    let lorentz_degree_q = lorentz_degree(&q)?.found();
    let lorentz_degree_r = lorentz_degree(&r)?.found();
    let all_ok = p_zero_free
        && q_zero_free
        && !r_zero_free
        && root_modulus_ok
        && lorentz_coeffs_ok
        && lorentz_degree_p == Some(3)
        && lorentz_degree_q == Some(3)
        && lorentz_degree_r == Some(3);

    Ok(NonconvexReport {
        a,
        p_coeffs: p.real_coeffs(),
        q_coeffs: q.real_coeffs(),
        r_coeffs: r.real_coeffs(),
        p_zero_free,
        q_zero_free,
        r_zero_free,
        p_min_modulus,
        q_min_modulus,
        root_modulus,
        expected_root_modulus,
        root_modulus_ok,
        lorentz_degree_p,
        lorentz_degree_q,
        lorentz_degree_r,
        lorentz_r_degree2,
        lorentz_r_degree2_expected,
        lorentz_coeffs_ok,
        all_ok,
    })
}
