//! The acceptance suite: one deterministic check per criterion.
//!
//! Output depends only on the seed and the scale, never on timing or thread
//! scheduling.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::extremal::{
    extremal_search, halasz_report, markov_bound, markov_chain_check, reproduce_nonconvex,
};
use crate::lorentz::{lorentz_degree, to_lorentz, DegreeStatus};
use crate::norm::sup_norm;
use crate::poly::Polynomial;
use crate::roots::{find_roots, zero_free_in_disk, DEFAULT_DISK_TOL};
use crate::sample::{random_real_zero_free, random_zero_free, stream_rng};
use crate::schur::{
    check_lemma_bound, erdelyi_remark_bound, schur_constant, schur_constant_power, verify_schur, HOLDS_SLACK,
};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Small degrees and sample sizes, for a run of a few seconds.
    pub quick: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            seed: 1,
            quick: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark} {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

type Check = fn(&SuiteOptions) -> Result<(bool, String)>;

const CRITERIA: [(u32, &str, Check); 12] = [
    (1, "constant cross-check", constant_cross_check),
    (2, "sharpness and equality", sharpness),
    (3, "class-wide validity", class_validity),
    (4, "strictness away from the endpoints", strictness),
    (
        5,
        "Lorentz degree of real zero-free polynomials",
        lorentz_degree_theorem,
    ),
    (6, "non-convexity example", nonconvexity),
    (7, "Halasz example", halasz),
    (8, "factor lemma", factor_lemma),
    (9, "squared-polynomial identity", erdelyi_identity),
    (10, "Markov pipeline", markov_pipeline),
    (11, "extremal search", extremal),
    (12, "norm oracle equivalence", norm_oracle),
];

pub fn criterion_ids() -> impl Iterator<Item = u32> {
    CRITERIA.iter().map(|c| c.0)
}

/// Runs one criterion. Unknown ids yield `None`.
pub fn run_criterion(id: u32, opts: &SuiteOptions) -> Option<CriterionOutcome> {
    let &(id, name, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let (passed, detail) = check(opts).unwrap_or_else(|e| (false, format!("error: {e}")));
    Some(CriterionOutcome {
        id,
        name,
        passed,
        detail,
    })
}

pub fn run_all(opts: &SuiteOptions) -> Vec<CriterionOutcome> {
    criterion_ids().filter_map(|id| run_criterion(id, opts)).collect()
}

fn rel_diff(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs())
}

fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

fn constant_cross_check(opts: &SuiteOptions) -> Result<(bool, String)> {
    let n_max = if opts.quick { 6 } else { 20 };
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for &alpha in &[0.25, 0.5, 1.0, 2.0] {
        let w = Weight::power(alpha)?;
        for n in 1..=n_max {
            worst = worst.max(rel_diff(schur_constant(&w, n)?, schur_constant_power(n, alpha)));
            cases += 1;
        }
    }
    Ok((
        worst <= 1e-10,
        format!("{cases} cases, max relative difference {}", sci(worst)),
    ))
}

fn sharpness(opts: &SuiteOptions) -> Result<(bool, String)> {
    let n_max = if opts.quick { 6 } else { 12 };
    let weights = [Weight::power(0.5)?, Weight::power(1.0)?, Weight::log_bernstein()];
    let mut worst: f64 = 0.0;
    let mut missed_equality = 0;
    let mut cases = 0;
    for w in &weights {
        for n in 1..=n_max {
            for sign in [1.0, -1.0] {
                let report = verify_schur(&Polynomial::one_plus_sign_x_pow(sign, n), w)?;
                worst = worst.max((report.ratio - report.constant).abs());
                missed_equality += usize::from(!report.equality_case);
                cases += 1;
            }
        }
    }
    Ok((
        worst <= 1e-9 && missed_equality == 0,
        format!(
            "{cases} cases, max |ratio - constant| {}, equality not detected in {missed_equality}",
            sci(worst)
        ),
    ))
}

struct ClassSample {
    p: Polynomial,
    interior_root: bool,
}

/// Random members of the complex class, with a flag for a root at distance at
/// least 0.1 from both endpoints.
fn class_sample(opts: &SuiteOptions) -> Vec<ClassSample> {
    let (count, n_max) = if opts.quick { (100, 6) } else { (1000, 8) };
    let mut rng = stream_rng(opts.seed, 3);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=n_max);
            let form = random_zero_free(&mut rng, n, 3.0);
            let interior_root = form
                .roots
                .iter()
                .any(|z| (z - 1.0).norm() >= 0.1 && (z + 1.0).norm() >= 0.1);
            ClassSample {
                p: form.expand(),
                interior_root,
            }
        })
        .collect()
}

/// `(ratio, constant)` for each sample and each of the two power weights.
fn class_ratios(samples: &[ClassSample]) -> Result<Vec<(bool, f64, f64)>> {
    let weights = [Weight::power(0.5)?, Weight::power(1.0)?];
    let rows: Vec<Result<Vec<(bool, f64, f64)>>> = samples
        .par_iter()
        .map(|s| {
            weights
                .iter()
                .map(|w| verify_schur(&s.p, w).map(|r| (s.interior_root, r.ratio, r.constant)))
                .collect()
        })
        .collect();
    Ok(rows.into_iter().collect::<Result<Vec<_>>>()?.concat())
}

fn class_validity(opts: &SuiteOptions) -> Result<(bool, String)> {
    let samples = class_sample(opts);
    let ratios = class_ratios(&samples)?;
    let violations = ratios
        .iter()
        .filter(|(_, ratio, constant)| *ratio > constant * (1.0 + HOLDS_SLACK))
        .count();
    let worst = ratios.iter().map(|(_, r, c)| r / c).fold(0.0, f64::max);
    Ok((
        violations == 0,
        format!(
            "{} polynomials x 2 weights, {violations} violations, max ratio/constant {}",
            samples.len(),
            sci(worst)
        ),
    ))
}

fn strictness(opts: &SuiteOptions) -> Result<(bool, String)> {
    let samples = class_sample(opts);
    let ratios = class_ratios(&samples)?;
    let interior: Vec<f64> = ratios
        .iter()
        .filter(|(flag, _, _)| *flag)
        .map(|(_, r, c)| r / c)
        .collect();
    let worst = interior.iter().copied().fold(0.0, f64::max);
    let not_strict = interior.iter().filter(|&&q| q.is_nan() || q >= 1.0 - 1e-12).count();
    Ok((
        not_strict == 0 && !interior.is_empty(),
        format!(
            "{} ratios with an interior root, {not_strict} not strictly below the constant, max ratio/constant {}",
            interior.len(),
            sci(worst)
        ),
    ))
}

fn lorentz_degree_theorem(opts: &SuiteOptions) -> Result<(bool, String)> {
    let (count, n_max) = if opts.quick { (100, 6) } else { (500, 10) };
    let mut rng = stream_rng(opts.seed, 5);
    let polys: Vec<Polynomial> = (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=n_max);
            random_real_zero_free(&mut rng, n, 3.0)
        })
        .collect();
    let verdicts: Vec<Result<bool>> = polys
        .par_iter()
        .map(|p| Ok(lorentz_degree(p)?.status == DegreeStatus::Found(p.degree())))
        .collect();
    let mismatches = verdicts
        .into_iter()
        .collect::<Result<Vec<bool>>>()?
        .iter()
        .filter(|ok| !**ok)
        .count();
    Ok((
        mismatches == 0,
        format!("{count} polynomials, {mismatches} with Lorentz degree different from the degree"),
    ))
}

fn nonconvexity(_opts: &SuiteOptions) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut worst_modulus: f64 = 0.0;
    let mut worst_coeff: f64 = 0.0;
    for k in 1..=9 {
        let a = k as f64 / 10.0;
        let report = reproduce_nonconvex(a)?;
        let r = Polynomial::from_real(&report.r_coeffs);
        let expected = (1.0 + a).powf(-0.5);
        for z in find_roots(&r)?.roots {
            worst_modulus = worst_modulus.max((z.norm() - expected).abs());
        }
        let rep = to_lorentz(&r, 2)?;
        for (got, want) in rep.a.iter().zip([0.5, -a / 2.0, (1.0 + a) / 2.0]) {
            worst_coeff = worst_coeff.max((got - want).abs());
        }
        let p = Polynomial::from_real(&report.p_coeffs);
        let q = Polynomial::from_real(&report.q_coeffs);
        let ok = zero_free_in_disk(&p, DEFAULT_DISK_TOL)?.0
            && zero_free_in_disk(&q, DEFAULT_DISK_TOL)?.0
            && !zero_free_in_disk(&r, DEFAULT_DISK_TOL)?.0
            && lorentz_degree(&r)?.status == DegreeStatus::Found(3)
            && report.all_ok;
        if !ok {
            failures.push(format!("{a}"));
        }
    }
    let passed = failures.is_empty() && worst_modulus <= 1e-10 && worst_coeff <= 1e-12;
    let failed = if failures.is_empty() {
        "none".to_string()
    } else {
        failures.join(",")
    };
    Ok((
        passed,
        format!(
            "a = 0.1..0.9, root modulus error {}, coefficient error {}, failed a: {failed}",
            sci(worst_modulus),
            sci(worst_coeff)
        ),
    ))
}

fn halasz(opts: &SuiteOptions) -> Result<(bool, String)> {
    let ns: &[usize] = if opts.quick {
        &[5, 11, 21]
    } else {
        &[5, 11, 21, 41, 81, 161, 321]
    };
    let reports = ns
        .par_iter()
        .map(|&n| halasz_report(n))
        .collect::<Result<Vec<_>>>()?;
    let value_err = reports
        .iter()
        .map(|r| (r.value_at_minus1 - 2.0).abs())
        .fold(0.0, f64::max);
    let circle_err = reports
        .iter()
        .map(|r| (r.circle_norm - 2.0).abs())
        .fold(0.0, f64::max);
    let ratios: Vec<f64> = reports.iter().map(|r| r.ratio_nlogn).collect();
    let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let band = hi / lo;
    let passed = value_err <= 1e-12 && circle_err <= 1e-6 && lo > 0.0 && band <= 1.5;
    Ok((
        passed,
        format!(
            "|P(-1)| error {}, circle norm {:.6} at n={} (max |circle norm - 2| {}), ratio_nlogn in [{:.4}, {:.4}], max/min {:.4}",
            sci(value_err),
            reports[0].circle_norm,
            reports[0].n,
            sci(circle_err),
            lo,
            hi,
            band
        ),
    ))
}

fn factor_lemma(opts: &SuiteOptions) -> Result<(bool, String)> {
    let count = if opts.quick { 10_000 } else { 100_000 };
    let mut rng = stream_rng(opts.seed, 8);
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let r = if rng.gen_bool(0.1) {
            1.0
        } else {
            rng.gen_range(1.0..5.0)
        };
        let z = Complex64::from_polar(r, rng.gen_range(0.0..2.0 * PI));
        let a: f64 = rng.gen_range(f64::EPSILON..1.0);
        let x = rng.gen_range(a..=1.0);
        let (ratio, holds) = check_lemma_bound(z, x, a)?;
        failures += usize::from(!holds);
        worst = worst.max(ratio * (1.0 + a) / 2.0);
    }
    let mut witness_err: f64 = 0.0;
    for k in 1..100 {
        let a = k as f64 / 100.0;
        let (ratio, _) = check_lemma_bound(Complex64::new(-1.0, 0.0), 1.0, a)?;
        witness_err = witness_err.max(rel_diff(ratio, 2.0 / (1.0 + a)));
    }
    Ok((
        failures == 0 && witness_err <= 4.0 * f64::EPSILON,
        format!(
            "{count} triples, {failures} violations, max ratio/bound {}, equality witness relative error {}",
            sci(worst),
            sci(witness_err)
        ),
    ))
}

fn erdelyi_identity(opts: &SuiteOptions) -> Result<(bool, String)> {
    let mut constant_err: f64 = 0.0;
    for &alpha in &[0.5, 1.0] {
        let doubled = Weight::power(2.0 * alpha)?;
        for n in 1..=6 {
            let squared = schur_constant_power(n, alpha).powi(2);
            constant_err = constant_err.max(rel_diff(schur_constant(&doubled, 2 * n)?, squared));
        }
    }
    let count = if opts.quick { 20 } else { 50 };
    let mut rng = stream_rng(opts.seed, 9);
    let mut norm_err: f64 = 0.0;
    let mut broken = 0;
    for k in 0..count {
        let n = rng.gen_range(1..=6);
        let p = random_zero_free(&mut rng, n, 3.0).expand();
        let report = erdelyi_remark_bound(&p, if k % 2 == 0 { 0.5 } else { 1.0 })?;
        norm_err = norm_err.max(rel_diff(report.norm_p_star, report.norm_p_squared));
        broken += usize::from(!(report.norm_identity_holds && report.bound_respected));
    }
    Ok((
        constant_err <= 1e-9 && norm_err <= 1e-9 && broken == 0,
        format!(
            "constant identity error {}, norm identity error {} over {count} polynomials",
            sci(constant_err),
            sci(norm_err)
        ),
    ))
}

fn markov_pipeline(opts: &SuiteOptions) -> Result<(bool, String)> {
    let n_top = if opts.quick { 50 } else { 200 };
    let mut sup: f64 = 0.0;
    let mut finite = true;
    let mut ordered = true;
    for n in 4..=n_top {
        let m = markov_bound(n)?;
        finite &= m.x0_bound_over_log_n.is_finite() && m.x0_bound > 0.0;
        ordered &= m.sharp_bound <= m.x0_bound * (1.0 + 1e-12);
        sup = sup.max(m.x0_bound_over_log_n);
    }
    let (count, n_max) = if opts.quick { (30, 6) } else { (100, 8) };
    let mut rng = stream_rng(opts.seed, 10);
    let polys: Vec<Polynomial> = (0..count)
        .map(|_| {
            let n = rng.gen_range(3..=n_max);
            random_zero_free(&mut rng, n, 3.0).expand()
        })
        .collect();
    let checks = polys
        .par_iter()
        .map(markov_chain_check)
        .collect::<Result<Vec<_>>>()?;
    let failures = checks.iter().filter(|c| !c.holds).count();
    let worst = checks
        .iter()
        .map(|c| c.derivative_norm / (c.bound * c.weighted_derivative_norm))
        .fold(0.0, f64::max);
    Ok((
        finite && ordered && failures == 0,
        format!(
            "sup over n = 4..{n_top} of bound/log n = {:.6}, {count} chained checks, {failures} failures, max lhs/rhs {}",
            sup,
            sci(worst)
        ),
    ))
}

fn extremal(opts: &SuiteOptions) -> Result<(bool, String)> {
    let trials = if opts.quick { 100 } else { 200 };
    let w = Weight::power(0.5)?;
    let mut passed = true;
    let mut parts = Vec::new();
    for n in 2..=4 {
        let result = extremal_search(n, &w, trials, opts.seed)?;
        let spread = [-1.0, 1.0]
            .iter()
            .map(|&t| {
                result
                    .best_roots
                    .iter()
                    .map(|z| (z - t).norm())
                    .fold(0.0, f64::max)
            })
            .fold(f64::INFINITY, f64::min);
        let ok = result.best_ratio <= result.constant * (1.0 + HOLDS_SLACK)
            && result.violations == 0
            && result.gap <= 1e-3
            && spread <= 1e-2;
        passed &= ok;
        parts.push(format!(
            "n={n} gap {} root spread {} violations {}",
            sci(result.gap),
            sci(spread),
            result.violations
        ));
    }
    Ok((passed, format!("{trials} trials; {}", parts.join("; "))))
}

/// Maximum of `|p|` over `points + 1` equispaced nodes of `[-1, 1]`.
pub fn dense_grid_norm(p: &Polynomial, points: usize) -> f64 {
    (0..=points)
        .map(|k| p.eval_real(-1.0 + 2.0 * k as f64 / points as f64).norm())
        .fold(0.0, f64::max)
}

fn norm_oracle(opts: &SuiteOptions) -> Result<(bool, String)> {
    let count = if opts.quick { 20 } else { 200 };
    let mut rng = stream_rng(opts.seed, 12);
    let polys: Vec<Polynomial> = (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=12);
            let coeffs = (0..=n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            Polynomial::new(coeffs)
        })
        .collect();
    let errors = polys
        .par_iter()
        .map(|p| {
            Ok(rel_diff(
                sup_norm(p, -1.0, 1.0)?.value,
                dense_grid_norm(p, 1_000_000),
            ))
        })
        .collect::<Result<Vec<f64>>>()?;
    let worst = errors.iter().copied().fold(0.0, f64::max);
    Ok((
        worst <= 1e-8,
        format!("{count} polynomials, max relative difference {}", sci(worst)),
    ))
}
