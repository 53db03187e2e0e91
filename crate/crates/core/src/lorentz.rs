//! Representations `p(x) = sum_k a_k (1-x)^k (1+x)^(d-k)`, degree elevation,
//! the minimal degree admitting nonnegative coefficients, and the Bernstein
//! operator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norm::{sup_norm, weighted_sup_norm};
use crate::poly::Polynomial;
use crate::roots::{find_roots, zero_free_in_disk, DEFAULT_DISK_TOL};
use crate::schur::{equality_case_detect, schur_constant_power, SchurReport};
use crate::weight::Weight;

pub const DEFAULT_SIGN_TOL: f64 = 1e-11;
pub const DEFAULT_MAX_DEGREE: usize = 10_000;
/// Interior points of `(-1, 1)` probed before searching for a representation.
pub const CLASS_PROBE_POINTS: usize = 2049;
const REAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LorentzRep {
    pub d: usize,
    pub a: Vec<f64>,
}

impl LorentzRep {
    /// Coefficients in the monomial basis.
    pub fn expand(&self) -> Polynomial {
        let mut out = vec![0.0; self.d + 1];
        for (k, &ak) in self.a.iter().enumerate() {
            if ak == 0.0 {
                continue;
            }
            // (1-x)^k (1+x)^(d-k)
            let basis = mul_real(&binomial_row(k, -1.0), &binomial_row(self.d - k, 1.0));
            for (slot, b) in out.iter_mut().zip(basis) {
                *slot += ak * b;
            }
        }
        Polynomial::from_real(&out)
    }

    /// The same polynomial at degree `d + 1`: `a'_k = (a_{k-1} + a_k) / 2`.
    pub fn elevate(&self) -> Self {
        let at = |k: usize| self.a.get(k).copied().unwrap_or(0.0);
        let a = (0..=self.d + 1)
            .map(|k| 0.5 * (if k > 0 { at(k - 1) } else { 0.0 } + at(k)))
            .collect();
        Self { d: self.d + 1, a }
    }

    /// Every coefficient is at least `-tol * max |a_k|`.
    pub fn is_nonnegative(&self, tol: f64) -> bool {
        let scale = self.a.iter().map(|v| v.abs()).fold(0.0, f64::max);
        self.a.iter().all(|&v| v >= -tol * scale)
    }
}

/// Ascending coefficients of `(1 + sign * x)^m`.
fn binomial_row(m: usize, sign: f64) -> Vec<f64> {
    let mut row = Vec::with_capacity(m + 1);
    let mut binom = 1.0_f64;
    for k in 0..=m {
        row.push(if k % 2 == 1 { sign * binom } else { binom });
        binom = binom * (m - k) as f64 / (k + 1) as f64;
    }
    row
}

fn mul_real(p: &[f64], q: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn require_real(p: &Polynomial) -> Result<Vec<f64>> {
    if !p.is_real(REAL_TOL) {
        return Err(Error::invalid("polynomial must have real coefficients"));
    }
    Ok(p.real_coeffs())
}

/// Representation of a real polynomial at degree `d >= deg p`.
///
/// With `u = 1 - x`, `v = 1 + x`, each monomial `x^j` becomes
/// `((v - u)/2)^j ((u + v)/2)^(d - j)`; the coefficient of `u^k v^(d-k)` is `a_k`.
pub fn to_lorentz(p: &Polynomial, d: usize) -> Result<LorentzRep> {
    let coeffs = require_real(p)?;
    if d < p.degree() {
        return Err(Error::invalid(format!(
            "representation degree {d} is below the polynomial degree {}",
            p.degree()
        )));
    }
    let mut a = vec![0.0; d + 1];
    for (j, &c) in coeffs.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        // in t = u with v = 1: ((1 - t)/2)^j ((1 + t)/2)^(d - j)
        let term = mul_real(&binomial_row(j, -1.0), &binomial_row(d - j, 1.0));
        let scale = c * 0.5f64.powi(d as i32);
        for (slot, t) in a.iter_mut().zip(term) {
            *slot += scale * t;
        }
    }
    Ok(LorentzRep { d, a })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "d")]
pub enum DegreeStatus {
    Found(usize),
    ExceededLimit(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeVerdict {
    pub status: DegreeStatus,
    pub elevations_performed: usize,
    /// True when the input was negated to make it positive on `(-1, 1)`.
    pub negated: bool,
    /// Representation at the returned degree.
    pub representation: LorentzRep,
}

impl DegreeVerdict {
    pub fn found(&self) -> Option<usize> {
        match self.status {
            DegreeStatus::Found(d) => Some(d),
            DegreeStatus::ExceededLimit(_) => None,
        }
    }
}

/// Fails when `p` has a zero in `(-1, 1)`: a sign change or exact zero on the
/// interior probe grid, or a located root that is real to within `1e-7` and
/// lies inside the interval. Roots at the endpoints are allowed.
fn check_lorentz_class(p: &Polynomial) -> Result<()> {
    let m = CLASS_PROBE_POINTS + 1;
    let mut last_sign = 0.0;
    for k in 1..m {
        let x = -1.0 + 2.0 * k as f64 / m as f64;
        let v = p.eval_real(x).re;
        if v == 0.0 || (last_sign != 0.0 && v.signum() != last_sign) {
            return Err(Error::NotInLorentzClass { x });
        }
        last_sign = v.signum();
    }
    if p.degree() == 0 {
        return Ok(());
    }
    const REAL_AXIS_TOL: f64 = 1e-7;
    for z in find_roots(p)?.roots {
        if z.im.abs() <= REAL_AXIS_TOL * z.norm().max(1.0) && z.re.abs() < 1.0 - REAL_AXIS_TOL {
            return Err(Error::NotInLorentzClass { x: z.re });
        }
    }
    Ok(())
}

pub fn lorentz_degree(p: &Polynomial) -> Result<DegreeVerdict> {
    lorentz_degree_with(p, DEFAULT_SIGN_TOL, DEFAULT_MAX_DEGREE)
}

/// Smallest `d >= deg p` whose representation has nonnegative coefficients
/// (up to the relative tolerance `tol`), found by elevating one degree at a time.
pub fn lorentz_degree_with(p: &Polynomial, tol: f64, d_max: usize) -> Result<DegreeVerdict> {
    if p.is_zero() {
        return Err(Error::invalid("the zero polynomial has no Lorentz degree"));
    }
    require_real(p)?;
    check_lorentz_class(p)?;
    let negated = p.eval_real(0.0).re < 0.0;
    let p = if negated { -p } else { p.clone() };

    let mut rep = to_lorentz(&p, p.degree())?;
    let mut elevations = 0;
    while !rep.is_nonnegative(tol) {
        if rep.d >= d_max {
            return Ok(DegreeVerdict {
                status: DegreeStatus::ExceededLimit(d_max),
                elevations_performed: elevations,
                negated,
                representation: rep,
            });
        }
        rep = rep.elevate();
        elevations += 1;
    }
    Ok(DegreeVerdict {
        status: DegreeStatus::Found(rep.d),
        elevations_performed: elevations,
        negated,
        representation: rep,
    })
}

/// For a real polynomial without zeros in the open unit disk, checks that the
/// minimal nonnegative representation degree is the algebraic degree.
pub fn verify_degree_theorem(p: &Polynomial) -> Result<bool> {
    let (zero_free, _) = zero_free_in_disk(p, DEFAULT_DISK_TOL)?;
    if !zero_free {
        return Err(Error::invalid("polynomial has a root inside the unit disk"));
    }
    Ok(lorentz_degree(p)?.found() == Some(p.degree()))
}

/// `B_n(f, x) = 2^-n sum_k f((2k - n)/n) C(n, k) (1 + x)^k (1 - x)^(n - k)`,
/// with `samples[k] = f((2k - n)/n)`.
pub fn bernstein_operator(samples: &[f64], n: usize) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::invalid("Bernstein operator needs n >= 1"));
    }
    if samples.len() != n + 1 {
        return Err(Error::invalid(format!(
            "expected {} samples for n = {n}, got {}",
            n + 1,
            samples.len()
        )));
    }
    // (1+x)^k (1-x)^(n-k) is the basis element with index n - k
    let row = binomial_row(n, 1.0);
    let scale = 0.5f64.powi(n as i32);
    let mut a = vec![0.0; n + 1];
    for (k, &s) in samples.iter().enumerate() {
        a[n - k] = s * row[k] * scale;
    }
    Ok(LorentzRep { d: n, a }.expand())
}

/// Checks `||p|| <= C(d, alpha) ||p(x) (1 - x^2)^alpha||` with `d` the
/// minimal nonnegative representation degree of `p`.
pub fn verify_lorentz_schur(p: &Polynomial, alpha: f64) -> Result<SchurReport> {
    let weight = Weight::power(alpha)?;
    let verdict = lorentz_degree(p)?;
    let d = verdict.found().ok_or_else(|| Error::NumericFailure {
        message: format!("Lorentz degree exceeds {DEFAULT_MAX_DEGREE}"),
        best: Vec::new(),
    })?;
    let constant = schur_constant_power(d, alpha);
    let norm_p = sup_norm(p, -1.0, 1.0)?.value;
    let norm_pw = weighted_sup_norm(p, &weight).value;
    let ratio = norm_p / norm_pw;
    let df = d as f64;
    Ok(SchurReport {
        n: p.degree(),
        weight: weight.to_string(),
        a: df / (df + 2.0 * alpha),
        constant,
        norm_p,
        norm_pw,
        ratio,
        holds: ratio <= constant * (1.0 + crate::schur::HOLDS_SLACK),
        equality_case: p.degree() == 0 || equality_case_detect(p)?,
        lorentz_degree: Some(d),
        note: None,
    })
}
