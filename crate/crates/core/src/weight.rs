//! Decreasing weights on `[0, 1]`, evaluated on `[-1, 1]` through `phi(|x|)`.

use std::fmt;

use crate::error::{Error, Result};

/// Number of points on which monotonicity is checked at construction.
pub const MONOTONE_CHECK_POINTS: usize = 1025;

#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind {
    /// `(1 - t^2)^alpha`.
    Power(f64),
    /// `1 / log(e / (1 - t^2))`.
    LogBernstein,
    /// Piecewise-linear interpolation of `(t, phi(t))` nodes covering `[0, 1]`.
    Tabulated(Vec<(f64, f64)>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    kind: WeightKind,
    scale: f64,
    non_strict: bool,
}

impl Weight {
    pub fn new(kind: WeightKind) -> Result<Self> {
        match &kind {
            WeightKind::Power(alpha) if !(alpha.is_finite() && *alpha > 0.0) => {
                return Err(Error::invalid(format!(
                    "power weight needs alpha > 0, got {alpha}"
                )));
            }
            WeightKind::Tabulated(nodes) => validate_table(nodes)?,
            _ => {}
        }
        let mut weight = Self {
            kind,
            scale: 1.0,
            non_strict: false,
        };
        weight.non_strict = weight.check_monotone()?;
        Ok(weight)
    }

    pub fn power(alpha: f64) -> Result<Self> {
        Self::new(WeightKind::Power(alpha))
    }

    pub fn log_bernstein() -> Self {
        Self::new(WeightKind::LogBernstein).expect("log weight is valid")
    }

    pub fn tabulated(nodes: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(WeightKind::Tabulated(nodes))
    }

    /// The weight identically equal to one.
    pub fn unit() -> Self {
        Self::tabulated(vec![(0.0, 1.0), (1.0, 1.0)]).expect("constant table is valid")
    }

    /// `c * phi` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::invalid(format!("weight scale must be positive, got {c}")));
        }
        Ok(Self {
            scale: self.scale * c,
            ..self.clone()
        })
    }

    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }

    /// Set when the weight is only non-increasing (has flat pieces).
    pub fn is_non_strict(&self) -> bool {
        self.non_strict
    }

    pub fn power_alpha(&self) -> Option<f64> {
        match self.kind {
            WeightKind::Power(alpha) if self.scale == 1.0 => Some(alpha),
            _ => None,
        }
    }

    /// `phi(t)` for `t` in `[0, 1]`.
    pub fn at(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, 1.0);
        let value = match &self.kind {
            WeightKind::Power(alpha) => {
                let base = (1.0 - t) * (1.0 + t);
                match *alpha {
                    1.0 => base,
                    0.5 => base.sqrt(),
                    _ => base.powf(*alpha),
                }
            }
            WeightKind::LogBernstein => 1.0 / (1.0 - (-t * t).ln_1p()),
            WeightKind::Tabulated(nodes) => interpolate(nodes, t),
        };
        self.scale * value
    }

    /// Even extension to `[-1, 1]`.
    pub fn at_signed(&self, x: f64) -> f64 {
        self.at(x.abs())
    }

    /// `ln phi(t)`; `-inf` where the weight vanishes.
    pub fn ln_at(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, 1.0);
        match &self.kind {
            WeightKind::Power(alpha) => alpha * (-t * t).ln_1p() + self.scale.ln(),
            _ => self.at(t).ln(),
        }
    }

    /// `d/dt ln phi(t)` where a closed form exists.
    pub fn ln_derivative(&self, t: f64) -> Option<f64> {
        let one_minus = (1.0 - t) * (1.0 + t);
        match &self.kind {
            WeightKind::Power(alpha) => Some(-2.0 * alpha * t / one_minus),
            WeightKind::LogBernstein => {
                let log_term = 1.0 - (-t * t).ln_1p();
                Some(-2.0 * t / (one_minus * log_term))
            }
            WeightKind::Tabulated(_) => None,
        }
    }

    fn check_monotone(&self) -> Result<bool> {
        let m = MONOTONE_CHECK_POINTS - 1;
        let values: Vec<f64> = (0..=m).map(|k| self.at(k as f64 / m as f64)).collect();
        if values[..m].iter().any(|&v| !(v > 0.0 && v.is_finite())) || values[m] < 0.0 {
            return Err(Error::DegenerateWeight(
                "weight must be positive on [0, 1) and nonnegative at 1".into(),
            ));
        }
        let mut flat = false;
        for pair in values.windows(2) {
            if pair[1] > pair[0] {
                return Err(Error::DegenerateWeight("weight is not decreasing".into()));
            }
            flat |= pair[1] == pair[0];
        }
        Ok(flat)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            WeightKind::Power(alpha) => write!(f, "power:{alpha}")?,
            WeightKind::LogBernstein => write!(f, "logbern")?,
            WeightKind::Tabulated(nodes) => write!(f, "table:{}", nodes.len())?,
        }
        if self.scale != 1.0 {
            write!(f, "*{}", self.scale)?;
        }
        Ok(())
    }
}

fn validate_table(nodes: &[(f64, f64)]) -> Result<()> {
    if nodes.len() < 2 {
        return Err(Error::invalid("weight table needs at least two nodes"));
    }
    if nodes.iter().any(|(t, v)| !t.is_finite() || !v.is_finite()) {
        return Err(Error::invalid("weight table entries must be finite"));
    }
    if nodes[0].0 != 0.0 || nodes[nodes.len() - 1].0 != 1.0 {
        return Err(Error::invalid(
            "weight table must start at t = 0 and end at t = 1",
        ));
    }
    if nodes.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(Error::invalid("weight table abscissae must increase strictly"));
    }
    Ok(())
}

fn interpolate(nodes: &[(f64, f64)], t: f64) -> f64 {
    let idx = nodes.partition_point(|&(s, _)| s <= t);
    if idx == 0 {
        return nodes[0].1;
    }
    if idx == nodes.len() {
        return nodes[nodes.len() - 1].1;
    }
    let (t0, v0) = nodes[idx - 1];
    let (t1, v1) = nodes[idx];
    v0 + (v1 - v0) * (t - t0) / (t1 - t0)
}

/// Parses `power:<alpha>`, `logbern` or `table:<path>`.
pub fn parse_weight(spec: &str) -> Result<Weight> {
    if spec == "logbern" {
        return Ok(Weight::log_bernstein());
    }
    if let Some(alpha) = spec.strip_prefix("power:") {
        let alpha: f64 = alpha
            .parse()
            .map_err(|_| Error::invalid(format!("bad power exponent {alpha:?}")))?;
        return Weight::power(alpha);
    }
    if let Some(path) = spec.strip_prefix("table:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read weight table {path}: {e}")))?;
        return Weight::tabulated(parse_table(&text)?);
    }
    Err(Error::invalid(format!(
        "unknown weight {spec:?}; expected power:<alpha>, logbern or table:<path>"
    )))
}

/// A JSON array of `[t, phi]` pairs, or one `t phi` pair per line
/// (comma or whitespace separated, `#` comments allowed).
pub fn parse_table(text: &str) -> Result<Vec<(f64, f64)>> {
    if text.trim_start().starts_with('[') {
        return serde_json::from_str::<Vec<(f64, f64)>>(text)
            .map_err(|e| Error::invalid(format!("bad weight table JSON: {e}")));
    }
    let mut nodes = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let [t, v] = fields[..] else {
            return Err(Error::invalid(format!("bad weight table line {line:?}")));
        };
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::invalid(format!("bad number {s:?} in weight table")))
        };
        nodes.push((parse(t)?, parse(v)?));
    }
    Ok(nodes)
}
