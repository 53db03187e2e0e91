//! Polynomial JSON input and a float-faithful JSON writer.
//!
//! A polynomial is either `{"coeffs": [[re, im], ...]}` (ascending) or
//! `{"roots": [[re, im], ...], "leading": [re, im]}`. Real numbers are accepted
//! wherever a complex pair is expected.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, RootForm};

/// A parsed polynomial, keeping the root form when that is how it was given.
#[derive(Debug, Clone, PartialEq)]
pub enum PolyInput {
    Coeffs(Polynomial),
    Roots(RootForm),
}

impl PolyInput {
    pub fn polynomial(&self) -> Polynomial {
        match self {
            PolyInput::Coeffs(p) => p.clone(),
            PolyInput::Roots(form) => form.expand(),
        }
    }
}

fn complex_from(value: &Value, what: &str) -> Result<Complex64> {
    let number = |v: &Value| {
        v.as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::invalid(format!("{what}: expected a finite number, got {v}")))
    };
    match value {
        Value::Number(_) => Ok(Complex64::new(number(value)?, 0.0)),
        Value::Array(pair) if pair.len() == 2 => Ok(Complex64::new(number(&pair[0])?, number(&pair[1])?)),
        other => Err(Error::invalid(format!("{what}: expected [re, im], got {other}"))),
    }
}

fn complex_list(value: &Value, what: &str) -> Result<Vec<Complex64>> {
    value
        .as_array()
        .ok_or_else(|| Error::invalid(format!("{what} must be an array")))?
        .iter()
        .map(|v| complex_from(v, what))
        .collect()
}

pub fn parse_poly_value(value: &Value) -> Result<PolyInput> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::invalid("polynomial must be a JSON object"))?;
    match (obj.get("coeffs"), obj.get("roots")) {
        (Some(_), Some(_)) => Err(Error::invalid("give either \"coeffs\" or \"roots\", not both")),
        (Some(coeffs), None) => {
            let coeffs = complex_list(coeffs, "coeffs")?;
            if coeffs.is_empty() {
                return Err(Error::invalid("coeffs must not be empty"));
            }
            Ok(PolyInput::Coeffs(Polynomial::new(coeffs)))
        }
        (None, Some(roots)) => {
            let roots = complex_list(roots, "roots")?;
            let leading = match obj.get("leading") {
                Some(v) => complex_from(v, "leading")?,
                None => Complex64::new(1.0, 0.0),
            };
            Ok(PolyInput::Roots(RootForm::new(leading, roots)?))
        }
        (None, None) => Err(Error::invalid("polynomial needs \"coeffs\" or \"roots\"")),
    }
}

pub fn parse_poly(text: &str) -> Result<PolyInput> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad polynomial JSON: {e}")))?;
    parse_poly_value(&value)
}

fn pairs(values: &[Complex64]) -> Value {
    Value::Array(
        values
            .iter()
            .map(|z| Value::Array(vec![float(z.re), float(z.im)]))
            .collect(),
    )
}

fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn poly_to_value(p: &Polynomial) -> Value {
    serde_json::json!({ "coeffs": pairs(p.coeffs()) })
}

pub fn root_form_to_value(form: &RootForm) -> Value {
    serde_json::json!({
        "roots": pairs(&form.roots),
        "leading": pairs(&[form.leading])[0].clone(),
    })
}

/// `x` with 17 significant digits, C `%.17g` style.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let fixed = format!("{:.*}", (16 - exp) as usize, x);
        strip_zeros(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn write_value(out: &mut String, value: &Value, indent: usize) {
    let pad = |out: &mut String, level: usize| {
        out.push('\n');
        out.extend(std::iter::repeat_n(' ', 2 * level));
    };
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => match (n.as_i64(), n.as_u64(), n.as_f64()) {
            (Some(i), _, _) => out.push_str(&i.to_string()),
            (_, Some(u), _) => out.push_str(&u.to_string()),
            (_, _, Some(f)) => out.push_str(&format_g17(f)),
            _ => out.push_str(&n.to_string()),
        },
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string serializes")),
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            // Rows of plain numbers, such as complex pairs, stay on one line.
            let flat = items.iter().all(|v| v.is_number() || v.is_null());
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                    if flat {
                        out.push(' ');
                    }
                }
                if !flat {
                    pad(out, indent + 1);
                }
                write_value(out, item, indent + 1);
            }
            if !flat {
                pad(out, indent);
            }
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push('{');
            for (k, (key, item)) in map.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                pad(out, indent + 1);
                out.push_str(&serde_json::to_string(key).expect("key serializes"));
                out.push_str(": ");
                write_value(out, item, indent + 1);
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

/// Pretty JSON with every float printed to 17 significant digits.
pub fn to_json_string(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let value =
        serde_json::to_value(value).map_err(|e| Error::invalid(format!("cannot serialize report: {e}")))?;
    Ok(to_json_string(&value))
}
