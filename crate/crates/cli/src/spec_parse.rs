//! The state mini-language: `kind[:key=value[,key=value...]]`.
//!
//! Missing keys take defaults (`alpha=0`, `m=1`, `x=0`, `n=0`), so a bare
//! kind works as a sweep template.

use nonclassical::states::{Family, LowTOrder, StateSpec};
use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error(transparent)]
    Domain(#[from] nonclassical::Error),
}

fn parse_err(position: usize, message: impl Into<String>) -> SpecError {
    SpecError::Parse { position, message: message.into() }
}

const KINDS: [&str; 7] = ["fock", "coherent", "pacs", "thermal", "pa_thermal", "pa_thermal_o1", "pa_thermal_o2"];

fn allowed_keys(kind: &str) -> &'static [&'static str] {
    match kind {
        "fock" => &["n", "dim"],
        "coherent" => &["alpha", "dim"],
        "pacs" => &["alpha", "m", "dim"],
        _ => &["x", "dim"],
    }
}

#[derive(Default)]
struct Fields {
    alpha: Option<C64>,
    x: Option<f64>,
    m: Option<u32>,
    n: Option<usize>,
    dim: Option<usize>,
}

pub fn parse_state_spec(text: &str) -> Result<StateSpec, SpecError> {
    let (kind, rest, rest_at) = match text.find(':') {
        Some(i) => (&text[..i], Some(&text[i + 1..]), i + 1),
        None => (text, None, text.len()),
    };
    if !KINDS.contains(&kind) {
        return Err(parse_err(0, format!("unknown kind '{kind}', expected one of {}", KINDS.join(", "))));
    }
    let mut fields = Fields::default();
    if let Some(rest) = rest {
        let mut at = rest_at;
        for item in rest.split(',') {
            parse_item(kind, item, at, &mut fields)?;
            at += item.len() + 1;
        }
    }
    let alpha = fields.alpha.unwrap_or_default();
    let x = fields.x.unwrap_or(0.0);
    let family = match kind {
        "fock" => Family::Fock { n: fields.n.unwrap_or(0) },
        "coherent" => Family::Coherent { alpha },
        "pacs" => Family::Pacs { alpha, m: fields.m.unwrap_or(1) },
        "thermal" => Family::Thermal { x },
        "pa_thermal" => Family::PaThermal { x },
        "pa_thermal_o1" => Family::PaThermalLowT { x, order: LowTOrder::First },
        _ => Family::PaThermalLowT { x, order: LowTOrder::Second },
    };
    Ok(StateSpec::new(family)?.with_dim(fields.dim)?)
}

fn parse_item(kind: &str, item: &str, at: usize, fields: &mut Fields) -> Result<(), SpecError> {
    let Some(eq) = item.find('=') else {
        return Err(parse_err(at, format!("expected key=value, found '{item}'")));
    };
    let (key, value) = (&item[..eq], &item[eq + 1..]);
    let value_at = at + eq + 1;
    if !allowed_keys(kind).contains(&key) {
        return Err(parse_err(at, format!("unknown key '{key}' for {kind}")));
    }
    if value.is_empty() {
        return Err(parse_err(value_at, format!("missing value for '{key}'")));
    }
    let duplicate = match key {
        "alpha" => fields.alpha.replace(parse_complex(value, value_at)?).is_some(),
        "x" => fields.x.replace(parse_real(value, value_at)?).is_some(),
        "m" => fields.m.replace(parse_int(value, value_at)?).is_some(),
        "n" => fields.n.replace(parse_int(value, value_at)?).is_some(),
        _ => fields.dim.replace(parse_int(value, value_at)?).is_some(),
    };
    if duplicate {
        return Err(parse_err(at, format!("key '{key}' given twice")));
    }
    Ok(())
}

fn parse_real(s: &str, at: usize) -> Result<f64, SpecError> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(parse_err(at, format!("'{s}' is not a finite number"))),
    }
}

fn parse_int<T: std::str::FromStr>(s: &str, at: usize) -> Result<T, SpecError> {
    s.parse::<T>().map_err(|_| parse_err(at, format!("'{s}' is not a non-negative integer")))
}

/// `re`, `imi`, `re+imi` or `re-imi`.
pub fn parse_complex(s: &str, at: usize) -> Result<C64, SpecError> {
    let Some(body) = s.strip_suffix('i') else {
        return Ok(C64::new(parse_real(s, at)?, 0.0));
    };
    // split at the last sign that is neither leading nor part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re = parse_real(&body[..k], at)?;
            let im_text = &body[k..];
            let im = match im_text {
                "+" => 1.0,
                "-" => -1.0,
                _ => parse_real(im_text, at + k)?,
            };
            Ok(C64::new(re, im))
        }
        None => {
            let im = match body {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => parse_real(body, at)?,
            };
            Ok(C64::new(0.0, im))
        }
    }
}
