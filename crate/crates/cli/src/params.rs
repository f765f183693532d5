//! `--params k=v,...` parsing, including complex literals like `0.3-0.1i`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::CliError;

pub fn parse_param_map(raw: Option<&str>) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    let Some(raw) = raw else {
        return Ok(map);
    };
    for piece in raw.split(',').filter(|p| !p.is_empty()) {
        let Some((key, value)) = piece.split_once('=') else {
            return Err(CliError::config(format!(
                "malformed --params entry `{piece}`; expected key=value"
            )));
        };
        if map
            .insert(key.trim().to_string(), value.trim().to_string())
            .is_some()
        {
            return Err(CliError::config(format!("duplicate --params key `{key}`")));
        }
    }
    Ok(map)
}

pub fn take_real(
    map: &mut BTreeMap<String, String>,
    key: &str,
    default: f64,
) -> Result<f64, CliError> {
    match map.remove(key) {
        None => Ok(default),
        Some(text) => text
            .parse::<f64>()
            .map_err(|_| CliError::config(format!("param `{key}`: `{text}` is not a number"))),
    }
}

pub fn take_optional_real(
    map: &mut BTreeMap<String, String>,
    key: &str,
) -> Result<Option<f64>, CliError> {
    match map.remove(key) {
        None => Ok(None),
        Some(text) => text
            .parse::<f64>()
            .map(Some)
            .map_err(|_| CliError::config(format!("param `{key}`: `{text}` is not a number"))),
    }
}

pub fn take_complex(
    map: &mut BTreeMap<String, String>,
    key: &str,
    default: Complex64,
) -> Result<Complex64, CliError> {
    match map.remove(key) {
        None => Ok(default),
        Some(text) => parse_complex(&text).ok_or_else(|| {
            CliError::config(format!(
                "param `{key}`: `{text}` is not a real or complex number (use re or re+imi)"
            ))
        }),
    }
}

pub fn reject_leftovers(map: &BTreeMap<String, String>) -> Result<(), CliError> {
    if let Some(key) = map.keys().next() {
        return Err(CliError::config(format!("unknown --params key `{key}`")));
    }
    Ok(())
}

/// Parses `re`, `imi`, or `re±imi` forms, e.g. `0.5`, `-2i`, `1.5-0.3i`.
pub fn parse_complex(text: &str) -> Option<Complex64> {
    let text = text.trim();
    if let Ok(re) = text.parse::<f64>() {
        return Some(Complex64::new(re, 0.0));
    }
    let body = text.strip_suffix(['i', 'I'])?;
    // Split at the last +/- that is not an exponent sign or the leading sign.
    let split = body
        .char_indices()
        .skip(1)
        .filter(|(k, ch)| matches!(ch, '+' | '-') && !matches!(body.as_bytes()[k - 1], b'e' | b'E'))
        .map(|(k, _)| k)
        .last();
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().ok()?;
            let im_text = &body[k..];
            let im = if im_text == "+" {
                1.0
            } else if im_text == "-" {
                -1.0
            } else {
                im_text.parse::<f64>().ok()?
            };
            Some(Complex64::new(re, im))
        }
        None => {
            let im = if body.is_empty() {
                1.0
            } else if body == "-" {
                -1.0
            } else {
                body.parse::<f64>().ok()?
            };
            Some(Complex64::new(0.0, im))
        }
    }
}
