//! JSON round trip for parameter tuples and parsing of the small
//! affine weight expressions accepted on the command line.
//!
//! The pipe format keeps both a structured encoding (exact, parsed
//! back by `spin`/`standard`/`merge`) and a `display` block (for
//! humans; ignored on input).

use std::collections::BTreeMap;
use std::str::FromStr;

use hecke_core::lfactor::{Aff, ParamMono, SatakeParams};
use hecke_core::poly::Rat;
use serde_json::{json, Map, Value};

pub fn aff_to_json(a: &Aff) -> Value {
    json!({"c0": a.c0, "ck": a.ck, "cl": a.cl})
}

fn field_i64(v: &Value, key: &str) -> Result<i64, String> {
    v.get(key)
        .and_then(Value::as_i64)
        .ok_or_else(|| format!("missing integer field '{}'", key))
}

pub fn aff_from_json(v: &Value) -> Result<Aff, String> {
    Ok(Aff {
        c0: field_i64(v, "c0")?,
        ck: field_i64(v, "ck")?,
        cl: field_i64(v, "cl")?,
    })
}

pub fn mono_to_json(m: &ParamMono) -> Value {
    let syms: Map<String, Value> = m
        .syms()
        .iter()
        .map(|(name, e)| (name.clone(), json!(e)))
        .collect();
    json!({
        "coef": m.coef().to_string(),
        "q": aff_to_json(&m.q_exp()),
        "syms": Value::Object(syms),
        "display": m.to_string(),
    })
}

pub fn mono_from_json(v: &Value) -> Result<ParamMono, String> {
    let coef_s = v
        .get("coef")
        .and_then(Value::as_str)
        .ok_or("missing string field 'coef'")?;
    let coef = Rat::from_str(coef_s).map_err(|e| format!("bad coefficient '{}': {}", coef_s, e))?;
    let q = aff_from_json(v.get("q").ok_or("missing field 'q'")?)?;
    let mut syms = BTreeMap::new();
    if let Some(obj) = v.get("syms").and_then(Value::as_object) {
        for (name, e) in obj {
            let e = e
                .as_i64()
                .ok_or_else(|| format!("bad exponent for symbol '{}'", name))?;
            syms.insert(name.clone(), e);
        }
    }
    Ok(ParamMono::from_parts(coef, q, syms))
}

pub fn params_to_json(p: &SatakeParams) -> Value {
    json!({
        "genus": p.genus(),
        "weight": aff_to_json(&p.weight()),
        "alphas": p.alphas().iter().map(mono_to_json).collect::<Vec<_>>(),
        "display": p.to_json(),
    })
}

pub fn params_from_json(v: &Value) -> Result<SatakeParams, String> {
    let genus = v
        .get("genus")
        .and_then(Value::as_u64)
        .ok_or("missing integer field 'genus'")? as usize;
    let weight = aff_from_json(v.get("weight").ok_or("missing field 'weight'")?)?;
    let alphas_v = v
        .get("alphas")
        .and_then(Value::as_array)
        .ok_or("missing array field 'alphas'")?;
    if genus == 0 || alphas_v.len() != genus + 1 {
        return Err(format!(
            "genus {} needs {} parameters, got {}",
            genus,
            genus + 1,
            alphas_v.len()
        ));
    }
    let alphas = alphas_v
        .iter()
        .map(mono_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SatakeParams::new(genus, weight, alphas))
}

/// Parse an affine expression in the symbolic weights `k` and `l`,
/// e.g. `"k"`, `"k-2"`, `"2k-3"`, `"k+l"`, `"10"`.
pub fn parse_aff_text(input: &str) -> Result<Aff, String> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let bytes = compact.as_bytes();
    if bytes.is_empty() {
        return Err("empty affine expression".to_string());
    }
    let mut out = Aff::ZERO;
    let mut i = 0usize;
    let mut leading = true;
    while i < bytes.len() {
        let sign = match bytes[i] {
            b'+' => {
                i += 1;
                1
            }
            b'-' => {
                i += 1;
                -1
            }
            _ if leading => 1,
            _ => return Err(format!("expected '+' or '-' in '{}'", input)),
        };
        leading = false;
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let digits = &compact[start..i];
        let symbol = if i < bytes.len() && (bytes[i] == b'k' || bytes[i] == b'l') {
            let c = bytes[i];
            i += 1;
            Some(c)
        } else {
            None
        };
        let magnitude: i64 = if digits.is_empty() {
            if symbol.is_none() {
                return Err(format!("expected a term in '{}'", input));
            }
            1
        } else {
            digits
                .parse()
                .map_err(|_| format!("bad integer '{}' in '{}'", digits, input))?
        };
        let term = match symbol {
            None => Aff::int(sign * magnitude),
            Some(b'k') => Aff::k().scale(sign * magnitude),
            _ => Aff::l().scale(sign * magnitude),
        };
        out = out.add(&term);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hecke_core::lfactor::eisenstein_params;

    #[test]
    fn aff_expressions_parse() {
        assert_eq!(parse_aff_text("k").unwrap(), Aff::k());
        assert_eq!(parse_aff_text("k-2").unwrap(), Aff::k().add(&Aff::int(-2)));
        assert_eq!(parse_aff_text("2k-3").unwrap(), Aff::k().scale(2).add(&Aff::int(-3)));
        assert_eq!(parse_aff_text("k + l").unwrap(), Aff::k().add(&Aff::l()));
        assert_eq!(parse_aff_text("10").unwrap(), Aff::int(10));
        assert_eq!(parse_aff_text("-k+1").unwrap(), Aff::k().neg().add(&Aff::int(1)));
        assert!(parse_aff_text("").is_err());
        assert!(parse_aff_text("k k").is_err());
        assert!(parse_aff_text("+").is_err());
    }

    #[test]
    fn params_round_trip() {
        let p = eisenstein_params(&Aff::k(), 2);
        let v = params_to_json(&p);
        let q = params_from_json(&v).unwrap();
        assert!(p.same_params(&q));
        assert_eq!(p.weight(), q.weight());
    }

    #[test]
    fn malformed_params_are_rejected() {
        assert!(params_from_json(&json!({"genus": 2})).is_err());
        assert!(params_from_json(&json!({
            "genus": 2,
            "weight": {"c0": 0, "ck": 1, "cl": 0},
            "alphas": [],
        }))
        .is_err());
    }
}
