//! JSON interchange: exterior modules, linear-form tensors, Hodge profiles
//! and generic-vanishing data.
//!
//! Rationals travel as strings `"p"` or `"p/q"`; bare JSON integers are also
//! accepted on input. Integers in reports are bare numbers of any size.

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::bggcore::ExteriorModule;
use crate::chern::HodgeProfile;
use crate::error::{Error, Result};
use crate::inequality::GVData;
use crate::linforms::LinFormMatrix;
use crate::ringkit::{format_rational, parse_rational, MatrixQ, Rational};

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn at(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

/// Arbitrary precision JSON integer.
pub fn int_value(x: &BigInt) -> Value {
    let n: Number = serde_json::from_str(&x.to_string()).expect("integer literal");
    Value::Number(n)
}

pub fn rational_value(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| at(path, format!("missing field {key:?}")))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| at(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| at(path, "expected an array"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| at(path, "expected a non-negative integer"))
}

fn as_rational(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| at(path, e)),
        Value::Number(n) => {
            let s = n.to_string();
            let x: BigInt = s.parse().map_err(|_| at(path, format!("{s} is not an integer")))?;
            Ok(Rational::from_integer(x))
        }
        _ => Err(at(path, "expected a rational string or integer")),
    }
}

fn matrix_value(m: &MatrixQ) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(rational_value).collect()))
            .collect(),
    )
}

fn parse_matrix(v: &Value, rows: usize, cols: usize, path: &str) -> Result<MatrixQ> {
    let rs = as_array(v, path)?;
    if rs.len() != rows {
        return Err(at(path, format!("expected {rows} rows, found {}", rs.len())));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for (r, row) in rs.iter().enumerate() {
        let rp = format!("{path}[{r}]");
        let cs = as_array(row, &rp)?;
        if cs.len() != cols {
            return Err(at(&rp, format!("expected {cols} entries, found {}", cs.len())));
        }
        for (c, x) in cs.iter().enumerate() {
            entries.push(as_rational(x, &format!("{rp}[{c}]"))?);
        }
    }
    MatrixQ::new(rows, cols, entries)
}

pub fn module_to_json(m: &ExteriorModule) -> Value {
    json!({
        "q": m.q(),
        "piece_dims": m.piece_dims(),
        "actions": m.actions().iter()
            .map(|per| Value::Array(per.iter().map(matrix_value).collect()))
            .collect::<Vec<_>>(),
    })
}

/// Reads `{"q", "piece_dims", "actions"}` where `actions[i][j]` is the
/// `piece_dims[j+1] x piece_dims[j]` matrix of `e_{i+1}` on piece `j`.
/// Shapes are checked here; the algebra axioms are not.
pub fn parse_module(text: &str) -> Result<ExteriorModule> {
    let v = parse_json(text)?;
    let obj = as_object(&v, "$")?;
    let q = as_usize(field(obj, "q", "$")?, "$.q")?;
    let dims: Vec<usize> = as_array(field(obj, "piece_dims", "$")?, "$.piece_dims")?
        .iter()
        .enumerate()
        .map(|(j, x)| as_usize(x, &format!("$.piece_dims[{j}]")))
        .collect::<Result<_>>()?;
    if dims.is_empty() {
        return Err(at("$.piece_dims", "must be nonempty"));
    }
    let acts = as_array(field(obj, "actions", "$")?, "$.actions")?;
    if acts.len() != q {
        return Err(at("$.actions", format!("expected {q} entries, found {}", acts.len())));
    }
    let mut actions = Vec::with_capacity(q);
    for (i, per) in acts.iter().enumerate() {
        let p = format!("$.actions[{i}]");
        let mats = as_array(per, &p)?;
        if mats.len() + 1 != dims.len() {
            return Err(at(&p, format!("expected {} matrices, found {}", dims.len() - 1, mats.len())));
        }
        actions.push(
            mats.iter()
                .enumerate()
                .map(|(j, m)| parse_matrix(m, dims[j + 1], dims[j], &format!("{p}[{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    ExteriorModule::new(q, dims, actions)
}

pub fn tensor_to_json(u: &LinFormMatrix) -> Value {
    let (a, b, q) = u.shape();
    let entries: Vec<Value> = (0..a)
        .map(|r| {
            Value::Array(
                (0..b)
                    .map(|c| Value::Array(u.form(r, c).iter().map(rational_value).collect()))
                    .collect(),
            )
        })
        .collect();
    let mut v = json!({ "a": a, "b": b, "q": q, "entries": entries });
    if u.is_flipped() {
        v["flipped"] = Value::Bool(true);
    }
    v
}

/// Reads `{"a", "b", "q", "entries"}` with `entries[r][c][i]`, plus the
/// optional orientation marker `"flipped"` written for flipped tensors.
pub fn parse_tensor(text: &str) -> Result<LinFormMatrix> {
    let v = parse_json(text)?;
    let obj = as_object(&v, "$")?;
    let a = as_usize(field(obj, "a", "$")?, "$.a")?;
    let b = as_usize(field(obj, "b", "$")?, "$.b")?;
    let q = as_usize(field(obj, "q", "$")?, "$.q")?;
    if a == 0 || b == 0 || q == 0 {
        return Err(at("$", "a, b and q must be positive"));
    }
    let flipped = match obj.get("flipped") {
        None => false,
        Some(x) => x.as_bool().ok_or_else(|| at("$.flipped", "expected a boolean"))?,
    };
    let rows = as_array(field(obj, "entries", "$")?, "$.entries")?;
    if rows.len() != a {
        return Err(at("$.entries", format!("expected {a} rows, found {}", rows.len())));
    }
    let mut entries = Vec::with_capacity(a * b * q);
    for (r, row) in rows.iter().enumerate() {
        let rp = format!("$.entries[{r}]");
        let cols = as_array(row, &rp)?;
        if cols.len() != b {
            return Err(at(&rp, format!("expected {b} columns, found {}", cols.len())));
        }
        for (c, form) in cols.iter().enumerate() {
            let fp = format!("{rp}[{c}]");
            let coeffs = as_array(form, &fp)?;
            if coeffs.len() != q {
                return Err(at(&fp, format!("expected {q} coefficients, found {}", coeffs.len())));
            }
            for (i, x) in coeffs.iter().enumerate() {
                entries.push(as_rational(x, &format!("{fp}[{i}]"))?);
            }
        }
    }
    Ok(LinFormMatrix::new(a, b, q, entries)?.with_flipped(flipped))
}

pub fn profile_to_json(h: &HodgeProfile) -> Value {
    serde_json::to_value(h).expect("plain struct")
}

/// Reads `{"dimension", "h0", "no_irregular_fibrations", "isolated_origin"}`
/// and validates it. Missing flags default to false.
pub fn parse_profile(text: &str) -> Result<HodgeProfile> {
    let h: HodgeProfile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    h.validate()?;
    Ok(h)
}

/// Reads `{"codims": [...], "p_alpha": int?}`.
pub fn parse_gv(text: &str) -> Result<GVData> {
    let v = parse_json(text)?;
    let obj = as_object(&v, "$")?;
    let codims = as_array(field(obj, "codims", "$")?, "$.codims")?
        .iter()
        .enumerate()
        .map(|(i, x)| as_usize(x, &format!("$.codims[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let p_alpha = match obj.get("p_alpha") {
        None | Some(Value::Null) => None,
        Some(x) => Some(as_usize(x, "$.p_alpha")?),
    };
    Ok(GVData::new(codims, p_alpha))
}
