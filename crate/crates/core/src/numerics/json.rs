//! JSON encodings: matrices as nested arrays of `[re, im]` pairs, scalars as
//! a number or a pair.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer};
use serde_json::Value;

use super::matrix::{CMat, RMat};
use crate::error::{Error, Result};

pub fn complex_to_json(z: Complex64) -> Value {
    Value::from(vec![z.re, z.im])
}

pub fn complex_from_json(v: &Value) -> Result<Complex64> {
    match v {
        Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
        Value::Array(a) if a.len() == 2 => {
            let re = a[0].as_f64();
            let im = a[1].as_f64();
            match (re, im) {
                (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                _ => Err(Error::InvalidInput(format!("expected [re, im] numbers, got {v}"))),
            }
        }
        _ => Err(Error::InvalidInput(format!("expected a number or [re, im], got {v}"))),
    }
}

pub fn matrix_to_json(m: &CMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| complex_to_json(m[(i, j)])).collect()))
            .collect(),
    )
}

pub fn real_matrix_to_json(m: &RMat) -> Value {
    matrix_to_json(&super::matrix::to_complex(m))
}

pub fn matrix_from_json(v: &Value) -> Result<CMat> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("matrix must be an array of rows".into()))?;
    if rows.is_empty() {
        return Err(Error::InvalidInput("matrix has no rows".into()));
    }
    let mut data = Vec::new();
    let mut ncols = None;
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::InvalidInput(format!("matrix row {i} is not an array")))?;
        match ncols {
            None => ncols = Some(row.len()),
            Some(n) if n != row.len() => {
                return Err(Error::InvalidInput(format!(
                    "matrix row {i} has {} entries, expected {n}",
                    row.len()
                )))
            }
            _ => {}
        }
        for e in row {
            data.push(complex_from_json(e)?);
        }
    }
    Ok(CMat::from_row_slice(rows.len(), ncols.unwrap_or(0), &data))
}

/// Reads a matrix that must be real (imaginary parts exactly zero).
pub fn real_matrix_from_json(v: &Value) -> Result<RMat> {
    let m = matrix_from_json(v)?;
    if m.iter().any(|z| z.im != 0.0) {
        return Err(Error::InvalidInput("expected a real matrix".into()));
    }
    Ok(m.map(|z| z.re))
}

pub(crate) fn de_complex_pair<'de, D>(d: D) -> std::result::Result<[f64; 2], D::Error>
where
    D: Deserializer<'de>,
{
    let v = Value::deserialize(d)?;
    let z = complex_from_json(&v).map_err(serde::de::Error::custom)?;
    Ok([z.re, z.im])
}
