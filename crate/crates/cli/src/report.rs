use std::collections::BTreeMap;
use std::io::{self, Write};

use biham_core::{CMat, Complex64, Polynomial, RMat};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub seed: u64,
    pub config: Value,
    pub verdicts: BTreeMap<String, bool>,
    pub residuals: BTreeMap<String, Residual>,
    pub results: BTreeMap<String, Value>,
    pub warnings: Vec<String>,
    pub artifacts: Vec<String>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &str, seed: u64, config: Value) -> Self {
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            config,
            verdicts: BTreeMap::new(),
            residuals: BTreeMap::new(),
            results: BTreeMap::new(),
            warnings: Vec::new(),
            artifacts: Vec::new(),
            passed: true,
        }
    }

    pub fn verdict(&mut self, name: &str, ok: bool) {
        self.verdicts.insert(name.to_string(), ok);
        self.passed &= ok;
    }

    /// Residuals are magnitudes; NaN never passes.
    pub fn residual(&mut self, name: &str, value: f64, tolerance: f64) {
        let value = value.abs();
        let pass = value <= tolerance;
        self.residuals.insert(name.to_string(), Residual { value, tolerance, pass });
        self.passed &= pass;
    }

    pub fn result(&mut self, name: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.results.insert(name.to_string(), v);
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    pub fn write_json(&self, mut w: impl Write) -> io::Result<()> {
        let mut ser = serde_json::Serializer::with_formatter(&mut w, FixedDigits);
        self.serialize(&mut ser).map_err(io::Error::other)?;
        writeln!(w)
    }

    /// Flat `section,name,value,tolerance,pass` rows.
    pub fn write_csv(&self, mut w: impl Write) -> io::Result<()> {
        writeln!(w, "section,name,value,tolerance,pass")?;
        for (k, v) in &self.verdicts {
            writeln!(w, "verdict,{k},{v},,{v}")?;
        }
        for (k, r) in &self.residuals {
            writeln!(w, "residual,{k},{:.16e},{:.16e},{}", r.value, r.tolerance, r.pass)?;
        }
        for (k, v) in &self.results {
            if let Some(x) = v.as_f64() {
                writeln!(w, "result,{k},{x:.16e},,")?;
            } else if let Some(b) = v.as_bool() {
                writeln!(w, "result,{k},{b},,")?;
            }
        }
        for a in &self.artifacts {
            writeln!(w, "artifact,{a},,,")?;
        }
        writeln!(w, "summary,passed,{},,{}", self.passed, self.passed)
    }
}

/// Compact JSON with every float written to 17 significant digits.
struct FixedDigits;

impl serde_json::ser::Formatter for FixedDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        write!(w, "{:.16e}", f64::from(value))
    }
}

pub fn real_matrix(m: &RMat) -> Value {
    Value::Array((0..m.nrows()).map(|i| Value::from((0..m.ncols()).map(|j| m[(i, j)]).collect::<Vec<_>>())).collect())
}

/// Real when every imaginary part vanishes, `[re, im]` pairs otherwise.
pub fn complex_matrix(m: &CMat) -> Value {
    if m.iter().all(|z| z.im == 0.0) {
        return real_matrix(&m.map(|z| z.re));
    }
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| complex(m[(i, j)])).collect()))
            .collect(),
    )
}

pub fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn polynomial(p: &Polynomial) -> Value {
    json!({ "text": p.to_string(), "terms": p.to_records() })
}
