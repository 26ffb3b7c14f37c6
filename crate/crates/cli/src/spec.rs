//! Problem specification files.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use biham_core::numerics::json::{complex_from_json, matrix_from_json, real_matrix_from_json};
use biham_core::numerics::PolyRecord;
use biham_core::{CMat, CVec, Complex64, Polynomial, RMat};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    command: Option<String>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    output: OutputSpec,
    payload: Value,
}

#[derive(Debug)]
pub struct ProblemSpec {
    pub command: Option<String>,
    pub seed: Option<u64>,
    pub tolerances: Tolerances,
    pub output: OutputSpec,
    pub payload: Value,
}

impl ProblemSpec {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Read { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        // syntax errors carry line and column; shape errors come after
        let value: Value = serde_json::from_str(text)?;
        let raw: RawSpec = serde_json::from_value(value)?;
        if !raw.payload.is_object() {
            return Err(CliError::spec("payload must be a JSON object"));
        }
        for (name, tol) in &raw.tolerances {
            if !(tol.is_finite() && *tol >= 0.0) {
                return Err(CliError::spec(format!("tolerance {name} must be a non-negative number")));
            }
        }
        Ok(Self {
            command: raw.command,
            seed: raw.seed,
            tolerances: Tolerances::new(raw.tolerances),
            output: raw.output,
            payload: raw.payload,
        })
    }

    pub fn payload<T: DeserializeOwned>(&self) -> CliResult<T> {
        serde_json::from_value(self.payload.clone()).map_err(|e| CliError::spec(format!("payload: {e}")))
    }
}

/// Overrides of the default tolerances from the problem file. Names that no check
/// asks for are reported as spec errors.
#[derive(Debug, Default)]
pub struct Tolerances {
    given: BTreeMap<String, f64>,
    used: RefCell<BTreeSet<String>>,
}

impl Tolerances {
    pub fn new(given: BTreeMap<String, f64>) -> Self {
        Self { given, used: RefCell::default() }
    }

    pub fn get(&self, name: &str, default: f64) -> f64 {
        self.used.borrow_mut().insert(name.to_string());
        self.given.get(name).copied().unwrap_or(default)
    }

    pub fn unused(&self) -> Vec<String> {
        let used = self.used.borrow();
        self.given.keys().filter(|k| !used.contains(*k)).cloned().collect()
    }
}

pub fn real_matrix(v: &Value, name: &str) -> CliResult<RMat> {
    real_matrix_from_json(v).map_err(|e| CliError::spec(format!("{name}: {e}")))
}

pub fn complex_matrix(v: &Value, name: &str) -> CliResult<CMat> {
    matrix_from_json(v).map_err(|e| CliError::spec(format!("{name}: {e}")))
}

pub fn complex(v: &Value, name: &str) -> CliResult<Complex64> {
    complex_from_json(v).map_err(|e| CliError::spec(format!("{name}: {e}")))
}

pub fn complex_vector(v: &Value, name: &str) -> CliResult<CVec> {
    let items = v.as_array().ok_or_else(|| CliError::spec(format!("{name}: expected an array")))?;
    let entries = items.iter().map(|x| complex(x, name)).collect::<CliResult<Vec<_>>>()?;
    if entries.is_empty() {
        return Err(CliError::spec(format!("{name}: empty vector")));
    }
    Ok(CVec::from_vec(entries))
}

/// Polynomial in `2·n_dof` variables from a list of term records.
pub fn polynomial(records: &[PolyRecord], n_dof: usize, name: &str) -> CliResult<Polynomial> {
    Polynomial::from_records(2 * n_dof, records).map_err(|e| CliError::spec(format!("{name}: {e}")))
}
