use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::matrix::{asymmetry, inverse, skew_defect, to_complex, min_eigenvalue, RMat};

const TOL: f64 = 1e-10;

/// Any two (or all three) of metric `g`, complex structure `J` and
/// symplectic form `omega`.
#[derive(Clone, Debug, Default)]
pub struct TripleInput {
    pub g: Option<RMat>,
    pub j: Option<RMat>,
    pub omega: Option<RMat>,
}

/// `(g, J, Ω)` with `Ω = −gJ`, `J² = −I` and `JᵀΩJ = Ω`.
#[derive(Clone, Debug, Serialize)]
pub struct AdmissibleTriple {
    g: RMat,
    j: RMat,
    omega: RMat,
    /// `g` is not positive-definite.
    pub pseudo_kahler: bool,
}

impl AdmissibleTriple {
    pub fn metric(&self) -> &RMat {
        &self.g
    }

    pub fn complex_structure(&self) -> &RMat {
        &self.j
    }

    pub fn symplectic(&self) -> &RMat {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    /// Largest defect among the defining identities.
    pub fn max_defect(&self) -> f64 {
        defects(&self.g, &self.j, &self.omega).into_iter().map(|(_, d)| d).fold(0.0, f64::max)
    }
}

fn defects(g: &RMat, j: &RMat, om: &RMat) -> Vec<(&'static str, f64)> {
    let n = g.nrows();
    let id = RMat::identity(n, n);
    let rel = |x: f64, s: f64| x / s.max(1.0);
    vec![
        ("J² = −I", rel((j * j + &id).norm(), 1.0)),
        ("g symmetric", rel(asymmetry(g), g.norm())),
        ("ω skew", rel(skew_defect(om), om.norm())),
        ("JᵀΩ + ΩJ = 0", rel((j.transpose() * om + om * j).norm(), om.norm() * j.norm())),
        ("Ω = −gJ", rel((om + g * j).norm(), om.norm())),
    ]
}

/// Fill in the missing member of a triple and validate all identities.
///
/// `Ω = −gJ`, `g = ΩJ` and `J = −g⁻¹Ω`.
pub fn complete_triple(input: &TripleInput) -> Result<AdmissibleTriple> {
    let given = [&input.g, &input.j, &input.omega].iter().filter(|m| m.is_some()).count();
    if given < 2 {
        return Err(Error::InvalidInput("need at least two of g, J, omega".into()));
    }
    let dim = [&input.g, &input.j, &input.omega]
        .iter()
        .flat_map(|m| m.as_ref())
        .map(|m| {
            if m.nrows() != m.ncols() {
                Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() })
            } else {
                Ok(m.nrows())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if dim.iter().any(|&d| d != dim[0]) || dim[0] % 2 != 0 {
        return Err(Error::Dimension(format!("triple members must share an even dimension, got {dim:?}")));
    }

    let (g, j, om) = match (&input.g, &input.j, &input.omega) {
        (Some(g), Some(j), Some(om)) => (g.clone(), j.clone(), om.clone()),
        (Some(g), Some(j), None) => (g.clone(), j.clone(), -(g * j)),
        (None, Some(j), Some(om)) => (g_from(om, j), j.clone(), om.clone()),
        (Some(g), None, Some(om)) => {
            let g_inv = inverse(g, "metric").map_err(|_| Error::NotAdmissible("metric is singular".into()))?;
            (g.clone(), -(g_inv * om), om.clone())
        }
        _ => unreachable!(),
    };

    for (what, d) in defects(&g, &j, &om) {
        if d > TOL {
            return Err(Error::NotAdmissible(format!("{what} violated by {d:.3e}")));
        }
    }
    let pseudo_kahler = min_eigenvalue(&to_complex(&g)) <= 0.0;
    Ok(AdmissibleTriple { g, j, omega: om, pseudo_kahler })
}

fn g_from(om: &RMat, j: &RMat) -> RMat {
    om * j
}
