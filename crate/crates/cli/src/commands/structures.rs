//! `triple` and `compat`.

use biham_core::structures::{compatibility_analysis, complete_triple, HermitianForm, TripleInput};
use biham_core::{Complex64, RMat};
use serde::Deserialize;
use serde_json::{json, Value};

use super::{Context, Outcome, PlotTable};
use crate::error::CliResult;
use crate::report::{self, Report};
use crate::spec;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TriplePayload {
    #[serde(default)]
    g: Option<Value>,
    #[serde(default, alias = "J")]
    j: Option<Value>,
    #[serde(default, alias = "Omega")]
    omega: Option<Value>,
}

pub fn triple(ctx: &Context) -> CliResult<Outcome> {
    let p: TriplePayload = ctx.spec.payload()?;
    let read = |v: &Option<Value>, name: &str| v.as_ref().map(|m| spec::real_matrix(m, name)).transpose();
    let input = TripleInput { g: read(&p.g, "g")?, j: read(&p.j, "J")?, omega: read(&p.omega, "omega")? };
    let t = complete_triple(&input)?;
    let mut rep = Report::new("triple", ctx.seed, ctx.spec.payload.clone());
    let (g, j, om) = (t.metric(), t.complex_structure(), t.symplectic());
    rep.result("g", report::real_matrix(g));
    rep.result("J", report::real_matrix(j));
    rep.result("omega", report::real_matrix(om));
    rep.result("pseudo_kahler", t.pseudo_kahler);
    let n = g.nrows();
    let scale = om.norm().max(1.0);
    rep.residual("J_squared", (j * j + RMat::identity(n, n)).norm(), ctx.tol("J_squared", 1e-10));
    rep.residual("omega_from_gJ", (om + g * j).norm() / scale, ctx.tol("omega_from_gJ", 1e-10));
    rep.residual(
        "J_preserves_omega",
        (j.transpose() * om * j - om).norm() / scale,
        ctx.tol("J_preserves_omega", 1e-10),
    );
    Ok(Outcome::new(rep))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CompatPayload {
    h1: Value,
    h2: Value,
}

pub fn compat(ctx: &Context) -> CliResult<Outcome> {
    let p: CompatPayload = ctx.spec.payload()?;
    let h1 = HermitianForm::new(spec::complex_matrix(&p.h1, "h1")?)?;
    let h2 = HermitianForm::new(spec::complex_matrix(&p.h2, "h2")?)?;
    let r = compatibility_analysis(&h1, &h2)?;
    let mut rep = Report::new("compat", ctx.seed, ctx.spec.payload.clone());
    if let Some(f) = &r.f {
        rep.result("F", report::complex_matrix(f));
    }
    rep.result("generic", r.generic);
    rep.result("commutant_dimension", r.commutant_dimension);
    let blocks: Vec<Value> = r
        .blocks
        .iter()
        .map(|b| json!({ "eigenvalue": b.eigenvalue, "sign": b.sign, "real_dimension": b.basis.ncols() }))
        .collect();
    rep.result("blocks", blocks);
    rep.verdict("decomposes", r.blocks.iter().map(|b| b.basis.ncols()).sum::<usize>() == 2 * h1.dim());
    rep.residual("commutation", r.commutation_residual, ctx.tol("commutation", 1e-10));
    rep.residual("reproduction", r.reproduction_residual, ctx.tol("reproduction", 1e-10));
    rep.residual("blocks", r.max_block_residual(), ctx.tol("blocks", 1e-9));
    let eig: Vec<Complex64> = r.blocks.iter().map(|b| Complex64::new(b.eigenvalue, 0.0)).collect();
    let mut out = Outcome::new(rep);
    out.plots.insert("spectrum", PlotTable::spectrum(&eig));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::ProblemSpec;

    fn run(spec: &str, f: fn(&Context) -> CliResult<Outcome>) -> CliResult<Outcome> {
        let spec = ProblemSpec::parse(spec).unwrap();
        f(&Context { spec: &spec, seed: 0, momentum_sign: None })
    }

    #[test]
    fn darboux_triple_is_completed() {
        let out = run(r#"{"payload": {"g": [[1,0],[0,1]], "omega": [[0,1],[-1,0]]}}"#, triple).unwrap();
        assert!(out.report.passed);
        assert_eq!(out.report.results["J"], json!([[0.0, -1.0], [1.0, 0.0]]));
    }

    #[test]
    fn incompatible_triple_is_an_error() {
        assert!(run(r#"{"payload": {"g": [[1,0],[0,1]], "J": [[1,2],[-1,-1]]}}"#, triple).is_err());
    }

    #[test]
    fn diagonal_pair_is_generic() {
        let out = run(r#"{"payload": {"h1": [[1,0],[0,1]], "h2": [[1,0],[0,3]]}}"#, compat).unwrap();
        assert!(out.report.passed);
        assert_eq!(out.report.results["generic"], json!(true));
        assert_eq!(out.plots["spectrum"].rows.len(), 2);
    }
}
