//! `analyze-linear` and `recursion`.

use biham_core::linear::{
    commutant_deformation, factorize, hamiltonicity_test, hierarchy, lie_deformed_structure, ConstantSymplectic,
    LinearVectorField,
};
use biham_core::numerics::PolyRecord;
use biham_core::recursion::{invariant_chain, nijenhuis_torsion, recursion_from_pair, TensorField11};
use biham_core::{Error, Polynomial};
use serde::Deserialize;
use serde_json::{json, Value};

use super::{Context, Outcome, PlotTable};
use crate::error::{CliError, CliResult};
use crate::report::{self, Report};
use crate::spec;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LinearPayload {
    #[serde(alias = "G")]
    g: Value,
    #[serde(default, alias = "Omega")]
    omega: Option<Value>,
    #[serde(default)]
    kmax: Option<usize>,
    /// Symmetry `T` of `G` for a commutant deformation.
    #[serde(default, alias = "T")]
    deformation: Option<Value>,
}

pub fn analyze(ctx: &Context) -> CliResult<Outcome> {
    let p: LinearPayload = ctx.spec.payload()?;
    let g = spec::real_matrix(&p.g, "G")?;
    let field = LinearVectorField::new(g.clone())?;
    let kmax = p.kmax.unwrap_or(field.n_dof()).max(field.n_dof());
    let mut rep = Report::new("analyze-linear", ctx.seed, ctx.spec.payload.clone());
    let mut out_plots = Vec::new();

    let verdict = hamiltonicity_test(&field, kmax)?;
    rep.verdict("hamiltonian", verdict.is_hamiltonian());
    rep.result("trace_ok", verdict.trace_ok);
    rep.result("eigen_pairing_ok", verdict.eigen_pairing_ok);
    rep.result("jordan_ok", verdict.jordan_ok);
    rep.result("eigenvalues", verdict.eigenvalues.iter().map(|z| report::complex(*z)).collect::<Vec<_>>());
    rep.result("unpaired", verdict.unpaired.iter().map(|z| report::complex(*z)).collect::<Vec<_>>());
    let trace = verdict.trace_residuals.iter().cloned().fold(0.0, f64::max);
    rep.residual("trace", trace, ctx.tol("trace", 1e-10));
    out_plots.push(("spectrum", PlotTable::spectrum(&verdict.eigenvalues)));

    if let Some(om) = &p.omega {
        let structure = ConstantSymplectic::new(spec::real_matrix(om, "omega")?)?;
        match factorize(&field, &structure) {
            Ok(h) => {
                rep.verdict("factorizes", true);
                rep.result("H", report::real_matrix(h.matrix()));
                let back = -(structure.lambda() * h.matrix());
                let rel = (&back - &g).norm() / g.norm().max(f64::MIN_POSITIVE);
                rep.residual("factorization", rel, ctx.tol("factorization", 1e-10));

                let hier = hierarchy(&field, &structure, kmax)?;
                rep.residual("involution", hier.max_involution_residual(), ctx.tol("involution", 1e-10));
                rep.residual(
                    "hierarchy_factorization",
                    hier.max_factorization_residual(),
                    ctx.tol("hierarchy_factorization", 1e-10),
                );
                rep.result(
                    "hierarchy",
                    hier.entries.iter().map(|e| report::real_matrix(e.hamiltonian.matrix())).collect::<Vec<_>>(),
                );
                let mut table = PlotTable::new(vec!["k", "l", "residual"]);
                for (k, row) in hier.involution_residuals().iter().enumerate() {
                    for (l, r) in row.iter().enumerate() {
                        table.rows.push(vec![k as f64, l as f64, *r]);
                    }
                }
                out_plots.push(("involution-residuals", table));

                match lie_deformed_structure(&structure, &h) {
                    Ok(d) => {
                        rep.result(
                            "lie_deformed",
                            json!({
                                "poisson": report::real_matrix(&d.poisson),
                                "hamiltonian": report::real_matrix(d.hamiltonian.matrix()),
                            }),
                        );
                        rep.residual(
                            "lie_deformed_reproduction",
                            d.reproduction_residual,
                            ctx.tol("lie_deformed_reproduction", 1e-10),
                        );
                    }
                    Err(Error::SingularDynamics) => rep.warn("G is singular; no Lie-derived structure"),
                    Err(e) => return Err(e.into()),
                }

                if let Some(t) = &p.deformation {
                    let t = spec::real_matrix(t, "T")?;
                    let d = commutant_deformation(&field, &structure, &t)?;
                    rep.result(
                        "deformed",
                        json!({
                            "lambda": report::real_matrix(d.structure.lambda()),
                            "hamiltonian": report::real_matrix(d.hamiltonian.matrix()),
                            "canonical": d.is_canonical,
                        }),
                    );
                    rep.residual("deformed_product", d.product_residual, ctx.tol("deformed_product", 1e-10));
                }
            }
            Err(Error::NotHamiltonianForThisStructure { asymmetry }) => {
                rep.verdict("factorizes", false);
                rep.result("asymmetry", asymmetry);
            }
            Err(e) => return Err(e.into()),
        }
    } else if p.deformation.is_some() {
        return Err(CliError::spec("a deformation T needs omega"));
    }

    let mut out = Outcome::new(rep);
    out.plots.extend(out_plots);
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RecursionPayload {
    omega1: Value,
    omega2: Value,
    /// Hamiltonian whose chain `(Tᵀ)ᵏH` is generated.
    #[serde(default, alias = "H")]
    hamiltonian: Option<Value>,
    #[serde(default)]
    kmax: Option<usize>,
    /// Rows of polynomial components of a (1,1) tensor field.
    #[serde(default)]
    tensor: Option<Vec<Vec<Vec<PolyRecord>>>>,
}

pub fn recursion(ctx: &Context) -> CliResult<Outcome> {
    let p: RecursionPayload = ctx.spec.payload()?;
    let w1 = spec::real_matrix(&p.omega1, "omega1")?;
    let w2 = spec::real_matrix(&p.omega2, "omega2")?;
    let mut rep = Report::new("recursion", ctx.seed, ctx.spec.payload.clone());
    let rec = recursion_from_pair(&w1, &w2)?;
    rep.verdict("strong", rec.strong);
    rep.result("T", report::real_matrix(&rec.t));
    rep.result("torsion_free", rec.torsion_free);
    rep.result("kernel_dim", rec.kernel_dim);
    rep.residual("symmetry", rec.symmetry_residual, ctx.tol("symmetry", 1e-10));
    let eig: Vec<_> = rec.t.clone().complex_eigenvalues().iter().cloned().collect();
    rep.result("eigenvalues", eig.iter().map(|z| report::complex(*z)).collect::<Vec<_>>());

    if let Some(h) = &p.hamiltonian {
        let h = spec::real_matrix(h, "H")?;
        let kmax = p.kmax.unwrap_or(rec.t.nrows() / 2);
        let chain = invariant_chain(&rec.t, &w1, &h, kmax)?;
        rep.result("chain", chain.hamiltonians.iter().map(report::real_matrix).collect::<Vec<_>>());
        rep.result("chain_stopped_at", chain.stopped_at);
        rep.residual("involution", chain.max_involution, ctx.tol("involution", 1e-10));
    }

    if let Some(rows) = &p.tensor {
        let n = rows.len();
        let parsed = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, recs)| Polynomial::from_records(n, recs).map_err(|e| CliError::spec(format!("tensor[{i}][{j}]: {e}"))))
                    .collect::<CliResult<Vec<_>>>()
            })
            .collect::<CliResult<Vec<_>>>()?;
        let torsion = nijenhuis_torsion(&TensorField11::from_rows(parsed)?);
        let mut comps = Vec::new();
        for i in 0..n {
            for k in 0..n {
                for m in k + 1..n {
                    let c = torsion.component(i, k, m);
                    if !c.is_zero() {
                        comps.push(json!({ "i": i, "k": k, "m": m, "value": report::polynomial(c) }));
                    }
                }
            }
        }
        rep.result("tensor_is_nijenhuis", torsion.is_zero());
        rep.result("tensor_torsion", comps);
    }

    let mut out = Outcome::new(rep);
    out.plots.insert("spectrum", PlotTable::spectrum(&eig));
    Ok(out)
}
