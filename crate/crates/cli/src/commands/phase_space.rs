//! `wigner`, `moyal` and `kms`.

use biham_core::numerics::{poisson_bracket, PolyRecord};
use biham_core::wwm::{
    classical_deformed_bracket, classical_kms_check, oscillator_eigenfunctions, oscillator_gibbs_kernel,
    oscillator_gibbs_wigner, oscillator_partition_function, wigner_transform, KernelOperator, MomentumSign, PhaseGrid,
    PolyMoyal, StarProduct,
};
use biham_core::{Complex64, ModelConstants};
use serde::Deserialize;
use serde_json::Value;

use super::{Artifact, Context, Outcome, PlotTable};
use crate::error::{CliError, CliResult};
use crate::report::{self, Report};
use crate::spec;

fn one() -> f64 {
    1.0
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum StateSpec {
    Gibbs,
    Eigenstate(usize),
    /// Coefficients on the oscillator eigenbasis.
    Superposition(Vec<Value>),
    /// Samples `ψ(q_i)` on the position axis.
    Wavefunction(Vec<Value>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WignerPayload {
    #[serde(default = "default_n")]
    n: usize,
    #[serde(default = "default_l")]
    l_q: f64,
    #[serde(default = "one")]
    hbar: f64,
    #[serde(default = "one")]
    mass: f64,
    #[serde(default = "one")]
    omega: f64,
    #[serde(default = "one")]
    beta: f64,
    #[serde(default)]
    momentum_sign: Option<MomentumSign>,
    state: StateSpec,
}

fn default_n() -> usize {
    128
}

fn default_l() -> f64 {
    8.0
}

pub fn wigner(ctx: &Context) -> CliResult<Outcome> {
    let p: WignerPayload = ctx.spec.payload()?;
    let constants = ModelConstants::new(p.hbar, p.mass, p.omega, p.beta)?;
    let sign = ctx.momentum_sign.or(p.momentum_sign).unwrap_or_default();
    let grid = PhaseGrid::conjugate(p.n, p.l_q, constants)?.with_momentum_sign(sign);
    let mut rep = Report::new("wigner", ctx.seed, ctx.spec.payload.clone());
    rep.result("momentum_sign", sign);
    rep.result("l_p", grid.l_p);

    let (op, pure) = match &p.state {
        StateSpec::Gibbs => (oscillator_gibbs_kernel(grid), false),
        StateSpec::Eigenstate(k) => {
            let psi = oscillator_eigenfunctions(&grid, *k).swap_remove(*k);
            (KernelOperator::projector(grid, &psi)?, true)
        }
        StateSpec::Superposition(cs) => {
            if cs.is_empty() {
                return Err(CliError::spec("superposition: no coefficients"));
            }
            let cs = cs.iter().map(|v| spec::complex(v, "superposition")).collect::<CliResult<Vec<_>>>()?;
            let basis = oscillator_eigenfunctions(&grid, cs.len() - 1);
            let psi: Vec<Complex64> = (0..grid.n).map(|i| cs.iter().zip(&basis).map(|(c, b)| c * b[i]).sum()).collect();
            (KernelOperator::projector(grid, &psi)?, true)
        }
        StateSpec::Wavefunction(vs) => {
            let psi = vs.iter().map(|v| spec::complex(v, "wavefunction")).collect::<CliResult<Vec<_>>>()?;
            (KernelOperator::projector(grid, &psi)?, true)
        }
    };
    let w = wigner_transform(&op)?;
    if let Some(msg) = &w.warning {
        rep.warn(msg.clone());
    }
    let f = &w.function;
    let scale = f.max_abs().max(f64::MIN_POSITIVE);
    rep.residual("imaginary_part", w.max_imag / scale, ctx.tol("imaginary_part", 1e-10));
    let trace = f.phase_space_trace();
    rep.result("trace", report::complex(trace));
    rep.result("centre", f.get(grid.n / 2, grid.n / 2).re);
    rep.result("boundary_leakage", w.boundary_leakage);

    if pure {
        let purity: f64 = f.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * grid.cell();
        rep.result("sup", f.max_abs());
        rep.residual("normalization", (trace - 1.0).norm(), ctx.tol("normalization", 1e-10));
        rep.residual("purity", purity - 1.0, ctx.tol("purity", 1e-10));
        rep.residual("bound", (f.max_abs() - 2.0).max(0.0), ctx.tol("bound", 1e-10));
    } else {
        let exact = oscillator_gibbs_wigner(grid);
        let z = oscillator_partition_function(&constants);
        rep.result("partition_function", z);
        rep.residual("closed_form", f.max_diff(&exact) / exact.max_abs(), ctx.tol("closed_form", 1e-6));
        rep.residual("partition_function", (trace.re - z) / z, ctx.tol("partition_function", 1e-6));
    }

    let mut csv = Vec::new();
    f.write_csv(&mut csv).map_err(|e| CliError::Write { path: "wigner_grid.csv".into(), source: e })?;
    let mut table = PlotTable::new(vec!["q", "p", "w"]);
    for i in 0..grid.n {
        for j in 0..grid.n {
            table.rows.push(vec![grid.q(i), grid.p(j), f.get(i, j).re]);
        }
    }
    let mut out = Outcome::new(rep);
    out.artifacts.push(Artifact { file_name: "wigner_grid.csv".into(), contents: csv });
    out.plots.insert("wigner", table);
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MoyalPayload {
    #[serde(default = "one_dof")]
    n_dof: usize,
    f: Vec<PolyRecord>,
    g: Vec<PolyRecord>,
    /// Positive polynomial `k` for `f ∗ k ∗ g`.
    #[serde(default)]
    deformation: Option<Vec<PolyRecord>>,
}

fn one_dof() -> usize {
    1
}

pub fn moyal(ctx: &Context) -> CliResult<Outcome> {
    let p: MoyalPayload = ctx.spec.payload()?;
    let f = spec::polynomial(&p.f, p.n_dof, "f")?;
    let g = spec::polynomial(&p.g, p.n_dof, "g")?;
    let k = p.deformation.as_ref().map(|r| spec::polynomial(r, p.n_dof, "deformation")).transpose()?;
    let classical = match &k {
        Some(k) => classical_deformed_bracket(&f, &g, k)?,
        None => poisson_bracket(&f, &g)?,
    };
    let star = PolyMoyal { deformation: k };
    let product = star.star(&f, &g)?;
    let bracket = star.bracket(&f, &g)?;
    let mut rep = Report::new("moyal", ctx.seed, ctx.spec.payload.clone());
    rep.result("product", report::polynomial(&product));
    rep.result("bracket", report::polynomial(&bracket));
    rep.result("poisson_bracket", report::polynomial(&classical));
    let limit = bracket.hbar_coefficient(0).max_coeff_diff(&classical);
    rep.residual("classical_limit", limit, ctx.tol("classical_limit", 1e-12));
    let pointwise = product.hbar_coefficient(0).max_coeff_diff(&f.checked_mul(&g)?);
    rep.residual("pointwise_limit", pointwise, ctx.tol("pointwise_limit", 1e-12));
    Ok(Outcome::new(rep))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KmsPayload {
    #[serde(alias = "H")]
    hamiltonian: Vec<PolyRecord>,
    f: Vec<PolyRecord>,
    g: Vec<PolyRecord>,
    beta: f64,
    #[serde(default = "default_n")]
    n: usize,
    #[serde(default = "default_l")]
    l: f64,
}

pub fn kms(ctx: &Context) -> CliResult<Outcome> {
    let p: KmsPayload = ctx.spec.payload()?;
    let h = spec::polynomial(&p.hamiltonian, 1, "H")?;
    let f = spec::polynomial(&p.f, 1, "f")?;
    let g = spec::polynomial(&p.g, 1, "g")?;
    let grid = PhaseGrid::new(p.n, p.l, p.l, ModelConstants::default())?;
    let r = classical_kms_check(&h, &f, &g, p.beta, &grid)?;
    let mut rep = Report::new("kms", ctx.seed, ctx.spec.payload.clone());
    rep.result("lhs", r.lhs);
    rep.result("rhs", r.rhs);
    rep.result("quadrature_error", r.quadrature_error);
    rep.result("boundary_weight", r.boundary_weight);
    if let Some(w) = r.warning {
        rep.warn(w);
    }
    rep.residual("kms", r.residual, ctx.tol("kms", 1e-6));
    Ok(Outcome::new(rep))
}
