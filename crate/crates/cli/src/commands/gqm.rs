//! `gqm`: finite-level geometric quantum mechanics, one task per problem file.

use biham_core::gqm::{
    bloch_geometry, gns_construct, k_deformed_algebra, quadratic_bracket_check, superpose, DeformedFock, PureState,
};
use biham_core::structures::pseudo_hermitian_metric;
use biham_core::{CMat, CVec, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::Value;

use super::{Context, Outcome, PlotTable};
use crate::error::{CliError, CliResult};
use crate::report::{self, Report};
use crate::spec;

#[derive(Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case", deny_unknown_fields)]
enum Task {
    Bloch {
        xi: [f64; 3],
    },
    Brackets {
        a: Value,
        b: Value,
        #[serde(default = "default_samples")]
        samples: usize,
    },
    Superpose {
        psi1: Value,
        psi2: Value,
        fiducial: Value,
        c1: Value,
        c2: Value,
    },
    Gns {
        state: Value,
        #[serde(default = "default_samples")]
        samples: usize,
    },
    Fock {
        deformation: Deformation,
        levels: usize,
        beta_hbar_omega: f64,
    },
    PseudoHermitian {
        hamiltonian: Value,
    },
    KDeformed {
        k: Value,
        hamiltonian: Value,
        a: Value,
    },
}

fn default_samples() -> usize {
    16
}

/// `f(n)` in `A = f(n̂)a`.
#[derive(Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Deformation {
    /// `√(n + 1)`
    Sqrt,
    /// `1/(1 + n)`
    Inverse,
    Values(Vec<f64>),
}

fn random_vector(r: &mut ChaCha8Rng, n: usize) -> CVec {
    CVec::from_fn(n, |_, _| Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)))
}

fn random_matrix(r: &mut ChaCha8Rng, n: usize) -> CMat {
    CMat::from_fn(n, n, |_, _| Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)))
}

pub fn run(ctx: &Context) -> CliResult<Outcome> {
    let task: Task = ctx.spec.payload()?;
    let mut rep = Report::new("gqm", ctx.seed, ctx.spec.payload.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut out_plots = Vec::new();
    match task {
        Task::Bloch { xi } => {
            let t = bloch_geometry(xi)?;
            let (ambient, tangent) = t.complex_structure_defects();
            rep.residual("j_cubed", ambient, ctx.tol("j_cubed", 1e-12));
            rep.residual("j_squared_tangent", tangent, ctx.tol("j_squared_tangent", 1e-12));
            rep.result("jordan", report::real_matrix(&t.jordan));
            rep.result("poisson", report::real_matrix(&t.poisson));
            rep.result("metric", report::real_matrix(&t.metric));
            rep.result("symplectic", report::real_matrix(&t.symplectic));
            rep.result("complex_structure", report::real_matrix(&t.complex_structure));
        }
        Task::Brackets { a, b, samples } => {
            let a = spec::complex_matrix(&a, "a")?;
            let b = spec::complex_matrix(&b, "b")?;
            let mut worst: f64 = 0.0;
            for _ in 0..samples {
                let x = random_vector(&mut rng, a.nrows());
                worst = worst.max(quadratic_bracket_check(&a, &b, &x)?.max_residual());
            }
            rep.result("samples", samples);
            rep.residual("brackets", worst, ctx.tol("brackets", 1e-10));
        }
        Task::Superpose { psi1, psi2, fiducial, c1, c2 } => {
            let s1 = PureState::from_vector(&spec::complex_vector(&psi1, "psi1")?)?;
            let s2 = PureState::from_vector(&spec::complex_vector(&psi2, "psi2")?)?;
            let s0 = PureState::from_vector(&spec::complex_vector(&fiducial, "fiducial")?)?;
            let out = superpose(&s1, &s2, &s0, spec::complex(&c1, "c1")?, spec::complex(&c2, "c2")?)?;
            rep.result("rho", report::complex_matrix(out.matrix()));
            rep.residual("pure_state", PureState::defect(out.matrix())?, ctx.tol("pure_state", 1e-10));
        }
        Task::Gns { state, samples } => {
            let omega = spec::complex_matrix(&state, "state")?;
            let g = gns_construct(&omega)?;
            rep.result("rank", g.rank());
            rep.result("dimension", g.dim());
            rep.result("irreducible", g.is_irreducible());
            rep.result("weights", &g.weights);
            let (mut hom, mut exp, mut inter) = (0.0f64, 0.0f64, 0.0f64);
            for _ in 0..samples {
                let a = random_matrix(&mut rng, g.n());
                let b = random_matrix(&mut rng, g.n());
                hom = hom.max(g.homomorphism_residual(&a, &b)?);
                exp = exp.max(g.expectation_residual(&a)?);
                inter = inter.max(g.intertwining_residual(&a, &b)?);
            }
            rep.residual("homomorphism", hom, ctx.tol("homomorphism", 1e-12));
            rep.residual("expectation", exp, ctx.tol("expectation", 1e-12));
            rep.residual("intertwining", inter, ctx.tol("intertwining", 1e-12));
        }
        Task::Fock { deformation, levels, beta_hbar_omega } => {
            let fock = match deformation {
                Deformation::Sqrt => DeformedFock::new(|n| ((n + 1) as f64).sqrt(), levels)?,
                Deformation::Inverse => DeformedFock::new(|n| 1.0 / (1.0 + n as f64), levels)?,
                Deformation::Values(v) => {
                    if v.len() < levels {
                        return Err(CliError::spec(format!("{} deformation values for {levels} levels", v.len())));
                    }
                    DeformedFock::new(|n| v[n], levels)?
                }
            };
            let r = fock.report(beta_hbar_omega);
            rep.result("z_standard", r.z_standard);
            rep.result("z_deformed", r.z_deformed);
            rep.residual("commutator", r.commutator_residual, ctx.tol("commutator", 1e-12));
            rep.residual("partition", r.z_standard - r.z_deformed, ctx.tol("partition", 1e-12));
        }
        Task::PseudoHermitian { hamiltonian } => {
            let h = spec::complex_matrix(&hamiltonian, "hamiltonian")?;
            let r = pseudo_hermitian_metric(&h)?;
            rep.result("eta", report::complex_matrix(&r.eta));
            rep.result("eigenvalues", &r.eigenvalues);
            rep.residual("intertwining", r.intertwining_residual, ctx.tol("intertwining", 1e-9));
            rep.residual("biorthogonality", r.biorthogonality_residual, ctx.tol("biorthogonality", 1e-9));
            let eig: Vec<Complex64> = r.eigenvalues.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            out_plots.push(("spectrum", PlotTable::spectrum(&eig)));
        }
        Task::KDeformed { k, hamiltonian, a } => {
            let k = spec::complex_matrix(&k, "k")?;
            let h = spec::complex_matrix(&hamiltonian, "hamiltonian")?;
            let a = spec::complex_matrix(&a, "a")?;
            let r = k_deformed_algebra(&k, &h, &a)?;
            rep.result("h_prime", report::complex_matrix(&r.h_prime));
            rep.residual("bracket", r.bracket_residual, ctx.tol("bracket", 1e-10));
            rep.residual("derivation", r.derivation_residual, ctx.tol("derivation", 1e-10));
        }
    }
    let mut out = Outcome::new(rep);
    out.plots.extend(out_plots);
    Ok(out)
}
