//! Pairs of Hermitian structures and the operator connecting them.

use serde::Serialize;

use super::realify::{hermitian_to_real_pair, realify};
use super::triple::AdmissibleTriple;
use crate::error::{Error, Result};
use crate::numerics::matrix::{hermitian_defect, inverse, min_eigenvalue, CMat, RMat, RVec};
use crate::numerics::spectral::{cluster_indices, commutant_dimension};

/// Positive-definite Hermitian form `⟨z, w⟩ = z†hw` on `Cⁿ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HermitianForm {
    h: CMat,
}

impl HermitianForm {
    pub fn new(h: CMat) -> Result<Self> {
        if h.nrows() != h.ncols() {
            return Err(Error::NotSquare { rows: h.nrows(), cols: h.ncols() });
        }
        let d = hermitian_defect(&h);
        if d > 1e-12 * h.norm().max(1.0) {
            return Err(Error::NotAHermitianForm(format!("not Hermitian (defect {d:.3e})")));
        }
        let h = (&h + h.adjoint()) * num_complex::Complex64::new(0.5, 0.0);
        let min = min_eigenvalue(&h);
        if min <= 0.0 {
            return Err(Error::NotAHermitianForm(format!("not positive-definite (min eigenvalue {min:.3e})")));
        }
        Ok(Self { h })
    }

    pub fn matrix(&self) -> &CMat {
        &self.h
    }

    pub fn dim(&self) -> usize {
        self.h.nrows()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CompatibilityBlock {
    /// Ratio `g₂/g₁` on the block.
    pub eigenvalue: f64,
    /// `+1` when `J₂ = J₁` on the block, `−1` when `J₂ = −J₁`.
    pub sign: i8,
    /// Real basis of the block, one column per vector, `g₁`-orthonormal.
    pub basis: RMat,
    /// Relative `‖g₂|E − λ g₁|E‖`.
    pub metric_residual: f64,
    /// Relative `‖ω₂|E − sign·λ ω₁|E‖`.
    pub symplectic_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectingOperator {
    /// `F = h₁⁻¹h₂` when both structures come from Hermitian matrices.
    pub f: Option<CMat>,
    /// `g₁⁻¹g₂`.
    pub g_conn: RMat,
    /// `ω₁⁻¹ω₂`.
    pub t_conn: RMat,
    pub blocks: Vec<CompatibilityBlock>,
    /// Every block is two-dimensional, i.e. `n` distinct eigenvalues.
    pub generic: bool,
    /// Complex dimension of the commutant of `F`, when `F` is available.
    pub commutant_dimension: Option<usize>,
    /// Relative `‖[G, T]‖`.
    pub commutation_residual: f64,
    /// Relative `‖h₂ − h₁F‖`, zero when `F` is absent.
    pub reproduction_residual: f64,
}

impl ConnectingOperator {
    pub fn max_block_residual(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| b.metric_residual.max(b.symplectic_residual))
            .fold(0.0, f64::max)
    }
}

const CLUSTER_TOL: f64 = 1e-8;

/// Connecting operator of two Hermitian structures on `Cⁿ` and its
/// decomposition into blocks on which both metrics are proportional.
pub fn compatibility_analysis(h1: &HermitianForm, h2: &HermitianForm) -> Result<ConnectingOperator> {
    if h1.dim() != h2.dim() {
        return Err(Error::Dimension(format!("forms of dimension {} and {}", h1.dim(), h2.dim())));
    }
    let n = h1.dim();
    let f = inverse(h1.matrix(), "first Hermitian form")? * h2.matrix();
    let (g1, om1) = hermitian_to_real_pair(h1.matrix());
    let (g2, om2) = hermitian_to_real_pair(h2.matrix());
    let mut out = analyse(&g1, &om1, &g2, &om2)?;
    let reproduction = (h1.matrix() * &f - h2.matrix()).norm() / h2.matrix().norm();
    let g_from_f = realify(&f);
    let g_defect = (&g_from_f - &out.g_conn).norm() / g_from_f.norm();
    out.reproduction_residual = reproduction.max(g_defect);
    let dim = commutant_dimension(&f);
    out.generic = out.generic && dim == n;
    out.commutant_dimension = Some(dim);
    out.f = Some(f);
    Ok(out)
}

/// Same analysis for two admissible triples on a common real space. The
/// complex structures may differ.
pub fn compatibility_of_triples(t1: &AdmissibleTriple, t2: &AdmissibleTriple) -> Result<ConnectingOperator> {
    if t1.dim() != t2.dim() {
        return Err(Error::Dimension("triples of different dimension".into()));
    }
    for t in [t1, t2] {
        if t.pseudo_kahler {
            return Err(Error::NotAHermitianForm("metric is not positive-definite".into()));
        }
    }
    analyse(t1.metric(), t1.symplectic(), t2.metric(), t2.symplectic())
}

fn analyse(g1: &RMat, om1: &RMat, g2: &RMat, om2: &RMat) -> Result<ConnectingOperator> {
    let dim = g1.nrows();
    let g_conn = inverse(g1, "first metric")? * g2;
    let t_conn = inverse(om1, "first symplectic form")? * om2;
    let commutation_residual =
        (&g_conn * &t_conn - &t_conn * &g_conn).norm() / (g_conn.norm() * t_conn.norm()).max(f64::MIN_POSITIVE);

    // g₂v = λg₁v through the Cholesky factor of g₁
    let chol = nalgebra::Cholesky::new(g1.clone())
        .ok_or_else(|| Error::NotAHermitianForm("first metric is not positive-definite".into()))?;
    let l_inv = inverse(&chol.l(), "Cholesky factor")?;
    let m = &l_inv * g2 * l_inv.transpose();
    let m = (&m + m.transpose()) * 0.5;
    let eig = m.symmetric_eigen();
    let vecs = l_inv.transpose() * &eig.eigenvectors;
    let values: Vec<num_complex::Complex64> =
        eig.eigenvalues.iter().map(|&x| num_complex::Complex64::new(x, 0.0)).collect();
    let scale = eig.eigenvalues.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let groups = cluster_indices(&values, CLUSTER_TOL * scale.max(f64::MIN_POSITIVE));

    let mut blocks = Vec::with_capacity(groups.len());
    for group in &groups {
        let lambda = group.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / group.len() as f64;
        let cols: Vec<RVec> = group.iter().map(|&i| vecs.column(i).into_owned()).collect();
        let basis = RMat::from_columns(&cols);
        let r1 = basis.transpose() * g1 * &basis;
        let r2 = basis.transpose() * g2 * &basis;
        let w1 = basis.transpose() * om1 * &basis;
        let w2 = basis.transpose() * om2 * &basis;
        let metric_residual = (&r2 - &r1 * lambda).norm() / r2.norm().max(f64::MIN_POSITIVE);
        let sign: i8 = if w2.dot(&w1) >= 0.0 { 1 } else { -1 };
        let symplectic_residual =
            (&w2 - &w1 * (lambda * f64::from(sign))).norm() / w2.norm().max(f64::MIN_POSITIVE);
        blocks.push(CompatibilityBlock { eigenvalue: lambda, sign, basis, metric_residual, symplectic_residual });
    }
    let generic = blocks.len() * 2 == dim && blocks.iter().all(|b| b.basis.ncols() == 2);
    Ok(ConnectingOperator {
        f: None,
        g_conn,
        t_conn,
        blocks,
        generic,
        commutant_dimension: None,
        commutation_residual,
        reproduction_residual: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::{c, standard_poisson, standard_symplectic};
    use crate::structures::triple::{complete_triple, TripleInput};
    use proptest::prelude::*;

    fn form(v: &[(f64, f64)], n: usize) -> HermitianForm {
        HermitianForm::new(CMat::from_row_slice(n, n, &v.iter().map(|&(a, b)| c(a, b)).collect::<Vec<_>>())).unwrap()
    }

    #[test]
    fn proportional_forms_are_not_generic() {
        let h1 = HermitianForm::new(CMat::identity(2, 2)).unwrap();
        let h2 = HermitianForm::new(CMat::identity(2, 2) * c(2.0, 0.0)).unwrap();
        let r = compatibility_analysis(&h1, &h2).unwrap();
        assert_eq!(r.blocks.len(), 1);
        assert!((r.blocks[0].eigenvalue - 2.0).abs() < 1e-14);
        assert!(!r.generic);
    }

    #[test]
    fn distinct_diagonal_forms_are_generic() {
        let h1 = HermitianForm::new(CMat::identity(2, 2)).unwrap();
        let h2 = form(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (3.0, 0.0)], 2);
        let r = compatibility_analysis(&h1, &h2).unwrap();
        assert!(r.generic);
        assert_eq!(r.commutant_dimension, Some(2));
        let mut ev: Vec<f64> = r.blocks.iter().map(|b| b.eigenvalue).collect();
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);
        assert!(r.max_block_residual() < 1e-12);
    }

    #[test]
    fn equal_forms_give_identity() {
        let h = form(&[(2.0, 0.0), (0.3, 0.4), (0.3, -0.4), (1.0, 0.0)], 2);
        let r = compatibility_analysis(&h, &h).unwrap();
        assert!((r.f.as_ref().unwrap() - CMat::identity(2, 2)).norm() < 1e-14);
        assert!(r.blocks.iter().all(|b| b.sign == 1));
        assert_eq!(r.commutant_dimension, Some(4));
    }

    #[test]
    fn indefinite_form_is_rejected() {
        let err = HermitianForm::new(CMat::from_diagonal(&crate::numerics::CVec::from_row_slice(&[c(1.0, 0.0), c(-1.0, 0.0)])));
        assert!(matches!(err, Err(Error::NotAHermitianForm(_))));
    }

    #[test]
    fn opposite_complex_structure_gives_negative_sign() {
        // second triple uses −J on the whole space
        let g = RMat::identity(2, 2);
        let t1 = complete_triple(&TripleInput { g: Some(g.clone()), j: Some(standard_poisson(1)), omega: None }).unwrap();
        let t2 = complete_triple(&TripleInput { g: Some(&g * 3.0), j: Some(standard_symplectic(1)), omega: None }).unwrap();
        let r = compatibility_of_triples(&t1, &t2).unwrap();
        assert_eq!(r.blocks.len(), 1);
        assert_eq!(r.blocks[0].sign, -1);
        assert!(r.max_block_residual() < 1e-14);
    }

    fn arb_form(n: usize) -> impl Strategy<Value = HermitianForm> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
            let a = CMat::from_iterator(n, n, v.into_iter().map(|(x, y)| c(x, y)));
            HermitianForm::new(a.adjoint() * &a + CMat::identity(n, n) * c(0.3, 0.0)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn blocks_carry_proportional_structures(h1 in arb_form(3), h2 in arb_form(3)) {
            let r = compatibility_analysis(&h1, &h2).unwrap();
            prop_assert!(r.commutation_residual < 1e-10);
            prop_assert!(r.reproduction_residual < 1e-10);
            prop_assert!(r.max_block_residual() < 1e-9);
            prop_assert_eq!(r.blocks.iter().map(|b| b.basis.ncols()).sum::<usize>(), 6);
        }
    }
}
