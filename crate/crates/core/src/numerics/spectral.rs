//! Eigen-decomposition with degeneracy clusters, Jordan chains and commutants.

use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex64;
use serde::Serialize;

use super::matrix::{nullspace, require_square, CMat, CVec, RMat};
use crate::error::{Error, Result};

pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VectorKind {
    Proper,
    /// Generalised eigenvector: `(M − λ)^order v = 0` with `order ≥ 2`.
    Generalized { order: usize },
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    /// Columns aligned with `eigenvalues`.
    pub eigenvectors: CMat,
    pub kinds: Vec<VectorKind>,
    /// Partition of `0..n` into groups of numerically equal eigenvalues.
    pub clusters: Vec<Vec<usize>>,
    pub cluster_tol: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn is_defective(&self) -> bool {
        self.kinds.iter().any(|k| *k != VectorKind::Proper)
    }

    /// Mean eigenvalue of a cluster.
    pub fn cluster_value(&self, k: usize) -> Complex64 {
        let c = &self.clusters[k];
        c.iter().map(|&i| self.eigenvalues[i]).sum::<Complex64>() / c.len() as f64
    }

    /// Largest `‖Mv − λv‖` over proper eigenpairs.
    pub fn max_residual(&self, m: &CMat) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, kind) in self.kinds.iter().enumerate() {
            if *kind == VectorKind::Proper {
                let v = self.eigenvectors.column(i);
                let r = (m * v - v * self.eigenvalues[i]).norm();
                worst = worst.max(r);
            }
        }
        worst
    }
}

/// Single-linkage grouping of values closer than `tol`, groups ordered by
/// their smallest member in `(Re, Im)` order.
pub(crate) fn cluster_indices(values: &[Complex64], tol: f64) -> Vec<Vec<usize>> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut j = i;
        while p[j] != r {
            let next = p[j];
            p[j] = r;
            j = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        values[a]
            .re
            .total_cmp(&values[b].re)
            .then(values[a].im.total_cmp(&values[b].im))
    });
    for i in order {
        let r = find(&mut parent, i);
        match root_of[r] {
            Some(g) => groups[g].push(i),
            None => {
                root_of[r] = Some(groups.len());
                groups.push(vec![i]);
            }
        }
    }
    groups
}

/// Full eigen-decomposition of a square complex matrix.
///
/// Eigenvalues within `cluster_tol·‖M‖` of each other share a cluster. When a
/// cluster has fewer independent eigenvectors than its size, the missing
/// columns are filled with generalised eigenvectors and flagged.
pub fn spectral_decompose(m: &CMat, cluster_tol: f64) -> Result<Spectrum> {
    let n = require_square(m)?;
    if n == 0 {
        return Ok(Spectrum {
            eigenvalues: vec![],
            eigenvectors: CMat::zeros(0, 0),
            kinds: vec![],
            clusters: vec![],
            cluster_tol,
        });
    }
    let scale = m.norm().max(f64::MIN_POSITIVE);
    let schur = nalgebra::Schur::try_new(m.clone(), 1e-15, 10_000).ok_or_else(|| {
        Error::Numerical { what: "Schur iteration did not converge".into(), residual: f64::NAN }
    })?;
    let (_, t) = schur.unpack();
    let raw: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();

    let groups = cluster_indices(&raw, cluster_tol * scale);
    let mut eigenvalues = Vec::with_capacity(n);
    let mut kinds = Vec::with_capacity(n);
    let mut columns: Vec<CVec> = Vec::with_capacity(n);
    let mut clusters = Vec::with_capacity(groups.len());

    for group in &groups {
        let alg = group.len();
        let mu = group.iter().map(|&i| raw[i]).sum::<Complex64>() / alg as f64;
        let a = m - CMat::identity(n, n) * mu;
        let null_tol = 10.0 * cluster_tol * scale;
        let mut proper = smallest_right_vectors(&a, alg, null_tol);
        let start = eigenvalues.len();
        if proper.len() >= alg {
            proper.truncate(alg);
            for (v, &i) in proper.into_iter().zip(group) {
                columns.push(v);
                eigenvalues.push(raw[i]);
                kinds.push(VectorKind::Proper);
            }
        } else {
            // defective: generalised eigenspace is the null space of A^alg
            let mut a_pow = a.clone();
            for _ in 1..alg {
                a_pow = &a_pow * &a;
            }
            let gen_tol = 10.0 * cluster_tol * scale.powi(alg as i32).max(f64::MIN_POSITIVE);
            let mut space = smallest_right_vectors(&a_pow, alg, gen_tol);
            if space.len() < alg {
                space = forced_smallest(&a_pow, alg);
            }
            // orthogonalise the generalised vectors against the proper ones
            let mut basis: Vec<CVec> = proper.clone();
            for v in space {
                let mut w = v.clone();
                for b in &basis {
                    let proj = b.dotc(&w);
                    w -= b * proj;
                }
                let norm = w.norm();
                if norm > 1e-6 && basis.len() < alg {
                    basis.push(w / Complex64::new(norm, 0.0));
                }
            }
            for (k, v) in basis.into_iter().enumerate() {
                let kind = if k < proper.len() {
                    VectorKind::Proper
                } else {
                    VectorKind::Generalized { order: chain_order(&a, &v, alg, null_tol) }
                };
                columns.push(v);
                eigenvalues.push(raw[group[k.min(alg - 1)]]);
                kinds.push(kind);
            }
            if columns.len() - start < alg {
                return Err(Error::Numerical {
                    what: "could not complete a Jordan basis".into(),
                    residual: (alg - (columns.len() - start)) as f64,
                });
            }
        }
        clusters.push((start..start + alg).collect());
    }

    let eigenvectors = CMat::from_columns(&columns);
    let spectrum = Spectrum { eigenvalues, eigenvectors, kinds, clusters, cluster_tol };
    let residual = spectrum.max_residual(m);
    if residual > 1e-6 * scale {
        return Err(Error::Numerical { what: "eigenpair residual too large".into(), residual });
    }
    Ok(spectrum)
}

fn smallest_right_vectors(a: &CMat, max: usize, tol: f64) -> Vec<CVec> {
    let mut vs = nullspace(a, tol);
    vs.truncate(max);
    vs
}

fn forced_smallest(a: &CMat, k: usize) -> Vec<CVec> {
    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&x, &y| svd.singular_values[x].total_cmp(&svd.singular_values[y]));
    idx.into_iter().take(k).map(|i| v_t.row(i).adjoint()).collect()
}

fn chain_order(a: &CMat, v: &CVec, alg: usize, tol: f64) -> usize {
    let mut w = v.clone();
    for k in 1..=alg {
        w = a * w;
        if w.norm() <= tol.max(1e-10) {
            return k;
        }
    }
    alg
}

/// Basis of `{T : GT − TG = 0}`, from the null space of the vectorised
/// commutator `I⊗G − Gᵀ⊗I`.
pub fn commutant_basis(g: &RMat) -> Vec<RMat> {
    commutant_basis_generic(g)
}

/// Complex dimension of the commutant of `F` in the full matrix algebra.
pub fn commutant_dimension(f: &CMat) -> usize {
    commutant_basis_generic(f).len()
}

pub fn commutant_basis_generic<T>(g: &DMatrix<T>) -> Vec<DMatrix<T>>
where
    T: ComplexField<RealField = f64>,
{
    let n = g.nrows();
    if n == 0 || g.ncols() != n {
        return Vec::new();
    }
    let id = DMatrix::<T>::identity(n, n);
    let k = id.kronecker(g) - g.transpose().kronecker(&id);
    let smax = k.clone().singular_values().iter().cloned().fold(0.0, f64::max);
    let tol = 1e-10 * smax.max(g.norm());
    nullspace(&k, tol)
        .into_iter()
        .map(|v| DMatrix::from_column_slice(n, n, v.as_slice()))
        .collect()
}
