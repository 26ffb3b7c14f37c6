//! Necessary conditions for a linear field to admit a Hamiltonian description.

use num_complex::Complex64;
use serde::Serialize;

use super::LinearVectorField;
use crate::error::{Error, Result};
use crate::numerics::matrix::{to_complex, CMat};
use crate::numerics::spectral::cluster_indices;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct HamiltonicityOptions {
    /// `|Tr G^{2k+1}| ≤ trace_tol · ‖G‖^{2k+1}`.
    pub trace_tol: f64,
    /// Relative distance for `λ` and `−λ` to count as a pair, and for
    /// eigenvalues to be grouped before comparing Jordan structure.
    pub pairing_tol: f64,
    /// Relative singular-value cutoff for the rank sequences.
    pub rank_tol: f64,
}

impl Default for HamiltonicityOptions {
    fn default() -> Self {
        Self { trace_tol: 1e-10, pairing_tol: 1e-6, rank_tol: 1e-8 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HamiltonicityVerdict {
    pub trace_ok: bool,
    pub eigen_pairing_ok: bool,
    pub jordan_ok: bool,
    /// `|Tr G^{2k+1}| / ‖G‖^{2k+1}` for `k = 0..=kmax`.
    pub trace_residuals: Vec<f64>,
    pub eigenvalues: Vec<Complex64>,
    pub unpaired: Vec<Complex64>,
    /// Eigenvalues whose Jordan structure differs from that of their negative.
    pub jordan_mismatches: Vec<Complex64>,
}

impl HamiltonicityVerdict {
    pub fn is_hamiltonian(&self) -> bool {
        self.trace_ok && self.eigen_pairing_ok && self.jordan_ok
    }
}

pub fn hamiltonicity_test(field: &LinearVectorField, kmax: usize) -> Result<HamiltonicityVerdict> {
    hamiltonicity_test_with(field, kmax, &HamiltonicityOptions::default())
}

pub fn hamiltonicity_test_with(
    field: &LinearVectorField,
    kmax: usize,
    opts: &HamiltonicityOptions,
) -> Result<HamiltonicityVerdict> {
    let g = field.matrix();
    let n = field.n_dof();
    if kmax < n {
        return Err(Error::InvalidInput(format!("kmax must be at least {n}, got {kmax}")));
    }
    let gn = g.norm();
    let g2 = g * g;
    let mut p = g.clone();
    let mut trace_residuals = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let scale = gn.powi(2 * k as i32 + 1);
        let r = if scale > 0.0 && scale.is_finite() { p.trace().abs() / scale } else { p.trace().abs() };
        trace_residuals.push(r);
        p = &p * &g2;
    }
    let trace_ok = trace_residuals.iter().all(|&r| r <= opts.trace_tol);

    let eigenvalues: Vec<Complex64> = g.clone().complex_eigenvalues().iter().cloned().collect();
    let spread = gn.max(f64::MIN_POSITIVE);
    let (_, unpaired_idx) = eigenvalue_pairing(&eigenvalues, opts.pairing_tol * spread);
    let unpaired: Vec<Complex64> = unpaired_idx.iter().map(|&i| eigenvalues[i]).collect();

    let gc = to_complex(g);
    let groups = cluster_indices(&eigenvalues, opts.pairing_tol * spread);
    let means: Vec<Complex64> = groups
        .iter()
        .map(|c| c.iter().map(|&i| eigenvalues[i]).sum::<Complex64>() / c.len() as f64)
        .collect();
    let mut jordan_mismatches = Vec::new();
    for (a, mu) in means.iter().enumerate() {
        if mu.norm() <= opts.pairing_tol * spread {
            if !groups[a].len().is_multiple_of(2) {
                jordan_mismatches.push(*mu);
            }
            continue;
        }
        let partner = means
            .iter()
            .position(|nu| (nu + mu).norm() <= opts.pairing_tol * spread);
        let Some(b) = partner else {
            jordan_mismatches.push(*mu);
            continue;
        };
        let depth = groups[a].len().max(groups[b].len());
        let ra = rank_sequence(&gc, *mu, depth, opts.rank_tol);
        let rb = rank_sequence(&gc, means[b], depth, opts.rank_tol);
        if ra != rb {
            jordan_mismatches.push(*mu);
        }
    }

    Ok(HamiltonicityVerdict {
        trace_ok,
        eigen_pairing_ok: unpaired.is_empty(),
        jordan_ok: jordan_mismatches.is_empty(),
        trace_residuals,
        eigenvalues,
        unpaired,
        jordan_mismatches,
    })
}

/// Greedy matching of each eigenvalue with a distinct partner close to its
/// negative. Indices are visited in `(Re, Im)` order.
pub fn eigenvalue_pairing(values: &[Complex64], tol: f64) -> (Vec<(usize, usize)>, Vec<usize>) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        values[a]
            .re
            .total_cmp(&values[b].re)
            .then(values[a].im.total_cmp(&values[b].im))
            .then(a.cmp(&b))
    });
    let mut used = vec![false; values.len()];
    let mut pairs = Vec::new();
    let mut unpaired = Vec::new();
    for &i in &order {
        if used[i] {
            continue;
        }
        used[i] = true;
        let best = order
            .iter()
            .filter(|&&j| !used[j])
            .map(|&j| (j, (values[i] + values[j]).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1).then(x.0.cmp(&y.0)));
        match best {
            Some((j, d)) if d <= tol => {
                used[j] = true;
                pairs.push((i, j));
            }
            _ => unpaired.push(i),
        }
    }
    (pairs, unpaired)
}

/// `rank((M − λI)^j)` for `j = 1..=depth`. Singular values below
/// `rel_tol · (‖M‖ + |λ|)^j` count as zero.
pub fn rank_sequence(m: &CMat, lambda: Complex64, depth: usize, rel_tol: f64) -> Vec<usize> {
    let n = m.nrows();
    let a = m - CMat::identity(n, n) * lambda;
    let base = (m.norm() + lambda.norm()).max(f64::MIN_POSITIVE);
    let mut p = CMat::identity(n, n);
    let mut out = Vec::with_capacity(depth);
    for j in 1..=depth {
        p = &p * &a;
        let cutoff = rel_tol * base.powi(j as i32);
        let r = p.clone().singular_values().iter().filter(|&&s| s > cutoff).count();
        out.push(r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::RMat;

    fn field(rows: usize, v: &[f64]) -> LinearVectorField {
        LinearVectorField::new(RMat::from_row_slice(rows, rows, v)).unwrap()
    }

    #[test]
    fn traceless_two_by_two() {
        let v = hamiltonicity_test(&field(2, &[1.0, 0.0, 0.0, -1.0]), 1).unwrap();
        assert!(v.is_hamiltonian());
        let mut re: Vec<f64> = v.eigenvalues.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] + 1.0).abs() < 1e-14 && (re[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn identity_fails_the_trace_test() {
        let v = hamiltonicity_test(&field(2, &[1.0, 0.0, 0.0, 1.0]), 1).unwrap();
        assert!(!v.trace_ok);
        assert!(!v.is_hamiltonian());
    }

    #[test]
    fn two_frequency_rotation_is_hamiltonian() {
        #[rustfmt::skip]
        let g = field(4, &[
            0.0, 0.0, 1.0, 0.0,
            0.0, 0.0, 0.0, 2.0,
            -1.0, 0.0, 0.0, 0.0,
            0.0, -2.0, 0.0, 0.0,
        ]);
        let v = hamiltonicity_test(&g, 2).unwrap();
        assert!(v.is_hamiltonian(), "{v:?}");
        let mut im: Vec<f64> = v.eigenvalues.iter().map(|z| z.im).collect();
        im.sort_by(f64::total_cmp);
        for (a, b) in im.iter().zip([-2.0, -1.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn unmatched_jordan_blocks_are_detected() {
        // a 2-block at +1 against two 1-blocks at −1: traces and pairing
        // pass but the Jordan structures differ
        #[rustfmt::skip]
        let g = field(4, &[
            1.0, 1.0, 0.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, -1.0, 0.0,
            0.0, 0.0, 0.0, -1.0,
        ]);
        let v = hamiltonicity_test(&g, 2).unwrap();
        assert!(v.trace_ok && v.eigen_pairing_ok);
        assert!(!v.jordan_ok);
    }

    #[test]
    fn free_particle_is_hamiltonian() {
        // q̇ = p: nilpotent blocks at zero
        #[rustfmt::skip]
        let g = field(4, &[
            0.0, 0.0, 1.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
            0.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 0.0,
        ]);
        let v = hamiltonicity_test(&g, 2).unwrap();
        assert!(v.is_hamiltonian(), "{v:?}");
    }

    #[test]
    fn kmax_below_dof_is_rejected() {
        let g = field(4, &[0.0; 16]);
        assert!(hamiltonicity_test(&g, 1).is_err());
    }

    #[test]
    fn pairing_matches_negatives() {
        let v = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -2.0)];
        let (pairs, unpaired) = eigenvalue_pairing(&v, 1e-12);
        assert_eq!(pairs.len(), 2);
        assert!(unpaired.is_empty());
    }
}
