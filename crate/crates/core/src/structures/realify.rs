use crate::error::{Error, Result};
use crate::numerics::matrix::{blocks, imag_part, real_part, standard_symplectic, CMat, RMat};
use num_complex::Complex64;

/// `A = α + iβ ↦ [[α, −β], [β, α]]`.
pub fn realify(a: &CMat) -> RMat {
    let (re, im) = (real_part(a), imag_part(a));
    blocks(&re, &(-&im), &im, &re)
}

/// Inverse of [`realify`] for matrices commuting with the complex structure.
pub fn unrealify(m: &RMat) -> Result<CMat> {
    if m.nrows() != m.ncols() || !m.nrows().is_multiple_of(2) {
        return Err(Error::Dimension(format!("expected an even square matrix, got {:?}", m.shape())));
    }
    let n = m.nrows() / 2;
    let a = m.view((0, 0), (n, n));
    let b = m.view((0, n), (n, n));
    let c = m.view((n, 0), (n, n));
    let d = m.view((n, n), (n, n));
    let defect = (a - d).norm() + (b + c).norm();
    if defect > 1e-10 * m.norm().max(1.0) {
        return Err(Error::InvalidInput(format!("matrix is not complex-linear (defect {defect:.3e})")));
    }
    Ok(CMat::from_fn(n, n, |i, j| Complex64::new(a[(i, j)], c[(i, j)])))
}

/// Real matrix of multiplication by `i`, namely `realify(iI)`.
pub fn complex_structure_of(n: usize) -> RMat {
    -standard_symplectic(n)
}

/// Metric and symplectic matrices `(g, Ω)` with `z†hw = g(z, w) + iΩ(z, w)`.
pub fn hermitian_to_real_pair(h: &CMat) -> (RMat, RMat) {
    let g = realify(h);
    let omega = &g * standard_symplectic(h.nrows());
    (g, omega)
}
