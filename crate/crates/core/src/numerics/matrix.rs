//! Dense matrix helpers on top of nalgebra.

use nalgebra::{ComplexField, DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type RMat = DMatrix<f64>;
pub type CMat = DMatrix<Complex64>;
pub type RVec = DVector<f64>;
pub type CVec = DVector<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn require_square<T>(m: &DMatrix<T>) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    Ok(m.nrows())
}

pub fn require_same_shape<T, U>(a: &DMatrix<T>, b: &DMatrix<U>, what: &str) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::Dimension(format!(
            "{what}: shapes {:?} and {:?} differ",
            a.shape(),
            b.shape()
        )));
    }
    Ok(())
}

/// `[[0, I], [-I, 0]]`, the matrix of Σ dqᵢ∧dpᵢ in (q₁..qₙ, p₁..pₙ) order.
pub fn standard_symplectic(n: usize) -> RMat {
    let mut m = RMat::zeros(2 * n, 2 * n);
    for i in 0..n {
        m[(i, n + i)] = 1.0;
        m[(n + i, i)] = -1.0;
    }
    m
}

/// Inverse of [`standard_symplectic`].
pub fn standard_poisson(n: usize) -> RMat {
    -standard_symplectic(n)
}

pub fn to_complex(m: &RMat) -> CMat {
    m.map(|x| Complex64::new(x, 0.0))
}

pub fn real_part(m: &CMat) -> RMat {
    m.map(|z| z.re)
}

pub fn imag_part(m: &CMat) -> RMat {
    m.map(|z| z.im)
}

/// ‖M − Mᵀ‖_F
pub fn asymmetry(m: &RMat) -> f64 {
    (m - m.transpose()).norm()
}

/// ‖M + Mᵀ‖_F
pub fn skew_defect(m: &RMat) -> f64 {
    (m + m.transpose()).norm()
}

/// ‖M − M†‖_F
pub fn hermitian_defect(m: &CMat) -> f64 {
    (m - m.adjoint()).norm()
}

pub fn symmetric_part(m: &RMat) -> RMat {
    (m + m.transpose()) * 0.5
}

pub fn skew_part(m: &RMat) -> RMat {
    (m - m.transpose()) * 0.5
}

pub fn commutator<T: ComplexField>(a: &DMatrix<T>, b: &DMatrix<T>) -> DMatrix<T> {
    a * b - b * a
}

pub fn anticommutator<T: ComplexField>(a: &DMatrix<T>, b: &DMatrix<T>) -> DMatrix<T> {
    a * b + b * a
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn trace_c(m: &CMat) -> Complex64 {
    m.trace()
}

/// Inverse with a relative singularity guard based on singular values.
pub fn inverse<T>(m: &DMatrix<T>, what: &str) -> Result<DMatrix<T>>
where
    T: ComplexField<RealField = f64>,
{
    require_square(m)?;
    let n = m.nrows();
    if n == 0 {
        return Ok(m.clone());
    }
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if max == 0.0 || min <= 1e-13 * max {
        return Err(Error::Singular(format!("{what} (condition estimate {:.3e})", max / min)));
    }
    m.clone()
        .try_inverse()
        .ok_or_else(|| Error::Singular(what.to_string()))
}

/// Numerical rank from singular values relative to the largest one.
pub fn rank<T>(m: &DMatrix<T>, rel_tol: f64) -> usize
where
    T: ComplexField<RealField = f64>,
{
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * max).count()
}

/// Orthonormal basis of the null space of `m`. Singular values at or below
/// `abs_tol` count as zero.
pub fn nullspace<T>(m: &DMatrix<T>, abs_tol: f64) -> Vec<DVector<T>>
where
    T: ComplexField<RealField = f64>,
{
    let (rows, cols) = m.shape();
    if cols == 0 {
        return Vec::new();
    }
    // thin SVD only yields a full right basis when rows >= cols
    let padded = if rows < cols {
        let mut p = DMatrix::<T>::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut out = Vec::new();
    for (k, s) in svd.singular_values.iter().enumerate() {
        if *s <= abs_tol {
            out.push(v_t.row(k).adjoint());
        }
    }
    out
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let eig = m.clone().symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(k));
    }
    (values, vectors)
}

/// `exp(z·H)` for Hermitian `H`.
pub fn expm_hermitian(h: &CMat, z: Complex64) -> CMat {
    let (vals, vecs) = hermitian_eigen(h);
    let d = CMat::from_diagonal(&CVec::from_iterator(
        vals.len(),
        vals.iter().map(|&l| (z * l).exp()),
    ));
    &vecs * d * vecs.adjoint()
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &CMat) -> f64 {
    hermitian_eigen(m).0.first().copied().unwrap_or(0.0)
}

/// Pauli matrices σ₁, σ₂, σ₃.
pub fn pauli() -> [CMat; 3] {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    [
        CMat::from_row_slice(2, 2, &[o, one, one, o]),
        CMat::from_row_slice(2, 2, &[o, -I, I, o]),
        CMat::from_row_slice(2, 2, &[one, o, o, -one]),
    ]
}

/// Block matrix `[[a, b], [c, d]]` from equally sized square blocks.
pub fn blocks(a: &RMat, b: &RMat, c: &RMat, d: &RMat) -> RMat {
    let n = a.nrows();
    let mut m = RMat::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(a);
    m.view_mut((0, n), (n, n)).copy_from(b);
    m.view_mut((n, 0), (n, n)).copy_from(c);
    m.view_mut((n, n), (n, n)).copy_from(d);
    m
}

/// Column-major vectorisation.
pub fn vec_of<T: nalgebra::Scalar + Copy>(m: &DMatrix<T>) -> DVector<T> {
    DVector::from_column_slice(m.as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_pair_inverts() {
        let om = standard_symplectic(3);
        let la = standard_poisson(3);
        assert!((&la * &om - RMat::identity(6, 6)).norm() < 1e-15);
        assert!(skew_defect(&om) == 0.0);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = RMat::from_row_slice(2, 3, &[1.0, 1.0, 0.0, 2.0, 2.0, 0.0]);
        let ns = nullspace(&m, 1e-12);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!((&m * v).norm() < 1e-12);
        }
    }

    #[test]
    fn singular_inverse_is_reported() {
        let m = RMat::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(matches!(inverse(&m, "test"), Err(Error::Singular(_))));
    }

    #[test]
    fn pauli_products() {
        let s = pauli();
        let id = CMat::identity(2, 2);
        for k in 0..3 {
            assert!((&s[k] * &s[k] - &id).norm() < 1e-15);
        }
        assert!((&s[0] * &s[1] - s[2].map(|z| z * I)).norm() < 1e-15);
    }

    #[test]
    fn expm_of_hermitian_is_unitary() {
        let s = pauli();
        let u = expm_hermitian(&(&s[0] + &s[2]), Complex64::new(0.0, -0.7));
        assert!((&u * u.adjoint() - CMat::identity(2, 2)).norm() < 1e-13);
    }
}
