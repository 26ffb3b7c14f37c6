use crate::error::{Error, Result};
use crate::linear::LinearVectorField;
use crate::numerics::matrix::{rank, vec_of, RMat};
use crate::numerics::spectral::cluster_indices;

/// Commuting fields `Tᵏ Γ` for `k = 0..n`.
///
/// `T` must commute with `G` and have at most doubly degenerate eigenvalues;
/// the fields are then linearly independent.
pub fn pencil_fields(field: &LinearVectorField, t: &RMat) -> Result<Vec<LinearVectorField>> {
    let g = field.matrix();
    if t.shape() != g.shape() {
        return Err(Error::Dimension("T and G differ in shape".into()));
    }
    let comm = (t * g - g * t).norm();
    if comm > 1e-10 * (t.norm() * g.norm()).max(f64::MIN_POSITIVE) {
        return Err(Error::NotASymmetry { residual: comm });
    }
    let n = field.n_dof();
    let eig: Vec<_> = t.clone().complex_eigenvalues().iter().cloned().collect();
    let groups = cluster_indices(&eig, 1e-8 * t.norm().max(f64::MIN_POSITIVE));
    if let Some(big) = groups.iter().find(|c| c.len() > 2) {
        return Err(Error::NotGeneric(format!(
            "eigenvalue {:.6} of T has multiplicity {}",
            eig[big[0]],
            big.len()
        )));
    }

    let mut fields = Vec::with_capacity(n);
    let mut current = g.clone();
    for _ in 0..n {
        fields.push(current.clone());
        current = t * &current;
    }
    for a in &fields {
        for b in &fields {
            let c = (a * b - b * a).norm();
            if c > 1e-10 * (a.norm() * b.norm()).max(f64::MIN_POSITIVE) {
                return Err(Error::Numerical { what: "pencil fields do not commute".into(), residual: c });
            }
        }
    }
    let stacked = RMat::from_columns(&fields.iter().map(vec_of).collect::<Vec<_>>());
    let r = rank(&stacked, 1e-10);
    if r < n {
        return Err(Error::NotGeneric(format!("pencil spans only {r} of {n} directions")));
    }
    fields.into_iter().map(LinearVectorField::new).collect()
}
