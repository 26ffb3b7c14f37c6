//! Moyal products and brackets on polynomials (exact) and on the grid.

use num_complex::Complex64;

use super::grid::{GridFunction, KernelOperator};
use super::transform::{weyl_map, wigner_transform};
use crate::error::{Error, Result};
use crate::numerics::matrix::c;
use crate::numerics::{poisson_bracket, PhasePolynomial};

/// Associative product with its commutator bracket `(a∗b − b∗a)/iħ`.
pub trait StarProduct {
    type Element;
    fn star(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element>;
    fn bracket(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element>;
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// `f exp{(iħ/2)(←∂_q →∂_p − ←∂_p →∂_q)} g` with a formal ħ. The series
/// terminates on polynomials.
pub fn moyal_product(f: &PhasePolynomial, g: &PhasePolynomial) -> Result<PhasePolynomial> {
    if f.nvars() != g.nvars() {
        return Err(Error::Dimension(format!("{} and {} variables", f.nvars(), g.nvars())));
    }
    let n = f.n_dof()?;
    let mut pairs: Vec<(PhasePolynomial, PhasePolynomial)> = vec![(f.clone(), g.clone())];
    for i in 0..n {
        let (qi, pi) = (i, n + i);
        let mut next = Vec::new();
        for (a, b) in &pairs {
            // ∂_q^r ∂_p^s a ⊗ ∂_p^r ∂_q^s b with weight (iħ/2)^{r+s}(−1)^s/(r!s!)
            let mut da_r = a.clone();
            let mut db_r = b.clone();
            let mut r = 0u32;
            while !da_r.is_zero() && !db_r.is_zero() {
                let mut da = da_r.clone();
                let mut db = db_r.clone();
                let mut s = 0u32;
                while !da.is_zero() && !db.is_zero() {
                    let k = r + s;
                    let w = Complex64::new(0.0, 0.5).powu(k) * (if s.is_multiple_of(2) { 1.0 } else { -1.0 })
                        / (factorial(r) * factorial(s));
                    next.push((da.scale(w).times_hbar(k), db.clone()));
                    da = da.derivative(pi);
                    db = db.derivative(qi);
                    s += 1;
                }
                da_r = da_r.derivative(qi);
                db_r = db_r.derivative(pi);
                r += 1;
            }
        }
        pairs = next;
    }
    let mut out = PhasePolynomial::zero(f.nvars());
    for (a, b) in pairs {
        out = out.checked_add(&a.checked_mul(&b)?)?;
    }
    Ok(out)
}

/// `{f, g}_M = (f∗g − g∗f)/iħ`.
pub fn moyal_bracket(f: &PhasePolynomial, g: &PhasePolynomial) -> Result<PhasePolynomial> {
    let d = moyal_product(f, g)?.checked_sub(&moyal_product(g, f)?)?;
    Ok(d.div_hbar(1)?.scale(c(0.0, -1.0)))
}

fn check_poly_deformation(k: &PhasePolynomial) -> Result<()> {
    if k.hbar_degree() > 0 || !k.is_real() {
        return Err(Error::Deformation("deformation must be a real, ħ-free polynomial".into()));
    }
    let nv = k.nvars();
    // lattice {−2, −1.5, …, 2} in every variable, capped at four variables
    if nv <= 4 {
        let steps: Vec<f64> = (0..9).map(|s| -2.0 + 0.5 * s as f64).collect();
        let total = 9usize.pow(nv as u32);
        for idx in 0..total {
            let mut rem = idx;
            let x: Vec<f64> = (0..nv)
                .map(|_| {
                    let v = steps[rem % 9];
                    rem /= 9;
                    v
                })
                .collect();
            let v = k.evaluate(&x, 0.0).re;
            if v <= 0.0 {
                return Err(Error::Deformation(format!("deformation is not positive at {x:?} (value {v})")));
            }
        }
    } else if k.coeff(&vec![0; nv], 0).re <= 0.0 {
        return Err(Error::Deformation("deformation is not positive at the origin".into()));
    }
    Ok(())
}

/// `f ∗_k g = f∗k∗g`.
pub fn deformed_moyal_product(f: &PhasePolynomial, k: &PhasePolynomial, g: &PhasePolynomial) -> Result<PhasePolynomial> {
    check_poly_deformation(k)?;
    moyal_product(&moyal_product(f, k)?, g)
}

/// `{f, g}_{M,k} = (f∗k∗g − g∗k∗f)/iħ`.
pub fn deformed_moyal_bracket(f: &PhasePolynomial, k: &PhasePolynomial, g: &PhasePolynomial) -> Result<PhasePolynomial> {
    let d = deformed_moyal_product(f, k, g)?.checked_sub(&deformed_moyal_product(g, k, f)?)?;
    Ok(d.div_hbar(1)?.scale(c(0.0, -1.0)))
}

/// Jacobi bracket `{f, g}_k = k{f, g} + f{k, g} − g{k, f}`.
pub fn classical_deformed_bracket(f: &PhasePolynomial, g: &PhasePolynomial, k: &PhasePolynomial) -> Result<PhasePolynomial> {
    let a = k.checked_mul(&poisson_bracket(f, g)?)?;
    let b = f.checked_mul(&poisson_bracket(k, g)?)?;
    let d = g.checked_mul(&poisson_bracket(k, f)?)?;
    a.checked_add(&b)?.checked_sub(&d)
}

/// Exact Moyal product on polynomials, optionally deformed.
#[derive(Clone, Debug, Default)]
pub struct PolyMoyal {
    pub deformation: Option<PhasePolynomial>,
}

impl StarProduct for PolyMoyal {
    type Element = PhasePolynomial;

    fn star(&self, a: &PhasePolynomial, b: &PhasePolynomial) -> Result<PhasePolynomial> {
        match &self.deformation {
            Some(k) => deformed_moyal_product(a, k, b),
            None => moyal_product(a, b),
        }
    }

    fn bracket(&self, a: &PhasePolynomial, b: &PhasePolynomial) -> Result<PhasePolynomial> {
        match &self.deformation {
            Some(k) => deformed_moyal_bracket(a, k, b),
            None => moyal_bracket(a, b),
        }
    }
}

/// `Ω⁻¹(Ω(f)Ω(g))` on a conjugate grid.
pub fn grid_moyal_product(f: &GridFunction, g: &GridFunction) -> Result<GridFunction> {
    f.grid.require_same(&g.grid)?;
    let prod = weyl_map(f)?.compose(&weyl_map(g)?)?;
    Ok(wigner_transform(&prod)?.function)
}

fn check_grid_deformation(k: &GridFunction) -> Result<()> {
    let scale = k.max_abs().max(f64::MIN_POSITIVE);
    if let Some(z) = k.values.iter().find(|z| z.im.abs() > 1e-12 * scale || z.re <= 0.0) {
        return Err(Error::Deformation(format!("deformation is not strictly positive on the grid (value {z})")));
    }
    Ok(())
}

/// `f∗k∗g` on the grid.
pub fn grid_deformed_product(f: &GridFunction, k: &GridFunction, g: &GridFunction) -> Result<GridFunction> {
    check_grid_deformation(k)?;
    f.grid.require_same(&k.grid)?;
    f.grid.require_same(&g.grid)?;
    let op: KernelOperator = weyl_map(f)?.compose(&weyl_map(k)?)?.compose(&weyl_map(g)?)?;
    Ok(wigner_transform(&op)?.function)
}

/// Star product on a grid, optionally deformed.
#[derive(Clone, Debug, Default)]
pub struct GridMoyal {
    pub deformation: Option<GridFunction>,
}

impl StarProduct for GridMoyal {
    type Element = GridFunction;

    fn star(&self, a: &GridFunction, b: &GridFunction) -> Result<GridFunction> {
        match &self.deformation {
            Some(k) => grid_deformed_product(a, k, b),
            None => grid_moyal_product(a, b),
        }
    }

    fn bracket(&self, a: &GridFunction, b: &GridFunction) -> Result<GridFunction> {
        let d = &self.star(a, b)? - &self.star(b, a)?;
        Ok(d.scale(c(0.0, -1.0 / a.grid.hbar())))
    }
}
