//! Polynomial multivector fields and the Schouten bracket of bivectors.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::numerics::matrix::{skew_defect, RMat};
use crate::numerics::Polynomial;

#[derive(Clone, Debug, PartialEq)]
pub struct PolyVectorField {
    pub comps: Vec<Polynomial>,
}

impl PolyVectorField {
    pub fn zero(n: usize) -> Self {
        Self { comps: vec![Polynomial::zero(n); n] }
    }

    /// `f ∂ₐ`.
    pub fn coordinate(n: usize, a: usize, f: Polynomial) -> Self {
        let mut v = Self::zero(n);
        v.comps[a] = f;
        v
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    /// `X(f) = Xʲ∂ⱼf`.
    pub fn derive(&self, f: &Polynomial) -> Polynomial {
        self.comps
            .iter()
            .enumerate()
            .fold(Polynomial::zero(self.dim()), |acc, (j, x)| &acc + &(x * &f.derivative(j)))
    }

    /// `[X, Y]ⁱ = X(Yⁱ) − Y(Xⁱ)`.
    pub fn lie_bracket(&self, other: &Self) -> Self {
        let comps = (0..self.dim())
            .map(|i| &self.derive(&other.comps[i]) - &other.derive(&self.comps[i]))
            .collect();
        Self { comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }
}

/// `Σ_{a<b} Pᵃᵇ ∂ₐ∧∂_b` with `Pᵃᵇ = −Pᵇᵃ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyBivector {
    n: usize,
    comps: Vec<Polynomial>,
}

impl PolyBivector {
    pub fn zero(n: usize) -> Self {
        Self { n, comps: vec![Polynomial::zero(n); n * n] }
    }

    /// From upper-triangular entries `(a, b, Pᵃᵇ)` with `a < b`.
    pub fn from_upper(n: usize, entries: Vec<(usize, usize, Polynomial)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (a, b, p) in entries {
            if a >= b || b >= n {
                return Err(Error::InvalidInput(format!("entry ({a}, {b}) is not strictly upper")));
            }
            if p.nvars() != n {
                return Err(Error::Dimension(format!("component over {} variables, expected {n}", p.nvars())));
            }
            out.comps[a * n + b] = &out.comps[a * n + b] + &p;
            out.comps[b * n + a] = -&out.comps[a * n + b];
        }
        Ok(out)
    }

    pub fn constant(m: &RMat) -> Result<Self> {
        if m.nrows() != m.ncols() || skew_defect(m) != 0.0 {
            return Err(Error::InvalidInput("constant bivector needs an exactly skew matrix".into()));
        }
        let n = m.nrows();
        let comps = (0..n * n).map(|k| Polynomial::real_constant(n, m[(k / n, k % n)])).collect();
        Ok(Self { n, comps })
    }

    /// `Σᵢ ∂_{qᵢ}∧∂_{pᵢ}` on `R²ⁿ`, whose bracket gives `{qᵢ, pⱼ} = δᵢⱼ`.
    pub fn canonical(n_dof: usize) -> Self {
        let n = 2 * n_dof;
        let entries = (0..n_dof).map(|i| (i, n_dof + i, Polynomial::one(n))).collect();
        Self::from_upper(n, entries).expect("valid indices")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn component(&self, a: usize, b: usize) -> &Polynomial {
        &self.comps[a * self.n + b]
    }

    /// `kP`.
    pub fn scaled(&self, k: &Polynomial) -> Self {
        Self { n: self.n, comps: self.comps.iter().map(|p| k * p).collect() }
    }

    /// `P(df, dg) = Σ Pᵃᵇ ∂ₐf ∂_bg`.
    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(self.n);
        for a in 0..self.n {
            let fa = f.derivative(a);
            if fa.is_zero() {
                continue;
            }
            for b in 0..self.n {
                acc = &acc + &(&(self.component(a, b) * &fa) * &g.derivative(b));
            }
        }
        acc
    }

    /// `X_k = {k, ·}`, i.e. `X_kᵇ = Σₐ Pᵃᵇ ∂ₐk`.
    pub fn hamiltonian_field(&self, k: &Polynomial) -> PolyVectorField {
        let comps = (0..self.n)
            .map(|b| (0..self.n).fold(Polynomial::zero(self.n), |acc, a| &acc + &(self.component(a, b) * &k.derivative(a))))
            .collect();
        PolyVectorField { comps }
    }

    /// `kP(df, dg) + f{k, g} − g{k, f}` with `{·,·}` the bracket of `P`.
    pub fn jacobi_bracket(&self, k: &Polynomial, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let main = k * &self.bracket(f, g);
        &(&main + &(f * &self.bracket(k, g))) - &(g * &self.bracket(k, f))
    }

    /// `X ∧ P`.
    pub fn wedge_vector(&self, x: &PolyVectorField) -> PolyTrivector {
        let n = self.n;
        let mut out = PolyTrivector::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let t = &(&(&x.comps[i] * self.component(j, k)) - &(&x.comps[j] * self.component(i, k)))
                        + &(&x.comps[k] * self.component(i, j));
                    out.add(i, j, k, &t);
                }
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.component(a, b) == &(-self.component(b, a))))
    }

    /// Terms `Pᵃᵇ ∂ₐ ∧ ∂_b`, `a < b`, as pairs of vector fields.
    fn monomials(&self) -> Vec<(PolyVectorField, PolyVectorField)> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let p = self.component(a, b);
                if !p.is_zero() {
                    out.push((
                        PolyVectorField::coordinate(n, a, p.clone()),
                        PolyVectorField::coordinate(n, b, Polynomial::one(n)),
                    ));
                }
            }
        }
        out
    }
}

/// `Σ_{i<j<k} Tⁱʲᵏ ∂ᵢ∧∂ⱼ∧∂ₖ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyTrivector {
    n: usize,
    comps: BTreeMap<(usize, usize, usize), Polynomial>,
}

impl PolyTrivector {
    pub fn zero(n: usize) -> Self {
        Self { n, comps: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `u∧v∧w`, components by determinant.
    pub fn wedge(u: &PolyVectorField, v: &PolyVectorField, w: &PolyVectorField) -> Self {
        let n = u.dim();
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let m = |a: usize, b: usize, c: usize| &(&u.comps[a] * &v.comps[b]) * &w.comps[c];
                    let det = &(&(&m(i, j, k) - &m(i, k, j)) + &(&m(j, k, i) - &m(j, i, k)))
                        + &(&m(k, i, j) - &m(k, j, i));
                    out.add(i, j, k, &det);
                }
            }
        }
        out
    }

    fn add(&mut self, i: usize, j: usize, k: usize, p: &Polynomial) {
        if p.is_zero() {
            return;
        }
        let e = self.comps.entry((i, j, k)).or_insert_with(|| Polynomial::zero(self.n));
        *e = &*e + p;
        if e.is_zero() {
            self.comps.remove(&(i, j, k));
        }
    }

    fn accumulate(&mut self, other: &Self, sign: f64) {
        for (&(i, j, k), p) in &other.comps {
            self.add(i, j, k, &p.scale_real(sign));
        }
    }

    /// Component for any index order, with the permutation sign.
    pub fn component(&self, i: usize, j: usize, k: usize) -> Polynomial {
        let mut idx = [i, j, k];
        if i == j || j == k || i == k {
            return Polynomial::zero(self.n);
        }
        let mut sign = 1.0;
        for a in 0..3 {
            for b in 0..2 - a {
                if idx[b] > idx[b + 1] {
                    idx.swap(b, b + 1);
                    sign = -sign;
                }
            }
        }
        self.comps
            .get(&(idx[0], idx[1], idx[2]))
            .map(|p| p.scale_real(sign))
            .unwrap_or_else(|| Polynomial::zero(self.n))
    }

    pub fn scale_real(&self, s: f64) -> Self {
        let mut out = Self::zero(self.n);
        out.accumulate(self, s);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Nonzero components in increasing index order.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Polynomial)> {
        self.comps.iter()
    }
}

/// Schouten bracket of two bivectors, expanded over monomials
/// `χ₁∧χ₂` and `η₁∧η₂`:
/// `[χ₁,η₁]∧χ₂∧η₂ − [χ₁,η₂]∧χ₂∧η₁ − [χ₂,η₁]∧χ₁∧η₂ + [χ₂,η₂]∧χ₁∧η₁`.
pub fn schouten_bracket(a: &PolyBivector, b: &PolyBivector) -> Result<PolyTrivector> {
    if a.n != b.n {
        return Err(Error::Dimension(format!("bivectors on R^{} and R^{}", a.n, b.n)));
    }
    let mut out = PolyTrivector::zero(a.n);
    let ma = a.monomials();
    let mb = b.monomials();
    for (c1, c2) in &ma {
        for (e1, e2) in &mb {
            out.accumulate(&PolyTrivector::wedge(&c1.lie_bracket(e1), c2, e2), 1.0);
            out.accumulate(&PolyTrivector::wedge(&c1.lie_bracket(e2), c2, e1), -1.0);
            out.accumulate(&PolyTrivector::wedge(&c2.lie_bracket(e1), c1, e2), -1.0);
            out.accumulate(&PolyTrivector::wedge(&c2.lie_bracket(e2), c1, e1), 1.0);
        }
    }
    Ok(out)
}
