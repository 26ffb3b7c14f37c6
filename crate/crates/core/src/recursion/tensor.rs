use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::matrix::RMat;
use crate::numerics::Polynomial;

/// A (1,1) tensor field `Tⁱⱼ(x)` with polynomial components on `Rⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorField11 {
    n: usize,
    /// Row-major: entry `(i, j)` is `Tⁱⱼ`.
    entries: Vec<Polynomial>,
}

impl TensorField11 {
    pub fn constant(m: &RMat) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        let n = m.nrows();
        let entries = (0..n * n)
            .map(|k| Polynomial::real_constant(n, m[(k / n, k % n)]))
            .collect();
        Ok(Self { n, entries })
    }

    /// From rows of polynomials over `n` variables.
    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Dimension(format!("row of length {} in a {n}×{n} tensor", row.len())));
            }
            for p in row {
                if p.nvars() != n {
                    return Err(Error::Dimension(format!("component over {} variables, expected {n}", p.nvars())));
                }
                entries.push(p);
            }
        }
        Ok(Self { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.n + j]
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(|p| p.degree() == 0)
    }

    pub fn evaluate(&self, x: &[f64]) -> RMat {
        RMat::from_fn(self.n, self.n, |i, j| self.entry(i, j).evaluate(x, 0.0).re)
    }
}

/// Nijenhuis torsion `Nⁱₖₘ` as polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Torsion {
    n: usize,
    comps: Vec<Polynomial>,
}

impl Torsion {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn component(&self, i: usize, k: usize, m: usize) -> &Polynomial {
        &self.comps[(i * self.n + k) * self.n + m]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    /// Values at `x`, indexed `[(i·n + k)·n + m]`.
    pub fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        self.comps.iter().map(|p| p.evaluate(x, 0.0).re).collect()
    }

    pub fn max_abs_at(&self, x: &[f64]) -> f64 {
        self.evaluate(x).into_iter().fold(0.0, |a, v| a.max(v.abs()))
    }
}

/// `Nⁱₖₘ = Σⱼ (∂ⱼTⁱₖ Tʲₘ + Tⁱⱼ ∂ₖTʲₘ) − (k ↔ m)`.
pub fn nijenhuis_torsion(t: &TensorField11) -> Torsion {
    let n = t.n;
    let d: Vec<Vec<Polynomial>> = t.entries.iter().map(|p| (0..n).map(|j| p.derivative(j)).collect()).collect();
    let der = |i: usize, k: usize, j: usize| &d[i * n + k][j];
    let half = |i: usize, k: usize, m: usize| {
        let mut acc = Polynomial::zero(n);
        for j in 0..n {
            acc = &acc + &(der(i, k, j) * t.entry(j, m));
            acc = &acc + &(t.entry(i, j) * der(j, m, k));
        }
        acc
    };
    let mut comps = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for k in 0..n {
            for m in 0..n {
                comps.push(&half(i, k, m) - &half(i, m, k));
            }
        }
    }
    Torsion { n, comps }
}

/// Lie derivative of `T` along the linear field `Γ = Cx`:
/// `Γʲ∂ⱼT + TC − CT`.
pub fn lie_derivative_along_linear(t: &TensorField11, c: &RMat) -> Result<TensorField11> {
    let n = t.n;
    if c.shape() != (n, n) {
        return Err(Error::Dimension("linear field and tensor differ in dimension".into()));
    }
    let gamma: Vec<Polynomial> = (0..n)
        .map(|j| {
            let mut p = Polynomial::zero(n);
            for l in 0..n {
                p = &p + &Polynomial::var(n, l).scale(Complex64::new(c[(j, l)], 0.0));
            }
            p
        })
        .collect();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = Polynomial::zero(n);
            for j in 0..n {
                acc = &acc + &(&gamma[j] * &t.entry(i, k).derivative(j));
                acc = &acc + &t.entry(i, j).scale_real(c[(j, k)]);
                acc = &acc - &t.entry(j, k).scale_real(c[(i, j)]);
            }
            row.push(acc);
        }
        rows.push(row);
    }
    TensorField11::from_rows(rows)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn var(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    /// Independent oracle: `N(X, Y) = T[TX, Y] + T[X, TY] − T²[X, Y] − [TX, TY]`
    /// on coordinate fields, with `[A, B]ⁱ = Aʲ∂ⱼBⁱ − Bʲ∂ⱼAⁱ`.
    pub(crate) fn torsion_oracle(t: &TensorField11) -> Vec<Polynomial> {
        let n = t.dim();
        type Field = Vec<Polynomial>;
        let apply = |x: &Field| -> Field {
            (0..n)
                .map(|i| (0..n).fold(Polynomial::zero(n), |acc, j| &acc + &(t.entry(i, j) * &x[j])))
                .collect()
        };
        let lie = |a: &Field, b: &Field| -> Field {
            (0..n)
                .map(|i| {
                    (0..n).fold(Polynomial::zero(n), |acc, j| {
                        &(&acc + &(&a[j] * &b[i].derivative(j))) - &(&b[j] * &a[i].derivative(j))
                    })
                })
                .collect()
        };
        let sub = |a: &Field, b: &Field| -> Field { a.iter().zip(b).map(|(x, y)| x - y).collect() };
        let add = |a: &Field, b: &Field| -> Field { a.iter().zip(b).map(|(x, y)| x + y).collect() };
        let coord = |k: usize| -> Field {
            (0..n).map(|i| if i == k { Polynomial::one(n) } else { Polynomial::zero(n) }).collect()
        };
        let mut out = vec![Polynomial::zero(n); n * n * n];
        for k in 0..n {
            for m in 0..n {
                let (x, y) = (coord(k), coord(m));
                let (tx, ty) = (apply(&x), apply(&y));
                let a = apply(&lie(&tx, &y));
                let b = apply(&lie(&x, &ty));
                let c = apply(&apply(&lie(&x, &y)));
                let d = lie(&tx, &ty);
                let nf = sub(&sub(&add(&a, &b), &c), &d);
                for (i, p) in nf.into_iter().enumerate() {
                    out[(i * n + k) * n + m] = p;
                }
            }
        }
        out
    }

    #[test]
    fn constant_tensor_is_torsion_free() {
        let m = RMat::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        assert!(nijenhuis_torsion(&TensorField11::constant(&m).unwrap()).is_zero());
    }

    #[test]
    fn single_component_example() {
        // T¹₁ = y
        let n = 2;
        let z = Polynomial::zero(n);
        let t = TensorField11::from_rows(vec![vec![var(n, 1), z.clone()], vec![z.clone(), z]]).unwrap();
        let tor = nijenhuis_torsion(&t);
        assert_eq!(tor.component(0, 0, 1), &(-var(n, 1)));
        assert_eq!(tor.component(0, 1, 0), &var(n, 1));
        assert_eq!(tor.comps, torsion_oracle(&t));
    }

    #[test]
    fn scalar_multiple_of_identity_is_torsion_free() {
        let n = 3;
        let f = &(&var(n, 0) * &var(n, 1)) + &var(n, 2).pow(2);
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { f.clone() } else { Polynomial::zero(n) }).collect())
            .collect();
        assert!(nijenhuis_torsion(&TensorField11::from_rows(rows).unwrap()).is_zero());
    }

    #[test]
    fn lie_derivative_of_constant_tensor_is_commutator() {
        let t = RMat::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 3.0]);
        let c = RMat::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.5]);
        let l = lie_derivative_along_linear(&TensorField11::constant(&t).unwrap(), &c).unwrap();
        assert!((l.evaluate(&[0.3, 0.4]) - (&t * &c - &c * &t)).norm() < 1e-15);
    }

    pub(crate) fn arb_tensor() -> impl Strategy<Value = TensorField11> {
        (2usize..=4).prop_flat_map(|n| {
            let nterms = n * n;
            proptest::collection::vec(
                proptest::collection::vec((0u32..3, 0usize..n, 0usize..n, -3i32..=3), 0..4),
                nterms,
            )
            .prop_map(move |specs| {
                let entries = specs
                    .into_iter()
                    .map(|terms| {
                        let mut p = Polynomial::zero(n);
                        for (deg, a, b, c) in terms {
                            let mut e = vec![0u32; n];
                            if deg >= 1 {
                                e[a] += 1;
                            }
                            if deg == 2 {
                                e[b] += 1;
                            }
                            p.add_term(crate::numerics::Monomial { exponents: e, hbar_power: 0 }, Complex64::new(c as f64, 0.0));
                        }
                        p
                    })
                    .collect::<Vec<_>>();
                TensorField11 { n, entries }
            })
        })
    }

    proptest! {
        #[test]
        fn torsion_matches_bracket_definition(t in arb_tensor()) {
            prop_assert_eq!(nijenhuis_torsion(&t).comps, torsion_oracle(&t));
        }

        #[test]
        fn torsion_is_antisymmetric_in_lower_indices(t in arb_tensor()) {
            let tor = nijenhuis_torsion(&t);
            let n = t.dim();
            for i in 0..n { for k in 0..n { for m in 0..n {
                prop_assert_eq!(tor.component(i, k, m), &(-tor.component(i, m, k)));
            }}}
        }

        #[test]
        fn lax_pairs_are_exactly_the_invariant_tensors(
            a in proptest::collection::vec(-2i32..=2, 9),
            b in proptest::collection::vec(-2i32..=2, 9),
        ) {
            let c = RMat::from_iterator(3, 3, a.into_iter().map(f64::from));
            // a polynomial in C always commutes with it, a random matrix usually not
            for t in [&c * &c - &c * 2.0, RMat::from_iterator(3, 3, b.into_iter().map(f64::from))] {
                let l = lie_derivative_along_linear(&TensorField11::constant(&t).unwrap(), &c).unwrap();
                let lie_zero = l.evaluate(&[0.0; 3]).norm() == 0.0;
                let commute = (&t * &c - &c * &t).norm() == 0.0;
                prop_assert_eq!(lie_zero, commute);
            }
        }
    }
}
