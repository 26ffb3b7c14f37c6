//! Sparse multivariate polynomials with complex coefficients and a formal ħ.
//!
//! Variables are indexed `0..nvars`. On phase space with `n` degrees of
//! freedom the layout is `(q₁..qₙ, p₁..pₙ)`, so `nvars = 2n`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub exponents: Vec<u32>,
    pub hbar_power: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self { exponents: vec![0; nvars], hbar_power: 0 }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect(),
            hbar_power: self.hbar_power + other.hbar_power,
        }
    }
}

/// A polynomial in `nvars` commuting variables and the formal parameter ħ.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Complex64>,
}

/// Polynomials over phase-space coordinates.
pub type PhasePolynomial = Polynomial;

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, value: Complex64) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), value);
        p
    }

    pub fn real_constant(nvars: usize, value: f64) -> Self {
        Self::constant(nvars, Complex64::new(value, 0.0))
    }

    pub fn one(nvars: usize) -> Self {
        Self::real_constant(nvars, 1.0)
    }

    /// The coordinate function `x_index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable {index} out of range for {nvars} variables");
        let mut m = Monomial::one(nvars);
        m.exponents[index] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(m, Complex64::new(1.0, 0.0));
        p
    }

    /// Position `q_i` on a phase space with `n_dof` degrees of freedom.
    pub fn q(n_dof: usize, i: usize) -> Self {
        Self::var(2 * n_dof, i)
    }

    /// Momentum `p_i` on a phase space with `n_dof` degrees of freedom.
    pub fn p(n_dof: usize, i: usize) -> Self {
        Self::var(2 * n_dof, n_dof + i)
    }

    /// The formal parameter ħ as a polynomial.
    pub fn hbar(nvars: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.hbar_power = 1;
        let mut p = Self::zero(nvars);
        p.add_term(m, Complex64::new(1.0, 0.0));
        p
    }

    pub fn monomial(exponents: Vec<u32>, hbar_power: u32, coeff: Complex64) -> Self {
        let nvars = exponents.len();
        let mut p = Self::zero(nvars);
        p.add_term(Monomial { exponents, hbar_power }, coeff);
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, u32, Complex64)>,
    {
        let mut p = Self::zero(nvars);
        for (exponents, hbar_power, coeff) in terms {
            if exponents.len() != nvars {
                return Err(Error::Dimension(format!(
                    "exponent vector of length {} in a ring with {nvars} variables",
                    exponents.len()
                )));
            }
            p.add_term(Monomial { exponents, hbar_power }, coeff);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Degrees of freedom when read as a phase-space polynomial.
    pub fn n_dof(&self) -> Result<usize> {
        if !self.nvars.is_multiple_of(2) {
            return Err(Error::Dimension(format!(
                "{} variables do not form a phase space",
                self.nvars
            )));
        }
        Ok(self.nvars / 2)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponents: &[u32], hbar_power: u32) -> Complex64 {
        let key = Monomial { exponents: exponents.to_vec(), hbar_power };
        self.terms.get(&key).copied().unwrap_or_default()
    }

    /// Adds `coeff·m` in place; a coefficient that becomes zero is removed.
    pub fn add_term(&mut self, m: Monomial, coeff: Complex64) {
        debug_assert_eq!(m.exponents.len(), self.nvars);
        if coeff == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = *o.get() + coeff;
                if sum == Complex64::new(0.0, 0.0) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension(format!(
                "polynomials over {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: Complex64) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn scale_real(&self, s: f64) -> Polynomial {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// ∂/∂x_index
    pub fn derivative(&self, index: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents[index];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.exponents[index] = e - 1;
            out.add_term(d, c * e as f64);
        }
        out
    }

    /// Multiplies every term by ħ^k.
    pub fn times_hbar(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut d = m.clone();
            d.hbar_power += k;
            out.add_term(d, *c);
        }
        out
    }

    /// The coefficient polynomial of ħ^k, with ħ removed.
    pub fn hbar_coefficient(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.hbar_power == k {
                let mut d = m.clone();
                d.hbar_power = 0;
                out.add_term(d, *c);
            }
        }
        out
    }

    /// Terms whose ħ power satisfies the predicate.
    pub fn filter_hbar(&self, keep: impl Fn(u32) -> bool) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if keep(m.hbar_power) {
                out.add_term(m.clone(), *c);
            }
        }
        out
    }

    /// Divides by ħ^k. Terms of lower ħ order must be absent.
    pub fn div_hbar(&self, k: u32) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.hbar_power < k {
                return Err(Error::InvalidInput(format!(
                    "term of hbar order {} cannot be divided by hbar^{k}",
                    m.hbar_power
                )));
            }
            let mut d = m.clone();
            d.hbar_power -= k;
            out.add_term(d, *c);
        }
        Ok(out)
    }

    /// Total degree in the variables (ħ excluded). Zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn hbar_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.hbar_power).max().unwrap_or(0)
    }

    pub fn evaluate(&self, x: &[f64], hbar: f64) -> Complex64 {
        assert_eq!(x.len(), self.nvars, "point dimension");
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = hbar.powi(m.hbar_power as i32);
            for (xi, &e) in x.iter().zip(&m.exponents) {
                if e > 0 {
                    v *= xi.powi(e as i32);
                }
            }
            acc += c * v;
        }
        acc
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient difference between two polynomials.
    pub fn max_coeff_diff(&self, other: &Polynomial) -> f64 {
        match self.checked_sub(other) {
            Ok(d) => d.max_abs_coeff(),
            Err(_) => f64::INFINITY,
        }
    }

    pub fn approx_eq(&self, other: &Polynomial, tol: f64) -> bool {
        self.max_coeff_diff(other) <= tol
    }

    /// Drops terms with |coeff| ≤ tol.
    pub fn chop(&self, tol: f64) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if c.norm() > tol {
                out.add_term(m.clone(), *c);
            }
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im == 0.0)
    }

    pub fn to_records(&self) -> Vec<PolyRecord> {
        self.terms
            .iter()
            .map(|(m, c)| PolyRecord {
                exponents: m.exponents.clone(),
                hbar_power: m.hbar_power,
                coeff: [c.re, c.im],
            })
            .collect()
    }

    pub fn from_records(nvars: usize, records: &[PolyRecord]) -> Result<Self> {
        Self::from_terms(
            nvars,
            records
                .iter()
                .map(|r| (r.exponents.clone(), r.hbar_power, Complex64::new(r.coeff[0], r.coeff[1]))),
        )
    }
}

/// JSON record of one term: `{exponents, hbar_power, coeff: [re, im]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub exponents: Vec<u32>,
    #[serde(default)]
    pub hbar_power: u32,
    #[serde(deserialize_with = "crate::numerics::json::de_complex_pair")]
    pub coeff: [f64; 2],
}

/// Poisson bracket `Σᵢ ∂f/∂qᵢ ∂g/∂pᵢ − ∂f/∂pᵢ ∂g/∂qᵢ`, so that `{q, p} = 1`.
pub fn poisson_bracket(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.check_ring(g)?;
    let n = f.n_dof()?;
    let mut out = Polynomial::zero(f.nvars);
    for i in 0..n {
        let a = f.derivative(i).checked_mul(&g.derivative(n + i))?;
        let b = f.derivative(n + i).checked_mul(&g.derivative(i))?;
        out = out.checked_add(&a)?.checked_sub(&b)?;
    }
    Ok(out)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            if m.hbar_power > 0 {
                write!(f, "·ħ^{}", m.hbar_power)?;
            }
            for (i, &e) in m.exponents.iter().enumerate() {
                if e > 0 {
                    write!(f, "·x{}^{}", i, e)?;
                }
            }
        }
        Ok(())
    }
}

// Operator sugar; panics when the rings differ. Use the `checked_*`
// methods to get an error instead.

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale_real(-1.0)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Polynomial {
        Polynomial::q(1, 0)
    }
    fn p() -> Polynomial {
        Polynomial::p(1, 0)
    }

    #[test]
    fn bracket_of_canonical_pair_is_one() {
        assert_eq!(poisson_bracket(&q(), &p()).unwrap(), Polynomial::one(2));
    }

    #[test]
    fn bracket_with_function_of_q_vanishes() {
        assert!(poisson_bracket(&q().pow(2), &q()).unwrap().is_zero());
    }

    #[test]
    fn bracket_of_half_squares() {
        let f = q().pow(2).scale_real(0.5);
        let g = p().pow(2).scale_real(0.5);
        assert_eq!(poisson_bracket(&f, &g).unwrap(), &q() * &p());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let f = Polynomial::q(1, 0);
        let g = Polynomial::q(2, 0);
        assert!(matches!(poisson_bracket(&f, &g), Err(Error::Dimension(_))));
    }

    #[test]
    fn zero_terms_are_not_stored() {
        let f = &q() - &q();
        assert!(f.is_zero());
        assert_eq!(f.len(), 0);
    }

    #[test]
    fn records_round_trip() {
        let f = &(&q() * &p()).scale(Complex64::new(2.0, -1.0)) + &Polynomial::hbar(2);
        let back = Polynomial::from_records(2, &f.to_records()).unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn evaluation_includes_hbar() {
        let f = &(&q() * &p()) + &Polynomial::hbar(2).scale_real(3.0);
        assert_eq!(f.evaluate(&[2.0, 5.0], 0.5), Complex64::new(11.5, 0.0));
    }

    fn arb_poly(n_dof: usize, max_deg: u32) -> impl Strategy<Value = Polynomial> {
        let nvars = 2 * n_dof;
        prop::collection::vec(
            (prop::collection::vec(0..=max_deg, nvars), -3i32..=3),
            0..6,
        )
        .prop_map(move |terms| {
            let mut f = Polynomial::zero(nvars);
            for (mut e, c) in terms {
                // keep total degree bounded
                while e.iter().sum::<u32>() > max_deg {
                    let k = e.iter().position(|&x| x > 0).unwrap();
                    e[k] -= 1;
                }
                f.add_term(Monomial { exponents: e, hbar_power: 0 }, Complex64::new(c as f64, 0.0));
            }
            f
        })
    }

    proptest! {
        #[test]
        fn bracket_is_antisymmetric(f in arb_poly(2, 4), g in arb_poly(2, 4)) {
            let a = poisson_bracket(&f, &g).unwrap();
            let b = poisson_bracket(&g, &f).unwrap();
            prop_assert!((&a + &b).is_zero());
        }

        #[test]
        fn bracket_is_bilinear(f in arb_poly(1, 4), g in arb_poly(1, 4), h in arb_poly(1, 4)) {
            let lhs = poisson_bracket(&(&f + &g.scale_real(3.0)), &h).unwrap();
            let rhs = &poisson_bracket(&f, &h).unwrap() + &poisson_bracket(&g, &h).unwrap().scale_real(3.0);
            prop_assert!(lhs.approx_eq(&rhs, 0.0));
        }

        #[test]
        fn bracket_satisfies_jacobi(f in arb_poly(2, 4), g in arb_poly(2, 4), h in arb_poly(2, 4)) {
            let a = poisson_bracket(&f, &poisson_bracket(&g, &h).unwrap()).unwrap();
            let b = poisson_bracket(&g, &poisson_bracket(&h, &f).unwrap()).unwrap();
            let c = poisson_bracket(&h, &poisson_bracket(&f, &g).unwrap()).unwrap();
            prop_assert!((&(&a + &b) + &c).is_zero());
        }

        #[test]
        fn bracket_is_a_derivation(f in arb_poly(2, 3), g in arb_poly(2, 3), h in arb_poly(2, 3)) {
            let lhs = poisson_bracket(&f, &(&g * &h)).unwrap();
            let rhs = &(&poisson_bracket(&f, &g).unwrap() * &h) + &(&g * &poisson_bracket(&f, &h).unwrap());
            prop_assert!(lhs.approx_eq(&rhs, 0.0));
        }
    }
}
