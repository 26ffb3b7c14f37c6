//! Jacobi bracket on the circle, `{f, g}_k = f X g − g X f` with `X = i∂_φ`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

/// Trigonometric polynomial `Σ c_n e^{inφ}`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CircleFunction {
    modes: BTreeMap<i64, Complex64>,
}

impl CircleFunction {
    /// `f_n = e^{inφ}`.
    pub fn mode(n: i64) -> Self {
        Self::from_modes([(n, Complex64::new(1.0, 0.0))])
    }

    pub fn from_modes(modes: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let mut out = Self::default();
        for (n, c) in modes {
            out.add(n, c);
        }
        out
    }

    fn add(&mut self, n: i64, c: Complex64) {
        let e = self.modes.entry(n).or_insert(Complex64::new(0.0, 0.0));
        *e += c;
        if *e == Complex64::new(0.0, 0.0) {
            self.modes.remove(&n);
        }
    }

    pub fn coeff(&self, n: i64) -> Complex64 {
        self.modes.get(&n).copied().unwrap_or_default()
    }

    pub fn modes(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.modes.iter().map(|(&n, &c)| (n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_modes(self.modes().map(|(n, c)| (n, c * s)))
    }

    pub fn add_fn(&self, other: &Self) -> Self {
        Self::from_modes(self.modes().chain(other.modes()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (n, a) in self.modes() {
            for (m, b) in other.modes() {
                out.add(n + m, a * b);
            }
        }
        out
    }

    /// `X f = i ∂_φ f`, so `X f_n = −n f_n`.
    pub fn x_derivative(&self) -> Self {
        Self::from_modes(self.modes().map(|(n, c)| (n, c * (-(n as f64)))))
    }

    pub fn evaluate(&self, phi: f64) -> Complex64 {
        self.modes().map(|(n, c)| c * Complex64::from_polar(1.0, n as f64 * phi)).sum()
    }
}

pub fn circle_jacobi_bracket(f: &CircleFunction, g: &CircleFunction) -> CircleFunction {
    f.mul(&g.x_derivative()).add_fn(&g.mul(&f.x_derivative()).scale(Complex64::new(-1.0, 0.0)))
}
