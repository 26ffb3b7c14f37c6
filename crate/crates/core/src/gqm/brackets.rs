//! Brackets of quadratic functions `f_A(x) = ⟨x, Ax⟩/⟨x, x⟩` on the projective space.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::matrix::{c, CMat, CVec, I};

fn normalised(x: &CVec, a: &CMat) -> Result<CVec> {
    if a.nrows() != a.ncols() || a.nrows() != x.len() {
        return Err(Error::Dimension(format!("operator {}×{} on vector of length {}", a.nrows(), a.ncols(), x.len())));
    }
    let n = x.norm();
    if n == 0.0 {
        return Err(Error::Domain("quadratic functions are evaluated on nonzero vectors".into()));
    }
    Ok(x / c(n, 0.0))
}

/// `⟨x, Ax⟩ / ⟨x, x⟩`.
pub fn expectation(x: &CVec, a: &CMat) -> Result<Complex64> {
    let u = normalised(x, a)?;
    Ok(u.dotc(&(a * &u)))
}

/// Gradient of `f_A` at `x/‖x‖`, i.e. `2(A − f_A)x`.
pub fn fs_gradient(x: &CVec, a: &CMat) -> Result<CVec> {
    let u = normalised(x, a)?;
    let e = u.dotc(&(a * &u));
    Ok((a * &u - &u * e) * c(2.0, 0.0))
}

/// `{f_A, f_B}_g = ½Re⟨∇A, ∇B⟩ + 2f_Af_B`.
pub fn jordan_bracket_at(x: &CVec, a: &CMat, b: &CMat) -> Result<f64> {
    let (ga, gb) = (fs_gradient(x, a)?, fs_gradient(x, b)?);
    Ok(0.5 * ga.dotc(&gb).re + 2.0 * (expectation(x, a)? * expectation(x, b)?).re)
}

/// `{f_A, f_B}_ω = ½Im⟨∇A, ∇B⟩`.
pub fn poisson_bracket_at(x: &CVec, a: &CMat, b: &CMat) -> Result<f64> {
    let (ga, gb) = (fs_gradient(x, a)?, fs_gradient(x, b)?);
    Ok(0.5 * ga.dotc(&gb).im)
}

/// `(f_M ⋆ f_N)(x) = ¼⟨∇M†, ∇N⟩ + f_Mf_N`, complex-bilinear in `M`, `N`.
pub fn star_at(x: &CVec, m: &CMat, n: &CMat) -> Result<Complex64> {
    let (gm, gn) = (fs_gradient(x, &m.adjoint())?, fs_gradient(x, n)?);
    Ok(gm.dotc(&gn) * 0.25 + expectation(x, m)? * expectation(x, n)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadraticBracketReport {
    pub jordan: f64,
    pub poisson: f64,
    pub star: Complex64,
    /// `|{f_A,f_B}_g − f_{AB+BA}|`.
    pub jordan_residual: f64,
    /// `|{f_A,f_B}_ω − f_{(AB−BA)/i}|`.
    pub poisson_residual: f64,
    /// `|f_A ⋆ f_B − f_{AB}|`.
    pub star_residual: f64,
}

impl QuadraticBracketReport {
    pub fn max_residual(&self) -> f64 {
        self.jordan_residual.max(self.poisson_residual).max(self.star_residual)
    }
}

pub fn quadratic_bracket_check(a: &CMat, b: &CMat, x: &CVec) -> Result<QuadraticBracketReport> {
    let jordan = jordan_bracket_at(x, a, b)?;
    let poisson = poisson_bracket_at(x, a, b)?;
    let star = star_at(x, a, b)?;
    let (ab, ba) = (a * b, b * a);
    let sym = expectation(x, &(&ab + &ba))?;
    let skew = expectation(x, &((&ab - &ba) * (-I)))?;
    let prod = expectation(x, &ab)?;
    Ok(QuadraticBracketReport {
        jordan,
        poisson,
        star,
        jordan_residual: (c(jordan, 0.0) - sym).norm(),
        poisson_residual: (c(poisson, 0.0) - skew).norm(),
        star_residual: (star - prod).norm(),
    })
}
