use serde::Serialize;

use crate::error::{Error, Result};

/// Nonlinear coordinates `(q, p) = (Q, P)(1 + λR²)` with `R² = Q² + P²`.
///
/// The inverse is `(Q, P) = K(r)·(q, p)` where `K` is the real root of
/// `λr²K³ + K − 1 = 0`, which lies in `(0, 1]`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct NonlinearChart {
    lambda: f64,
}

impl NonlinearChart {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::Domain(format!("chart parameter must be non-negative, got {lambda}")));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn forward(&self, big_q: f64, big_p: f64) -> (f64, f64) {
        let s = 1.0 + self.lambda * (big_q * big_q + big_p * big_p);
        (big_q * s, big_p * s)
    }

    pub fn backward(&self, q: f64, p: f64) -> Result<(f64, f64)> {
        let k = self.k_factor((q * q + p * p).sqrt())?;
        Ok((q * k, p * k))
    }

    /// Root `K(r)` of `λr²K³ + K − 1`.
    pub fn k_factor(&self, r: f64) -> Result<f64> {
        solve_unit_cubic(self.lambda * r * r)
    }

    /// `φ(φ⁻¹u + φ⁻¹v)`.
    pub fn deformed_add(&self, u: (f64, f64), v: (f64, f64)) -> Result<(f64, f64)> {
        let a = self.backward(u.0, u.1)?;
        let b = self.backward(v.0, v.1)?;
        Ok(self.forward(a.0 + b.0, a.1 + b.1))
    }

    /// `φ(c·φ⁻¹u)`.
    pub fn deformed_scale(&self, c: f64, u: (f64, f64)) -> Result<(f64, f64)> {
        let a = self.backward(u.0, u.1)?;
        Ok(self.forward(c * a.0, c * a.1))
    }

    /// `dq/dQ` on the axis `P = 0`.
    pub fn jacobian(&self, big_q: f64) -> f64 {
        1.0 + 3.0 * self.lambda * big_q * big_q
    }
}

/// Real root of `aK³ + K − 1 = 0` for `a ≥ 0`, by Newton steps kept inside a
/// shrinking bracket with bisection fallback.
fn solve_unit_cubic(a: f64) -> Result<f64> {
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::RootFinding(format!("coefficient {a} out of range")));
    }
    if a == 0.0 {
        return Ok(1.0);
    }
    let f = |k: f64| (a * k * k + 1.0) * k - 1.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    // the root is also below a^{-1/3}
    hi = hi.min(a.powf(-1.0 / 3.0));
    let mut k = hi;
    for _ in 0..200 {
        let fk = f(k);
        if fk == 0.0 {
            return Ok(k);
        }
        if fk > 0.0 {
            hi = k;
        } else {
            lo = k;
        }
        let step = fk / (3.0 * a * k * k + 1.0);
        let mut next = k - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - k).abs() <= 1e-16 * k.max(f64::MIN_POSITIVE) || hi - lo <= 1e-16 * hi {
            return Ok(next);
        }
        k = next;
    }
    let r = f(k);
    if r.abs() <= 1e-12 {
        Ok(k)
    } else {
        Err(Error::RootFinding(format!("no convergence, residual {r:.3e}")))
    }
}
