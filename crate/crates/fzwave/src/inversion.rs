//! Inverse Laplace transform on a vertical line `Re s = a > 0`.
//!
//! For a transform that is real on the real axis, pairing `a ± iy` gives
//!
//! ```text
//! f(t) = (e^{at}/π) ∫_0^∞ Re(F(a+iy) e^{iyt}) dy.
//! ```
//!
//! Transforms that decay only algebraically are handled by subtracting a
//! known expansion `e^{-Ts} Σ c_n s^{-n}`, whose inverse is elementary, and
//! integrating the fast-decaying remainder.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_decaying_tail_with, integrate_oscillatory, EvalResult, QuadratureConfig,
};

/// Large-`s` expansion `F(s) ≈ e^{-delay·s} Σ_n coeffs[n] s^{-n}`, convergent
/// for `|s| > radius`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplaceExpansion {
    pub delay: f64,
    pub coeffs: Vec<f64>,
    pub radius: f64,
}

impl LaplaceExpansion {
    /// `e^{-Ts} Σ_{n=1}^{order} c_n s^{-n}`.
    pub fn head(&self, s: Complex64, order: usize) -> Complex64 {
        let w = 1.0 / s;
        let mut acc = Complex64::new(0.0, 0.0);
        for n in (1..=order.min(self.coeffs.len() - 1)).rev() {
            acc = (acc + self.coeffs[n]) * w;
        }
        acc * (-self.delay * s).exp()
    }

    /// Inverse transform of [`head`](Self::head): `Σ c_n (t-T)^{n-1}/(n-1)!` for `t ≥ T`.
    pub fn inverse_head(&self, t: f64, order: usize) -> f64 {
        let d = t - self.delay;
        if d < 0.0 {
            return 0.0;
        }
        let mut sum = 0.0;
        let mut pow = 1.0; // d^{n-1}/(n-1)!
        for n in 1..=order.min(self.coeffs.len() - 1) {
            if n > 1 {
                pow *= d / (n - 1) as f64;
            }
            sum += self.coeffs[n] * pow;
        }
        sum
    }

    /// Majorant of the remainder `|F(s) - head(s)|` for `|s| ≥ y`, `Re s = a`.
    fn remainder_majorant(&self, y: f64, a: f64, order: usize) -> f64 {
        let mut sum = 0.0;
        let mut pow = y.powi(order as i32);
        for n in order + 1..self.coeffs.len() {
            pow *= y;
            sum += self.coeffs[n].abs() / pow;
        }
        sum * (-self.delay * a).exp()
    }
}

/// `f(t)` from `F` on the line `Re s = a`, given a non-increasing bound
/// `envelope(y) ≥ |F(a+iy)|` valid for `y ≥ y_tail`.
pub fn bromwich<F, E>(
    transform: F,
    t: f64,
    a: f64,
    y_tail: f64,
    envelope: E,
    cfg: &QuadratureConfig,
) -> Result<EvalResult<f64>>
where
    F: Fn(Complex64) -> Complex64,
    E: Fn(f64) -> f64,
{
    if !(a > 0.0) || !(t > 0.0) || !(y_tail > 0.0) {
        return Err(Error::Domain(format!(
            "vertical-line inversion needs a > 0, t > 0, y_tail > 0 (got {a}, {t}, {y_tail})"
        )));
    }
    let growth = (a * t).exp() / std::f64::consts::PI;
    let inner = cfg.scaled(1.0 / growth.max(1.0)).scaled(0.5);
    let g = |y: f64| {
        let s = Complex64::new(a, y);
        Complex64::new((transform(s) * Complex64::from_polar(1.0, y * t)).re, 0.0)
    };
    let head = integrate_oscillatory(g, 0.0, y_tail, t, &inner)?;
    let tail = integrate_decaying_tail_with(g, y_tail, envelope, Some(t), &inner)?;
    Ok(head.plus(tail).re().scale(growth))
}

/// [`bromwich`] after subtracting the first `order` terms of `expansion`.
pub fn bromwich_subtracted<F>(
    transform: F,
    expansion: &LaplaceExpansion,
    order: usize,
    t: f64,
    a: f64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult<f64>>
where
    F: Fn(Complex64) -> Complex64,
{
    if expansion.coeffs.len() < order + 2 {
        return Err(Error::Domain("expansion too short for the requested order".into()));
    }
    let remainder = |s: Complex64| transform(s) - expansion.head(s, order);
    let y_tail = (4.0 * expansion.radius).max(4.0 * a).max(1.0);
    let env = |y: f64| expansion.remainder_majorant(y, a, order);
    let res = bromwich(remainder, t, a, y_tail, env, cfg)?;
    Ok(res.shift(expansion.inverse_head(t, order)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverts_shifted_power() {
        // e^{-s}/s² ↔ (t-1)H(t-1); the remainder vanishes identically.
        let expansion = LaplaceExpansion {
            delay: 1.0,
            coeffs: vec![0.0, 0.0, 1.0, 0.0, 0.0],
            radius: 0.0,
        };
        let cfg = QuadratureConfig::new(1e-10, 1e-11).unwrap();
        let f = |s: Complex64| (-s).exp() / (s * s);
        for &t in &[0.5, 2.0] {
            let r = bromwich_subtracted(f, &expansion, 2, t, 1.0, &cfg).unwrap();
            let exact = (t - 1.0f64).max(0.0);
            assert!((r.value - exact).abs() < 1e-9, "{t}: {}", r.value);
        }
        // e^{-√s} ↔ e^{-1/(4t)} / (2√π t^{3/2}); |e^{-√(a+iy)}| ≤ e^{-√(y/2)}.
        let g = |s: Complex64| (-s.sqrt()).exp();
        let t = 0.7;
        let r = bromwich(g, t, 0.5, 4.0, |y: f64| (-(0.5 * y).sqrt()).exp(), &cfg).unwrap();
        let exact = (-1.0 / (4.0 * t)).exp() / (2.0 * std::f64::consts::PI.sqrt() * t.powf(1.5));
        assert!((r.value - exact).abs() < 1e-9, "{} vs {exact}", r.value);
    }
}
