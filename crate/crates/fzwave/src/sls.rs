//! The α = 1 limit (standard linear solid).
//!
//! Here `l_1(s) = sqrt((1+τs)/(1+s))` is analytic off the segment
//! `[-1/τ, -1]` and tends to `√τ` at infinity, so `S` jumps across the
//! front `t = √τ|x|`:
//!
//! ```text
//! S = (√τ/2) e^{-β|x|} H(t - √τ|x|) + E(x, t),   β = (√τ/2)(1/τ - 1),
//! ```
//!
//! with `E` continuous. `E` is computed on a vertical line after subtracting
//! the large-`s` expansion of its transform; interior values can also be
//! taken from a finite contour around the cut.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dispersion::{sample_from, steady_from, DispersionSample};
use crate::error::{Error, Result};
use crate::fundsol::Side;
use crate::inversion::{bromwich_subtracted, LaplaceExpansion};
use crate::kernel::{l_one_c, PolarKernel, ZenerParams};
use crate::quadrature::{integrate_adaptive, EvalResult, QuadratureConfig};
use crate::series::Series;

/// `S = jump_amplitude · H(t - √τ|x|) + continuous_part`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlsDecomposition {
    pub jump_amplitude: f64,
    pub continuous_part: f64,
    pub total: f64,
}

/// Terms kept in the expansions of the transforms in powers of `1/s`.
const EXPANSION_TERMS: usize = 40;
/// Terms subtracted before vertical-line inversion.
const SUBTRACTED_ORDER: usize = 8;
/// Distance behind the front beyond which `E` is taken from the cut loop.
const LOOP_SWITCH: f64 = 10.0;
/// Abscissa of the inversion line: 1, pulled in for large `t` so that the
/// `e^{at}` factor stays moderate.
fn line(t: f64) -> f64 {
    1f64.min(2.0 / t)
}

fn check_sls(p: &ZenerParams) -> Result<()> {
    if p.is_sls() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(
            "standard-linear-solid evaluators need alpha = 1".into(),
        ))
    }
}

fn decay_rate(p: &ZenerParams) -> f64 {
    0.5 * p.sqrt_tau() * (1.0 / p.tau() - 1.0)
}

/// Amplitude of the jump across the front at `x`.
pub fn sls_jump(x: f64, p: &ZenerParams) -> f64 {
    0.5 * p.sqrt_tau() * (-decay_rate(p) * x.abs()).exp()
}

/// `H(w) = h(w) exp(-√τ|x| (p(w) - p(0)))` with `h(w) = l_1(1/w)/√τ` and
/// `p(w) = (h(w) - 1)/w`, as a power series in `w = 1/s`.
fn front_series(x: f64, tau: f64, len: usize) -> Series {
    let log_h = Series::log1p_linear(1.0 / tau, len)
        .add(&Series::log1p_linear(1.0, len).scale(-1.0))
        .scale(0.5);
    let h = log_h.exp();
    let mut p = h.shift_down();
    p.0[0] = 0.0;
    h.mul(&p.scale(-tau.sqrt() * x.abs()).exp())
}

/// Large-`s` expansion of `Ẽ(x, s)`.
fn e_expansion(x: f64, p: &ZenerParams) -> LaplaceExpansion {
    let tau = p.tau();
    let mut g = front_series(x, tau, EXPANSION_TERMS);
    g.0[0] -= 1.0;
    let amp = sls_jump(x, p);
    LaplaceExpansion {
        delay: p.sqrt_tau() * x.abs(),
        coeffs: g.shift_up(1).scale(amp).0,
        radius: 1.0 / tau,
    }
}

/// Continuous part `E(x, t)`; zero for `t ≤ 0`. Vertical-line inversion
/// near the front, the cut loop (minus the jump) well behind it.
pub fn sls_e(x: f64, t: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    check_sls(p)?;
    if !x.is_finite() || !t.is_finite() {
        return Err(Error::Domain(format!("non-finite query ({x}, {t})")));
    }
    if t <= 0.0 {
        return Ok(EvalResult::exact(0.0));
    }
    let (tau, st, ax) = (p.tau(), p.sqrt_tau(), x.abs());
    if t - st * ax > LOOP_SWITCH {
        // The subtracted terms grow like (t - √τ|x|)^k/k! and cancel; the
        // loop integrand decays like e^{-t} instead.
        let s = sls_s_loop(x, t, default_clearance(p), p, cfg)?;
        return Ok(s.shift(-sls_jump(x, p)));
    }
    let beta = decay_rate(p);
    let transform = |s: Complex64| {
        let l = l_one_c(s, tau);
        (l * (-(s * l) * ax).exp() - st * (-st * ax * s - beta * ax).exp()) / (2.0 * s)
    };
    bromwich_subtracted(transform, &e_expansion(x, p), SUBTRACTED_ORDER, t, line(t), cfg)
}

/// `S(x, t)` split into jump and continuous part.
pub fn sls_s(x: f64, t: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<SlsDecomposition> {
    let e = sls_e(x, t, p, cfg)?.value;
    let jump = sls_jump(x, p);
    let on = t > 0.0 && t >= p.sqrt_tau() * x.abs();
    Ok(SlsDecomposition {
        jump_amplitude: jump,
        continuous_part: e,
        total: if on { jump + e } else { e },
    })
}

/// Counterclockwise rectangle around `[-1/τ, -1]` at clearance `δ`.
fn cut_rectangle(tau: f64, delta: f64) -> [Complex64; 4] {
    let (lo, hi) = (-1.0 / tau - delta, -1.0 + delta);
    [
        Complex64::new(lo, -delta),
        Complex64::new(hi, -delta),
        Complex64::new(hi, delta),
        Complex64::new(lo, delta),
    ]
}

/// Default clearance `δ = 0.05 (1/τ - 1)`.
pub fn default_clearance(p: &ZenerParams) -> f64 {
    0.05 * (1.0 / p.tau() - 1.0)
}

/// `∮ g(s) ds` around the cut.
fn loop_integral(
    g: impl Fn(Complex64) -> Complex64,
    tau: f64,
    delta: f64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult<Complex64>> {
    let corners = cut_rectangle(tau, delta);
    let part = cfg.scaled(0.25);
    let mut total = EvalResult::exact(Complex64::new(0.0, 0.0));
    for k in 0..4 {
        let (a, b) = (corners[k], corners[(k + 1) % 4]);
        let d = b - a;
        let edge = integrate_adaptive(|u| g(a + d * u) * d, 0.0, 1.0, &part)?;
        total = total.plus(edge);
    }
    Ok(total)
}

fn require_interior(x: f64, t: f64, p: &ZenerParams) -> Result<()> {
    if !(t > 0.0) || !(p.sqrt_tau() * x.abs() < t) {
        return Err(Error::Region(format!(
            "the cut-loop form needs |x| < t/sqrt(tau); got x = {x}, t = {t}"
        )));
    }
    Ok(())
}

/// `S = 1/2 + (1/4πi) ∮ (l_1/s) e^{-|x| s l_1 + ts} ds` inside the cone,
/// with the loop at clearance `delta` from the cut.
pub fn sls_s_loop(x: f64, t: f64, delta: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    check_sls(p)?;
    require_interior(x, t, p)?;
    let (tau, ax) = (p.tau(), x.abs());
    let g = |s: Complex64| {
        let l = l_one_c(s, tau);
        l / s * (-(s * l) * ax + s * t).exp()
    };
    let r = loop_integral(g, tau, delta, cfg)?;
    Ok(r.im().scale(0.25 / PI).shift(0.5))
}

/// `∂S/∂x(0±, t) = ∓((1-τ)/2) e^{-t}`.
pub fn sls_dsdx_origin(t: f64, side: Side, p: &ZenerParams) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    let v = 0.5 * (1.0 - p.tau()) * (-t).exp();
    Ok(match side {
        Side::Right => -v,
        Side::Left => v,
    })
}

fn l_one_iw(omega: f64, tau: f64) -> Complex64 {
    l_one_c(Complex64::new(0.0, omega), tau)
}

/// Dispersion sample built on `l_1(iω)`.
pub fn sls_dispersion(omega: f64, p: &ZenerParams) -> Result<DispersionSample> {
    check_sls(p)?;
    let tau = p.tau();
    let i = Complex64::new(0.0, 1.0);
    sample_from(
        omega,
        |w| l_one_iw(w, tau),
        |w| {
            let s = Complex64::new(0.0, w);
            let l = l_one_iw(w, tau);
            // d l/ds = (l/2)(τ/(1+τs) - 1/(1+s)).
            i * 0.5 * l * (tau / (1.0 + tau * s) - 1.0 / (1.0 + s))
        },
    )
}

fn check_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    Ok(())
}

/// Steady state of the forced problem.
pub fn sls_steady_state(x: f64, t: f64, omega: f64, p: &ZenerParams) -> Result<f64> {
    check_sls(p)?;
    check_omega(omega)?;
    Ok(steady_from(&PolarKernel::from_value(l_one_iw(omega, p.tau())), x, t, omega))
}

/// Transient `(1/4πi) ∮ l_1 e^{-|x| s l_1 + ts} / (s² + ω²) ds` inside the cone.
pub fn sls_transient(x: f64, t: f64, omega: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    check_sls(p)?;
    check_omega(omega)?;
    require_interior(x, t, p)?;
    let (tau, ax, w2) = (p.tau(), x.abs(), omega * omega);
    let g = |s: Complex64| {
        let l = l_one_c(s, tau);
        l * (-(s * l) * ax + s * t).exp() / (s * s + w2)
    };
    Ok(loop_integral(g, tau, default_clearance(p), cfg)?.im().scale(0.25 / PI))
}

/// Forced response `u_ss + u_ts`; zero outside the cone and on the front,
/// where the solution is continuous.
pub fn sls_forced(x: f64, t: f64, omega: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    check_sls(p)?;
    check_omega(omega)?;
    if !(t > 0.0) || p.sqrt_tau() * x.abs() >= t {
        return Ok(EvalResult::exact(0.0));
    }
    let ts = sls_transient(x, t, omega, p, cfg)?;
    Ok(ts.shift(sls_steady_state(x, t, omega, p)?))
}

/// Forced response by vertical-line inversion of
/// `ũ = (l_1/2) e^{-|x| s l_1} / (s² + ω²)` with the front expansion removed.
pub fn sls_forced_vertical(
    x: f64,
    t: f64,
    omega: f64,
    p: &ZenerParams,
    cfg: &QuadratureConfig,
) -> Result<EvalResult<f64>> {
    check_sls(p)?;
    check_omega(omega)?;
    if !(t > 0.0) {
        return Ok(EvalResult::exact(0.0));
    }
    let (tau, ax, w2) = (p.tau(), x.abs(), omega * omega);
    let series = front_series(x, tau, EXPANSION_TERMS)
        .mul(&Series::inv_one_plus_square(w2, EXPANSION_TERMS))
        .shift_up(2)
        .scale(sls_jump(x, p));
    let expansion = LaplaceExpansion {
        delay: p.sqrt_tau() * ax,
        coeffs: series.0,
        radius: (1.0 / tau).max(omega),
    };
    let transform = |s: Complex64| {
        let l = l_one_c(s, tau);
        0.5 * l * (-(s * l) * ax).exp() / (s * s + w2)
    };
    bromwich_subtracted(transform, &expansion, SUBTRACTED_ORDER, t, line(t), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_matches_transform_far_out() {
        let p = ZenerParams::sls(0.5).unwrap();
        let x = 0.7;
        let e = e_expansion(x, &p);
        let (tau, st) = (0.5, 0.5f64.sqrt());
        let beta = decay_rate(&p);
        let s = Complex64::new(1.0, 60.0);
        let l = l_one_c(s, tau);
        let exact = (l * (-(s * l) * x).exp() - st * (-st * x * s - beta * x).exp()) / (2.0 * s);
        let approx = e.head(s, 30);
        // Both terms of the difference are of size √τ/(2|s|); measure against that.
        assert!((exact - approx).norm() < 1e-13 * st / (2.0 * s.norm()), "{exact} {approx}");
    }
}
