//! Harmonic forcing `δ(x) sin(ωt) H(t)` and the dispersion relation
//! `k(ω) = ω l(iω)`.
//!
//! With `l(iω) = a - ib = ρ e^{-iφ}`, the forced solution splits into the
//! steady state
//!
//! ```text
//! u_ss = ρ/(2ω) e^{-bω|x|} sin(ωt - aω|x| - φ)
//! ```
//!
//! and a transient carried by the Hankel faces, which decays as `t → ∞`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fundsol::{classify, face_integral, SpacetimeQuery};
use crate::inversion::bromwich;
use crate::kernel::{l_frac, l_frac_derivative, PolarKernel, SlitComplex, ZenerParams};
use crate::par;
use crate::quadrature::{EvalResult, QuadratureConfig};

/// Dispersion data at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionSample {
    pub omega: f64,
    pub a: f64,
    pub b: f64,
    pub rho: f64,
    pub phi: f64,
    pub phase_velocity: f64,
    pub group_velocity: f64,
    pub attenuation: f64,
    /// Set when a central difference of `a(ω)` (checked by step halving)
    /// disagrees with the exact derivative by more than `1e-6` in `U`.
    pub group_velocity_flagged: bool,
}

/// Builds a sample from `l(iω)` given as a function of `ω`, together with
/// `d/dω l(iω)`.
pub(crate) fn sample_from(
    omega: f64,
    l: impl Fn(f64) -> Complex64,
    dl: impl Fn(f64) -> Complex64,
) -> Result<DispersionSample> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    let pk = PolarKernel::from_value(l(omega));
    let a_prime = dl(omega).re;
    let group = 1.0 / (pk.a + omega * a_prime);

    let u_fd = |rel: f64| {
        let h = omega * rel;
        let d = (l(omega + h).re - l(omega - h).re) / (2.0 * h);
        1.0 / (pk.a + omega * d)
    };
    let (u1, u2) = (u_fd(1e-6), u_fd(5e-7));
    let flagged = (u1 - u2).abs() >= 1e-6 || (u1 - group).abs() >= 1e-6;

    Ok(DispersionSample {
        omega,
        a: pk.a,
        b: pk.b,
        rho: pk.rho,
        phi: pk.phi,
        phase_velocity: 1.0 / pk.a,
        group_velocity: group,
        attenuation: pk.b * omega,
        group_velocity_flagged: flagged,
    })
}

/// Dispersion sample of the fractional model.
pub fn dispersion_sample(omega: f64, p: &ZenerParams) -> Result<DispersionSample> {
    p.require_fractional()?;
    let (alpha, tau) = (p.alpha(), p.tau());
    let i = Complex64::new(0.0, 1.0);
    sample_from(
        omega,
        |w| l_frac(SlitComplex::imaginary(w), alpha, tau),
        |w| i * l_frac_derivative(SlitComplex::imaginary(w), alpha, tau),
    )
}

/// Samples on a list of frequencies, in order.
pub fn dispersion_sweep(omegas: &[f64], p: &ZenerParams) -> Result<Vec<DispersionSample>> {
    par::map(omegas, |&w| dispersion_sample(w, p)).into_iter().collect()
}

/// Attenuation coefficients `(low, high)` with `d(ω) ~ low·ω^{1+α}` as
/// `ω → 0` and `d(ω) ~ high·ω^{1-α}` as `ω → ∞`.
pub fn attenuation_limits(p: &ZenerParams) -> (f64, f64) {
    let s = (0.5 * p.alpha() * PI).sin();
    (0.5 * (1.0 - p.tau()) * s, p.high_frequency_attenuation())
}

fn check_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    Ok(())
}

/// Steady state from a polar kernel value.
pub(crate) fn steady_from(pk: &PolarKernel, x: f64, t: f64, omega: f64) -> f64 {
    let ax = x.abs();
    pk.rho / (2.0 * omega) * (-pk.b * omega * ax).exp() * (omega * t - pk.a * omega * ax - pk.phi).sin()
}

/// Steady state `u_ss(x, t)`.
pub fn steady_state(x: f64, t: f64, omega: f64, p: &ZenerParams) -> Result<f64> {
    p.require_fractional()?;
    check_omega(omega)?;
    let pk = PolarKernel::from_value(l_frac(SlitComplex::imaginary(omega), p.alpha(), p.tau()));
    Ok(steady_from(&pk, x, t, omega))
}

/// Transient `u_ts(x, t) = -(1/2π) ∫_0^∞ Im(l₊ e^{|x| q l₊}) e^{-tq} / (q² + ω²) dq`
/// for `|x| < t/√τ`.
pub fn transient_state(x: f64, t: f64, omega: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    check_omega(omega)?;
    let w2 = omega * omega;
    face_integral(
        SpacetimeQuery::new(x, t),
        p,
        |q| -1.0 / (q * q + w2),
        |_| 1.0 / w2,
        cfg,
    )
}

/// Full forced response `u_ss + u_ts` inside the cone, zero outside and on
/// the front (where the fractional solution is continuous and vanishes).
pub fn forced_solution(x: f64, t: f64, omega: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    p.require_fractional()?;
    check_omega(omega)?;
    if !classify(SpacetimeQuery::new(x, t), p).strict_interior {
        return Ok(EvalResult::exact(0.0));
    }
    let ts = transient_state(x, t, omega, p, cfg)?;
    Ok(ts.shift(steady_state(x, t, omega, p)?))
}

/// The forced response by direct inversion of
/// `ũ(x, s) = (l(s)/2) e^{-|x| s l(s)} / (s² + ω²)` on `Re s = min(1, 2/t)`.
/// Slow unless `|x|` is bounded away from 0.
pub fn forced_solution_vertical(
    x: f64,
    t: f64,
    omega: f64,
    p: &ZenerParams,
    cfg: &QuadratureConfig,
) -> Result<EvalResult<f64>> {
    p.require_fractional()?;
    check_omega(omega)?;
    let (alpha, tau, ax) = (p.alpha(), p.tau(), x.abs());
    let w2 = omega * omega;
    let u = move |s: Complex64| {
        let l = l_frac(SlitComplex::from_complex(s), alpha, tau);
        0.5 * l * (-(s * l) * ax).exp() / (s * s + w2)
    };
    let a = 1f64.min(2.0 / t);
    // |ũ| is eventually non-increasing along the line; a small margin covers
    // rounding in the modulus.
    let envelope = move |y: f64| u(Complex64::new(a, y)).norm() * (1.0 + 1e-6);
    bromwich(u, t, a, 2.0 * omega + 4.0, envelope, cfg)
}

/// Undamped reference `H(t/√τ - |x|) (√τ/2ω) sin(ωt - √τω|x|)`.
pub fn classical_reference(x: f64, t: f64, omega: f64, p: &ZenerParams) -> Result<f64> {
    check_omega(omega)?;
    let st = p.sqrt_tau();
    if x.abs() > t / st {
        return Ok(0.0);
    }
    Ok(st / (2.0 * omega) * (omega * t - st * omega * x.abs()).sin())
}
