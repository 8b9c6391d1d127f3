//! The impulse wave packet.
//!
//! Near the ray `x = t`, `K₊` (the restriction of `K` to `x ≥ 0`) behaves like
//! `t^{-1/(1+α)} k_∞(ν)` with `ν = (x - t) t^{-1/(1+α)}`, where
//!
//! ```text
//! k_∞(ν) = (1/2π) Re ∫_0^∞ exp(A (iw)^{1+α} - iνw) dw,   A = (1-τ)/2.
//! ```
//!
//! This module evaluates `k_∞` and its derivatives, both tail asymptotics,
//! the normalised fractional ODE it satisfies, saddle-point ray asymptotics
//! off the packet, and the packet location metrics.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fundsol::{eval_k, integrate_k_over, SpacetimeQuery};
use crate::kernel::{l_frac, l_frac_derivative, SlitComplex, ZenerParams};
use crate::par;
use crate::quadrature::{
    doubling_breakpoints, graded_origin_transform, integrate_decaying_tail_with, integrate_panels, EvalResult, QuadratureConfig,
};
use crate::special::gamma;

/// Uniform sampling descriptor in the packet variable `ν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketGrid {
    pub nu_min: f64,
    pub nu_max: f64,
    pub step: f64,
}

impl PacketGrid {
    pub fn new(nu_min: f64, nu_max: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !(nu_max >= nu_min) || !nu_min.is_finite() || !nu_max.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "packet grid needs nu_min <= nu_max and step > 0 (got {nu_min}, {nu_max}, {step})"
            )));
        }
        Ok(Self { nu_min, nu_max, step })
    }

    pub fn len(&self) -> usize {
        ((self.nu_max - self.nu_min) / self.step).round() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nu(&self, i: usize) -> f64 {
        self.nu_min + i as f64 * self.step
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.nu(i)).collect()
    }
}

/// Samples of a profile on a [`PacketGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct PacketProfile {
    pub nu_min: f64,
    pub nu_max: f64,
    pub step: f64,
    pub samples: Vec<f64>,
}

impl PacketProfile {
    pub fn grid(&self) -> PacketGrid {
        PacketGrid { nu_min: self.nu_min, nu_max: self.nu_max, step: self.step }
    }

    pub fn nu(&self, i: usize) -> f64 {
        self.nu_min + i as f64 * self.step
    }
}

/// Location of the packet at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketMetrics {
    pub x_max: f64,
    pub x_gravity: f64,
    pub x_mass: f64,
    pub t: f64,
}

/// Saddle data for a ray `x = λt` with `1 < λ < 1/√τ`, where
/// `K₊(λt, t) ≈ prefactor · e^{rate · t} / √t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddlePoint {
    pub lambda: f64,
    pub a_lambda: f64,
    pub rate: f64,
    pub curvature: f64,
    pub prefactor: f64,
}

/// Large-`t` behaviour of `K₊(λt, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RayAsymptote {
    /// `K₊(λt, t) ≈ coefficient · t^{exponent}` for `0 ≤ λ < 1`, from the
    /// small-`s` expansion `s l(s) ≈ s - ((1-τ)/2) s^{1+α}`.
    PowerLaw { lambda: f64, coefficient: f64, exponent: f64 },
    /// Exponential decay for `1 < λ < 1/√τ`.
    Saddle(SaddlePoint),
}

impl RayAsymptote {
    /// Leading-order prediction of `K₊(λt, t)`.
    pub fn predict(&self, t: f64) -> f64 {
        match *self {
            RayAsymptote::PowerLaw { coefficient, exponent, .. } => coefficient * t.powf(exponent),
            RayAsymptote::Saddle(s) => s.prefactor * (s.rate * t).exp() / t.sqrt(),
        }
    }
}

/// `∫_0^∞ g(w) exp(a w^{1+α} - iνw) dw` with `Re a < 0`, where `|g(w)| ≤ w^deg`.
fn stretched_fourier(
    a: Complex64,
    alpha: f64,
    nu: f64,
    g: impl Fn(f64) -> Complex64,
    deg: f64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult<Complex64>> {
    let decay = -a.re;
    debug_assert!(decay > 0.0);
    let beta = 1.0 + alpha;
    let f = |w: f64| {
        if w == 0.0 {
            return g(0.0);
        }
        g(w) * (a * w.powf(beta) - Complex64::new(0.0, nu * w)).exp()
    };
    let part = cfg.scaled(1.0 / 3.0);
    let near = graded_origin_transform(alpha)?.integrate(f, 1.0, &part)?;

    // Past the peak of w^deg e^{-decay w^β} the envelope is non-increasing.
    let w_peak = (deg / (beta * decay)).powf(1.0 / beta);
    let w_tail = (2.0 * w_peak).max(2.0);
    let freq = nu.abs().max(1.0) + a.im.abs() * beta * w_tail.powf(alpha);
    let middle = integrate_panels(f, &[1.0, w_tail], Some(freq), &part)?;
    let envelope = |w: f64| w.powf(deg) * (-decay * w.powf(beta)).exp();
    let tail = integrate_decaying_tail_with(f, w_tail, envelope, Some(freq), &part)?;
    Ok(near.plus(middle).plus(tail))
}

fn check_fractional(p: &ZenerParams) -> Result<()> {
    p.require_fractional()
}

/// Coefficient `A (i)^{1+α}` of `w^{1+α}` in the exponent of `k_∞`.
fn packet_coefficient(p: &ZenerParams) -> Complex64 {
    0.5 * (1.0 - p.tau()) * Complex64::from_polar(1.0, 0.5 * PI * (1.0 + p.alpha()))
}

/// `k_∞(ν)`.
pub fn k_infinity(nu: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    k_infinity_deriv(nu, 0, p, cfg)
}

/// `k_∞^{(n)}(ν)` for `n ≤ 8`.
///
/// For `ν > 1` the integration line is moved down to `w = y - ic`, through the
/// saddle `c = (ν/(A(1+α)))^{1/α}`; the integrand then no longer oscillates
/// and the exponentially small value keeps its relative accuracy.
pub fn k_infinity_deriv(nu: f64, n: u32, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    check_fractional(p)?;
    if n > 8 {
        return Err(Error::InvalidParameter(format!("derivative order {n} exceeds 8")));
    }
    if !nu.is_finite() {
        return Err(Error::Domain(format!("nu must be finite, got {nu}")));
    }
    if nu > 1.0 {
        return Ok(k_infinity_shifted(nu, n, p, cfg)?.to_result());
    }
    let factor = Complex64::new(0.0, -1.0).powu(n);
    let g = |w: f64| factor * w.powi(n as i32);
    let r = stretched_fourier(packet_coefficient(p), p.alpha(), nu, g, n as f64, cfg)?;
    Ok(r.re().scale(0.5 / PI))
}

/// A value stored as `mantissa · e^{log_scale}`, for results below the
/// floating-point range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    pub mantissa: EvalResult<f64>,
    pub log_scale: f64,
}

impl ScaledValue {
    pub fn value(&self) -> f64 {
        self.mantissa.value * self.log_scale.exp()
    }

    /// `ln |value|`.
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.value.abs().ln() + self.log_scale
    }

    pub fn to_result(self) -> EvalResult<f64> {
        let s = self.log_scale.exp();
        EvalResult::new(self.mantissa.value * s, self.mantissa.error_estimate * s, self.mantissa.nodes_used)
    }
}

/// `k_∞(ν)` in scaled form; unlike [`k_infinity`] it stays informative where
/// the value underflows (`ν ≳ 6` for α = τ = 1/2).
pub fn k_infinity_scaled(nu: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<ScaledValue> {
    check_fractional(p)?;
    if nu > 1.0 {
        k_infinity_shifted(nu, 0, p, cfg)
    } else {
        Ok(ScaledValue { mantissa: k_infinity(nu, p, cfg)?, log_scale: 0.0 })
    }
}

fn k_infinity_shifted(nu: f64, n: u32, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<ScaledValue> {
    let alpha = p.alpha();
    let beta = 1.0 + alpha;
    let a = 0.5 * (1.0 - p.tau());
    let c = (nu / (a * beta)).powf(1.0 / alpha);
    // Value of the exponent at the saddle, factored out.
    let peak = a * c.powf(beta) - nu * c;
    let phase = |y: f64| a * (Complex64::new(c, y).powf(beta) - c.powf(beta)) - Complex64::new(0.0, nu * y);
    let f = |y: f64| Complex64::new(-c, -y).powu(n) * phase(y).exp();
    let envelope = |y: f64| Complex64::new(c, y).norm().powi(n as i32) * phase(y).re.exp() * (1.0 + 1e-9);
    // Past this point the real part of (c+iy)^β is decreasing and negative.
    let y_tail = (2.0 * c * (0.5 * PI / beta).tan()).max(2.0).max(4.0 * n as f64);
    let half = cfg.scaled(0.5);
    let head = integrate_panels(f, &doubling_breakpoints(y_tail * 1e-3, y_tail), Some(nu), &half)?;
    let head0 = integrate_panels(f, &[0.0, y_tail * 1e-3], None, &half)?;
    let tail = integrate_decaying_tail_with(f, y_tail, envelope, Some(nu), &half)?;
    Ok(ScaledValue { mantissa: head0.plus(head).plus(tail).re().scale(0.5 / PI), log_scale: peak })
}

/// Closed form of `k_∞(0)`.
pub fn k_infinity_zero(p: &ZenerParams) -> f64 {
    let b = 1.0 / (1.0 + p.alpha());
    b / (2.0 * PI) * (PI * b).sin() * gamma(b) * (2.0 / (1.0 - p.tau())).powf(b)
}

/// Leading tail `k_∞(ν) ~ (sin απ / 2π) ((1-τ)/2) Γ(2+α) |ν|^{-(2+α)}`, `ν → -∞`.
pub fn k_asymp_minus(nu: f64, p: &ZenerParams) -> Result<f64> {
    if !(nu < 0.0) {
        return Err(Error::Domain(format!("k_asymp_minus needs nu < 0, got {nu}")));
    }
    let a = p.alpha();
    Ok((a * PI).sin() / (2.0 * PI) * 0.5 * (1.0 - p.tau()) * gamma(2.0 + a) / nu.abs().powf(2.0 + a))
}

/// Saddle-point tail of `k_∞` as `ν → +∞`.
pub fn k_asymp_plus(nu: f64, p: &ZenerParams) -> Result<f64> {
    if !(nu > 0.0) {
        return Err(Error::Domain(format!("k_asymp_plus needs nu > 0, got {nu}")));
    }
    let a = p.alpha();
    let z0 = (0.5 * (1.0 - p.tau()) * (1.0 + a)).powf(-1.0 / a);
    let pre = 0.25 * (2.0 * z0 / (a * PI)).sqrt() * nu.powf(0.5 / a - 0.5);
    Ok(pre * (-(a * z0 / (1.0 + a)) * nu.powf(1.0 + 1.0 / a)).exp())
}

/// Scale `C = ((1-τ)(1+α)/2)^{1/(1+α)}` relating `k_∞` to the normalised profile.
pub fn renormalization_scale(p: &ZenerParams) -> f64 {
    (0.5 * (1.0 - p.tau()) * (1.0 + p.alpha())).powf(1.0 / (1.0 + p.alpha()))
}

/// `k(ν) = (1/2π) ∫ k̂(ξ) e^{iξν} dξ` with `k̂(ξ) = exp((iξ)^{1+α}/(1+α))`.
pub fn normalized_profile(nu: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    check_fractional(p)?;
    let a = Complex64::from_polar(1.0 / (1.0 + p.alpha()), 0.5 * PI * (1.0 + p.alpha()));
    let r = stretched_fourier(a, p.alpha(), -nu, |_| Complex64::new(1.0, 0.0), 0.0, cfg)?;
    Ok(r.re().scale(1.0 / PI))
}

/// The normalised profile through `k_∞`: `k(ν) = 2C k_∞(-Cν)`.
pub fn renormalized_k(nu: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    let c = renormalization_scale(p);
    Ok(k_infinity(-c * nu, p, cfg)?.scale(2.0 * c))
}

/// `D^α k(ν) + ν k(ν)` for the normalised profile, which vanishes identically.
pub fn frac_ode_residual(nu: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    check_fractional(p)?;
    let alpha = p.alpha();
    let a = Complex64::from_polar(1.0 / (1.0 + alpha), 0.5 * PI * (1.0 + alpha));
    let inner = cfg.scaled(0.5);
    let k = stretched_fourier(a, alpha, -nu, |_| Complex64::new(1.0, 0.0), 0.0, &inner)?;
    let rot = Complex64::from_polar(1.0, 0.5 * PI * alpha);
    let dk = stretched_fourier(a, alpha, -nu, |w| rot * w.powf(alpha), alpha, &inner)?;
    Ok(dk.re().plus(k.re().scale(nu)).scale(1.0 / PI))
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    Ok(())
}

/// `K₊(x, t)`: `K` for `x ≥ 0`, zero for `x < 0`.
pub fn k_plus(x: f64, t: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    if x < 0.0 {
        return Ok(EvalResult::exact(0.0));
    }
    eval_k(SpacetimeQuery::new(x, t), p, cfg)
}

/// `k_t(ν) = t^{1/(1+α)} K₊(t + ν t^{1/(1+α)}, t)` on `grid`.
pub fn k_t_profile(t: f64, grid: &PacketGrid, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<PacketProfile> {
    check_fractional(p)?;
    check_time(t)?;
    let width = t.powf(p.packet_exponent());
    let nus = grid.points();
    let values = par::map(&nus, |&nu| k_plus(t + nu * width, t, p, cfg).map(|r| r.value * width));
    let samples = values.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(PacketProfile { nu_min: grid.nu_min, nu_max: grid.nu_max, step: grid.step, samples })
}

/// `∫_0^{1/√τ} t K₊(λt, t) dλ = ∫_0^{t/√τ} K(x,t) dx`, which equals 1/2.
pub fn kappa_t_mass(t: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    check_fractional(p)?;
    check_time(t)?;
    integrate_k_over(t, 0.0, t * p.front_speed(), |_, k| k, p, cfg)
}

/// `f(s) = s - λ s l_α(s)` and `f'(s)` on the positive real axis.
fn saddle_phase(s: f64, lambda: f64, p: &ZenerParams) -> (f64, f64) {
    let z = SlitComplex::real(s);
    let l = l_frac(z, p.alpha(), p.tau()).re;
    let dl = l_frac_derivative(z, p.alpha(), p.tau()).re;
    (s - lambda * s * l, 1.0 - lambda * (l + s * dl))
}

/// Asymptotics of `K₊(λt, t)` as `t → ∞` along a ray `0 ≤ λ < 1/√τ`, `λ ≠ 1`.
pub fn ray_asymptote(lambda: f64, p: &ZenerParams) -> Result<RayAsymptote> {
    check_fractional(p)?;
    if lambda == 1.0 {
        return Err(Error::InvalidRay);
    }
    if !(lambda >= 0.0 && lambda < p.front_speed()) {
        return Err(Error::Domain(format!(
            "ray needs 0 <= lambda < 1/sqrt(tau), got {lambda}"
        )));
    }
    let (alpha, tau) = (p.alpha(), p.tau());
    if lambda < 1.0 {
        let coefficient = (alpha * PI).sin() * (1.0 - tau) * (1.0 + alpha * lambda)
            / (4.0 * PI * (1.0 - lambda).powf(2.0 + alpha))
            * gamma(1.0 + alpha);
        return Ok(RayAsymptote::PowerLaw { lambda, coefficient, exponent: -(1.0 + alpha) });
    }

    let fp = |s: f64| saddle_phase(s, lambda, p).1;
    let n = 241;
    let grid: Vec<f64> = (0..n).map(|k| 10f64.powf(-6.0 + 12.0 * k as f64 / (n - 1) as f64)).collect();
    let (mut lo, mut hi) = grid
        .windows(2)
        .find(|w| fp(w[0]) < 0.0 && fp(w[1]) >= 0.0)
        .map(|w| (w[0], w[1]))
        .ok_or_else(|| Error::Root(format!("no sign change of f' for lambda = {lambda}")))?;
    while hi - lo > 1e-12 * hi {
        let mid = 0.5 * (lo + hi);
        if fp(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = 0.5 * (lo + hi);
    let f = |s: f64| saddle_phase(s, lambda, p).0;
    let h = a * 1e-4;
    let curvature = (-f(a + 2.0 * h) + 16.0 * f(a + h) - 30.0 * f(a) + 16.0 * f(a - h) - f(a - 2.0 * h))
        / (12.0 * h * h);
    if !(curvature > 0.0) {
        return Err(Error::Root(format!("non-positive curvature {curvature} at the saddle")));
    }
    let l_a = l_frac(SlitComplex::real(a), alpha, tau).re;
    let prefactor = 0.25 * l_a * (2.0 / (PI * curvature)).sqrt();
    Ok(RayAsymptote::Saddle(SaddlePoint { lambda, a_lambda: a, rate: f(a), curvature, prefactor }))
}

/// `argmax_x K₊(x, t)` and the maximum: 512-point scan, then golden section.
pub fn max_k_plus(t: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    check_fractional(p)?;
    check_time(t)?;
    let r = t * p.front_speed();
    let n = 512;
    let h = r / (n - 1) as f64;
    // x = 0 is excluded: K₊ has a kink there and the peak sits near x = t.
    let xs: Vec<f64> = (1..n).map(|i| i as f64 * h).collect();
    let ks = par::map(&xs, |&x| k_plus(x, t, p, cfg).map(|v| v.value));
    let ks = ks.into_iter().collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for (i, &k) in ks.iter().enumerate() {
        if k > ks[best] {
            best = i;
        }
    }
    let k_at = |x: f64| k_plus(x, t, p, cfg).map(|v| v.value);
    let mut a = (xs[best] - h).max(0.0);
    let mut b = (xs[best] + h).min(r);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (k_at(c)?, k_at(d)?);
    while b - a > 1e-10 * r {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = k_at(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = k_at(d)?;
        }
    }
    let x = 0.5 * (a + b);
    let k = k_at(x)?;
    Ok(if k >= ks[best] { (x, k) } else { (xs[best], ks[best]) })
}

/// Peak position, centre of gravity `∫xK₊/∫K₊` and centre of mass `∫xK₊²/∫K₊²`.
pub fn packet_metrics(t: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<PacketMetrics> {
    let (x_max, _) = max_k_plus(t, p, cfg)?;
    let r = t * p.front_speed();
    let m0 = integrate_k_over(t, 0.0, r, |_, k| k, p, cfg)?.value;
    let m1 = integrate_k_over(t, 0.0, r, |x, k| x * k, p, cfg)?.value;
    let q0 = integrate_k_over(t, 0.0, r, |_, k| k * k, p, cfg)?.value;
    let q1 = integrate_k_over(t, 0.0, r, |x, k| x * k * k, p, cfg)?.value;
    Ok(PacketMetrics { x_max, x_gravity: m1 / m0, x_mass: q1 / q0, t })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_at_zero() {
        let p = ZenerParams::new(0.5, 0.5).unwrap();
        assert!((k_infinity_zero(&p) - 0.313_537_378_970_964).abs() < 1e-12);
    }

    #[test]
    fn saddle_is_a_critical_point() {
        let p = ZenerParams::new(0.5, 0.5).unwrap();
        match ray_asymptote(1.2, &p).unwrap() {
            RayAsymptote::Saddle(s) => {
                assert!(saddle_phase(s.a_lambda, 1.2, &p).1.abs() < 1e-9);
                assert!(s.rate < 0.0 && s.curvature > 0.0);
            }
            other => panic!("{other:?}"),
        }
    }
}
