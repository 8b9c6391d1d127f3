//! The Laplace-domain symbol `l_α(s) = sqrt((1 + τ s^α)/(1 + s^α))`, its
//! α = 1 variant, the polar split on the imaginary axis and the
//! Mittag-Leffler memory kernel.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{doubling_breakpoints, integrate_panels, QuadratureConfig};
use crate::special::{gamma, ln_gamma};

/// Model constants `(α, τ)`.
///
/// Construct with [`ZenerParams::new`] for the fractional model
/// (`0 < α < 1`) or [`ZenerParams::sls`] for the α = 1 limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZenerParams {
    alpha: f64,
    tau: f64,
}

impl ZenerParams {
    /// Fractional model, `0 < α < 1`, `0 < τ < 1`.
    pub fn new(alpha: f64, tau: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in (0, 1) for the fractional model, got {alpha}"
            )));
        }
        Self::check_tau(tau)?;
        Ok(Self { alpha, tau })
    }

    /// Standard linear solid, α = 1.
    pub fn sls(tau: f64) -> Result<Self> {
        Self::check_tau(tau)?;
        Ok(Self { alpha: 1.0, tau })
    }

    fn check_tau(tau: f64) -> Result<()> {
        if tau > 0.0 && tau < 1.0 {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("tau must lie in (0, 1), got {tau}")))
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn sqrt_tau(&self) -> f64 {
        self.tau.sqrt()
    }

    /// Wave-front speed `1/√τ`.
    pub fn front_speed(&self) -> f64 {
        1.0 / self.tau.sqrt()
    }

    /// Packet width exponent `1/(1+α)`.
    pub fn packet_exponent(&self) -> f64 {
        1.0 / (1.0 + self.alpha)
    }

    /// True for α = 1.
    pub fn is_sls(&self) -> bool {
        self.alpha == 1.0
    }

    /// Errors unless the parameters describe the fractional model.
    pub fn require_fractional(&self) -> Result<()> {
        if self.is_sls() {
            Err(Error::InvalidParameter(
                "alpha = 1 is the standard linear solid; use the sls evaluators".into(),
            ))
        } else {
            Ok(())
        }
    }

    /// Large-frequency attenuation constant `(√τ/2)(1/τ - 1) sin(απ/2)`.
    pub fn high_frequency_attenuation(&self) -> f64 {
        0.5 * self.sqrt_tau() * (1.0 / self.tau - 1.0) * (0.5 * self.alpha * PI).sin()
    }
}

/// A point of the slit plane stored in polar form, so that the two faces
/// `q e^{iπ}` and `q e^{-iπ}` of the negative real axis stay distinct.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitComplex {
    modulus: f64,
    argument: f64,
}

impl SlitComplex {
    /// Point `modulus · e^{i·argument}`, `argument ∈ [-π, π]`.
    pub fn new(modulus: f64, argument: f64) -> Result<Self> {
        if !(modulus >= 0.0) || !(argument.abs() <= PI) || modulus.is_nan() {
            return Err(Error::Domain(format!(
                "slit-plane point needs modulus >= 0 and |argument| <= pi (got {modulus}, {argument})"
            )));
        }
        Ok(Self { modulus, argument })
    }

    /// Principal-argument polar form of a rectangular complex number.
    pub fn from_complex(z: Complex64) -> Self {
        Self {
            modulus: z.norm(),
            argument: z.im.atan2(z.re),
        }
    }

    /// `q e^{iπ}` (upper face of the negative axis).
    pub fn upper_face(q: f64) -> Self {
        Self {
            modulus: q.abs(),
            argument: PI,
        }
    }

    /// `q e^{-iπ}` (lower face of the negative axis).
    pub fn lower_face(q: f64) -> Self {
        Self {
            modulus: q.abs(),
            argument: -PI,
        }
    }

    /// `i·y`.
    pub fn imaginary(y: f64) -> Self {
        Self {
            modulus: y.abs(),
            argument: if y >= 0.0 { PI / 2.0 } else { -PI / 2.0 },
        }
    }

    /// Positive real `x ≥ 0`.
    pub fn real(x: f64) -> Self {
        Self {
            modulus: x.abs(),
            argument: if x >= 0.0 { 0.0 } else { PI },
        }
    }

    pub fn modulus(&self) -> f64 {
        self.modulus
    }

    pub fn argument(&self) -> f64 {
        self.argument
    }

    /// Rectangular form (loses the face distinction).
    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.modulus, self.argument)
    }

    /// Complex conjugate, mapping one face to the other.
    pub fn conj(&self) -> Self {
        Self {
            modulus: self.modulus,
            argument: -self.argument,
        }
    }

    /// Principal power `s^p`.
    pub fn powf(&self, p: f64) -> Complex64 {
        if self.modulus == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.modulus.powf(p), p * self.argument)
    }
}

/// `l_α(s)` without parameter checks.
#[inline]
pub(crate) fn l_frac(s: SlitComplex, alpha: f64, tau: f64) -> Complex64 {
    if s.modulus == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let ln_r = s.modulus.ln();
    if ln_r * alpha <= 0.0 {
        let u = Complex64::from_polar((alpha * ln_r).exp(), alpha * s.argument);
        ((1.0 + tau * u) / (1.0 + u)).sqrt()
    } else {
        // Divide through by u so that huge moduli do not overflow.
        let v = Complex64::from_polar((-alpha * ln_r).exp(), -alpha * s.argument);
        ((tau + v) / (1.0 + v)).sqrt()
    }
}

/// `d l_α / ds` without parameter checks.
#[inline]
pub(crate) fn l_frac_derivative(s: SlitComplex, alpha: f64, tau: f64) -> Complex64 {
    let u = s.powf(alpha);
    let l = l_frac(s, alpha, tau);
    let dl_du = (tau - 1.0) / ((1.0 + u) * (1.0 + u)) / (2.0 * l);
    // du/ds = α s^{α-1} = α u / s.
    dl_du * alpha * u / s.to_complex()
}

/// The kernel `l_α(s) = sqrt((1 + τ s^α)/(1 + s^α))` on the slit plane.
///
/// Principal branches throughout; on the faces `s^α = q^α e^{±iαπ}`.
/// `l_α(0) = 1`.
pub fn l_alpha(s: SlitComplex, p: &ZenerParams) -> Result<Complex64> {
    p.require_fractional()?;
    Ok(l_frac(s, p.alpha, p.tau))
}

/// `l_α'(s)`.
pub fn l_alpha_derivative(s: SlitComplex, p: &ZenerParams) -> Result<Complex64> {
    p.require_fractional()?;
    if s.modulus == 0.0 {
        return Err(Error::Domain("l_alpha is not differentiable at s = 0".into()));
    }
    Ok(l_frac_derivative(s, p.alpha, p.tau))
}

/// `l_1(z)` on rectangular input, analytic off `[-1/τ, -1]`.
#[inline]
pub(crate) fn l_one_c(z: Complex64, tau: f64) -> Complex64 {
    let n = z.norm();
    if n > 1.0 {
        let w = 1.0 / z;
        ((tau + w) / (1.0 + w)).sqrt()
    } else {
        ((1.0 + tau * z) / (1.0 + z)).sqrt()
    }
}

/// The α = 1 kernel `l_1(s) = sqrt((1 + τ s)/(1 + s))`.
///
/// Only `τ` is read from `p`. Points of the branch segment `[-1/τ, -1]`
/// are rejected.
pub fn l_one(s: SlitComplex, p: &ZenerParams) -> Result<Complex64> {
    let tau = p.tau;
    let z = s.to_complex();
    let on_negative_axis = s.argument.abs() == PI || (z.im == 0.0 && z.re < 0.0);
    if on_negative_axis && s.modulus >= 1.0 && s.modulus <= 1.0 / tau {
        return Err(Error::BranchCut(format!("s = -{}", s.modulus)));
    }
    if s.argument.abs() == PI {
        // Off the cut the function is continuous across the axis.
        return Ok(l_one_c(Complex64::new(-s.modulus, 0.0), tau));
    }
    Ok(l_one_c(z, tau))
}

/// `l_α(iω) = a - i b = ρ e^{-iφ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarKernel {
    pub a: f64,
    pub b: f64,
    pub rho: f64,
    pub phi: f64,
}

impl PolarKernel {
    pub(crate) fn from_value(l: Complex64) -> Self {
        Self {
            a: l.re,
            b: -l.im,
            rho: l.norm(),
            phi: -l.im.atan2(l.re),
        }
    }

    /// Reconstructs `ρ e^{-iφ}`.
    pub fn value(&self) -> Complex64 {
        Complex64::from_polar(self.rho, -self.phi)
    }
}

/// Polar split of `l_α(iω)` for `ω > 0`.
pub fn polar_kernel(omega: f64, p: &ZenerParams) -> Result<PolarKernel> {
    p.require_fractional()?;
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    Ok(PolarKernel::from_value(l_frac(SlitComplex::imaginary(omega), p.alpha, p.tau)))
}

/// Series is used while the largest term stays modest; beyond that the
/// alternating sum cancels catastrophically.
fn series_limit(alpha: f64) -> f64 {
    5f64.powf(alpha)
}

/// Mittag-Leffler function `E_{α,β}(z)` on the negative real axis with the
/// default quadrature configuration.
pub fn mittag_leffler(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    mittag_leffler_with(alpha, beta, z, &QuadratureConfig::default())
}

/// `E_{α,β}(z)` for `0 < α ≤ 1`, `β > 0`, `z ≤ 0`.
///
/// Power series near the origin, an integral representation further out.
pub fn mittag_leffler_with(alpha: f64, beta: f64, z: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0) || !beta.is_finite() || !(z <= 0.0) || z.is_infinite() {
        return Err(Error::Domain(format!(
            "mittag_leffler needs 0 < alpha <= 1, beta > 0, finite z <= 0 (got {alpha}, {beta}, {z})"
        )));
    }
    if z == 0.0 {
        return Ok(1.0 / gamma(beta));
    }
    if alpha == 1.0 && beta == 1.0 {
        return Ok(z.exp());
    }
    if -z <= series_limit(alpha) {
        return Ok(ml_series(alpha, beta, z));
    }
    if alpha == 1.0 {
        return ml_alpha_one(beta, z, cfg);
    }
    if beta >= 1.0 + alpha {
        // E_{α,β}(z) = (E_{α,β-α}(z) - 1/Γ(β-α)) / z
        let lower = mittag_leffler_with(alpha, beta - alpha, z, cfg)?;
        return Ok((lower - 1.0 / gamma(beta - alpha)) / z);
    }
    ml_integral(alpha, beta, z, cfg)
}

fn ml_series(alpha: f64, beta: f64, z: f64) -> f64 {
    let ln_abs = (-z).ln();
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for k in 0..5000 {
        let kf = k as f64;
        let mag = (kf * ln_abs - ln_gamma(alpha * kf + beta)).exp();
        let term = if k % 2 == 0 { mag } else { -mag };
        sum += term;
        // Terms eventually decrease monotonically; stop once they are far
        // below the partial sum and shrinking.
        if k > 2 && mag < prev && mag <= 1e-17 * sum.abs().max(1e-300) {
            break;
        }
        prev = mag;
    }
    sum
}

fn ml_alpha_one(beta: f64, z: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if beta == 1.0 {
        return Ok(z.exp());
    }
    if beta < 1.0 {
        // E_{1,β}(z) = 1/Γ(β) + z E_{1,β+1}(z)
        return Ok(1.0 / gamma(beta) + z * ml_alpha_one(beta + 1.0, z, cfg)?);
    }
    // β > 1: E_{1,β}(z) = (1/Γ(β-1)) ∫_0^1 e^{z u}(1-u)^{β-2} du; substitute
    // 1-u = v^m with m = 1/(β-1) to remove the endpoint power.
    let m = 1.0 / (beta - 1.0);
    let f = |v: f64| {
        let u = 1.0 - v.powf(m);
        Complex64::new((z * u).exp() * m, 0.0)
    };
    let res = integrate_panels(f, &[0.0, 0.5, 1.0], None, &cfg.scaled(0.1))?;
    Ok(res.value.re / gamma(beta - 1.0))
}

/// Integral representation for `z = -x < 0`, `0 < α < 1`, `β < 1 + α`:
///
/// `E = (1/πα) ∫_0^∞ r^{(1-β)/α} e^{-r^{1/α}} (r sin π(1-β) - z sin π(1-β+α)) / (r² - 2rz cos πα + z²) dr`.
fn ml_integral(alpha: f64, beta: f64, z: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let e = (1.0 - beta) / alpha + 1.0; // > 0
    let s1 = (PI * (1.0 - beta)).sin();
    let s2 = (PI * (1.0 - beta + alpha)).sin();
    let c = (PI * alpha).cos();
    let kernel = |r: f64| {
        let num = r * s1 - z * s2;
        let den = r * r - 2.0 * r * z * c + z * z;
        (-r.powf(1.0 / alpha)).exp() * num / den
    };
    // r = v^{1/e} turns r^{e-1} dr into dv/e.
    let inv_e = 1.0 / e;
    let f = move |v: f64| {
        let r = v.powf(inv_e);
        Complex64::new(kernel(r) * inv_e, 0.0)
    };
    // e^{-r^{1/α}} < 1e-19 beyond r = 45^α.
    let r_end = 45f64.powf(alpha);
    let v_end = r_end.powf(e);
    // Doubling panels from the smaller of the decay scale r = 1 and the
    // denominator's scale r = |z|.
    let v_first = z.abs().powf(e).min(1.0).min(0.5 * v_end);
    let mut pts = vec![0.0];
    pts.extend(doubling_breakpoints(v_first, v_end));
    let res = integrate_panels(f, &pts, None, &cfg.scaled(0.1))?;
    Ok(res.value.re / (PI * alpha))
}

/// Regular part of the memory kernel,
/// `-((1-τ)/τ²) t^{α-1} E_{α,α}(-t^α/τ)`, for `t > 0` and `0 < α ≤ 1`.
pub fn memory_kernel_regular_part(t: f64, p: &ZenerParams) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("memory kernel needs t > 0, got {t}")));
    }
    let (alpha, tau) = (p.alpha, p.tau);
    let ml = mittag_leffler(alpha, alpha, -t.powf(alpha) / tau)?;
    Ok(-(1.0 - tau) / (tau * tau) * t.powf(alpha - 1.0) * ml)
}
