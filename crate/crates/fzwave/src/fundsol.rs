//! The fundamental solution `S(x,t)` and the impulse kernel `K = ∂_t S`.
//!
//! Two contour representations are implemented.
//!
//! *Cone* (Hankel faces, valid for `|x| < t/√τ`): with `l₊ = l_α(q e^{iπ})`,
//!
//! ```text
//! S = 1/2 + (1/2π) ∫_0^∞ Im(l₊ e^{|x| q l₊}) e^{-qt} / q dq,
//! K =     -(1/2π) ∫_0^∞ Im(l₊ e^{|x| q l₊}) e^{-qt}     dq.
//! ```
//!
//! *Axis* (imaginary axis, valid for `x ≠ 0`): with
//! `z(y) = l_α(iy) exp(-|x| iy l_α(iy) + ity)`,
//!
//! ```text
//! S = 1/4 + (1/2π) ∫_0^∞ Im z(y) / y dy,
//! K =       (1/2π) ∫_0^∞ Re z(y)     dy.
//! ```
//!
//! The axis integrand decays only like `exp(-c|x| y^{1-α})`. Inside the cone
//! the far part `[Y, ∞)` may instead be taken along the horizontal ray
//! `s = iY - r`, where the integrand decays like `e^{-(t - |x| M) r}`; the
//! cheaper of the two is chosen per point.

use std::cell::Cell;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{l_frac, SlitComplex, ZenerParams};
use crate::quadrature::{
    doubling_breakpoints, graded_origin_transform, integrate_adaptive, integrate_decaying_tail,
    integrate_decaying_tail_with, integrate_panels, truncation_point, EvalResult, QuadratureConfig,
};

/// A space-time point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimeQuery {
    pub x: f64,
    pub t: f64,
}

impl SpacetimeQuery {
    pub fn new(x: f64, t: f64) -> Self {
        Self { x, t }
    }
}

/// Position of a query relative to the forward cone `|x| ≤ t/√τ`.
///
/// Several tags can hold at once, e.g. `(1, 2)` is both strictly interior
/// and off-axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Region {
    pub outside_cone: bool,
    pub strict_interior: bool,
    pub off_axis: bool,
    pub origin: bool,
    pub axis_positive_time: bool,
}

/// Tags `q` per the cone geometry.
pub fn classify(q: SpacetimeQuery, p: &ZenerParams) -> Region {
    let radius = q.t * p.front_speed();
    let origin = q.x == 0.0 && q.t == 0.0;
    Region {
        outside_cone: !origin && (q.x.abs() > radius || q.t <= 0.0),
        strict_interior: q.t > 0.0 && q.x.abs() < radius,
        off_axis: q.x != 0.0,
        origin,
        axis_positive_time: q.x == 0.0 && q.t > 0.0,
    }
}

/// Which quantity an integral computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    S,
    K,
}

/// `(1/2π) ∫_0^∞ Im(l₊ e^{|x| q l₊ - qt}) w(q) dq` on the upper Hankel face,
/// for `|x| < t/√τ`; `w_bound` must be a non-increasing majorant of `|w|`.
pub(crate) fn face_integral(
    q: SpacetimeQuery,
    p: &ZenerParams,
    w: impl Fn(f64) -> f64,
    w_bound: impl Fn(f64) -> f64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult<f64>> {
    require_interior(q, p)?;
    Evaluator::new(q, p).face_integral(w, w_bound, cfg)
}

/// Side of the axis for one-sided derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `sup_ρ |1 + τ u|/|1 + u|` over `u = ρ e^{iθ}`, `cos θ = c`, as a bound on `|l|`.
pub(crate) fn kernel_modulus_bound(tau: f64, c: f64) -> f64 {
    let ratio = |rho: f64| {
        (1.0 + 2.0 * tau * rho * c + tau * tau * rho * rho) / (1.0 + 2.0 * rho * c + rho * rho)
    };
    let mut best: f64 = 1.0;
    if c < 0.0 {
        // Critical points solve τ c ρ² + (1+τ) ρ + c = 0.
        let disc = (1.0 + tau).powi(2) - 4.0 * tau * c * c;
        if disc >= 0.0 {
            for sign in [-1.0, 1.0] {
                let rho = (-(1.0 + tau) + sign * disc.sqrt()) / (2.0 * tau * c);
                if rho > 0.0 {
                    best = best.max(ratio(rho));
                }
            }
        }
    }
    // best bounds |l|⁴.
    best.sqrt().sqrt() * (1.0 + 1e-12)
}

/// Bound on `|l|` for `|s| ≥ r` from `|1+u| ≥ |u| - 1`, valid once `r^α > 1`.
fn far_modulus_bound(r: f64, alpha: f64, tau: f64) -> f64 {
    let rho = r.powf(alpha);
    if rho <= 1.0 {
        f64::INFINITY
    } else {
        ((1.0 + tau * rho) / (rho - 1.0)).sqrt()
    }
}

struct Evaluator {
    alpha: f64,
    tau: f64,
    sqrt_tau: f64,
    x: f64,
    t: f64,
}

impl Evaluator {
    fn new(q: SpacetimeQuery, p: &ZenerParams) -> Self {
        Self {
            alpha: p.alpha(),
            tau: p.tau(),
            sqrt_tau: p.sqrt_tau(),
            x: q.x.abs(),
            t: q.t,
        }
    }

    /// `l₊ e^{|x| q l₊ - qt}` on the upper face.
    #[inline]
    fn face(&self, q: f64) -> Complex64 {
        let l = l_frac(SlitComplex::upper_face(q), self.alpha, self.tau);
        l * (l * (self.x * q) - self.t * q).exp()
    }

    fn cone(&self, kind: Kind, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
        match kind {
            Kind::S => self
                .face_integral(|q| 1.0 / q, |q| 1.0 / q, cfg)
                .map(|r| r.shift(0.5)),
            Kind::K => self.face_integral(|_| -1.0, |_| 1.0, cfg),
        }
    }

    /// `(1/2π) ∫_0^∞ Im(l₊ e^{|x| q l₊ - qt}) w(q) dq`, where `w_bound` is a
    /// non-increasing majorant of `|w|` and `w` is at worst `O(1/q)` near 0.
    fn face_integral(
        &self,
        w: impl Fn(f64) -> f64,
        w_bound: impl Fn(f64) -> f64,
        cfg: &QuadratureConfig,
    ) -> Result<EvalResult<f64>> {
        let part_cfg = cfg.scaled(1.0 / 3.0);
        let integrand = |q: f64| Complex64::new(self.face(q).im * w(q), 0.0);
        let q_g = 1f64.min(1.0 / self.t);
        let graded = graded_origin_transform(self.alpha)?;
        let near = graded.integrate(integrand, q_g, &part_cfg)?;

        let l_all = kernel_modulus_bound(self.tau, (self.alpha * PI).cos());
        let bound = |q: f64| l_all.min(far_modulus_bound(q, self.alpha, self.tau));
        let gap = self.t - self.x * self.sqrt_tau;
        let mut q_tail = (2.0 * q_g).max(2f64.powf(1.0 / self.alpha));
        while self.t - self.x * bound(q_tail) < 0.5 * gap {
            q_tail *= 2.0;
            if !q_tail.is_finite() {
                return Err(Error::Region("cone representation does not converge here".into()));
            }
        }
        let middle = integrate_panels(integrand, &doubling_breakpoints(q_g, q_tail), None, &part_cfg)?;
        let envelope = |q: f64| {
            let m = bound(q);
            m * (-(self.t - self.x * m) * q).exp() * w_bound(q)
        };
        let tail = integrate_decaying_tail(integrand, q_tail, envelope, &part_cfg)?;
        Ok(near.plus(middle).plus(tail).re().scale(0.5 / PI))
    }

    /// `z(y)` for complex `y` (analytic continuation off the real axis).
    #[inline]
    fn z(&self, y: Complex64) -> Complex64 {
        let s = Complex64::new(-y.im, y.re);
        let l = l_frac(SlitComplex::from_complex(s), self.alpha, self.tau);
        l * (-(s * l) * self.x + s * self.t).exp()
    }

    /// `z(y)` for real `y > 0`.
    #[inline]
    fn z_real(&self, y: f64) -> Complex64 {
        let s = Complex64::new(0.0, y);
        let l = l_frac(SlitComplex::imaginary(y), self.alpha, self.tau);
        l * (-(s * l) * self.x + s * self.t).exp()
    }

    fn axis(&self, kind: Kind, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
        let part_cfg = cfg.scaled(1.0 / 3.0);
        let integrand = |y: f64| {
            let v = self.z_real(y);
            match kind {
                Kind::S => Complex64::new(v.im / y, 0.0),
                Kind::K => Complex64::new(v.re, 0.0),
            }
        };
        let y_g = 1f64.min(PI / self.t);
        let graded = graded_origin_transform(self.alpha)?;
        let near = graded.integrate(integrand, y_g, &part_cfg)?;

        // Exact modulus of the integrand; non-increasing in y.
        let envelope = |y: f64| {
            let l = l_frac(SlitComplex::imaginary(y), self.alpha, self.tau);
            let m = l.norm() * (self.x * y * l.im).exp() * (1.0 + 1e-9);
            match kind {
                Kind::S => m / y,
                Kind::K => m,
            }
        };
        let budget = part_cfg.abs_tol / part_cfg.truncation_safety;
        let y_direct = truncation_point(&envelope, y_g, budget).ok();
        let freq = self.t;
        let direct_cost = y_direct.map_or(f64::INFINITY, |y| y * freq / (2.0 * PI));

        if let Some((y_ray, m, kappa)) = self.ray_start(y_g, direct_cost) {
            let middle = integrate_panels(integrand, &doubling_breakpoints(y_g, y_ray), Some(freq), &part_cfg)?;
            let ray = self.ray(kind, y_ray, m, kappa, &part_cfg)?;
            let total = near.plus(middle).re().plus(ray).scale(0.5 / PI);
            return Ok(match kind {
                Kind::S => total.shift(0.25),
                Kind::K => total,
            });
        }
        if y_direct.is_none() {
            return Err(Error::Truncation(format!(
                "axis integrand does not decay fast enough at x = {}, t = {}",
                self.x, self.t
            )));
        }
        let far = integrate_decaying_tail_with(integrand, y_g, envelope, Some(freq), &part_cfg)?;
        let total = near.plus(far).re().scale(0.5 / PI);
        Ok(match kind {
            Kind::S => total.shift(0.25),
            Kind::K => total,
        })
    }

    /// Height `Y` of the horizontal ray, the modulus bound on it and its decay
    /// rate, when closing along the ray is cheaper than direct truncation.
    fn ray_start(&self, y_g: f64, direct_cost: f64) -> Option<(f64, f64, f64)> {
        let gap = self.t - self.x * self.sqrt_tau;
        if gap <= 0.0 {
            return None;
        }
        let l_region = kernel_modulus_bound(self.tau, (self.alpha * PI).cos())
            .max(kernel_modulus_bound(self.tau, (0.5 * self.alpha * PI).cos()));
        let mut y = (2.0 * y_g).max(2f64.powf(1.0 / self.alpha));
        loop {
            let cost = y * self.t / (2.0 * PI) + 64.0;
            if cost >= direct_cost {
                return None;
            }
            let m = l_region.min(far_modulus_bound(y, self.alpha, self.tau));
            let kappa = self.t - self.x * m;
            if kappa >= 0.5 * gap {
                return Some((y, m, kappa));
            }
            y *= 2.0;
        }
    }

    /// `∫_Y^∞` of the axis integrand moved onto `y = Y + i r`, `r ≥ 0`.
    fn ray(&self, kind: Kind, y0: f64, m: f64, kappa: f64, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
        let i = Complex64::new(0.0, 1.0);
        let f = |r: f64| {
            let y = Complex64::new(y0, r);
            let v = self.z(y) * i;
            match kind {
                Kind::S => v / y,
                Kind::K => v,
            }
        };
        let envelope = |r: f64| {
            let e = m * (-kappa * r).exp();
            match kind {
                Kind::S => e / y0,
                Kind::K => e,
            }
        };
        let r1 = 1.0 / kappa;
        let half = cfg.scaled(0.5);
        let head = integrate_adaptive(f, 0.0, r1, &half)?;
        let tail = integrate_decaying_tail(f, r1, envelope, &half)?;
        let sum = head.plus(tail);
        Ok(match kind {
            Kind::S => sum.im(),
            Kind::K => sum.re(),
        })
    }
}

fn check_query(q: SpacetimeQuery, p: &ZenerParams) -> Result<()> {
    p.require_fractional()?;
    if !q.x.is_finite() || !q.t.is_finite() {
        return Err(Error::Domain(format!("non-finite query ({}, {})", q.x, q.t)));
    }
    Ok(())
}

fn require_interior(q: SpacetimeQuery, p: &ZenerParams) -> Result<()> {
    check_query(q, p)?;
    if classify(q, p).strict_interior {
        Ok(())
    } else {
        Err(Error::Region(format!(
            "cone representation needs |x| < t/sqrt(tau); got x = {}, t = {}",
            q.x, q.t
        )))
    }
}

fn require_off_axis(q: SpacetimeQuery, p: &ZenerParams) -> Result<()> {
    check_query(q, p)?;
    if q.x == 0.0 {
        return Err(Error::Region("axis representation needs x != 0".into()));
    }
    if !(q.t > 0.0) {
        return Err(Error::Region("axis representation needs t > 0".into()));
    }
    Ok(())
}

/// `S` from the Hankel-face representation; needs `|x| < t/√τ`.
pub fn eval_s_cone(q: SpacetimeQuery, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    require_interior(q, p)?;
    Evaluator::new(q, p).cone(Kind::S, cfg)
}

/// `S` from the imaginary-axis representation; needs `x ≠ 0`.
pub fn eval_s_axis(q: SpacetimeQuery, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    require_off_axis(q, p)?;
    Evaluator::new(q, p).axis(Kind::S, cfg)
}

/// `K = ∂_t S` from the Hankel-face representation.
pub fn eval_k_cone(q: SpacetimeQuery, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    require_interior(q, p)?;
    Evaluator::new(q, p).cone(Kind::K, cfg)
}

/// `K = ∂_t S` from the imaginary-axis representation.
pub fn eval_k_axis(q: SpacetimeQuery, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    require_off_axis(q, p)?;
    Evaluator::new(q, p).axis(Kind::K, cfg)
}

/// Whether the dispatcher uses the cone representation at `q`.
pub fn uses_cone(q: SpacetimeQuery, p: &ZenerParams) -> bool {
    q.x.abs() <= 0.1 * q.t * p.front_speed()
}

fn dispatch(q: SpacetimeQuery, p: &ZenerParams, cfg: &QuadratureConfig, kind: Kind) -> Result<EvalResult<f64>> {
    check_query(q, p)?;
    let region = classify(q, p);
    if region.origin {
        return Err(Error::SingularPoint);
    }
    if !region.strict_interior {
        // Outside, and on the front by continuity.
        return Ok(EvalResult::exact(0.0));
    }
    let e = Evaluator::new(q, p);
    if uses_cone(q, p) {
        e.cone(kind, cfg)
    } else {
        e.axis(kind, cfg)
    }
}

/// `S(x, t)`: zero outside the open cone, cone form for `|x| ≤ 0.1 t/√τ`, axis
/// form otherwise.
pub fn eval_s(q: SpacetimeQuery, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    dispatch(q, p, cfg, Kind::S)
}

/// `K(x, t)` with the same dispatch as [`eval_s`].
pub fn eval_k(q: SpacetimeQuery, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    dispatch(q, p, cfg, Kind::K)
}

/// `∫ K(x,t) dx` over `[lo, hi]` with nested quadrature.
pub(crate) fn integrate_k_over(
    t: f64,
    lo: f64,
    hi: f64,
    weight: impl Fn(f64, f64) -> f64,
    p: &ZenerParams,
    cfg: &QuadratureConfig,
) -> Result<EvalResult<f64>> {
    let radius = t * p.front_speed();
    let seam = 0.1 * radius;
    let mut pts: Vec<f64> = vec![lo, hi];
    for c in [-radius, -t, -seam, 0.0, seam, t, radius] {
        if c > lo && c < hi {
            pts.push(c);
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let inner = cfg.scaled(1e-2);
    let failure: Cell<Option<Error>> = Cell::new(None);
    let f = |x: f64| match eval_k(SpacetimeQuery::new(x, t), p, &inner) {
        Ok(r) => Complex64::new(weight(x, r.value), 0.0),
        Err(e) => {
            failure.set(Some(e));
            Complex64::new(f64::NAN, 0.0)
        }
    };
    let res = integrate_panels(f, &pts, None, cfg);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    res.map(EvalResult::re)
}

/// `∫_{-t/√τ}^{t/√τ} K(x, t) dx`, which equals 1.
pub fn mass_of_k(t: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    p.require_fractional()?;
    if !(t > 0.0) {
        return Err(Error::Domain(format!("mass_of_K needs t > 0, got {t}")));
    }
    let r = t * p.front_speed();
    integrate_k_over(t, -r, r, |_, k| k, p, cfg)
}

/// `∂S/∂x` at `x = 0±`.
pub fn dsdx_at_origin(t: f64, side: Side, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    p.require_fractional()?;
    if !(t > 0.0) {
        return Err(Error::Domain(format!("dSdx_at_origin needs t > 0, got {t}")));
    }
    let (alpha, tau) = (p.alpha(), p.tau());
    let c = (alpha * PI).cos();
    let pre = (1.0 - tau) * (alpha * PI).sin();
    let f = |q: f64| {
        let qa = q.powf(alpha);
        Complex64::new(pre * qa / (1.0 + 2.0 * c * qa + qa * qa) * (-t * q).exp(), 0.0)
    };
    let q_g = 1f64.min(1.0 / t);
    let graded = graded_origin_transform(alpha)?;
    let half = cfg.scaled(0.5);
    let near = graded.integrate(f, q_g, &half)?;
    let sup = pre / (2.0 * (1.0 + c));
    let tail = integrate_decaying_tail(f, q_g, |q: f64| sup * (-t * q).exp(), &half)?;
    let total = near.plus(tail).re().scale(0.5 / PI);
    Ok(match side {
        Side::Right => total.scale(-1.0),
        Side::Left => total,
    })
}

/// `S(λt, t)` for `λ ∈ [0, 1/√τ]`.
pub fn diag_s(lambda: f64, t: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<EvalResult<f64>> {
    p.require_fractional()?;
    if !(t > 0.0) || !(0.0..=p.front_speed() * (1.0 + 1e-15)).contains(&lambda) {
        return Err(Error::Domain(format!(
            "diag_S needs t > 0 and 0 <= lambda <= 1/sqrt(tau) (got {lambda}, {t})"
        )));
    }
    // On the front S = 0 by continuity with the exterior.
    let x = (lambda * t).min(t * p.front_speed());
    eval_s(SpacetimeQuery::new(x, t), p, cfg)
}
