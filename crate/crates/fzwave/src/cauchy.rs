//! Cauchy problem with sampled, compactly supported data:
//!
//! ```text
//! u(x, t) = ∫ K(x - y, t) u₀(y) dy + ∫ S(x - y, t) v₀(y) dy,
//! ```
//!
//! by the trapezoid rule over the data samples. When the output grid shares
//! the data step and is offset by a whole number of steps, `x - y` only takes
//! values `k·h`, and each distinct `|k|` is evaluated once (`K`, `S` are even).
//!
//! The rule is only as good as the data step resolves `K(·, t)`. For small
//! `t`, `K` carries a peak just behind the front whose width shrinks with `t`
//! (about 0.03 at `t = 1` for α = τ = 1/2), so early times need fine data.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fundsol::{eval_k, eval_s, SpacetimeQuery};
use crate::kernel::ZenerParams;
use crate::par;
use crate::quadrature::QuadratureConfig;
use crate::wavepacket::k_infinity;

/// Uniformly sampled function: `samples[i]` at `x_min + i·step`.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub x_min: f64,
    pub step: f64,
    pub samples: Vec<f64>,
}

impl Profile {
    pub fn new(x_min: f64, step: f64, samples: Vec<f64>) -> Result<Self> {
        let p = Profile { x_min, step, samples };
        p.validate()?;
        Ok(p)
    }

    /// Samples `f` at `n` points from `x_min` with spacing `step`.
    pub fn from_fn(x_min: f64, step: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(x_min, step, (0..n).map(|i| f(x_min + i as f64 * step)).collect())
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "a profile needs at least 2 samples, got {}",
                self.samples.len()
            )));
        }
        if !(self.step > 0.0) || !self.step.is_finite() || !self.x_min.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "profile needs finite x_min and step > 0, got x_min = {}, step = {}",
                self.x_min, self.step
            )));
        }
        if let Some(i) = self.samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("sample {i} is not finite")));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.step
    }

    pub fn x_max(&self) -> f64 {
        self.x(self.len() - 1)
    }

    /// Trapezoid weight of sample `i`.
    fn weight(&self, i: usize) -> f64 {
        if i == 0 || i + 1 == self.len() {
            0.5 * self.step
        } else {
            self.step
        }
    }

    /// Trapezoid integral.
    pub fn integral(&self) -> f64 {
        self.samples.iter().enumerate().map(|(i, v)| self.weight(i) * v).sum()
    }

    /// Trapezoid `L¹` norm.
    pub fn l1_norm(&self) -> f64 {
        self.samples.iter().enumerate().map(|(i, v)| self.weight(i) * v.abs()).sum()
    }

    /// `(x_first, x_last)` of the nonzero samples, if any.
    pub fn support(&self) -> Option<(f64, f64)> {
        let first = self.samples.iter().position(|&v| v != 0.0)?;
        let last = self.samples.iter().rposition(|&v| v != 0.0)?;
        Some((self.x(first), self.x(last)))
    }
}

/// Output positions `x_min + j·step`, `j < len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputGrid {
    pub x_min: f64,
    pub step: f64,
    pub len: usize,
}

impl OutputGrid {
    pub fn new(x_min: f64, step: f64, len: usize) -> Result<Self> {
        if len < 2 || !(step > 0.0) || !step.is_finite() || !x_min.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "output grid needs len >= 2 and finite step > 0, got len = {len}, step = {step}"
            )));
        }
        Ok(OutputGrid { x_min, step, len })
    }

    /// Grid with the step and alignment of `profile`.
    pub fn aligned_with(profile: &Profile, x_min: f64, x_max: f64) -> Result<Self> {
        let h = profile.step;
        let lo = profile.x_min + ((x_min - profile.x_min) / h).floor() * h;
        let n = ((x_max - lo) / h).ceil() as usize + 1;
        Self::new(lo, h, n)
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.step
    }
}

/// Initial displacement and optional initial velocity.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialData {
    pub u0: Profile,
    pub v0: Option<Profile>,
}

impl InitialData {
    pub fn displacement(u0: Profile) -> Self {
        InitialData { u0, v0: None }
    }

    pub fn validate(&self) -> Result<()> {
        self.u0.validate()?;
        if let Some(v) = &self.v0 {
            v.validate()?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy)]
enum Kernel {
    K,
    S,
}

fn kernel_at(kind: Kernel, z: f64, t: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<f64> {
    let q = SpacetimeQuery::new(z, t);
    Ok(match kind {
        Kernel::K => eval_k(q, p, cfg)?.value,
        Kernel::S => eval_s(q, p, cfg)?.value,
    })
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    Ok(())
}

/// Whole number of data steps from the data origin to the grid origin, when
/// the two grids are commensurate.
fn integer_shift(data: &Profile, grid: &OutputGrid) -> Option<i64> {
    if (grid.step / data.step - 1.0).abs() > 1e-12 {
        return None;
    }
    let m = (grid.x_min - data.x_min) / data.step;
    let r = m.round();
    ((m - r).abs() < 1e-9).then_some(r as i64)
}

/// `∫ G(x_j - y, t) f(y) dy` on the grid.
fn convolve(
    kind: Kernel,
    f: &Profile,
    t: f64,
    grid: &OutputGrid,
    p: &ZenerParams,
    cfg: &QuadratureConfig,
) -> Result<Vec<f64>> {
    let nz: Vec<usize> = (0..f.len()).filter(|&i| f.samples[i] != 0.0).collect();
    let radius = t * p.front_speed();
    if nz.is_empty() {
        return Ok(vec![0.0; grid.len]);
    }
    let (lo, hi) = (f.x(nz[0]) - radius, f.x(*nz.last().unwrap()) + radius);

    if let Some(m) = integer_shift(f, grid) {
        let h = f.step;
        // x_j - y_i = (m + j - i)·h; the kernel vanishes beyond the front.
        let reach = (radius / h).ceil() as i64;
        let mut needed: Vec<i64> = Vec::new();
        let mut seen = vec![false; reach as usize + 1];
        for j in 0..grid.len as i64 {
            for &i in &nz {
                let k = (m + j - i as i64).abs();
                if k <= reach && !seen[k as usize] {
                    seen[k as usize] = true;
                    needed.push(k);
                }
            }
        }
        let values = par::map(&needed, |&k| kernel_at(kind, k as f64 * h, t, p, cfg));
        let mut cache = HashMap::with_capacity(needed.len());
        for (k, v) in needed.iter().zip(values) {
            cache.insert(*k, v?);
        }
        let out = (0..grid.len as i64)
            .map(|j| {
                nz.iter()
                    .map(|&i| {
                        let k = (m + j - i as i64).abs();
                        cache.get(&k).map_or(0.0, |g| g * f.weight(i) * f.samples[i])
                    })
                    .sum()
            })
            .collect();
        return Ok(out);
    }

    let js: Vec<usize> = (0..grid.len).collect();
    par::map(&js, |&j| {
        let x = grid.x(j);
        if x < lo || x > hi {
            return Ok(0.0);
        }
        let mut acc = 0.0;
        for &i in &nz {
            let g = kernel_at(kind, x - f.x(i), t, p, cfg)?;
            acc += g * f.weight(i) * f.samples[i];
        }
        Ok(acc)
    })
    .into_iter()
    .collect()
}

/// `u(·, t)` on `grid`.
pub fn solve(
    data: &InitialData,
    t: f64,
    grid: &OutputGrid,
    p: &ZenerParams,
    cfg: &QuadratureConfig,
) -> Result<Profile> {
    p.require_fractional()?;
    data.validate()?;
    check_time(t)?;
    let mut u = convolve(Kernel::K, &data.u0, t, grid, p, cfg)?;
    if let Some(v0) = &data.v0 {
        for (a, b) in u.iter_mut().zip(convolve(Kernel::S, v0, t, grid, p, cfg)?) {
            *a += b;
        }
    }
    Ok(Profile { x_min: grid.x_min, step: grid.step, samples: u })
}

fn pointwise(
    kind: Kernel,
    f: &Profile,
    x: f64,
    t: f64,
    keep: impl Fn(f64) -> bool,
    p: &ZenerParams,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let mut acc = 0.0;
    for (i, &v) in f.samples.iter().enumerate() {
        let z = x - f.x(i);
        if v != 0.0 && keep(z) {
            acc += kernel_at(kind, z, t, p, cfg)? * f.weight(i) * v;
        }
    }
    Ok(acc)
}

/// `u(x, t)` at a single point.
pub fn evaluate_at(data: &InitialData, x: f64, t: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<f64> {
    p.require_fractional()?;
    data.validate()?;
    check_time(t)?;
    let mut u = pointwise(Kernel::K, &data.u0, x, t, |_| true, p, cfg)?;
    if let Some(v0) = &data.v0 {
        u += pointwise(Kernel::S, v0, x, t, |_| true, p, cfg)?;
    }
    Ok(u)
}

/// Distances of the rescaled right- and left-moving parts from `A·k_∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct PacketSplitReport {
    pub t: f64,
    /// `A = ∫u₀`.
    pub mass: f64,
    pub nus: Vec<f64>,
    /// `t^{1/(1+α)} u₊(t + ν t^{1/(1+α)}, t)`.
    pub scaled_plus: Vec<f64>,
    /// `t^{1/(1+α)} u₋(-t - ν t^{1/(1+α)}, t)`.
    pub scaled_minus: Vec<f64>,
    /// `A·k_∞(ν)`.
    pub limit: Vec<f64>,
    pub deviation_plus: f64,
    pub deviation_minus: f64,
}

impl PacketSplitReport {
    pub fn deviation(&self) -> f64 {
        self.deviation_plus.max(self.deviation_minus)
    }
}

/// Number of ν samples on `[-1, 1]` used by [`packet_split_check`].
pub const PACKET_NU_POINTS: usize = 41;

/// Compares `u₊ = K₊ * u₀` and `u₋ = K₋ * u₀` with `A·k_∞` over `ν ∈ [-1, 1]`.
pub fn packet_split_check(
    data: &InitialData,
    t: f64,
    p: &ZenerParams,
    cfg: &QuadratureConfig,
) -> Result<PacketSplitReport> {
    p.require_fractional()?;
    data.validate()?;
    check_time(t)?;
    if data.v0.is_some() {
        return Err(Error::InvalidParameter(
            "the packet-splitting check takes displacement data only".into(),
        ));
    }
    let u0 = &data.u0;
    let mass = u0.integral();
    let norm = u0.l1_norm();
    if !(mass.abs() >= 1e-8 * norm) || norm == 0.0 {
        return Err(Error::DegenerateData(format!(
            "integral {mass:e} is negligible against the L1 norm {norm:e}"
        )));
    }

    let w = t.powf(p.packet_exponent());
    let n = PACKET_NU_POINTS;
    let nus: Vec<f64> = (0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect();
    let rows = par::map(&nus, |&nu| -> Result<(f64, f64, f64)> {
        let x = t + nu * w;
        let plus = pointwise(Kernel::K, u0, x, t, |z| z >= 0.0, p, cfg)?;
        let minus = pointwise(Kernel::K, u0, -x, t, |z| z <= 0.0, p, cfg)?;
        let k = k_infinity(nu, p, cfg)?.value;
        Ok((w * plus, w * minus, mass * k))
    });
    let mut report = PacketSplitReport {
        t,
        mass,
        nus: nus.clone(),
        scaled_plus: Vec::with_capacity(n),
        scaled_minus: Vec::with_capacity(n),
        limit: Vec::with_capacity(n),
        deviation_plus: 0.0,
        deviation_minus: 0.0,
    };
    for row in rows {
        let (a, b, k) = row?;
        report.deviation_plus = report.deviation_plus.max((a - k).abs());
        report.deviation_minus = report.deviation_minus.max((b - k).abs());
        report.scaled_plus.push(a);
        report.scaled_minus.push(b);
        report.limit.push(k);
    }
    Ok(report)
}

/// One time level of [`dispersion_bound_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayEntry {
    pub t: f64,
    pub x_at_max: f64,
    pub max_abs: f64,
    /// `max_x |u(x, t)| · t^{1/(1+α)} / ‖u₀‖₁`.
    pub ratio: f64,
}

/// Decay ratios per time, with their spread.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayReport {
    pub entries: Vec<DecayEntry>,
    /// `(max ratio - min ratio) / max ratio`.
    pub spread: f64,
    /// Whether the spread stays under [`DECAY_SPREAD_LIMIT`].
    pub bounded: bool,
}

/// Relative spread of the decay ratios accepted as bounded.
pub const DECAY_SPREAD_LIMIT: f64 = 0.2;

/// `max_x |u|` by a scan of the cone followed by golden-section refinement.
fn max_abs(data: &InitialData, t: f64, p: &ZenerParams, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let (lo, hi) = match (data.u0.support(), data.v0.as_ref().and_then(Profile::support)) {
        (None, None) => return Ok((0.0, 0.0)),
        (Some(a), None) | (None, Some(a)) => a,
        (Some(a), Some(b)) => (a.0.min(b.0), a.1.max(b.1)),
    };
    let r = t * p.front_speed();
    let (a, b) = (lo - r, hi + r);
    // Features have width of order t^{1/(1+α)}; resolve each with ~16 points.
    let width = t.powf(p.packet_exponent()).min(r);
    let n = (((b - a) / width * 16.0).ceil() as usize).clamp(64, 4096);
    let h = (b - a) / n as f64;
    let xs: Vec<f64> = (1..n).map(|i| a + i as f64 * h).collect();
    let f = |x: f64| evaluate_at(data, x, t, p, cfg).map(f64::abs);
    let vals = par::map(&xs, |&x| f(x)).into_iter().collect::<Result<Vec<_>>>()?;
    let best = (0..vals.len()).fold(0, |b, i| if vals[i] > vals[b] { i } else { b });

    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut l, mut u) = (xs[best] - h, xs[best] + h);
    let (mut c, mut d) = (u - g * (u - l), l + g * (u - l));
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while u - l > 1e-8 * (b - a) {
        if fc >= fd {
            u = d;
            d = c;
            fd = fc;
            c = u - g * (u - l);
            fc = f(c)?;
        } else {
            l = c;
            c = d;
            fc = fd;
            d = l + g * (u - l);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (l + u);
    let v = f(x)?;
    Ok(if v >= vals[best] { (x, v) } else { (xs[best], vals[best]) })
}

/// Checks `‖u(·, t)‖_∞ ≲ t^{-1/(1+α)} ‖u₀‖₁` on a list of times.
pub fn dispersion_bound_check(
    data: &InitialData,
    times: &[f64],
    p: &ZenerParams,
    cfg: &QuadratureConfig,
) -> Result<DecayReport> {
    p.require_fractional()?;
    data.validate()?;
    let norm = data.u0.l1_norm();
    if norm == 0.0 {
        return Err(Error::DegenerateData("u0 vanishes identically".into()));
    }
    let mut entries = Vec::with_capacity(times.len());
    for &t in times {
        check_time(t)?;
        let (x, m) = max_abs(data, t, p, cfg)?;
        entries.push(DecayEntry { t, x_at_max: x, max_abs: m, ratio: m * t.powf(p.packet_exponent()) / norm });
    }
    let hi = entries.iter().map(|e| e.ratio).fold(f64::NEG_INFINITY, f64::max);
    let lo = entries.iter().map(|e| e.ratio).fold(f64::INFINITY, f64::min);
    let spread = if entries.is_empty() || hi == 0.0 { 0.0 } else { (hi - lo) / hi };
    Ok(DecayReport { entries, spread, bounded: spread < DECAY_SPREAD_LIMIT })
}

/// Smooth unit-mass bump `(1/w)·cos²(πx/(2w))` on `[-w, w]`, sampled with
/// `2n + 1` points.
pub fn cosine_bump(half_width: f64, n: usize) -> Result<Profile> {
    if !(half_width > 0.0) || n == 0 {
        return Err(Error::InvalidParameter("bump needs half_width > 0 and n >= 1".into()));
    }
    let h = half_width / n as f64;
    Profile::from_fn(-half_width, h, 2 * n + 1, |x| {
        let c = (0.5 * std::f64::consts::PI * x / half_width).cos();
        c * c / half_width
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_has_unit_mass() {
        let b = cosine_bump(0.5, 10).unwrap();
        assert!((b.integral() - 1.0).abs() < 1e-14);
        assert_eq!(b.samples[0], b.samples[20]);
    }

    #[test]
    fn commensurate_detection() {
        let b = cosine_bump(0.5, 10).unwrap();
        let g = OutputGrid::aligned_with(&b, 3.01, 4.0).unwrap();
        assert_eq!(integer_shift(&b, &g), Some(70));
        let off = OutputGrid::new(0.013, b.step, 4).unwrap();
        assert_eq!(integer_shift(&b, &off), None);
    }
}
