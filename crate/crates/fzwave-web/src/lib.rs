//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export samples one curve on a uniform (or log) grid and returns a flat
//! `Float64Array`. Errors come back as strings.

use fzwave::dispersion::dispersion_sample;
use fzwave::fundsol::{eval_k, SpacetimeQuery};
use fzwave::wavepacket::k_infinity;
use fzwave::{QuadratureConfig, ZenerParams};
use wasm_bindgen::prelude::*;

/// Looser than the library default; keeps slider interaction responsive.
const REL_TOL: f64 = 1e-7;
const ABS_TOL: f64 = 1e-10;
const MAX_POINTS: usize = 2000;

fn setup(alpha: f64, tau: f64) -> Result<(ZenerParams, QuadratureConfig), String> {
    let p = ZenerParams::new(alpha, tau).map_err(|e| e.to_string())?;
    let cfg = QuadratureConfig::new(REL_TOL, ABS_TOL).map_err(|e| e.to_string())?;
    Ok((p, cfg))
}

fn grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, String> {
    if !(lo.is_finite() && hi.is_finite() && hi > lo) || !(2..=MAX_POINTS).contains(&n) {
        return Err(format!("need finite lo < hi and 2..={MAX_POINTS} points (got {lo}, {hi}, {n})"));
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}

/// Front speed `1/√τ`.
#[wasm_bindgen]
pub fn front_speed(tau: f64) -> f64 {
    1.0 / tau.sqrt()
}

/// `k_∞(ν)` at `n` equally spaced `ν` in `[nu_min, nu_max]`.
#[wasm_bindgen]
pub fn k_infinity_curve(alpha: f64, tau: f64, nu_min: f64, nu_max: f64, n: usize) -> Result<Vec<f64>, String> {
    let (p, cfg) = setup(alpha, tau)?;
    grid(nu_min, nu_max, n)?
        .into_iter()
        .map(|nu| k_infinity(nu, &p, &cfg).map(|v| v.value).map_err(|e| e.to_string()))
        .collect()
}

/// `K(x, t)` at `n` equally spaced `x` in `[0, x_max]`.
#[wasm_bindgen]
pub fn k_profile(alpha: f64, tau: f64, t: f64, x_max: f64, n: usize) -> Result<Vec<f64>, String> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(format!("t must be positive, got {t}"));
    }
    let (p, cfg) = setup(alpha, tau)?;
    grid(0.0, x_max, n)?
        .into_iter()
        .map(|x| eval_k(SpacetimeQuery::new(x, t), &p, &cfg).map(|v| v.value).map_err(|e| e.to_string()))
        .collect()
}

/// Phase velocity, group velocity and attenuation at `n` log-spaced
/// frequencies in `[10^log_min, 10^log_max]`, concatenated in that order.
#[wasm_bindgen]
pub fn dispersion_curves(alpha: f64, tau: f64, log_min: f64, log_max: f64, n: usize) -> Result<Vec<f64>, String> {
    let (p, _) = setup(alpha, tau)?;
    let mut out = vec![0.0; 3 * n];
    for (i, e) in grid(log_min, log_max, n)?.into_iter().enumerate() {
        let s = dispersion_sample(10f64.powf(e), &p).map_err(|e| e.to_string())?;
        out[i] = s.phase_velocity;
        out[n + i] = s.group_velocity;
        out[2 * n + i] = s.attenuation;
    }
    Ok(out)
}
