//! One function per subcommand; each builds a [`Table`].

use std::f64::consts::PI;

use fzwave::cauchy::{dispersion_bound_check, packet_split_check, solve, InitialData, OutputGrid};
use fzwave::dispersion::dispersion_sample;
use fzwave::fundsol::{eval_k, SpacetimeQuery};
use fzwave::kernel::l_alpha;
use fzwave::sls::{sls_jump, sls_s};
use fzwave::wavepacket::{k_infinity, k_plus};
use fzwave::SlitComplex;

use crate::table::{fmt_float, Block, Row, Table};
use crate::{CauchyMode, CliError, Figure, RunConfig, SlsMode};

fn linear_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, CliError> {
    if !lo.is_finite() || !hi.is_finite() {
        return Err(CliError::Flag(format!("grid ends must be finite (got {lo}, {hi})")));
    }
    if n == 1 && lo == hi {
        return Ok(vec![lo]);
    }
    if n < 2 || !(hi > lo) {
        return Err(CliError::Flag(format!(
            "grid needs lo < hi and at least 2 points, or lo = hi and 1 point (got {lo}, {hi}, {n})"
        )));
    }
    Ok((0..n).map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect())
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, CliError> {
    if !(lo > 0.0) {
        return Err(CliError::Flag(format!("log grid needs a positive lower end, got {lo}")));
    }
    let mut g: Vec<f64> = linear_grid(lo.log10(), hi.log10(), n)?.into_iter().map(|e| 10f64.powf(e)).collect();
    g[0] = lo;
    *g.last_mut().unwrap() = hi;
    Ok(g)
}

fn check_time(t: f64) -> Result<(), CliError> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(CliError::Flag(format!("t must be positive, got {t}")));
    }
    Ok(())
}

/// Columns `s_modulus, s_argument, modulus, argument, re, im`.
pub fn kernel(rc: &RunConfig, s_min: f64, s_max: f64, points: usize, arg_fracs: &[f64]) -> Result<Table, CliError> {
    let moduli = log_grid(s_min, s_max, points)?;
    let mut block = Block::new("kernel", &["s_modulus", "s_argument", "modulus", "argument", "re", "im"]);
    for &f in arg_fracs {
        if !(f > -1.0 && f < 1.0) {
            return Err(CliError::Flag(format!("argument fractions must lie in (-1, 1), got {f}")));
        }
        let arg = f * PI;
        for &m in &moduli {
            let r = SlitComplex::new(m, arg)
                .and_then(|s| l_alpha(s, &rc.params))
                .map(|l| vec![l.norm(), l.arg(), l.re, l.im]);
            block.rows.push(Row::from_result(&[m, arg], 6, r));
        }
    }
    let mut t = Table::new(rc.header());
    t.blocks.push(block);
    Ok(t)
}

fn scaled_k(rc: &RunConfig, x: f64, t: f64) -> fzwave::Result<f64> {
    let w = t.powf(rc.params.packet_exponent());
    Ok(w * k_plus(x, t, &rc.params, &rc.cfg)?.value)
}

/// fig1: `K(x, t)` for `t ∈ {1, 2, 3}`; fig2: the packet at `t = 100` in `x`
/// and against `k_∞` in `ν`; fig3: `k_∞` on `[-3, 3]`.
pub fn figures(rc: &RunConfig, which: Figure, points: usize) -> Result<Table, CliError> {
    let p = &rc.params;
    let mut table = Table::new(rc.header());
    match which {
        Figure::Fig1 => {
            let mut b = Block::new("fig1", &["x", "K_t1", "K_t2", "K_t3"]);
            for x in linear_grid(0.0, 4.5, points)? {
                let r = [1.0, 2.0, 3.0]
                    .iter()
                    .map(|&t| eval_k(SpacetimeQuery::new(x, t), p, &rc.cfg).map(|v| v.value))
                    .collect();
                b.rows.push(Row::from_result(&[x], 4, r));
            }
            table.blocks.push(b);
        }
        Figure::Fig2 => {
            let t: f64 = 100.0;
            let w = t.powf(p.packet_exponent());
            let mut packet = Block::new("packet", &["x", "scaled_K"]);
            for x in linear_grid(80.0, 120.0, points)? {
                packet.rows.push(Row::from_result(&[x], 2, scaled_k(rc, x, t).map(|v| vec![v])));
            }
            let mut limit = Block::new("limit", &["nu", "k_t", "k_inf", "deviation"]);
            let mut sup: f64 = 0.0;
            for nu in linear_grid(-1.0, 1.0, points)? {
                let r = scaled_k(rc, t + nu * w, t).and_then(|kt| {
                    let ki = k_infinity(nu, p, &rc.cfg)?.value;
                    Ok(vec![kt, ki, kt - ki])
                });
                if let Ok(v) = &r {
                    sup = sup.max(v[2].abs());
                }
                limit.rows.push(Row::from_result(&[nu], 4, r));
            }
            table.blocks.push(packet);
            table.blocks.push(limit);
            table.note("t", fmt_float(t));
            table.note("sup_deviation", fmt_float(sup));
        }
        Figure::Fig3 => {
            let mut b = Block::new("fig3", &["nu", "k_inf"]);
            for nu in linear_grid(-3.0, 3.0, points)? {
                b.rows.push(Row::from_result(&[nu], 2, k_infinity(nu, p, &rc.cfg).map(|v| vec![v.value])));
            }
            table.blocks.push(b);
        }
    }
    Ok(table)
}

/// Columns `omega, a, b, rho, phi, V, U, d, U_flagged`.
pub fn dispersion(rc: &RunConfig, omega_min: f64, omega_max: f64, points: usize) -> Result<Table, CliError> {
    let mut b = Block::new("dispersion", &["omega", "a", "b", "rho", "phi", "V", "U", "d", "U_flagged"]);
    for w in log_grid(omega_min, omega_max, points)? {
        let r = dispersion_sample(w, &rc.params).map(|s| {
            vec![
                s.a,
                s.b,
                s.rho,
                s.phi,
                s.phase_velocity,
                s.group_velocity,
                s.attenuation,
                if s.group_velocity_flagged { 1.0 } else { 0.0 },
            ]
        });
        b.rows.push(Row::from_result(&[w], 9, r));
    }
    let mut t = Table::new(rc.header());
    t.blocks.push(b);
    Ok(t)
}

/// Offset in `t` used to approach the front from either side.
pub const FRONT_OFFSET: f64 = 1e-6;

/// Grid: `x, t, jump, continuous, total`. Probe: `x, front_time, jump,
/// inside, outside, measured_jump` with `t = √τ|x| ± FRONT_OFFSET`.
pub fn sls(rc: &RunConfig, mode: SlsMode, x_min: f64, x_max: f64, points: usize, t: f64) -> Result<Table, CliError> {
    let p = &rc.params;
    let xs = linear_grid(x_min, x_max, points)?;
    let block = match mode {
        SlsMode::Grid => {
            check_time(t)?;
            let mut b = Block::new("sls", &["x", "t", "jump", "continuous", "total"]);
            for x in xs {
                let r = sls_s(x, t, p, &rc.cfg).map(|d| vec![d.jump_amplitude, d.continuous_part, d.total]);
                b.rows.push(Row::from_result(&[x, t], 5, r));
            }
            b
        }
        SlsMode::Probe => {
            let mut b = Block::new("sls_probe", &["x", "front_time", "jump", "inside", "outside", "measured_jump"]);
            for x in xs {
                let tf = p.sqrt_tau() * x.abs();
                let r = (|| {
                    let inside = sls_s(x, tf + FRONT_OFFSET, p, &rc.cfg)?.total;
                    let outside = sls_s(x, tf - FRONT_OFFSET, p, &rc.cfg)?.total;
                    Ok(vec![sls_jump(x, p), inside, outside, inside - outside])
                })();
                b.rows.push(Row::from_result(&[x, tf], 6, r));
            }
            b
        }
    };
    let mut table = Table::new(rc.header());
    table.blocks.push(block);
    Ok(table)
}

/// Columns `nu, k_t, k_inf, deviation`.
pub fn packet(rc: &RunConfig, t: f64, nu_min: f64, nu_max: f64, points: usize) -> Result<Table, CliError> {
    check_time(t)?;
    let w = t.powf(rc.params.packet_exponent());
    let mut b = Block::new("packet", &["nu", "k_t", "k_inf", "deviation"]);
    let mut sup: f64 = 0.0;
    for nu in linear_grid(nu_min, nu_max, points)? {
        let r = scaled_k(rc, t + nu * w, t).and_then(|kt| {
            let ki = k_infinity(nu, &rc.params, &rc.cfg)?.value;
            Ok(vec![kt, ki, kt - ki])
        });
        if let Ok(v) = &r {
            sup = sup.max(v[2].abs());
        }
        b.rows.push(Row::from_result(&[nu], 4, r));
    }
    let mut table = Table::new(rc.header());
    table.blocks.push(b);
    table.note("t", fmt_float(t));
    table.note("sup_deviation", fmt_float(sup));
    Ok(table)
}

/// Options of the `cauchy` command.
#[derive(Debug, Clone)]
pub struct CauchyOptions {
    pub mode: CauchyMode,
    pub t: f64,
    pub times: Vec<f64>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub points: Option<usize>,
}

/// Split: `nu, scaled_plus, scaled_minus, limit`. Bound: `t, x_at_max,
/// max_abs, ratio`. Solve: `x, u`.
pub fn cauchy(rc: &RunConfig, data: &InitialData, opts: &CauchyOptions) -> Result<Table, CliError> {
    let (p, cfg) = (&rc.params, &rc.cfg);
    let mut table = Table::new(rc.header());
    match opts.mode {
        CauchyMode::Split => {
            check_time(opts.t)?;
            let r = packet_split_check(data, opts.t, p, cfg)?;
            let mut b = Block::new("split", &["nu", "scaled_plus", "scaled_minus", "limit"]);
            for i in 0..r.nus.len() {
                b.rows.push(Row::ok(vec![r.nus[i], r.scaled_plus[i], r.scaled_minus[i], r.limit[i]]));
            }
            table.blocks.push(b);
            table.note("t", fmt_float(opts.t));
            table.note("mass", fmt_float(r.mass));
            table.note("deviation_plus", fmt_float(r.deviation_plus));
            table.note("deviation_minus", fmt_float(r.deviation_minus));
        }
        CauchyMode::Bound => {
            for &t in &opts.times {
                check_time(t)?;
            }
            let r = dispersion_bound_check(data, &opts.times, p, cfg)?;
            let mut b = Block::new("bound", &["t", "x_at_max", "max_abs", "ratio"]);
            for e in &r.entries {
                b.rows.push(Row::ok(vec![e.t, e.x_at_max, e.max_abs, e.ratio]));
            }
            table.blocks.push(b);
            table.note("spread", fmt_float(r.spread));
            table.note("bounded", r.bounded);
        }
        CauchyMode::Solve => {
            check_time(opts.t)?;
            let reach = opts.t * p.front_speed();
            let lo = opts.x_min.unwrap_or(data.u0.x_min - reach);
            let hi = opts.x_max.unwrap_or(data.u0.x_max() + reach);
            if !(hi > lo) {
                return Err(CliError::Flag(format!("need x-min < x-max, got {lo}, {hi}")));
            }
            let grid = match opts.points {
                Some(n) => OutputGrid::new(lo, (hi - lo) / (n.max(2) - 1) as f64, n.max(2))?,
                None => OutputGrid::aligned_with(&data.u0, lo, hi)?,
            };
            let u = solve(data, opts.t, &grid, p, cfg)?;
            let mut b = Block::new("solve", &["x", "u"]);
            for (j, v) in u.samples.iter().enumerate() {
                b.rows.push(Row::ok(vec![grid.x(j), *v]));
            }
            table.blocks.push(b);
            table.note("t", fmt_float(opts.t));
        }
    }
    Ok(table)
}
