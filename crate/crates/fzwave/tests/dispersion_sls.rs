use fzwave::dispersion::*;
use fzwave::fundsol::{eval_s, Side, SpacetimeQuery};
use fzwave::sls::*;
use fzwave::{QuadratureConfig, ZenerParams};

fn half() -> ZenerParams {
    ZenerParams::new(0.5, 0.5).unwrap()
}

fn sls() -> ZenerParams {
    ZenerParams::sls(0.5).unwrap()
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64)).collect()
}

#[test]
fn fractional_velocities() {
    let p = half();
    let grid = log_grid(1e-4, 1e4, 64);
    let samples = dispersion_sweep(&grid, &p).unwrap();
    for w in samples.windows(2) {
        assert!(w[1].phase_velocity > w[0].phase_velocity);
    }
    for s in &samples {
        assert!(s.group_velocity >= s.phase_velocity * (1.0 - 1e-12), "{s:?}");
        assert!(!s.group_velocity_flagged);
    }
    let lo = dispersion_sample(1e-6, &p).unwrap();
    let hi = dispersion_sample(1e8, &p).unwrap();
    assert!((lo.phase_velocity - 1.0).abs() < 1e-3);
    assert!((hi.phase_velocity - 2f64.sqrt()).abs() < 1e-3);
    assert!((lo.group_velocity / lo.phase_velocity - 1.0).abs() < 1e-3);
    assert!((hi.group_velocity / hi.phase_velocity - 1.0).abs() < 1e-2);

    let one = dispersion_sample(1.0, &p).unwrap();
    assert!((one.phase_velocity - 1.0 / 0.868_076_932_030_970).abs() < 1e-12);
    assert!((one.attenuation - 0.059_645_284_174_870).abs() < 1e-12);
    assert!((one.rho - 0.870_123_623).abs() < 1e-8);
    assert!((one.phi - 0.068_601_854).abs() < 1e-8);
}

#[test]
fn attenuation_asymptotics() {
    let p = half();
    let (low, high) = attenuation_limits(&p);
    let d = |w: f64| dispersion_sample(w, &p).unwrap().attenuation;
    assert!((d(1e4) / 1e4f64.powf(0.5) / high - 1.0).abs() < 0.02);
    assert!((d(1e-4) / 1e-4f64.powf(1.5) / low - 1.0).abs() < 0.02);
}

#[test]
fn steady_state_closed_form() {
    let p = half();
    let v = steady_state(1.0, 2.0, 1.0, &p).unwrap();
    assert!((v - 0.358_216_855).abs() < 1e-8, "{v}");
    let one = dispersion_sample(1.0, &p).unwrap();
    assert!(steady_state(0.0, one.phi, 1.0, &p).unwrap().abs() < 1e-15);
    let r = classical_reference(0.0, std::f64::consts::FRAC_PI_2, 1.0, &p).unwrap();
    assert!((r - 0.353_553_390_593_273_8).abs() < 1e-12);
    assert_eq!(classical_reference(5.0, 1.0, 1.0, &p).unwrap(), 0.0);
}

#[test]
fn forced_solution_matches_vertical_line() {
    let p = half();
    for &(x, t) in &[(0.5, 3.0), (1.0, 2.0)] {
        let a = forced_solution(x, t, 1.0, &p, &cfg()).unwrap().value;
        let b = forced_solution_vertical(x, t, 1.0, &p, &cfg()).unwrap().value;
        assert!((a - b).abs() < 1e-6, "({x},{t}): {a} vs {b}");
    }
    // Outside the cone both vanish.
    let b = forced_solution_vertical(3.0, 2.0, 1.0, &p, &cfg()).unwrap().value;
    assert!(b.abs() < 1e-6, "{b}");
    assert_eq!(forced_solution(3.0, 2.0, 1.0, &p, &cfg()).unwrap().value, 0.0);
}

#[test]
fn transient_decays() {
    let p = half();
    let ts = |t: f64| transient_state(0.5, t, 1.0, &p, &cfg()).unwrap().value.abs();
    assert!(ts(50.0) < ts(5.0));
    let sup = |t: f64| {
        (0..=10)
            .map(|i| 0.1 * i as f64)
            .map(|x| transient_state(x, t, 1.0, &p, &cfg()).unwrap().value.abs())
            .fold(0.0, f64::max)
    };
    let (a, b, c) = (sup(10.0), sup(30.0), sup(100.0));
    assert!(a > b && b > c, "{a} {b} {c}");
}

#[test]
fn sls_closed_forms() {
    let p = sls();
    assert!((sls_jump(0.0, &p) - 0.353_553_390_593_273_8).abs() < 1e-15);
    assert!((sls_jump(1.0, &p) - 0.248_261_125).abs() < 1e-8);
    assert_eq!(sls_jump(-1.0, &p), sls_jump(1.0, &p));
    let r = sls_dsdx_origin(1.0, Side::Right, &p).unwrap();
    assert!((r + 0.091_969_860_3).abs() < 1e-9);
    assert_eq!(sls_dsdx_origin(1.0, Side::Left, &p).unwrap(), -r);
    assert!(sls_e(0.5, 1.0, &half(), &cfg()).is_err());
}

#[test]
fn jump_plus_continuous_matches_cut_loop() {
    let p = sls();
    for &(x, t) in &[(0.5, 2.0), (0.0, 1.0), (1.2, 1.5)] {
        let d = sls_s(x, t, &p, &cfg()).unwrap();
        let delta = default_clearance(&p);
        let a = sls_s_loop(x, t, delta, &p, &cfg()).unwrap().value;
        let b = sls_s_loop(x, t, 0.5 * delta, &p, &cfg()).unwrap().value;
        assert!((a - b).abs() < 1e-7, "{a} {b}");
        assert!((d.total - a).abs() < 1e-6, "({x},{t}): {} vs {a}", d.total);
    }
}

#[test]
fn sls_support_and_front() {
    let p = sls();
    let st = p.sqrt_tau();
    for &x in &[0.5, 1.0, 2.0] {
        let t = st * x / 1.05;
        let d = sls_s(x, t, &p, &cfg()).unwrap();
        assert!(d.total.abs() < 1e-5 && d.continuous_part.abs() < 1e-5, "{d:?}");
    }
    // E is continuous across the front, so the one-sided gap shrinks with h.
    let front = st;
    let gap = |h: f64| {
        (sls_e(1.0, front + h, &p, &cfg()).unwrap().value - sls_e(1.0, front - h, &p, &cfg()).unwrap().value).abs()
    };
    let (g2, g3, g4) = (gap(1e-2), gap(1e-3), gap(1e-4));
    assert!(g2 > g3 && g3 > g4 && g4 < 1e-4, "{g2} {g3} {g4}");
    let inside = sls_s(1.0, front + 1e-6, &p, &cfg()).unwrap().total;
    let outside = sls_s(1.0, front - 1e-6, &p, &cfg()).unwrap().total;
    assert!((inside - outside - sls_jump(1.0, &p)).abs() < 1e-3);
    // The fractional solution has no jump there.
    let q = half();
    let x = 1.0;
    let tf = q.sqrt_tau() * x;
    let fi = eval_s(SpacetimeQuery::new(x, tf + 1e-6), &q, &cfg()).unwrap().value;
    let fo = eval_s(SpacetimeQuery::new(x, tf - 1e-6), &q, &cfg()).unwrap().value;
    assert!((fi - fo).abs() < 1e-4);
}

#[test]
fn sls_long_time_and_slope() {
    let p = sls();
    let s = sls_s(0.5, 200.0, &p, &cfg()).unwrap().total;
    assert!((s - 0.5).abs() < 1e-2, "{s}");
    // Both routes to E agree where they hand over.
    for &t in &[9.0, 10.5, 12.0] {
        let e = sls_e(0.5, t, &p, &cfg()).unwrap().value;
        let l = sls_s_loop(0.5, t, default_clearance(&p), &p, &cfg()).unwrap().value - sls_jump(0.5, &p);
        assert!((e - l).abs() < 1e-8, "t={t}: {e} {l}");
    }
    let h = 1e-4;
    let fd = (sls_s(2.0 * h, 1.0, &p, &cfg()).unwrap().total - sls_s(h, 1.0, &p, &cfg()).unwrap().total) / h;
    let want = sls_dsdx_origin(1.0, Side::Right, &p).unwrap();
    assert!((fd - want).abs() < 1e-4, "{fd} {want}");
}

#[test]
fn sls_dispersion_and_contrast() {
    let p = sls();
    let d = sls_dispersion(1e6, &p).unwrap().attenuation;
    assert!((d / 0.353_553_390_593_273_8 - 1.0).abs() < 0.01, "{d}");
    assert!(sls_dispersion(1e-6, &p).unwrap().attenuation < 1e-10);
    let grid = log_grid(1e-4, 1e4, 64);
    let v: Vec<f64> = grid.iter().map(|&w| sls_dispersion(w, &p).unwrap().phase_velocity).collect();
    assert!(v.windows(2).all(|w| w[1] > w[0]));
    assert!((v[0] - 1.0).abs() < 1e-3 && (v[63] - 2f64.sqrt()).abs() < 1e-3);

    let f = |w: f64| dispersion_sample(w, &half()).unwrap().attenuation;
    let g = |w: f64| sls_dispersion(w, &p).unwrap().attenuation;
    assert!(f(1000.0) / f(10.0) > 5.0);
    assert!(g(1000.0) / g(10.0) < 1.2);
}

#[test]
fn sls_forced_matches_vertical_line() {
    let p = sls();
    for &(x, t) in &[(0.5, 2.0), (1.0, 3.0)] {
        let a = sls_forced(x, t, 1.0, &p, &cfg()).unwrap().value;
        let b = sls_forced_vertical(x, t, 1.0, &p, &cfg()).unwrap().value;
        assert!((a - b).abs() < 1e-6, "({x},{t}): {a} vs {b}");
    }
    let ts = |t: f64| sls_transient(0.5, t, 1.0, &p, &cfg()).unwrap().value.abs();
    assert!(ts(50.0) < ts(5.0));
    let out = sls_forced_vertical(3.0, 2.0, 1.0, &p, &cfg()).unwrap().value;
    assert!(out.abs() < 1e-5, "{out}");
}
