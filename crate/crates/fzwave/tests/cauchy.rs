use fzwave::cauchy::*;
use fzwave::fundsol::{eval_k, SpacetimeQuery};
use fzwave::{Error, QuadratureConfig, ZenerParams};

fn half() -> ZenerParams {
    ZenerParams::new(0.5, 0.5).unwrap()
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn gaussian_like(h: f64) -> Profile {
    let n = (2.0 / h).round() as usize;
    Profile::from_fn(-2.0, h, 2 * n + 1, |x| if x.abs() < 2.0 { (-4.0 * x * x).exp() } else { 0.0 }).unwrap()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn narrow_bump_reproduces_k() {
    let p = half();
    let t = 5.0;
    let sup = |w: f64, n: usize| {
        let d = InitialData::displacement(cosine_bump(w, n).unwrap());
        let grid = OutputGrid::aligned_with(&d.u0, 3.0, 7.0).unwrap();
        let u = solve(&d, t, &grid, &p, &cfg()).unwrap();
        (0..grid.len)
            .map(|j| (u.samples[j] - eval_k(SpacetimeQuery::new(grid.x(j), t), &p, &cfg()).unwrap().value).abs())
            .fold(0.0, f64::max)
    };
    let (a, b) = (sup(0.2, 8), sup(0.05, 2));
    assert!(b < a && b < 2e-3, "{a} {b}");
}

#[test]
fn mass_and_support() {
    let p = half();
    let d = InitialData::displacement(gaussian_like(0.05));
    let t = 5.0;
    let r = t * p.front_speed();
    let grid = OutputGrid::aligned_with(&d.u0, -2.0 - r - 0.5, 2.0 + r + 0.5).unwrap();
    let u = solve(&d, t, &grid, &p, &cfg()).unwrap();
    assert!((u.integral() - d.u0.integral()).abs() < 1e-4, "{} {}", u.integral(), d.u0.integral());
    let (lo, hi) = d.u0.support().unwrap();
    for j in 0..grid.len {
        let x = grid.x(j);
        if x < lo - r - 1e-12 || x > hi + r + 1e-12 {
            assert_eq!(u.samples[j], 0.0, "x = {x}");
        }
    }
}

#[test]
fn linearity_and_velocity_path() {
    let p = half();
    let a = gaussian_like(0.1);
    let b = Profile::new(a.x_min, a.step, a.samples.iter().enumerate().map(|(i, v)| v * (i as f64 * 0.3).sin()).collect()).unwrap();
    let grid = OutputGrid::aligned_with(&a, -3.0, 3.0).unwrap();
    let solve_u = |f: &Profile| solve(&InitialData::displacement(f.clone()), 1.5, &grid, &p, &cfg()).unwrap().samples;
    let comb = Profile::new(a.x_min, a.step, a.samples.iter().zip(&b.samples).map(|(x, y)| 2.0 * x - 3.0 * y).collect()).unwrap();
    let (ua, ub, uc) = (solve_u(&a), solve_u(&b), solve_u(&comb));
    let scale = uc.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for j in 0..grid.len {
        assert!((uc[j] - (2.0 * ua[j] - 3.0 * ub[j])).abs() < 1e-10 * scale);
    }
    // u₀ = 0 with v₀ present is the S-convolution alone, and adds linearly.
    let zero = Profile::new(a.x_min, a.step, vec![0.0; a.len()]).unwrap();
    let v_only = solve(&InitialData { u0: zero, v0: Some(b.clone()) }, 1.5, &grid, &p, &cfg()).unwrap();
    let both = solve(&InitialData { u0: a.clone(), v0: Some(b) }, 1.5, &grid, &p, &cfg()).unwrap();
    for ((w, u), v) in both.samples.iter().zip(&ua).zip(&v_only.samples) {
        assert!((w - u - v).abs() < 1e-12);
    }
}

#[test]
fn translation_is_exact_on_commensurate_grids() {
    let p = half();
    let a = gaussian_like(0.1);
    let shift = 7.0 * a.step;
    let moved = Profile::new(a.x_min + shift, a.step, a.samples.clone()).unwrap();
    let g1 = OutputGrid::new(-3.0, a.step, 61).unwrap();
    let g2 = OutputGrid::new(-3.0 + shift, a.step, 61).unwrap();
    let u1 = solve(&InitialData::displacement(a), 1.0, &g1, &p, &cfg()).unwrap();
    let u2 = solve(&InitialData::displacement(moved), 1.0, &g2, &p, &cfg()).unwrap();
    assert_eq!(u1.samples, u2.samples);
}

#[test]
fn grid_refinement() {
    // At small t, K has a front peak narrower than these steps; by t = 5 it
    // has spread out.
    let p = half();
    let coarse = gaussian_like(0.1);
    let fine = gaussian_like(0.05);
    let grid = OutputGrid::aligned_with(&coarse, -9.0, 9.0).unwrap();
    let a = solve(&InitialData::displacement(coarse), 5.0, &grid, &p, &cfg()).unwrap();
    let b = solve(&InitialData::displacement(fine), 5.0, &grid, &p, &cfg()).unwrap();
    let d = max_diff(&a.samples, &b.samples);
    assert!(d < 1e-4, "{d}");
}

#[test]
fn evaluate_at_matches_solve() {
    let p = half();
    let d = InitialData::displacement(gaussian_like(0.1));
    let grid = OutputGrid::aligned_with(&d.u0, -1.0, 1.0).unwrap();
    let u = solve(&d, 1.0, &grid, &p, &cfg()).unwrap();
    for j in [0, 5, 10] {
        let v = evaluate_at(&d, grid.x(j), 1.0, &p, &cfg()).unwrap();
        assert!((v - u.samples[j]).abs() < 1e-12);
    }
}

#[test]
fn packet_split_symmetry_and_scaling() {
    let p = half();
    let bump = cosine_bump(0.5, 5).unwrap();
    let one = packet_split_check(&InitialData::displacement(bump.clone()), 20.0, &p, &cfg()).unwrap();
    assert!((one.mass - 1.0).abs() < 1e-12);
    assert!((one.deviation_plus - one.deviation_minus).abs() < 1e-12);
    let twice = Profile::new(bump.x_min, bump.step, bump.samples.iter().map(|v| 2.0 * v).collect()).unwrap();
    let two = packet_split_check(&InitialData::displacement(twice), 20.0, &p, &cfg()).unwrap();
    for i in 0..one.nus.len() {
        assert!((0.5 * two.scaled_plus[i] - one.scaled_plus[i]).abs() < 1e-6);
    }
    assert!((0.5 * two.deviation() - one.deviation()).abs() < 1e-6);
}

#[test]
fn degenerate_data_is_rejected() {
    let p = half();
    let odd = Profile::from_fn(-1.0, 0.1, 21, |x| x * (1.0 - x * x)).unwrap();
    let r = packet_split_check(&InitialData::displacement(odd), 10.0, &p, &cfg());
    assert!(matches!(r, Err(Error::DegenerateData(_))));
    let with_v = InitialData { u0: cosine_bump(0.5, 5).unwrap(), v0: Some(cosine_bump(0.5, 5).unwrap()) };
    assert!(packet_split_check(&with_v, 10.0, &p, &cfg()).is_err());
    assert!(Profile::new(0.0, 0.1, vec![1.0]).is_err());
    assert!(Profile::new(0.0, 0.1, vec![1.0, f64::NAN]).is_err());
}

#[test]
fn decay_ratio_is_homogeneous() {
    let p = half();
    let b = cosine_bump(0.5, 5).unwrap();
    let tripled = Profile::new(b.x_min, b.step, b.samples.iter().map(|v| 3.0 * v).collect()).unwrap();
    let times = [5.0, 20.0];
    let r1 = dispersion_bound_check(&InitialData::displacement(b), &times, &p, &cfg()).unwrap();
    let r3 = dispersion_bound_check(&InitialData::displacement(tripled), &times, &p, &cfg()).unwrap();
    for (a, c) in r1.entries.iter().zip(&r3.entries) {
        assert!((a.ratio - c.ratio).abs() < 1e-10 * a.ratio);
    }
}
