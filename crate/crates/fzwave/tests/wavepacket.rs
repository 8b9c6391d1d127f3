use fzwave::fundsol::{eval_k, mass_of_k, SpacetimeQuery};
use fzwave::wavepacket::*;
use fzwave::{Error, QuadratureConfig, ZenerParams};

fn half() -> ZenerParams {
    ZenerParams::new(0.5, 0.5).unwrap()
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

#[test]
fn k_infinity_reference_values() {
    let p = half();
    let cases = [
        (0.0, 0.313_537_378_970_964),
        (-30.0, 1.072_967_59e-5),
        (-10.0, 1.671_93e-4),
        (-5.0, 9.430_91e-4),
        (1.5, 3.100_84e-4),
        (2.0, 6.194_25e-9),
    ];
    for (nu, want) in cases {
        let got = k_infinity(nu, &p, &cfg()).unwrap().value;
        assert!(((got - want) / want).abs() < 1e-5, "nu={nu}: {got} vs {want}");
    }
    assert!((k_infinity(0.0, &p, &cfg()).unwrap().value - k_infinity_zero(&p)).abs() < 1e-10);
}

#[test]
fn derivatives_match_finite_differences() {
    let p = half();
    let k = |nu: f64| k_infinity(nu, &p, &cfg()).unwrap().value;
    let h = 1e-4;
    let fd1 = (k(0.5 + h) - k(0.5 - h)) / (2.0 * h);
    let d1 = k_infinity_deriv(0.5, 1, &p, &cfg()).unwrap().value;
    assert!((fd1 - d1).abs() < 1e-6, "{fd1} {d1}");
    let h = 1e-3;
    let fd2 = (k(h) - 2.0 * k(0.0) + k(-h)) / (h * h);
    let d2 = k_infinity_deriv(0.0, 2, &p, &cfg()).unwrap().value;
    assert!((fd2 - d2).abs() < 1e-5, "{fd2} {d2}");
    assert!(k_infinity_deriv(0.0, 9, &p, &cfg()).is_err());
}

#[test]
fn positivity_and_normalisation() {
    let p = half();
    for i in 0..=400 {
        let nu = -10.0 + 0.05 * i as f64;
        assert!(k_infinity_scaled(nu, &p, &cfg()).unwrap().mantissa.value > 0.0, "nu = {nu}");
    }
    let mass = fzwave::quadrature::integrate_real(
        |nu| k_infinity(nu, &p, &cfg()).unwrap().value,
        -20.0,
        5.0,
        &QuadratureConfig::new(1e-8, 1e-10).unwrap(),
    )
    .unwrap()
    .value;
    assert!((mass - 0.5).abs() < 1e-3, "{mass}");
}

#[test]
fn tails() {
    let p = half();
    let r = k_infinity(-30.0, &p, &cfg()).unwrap().value / k_asymp_minus(-30.0, &p).unwrap();
    assert!((0.9..=1.1).contains(&r), "{r}");
    let ratio = |nu: f64| k_infinity(nu, &p, &cfg()).unwrap().value / k_asymp_plus(nu, &p).unwrap();
    let (r1, r15, r2) = (ratio(1.0), ratio(1.5), ratio(2.0));
    assert!((r15 - 1.0).abs() < 0.2, "{r15}");
    assert!((r2 - 1.0).abs() <= (r1 - 1.0).abs() + 1e-3, "{r1} {r2}");
    let a = k_asymp_minus(-10.0, &p).unwrap();
    let b = k_asymp_minus(-20.0, &p).unwrap();
    assert!((b / a - 2f64.powf(-2.5)).abs() < 1e-12);
    assert!(k_asymp_minus(1.0, &p).is_err());
}

#[test]
fn fractional_ode_and_renormalisation() {
    let p = half();
    for &nu in &[-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0] {
        let r = frac_ode_residual(nu, &p, &cfg()).unwrap().value;
        assert!(r.abs() < 1e-7, "nu={nu}: {r}");
    }
    let direct = normalized_profile(0.3, &p, &cfg()).unwrap().value;
    let via = renormalized_k(0.3, &p, &cfg()).unwrap().value;
    assert!((direct - via).abs() < 1e-7, "{direct} {via}");
}

#[test]
fn kappa_mass_is_half() {
    let p = half();
    for &t in &[1.0, 10.0] {
        let m = kappa_t_mass(t, &p, &cfg()).unwrap().value;
        assert!((m - 0.5).abs() < 1e-6, "t={t}: {m}");
    }
    let full = mass_of_k(2.0, &p, &cfg()).unwrap().value;
    let halfm = kappa_t_mass(2.0, &p, &cfg()).unwrap().value;
    assert!((full / 2.0 - halfm).abs() < 1e-8);
}

#[test]
fn packet_profile_converges() {
    let p = half();
    let grid = PacketGrid::new(-1.0, 1.0, 0.1).unwrap();
    let sup = |t: f64| {
        let prof = k_t_profile(t, &grid, &p, &cfg()).unwrap();
        prof.samples
            .iter()
            .enumerate()
            .map(|(i, v)| (v - k_infinity(prof.nu(i), &p, &cfg()).unwrap().value).abs())
            .fold(0.0, f64::max)
    };
    // The leading correction is O(t^{-α/(1+α)}).
    let (s25, s100) = (sup(25.0), sup(100.0));
    assert!(s100 < s25, "{s25} {s100}");
    let (c25, c100) = (s25 * 25f64.powf(1.0 / 3.0), s100 * 100f64.powf(1.0 / 3.0));
    assert!(c100 < c25 && c100 > 0.8 * c25, "{c25} {c100}");
    // Points beyond the front map to zero.
    let far = PacketGrid::new(100.0, 100.0, 1.0).unwrap();
    assert_eq!(k_t_profile(10.0, &far, &p, &cfg()).unwrap().samples, vec![0.0]);
}

#[test]
fn anchor_on_the_packet_ray() {
    let p = half();
    let t: f64 = 500.0;
    let v = t.powf(1.0 / 1.5) * eval_k(SpacetimeQuery::new(t, t), &p, &cfg()).unwrap().value;
    assert!((v / k_infinity_zero(&p) - 1.0).abs() < 0.02, "{v}");
}

#[test]
fn ray_asymptotics() {
    let p = half();
    assert!(matches!(ray_asymptote(1.0, &p), Err(Error::InvalidRay)));
    let t = 200.0;
    let pl = ray_asymptote(0.5, &p).unwrap();
    let k = eval_k(SpacetimeQuery::new(0.5 * t, t), &p, &cfg()).unwrap().value;
    assert!((k / pl.predict(t) - 1.0).abs() < 0.15, "{} {}", k, pl.predict(t));

    let rate = |l: f64| match ray_asymptote(l, &p).unwrap() {
        RayAsymptote::Saddle(s) => s,
        other => panic!("{other:?}"),
    };
    assert!(rate(1.35).rate < rate(1.1).rate);
    let s = rate(1.2);
    let resid = |t: f64| {
        let k = eval_k(SpacetimeQuery::new(1.2 * t, t), &p, &cfg()).unwrap().value;
        k.ln() - s.rate * t + 0.5 * t.ln() - s.prefactor.ln()
    };
    let (r50, r200) = (resid(50.0), resid(200.0));
    assert!(r200.abs() < 0.1, "{r50} {r200}");
    assert!(r200.abs() < r50.abs());
}

#[test]
fn packet_location() {
    let p = half();
    let t = 200.0;
    let m = packet_metrics(t, &p, &cfg()).unwrap();
    for v in [m.x_max, m.x_gravity, m.x_mass] {
        assert!(v >= 0.0 && v <= t * p.front_speed());
        assert!((v / t - 1.0).abs() < 0.1, "{m:?}");
    }
}

#[test]
fn packet_derivative_converges() {
    let p = half();
    let sup = |t: f64| {
        let w = t.powf(p.packet_exponent());
        let kt = |nu: f64| w * k_plus(t + nu * w, t, &p, &cfg()).unwrap().value;
        let h = 1e-3;
        (0..=20)
            .map(|i| {
                let nu = -1.0 + 0.1 * i as f64;
                let d = (kt(nu + h) - kt(nu - h)) / (2.0 * h);
                (d - k_infinity_deriv(nu, 1, &p, &cfg()).unwrap().value).abs()
            })
            .fold(0.0, f64::max)
    };
    // About 1.58, 0.74, 0.38: decaying, but nowhere near small at t = 100.
    let (s25, s100, s400) = (sup(25.0), sup(100.0), sup(400.0));
    assert!(s25 > s100 && s100 > s400, "{s25} {s100} {s400}");
}
