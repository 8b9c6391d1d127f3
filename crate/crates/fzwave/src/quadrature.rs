//! Adaptive Gauss–Kronrod integration of complex-valued integrands on the
//! real line.
//!
//! One engine ([`integrate_panels`]) does all the work: it starts from a
//! caller-supplied partition, optionally splits every piece so that no panel
//! is wider than one period of a given frequency, and then bisects the panel
//! with the largest error estimate until the global tolerance is met.
//! [`integrate_decaying_tail`] adds truncation of `[a, ∞)` driven by a
//! monotone envelope, and [`GradedTransform`] removes `y^{α-1}` endpoint
//! singularities.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerances and limits for adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Relative tolerance on the integral.
    pub rel_tol: f64,
    /// Absolute tolerance on the integral.
    pub abs_tol: f64,
    /// Maximum number of bisections after the initial partition.
    pub max_subdivisions: usize,
    /// Tails are truncated once their envelope bound drops below
    /// `abs_tol / truncation_safety`.
    pub truncation_safety: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_subdivisions: 200_000,
            truncation_safety: 10.0,
        }
    }
}

impl QuadratureConfig {
    /// Config with the given tolerances and default limits.
    pub fn new(rel_tol: f64, abs_tol: f64) -> Result<Self> {
        let cfg = Self {
            rel_tol,
            abs_tol,
            ..Self::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks the field invariants.
    pub fn validate(&self) -> Result<()> {
        let ok = self.rel_tol > 0.0
            && self.abs_tol > 0.0
            && self.rel_tol.is_finite()
            && self.abs_tol.is_finite()
            && self.max_subdivisions >= 1
            && self.truncation_safety >= 1.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "quadrature config needs rel_tol, abs_tol > 0, max_subdivisions >= 1, truncation_safety >= 1 (got {self:?})"
            )))
        }
    }

    /// Same config with both tolerances multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            rel_tol: self.rel_tol * factor,
            abs_tol: self.abs_tol * factor,
            ..*self
        }
    }

    /// Same config with a different absolute tolerance.
    pub fn with_abs_tol(&self, abs_tol: f64) -> Self {
        Self { abs_tol, ..*self }
    }

    /// Target accuracy for an integral of magnitude `magnitude`.
    pub fn target(&self, magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude)
    }
}

/// A computed value with its error estimate and cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult<T = f64> {
    pub value: T,
    pub error_estimate: f64,
    pub nodes_used: usize,
}

impl<T> EvalResult<T> {
    pub fn new(value: T, error_estimate: f64, nodes_used: usize) -> Self {
        Self {
            value,
            error_estimate,
            nodes_used,
        }
    }

    /// Exact value with zero error and cost.
    pub fn exact(value: T) -> Self {
        Self::new(value, 0.0, 0)
    }

    /// Applies `f` to the value, keeping error and node count.
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> EvalResult<U> {
        EvalResult::new(f(self.value), self.error_estimate, self.nodes_used)
    }
}

impl EvalResult<Complex64> {
    /// Real part.
    pub fn re(self) -> EvalResult<f64> {
        self.map(|z| z.re)
    }

    /// Imaginary part.
    pub fn im(self) -> EvalResult<f64> {
        self.map(|z| z.im)
    }

    /// Sum of two results; errors add.
    pub fn plus(self, other: Self) -> Self {
        Self::new(
            self.value + other.value,
            self.error_estimate + other.error_estimate,
            self.nodes_used + other.nodes_used,
        )
    }
}

impl EvalResult<f64> {
    /// Sum of two results; errors add.
    pub fn plus(self, other: Self) -> Self {
        Self::new(
            self.value + other.value,
            self.error_estimate + other.error_estimate,
            self.nodes_used + other.nodes_used,
        )
    }

    /// Multiplies value and error by `c`.
    pub fn scale(self, c: f64) -> Self {
        Self::new(self.value * c, self.error_estimate * c.abs(), self.nodes_used)
    }

    /// Adds a constant to the value.
    pub fn shift(self, c: f64) -> Self {
        Self::new(self.value + c, self.error_estimate, self.nodes_used)
    }
}

// 21-point Kronrod extension of the 10-point Gauss rule (abscissae in
// decreasing order, the last one is the centre).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_783_300,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Relative roundoff floor against `∫|f|`.
const ROUNDOFF_FLOOR: f64 = 100.0 * f64::EPSILON;

/// Nodes evaluated per panel.
pub const NODES_PER_PANEL: usize = 21;

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    /// `∫|f|` over the panel; sets the roundoff floor.
    magnitude: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut resk = fc * WGK[10];
    let mut resg = Complex64::new(0.0, 0.0);
    let mut resabs = fc.norm() * WGK[10];
    let mut vals = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        vals[j] = (f1, f2);
        resk += (f1 + f2) * WGK[j];
        resabs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            resg += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resasc = (fc - mean).norm() * WGK[10];
    for j in 0..10 {
        resasc += ((vals[j].0 - mean).norm() + (vals[j].1 - mean).norm()) * WGK[j];
    }
    let h = half.abs();
    let value = resk * half;
    let resabs = resabs * h;
    let resasc = resasc * h;
    let mut error = ((resk - resg) * half).norm();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    if !value.re.is_finite() || !value.im.is_finite() {
        error = f64::INFINITY;
    }
    Panel { a, b, value, error, magnitude: resabs }
}

/// Number of equal pieces of `[a, b]` no wider than `max_width`.
fn piece_count(a: f64, b: f64, max_width: Option<f64>) -> f64 {
    match max_width {
        Some(w) if w > 0.0 && w.is_finite() => ((b - a) / w).ceil().max(1.0),
        _ => 1.0,
    }
}

fn push_pieces(out: &mut Vec<(f64, f64)>, a: f64, b: f64, n: usize) {
    let h = (b - a) / n as f64;
    for k in 0..n {
        let lo = a + h * k as f64;
        let hi = if k + 1 == n { b } else { a + h * (k + 1) as f64 };
        out.push((lo, hi));
    }
}

/// Adaptive integration over the partition given by `breakpoints`
/// (strictly increasing, at least two entries).
///
/// When `frequency` is given, every initial piece is split so that no panel
/// exceeds one period `2π/frequency`.
pub fn integrate_panels<F>(
    f: F,
    breakpoints: &[f64],
    frequency: Option<f64>,
    cfg: &QuadratureConfig,
) -> Result<EvalResult<Complex64>>
where
    F: Fn(f64) -> Complex64,
{
    cfg.validate()?;
    if breakpoints.len() < 2 {
        return Err(Error::Domain("need at least two breakpoints".into()));
    }
    let width = frequency.map(|w| 2.0 * PI / w.abs());
    let mut counts = Vec::with_capacity(breakpoints.len());
    let mut total_pieces = 0.0;
    for pair in breakpoints.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain(format!(
                "breakpoints must be finite and strictly increasing ({a}, {b})"
            )));
        }
        let n = piece_count(a, b, width);
        total_pieces += n;
        counts.push(n as usize);
    }
    if total_pieces > cfg.max_subdivisions as f64 {
        return Err(Error::Truncation(format!(
            "oscillation over [{}, {}] needs {total_pieces:e} panels",
            breakpoints[0],
            breakpoints[breakpoints.len() - 1]
        )));
    }
    let mut pieces = Vec::with_capacity(total_pieces as usize);
    for (pair, &n) in breakpoints.windows(2).zip(&counts) {
        push_pieces(&mut pieces, pair[0], pair[1], n);
    }

    let mut heap = BinaryHeap::with_capacity(pieces.len() * 2);
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    let mut total_abs = 0.0;
    for (a, b) in pieces {
        let p = kronrod(&f, a, b);
        total += p.value;
        total_err += p.error;
        total_abs += p.magnitude;
        heap.push(p);
    }
    // Below ~100ε∫|f| the estimate is roundoff and bisection cannot help.
    let goal = |value: Complex64, abs: f64| cfg.target(value.norm()).max(ROUNDOFF_FLOOR * abs);
    let mut nodes = heap.len() * NODES_PER_PANEL;
    let mut splits = 0usize;

    while total_err > goal(total, total_abs) {
        if splits >= cfg.max_subdivisions {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // Panel too narrow to bisect in floating point.
            heap.push(worst);
            break;
        }
        let left = kronrod(&f, worst.a, mid);
        let right = kronrod(&f, mid, worst.b);
        nodes += 2 * NODES_PER_PANEL;
        splits += 1;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_abs += left.magnitude + right.magnitude - worst.magnitude;
        heap.push(left);
        heap.push(right);
        // Running sums drift; refresh them now and then.
        if splits % 4096 == 0 {
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.error).sum();
            total_abs = heap.iter().map(|p| p.magnitude).sum();
        }
    }

    // Final sums in partition order for reproducibility.
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: Complex64 = panels.iter().map(|p| p.value).sum();
    let error: f64 = panels.iter().map(|p| p.error).sum();
    let abs: f64 = panels.iter().map(|p| p.magnitude).sum();
    if error <= goal(value, abs) {
        Ok(EvalResult::new(value, error, nodes))
    } else {
        Err(Error::NonConvergence {
            re: value.re,
            im: value.im,
            error_estimate: error,
            nodes_used: nodes,
        })
    }
}

/// Adaptive integration of `f` over `[a, b]`.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<EvalResult<Complex64>>
where
    F: Fn(f64) -> Complex64,
{
    integrate_panels(f, &[a, b], None, cfg)
}

/// Adaptive integration of a real integrand over `[a, b]`.
pub fn integrate_real<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<EvalResult<f64>>
where
    F: Fn(f64) -> f64,
{
    integrate_panels(|y| Complex64::new(f(y), 0.0), &[a, b], None, cfg).map(EvalResult::re)
}

/// Adaptive integration with panels capped at one period of `e^{i·frequency·y}`.
pub fn integrate_oscillatory<F>(
    f: F,
    a: f64,
    b: f64,
    frequency: f64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult<Complex64>>
where
    F: Fn(f64) -> Complex64,
{
    integrate_panels(f, &[a, b], Some(frequency), cfg)
}

/// Geometric partition `a, 2a, 4a, …` ending exactly at `b` (requires `0 < a < b`).
pub fn doubling_breakpoints(a: f64, b: f64) -> Vec<f64> {
    let mut pts = vec![a];
    let mut y = a;
    while 2.0 * y < b {
        y *= 2.0;
        pts.push(y);
    }
    pts.push(b);
    pts
}

/// Upper bound for `∫_b^∞ envelope` when `envelope` is non-increasing:
/// `Σ_k b·2^k·envelope(b·2^k)`.
pub fn envelope_tail_bound<E: Fn(f64) -> f64>(envelope: &E, b: f64) -> f64 {
    let mut sum = 0.0;
    let mut y = b;
    for k in 0..1100 {
        let term = y * envelope(y).abs();
        if !term.is_finite() {
            return f64::INFINITY;
        }
        sum += term;
        if term == 0.0 || (k >= 3 && term <= 1e-17 * sum) {
            return sum;
        }
        y *= 2.0;
        if !y.is_finite() {
            break;
        }
    }
    f64::INFINITY
}

/// Integral of `f` over `[a, ∞)`, truncated at the first `a·2^k` whose
/// envelope tail bound is below `abs_tol / truncation_safety`.
///
/// The reported error includes that bound.
pub fn integrate_decaying_tail<F, E>(f: F, a: f64, envelope: E, cfg: &QuadratureConfig) -> Result<EvalResult<Complex64>>
where
    F: Fn(f64) -> Complex64,
    E: Fn(f64) -> f64,
{
    integrate_decaying_tail_with(f, a, envelope, None, cfg)
}

/// [`integrate_decaying_tail`] with an optional oscillation frequency for the
/// panel-width cap.
pub fn integrate_decaying_tail_with<F, E>(
    f: F,
    a: f64,
    envelope: E,
    frequency: Option<f64>,
    cfg: &QuadratureConfig,
) -> Result<EvalResult<Complex64>>
where
    F: Fn(f64) -> Complex64,
    E: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("tail start must be positive, got {a}")));
    }
    let budget = cfg.abs_tol / cfg.truncation_safety;
    let end = truncation_point(&envelope, a, budget)?;
    let bound = envelope_tail_bound(&envelope, end);
    let inner = cfg.with_abs_tol(cfg.abs_tol - bound);
    let mut res = integrate_panels(f, &doubling_breakpoints(a, end), frequency, &inner)?;
    res.error_estimate += bound;
    Ok(res)
}

/// Smallest `a·2^k` (k ≥ 1) whose envelope tail bound is below `budget`.
pub fn truncation_point<E: Fn(f64) -> f64>(envelope: &E, a: f64, budget: f64) -> Result<f64> {
    let mut b = 2.0 * a;
    for _ in 0..1024 {
        if envelope_tail_bound(envelope, b) < budget {
            return Ok(b);
        }
        b *= 2.0;
        if !b.is_finite() {
            break;
        }
    }
    Err(Error::Truncation(format!(
        "envelope tail from {a} never dropped below {budget:e}"
    )))
}

/// Change of variables `y = u^{1/α}` that regularises `y^{α-1}` at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradedTransform {
    power: f64,
}

/// Builds the graded transform for exponent `alpha ∈ (0, 1)`.
pub fn graded_origin_transform(alpha: f64) -> Result<GradedTransform> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "graded transform needs 0 < alpha < 1, got {alpha}"
        )));
    }
    Ok(GradedTransform { power: 1.0 / alpha })
}

impl GradedTransform {
    /// Power `1/α` of the map.
    pub fn power(&self) -> f64 {
        self.power
    }

    /// `y(u) = u^{1/α}`.
    pub fn to_y(&self, u: f64) -> f64 {
        u.powf(self.power)
    }

    /// `u(y) = y^α`.
    pub fn to_u(&self, y: f64) -> f64 {
        y.powf(1.0 / self.power)
    }

    /// `dy/du = (1/α) u^{1/α - 1}`.
    pub fn jacobian(&self, u: f64) -> f64 {
        self.power * u.powf(self.power - 1.0)
    }

    /// Integrand in the `u` variable.
    pub fn pull_back<F: Fn(f64) -> Complex64>(&self, f: F) -> impl Fn(f64) -> Complex64 {
        let t = *self;
        move |u| f(t.to_y(u)) * t.jacobian(u)
    }

    /// `∫_0^{y_end} f(y) dy` computed in the `u` variable.
    pub fn integrate<F: Fn(f64) -> Complex64>(
        &self,
        f: F,
        y_end: f64,
        cfg: &QuadratureConfig,
    ) -> Result<EvalResult<Complex64>> {
        integrate_adaptive(self.pull_back(f), 0.0, self.to_u(y_end), cfg)
    }
}
