//! Numerical evaluation of the fundamental solution of the fractional Zener
//! wave equation
//!
//! ```text
//! (1 + D_t^α) u_tt = (1 + τ D_t^α) u_xx,   0 < α < 1, 0 < τ < 1,
//! ```
//!
//! and of its α = 1 limit (the standard linear solid).
//!
//! Every evaluator works from a contour-integral representation of the
//! Laplace-domain solution `S̃(x, s) = l(s)/(2s) · exp(-|x| s l(s))` with
//! `l(s) = sqrt((1 + τ s^α)/(1 + s^α))`:
//!
//! * [`kernel`]: the symbol `l_α`, its α = 1 variant and the memory kernel;
//! * [`quadrature`]: adaptive Gauss–Kronrod engines;
//! * [`fundsol`]: `S(x,t)` and `K = ∂_t S` via Hankel-face and imaginary-axis
//!   contours, dispatched by region;
//! * [`wavepacket`]: the packet limit profile `k_∞`, its tails and ray
//!   asymptotics;
//! * [`dispersion`]: phase/group velocity, attenuation, forced oscillation;
//! * [`sls`]: the α = 1 jump-plus-continuous decomposition;
//! * [`cauchy`]: convolution solutions for sampled initial data.

pub mod cauchy;
pub mod dispersion;
pub mod error;
pub mod fundsol;
pub mod inversion;
pub mod kernel;
mod par;
pub mod quadrature;
pub mod series;
pub mod sls;
pub mod special;
pub mod wavepacket;

pub use error::{Error, Result};
pub use kernel::{SlitComplex, ZenerParams};
pub use quadrature::{EvalResult, QuadratureConfig};
