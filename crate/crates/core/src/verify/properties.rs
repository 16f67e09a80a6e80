//! Seeded randomized checks of the core invariants of [`PwFunction`].
//!
//! These run inside the library so that the command-line `verify` can execute them; the
//! crate's proptest suite covers the same invariants with shrinking.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::function::{PwFunction, Window};
use crate::kernel::kernel_norm_sq;
use crate::random::WellResolved;
use crate::symbol::{AffineSymbol, Bandwidth};

/// Tolerance of `reproduce` against `eval`, relative to `‖f‖·‖k_w‖`.
pub const REPRODUCE_TOLERANCE: f64 = 1e-10;
pub const PARSEVAL_TOLERANCE: f64 = 1e-6;
pub const SEMIGROUP_STEP_TOLERANCE: f64 = 1e-9;
pub const INVOLUTION_TOLERANCE: f64 = 1e-10;
pub const KERNEL_LIMIT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub cases: usize,
    /// Largest observed error, in the units of `tolerance`.
    pub worst: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl PropertyOutcome {
    fn new(name: &str, cases: usize, worst: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            cases,
            worst,
            tolerance,
            pass: worst <= tolerance,
        }
    }
}

fn normal_cx(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

fn rough(a: Bandwidth, half_width: usize, rng: &mut impl Rng) -> PwFunction {
    let samples = (0..2 * half_width + 1).map(|_| normal_cx(rng)).collect();
    PwFunction::new(a, samples).expect("odd length")
}

fn bandwidth(rng: &mut impl Rng) -> Bandwidth {
    Bandwidth::new(rng.random_range(0.5..4.0)).expect("positive")
}

/// `f(πn/a) = v_n` up to `4ε·Σ|v_k|`; reports the worst error in units of `ε·Σ|v_k|`.
pub fn interpolation(seed: u64, cases: usize) -> PropertyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let a = bandwidth(&mut rng);
        let h = rng.random_range(1..=128usize);
        let f = rough(a, h, &mut rng);
        let scale = f64::EPSILON * f.samples().iter().map(|v| v.norm()).sum::<f64>();
        for (n, v) in f.indexed() {
            let err = (f.eval(Complex64::new(a.node(n), 0.0)) - v).norm();
            worst = worst.max(err / scale);
        }
    }
    PropertyOutcome::new("interpolation", cases, worst, 4.0)
}

/// `∫_{−T}^{T} f·conj(g)` by panel Gauss–Legendre, one panel per node spacing.
pub fn quadrature_inner(f: &PwFunction, g: &PwFunction, t: f64, points: usize) -> Complex64 {
    let rule = GaussLegendre::new(NonZeroUsize::new(points).expect("nonzero"));
    let h = f.bandwidth().spacing();
    let panels = (2.0 * t / h).ceil() as usize;
    let width = 2.0 * t / panels as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = -t + (p as f64 + 0.5) * width;
        for (x, w) in rule.iter() {
            let z = Complex64::new(mid + 0.5 * width * x, 0.0);
            sum += f.eval(z) * g.eval(z).conj() * (0.5 * width * w);
        }
    }
    sum
}

/// `⟨f, g⟩` from samples against quadrature on `[−Nπ/a, Nπ/a]`, for well-resolved `f, g`
/// whose energy beyond `3N/4` nodes is below `1e−8`.
pub fn parseval(seed: u64, cases: usize, half_width: usize) -> PropertyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gen = WellResolved::default();
    let mut worst: f64 = 0.0;
    let mut used = 0;
    for _ in 0..cases {
        let a = bandwidth(&mut rng);
        let f = gen.sample_unit(a, half_width, &mut rng);
        let g = gen.sample_unit(a, half_width, &mut rng);
        let edge = (3 * half_width / 4) as i64;
        let tail = |u: &PwFunction| {
            a.spacing() * u.indexed().filter(|(n, _)| n.abs() > edge).map(|(_, v)| v.norm_sqr()).sum::<f64>()
        };
        if tail(&f) >= 1e-8 || tail(&g) >= 1e-8 {
            continue;
        }
        used += 1;
        let t = a.node(half_width as i64);
        for (u, v) in [(&f, &f), (&f, &g)] {
            let exact = u.inner(v).expect("same bandwidth");
            worst = worst.max((quadrature_inner(u, v, t, 16) - exact).norm());
        }
    }
    PropertyOutcome::new("parseval-vs-quadrature", used, worst, PARSEVAL_TOLERANCE)
}

/// `|⟨f, k_w⟩ − f(w)| / (‖f‖·‖k_w‖)` for `w` in the resolved region `|Re w| ≤ Nπ/(2a)`.
pub fn reproducing(seed: u64, cases: usize) -> PropertyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let a = bandwidth(&mut rng);
        let h = rng.random_range(4..=96usize);
        let f = rough(a, h, &mut rng);
        let reach = a.node(h as i64) / 2.0;
        for _ in 0..8 {
            let w = Complex64::new(rng.random_range(-reach..=reach), rng.random_range(-1.0..=1.0));
            let scale = f.norm() * kernel_norm_sq(a, w).sqrt();
            worst = worst.max((f.reproduce(w) - f.eval(w)).norm() / scale);
        }
    }
    PropertyOutcome::new("reproducing-identity", cases, worst, REPRODUCE_TOLERANCE)
}

fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Worst `max_k |u_k − w_k| / (n·max|u|)` between `C_{φ^{[n]}} f` and the `n`-fold
/// composition (grown windows), compared on the direct window.
pub fn semigroup(seed: u64, cases: usize, half_width: usize, n_max: u32) -> Result<PropertyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gen = WellResolved {
        centre_fraction: 0.05,
        ..WellResolved::default()
    };
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let a = bandwidth(&mut rng);
        let c = [1.0, -1.0, 0.5, -0.5][rng.random_range(0..4usize)];
        let d = Complex64::new(rng.random_range(-0.5..=0.5), rng.random_range(-0.3..=0.3));
        let phi = AffineSymbol::new(c, d)?;
        let f = gen.sample(a, half_width, &mut rng);
        let mut g = f.clone();
        for n in 1..=n_max {
            g = g.compose(&phi, Window::Grow)?;
            let direct = f.compose(&phi.iterate(n), Window::Grow)?;
            let h = direct.half_width().min(g.half_width()) as i64;
            let err = (-h..=h)
                .map(|k| (direct.sample(k) - g.sample(k)).norm())
                .fold(0.0, f64::max);
            worst = worst.max(err / (n as f64 * max_abs(direct.samples())));
        }
    }
    Ok(PropertyOutcome::new("semigroup", cases, worst, SEMIGROUP_STEP_TOLERANCE))
}

/// `C_φ² f = f` for `c = −1`, as `max|Δv| / max|v|`.
pub fn involution(seed: u64, cases: usize, half_width: usize) -> Result<PropertyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gen = WellResolved {
        centre_fraction: 0.05,
        ..WellResolved::default()
    };
    let mut worst: f64 = 0.0;
    for k in 0..cases {
        let a = bandwidth(&mut rng);
        let d = if k % 2 == 0 {
            Complex64::new(rng.random_range(-1.0..=1.0), 0.0)
        } else {
            Complex64::new(rng.random_range(-0.5..=0.5), rng.random_range(-0.5..=0.5))
        };
        let phi = AffineSymbol::new(-1.0, d)?;
        let f = gen.sample(a, half_width, &mut rng);
        let back = f.compose(&phi, Window::Same)?.compose(&phi, Window::Same)?;
        let err = max_abs(&back.sub(&f)?.into_samples());
        worst = worst.max(err / max_abs(f.samples()));
    }
    Ok(PropertyOutcome::new("involution", cases, worst, INVOLUTION_TOLERANCE))
}

/// `‖k_{x+iy}‖² → a/π` as `y → 0`, at `y = ±1e−4, ±1e−6`; also positivity.
pub fn kernel_continuity(seed: u64, cases: usize) -> PropertyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let a = bandwidth(&mut rng);
        let x = rng.random_range(-10.0..=10.0);
        let limit = a.value() / std::f64::consts::PI;
        for y in [1e-4, -1e-4, 1e-6, -1e-6] {
            let v = kernel_norm_sq(a, Complex64::new(x, y));
            let rel = if v > 0.0 { (v - limit).abs() / limit } else { f64::INFINITY };
            worst = worst.max(rel);
        }
        let w = Complex64::new(x, rng.random_range(-5.0..=5.0));
        let v = kernel_norm_sq(a, w);
        if v.is_nan() || v <= 0.0 {
            worst = f64::INFINITY;
        }
    }
    PropertyOutcome::new("kernel-norm-continuity", cases, worst, KERNEL_LIMIT_TOLERANCE)
}
