//! Elements of `PW_a` stored by their samples on the node grid `πn/a`, `|n| ≤ N`.
//!
//! A [`PwFunction`] *is* the finite Shannon series
//! `f(z) = Σ v_n sinc_a(z − πn/a)`; norms and inner products are defined by
//! Parseval over the samples, `‖f‖² = (π/a) Σ |v_n|²`. Equivalently `f` has the
//! coefficients `√(π/a)·v_n` in the orthonormal basis `e_n = √(π/a)·k_{πn/a}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{PwError, Result};
use crate::kernel::{csin_pi, kernel_eval, KernelPoint, SERIES_SWITCH};
use crate::symbol::{AffineSymbol, Bandwidth};

/// Largest window half-width any operation will allocate.
pub const MAX_HALF_WIDTH: usize = 1 << 24;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Output window for [`PwFunction::compose`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Window {
    /// Same half-width as the input.
    #[default]
    Same,
    /// `ceil(N/|c|)`, enough to hold the spreading of `f∘φ` when `|c| < 1`.
    Grow,
    HalfWidth(usize),
}

impl Window {
    pub fn resolve(self, input_half_width: usize, c: f64) -> Result<usize> {
        let n = match self {
            Window::Same => input_half_width,
            Window::Grow => {
                let grown = (input_half_width as f64 / c.abs()).ceil();
                if grown > MAX_HALF_WIDTH as f64 {
                    return Err(PwError::WindowTooLarge(MAX_HALF_WIDTH));
                }
                grown as usize
            }
            Window::HalfWidth(n) => n,
        };
        if n > MAX_HALF_WIDTH {
            return Err(PwError::WindowTooLarge(n));
        }
        Ok(n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PwFunction {
    a: Bandwidth,
    samples: Vec<Complex64>,
}

impl PwFunction {
    pub fn new(a: Bandwidth, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len().is_multiple_of(2) {
            return Err(PwError::InvalidLength(samples.len()));
        }
        Ok(Self { a, samples })
    }

    pub fn zeros(a: Bandwidth, half_width: usize) -> Self {
        Self {
            a,
            samples: vec![ZERO; 2 * half_width + 1],
        }
    }

    /// The node function: sample 1 at node `n`, zero elsewhere. This is `sinc_a(z − πn/a)`,
    /// which for `a = π` is the kernel `k_n` itself.
    pub fn node(a: Bandwidth, half_width: usize, n: i64) -> Self {
        let mut f = Self::zeros(a, half_width);
        f.set(n, Complex64::new(1.0, 0.0));
        f
    }

    /// Samples `g` at the nodes of the window.
    pub fn from_fn(a: Bandwidth, half_width: usize, mut g: impl FnMut(f64) -> Complex64) -> Self {
        let n = half_width as i64;
        let samples = (-n..=n).map(|k| g(a.node(k))).collect();
        Self { a, samples }
    }

    /// The reproducing kernel `k_w`, truncated to the window.
    pub fn kernel(a: Bandwidth, half_width: usize, w: Complex64) -> Self {
        Self::from_fn(a, half_width, |x| kernel_eval(a, w, Complex64::new(x, 0.0)))
    }

    #[inline]
    pub fn bandwidth(&self) -> Bandwidth {
        self.a
    }

    #[inline]
    pub fn half_width(&self) -> usize {
        (self.samples.len() - 1) / 2
    }

    #[inline]
    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// `(n, v_n)` over the window.
    pub fn indexed(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let n = self.half_width() as i64;
        (-n..=n).zip(self.samples.iter().copied())
    }

    /// Sample at node `n`, zero outside the window.
    pub fn sample(&self, n: i64) -> Complex64 {
        let h = self.half_width() as i64;
        if n.abs() > h {
            ZERO
        } else {
            self.samples[(n + h) as usize]
        }
    }

    fn set(&mut self, n: i64, v: Complex64) {
        let h = self.half_width() as i64;
        assert!(n.abs() <= h, "node {n} outside window of half-width {h}");
        self.samples[(n + h) as usize] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.samples.iter().all(|v| *v == ZERO)
    }

    /// Evaluates the Shannon series at `ζ` given in node units (`z = πζ/a`).
    ///
    /// Uses `sinc(π(ζ−k)) = (−1)^k sin(πζ)/(π(ζ−k))`, so a single complex sine serves the
    /// whole sum; terms with `|π(ζ−k)| < 1e−4` use the Taylor series instead. At integer `ζ`
    /// the result is exactly the stored sample.
    pub fn eval_node_units(&self, zeta: Complex64) -> Complex64 {
        let h = self.half_width() as i64;
        let s = csin_pi(zeta);
        let mut acc = ZERO;
        for (k, &v) in (-h..=h).zip(&self.samples) {
            if v == ZERO {
                continue;
            }
            let u = (zeta - k as f64) * PI;
            let term = if u.norm_sqr() < SERIES_SWITCH * SERIES_SWITCH {
                let u2 = u * u;
                Complex64::new(1.0, 0.0) - u2 / 6.0 + u2 * u2 / 120.0
            } else if k % 2 == 0 {
                s / u
            } else {
                -s / u
            };
            acc += v * term;
        }
        acc
    }

    /// `f(z)`. A node coordinate within a few ulps of an integer is snapped to it, so
    /// `f(πn/a)` returns the stored sample.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut zeta = self.a.to_node_units(z);
        let k = zeta.re.round();
        if (zeta.re - k).abs() <= 4.0 * f64::EPSILON * k.abs() {
            zeta.re = k;
        }
        self.eval_node_units(zeta)
    }

    pub fn norm_sq(&self) -> f64 {
        self.a.spacing() * self.samples.iter().map(|v| v.norm_sqr()).sum::<f64>()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    fn check_bandwidth(&self, other: &PwFunction) -> Result<()> {
        if self.a != other.a {
            return Err(PwError::BandwidthMismatch {
                left: self.a.value(),
                right: other.a.value(),
            });
        }
        Ok(())
    }

    /// `⟨f, g⟩ = (π/a) Σ v_n(f)·conj(v_n(g))`, zero-padding the shorter window.
    pub fn inner(&self, other: &PwFunction) -> Result<Complex64> {
        self.check_bandwidth(other)?;
        let h = self.half_width().min(other.half_width()) as i64;
        let sum: Complex64 = (-h..=h).map(|n| self.sample(n) * other.sample(n).conj()).sum();
        Ok(sum * self.a.spacing())
    }

    /// `⟨f, k_w⟩`, with `k_w` expanded on the window's nodes.
    pub fn reproduce(&self, w: Complex64) -> Complex64 {
        let kw = PwFunction::kernel(self.a, self.half_width(), w);
        self.inner(&kw).expect("same bandwidth by construction")
    }

    /// `C_φ f = f∘φ`, sampled onto the requested window.
    pub fn compose(&self, phi: &AffineSymbol, window: Window) -> Result<PwFunction> {
        let h = window.resolve(self.half_width(), phi.c())? as i64;
        let shift = self.a.to_node_units(phi.d());
        let samples = (-h..=h)
            .map(|n| self.eval_node_units(shift + phi.c() * n as f64))
            .collect();
        Ok(PwFunction { a: self.a, samples })
    }

    /// `‖f∘φ‖²` without materialising `f∘φ` on a spread-out window.
    ///
    /// Uses `∫|f(cx+d)|² dx = |c|⁻¹ ∫|f(s+d)|² ds` and sums the translate `f(·+d)` over a
    /// window of the input's half-width centred on `−Re d`, where its mass sits.
    pub fn composed_norm_sq(&self, phi: &AffineSymbol) -> f64 {
        self.translated_norm_sq(phi.d()) / phi.c().abs()
    }

    /// `‖f(·+d)‖²` from samples on the recentred window.
    pub fn translated_norm_sq(&self, d: Complex64) -> f64 {
        let shift = self.a.to_node_units(d);
        let centre = (-shift.re).round() as i64;
        let h = self.half_width() as i64;
        let sum: f64 = (centre - h..=centre + h)
            .map(|n| self.eval_node_units(shift + n as f64).norm_sqr())
            .sum();
        sum * self.a.spacing()
    }

    pub fn scale(&self, k: Complex64) -> PwFunction {
        PwFunction {
            a: self.a,
            samples: self.samples.iter().map(|v| v * k).collect(),
        }
    }

    /// `f / ‖f‖`; rejects the zero function.
    pub fn normalized(&self) -> Result<PwFunction> {
        let n = self.norm();
        if n == 0.0 {
            return Err(PwError::ZeroFunction);
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    /// `self + k·other` on the larger of the two windows.
    pub fn axpy(&self, k: Complex64, other: &PwFunction) -> Result<PwFunction> {
        self.check_bandwidth(other)?;
        let h = self.half_width().max(other.half_width()) as i64;
        let samples = (-h..=h).map(|n| self.sample(n) + other.sample(n) * k).collect();
        Ok(PwFunction { a: self.a, samples })
    }

    pub fn sub(&self, other: &PwFunction) -> Result<PwFunction> {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

    /// Re-windows to half-width `n`, truncating or zero-padding.
    pub fn with_half_width(&self, n: usize) -> PwFunction {
        let h = n as i64;
        PwFunction {
            a: self.a,
            samples: (-h..=h).map(|k| self.sample(k)).collect(),
        }
    }
}

/// `C_φ* k_w = k_{φ(w)}`.
pub fn adjoint_on_kernel(phi: &AffineSymbol, k: KernelPoint) -> KernelPoint {
    KernelPoint::new(k.a, phi.apply(k.w))
}
