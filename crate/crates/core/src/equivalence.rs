//! The Fourier-side picture: `PW_a ≅ L²[−a, a]`.
//!
//! The unitary `U` sends the orthonormal node basis `e_n` to the exponentials
//! `E_n(t) = e^{−iπnt/a}/√(2a)`, i.e. `f(x) = (2π)^{−1/2} ∫ (Uf)(t) e^{ixt} dt`. Under `U`
//!
//! ```text
//! C_φ   ↦ (Ĉ_φ F)(t)  = |c|⁻¹ χ_(−|c|a, |c|a)(t) e^{idt/c} F(t/c)
//! C_φ*  ↦ (Ĉ_φ* F)(t) = conj(e^{idt}) F(ct)
//! ```
//!
//! and a translation by `d` becomes multiplication by `e^{idt}`.
//!
//! Functions on `[−a, a]` are stored on the midpoint grid `t_j = −a + (j+½)·2a/M`, which
//! never hits the endpoints of the open support interval. Both transforms are exact
//! (up to rounding) for windows with `2N+1 ≤ M`: the midpoint rule integrates
//! `e^{iπkt/a}` exactly for `|k| < M`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::function::PwFunction;
use crate::symbol::{AffineSymbol, Bandwidth};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Coefficients below this fraction of the largest are dropped before off-grid evaluation.
const TRIM: f64 = 1e-15;

/// A function on `[−a, a]` sampled on the midpoint grid.
#[derive(Debug, Clone, PartialEq)]
pub struct L2Function {
    a: Bandwidth,
    values: Vec<Complex64>,
}

impl L2Function {
    pub fn new(a: Bandwidth, values: Vec<Complex64>) -> Self {
        Self { a, values }
    }

    pub fn zeros(a: Bandwidth, m: usize) -> Self {
        Self::new(a, vec![ZERO; m])
    }

    /// Samples `g` on the grid.
    pub fn from_fn(a: Bandwidth, m: usize, g: impl Fn(f64) -> Complex64) -> Self {
        let values = (0..m).map(|j| g(grid_point(a, m, j))).collect();
        Self { a, values }
    }

    pub fn bandwidth(&self) -> Bandwidth {
        self.a
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn cell_width(&self) -> f64 {
        2.0 * self.a.value() / self.values.len() as f64
    }

    pub fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        let (a, m) = (self.a, self.values.len());
        (0..m).map(move |j| grid_point(a, m, j))
    }

    pub fn norm_sq(&self) -> f64 {
        self.cell_width() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Midpoint-rule `∫ F conj(G)`. Grids must agree.
    pub fn inner(&self, other: &L2Function) -> Complex64 {
        assert_eq!(self.len(), other.len(), "grid sizes differ");
        let s: Complex64 = self.values.iter().zip(&other.values).map(|(f, g)| f * g.conj()).sum();
        s * self.cell_width()
    }

    pub fn sub(&self, other: &L2Function) -> L2Function {
        assert_eq!(self.len(), other.len(), "grid sizes differ");
        L2Function {
            a: self.a,
            values: self.values.iter().zip(&other.values).map(|(f, g)| f - g).collect(),
        }
    }

    /// Expansion `F(τ) = Σ b_n E_n(τ)` over `|n| ≤ (M−1)/2`, used for off-grid values.
    pub fn series(&self) -> ExponentialSeries {
        let n = (self.values.len().saturating_sub(1)) / 2;
        ExponentialSeries::from_pw(&from_l2(self, n)).trimmed()
    }
}

#[inline]
fn grid_point(a: Bandwidth, m: usize, j: usize) -> f64 {
    let av = a.value();
    -av + (j as f64 + 0.5) * (2.0 * av / m as f64)
}

/// `Σ_{|n|≤N} b_n E_n(τ)` with `E_n(τ) = e^{−iπnτ/a}/√(2a)`.
#[derive(Debug, Clone)]
pub struct ExponentialSeries {
    a: Bandwidth,
    coeffs: Vec<Complex64>,
}

impl ExponentialSeries {
    /// Coefficients of `Uf`: `b_n = √(π/a)·v_n`.
    pub fn from_pw(f: &PwFunction) -> Self {
        let k = f.bandwidth().spacing().sqrt();
        Self {
            a: f.bandwidth(),
            coeffs: f.samples().iter().map(|v| v * k).collect(),
        }
    }

    fn trimmed(mut self) -> Self {
        let max = self.coeffs.iter().map(|b| b.norm()).fold(0.0, f64::max);
        let h = self.half_width();
        let keep = (0..=h)
            .rev()
            .find(|&n| self.coeffs[h - n].norm() > TRIM * max || self.coeffs[h + n].norm() > TRIM * max)
            .unwrap_or(0);
        self.coeffs = self.coeffs[h - keep..=h + keep].to_vec();
        self
    }

    pub fn half_width(&self) -> usize {
        (self.coeffs.len() - 1) / 2
    }

    pub fn eval(&self, tau: f64) -> Complex64 {
        let av = self.a.value();
        let h = self.half_width();
        let r = Complex64::from_polar(1.0, -PI * tau / av);
        // Horner on r^{k}, k = 0..2N, then shift by r^{−N}.
        let mut acc = ZERO;
        for b in self.coeffs.iter().rev() {
            acc = acc * r + b;
        }
        acc * Complex64::from_polar(1.0, PI * h as f64 * tau / av) / (2.0 * av).sqrt()
    }
}

fn dft(buf: &mut [Complex64], inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(buf.len())
    } else {
        planner.plan_fft_forward(buf.len())
    };
    fft.process(buf);
}

/// `U f` on an `M`-point grid.
pub fn to_l2(f: &PwFunction, m: usize) -> L2Function {
    let a = f.bandwidth();
    let mut buf = vec![ZERO; m];
    if m == 0 {
        return L2Function::new(a, buf);
    }
    let scale = (a.spacing() / (2.0 * a.value())).sqrt();
    for (n, v) in f.indexed() {
        // E_n(t_j) = (−1)^n e^{−iπn/M} e^{−2πinj/M} / √(2a)
        let phase = Complex64::from_polar(1.0, -PI * n as f64 / m as f64);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        buf[n.rem_euclid(m as i64) as usize] += v * phase * (sign * scale);
    }
    dft(&mut buf, false);
    L2Function::new(a, buf)
}

/// `U⁻¹ F` projected onto the window `|n| ≤ N`.
pub fn from_l2(big_f: &L2Function, half_width: usize) -> PwFunction {
    let a = big_f.bandwidth();
    let m = big_f.len();
    if m == 0 {
        return PwFunction::zeros(a, half_width);
    }
    let mut buf = big_f.values().to_vec();
    dft(&mut buf, true);
    let scale = big_f.cell_width() / (2.0 * a.value()).sqrt() / a.spacing().sqrt();
    let h = half_width as i64;
    let samples = (-h..=h)
        .map(|n| {
            let phase = Complex64::from_polar(1.0, PI * n as f64 / m as f64);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            buf[n.rem_euclid(m as i64) as usize] * phase * (sign * scale)
        })
        .collect();
    PwFunction::new(a, samples).expect("odd length by construction")
}

/// The data of `Ĉ_φ`: weight `|c|⁻¹ χ_(−|c|a,|c|a)(t) e^{idt/c}` and inner map `t ↦ t/c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedCompositionData {
    pub phi: AffineSymbol,
    pub a: Bandwidth,
}

impl WeightedCompositionData {
    pub fn new(phi: AffineSymbol, a: Bandwidth) -> Self {
        Self { phi, a }
    }

    /// Open support interval `(−|c|a, |c|a)`.
    pub fn support(&self) -> (f64, f64) {
        let r = self.phi.c().abs() * self.a.value();
        (-r, r)
    }

    pub fn weight(&self, t: f64) -> Complex64 {
        let (lo, hi) = self.support();
        if t <= lo || t >= hi {
            return ZERO;
        }
        let c = self.phi.c();
        (Complex64::i() * self.phi.d() * (t / c)).exp() / c.abs()
    }

    pub fn inner_map(&self, t: f64) -> f64 {
        t / self.phi.c()
    }
}

/// `Ĉ_φ F`, with `F(t/c)` reconstructed from the exponential expansion of `F`.
pub fn weighted_compose_apply(phi: &AffineSymbol, big_f: &L2Function) -> L2Function {
    let data = WeightedCompositionData::new(*phi, big_f.bandwidth());
    let series = big_f.series();
    let values = big_f
        .grid()
        .map(|t| {
            let w = data.weight(t);
            if w == ZERO {
                ZERO
            } else {
                w * series.eval(data.inner_map(t))
            }
        })
        .collect();
    L2Function::new(big_f.bandwidth(), values)
}

/// `Ĉ_φ* F = conj(e^{idt})·F(ct)`.
pub fn weighted_compose_adjoint(phi: &AffineSymbol, big_f: &L2Function) -> L2Function {
    let series = big_f.series();
    let d = phi.d();
    let values = big_f
        .grid()
        .map(|t| (Complex64::i() * d * t).exp().conj() * series.eval(phi.c() * t))
        .collect();
    L2Function::new(big_f.bandwidth(), values)
}

/// `‖M_{e^{idt}}‖ = sup_{|t|≤a} |e^{idt}| = e^{|Im d|·a}`, the norm of translation by `d`.
pub fn multiplication_norm(d: Complex64, a: Bandwidth) -> f64 {
    (d.im.abs() * a.value()).exp()
}

/// Discrepancy `‖U C_φ f − Ĉ_φ U f‖` of the commuting square.
pub fn commuting_square_gap(phi: &AffineSymbol, f: &PwFunction, m: usize, window: crate::function::Window) -> Result<f64> {
    let lhs = to_l2(&f.compose(phi, window)?, m);
    let rhs = weighted_compose_apply(phi, &to_l2(f, m));
    Ok(lhs.sub(&rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::Window;
    use crate::random::WellResolved;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_maps_to_zero() {
        let a = Bandwidth::pi();
        let big_f = to_l2(&PwFunction::zeros(a, 4), 64);
        assert!(big_f.values().iter().all(|v| *v == ZERO));
        assert!(from_l2(&big_f, 4).is_zero());
    }

    #[test]
    fn node_zero_is_constant() {
        let a = Bandwidth::pi();
        let big_f = to_l2(&PwFunction::node(a, 8, 0), 256);
        let want = 1.0 / (2.0 * PI).sqrt();
        for v in big_f.values() {
            assert!((v - cx(want, 0.0)).norm() < 1e-15);
        }
        let back = from_l2(&L2Function::from_fn(a, 256, |_| cx(want, 0.0)), 8);
        let node = PwFunction::node(a, 8, 0);
        assert!(back.sub(&node).unwrap().norm() < 1e-8);
    }

    #[test]
    fn node_one_is_exponential_with_minus_sign() {
        let a = Bandwidth::new(1.3).unwrap();
        let big_f = to_l2(&PwFunction::node(a, 4, 1), 64);
        let k = (a.spacing() / (2.0 * a.value())).sqrt();
        for (t, v) in big_f.grid().zip(big_f.values()) {
            let want = Complex64::from_polar(k, -PI * t / a.value());
            assert!((v - want).norm() < 1e-14);
        }
    }

    #[test]
    fn isometry_and_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let a = Bandwidth::new(2.0).unwrap();
        for _ in 0..5 {
            let f = WellResolved::default().sample(a, 64, &mut rng);
            let big_f = to_l2(&f, 4096);
            assert!((big_f.norm() - f.norm()).abs() < 1e-8 * f.norm().max(1.0));
            let back = from_l2(&big_f, 64);
            assert!(back.sub(&f).unwrap().norm() < 1e-8 * f.norm().max(1.0));
            let again = to_l2(&back, 4096);
            assert!(again.sub(&big_f).norm() < 1e-7 * f.norm().max(1.0));
        }
    }

    #[test]
    fn identity_symbol_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = Bandwidth::pi();
        let big_f = to_l2(&WellResolved::default().sample(a, 32, &mut rng), 512);
        let id = AffineSymbol::identity();
        assert!(weighted_compose_apply(&id, &big_f).sub(&big_f).norm() < 1e-12);
        assert!(weighted_compose_adjoint(&id, &big_f).sub(&big_f).norm() < 1e-12);
    }

    #[test]
    fn unit_translation_is_modulation() {
        let a = Bandwidth::new(1.0).unwrap();
        let one = L2Function::from_fn(a, 1024, |_| cx(1.0, 0.0));
        let phi = AffineSymbol::translation(cx(1.0, 0.0)).unwrap();
        let g = weighted_compose_apply(&phi, &one);
        let err = g
            .grid()
            .zip(g.values())
            .map(|(t, v)| (v - Complex64::from_polar(1.0, t)).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-12, "sup error {err}");
    }

    #[test]
    fn real_translation_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = Bandwidth::new(1.5).unwrap();
        let big_f = to_l2(&WellResolved::default().sample(a, 32, &mut rng), 512);
        let phi = AffineSymbol::translation(cx(0.7, 0.0)).unwrap();
        let back = weighted_compose_apply(&phi, &weighted_compose_adjoint(&phi, &big_f));
        assert!(back.sub(&big_f).norm() < 1e-10 * big_f.norm());
    }

    #[test]
    fn support_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let a = Bandwidth::pi();
        let big_f = to_l2(&WellResolved::default().sample(a, 32, &mut rng), 1000);
        let phi = AffineSymbol::new(-0.3, cx(1.0, 1.0)).unwrap();
        let g = weighted_compose_apply(&phi, &big_f);
        for (t, v) in g.grid().zip(g.values()) {
            if t.abs() >= 0.3 * PI {
                assert_eq!(*v, ZERO);
            }
        }
    }

    #[test]
    fn half_dilation_commutes() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let a = Bandwidth::pi();
        let phi = AffineSymbol::dilation(0.5).unwrap();
        for _ in 0..3 {
            let f = WellResolved::default().sample_unit(a, 64, &mut rng);
            let big_f = to_l2(&f, 2048);
            let lhs = weighted_compose_apply(&phi, &big_f);
            let rhs = to_l2(&from_l2(&big_f, 64).compose(&phi, Window::Grow).unwrap(), 2048);
            assert!(lhs.sub(&rhs).norm() < 1e-6);
        }
    }

    #[test]
    fn adjoint_pairing() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let a = Bandwidth::new(1.0).unwrap();
        for &(c, d) in &[(0.5, cx(0.0, 1.0)), (-1.0, cx(1.0, 1.0)), (0.25, cx(-0.5, 0.3)), (1.0, cx(0.2, -0.4))] {
            let phi = AffineSymbol::new(c, d).unwrap();
            let big_f = to_l2(&WellResolved::default().sample(a, 48, &mut rng), 2048);
            let big_g = to_l2(&WellResolved::default().sample(a, 48, &mut rng), 2048);
            let left = weighted_compose_apply(&phi, &big_f).inner(&big_g);
            let right = big_f.inner(&weighted_compose_adjoint(&phi, &big_g));
            assert!((left - right).norm() < 1e-6 * (1.0 + left.norm()), "c={c}: {left} vs {right}");
        }
    }

    #[test]
    fn multiplication_norms() {
        assert_eq!(multiplication_norm(cx(3.0, 0.0), Bandwidth::new(2.0).unwrap()), 1.0);
        assert!((multiplication_norm(cx(0.0, 1.0), Bandwidth::new(1.0).unwrap()) - 1f64.exp()).abs() < 1e-15);
        assert!((multiplication_norm(cx(0.0, 2.0), Bandwidth::pi()) - (2.0 * PI).exp()).abs() < 1e-9);
    }
}
