//! Seeded random inputs that are well resolved by a finite window.
//!
//! A sample is `f(x) = Σ_j α_j e^{iβ_j x} P(x − x_j)` with `P(x) = sinc(bx)^K`, which lies in
//! `PW_{Kb + max|β|}` and decays like `|x|^{−K}`. Its Fourier transform is a smooth spline
//! vanishing near `±a`, so compositions and translates stay well localised too.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use crate::function::PwFunction;
use crate::kernel::sinc;
use crate::symbol::Bandwidth;

pub const DEFAULT_SEED: u64 = 0x5057_2024;

#[derive(Debug, Clone, Copy)]
pub struct WellResolved {
    pub bumps: usize,
    pub order: i32,
    /// Fraction of `a` used by the envelope `P`.
    pub band_fraction: f64,
    /// Modulations `β_j` are drawn from `±modulation_fraction·a`.
    pub modulation_fraction: f64,
    /// Centres `x_j` lie within `±centre_fraction·N` nodes of the origin.
    pub centre_fraction: f64,
}

impl Default for WellResolved {
    fn default() -> Self {
        Self {
            bumps: 3,
            order: 8,
            band_fraction: 0.7,
            modulation_fraction: 0.1,
            centre_fraction: 0.125,
        }
    }
}

impl WellResolved {
    pub fn sample<R: Rng + ?Sized>(&self, a: Bandwidth, half_width: usize, rng: &mut R) -> PwFunction {
        let av = a.value();
        let b = self.band_fraction * av / self.order as f64;
        let reach = self.centre_fraction * half_width as f64 * PI / av;
        let centre = Uniform::new_inclusive(-reach, reach).expect("finite range");
        let modulation = Uniform::new_inclusive(-self.modulation_fraction * av, self.modulation_fraction * av)
            .expect("finite range");
        let bumps: Vec<(Complex64, f64, f64)> = (0..self.bumps)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                (Complex64::new(re, im), modulation.sample(rng), centre.sample(rng))
            })
            .collect();
        let order = self.order;
        PwFunction::from_fn(a, half_width, |x| {
            bumps
                .iter()
                .map(|&(alpha, beta, xj)| {
                    let envelope = sinc(Complex64::new(b * (x - xj), 0.0)).re.powi(order);
                    alpha * Complex64::from_polar(envelope, beta * x)
                })
                .sum()
        })
    }

    /// A sample scaled to unit norm.
    pub fn sample_unit<R: Rng + ?Sized>(&self, a: Bandwidth, half_width: usize, rng: &mut R) -> PwFunction {
        loop {
            if let Ok(f) = self.sample(a, half_width, rng).normalized() {
                return f;
            }
        }
    }
}

/// A random candidate of norm exactly `radius` (for shadowing experiments).
pub fn with_norm(f: &PwFunction, radius: f64) -> PwFunction {
    let n = f.norm();
    if n == 0.0 {
        return f.clone();
    }
    f.scale(Complex64::new(radius / n, 0.0))
}
