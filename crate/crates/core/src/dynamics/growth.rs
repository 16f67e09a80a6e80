//! Explicit growth constants for expanding orbits.
//!
//! For `0 < |c| < 1`, `C_φⁿ = C_{c^n z}·C_{ψ_n}` with `ψ_n(z) = z + d(1−cⁿ)/(1−c)`, and
//! Cauchy–Schwarz against `k_{w₀}` gives `‖C_φⁿ f‖ ≥ |f(ψ_n(w₀))| / (‖k_{w₀}‖·√|c|ⁿ)`.
//! Once `|f(ψ_n(w₀))| > |f(w₁)|/2` this is `δ/√|c|ⁿ` with `δ = |f(w₁)|/(2‖k_{w₀}‖)`.
//! The bound is linear in `f`: it carries no extra factor `‖f‖`.
//!
//! For `φ(z) = z + d` the orbit is multiplication by `e^{indt}` on the Fourier side, so
//! `‖C_φⁿ f‖² ≥ ℓ² ∫_{A_ℓ} e^{−2n Im(d) t} dt` over the level set `A_ℓ = {|Uf| ≥ ℓ}`.
//! The rate `e^{|Im d|na}` is attained only if `A_ℓ` reaches the band edge; a uniform
//! `δ·e^{|Im d|na}` is not a valid lower bound in general.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::equivalence::to_l2;
use crate::error::{PwError, Result};
use crate::function::PwFunction;
use crate::kernel::kernel_norm_sq;
use crate::symbol::{AffineSymbol, Bandwidth};

/// Below this `|f(w₁)|` the witness point is rejected.
pub const WITNESS_FLOOR: f64 = 1e-12;

/// Witness points tried, in order, when the default `w₀ = 0` fails.
pub const WITNESS_SCAN: [Complex64; 5] = [
    Complex64::new(0.0, 0.0),
    Complex64::new(1.0, 0.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(0.0, -1.0),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecondGrowth {
    pub delta: f64,
    pub w0: Complex64,
    pub w1: Complex64,
    /// From `n0` on, `|f(ψ_n(w₀))| > |f(w₁)|/2`, hence `‖C_φⁿ f‖ ≥ δ/√|c|ⁿ`.
    pub n0: u32,
}

impl SecondGrowth {
    pub fn bound(&self, c: f64, n: u32) -> f64 {
        self.delta / c.abs().powf(n as f64 / 2.0)
    }
}

pub fn growth_constant_second(phi: &AffineSymbol, a: Bandwidth, f: &PwFunction, w0: Complex64) -> Result<SecondGrowth> {
    let c = phi.c();
    if c.is_nan() || c.abs() >= 1.0 {
        return Err(PwError::NotContractive(c));
    }
    super::check_bandwidth(a, f)?;
    if f.is_zero() {
        return Err(PwError::ZeroFunction);
    }
    let alpha = phi.fixed_point()?;
    let w1 = w0 + alpha;
    let fw1 = f.eval(w1).norm();
    if fw1 < WITNESS_FLOOR {
        return Err(PwError::VanishingWitness(w1));
    }
    let delta = fw1 / (2.0 * kernel_norm_sq(a, w0).sqrt());

    // ψ_n(w₀) − w₁ = −α·cⁿ; past `horizon` the two agree to rounding.
    let horizon = if alpha.norm() == 0.0 {
        0
    } else {
        let target = 1e-15 * (1.0 + w1.norm()) / alpha.norm();
        (target.ln() / c.abs().ln()).ceil().max(0.0) as u32
    };
    let mut n0 = 0;
    for n in 0..=horizon {
        let psi = w0 + alpha * (1.0 - c.powi(n as i32));
        if f.eval(psi).norm() <= fw1 / 2.0 {
            n0 = n + 1;
        }
    }
    Ok(SecondGrowth { delta, w0, w1, n0 })
}

/// Tries each point of [`WITNESS_SCAN`] until `f(w₁) ≠ 0`.
pub fn growth_constant_second_scan(phi: &AffineSymbol, a: Bandwidth, f: &PwFunction) -> Result<SecondGrowth> {
    let mut last = None;
    for w0 in WITNESS_SCAN {
        match growth_constant_second(phi, a, f, w0) {
            Err(e @ PwError::VanishingWitness(_)) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("scan is nonempty"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThirdGrowth {
    pub delta: f64,
    pub level: f64,
    /// Grid measure of `A_ℓ`.
    pub measure: f64,
    pub d: Complex64,
    pub a: Bandwidth,
    /// Grid cells `t_j` in `A_ℓ`.
    pub cells: Vec<f64>,
    pub cell_width: f64,
}

impl ThirdGrowth {
    /// `δ·e^{|Im d|na}`.
    pub fn uniform_bound(&self, n: u32) -> f64 {
        self.delta * (self.d.im.abs() * n as f64 * self.a.value()).exp()
    }

    /// `ℓ·(∫_{A_ℓ} e^{−2n Im(d) t} dt)^{1/2}` by the midpoint rule on the grid.
    pub fn level_set_bound(&self, n: u32) -> f64 {
        let y = self.d.im * n as f64;
        let sum: f64 = self.cells.iter().map(|t| (-2.0 * y * t).exp()).sum();
        self.level * (sum * self.cell_width).sqrt()
    }
}

/// Half the grid maximum of `|Uf|`, a level whose set always has positive measure.
pub fn default_level(f: &PwFunction, m: usize) -> f64 {
    to_l2(f, m).values().iter().map(|v| v.norm()).fold(0.0, f64::max) / 2.0
}

pub fn growth_constant_third(d: Complex64, a: Bandwidth, f: &PwFunction, level: f64, m: usize) -> Result<ThirdGrowth> {
    if d.im == 0.0 {
        return Err(PwError::NotImaginaryTranslation);
    }
    super::check_bandwidth(a, f)?;
    if f.is_zero() {
        return Err(PwError::ZeroFunction);
    }
    let big_f = to_l2(f, m);
    let cells: Vec<f64> = big_f
        .grid()
        .zip(big_f.values())
        .filter(|(_, v)| v.norm() >= level)
        .map(|(t, _)| t)
        .collect();
    if cells.is_empty() {
        return Err(PwError::EmptyLevelSet(level));
    }
    let cell_width = big_f.cell_width();
    let measure = cells.len() as f64 * cell_width;
    Ok(ThirdGrowth {
        delta: level * measure.sqrt(),
        level,
        measure,
        d,
        a,
        cells,
        cell_width,
    })
}
