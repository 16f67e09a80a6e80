//! Orbits of `C_φ` and the linear-dynamics certificates built on them.
//!
//! Orbit terms always come from the closed-form iterate `φ^{[n]}`, and their norms
//! from [`gram`], which integrates the exact transform of the finite series.

pub mod classify;
pub mod gram;
pub mod growth;
pub mod shadow;

use serde::{Deserialize, Serialize};

use crate::error::{PwError, Result};
use crate::function::PwFunction;
use crate::spectral::OVERFLOW_LIMIT;
use crate::symbol::{AffineSymbol, Bandwidth};

pub use classify::{classify, expansivity_certificate, ExpansivityCertificate, Flag, PropertyReport};
pub use gram::{Profile, Quadrature};
pub use growth::{growth_constant_second, growth_constant_second_scan, growth_constant_third, SecondGrowth, ThirdGrowth};
pub use shadow::{build_pseudotrajectory, shadowing_divergence, OrbitCombination, OrbitContext, Pseudotrajectory, ShadowingTrace};

/// Thresholds of the finite-horizon irregularity proxy.
pub const IRREGULAR_LOW: f64 = 0.01;
pub const IRREGULAR_HIGH: f64 = 100.0;
pub const LI_YORKE_HORIZON: u32 = 40;

/// Relative slack allowed on closed-form orbit bounds.
pub const BOUND_TOLERANCE: f64 = 1e-6;

/// Rejects orbits whose norms could leave the floating-point range.
///
/// `log ‖C_φⁿ‖ ≤ a|Im d_n| + (n/2)·log(1/|c|)`; the largest value over `n ≤ n_max`
/// must stay below [`OVERFLOW_LIMIT`].
pub fn orbit_guard(phi: &AffineSymbol, a: Bandwidth, n_max: u32) -> Result<()> {
    let shrink = -phi.c().abs().ln() / 2.0;
    for n in 0..=n_max {
        let exponent = a.value() * phi.iterate(n).d().im.abs() + shrink * n as f64;
        if exponent.is_nan() || exponent > OVERFLOW_LIMIT {
            return Err(PwError::OverflowGuard {
                exponent,
                limit: OVERFLOW_LIMIT,
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitTrace {
    pub phi: AffineSymbol,
    pub a: Bandwidth,
    pub label: String,
    /// `‖C_φⁿ f‖` for `n = 0..=n_max`.
    pub norms: Vec<f64>,
    pub method: String,
}

impl OrbitTrace {
    pub fn sup(&self) -> f64 {
        self.norms.iter().copied().fold(0.0, f64::max)
    }

    pub fn inf(&self) -> f64 {
        self.norms.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Finite-horizon proxy for an irregular vector: the orbit dips below
    /// `low·‖f‖` and also exceeds `high·‖f‖`.
    pub fn looks_irregular(&self, low: f64, high: f64) -> bool {
        let f = self.norms[0];
        self.inf() < low * f && self.sup() > high * f
    }
}

/// `‖C_φⁿ f‖` for `n = 0..=n_max`.
pub fn orbit_norms(phi: &AffineSymbol, a: Bandwidth, f: &PwFunction, n_max: u32) -> Result<OrbitTrace> {
    check_bandwidth(a, f)?;
    orbit_guard(phi, a, n_max)?;
    let quad = Quadrature::for_half_width(a, f.half_width(), 0.0);
    let profile = Profile::new(f);
    let norms = (0..=n_max)
        .map(|n| {
            let v = gram::composed_norm_sq(&quad, &profile, &phi.iterate(n));
            v.max(0.0).sqrt()
        })
        .collect();
    Ok(OrbitTrace {
        phi: *phi,
        a,
        label: "input".into(),
        norms,
        method: "closed-iterate".into(),
    })
}

pub(crate) fn check_bandwidth(a: Bandwidth, f: &PwFunction) -> Result<()> {
    if f.bandwidth() != a {
        return Err(PwError::BandwidthMismatch {
            left: a.value(),
            right: f.bandwidth().value(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CesaroTrace {
    pub phi: AffineSymbol,
    pub a: Bandwidth,
    pub norm: f64,
    /// `A_n = (1/n)·Σ_{j=1..n} ‖C_φʲ f‖` for `n = 1..=n_max`.
    pub averages: Vec<f64>,
    /// `e^{|Im d|·a}·‖f‖` when `C_φ` is absolutely Cesàro bounded.
    pub bound: Option<f64>,
    /// Lower envelope `δ/(n·√|c|ⁿ)` for `n ≥ n0` when `0 < |c| < 1`, with `(n0, δ)`.
    pub envelope: Option<(u32, f64)>,
}

impl CesaroTrace {
    pub fn average(&self, n: u32) -> f64 {
        self.averages[n as usize - 1]
    }

    pub fn envelope_at(&self, n: u32) -> Option<f64> {
        let (n0, delta) = self.envelope?;
        (n >= n0).then(|| delta / (n as f64 * self.phi.c().abs().powf(n as f64 / 2.0)))
    }
}

pub fn cesaro_averages(phi: &AffineSymbol, a: Bandwidth, f: &PwFunction, n_max: u32) -> Result<CesaroTrace> {
    if n_max < 1 {
        return Err(PwError::WindowTooSmall { min: 1, got: 0 });
    }
    let trace = orbit_norms(phi, a, f, n_max)?;
    let mut sum = 0.0;
    let averages = (1..=n_max as usize)
        .map(|n| {
            sum += trace.norms[n];
            sum / n as f64
        })
        .collect();
    let norm = trace.norms[0];
    let report = classify(phi, a);
    let bound = report
        .cesaro_bounded
        .value
        .then(|| (phi.d().im.abs() * a.value()).exp() * norm);
    let envelope = if phi.c().abs() < 1.0 && !f.is_zero() {
        growth_constant_second_scan(phi, a, f).ok().map(|g| (g.n0, g.delta))
    } else {
        None
    };
    Ok(CesaroTrace {
        phi: *phi,
        a,
        norm,
        averages,
        bound,
        envelope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::Window;
    use crate::random::WellResolved;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sym(c: f64, d: Complex64) -> AffineSymbol {
        AffineSymbol::new(c, d).unwrap()
    }

    #[test]
    fn identity_orbit_is_constant() {
        let a = Bandwidth::new(1.0).unwrap();
        let f = WellResolved::default().sample(a, 32, &mut ChaCha8Rng::seed_from_u64(1));
        let t = orbit_norms(&AffineSymbol::identity(), a, &f, 10).unwrap();
        for v in &t.norms {
            assert!((v - f.norm()).abs() < 1e-12 * f.norm());
        }
        assert_eq!(t.method, "closed-iterate");
    }

    #[test]
    fn reflection_orbits_have_period_two() {
        let a = Bandwidth::new(1.0).unwrap();
        let f = PwFunction::node(a, 16, 3);
        let t = orbit_norms(&sym(-1.0, cx(1.0, 1.0)), a, &f, 6).unwrap();
        for n in 2..=6 {
            assert!((t.norms[n] - t.norms[n - 2]).abs() < 1e-10 * t.norms[n]);
        }
        assert!((t.norms[0] - f.norm()).abs() < 1e-12);
        assert!(t.norms[1] > t.norms[0]);
    }

    #[test]
    fn dilation_orbit_matches_sampled_iterates() {
        // cross-check against repeated sampled composition for n ≤ 4
        let a = Bandwidth::new(1.0).unwrap();
        let f = WellResolved::default().sample(a, 24, &mut ChaCha8Rng::seed_from_u64(2));
        let phi = sym(0.5, cx(0.3, 0.0));
        let t = orbit_norms(&phi, a, &f, 4).unwrap();
        let mut g = f.clone();
        for n in 1..=4 {
            g = g.compose(&phi, Window::Grow).unwrap();
            assert!((g.norm() - t.norms[n]).abs() < 1e-8 * t.norms[n], "n={n}");
        }
    }

    #[test]
    fn translation_growth_rate_approaches_e() {
        // Uf nonzero up to the band edge: ratios tend to e^{a|Im d|}, like e·√((n−1)/n)
        let a = Bandwidth::new(1.0).unwrap();
        let f = PwFunction::node(a, 4, 0);
        let t = orbit_norms(&AffineSymbol::translation(cx(0.0, 1.0)).unwrap(), a, &f, 60).unwrap();
        let e = 1f64.exp();
        let ratio = |n: usize| t.norms[n] / t.norms[n - 1];
        assert!((ratio(60) - e).abs() < 0.05 * e);
        assert!(ratio(8) < ratio(60));
        // the node function is π·k_0 at a = 1, so ‖f(·+in)‖² = π·sinh(2n)/(2n)
        for n in [1usize, 5, 20] {
            let want = (std::f64::consts::PI * (2.0 * n as f64).sinh() / (2.0 * n as f64)).sqrt();
            assert!((t.norms[n] - want).abs() < 1e-12 * want);
        }
    }

    #[test]
    fn guard_rejects_runaway_orbits() {
        let a = Bandwidth::new(1.0).unwrap();
        let f = PwFunction::node(a, 4, 0);
        let r = orbit_norms(&AffineSymbol::translation(cx(0.0, 10.0)).unwrap(), a, &f, 40);
        assert!(matches!(r, Err(PwError::OverflowGuard { .. })));
        assert!(orbit_norms(&AffineSymbol::translation(cx(0.0, 10.0)).unwrap(), a, &f, 30).is_ok());
    }

    #[test]
    fn cesaro_unitary_and_reflection() {
        let a = Bandwidth::new(1.0).unwrap();
        let f = WellResolved::default().sample(a, 32, &mut ChaCha8Rng::seed_from_u64(3));
        let t = cesaro_averages(&sym(1.0, cx(2.0, 0.0)), a, &f, 50).unwrap();
        assert!(t.averages.iter().all(|v| (v - f.norm()).abs() < 1e-12 * f.norm()));
        let r = cesaro_averages(&sym(-1.0, cx(0.0, 1.0)), a, &f, 50).unwrap();
        let bound = r.bound.unwrap();
        assert!((bound - 1f64.exp() * f.norm()).abs() < 1e-12);
        assert!(r.averages.iter().all(|&v| v <= bound));
    }

    #[test]
    fn cesaro_witness_grows() {
        let a = Bandwidth::pi();
        let k1 = PwFunction::node(a, 128, 1);
        let t = cesaro_averages(&sym(0.5, cx(0.0, 0.0)), a, &k1, 40).unwrap();
        assert!(t.bound.is_none());
        assert!(t.average(40) > 100.0 * t.norm);
        let env = t.envelope_at(40).unwrap();
        assert!(t.average(40) >= env);
    }
}
