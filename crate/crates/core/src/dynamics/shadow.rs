//! A δ-pseudotrajectory of `C_φ` that no true orbit shadows.
//!
//! With `κ = δ/‖C_φ f‖` and `f_n = κ·Σ_{j=1..n} C_φʲ f`, every step has defect
//! `C_φ f_n − f_{n+1} = −κ·C_φ f` of norm exactly `δ`, while at the fixed point `α`
//! `f_n(α) = nκ·f(α)`. Cauchy–Schwarz against `k_α` then forces
//! `‖C_φⁿ g − f_n‖ ≥ (nκ|f(α)| − |g(α)|)/‖k_α‖` for every `g`.
//!
//! Terms are linear combinations of `C_φʲ u` over a few base functions `u`, so all
//! norms reduce to cached Gram entries `⟨C_φʲ u, C_φᵏ v⟩`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gram::{composed_inner, Profile, Quadrature};
use super::{check_bandwidth, orbit_guard};
use crate::error::{PwError, Result};
use crate::function::{PwFunction, Window};
use crate::kernel::kernel_norm_sq;
use crate::symbol::{AffineSymbol, Bandwidth};

/// `Σ w·C_φ^p u_b`, keyed by `(base b, power p)` so that equal terms merge exactly.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OrbitCombination {
    terms: BTreeMap<(usize, u32), Complex64>,
}

impl OrbitCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(base: usize, power: u32, weight: Complex64) -> Self {
        let mut c = Self::new();
        c.push(base, power, weight);
        c
    }

    pub fn push(&mut self, base: usize, power: u32, weight: Complex64) {
        let w = self.terms.entry((base, power)).or_insert(Complex64::new(0.0, 0.0));
        *w += weight;
        if *w == Complex64::new(0.0, 0.0) {
            self.terms.remove(&(base, power));
        }
    }

    pub fn add_scaled(&mut self, other: &OrbitCombination, k: Complex64) {
        for (&(b, p), &w) in &other.terms {
            self.push(b, p, w * k);
        }
    }

    /// `C_φ` applied to the combination.
    pub fn apply(&self) -> OrbitCombination {
        OrbitCombination {
            terms: self.terms.iter().map(|(&(b, p), &w)| ((b, p + 1), w)).collect(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, u32, Complex64)> + '_ {
        self.terms.iter().map(|(&(b, p), &w)| (b, p, w))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_power(&self) -> u32 {
        self.terms.keys().map(|&(_, p)| p).max().unwrap_or(0)
    }
}

/// Base functions, quadrature and Gram cache for one symbol.
#[derive(Debug)]
pub struct OrbitContext {
    phi: AffineSymbol,
    a: Bandwidth,
    max_power: u32,
    max_half_width: usize,
    quad: Quadrature,
    bases: RefCell<Vec<Profile>>,
    gram: RefCell<HashMap<(usize, u32, usize, u32), Complex64>>,
}

impl OrbitContext {
    pub fn new(phi: &AffineSymbol, a: Bandwidth, max_power: u32, max_half_width: usize) -> Result<Self> {
        orbit_guard(phi, a, max_power)?;
        let drift = (0..=max_power).map(|n| phi.iterate(n).d().re.abs()).fold(0.0, f64::max);
        Ok(Self {
            phi: *phi,
            a,
            max_power,
            max_half_width,
            quad: Quadrature::for_half_width(a, max_half_width, 2.0 * drift * a.value()),
            bases: RefCell::new(Vec::new()),
            gram: RefCell::new(HashMap::new()),
        })
    }

    pub fn symbol(&self) -> AffineSymbol {
        self.phi
    }

    pub fn bandwidth(&self) -> Bandwidth {
        self.a
    }

    /// Registers a base function and returns its index.
    pub fn add_base(&self, f: &PwFunction) -> Result<usize> {
        check_bandwidth(self.a, f)?;
        if f.half_width() > self.max_half_width {
            return Err(PwError::WindowTooLarge(f.half_width()));
        }
        let mut bases = self.bases.borrow_mut();
        bases.push(Profile::new(f));
        Ok(bases.len() - 1)
    }

    fn check_power(&self, p: u32) -> Result<()> {
        if p > self.max_power {
            return Err(PwError::OverflowGuard {
                exponent: p as f64,
                limit: self.max_power as f64,
            });
        }
        Ok(())
    }

    /// `⟨C_φ^p u_b, C_φ^q u_e⟩`.
    pub fn inner(&self, (b, p): (usize, u32), (e, q): (usize, u32)) -> Result<Complex64> {
        self.check_power(p.max(q))?;
        if (e, q) < (b, p) {
            return Ok(self.inner((e, q), (b, p))?.conj());
        }
        if let Some(&v) = self.gram.borrow().get(&(b, p, e, q)) {
            return Ok(v);
        }
        let bases = self.bases.borrow();
        let v = composed_inner(&self.quad, &bases[b], &self.phi.iterate(p), &bases[e], &self.phi.iterate(q));
        self.gram.borrow_mut().insert((b, p, e, q), v);
        Ok(v)
    }

    pub fn norm_sq(&self, x: &OrbitCombination) -> Result<f64> {
        let terms: Vec<_> = x.terms().collect();
        let mut acc = 0.0;
        for (i, &(b, p, w)) in terms.iter().enumerate() {
            acc += w.norm_sqr() * self.inner((b, p), (b, p))?.re;
            for &(e, q, v) in &terms[i + 1..] {
                acc += 2.0 * (w * v.conj() * self.inner((b, p), (e, q))?).re;
            }
        }
        Ok(acc.max(0.0))
    }

    pub fn norm(&self, x: &OrbitCombination) -> Result<f64> {
        Ok(self.norm_sq(x)?.sqrt())
    }

    /// Point evaluation `Σ w·u_b(φ^{[p]}(z))`.
    pub fn eval(&self, x: &OrbitCombination, z: Complex64) -> Complex64 {
        let bases = self.bases.borrow();
        x.terms()
            .map(|(b, p, w)| w * bases[b].function().eval(self.phi.iterate(p).apply(z)))
            .sum()
    }

    /// Samples the combination on a node window.
    pub fn materialize(&self, x: &OrbitCombination, half_width: usize) -> Result<PwFunction> {
        let bases = self.bases.borrow();
        let mut out = PwFunction::zeros(self.a, half_width);
        for (b, p, w) in x.terms() {
            let g = bases[b].function().compose(&self.phi.iterate(p), Window::HalfWidth(half_width))?;
            out = out.axpy(w, &g)?;
        }
        Ok(out)
    }
}

#[derive(Debug)]
pub struct Pseudotrajectory {
    pub delta: f64,
    pub alpha: Complex64,
    pub n_max: u32,
    /// `κ = δ/‖C_φ f‖`.
    pub kappa: f64,
    /// `f(α)`.
    pub seed_at_fixed_point: Complex64,
    context: OrbitContext,
    seed: usize,
}

pub fn build_pseudotrajectory(
    phi: &AffineSymbol,
    a: Bandwidth,
    f: &PwFunction,
    delta: f64,
    n_max: u32,
) -> Result<Pseudotrajectory> {
    if phi.c() == 1.0 {
        return Err(PwError::TranslationSymbol);
    }
    assert!(delta > 0.0, "delta must be positive");
    check_bandwidth(a, f)?;
    let alpha = phi.fixed_point()?;
    let f_alpha = f.eval(alpha);
    if f_alpha.norm() < super::growth::WITNESS_FLOOR {
        return Err(PwError::SeedVanishesAtFixedPoint(alpha));
    }
    // powers up to n_max + 1 appear in the defect C_φ f_n − f_{n+1}
    let context = OrbitContext::new(phi, a, n_max + 1, f.half_width())?;
    let seed = context.add_base(f)?;
    let cf = context.norm(&OrbitCombination::term(seed, 1, Complex64::new(1.0, 0.0)))?;
    Ok(Pseudotrajectory {
        delta,
        alpha,
        n_max,
        kappa: delta / cf,
        seed_at_fixed_point: f_alpha,
        context,
        seed,
    })
}

impl Pseudotrajectory {
    pub fn context(&self) -> &OrbitContext {
        &self.context
    }

    /// `f_n`; `f_0` is the zero combination.
    pub fn term(&self, n: u32) -> OrbitCombination {
        let mut x = OrbitCombination::new();
        for j in 1..=n {
            x.push(self.seed, j, Complex64::new(self.kappa, 0.0));
        }
        x
    }

    /// `‖C_φ f_n − f_{n+1}‖`.
    pub fn defect(&self, n: u32) -> Result<f64> {
        let mut x = self.term(n).apply();
        x.add_scaled(&self.term(n + 1), Complex64::new(-1.0, 0.0));
        self.context.norm(&x)
    }

    pub fn value_at_fixed_point(&self, n: u32) -> Complex64 {
        self.context.eval(&self.term(n), self.alpha)
    }

    /// `nδ·f(α)/‖C_φ f‖`.
    pub fn predicted_value_at_fixed_point(&self, n: u32) -> Complex64 {
        self.seed_at_fixed_point * (n as f64 * self.kappa)
    }

    pub fn materialize(&self, n: u32, half_width: usize) -> Result<PwFunction> {
        self.context.materialize(&self.term(n), half_width)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShadowingTrace {
    /// `L_n = (nδ|f(α)|/‖C_φ f‖ − |g(α)|)/‖k_α‖` for `n = 0..=n_max`.
    pub lower: Vec<f64>,
    /// `D_n = ‖C_φⁿ g − f_n‖`.
    pub distance: Vec<f64>,
    /// `δ|f(α)|/(‖C_φ f‖·‖k_α‖)`.
    pub slope: f64,
}

impl ShadowingTrace {
    /// `min_n (D_n − L_n)`.
    pub fn min_gap(&self) -> f64 {
        self.distance
            .iter()
            .zip(&self.lower)
            .map(|(d, l)| d - l)
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn shadowing_divergence(p: &Pseudotrajectory, g: &PwFunction, n_max: u32) -> Result<ShadowingTrace> {
    if n_max > p.n_max {
        return Err(PwError::OverflowGuard {
            exponent: n_max as f64,
            limit: p.n_max as f64,
        });
    }
    let ctx = &p.context;
    let gi = ctx.add_base(g)?;
    let k_alpha = kernel_norm_sq(ctx.bandwidth(), p.alpha).sqrt();
    let g_alpha = g.eval(p.alpha).norm();
    let slope = p.kappa * p.seed_at_fixed_point.norm() / k_alpha;
    let mut lower = Vec::with_capacity(n_max as usize + 1);
    let mut distance = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        lower.push(n as f64 * slope - g_alpha / k_alpha);
        let mut x = OrbitCombination::term(gi, n, Complex64::new(1.0, 0.0));
        x.add_scaled(&p.term(n), Complex64::new(-1.0, 0.0));
        distance.push(ctx.norm(&x)?);
    }
    Ok(ShadowingTrace { lower, distance, slope })
}
