//! Exact inner products between compositions `u∘A` and `v∘B` of finite series.
//!
//! On the Fourier side `u∘φ` is `|c|⁻¹·χ_{|t|<|c|a}·e^{idt/c}·U(t/c)` with `U` a
//! trigonometric polynomial, so for `|c_A| ≥ |c_B|` and `ρ = c_B/c_A`
//!
//! `⟨u∘A, v∘B⟩ = |c_A|⁻¹ ∫_{−a}^{a} e^{i d_A ρ s} U(ρs) · conj(e^{i d_B s} V(s)) ds`,
//!
//! an integral of an entire function over a fixed interval, done by Gauss–Legendre.
//! Nothing is truncated: iterates that spread over `|c|⁻ⁿ` nodes cost the same as `f`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::rc::Rc;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;

use crate::equivalence::ExponentialSeries;
use crate::function::PwFunction;
use crate::symbol::{AffineSymbol, Bandwidth};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Gauss–Legendre nodes and weights on `[−a, a]`.
#[derive(Debug, Clone)]
pub struct Quadrature {
    a: Bandwidth,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Quadrature {
    pub fn with_points(a: Bandwidth, points: usize) -> Self {
        let rule = GaussLegendre::new(NonZeroUsize::new(points.max(2)).expect("nonzero"));
        let av = a.value();
        let (nodes, weights) = rule.iter().map(|(x, w)| (av * x, av * w)).unzip();
        Self { a, nodes, weights }
    }

    /// Enough points for products of two series of half-width `half_width`, with an
    /// additional oscillation of `extra_phase` radians across the interval.
    pub fn for_half_width(a: Bandwidth, half_width: usize, extra_phase: f64) -> Self {
        let omega = 2.0 * PI * half_width as f64 + extra_phase.abs();
        Self::with_points(a, (0.6 * omega).ceil() as usize + 48)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn bandwidth(&self) -> Bandwidth {
        self.a
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// A function with its transform `U` cached at scaled quadrature nodes `ρ·s_k`.
#[derive(Debug)]
pub struct Profile {
    function: PwFunction,
    series: ExponentialSeries,
    cache: RefCell<HashMap<u64, Rc<[Complex64]>>>,
}

impl Profile {
    pub fn new(f: &PwFunction) -> Self {
        Self {
            function: f.clone(),
            series: ExponentialSeries::from_pw(f),
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn function(&self) -> &PwFunction {
        &self.function
    }

    pub fn half_width(&self) -> usize {
        self.function.half_width()
    }

    /// `U(ρ s_k)` for every node `s_k`.
    pub fn values(&self, quad: &Quadrature, rho: f64) -> Rc<[Complex64]> {
        let key = rho.to_bits() ^ (quad.len() as u64).rotate_left(52);
        if let Some(v) = self.cache.borrow().get(&key) {
            return Rc::clone(v);
        }
        let v: Rc<[Complex64]> = quad.nodes.iter().map(|&s| self.series.eval(rho * s)).collect();
        self.cache.borrow_mut().insert(key, Rc::clone(&v));
        v
    }
}

/// `‖u∘φ‖² = |c|⁻¹ ∫ |U(s)|² e^{−2 Im(d) s} ds`.
pub fn composed_norm_sq(quad: &Quadrature, u: &Profile, phi: &AffineSymbol) -> f64 {
    let vals = u.values(quad, 1.0);
    let y = phi.d().im;
    let sum: f64 = quad
        .nodes
        .iter()
        .zip(&quad.weights)
        .zip(vals.iter())
        .map(|((&s, &w), v)| w * v.norm_sqr() * (-2.0 * y * s).exp())
        .sum();
    sum / phi.c().abs()
}

/// `⟨u∘A, v∘B⟩`.
pub fn composed_inner(quad: &Quadrature, u: &Profile, pa: &AffineSymbol, v: &Profile, pb: &AffineSymbol) -> Complex64 {
    if pa.c().abs() < pb.c().abs() {
        return composed_inner(quad, v, pb, u, pa).conj();
    }
    let rho = pb.c() / pa.c();
    let uv = u.values(quad, rho);
    let vv = v.values(quad, 1.0);
    let i = Complex64::i();
    let (da, db) = (pa.d() * rho, pb.d());
    let mut acc = ZERO;
    for (k, (&s, &w)) in quad.nodes.iter().zip(&quad.weights).enumerate() {
        let left = (i * da * s).exp() * uv[k];
        let right = (i * db * s).exp() * vv[k];
        acc += left * right.conj() * w;
    }
    acc / pa.c().abs()
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
    fn parseval_on_the_fourier_side() {
        let a = Bandwidth::new(1.7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = WellResolved::default().sample(a, 40, &mut rng);
        let quad = Quadrature::for_half_width(a, 40, 0.0);
        let got = composed_norm_sq(&quad, &Profile::new(&f), &AffineSymbol::identity());
        assert!((got - f.norm_sq()).abs() < 1e-13 * f.norm_sq());
    }

    #[test]
    fn rough_samples_are_integrated_exactly() {
        // iid samples: the transform oscillates at the full rate πN/a
        let a = Bandwidth::pi();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = PwFunction::from_fn(a, 128, |_| {
            use rand_distr::{Distribution, StandardNormal};
            cx(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
        });
        let p = Profile::new(&f);
        let quad = Quadrature::for_half_width(a, 128, 0.0);
        let fine = Quadrature::with_points(a, 2 * quad.len());
        let phi = AffineSymbol::new(0.5, cx(0.3, 0.4)).unwrap();
        let coarse_v = composed_norm_sq(&quad, &p, &phi);
        let fine_v = composed_norm_sq(&fine, &p, &phi);
        assert!((coarse_v - fine_v).abs() < 1e-12 * fine_v);
        let id = composed_norm_sq(&quad, &p, &AffineSymbol::identity());
        assert!((id - f.norm_sq()).abs() < 1e-12 * id);
    }

    #[test]
    fn matches_sampled_compositions() {
        let a = Bandwidth::new(1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let gen = WellResolved::default();
        let f = gen.sample(a, 48, &mut rng);
        let g = gen.sample(a, 48, &mut rng);
        let (pf, pg) = (Profile::new(&f), Profile::new(&g));
        let quad = Quadrature::for_half_width(a, 48, 10.0);
        let pa = AffineSymbol::new(0.5, cx(0.7, 0.0)).unwrap();
        let pb = AffineSymbol::new(-0.25, cx(-1.0, 0.0)).unwrap();
        let fa = f.compose(&pa, Window::HalfWidth(400)).unwrap();
        let gb = g.compose(&pb, Window::HalfWidth(400)).unwrap();
        let want = fa.inner(&gb).unwrap();
        let got = composed_inner(&quad, &pf, &pa, &pg, &pb);
        assert!((got - want).norm() < 1e-9 * fa.norm() * gb.norm(), "{got} vs {want}");
        let back = composed_inner(&quad, &pg, &pb, &pf, &pa);
        assert!((back - want.conj()).norm() < 1e-12 * fa.norm() * gb.norm());
    }

    #[test]
    fn norm_is_self_inner() {
        let a = Bandwidth::new(2.0).unwrap();
        let f = WellResolved::default().sample(a, 32, &mut ChaCha8Rng::seed_from_u64(6));
        let p = Profile::new(&f);
        let quad = Quadrature::for_half_width(a, 32, 0.0);
        let phi = AffineSymbol::new(-0.5, cx(1.0, -0.6)).unwrap();
        let n = composed_norm_sq(&quad, &p, &phi);
        let ip = composed_inner(&quad, &p, &phi, &p, &phi);
        assert!((ip - cx(n, 0.0)).norm() < 1e-12 * n);
    }

    #[test]
    fn translate_norm_of_node_function() {
        // ‖k_0(·+iy)‖² = sinh(2πy)/(2πy) at a = π
        let a = Bandwidth::pi();
        let f = PwFunction::node(a, 8, 0);
        let quad = Quadrature::for_half_width(a, 8, 0.0);
        let got = composed_norm_sq(&quad, &Profile::new(&f), &AffineSymbol::translation(cx(0.0, 2.0)).unwrap());
        assert!((got - 11_409.472_230_808_822).abs() < 1e-12 * got);
    }
}
