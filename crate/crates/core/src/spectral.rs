//! Finite sections of `C_φ`, norm and spectral-radius estimates, and the closed-form
//! spectra they are checked against.
//!
//! Finite-section eigenvalues are never used as spectrum estimates: sections of a
//! non-normal operator pollute the spectrum. Sections are used for norms only, which are
//! monotone in the window and bounded by the operator norm.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{PwError, Result};
use crate::function::{PwFunction, Window};
use crate::kernel::{csin_pi, kernel_norm_sq, SERIES_SWITCH};
use crate::random::{WellResolved, DEFAULT_SEED};
use crate::symbol::{AffineSymbol, Bandwidth};

/// Largest admissible `a·|Im d|`; matrix entries grow like `e^{a|Im d|}`.
pub const OVERFLOW_LIMIT: f64 = 300.0;

/// Matrix-vector products allowed per norm estimate.
pub const MAX_ITERATIONS: usize = 10_000;

const KRYLOV_DIM: usize = 64;

pub fn overflow_guard(phi: &AffineSymbol, a: Bandwidth) -> Result<()> {
    let exponent = a.value() * phi.d().im.abs();
    if exponent > OVERFLOW_LIMIT {
        return Err(PwError::OverflowGuard {
            exponent,
            limit: OVERFLOW_LIMIT,
        });
    }
    Ok(())
}

/// Finite section `T[n,m] = ⟨C_φ e_m, e_n⟩ = sinc(π(cn + ad/π − m))`, `|n|, |m| ≤ N`.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    pub a: Bandwidth,
    pub phi: AffineSymbol,
    pub half_width: usize,
    pub entries: DMatrix<Complex64>,
}

pub fn build_matrix(phi: &AffineSymbol, a: Bandwidth, half_width: usize) -> Result<OperatorMatrix> {
    if half_width < 1 {
        return Err(PwError::WindowTooSmall { min: 1, got: half_width });
    }
    overflow_guard(phi, a)?;
    let h = half_width as i64;
    let dim = 2 * half_width + 1;
    let shift = a.to_node_units(phi.d());
    let mut entries = DMatrix::zeros(dim, dim);
    for (i, n) in (-h..=h).enumerate() {
        let zeta = shift + phi.c() * n as f64;
        let s = csin_pi(zeta);
        for (j, m) in (-h..=h).enumerate() {
            let u = (zeta - m as f64) * PI;
            entries[(i, j)] = if u.norm() < SERIES_SWITCH {
                let u2 = u * u;
                Complex64::new(1.0, 0.0) - u2 / 6.0 + u2 * u2 / 120.0
            } else if m % 2 == 0 {
                s / u
            } else {
                -s / u
            };
        }
    }
    Ok(OperatorMatrix {
        a,
        phi: *phi,
        half_width,
        entries,
    })
}

impl OperatorMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Coordinates of `f` in the basis `e_n`: `√(π/a)·v_n`.
    pub fn coordinates(&self, f: &PwFunction) -> DVector<Complex64> {
        let k = self.a.spacing().sqrt();
        let h = self.half_width as i64;
        DVector::from_iterator(self.dim(), (-h..=h).map(|n| f.sample(n) * k))
    }

    /// Maps coordinates back to a window function.
    pub fn function(&self, x: &DVector<Complex64>) -> PwFunction {
        let k = 1.0 / self.a.spacing().sqrt();
        PwFunction::new(self.a, x.iter().map(|v| v * k).collect()).expect("odd dimension")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    /// Residual of the top Ritz pair of `T*T`, relative to the Ritz value.
    pub residual: f64,
    pub iterations: usize,
}

/// Largest eigenvalue of the Hermitian operator `apply` by restarted Lanczos with full
/// reorthogonalisation, started from `start`. Stops when `‖Hx − θx‖ ≤ tol·θ`.
fn lanczos_top(
    apply: &dyn Fn(&DVector<Complex64>) -> DVector<Complex64>,
    start: DVector<Complex64>,
    tol: f64,
    budget: usize,
) -> (f64, f64, usize, bool) {
    let dim = start.len();
    let mut x = start.normalize();
    let mut used = 0;
    let mut theta = 0.0;
    let mut residual = f64::INFINITY;
    while used < budget {
        let kmax = KRYLOV_DIM.min(dim).min(budget - used);
        let mut basis: Vec<DVector<Complex64>> = vec![x.clone()];
        let mut alpha: Vec<f64> = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let mut ritz = DVector::from_element(1, 1.0);
        for k in 0..kmax {
            let mut w = apply(&basis[k]);
            used += 1;
            alpha.push(basis[k].dotc(&w).re);
            for _ in 0..2 {
                for q in &basis {
                    let proj = q.dotc(&w);
                    w -= q * proj;
                }
            }
            let b = w.norm();
            let t = tridiagonal(&alpha, &beta);
            let eig = SymmetricEigen::new(t);
            let (top, _) = eig
                .eigenvalues
                .iter()
                .enumerate()
                .fold((0usize, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
            theta = eig.eigenvalues[top];
            ritz = eig.eigenvectors.column(top).into_owned();
            residual = b * ritz[k].abs();
            let scale = theta.abs().max(f64::MIN_POSITIVE);
            if residual <= tol * scale || b <= f64::EPSILON * scale || basis.len() == dim {
                return (theta, residual / scale, used, true);
            }
            beta.push(b);
            basis.push(w.unscale(b));
        }
        // Restart from the current Ritz vector.
        x = combine(&basis[..ritz.len()], &ritz).normalize();
    }
    (theta, residual / theta.abs().max(f64::MIN_POSITIVE), used, false)
}

fn tridiagonal(alpha: &[f64], beta: &[f64]) -> DMatrix<f64> {
    let k = alpha.len();
    let mut t = DMatrix::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alpha[i];
        if i + 1 < k {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    t
}

fn combine(basis: &[DVector<Complex64>], coeffs: &DVector<f64>) -> DVector<Complex64> {
    let mut x = DVector::zeros(basis[0].len());
    for (q, &y) in basis.iter().zip(coeffs.iter()) {
        x += q * Complex64::new(y, 0.0);
    }
    x
}

fn random_vector(dim: usize, rng: &mut ChaCha8Rng) -> DVector<Complex64> {
    DVector::from_iterator(
        dim,
        (0..dim).map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))),
    )
}

/// Largest singular value of a finite section, to relative tolerance `tol`.
///
/// Runs a Krylov iteration on `T*T` from two seeded random complex starts and keeps
/// the larger result; a cluster of near-degenerate top singular values only slows
/// convergence of the vector, not of the value.
pub fn operator_norm_estimate(t: &OperatorMatrix, tol: f64) -> Result<NormEstimate> {
    matrix_norm_estimate(&t.entries, tol)
}

pub fn matrix_norm_estimate(t: &DMatrix<Complex64>, tol: f64) -> Result<NormEstimate> {
    assert!(tol > 0.0, "tolerance must be positive");
    let adjoint = t.adjoint();
    let apply = |x: &DVector<Complex64>| &adjoint * (t * x);
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let dim = t.ncols();
    let mut best: Option<NormEstimate> = None;
    let mut total = 0;
    for _ in 0..2 {
        let start = random_vector(dim, &mut rng);
        let (theta, residual, used, converged) = lanczos_top(&apply, start, tol, MAX_ITERATIONS / 2);
        total += used;
        let estimate = NormEstimate {
            value: theta.max(0.0).sqrt(),
            residual,
            iterations: total,
        };
        if !converged {
            return Err(PwError::NotConverged {
                estimate: estimate.value,
                residual,
                iterations: total,
            });
        }
        if best.is_none_or(|b| estimate.value > b.value) {
            best = Some(NormEstimate { iterations: total, ..estimate });
        } else if let Some(b) = best.as_mut() {
            b.iterations = total;
        }
    }
    Ok(best.expect("two runs"))
}

/// `(1/√|c|, e^{|Im d|·a}/√|c|)`, the two-sided bound on `‖C_φ‖`; equal when `d` is real.
pub fn norm_bounds(phi: &AffineSymbol, a: Bandwidth) -> (f64, f64) {
    let lower = 1.0 / phi.c().abs().sqrt();
    let upper = (phi.d().im.abs() * a.value()).exp() * lower;
    (lower, upper)
}

/// `r(C_φ) = 1/√|c|` for `c ≠ 1`, and `e^{|Im d|·a}` for `c = 1`.
pub fn spectral_radius_closed(phi: &AffineSymbol, a: Bandwidth) -> f64 {
    if phi.c() == 1.0 {
        (phi.d().im.abs() * a.value()).exp()
    } else {
        1.0 / phi.c().abs().sqrt()
    }
}

/// Bracket for `‖C_φⁿ‖^{1/n}` obtained from the norm bound applied to `φ^{[n]}`:
/// `[1/√|c|, e^{|Im d_n|·a/n}/√|c|]` with `d_n = (1−cⁿ)d/(1−c)` (or `nd` when `c = 1`).
pub fn radius_bracket(phi: &AffineSymbol, a: Bandwidth, n: u32) -> (f64, f64) {
    let lower = 1.0 / phi.c().abs().sqrt();
    let dn = phi.iterate(n).d();
    let upper = (dn.im.abs() * a.value() / n as f64).exp() * lower;
    (lower, upper)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusSample {
    pub n: u32,
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
}

impl RadiusSample {
    pub fn within(&self, inflation: f64) -> bool {
        self.estimate >= self.lower * (1.0 - inflation) && self.estimate <= self.upper * (1.0 + inflation)
    }
}

/// `s_n = ‖T(φ^{[n]})‖^{1/n}` for `n = 1..n_max`, built from the closed-form iterate.
pub fn spectral_radius_estimate(
    phi: &AffineSymbol,
    a: Bandwidth,
    half_width: usize,
    n_max: u32,
    tol: f64,
) -> Result<Vec<RadiusSample>> {
    (1..=n_max)
        .map(|n| {
            let t = build_matrix(&phi.iterate(n), a, half_width)?;
            let norm = operator_norm_estimate(&t, tol)?.value;
            let (lower, upper) = radius_bracket(phi, a, n);
            Ok(RadiusSample {
                n,
                estimate: norm.powf(1.0 / n as f64),
                lower,
                upper,
            })
        })
        .collect()
}

/// `σ(C_φ)`, determined by `c` alone up to the arc's parametrisation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SpectrumDescriptor {
    /// `{−1, 1}` for `c = −1`.
    TwoPointSet,
    /// `{|λ| ≤ 1/√|c|}` for `0 < |c| < 1`.
    ClosedDisk { radius: f64 },
    /// `{e^{idt} : t ∈ [−a, a]}` for `c = 1`.
    ExponentialArc { d: [f64; 2], a: f64 },
}

pub fn spectrum_closed_form(phi: &AffineSymbol, a: Bandwidth) -> SpectrumDescriptor {
    let c = phi.c();
    if c == -1.0 {
        SpectrumDescriptor::TwoPointSet
    } else if c == 1.0 {
        SpectrumDescriptor::ExponentialArc {
            d: [phi.d().re, phi.d().im],
            a: a.value(),
        }
    } else {
        SpectrumDescriptor::ClosedDisk {
            radius: 1.0 / c.abs().sqrt(),
        }
    }
}

impl SpectrumDescriptor {
    /// Membership up to absolute tolerance `tol`.
    pub fn contains(&self, lambda: Complex64, tol: f64) -> bool {
        match *self {
            SpectrumDescriptor::TwoPointSet => {
                (lambda - 1.0).norm() <= tol || (lambda + 1.0).norm() <= tol
            }
            SpectrumDescriptor::ClosedDisk { radius } => lambda.norm() <= radius + tol,
            SpectrumDescriptor::ExponentialArc { d, a } => {
                let d = Complex64::new(d[0], d[1]);
                arc_parameter(d, a, lambda, tol).is_some()
            }
        }
    }

    /// `k` points on the boundary (the whole set for the two-point case).
    pub fn boundary(&self, k: usize) -> Vec<Complex64> {
        match *self {
            SpectrumDescriptor::TwoPointSet => vec![Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)],
            SpectrumDescriptor::ClosedDisk { radius } => (0..k)
                .map(|j| Complex64::from_polar(radius, 2.0 * PI * j as f64 / k as f64))
                .collect(),
            SpectrumDescriptor::ExponentialArc { d, a } => {
                let d = Complex64::new(d[0], d[1]);
                let k = k.max(2);
                (0..k)
                    .map(|j| {
                        let t = -a + 2.0 * a * j as f64 / (k - 1) as f64;
                        (Complex64::i() * d * t).exp()
                    })
                    .collect()
            }
        }
    }

    pub fn max_modulus(&self, k: usize) -> f64 {
        self.boundary(k).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `t ∈ [−a, a]` with `e^{idt} = λ`, if any.
fn arc_parameter(d: Complex64, a: f64, lambda: Complex64, tol: f64) -> Option<f64> {
    let in_range = |t: f64| t >= -a - tol && t <= a + tol;
    let hits = |t: f64| ((Complex64::i() * d * t).exp() - lambda).norm() <= tol * (1.0 + lambda.norm());
    if d.im != 0.0 {
        if lambda.norm() == 0.0 {
            return None;
        }
        let t = -lambda.norm().ln() / d.im;
        return (in_range(t) && hits(t)).then_some(t);
    }
    if d.re == 0.0 {
        return ((lambda - 1.0).norm() <= tol).then_some(0.0);
    }
    let arg = lambda.arg();
    let span = (d.re.abs() * a / (2.0 * PI)).ceil() as i64 + 1;
    (-span..=span)
        .map(|k| (arg + 2.0 * PI * k as f64) / d.re)
        .find(|&t| in_range(t) && hits(t))
}

/// `‖C_φ* K_n‖²` for the normalized kernels `K_n` at `nπ/a`, `n = 1..n_max`.
///
/// `C_φ* k_w = k_{φ(w)}` and `Im φ(nπ/a) = Im d`, so the sequence is the constant
/// `sinh(2a Im d)/(2a Im d)` (or 1) and does not tend to zero although `K_n ⇀ 0`.
pub fn compactness_witness(phi: &AffineSymbol, a: Bandwidth, n_max: usize) -> Vec<f64> {
    (1..=n_max as i64)
        .map(|n| {
            let w = Complex64::new(a.node(n), 0.0);
            let image = crate::function::adjoint_on_kernel(phi, crate::kernel::KernelPoint::new(a, w));
            image.norm_sq() / kernel_norm_sq(a, w)
        })
        .collect()
}

/// Max relative deviation `|‖√|c|·C_{cz} f‖ − ‖f‖| / ‖f‖` over random well-resolved `f`.
pub fn isometry_check(
    c: f64,
    a: Bandwidth,
    trials: usize,
    half_width: usize,
    window: Window,
    seed: u64,
) -> Result<f64> {
    let phi = AffineSymbol::dilation(c)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gen = WellResolved::default();
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let f = gen.sample(a, half_width, &mut rng);
        let g = f.compose(&phi, window)?;
        let dev = (c.abs().sqrt() * g.norm() - f.norm()).abs() / f.norm();
        worst = worst.max(dev);
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosedRangeReason {
    /// `c = ±1`: `C_φ` is invertible.
    Invertible,
    /// `C_φ` is similar to `C_{cz}`, and `√|c|·C_{cz}` is an isometry.
    SimilarToIsometry,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedRange {
    pub closed: bool,
    pub reason: ClosedRangeReason,
}

impl ClosedRange {
    pub fn justification(&self) -> &'static str {
        match self.reason {
            ClosedRangeReason::Invertible => "invertible",
            ClosedRangeReason::SimilarToIsometry => "similar to isometry up to scale",
        }
    }
}

pub fn closed_range_fact(phi: &AffineSymbol) -> ClosedRange {
    let reason = if phi.is_invertible() {
        ClosedRangeReason::Invertible
    } else {
        ClosedRangeReason::SimilarToIsometry
    };
    ClosedRange { closed: true, reason }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sym(c: f64, d: Complex64) -> AffineSymbol {
        AffineSymbol::new(c, d).unwrap()
    }

    #[test]
    fn identity_section_is_identity() {
        let t = build_matrix(&AffineSymbol::identity(), Bandwidth::pi(), 4).unwrap();
        let err = (&t.entries - DMatrix::<Complex64>::identity(9, 9)).norm();
        assert!(err < 1e-14);
    }

    #[test]
    fn reflection_section_is_reversal() {
        let t = build_matrix(&sym(-1.0, cx(0.0, 0.0)), Bandwidth::pi(), 4).unwrap();
        for i in 0..9 {
            for j in 0..9 {
                let want = if i + j == 8 { 1.0 } else { 0.0 };
                assert_eq!(t.entries[(i, j)], cx(want, 0.0));
            }
        }
    }

    #[test]
    fn half_dilation_entries_match_direct_sinc() {
        // sin(π(n/2 − m))/(π(n/2 − m)) to 17 digits.
        let t = build_matrix(&sym(0.5, cx(0.0, 0.0)), Bandwidth::pi(), 16).unwrap();
        let cases = [
            (3i64, 0i64, -0.212_206_590_789_193_78),
            (-7, -2, -0.212_206_590_789_193_78),
            (5, 4, -0.212_206_590_789_193_78),
            (4, 2, 1.0),
            (1, -6, 0.048_970_751_720_583_18),
        ];
        for (n, m, want) in cases {
            let v = t.entries[((n + 16) as usize, (m + 16) as usize)];
            assert!((v - cx(want, 0.0)).norm() < 1e-15, "({n},{m}) {v}");
        }
    }

    #[test]
    fn overflow_guard_rejects() {
        let r = build_matrix(&sym(1.0, cx(0.0, 100.0)), Bandwidth::pi(), 4);
        assert!(matches!(r, Err(PwError::OverflowGuard { .. })));
        assert!(build_matrix(&AffineSymbol::identity(), Bandwidth::pi(), 0).is_err());
    }

    #[test]
    fn estimator_matches_dense_eigensolver() {
        for &(a, c, d) in &[(1.0, 1.0, cx(0.0, 1.0)), (PI, 0.25, cx(0.0, 0.0)), (1.0, -0.5, cx(1.0, 1.0)), (2.0, 0.7, cx(-0.3, 0.2))] {
            let t = build_matrix(&sym(c, d), Bandwidth::new(a).unwrap(), 24).unwrap();
            let dense = SymmetricEigen::new(t.entries.adjoint() * &t.entries).eigenvalues.max().sqrt();
            let est = operator_norm_estimate(&t, 1e-12).unwrap();
            assert!((est.value - dense).abs() <= 1e-9 * dense, "c={c}: {} vs {dense}", est.value);
        }
    }

    #[test]
    fn estimator_on_identity() {
        let t = build_matrix(&AffineSymbol::identity(), Bandwidth::new(1.0).unwrap(), 10).unwrap();
        assert!((operator_norm_estimate(&t, 1e-10).unwrap().value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bounds_examples() {
        let a = Bandwidth::new(1.0).unwrap();
        assert_eq!(norm_bounds(&AffineSymbol::identity(), a), (1.0, 1.0));
        assert_eq!(norm_bounds(&sym(0.25, cx(0.0, 0.0)), Bandwidth::pi()), (2.0, 2.0));
        let (lo, hi) = norm_bounds(&sym(0.5, cx(0.0, 1.0)), a);
        assert!((lo - 2f64.sqrt()).abs() < 1e-15);
        assert!((hi - 2f64.sqrt() * 1f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn radius_examples() {
        let a = Bandwidth::new(1.0).unwrap();
        assert_eq!(spectral_radius_closed(&sym(1.0, cx(3.0, 0.0)), a), 1.0);
        assert_eq!(spectral_radius_closed(&sym(0.25, cx(7.0, -3.0)), a), 2.0);
        let r = spectral_radius_closed(&sym(1.0, cx(0.0, 1.0)), Bandwidth::new(2.0).unwrap());
        assert!((r - 2f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn spectra() {
        let a = Bandwidth::new(1.0).unwrap();
        let two = spectrum_closed_form(&sym(-1.0, cx(3.0, 2.0)), a);
        assert_eq!(two, SpectrumDescriptor::TwoPointSet);
        assert!(two.contains(cx(-1.0, 0.0), 1e-12) && !two.contains(cx(0.0, 0.0), 1e-12));
        let disk = spectrum_closed_form(&sym(0.5, cx(9.0, -4.0)), a);
        assert_eq!(disk, SpectrumDescriptor::ClosedDisk { radius: 1.0 / 0.5f64.sqrt() });
        assert!(disk.contains(cx(1.0, 0.99), 0.0) && !disk.contains(cx(1.0, 1.1), 0.0));
        let arc = spectrum_closed_form(&sym(1.0, cx(0.0, 1.0)), a);
        // e^{i·i·t} = e^{−t}: the real segment [1/e, e]
        assert!(arc.contains(cx(1.0, 0.0), 1e-12));
        assert!(arc.contains(cx(1f64.exp(), 0.0), 1e-12));
        assert!(arc.contains(cx((-1f64).exp(), 0.0), 1e-12));
        assert!(!arc.contains(cx(3.0, 0.0), 1e-12));
        assert!(!arc.contains(cx(1.0, 0.1), 1e-12));
        let circle = spectrum_closed_form(&sym(1.0, cx(2.0, 0.0)), Bandwidth::pi());
        assert!(circle.contains(Complex64::from_polar(1.0, 2.0), 1e-12));
        let short = spectrum_closed_form(&sym(1.0, cx(0.5, 0.0)), a);
        assert!(!short.contains(Complex64::from_polar(1.0, 1.0), 1e-9));
    }

    #[test]
    fn boundary_modulus_is_radius() {
        let a = Bandwidth::new(1.3).unwrap();
        for &(c, d) in &[(-1.0, cx(1.0, 2.0)), (0.5, cx(1.0, 1.0)), (1.0, cx(0.4, -0.9)), (1.0, cx(2.0, 0.0))] {
            let phi = sym(c, d);
            let got = spectrum_closed_form(&phi, a).max_modulus(257);
            assert!((got - spectral_radius_closed(&phi, a)).abs() < 1e-12);
        }
    }

    #[test]
    fn compactness_witness_constant() {
        let a = Bandwidth::new(1.0).unwrap();
        let w = compactness_witness(&sym(0.5, cx(0.0, 1.0)), a, 50);
        for v in &w {
            assert!((v - 1.813_430_203_923_509_4).abs() < 1e-10);
        }
        let real = compactness_witness(&sym(-0.3, cx(2.0, 0.0)), a, 20);
        assert!(real.iter().all(|v| (v - 1.0).abs() < 1e-15));
        let big = compactness_witness(&sym(1.0, cx(0.0, 2.0)), Bandwidth::pi(), 50);
        for v in &big {
            assert!((v - 11_409.472_230_808_822).abs() < 1e-10 * 11_409.0);
        }
    }

    #[test]
    fn isometry_unit_scale() {
        let a = Bandwidth::new(1.0).unwrap();
        let dev = isometry_check(1.0, a, 5, 32, Window::Same, 1).unwrap();
        assert!(dev < 1e-14);
    }

    #[test]
    fn closed_range() {
        assert_eq!(closed_range_fact(&sym(1.0, cx(0.0, 5.0))).justification(), "invertible");
        assert_eq!(closed_range_fact(&sym(-1.0, cx(2.0, 0.0))).reason, ClosedRangeReason::Invertible);
        let r = closed_range_fact(&sym(1.0 / 3.0, cx(1.0, 0.0)));
        assert!(r.closed);
        assert_eq!(r.reason, ClosedRangeReason::SimilarToIsometry);
    }
}
