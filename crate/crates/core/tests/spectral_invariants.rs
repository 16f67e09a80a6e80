use num_complex::Complex64;
use pwlab::spectral::*;
use pwlab::verify::symbol_grid;
use pwlab::{AffineSymbol, Bandwidth};

const N: usize = 128;

fn grid_bandwidths() -> [Bandwidth; 2] {
    [Bandwidth::new(1.0).unwrap(), Bandwidth::pi()]
}

fn norm(phi: &AffineSymbol, a: Bandwidth, n: usize) -> f64 {
    operator_norm_estimate(&build_matrix(phi, a, n).unwrap(), 1e-10).unwrap().value
}

#[test]
fn norm_bracket_on_grid() {
    for a in grid_bandwidths() {
        for phi in symbol_grid() {
            let v = norm(&phi, a, N);
            let (lo, hi) = norm_bounds(&phi, a);
            assert!(v >= 0.97 * lo && v <= 1.03 * hi, "{phi:?} a={}: {v} not in [{lo}, {hi}]", a.value());
        }
    }
}

#[test]
fn sections_are_monotone() {
    let a = Bandwidth::new(1.0).unwrap();
    for phi in symbol_grid() {
        let norms: Vec<f64> = [16, 32, 64, 128].iter().map(|&n| norm(&phi, a, n)).collect();
        for w in norms.windows(2) {
            assert!(w[1] >= w[0] - 1e-8, "{phi:?}: {norms:?}");
        }
    }
}

// Fails at N = 128: a section of C_{φ^[n]} is close to rank one once |c|ⁿ·N ≪ 1,
// which caps s_n near (2N+1)^{1/2n} ≈ 1.26 at n = 12.
#[test]
fn radius_bracket_on_grid() {
    let mut failures = Vec::new();
    for a in grid_bandwidths() {
        for phi in symbol_grid().into_iter().filter(|p| p.c().abs() <= 0.5) {
            let samples = spectral_radius_estimate(&phi, a, N, 12, 1e-10).unwrap();
            let r = spectral_radius_closed(&phi, a);
            let last = samples[11].estimate;
            let outside: Vec<u32> = samples.iter().filter(|s| !s.within(0.03)).map(|s| s.n).collect();
            if !outside.is_empty() || (last - r).abs() > 0.05 * r {
                failures.push(format!(
                    "a={} c={} d={}: s_12={last:.4} r={r:.4} outside={outside:?}",
                    a.value(),
                    phi.c(),
                    phi.d()
                ));
            }
        }
    }
    assert!(failures.is_empty(), "{} symbols fail:\n{}", failures.len(), failures.join("\n"));
}

#[test]
fn descriptor_boundary_attains_radius() {
    let a = Bandwidth::new(1.5).unwrap();
    for phi in symbol_grid() {
        let desc = spectrum_closed_form(&phi, a);
        let r = spectral_radius_closed(&phi, a);
        assert!((desc.max_modulus(4096) - r).abs() <= 1e-12 * r, "{phi:?}");
        for z in desc.boundary(64) {
            assert!(desc.contains(z, 1e-9), "{phi:?} {z}");
        }
    }
}

#[test]
fn reflection_section_squares_to_identity() {
    for a in grid_bandwidths() {
        let t = build_matrix(&AffineSymbol::new(-1.0, Complex64::new(0.0, 0.0)).unwrap(), a, N).unwrap();
        let sq = &t.entries * &t.entries;
        let id = nalgebra::DMatrix::<Complex64>::identity(t.dim(), t.dim());
        assert!(matrix_norm_estimate(&(sq - id), 1e-10).unwrap().value <= 1e-8);
    }
}

#[test]
fn section_acts_like_sampled_composition() {
    // T x are the samples of f∘φ on the same window
    let a = Bandwidth::new(2.0).unwrap();
    let phi = AffineSymbol::new(-0.5, Complex64::new(0.4, 0.2)).unwrap();
    let f = pwlab::PwFunction::from_fn(a, 20, |x| Complex64::new((-(x * x) / 20.0).exp(), 0.1 * x));
    let t = build_matrix(&phi, a, 20).unwrap();
    let image = t.function(&(&t.entries * t.coordinates(&f)));
    let direct = f.compose(&phi, pwlab::Window::Same).unwrap();
    let err = image.sub(&direct).unwrap().norm();
    assert!(err < 1e-12 * direct.norm(), "{err}");
}
