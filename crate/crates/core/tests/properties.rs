use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use pwlab::equivalence::{from_l2, to_l2, weighted_compose_adjoint, weighted_compose_apply};
use pwlab::io;
use pwlab::kernel::kernel_norm_sq;
use pwlab::random::{WellResolved, DEFAULT_SEED};
use pwlab::{AffineSymbol, Bandwidth, PwFunction, Window};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(DEFAULT_SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

fn cx() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn bandwidth() -> impl Strategy<Value = Bandwidth> {
    (0.5..4.0f64).prop_map(|a| Bandwidth::new(a).unwrap())
}

fn rough() -> impl Strategy<Value = PwFunction> {
    (bandwidth(), 0usize..40)
        .prop_flat_map(|(a, h)| (Just(a), prop::collection::vec(cx(), 2 * h + 1)))
        .prop_map(|(a, v)| PwFunction::new(a, v).unwrap())
}

/// Well-resolved input from a seed, so proptest shrinks over seeds and bandwidths.
fn resolved(half_width: usize) -> impl Strategy<Value = PwFunction> {
    (bandwidth(), any::<u64>()).prop_map(move |(a, seed)| {
        let gen = WellResolved {
            centre_fraction: 0.05,
            ..WellResolved::default()
        };
        gen.sample(a, half_width, &mut ChaCha8Rng::seed_from_u64(seed))
    })
}

fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn interpolates_at_nodes(f in rough()) {
        let a = f.bandwidth();
        let scale = 4.0 * f64::EPSILON * f.samples().iter().map(|v| v.norm()).sum::<f64>();
        for (n, v) in f.indexed() {
            prop_assert!((f.eval(Complex64::new(a.node(n), 0.0)) - v).norm() <= scale);
        }
    }

    #[test]
    fn inner_is_hermitian_and_positive(f in rough(), seed in any::<u64>()) {
        let g = WellResolved::default().sample(f.bandwidth(), 12, &mut ChaCha8Rng::seed_from_u64(seed));
        let fg = f.inner(&g).unwrap();
        let gf = g.inner(&f).unwrap();
        prop_assert!((fg - gf.conj()).norm() <= 1e-12 * (1.0 + fg.norm()));
        let ff = f.inner(&f).unwrap();
        prop_assert!(ff.im == 0.0 && ff.re >= 0.0);
        prop_assert_eq!(ff.re == 0.0, f.is_zero());
    }

    #[test]
    fn reproducing_identity(f in rough(), x in -1.0..1.0f64, y in -1.0..1.0f64) {
        let a = f.bandwidth();
        let w = Complex64::new(x * a.node(f.half_width() as i64) / 2.0, y);
        let scale = f.norm() * kernel_norm_sq(a, w).sqrt();
        prop_assert!((f.reproduce(w) - f.eval(w)).norm() <= 1e-10 * scale.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn kernel_norm_tends_to_a_over_pi(a in bandwidth(), x in -10.0..10.0f64) {
        let limit = a.value() / std::f64::consts::PI;
        for y in [1e-4, -1e-6] {
            let v = kernel_norm_sq(a, Complex64::new(x, y));
            prop_assert!((v - limit).abs() < 1e-6 * limit);
        }
    }

    #[test]
    fn symbol_iterates_compose(c in prop::sample::select(vec![1.0, -1.0, 0.5, -0.5, 0.25]), d in cx(), n in 0u32..8, m in 0u32..8) {
        let phi = AffineSymbol::new(c, d).unwrap();
        let lhs = phi.iterate(n + m);
        let rhs = phi.iterate(n).after(&phi.iterate(m));
        prop_assert!((lhs.c() - rhs.c()).abs() < 1e-15);
        prop_assert!((lhs.d() - rhs.d()).norm() < 1e-12 * (1.0 + lhs.d().norm()));
    }

    #[test]
    fn serialization_round_trips(f in rough()) {
        prop_assert_eq!(io::pw_from_json(&io::pw_to_json(&f).unwrap()).unwrap(), f.clone());
        let mut buf = Vec::new();
        io::write_pw_binary(&f, &mut buf).unwrap();
        prop_assert_eq!(io::read_pw_binary(&mut buf.as_slice()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn involution(f in resolved(128), re in -1.0..1.0f64, im in -0.5..0.5f64) {
        let phi = AffineSymbol::new(-1.0, Complex64::new(re, im)).unwrap();
        let back = f.compose(&phi, Window::Same).unwrap().compose(&phi, Window::Same).unwrap();
        let err = max_abs(&back.sub(&f).unwrap().into_samples());
        prop_assert!(err <= 1e-10 * max_abs(f.samples()), "err {err:e}");
    }

    #[test]
    fn semigroup_for_unimodular_symbols(
        f in resolved(64),
        c in prop::sample::select(vec![1.0, -1.0]),
        re in -0.5..0.5f64,
        im in -0.3..0.3f64,
    ) {
        let phi = AffineSymbol::new(c, Complex64::new(re, im)).unwrap();
        let mut g = f.clone();
        for n in 1..=8u32 {
            g = g.compose(&phi, Window::Same).unwrap();
            let direct = f.compose(&phi.iterate(n), Window::Same).unwrap();
            let err = max_abs(&direct.sub(&g).unwrap().into_samples());
            prop_assert!(err <= n as f64 * 1e-9 * max_abs(direct.samples()), "n {n}: {err:e}");
        }
    }

    #[test]
    fn fourier_picture_is_isometric(f in resolved(48)) {
        let big_f = to_l2(&f, 1024);
        prop_assert!((big_f.norm() - f.norm()).abs() <= 1e-8 * f.norm());
        let back = from_l2(&big_f, 48);
        prop_assert!(max_abs(&back.sub(&f).unwrap().into_samples()) <= 1e-10 * max_abs(f.samples()));
    }

    #[test]
    fn weighted_composition_support_and_adjoint(
        f in resolved(48),
        seed in any::<u64>(),
        c in prop::sample::select(vec![1.0, -1.0, 0.5, -0.5, 0.25]),
        d in prop::sample::select(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(1.0, 1.0)]),
    ) {
        let a = f.bandwidth();
        let phi = AffineSymbol::new(c, d).unwrap();
        let g = WellResolved::default().sample(a, 48, &mut ChaCha8Rng::seed_from_u64(seed));
        let (big_f, big_g) = (to_l2(&f, 1024), to_l2(&g, 1024));
        let image = weighted_compose_apply(&phi, &big_f);
        let edge = c.abs() * a.value();
        for (t, v) in image.grid().zip(image.values()) {
            if t.abs() >= edge {
                prop_assert_eq!(*v, Complex64::new(0.0, 0.0));
            }
        }
        let lhs = image.inner(&big_g);
        let rhs = big_f.inner(&weighted_compose_adjoint(&phi, &big_g));
        prop_assert!((lhs - rhs).norm() <= 1e-6 * (1.0 + lhs.norm()), "{lhs} vs {rhs}");
    }
}

proptest! {
    #![proptest_config(config(4))]

    #[test]
    fn semigroup_for_dilations(
        f in resolved(64),
        c in prop::sample::select(vec![0.5, -0.5]),
        re in -0.5..0.5f64,
        im in -0.3..0.3f64,
    ) {
        let phi = AffineSymbol::new(c, Complex64::new(re, im)).unwrap();
        let mut g = f.clone();
        for n in 1..=6u32 {
            g = g.compose(&phi, Window::Grow).unwrap();
            let direct = f.compose(&phi.iterate(n), Window::Grow).unwrap();
            let h = direct.half_width() as i64;
            let err = (-h..=h).map(|k| (direct.sample(k) - g.sample(k)).norm()).fold(0.0, f64::max);
            prop_assert!(err <= n as f64 * 1e-9 * max_abs(direct.samples()), "n {n}: {err:e}");
        }
    }
}
