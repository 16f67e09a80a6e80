//! The acceptance suite: twelve numerical checks of the closed-form results, each
//! reporting measured against expected values.

pub mod properties;

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::{
    build_pseudotrajectory, cesaro_averages, classify, expansivity_certificate, orbit_norms, shadowing_divergence,
    IRREGULAR_HIGH, IRREGULAR_LOW, LI_YORKE_HORIZON,
};
use crate::equivalence::commuting_square_gap;
use crate::error::Result;
use crate::function::{PwFunction, Window};
use crate::random::{with_norm, WellResolved, DEFAULT_SEED};
use crate::spectral::{
    build_matrix, compactness_witness, isometry_check, operator_norm_estimate,
    spectral_radius_closed, spectral_radius_estimate, spectrum_closed_form,
};
use crate::symbol::{AffineSymbol, Bandwidth};

const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyProfile {
    pub name: String,
    /// Window half-width `N`.
    pub half_width: usize,
    /// `L²` grid size `M`.
    pub grid: usize,
    pub n_max: u32,
    pub seed: u64,
}

impl VerifyProfile {
    pub fn desk() -> Self {
        Self {
            name: "desk".into(),
            half_width: 128,
            grid: 4096,
            n_max: 12,
            seed: DEFAULT_SEED,
        }
    }

    pub fn fast() -> Self {
        Self {
            name: "fast".into(),
            half_width: 48,
            ..Self::desk()
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "desk" => Some(Self::desk()),
            "fast" => Some(Self::fast()),
            _ => None,
        }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: String,
    /// Statement of the result being exercised.
    pub citation: String,
    pub measured: String,
    pub expected: String,
    pub pass: bool,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {}: measured {}; expected {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.measured,
            self.expected
        )
    }
}

struct Outcome {
    measured: String,
    expected: String,
    pass: bool,
}

pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub citation: &'static str,
    run: fn(&VerifyProfile) -> Result<Outcome>,
}

impl Criterion {
    pub fn run(&self, profile: &VerifyProfile) -> CriterionReport {
        let outcome = (self.run)(profile).unwrap_or_else(|e| Outcome {
            measured: format!("error: {e}"),
            expected: "no error".into(),
            pass: false,
        });
        CriterionReport {
            id: self.id,
            title: self.title.into(),
            citation: self.citation.into(),
            measured: outcome.measured,
            expected: outcome.expected,
            pass: outcome.pass,
        }
    }
}

pub const CRITERIA: [Criterion; 12] = [
    Criterion {
        id: 1,
        title: "norm equality for real translation",
        citation: "1/sqrt|c| <= ||C_phi|| <= e^{|Im d| a}/sqrt|c|, with equality when d is real",
        run: norm_equality,
    },
    Criterion {
        id: 2,
        title: "translation norm",
        citation: "||C_phi|| = e^{|Im d| a} for phi(z) = z + d",
        run: translation_norm,
    },
    Criterion {
        id: 3,
        title: "spectral radius convergence",
        citation: "r(C_phi) = 1/sqrt|c| for c != 1, bracketed by the norm bound on phi^[n]",
        run: radius_convergence,
    },
    Criterion {
        id: 4,
        title: "spectrum trichotomy",
        citation: "the spectrum is {-1, 1} for c = -1, a closed disk for |c| < 1, an exponential arc for c = 1",
        run: spectrum_trichotomy,
    },
    Criterion {
        id: 5,
        title: "non-compactness witness",
        citation: crate::dynamics::classify::CITE_COMPACT,
        run: noncompactness,
    },
    Criterion {
        id: 6,
        title: "dilation isometry",
        citation: "sqrt|c| C_{cz} is an isometry of PW_a",
        run: isometry,
    },
    Criterion {
        id: 7,
        title: "two-path equivalence",
        citation: "F C_phi F^-1 is the weighted composition e^{idt/c} F(t/c)/|c| on L^2[-|c|a, |c|a]",
        run: equivalence,
    },
    Criterion {
        id: 8,
        title: "expansivity dichotomy",
        citation: crate::dynamics::classify::CITE_EXPANSIVE,
        run: expansivity,
    },
    Criterion {
        id: 9,
        title: "Cesaro dichotomy",
        citation: crate::dynamics::classify::CITE_CESARO,
        run: cesaro,
    },
    Criterion {
        id: 10,
        title: "shadowing divergence",
        citation: crate::dynamics::classify::CITE_SHADOWING,
        run: shadowing,
    },
    Criterion {
        id: 11,
        title: "Li-Yorke falsification",
        citation: crate::dynamics::classify::CITE_LI_YORKE,
        run: li_yorke,
    },
    Criterion {
        id: 12,
        title: "core property suite",
        citation: "f(w) = <f, k_w>, ||f||^2 = (pi/a) sum |f(pi n/a)|^2, C_phi^n = C_{phi^[n]}",
        run: core_properties,
    },
];

pub fn criterion(id: u32) -> Option<&'static Criterion> {
    CRITERIA.iter().find(|c| c.id == id)
}

pub fn run_all(profile: &VerifyProfile) -> Vec<CriterionReport> {
    CRITERIA.iter().map(|c| c.run(profile)).collect()
}

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sym(c: f64, d: Complex64) -> Result<AffineSymbol> {
    AffineSymbol::new(c, d)
}

fn bw(a: f64) -> Result<Bandwidth> {
    Bandwidth::new(a)
}

/// The `{±1, ±0.5, 0.25} × {0, 1, i, 1+i}` symbol grid.
pub fn symbol_grid() -> Vec<AffineSymbol> {
    let mut out = Vec::with_capacity(20);
    for c in [1.0, -1.0, 0.5, -0.5, 0.25] {
        for d in [cx(0.0, 0.0), cx(1.0, 0.0), cx(0.0, 1.0), cx(1.0, 1.0)] {
            out.push(AffineSymbol::new(c, d).expect("admissible grid"));
        }
    }
    out
}

fn fmt_list(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("[{}]", parts.join(", "))
}

fn norm_checks(p: &VerifyProfile, cases: &[(f64, f64, Complex64, f64)]) -> Result<Outcome> {
    let mut measured = Vec::new();
    let mut expected = Vec::new();
    let mut pass = true;
    for &(a, c, d, want) in cases {
        let t = build_matrix(&sym(c, d)?, bw(a)?, p.half_width)?;
        let got = operator_norm_estimate(&t, NORM_TOL)?.value;
        pass &= (got - want).abs() <= 0.03 * want;
        measured.push(got);
        expected.push(want);
    }
    Ok(Outcome {
        measured: fmt_list(&measured),
        expected: format!("{} within 3%", fmt_list(&expected)),
        pass,
    })
}

fn norm_equality(p: &VerifyProfile) -> Result<Outcome> {
    norm_checks(
        p,
        &[(PI, 0.25, cx(0.0, 0.0), 2.0), (1.0, 0.5, cx(0.7, 0.0), 2f64.sqrt())],
    )
}

fn translation_norm(p: &VerifyProfile) -> Result<Outcome> {
    norm_checks(
        p,
        &[(1.0, 1.0, cx(0.0, 1.0), 1f64.exp()), (PI, 1.0, cx(0.0, 0.5), (PI / 2.0).exp())],
    )
}

fn radius_convergence(p: &VerifyProfile) -> Result<Outcome> {
    let a = bw(1.0)?;
    let phi = sym(0.5, cx(0.0, 1.0))?;
    let samples = spectral_radius_estimate(&phi, a, p.half_width, p.n_max, NORM_TOL)?;
    let outside: Vec<u32> = samples.iter().filter(|s| !s.within(0.03)).map(|s| s.n).collect();
    let last = samples.last().expect("n_max >= 1");
    let radius = spectral_radius_closed(&phi, a);
    let gap = (last.estimate - radius).abs();
    let estimates: Vec<f64> = samples.iter().map(|s| s.estimate).collect();
    Ok(Outcome {
        measured: format!(
            "s_n = {}; outside bracket at n = {:?}; |s_{} - r| = {gap:.6}",
            fmt_list(&estimates),
            outside,
            last.n
        ),
        expected: format!("all s_n in bracket (3% inflation), |s_{} - {radius:.6}| <= 0.07", last.n),
        pass: outside.is_empty() && gap <= 0.07,
    })
}

fn spectrum_trichotomy(p: &VerifyProfile) -> Result<Outcome> {
    let a = bw(1.0)?;
    let cases = [
        sym(-1.0, cx(1.0, 1.0))?,
        sym(0.5, cx(1.0, 1.0))?,
        sym(0.25, cx(0.0, 0.0))?,
        sym(1.0, cx(0.0, 1.0))?,
        sym(1.0, cx(1.0, -1.0))?,
        sym(1.0, cx(0.7, 0.0))?,
    ];
    let mut worst: f64 = 0.0;
    for phi in &cases {
        let modulus = spectrum_closed_form(phi, a).max_modulus(1024);
        let r = spectral_radius_closed(phi, a);
        worst = worst.max((modulus - r).abs());
    }
    let t = build_matrix(&sym(-1.0, cx(0.0, 0.0))?, a, p.half_width)?;
    let sq = &t.entries * &t.entries;
    let identity = nalgebra::DMatrix::<Complex64>::identity(t.dim(), t.dim());
    // Frobenius norm bounds the operator norm from above
    let defect = (sq - identity).norm();
    Ok(Outcome {
        measured: format!("max |boundary modulus - r| = {worst:.3e}; ||T^2 - I|| <= {defect:.3e}"),
        expected: "<= 1e-12; <= 1e-8".into(),
        pass: worst <= 1e-12 && defect <= 1e-8,
    })
}

fn noncompactness(_: &VerifyProfile) -> Result<Outcome> {
    let a = bw(1.0)?;
    let complex = compactness_witness(&sym(0.5, cx(0.0, 1.0))?, a, 50);
    let real = compactness_witness(&sym(0.5, cx(0.7, 0.0))?, a, 50);
    let want = 2f64.sinh() / 2.0;
    let dev_c = complex.iter().map(|v| (v - want).abs()).fold(0.0, f64::max);
    let dev_r = real.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
    Ok(Outcome {
        measured: format!("max deviation {dev_c:.3e} (d = i), {dev_r:.3e} (d = 0.7) over n = 1..50"),
        expected: format!("constant {want:.12} and 1 to 1e-10"),
        pass: dev_c <= 1e-10 && dev_r <= 1e-10,
    })
}

fn isometry(p: &VerifyProfile) -> Result<Outcome> {
    let a = bw(1.0)?;
    let mut devs = Vec::new();
    for c in [0.5, 0.9] {
        devs.push(isometry_check(c, a, 100, p.half_width, Window::Grow, p.seed)?);
    }
    Ok(Outcome {
        measured: format!("max relative deviation {:.3e} (c = 1/2), {:.3e} (c = 0.9)", devs[0], devs[1]),
        expected: "< 1e-6 over 100 trials".into(),
        pass: devs.iter().all(|&d| d < 1e-6),
    })
}

fn equivalence(p: &VerifyProfile) -> Result<Outcome> {
    let a = Bandwidth::pi();
    let gen = WellResolved::default();
    let mut rng = p.rng(7);
    let mut worst: f64 = 0.0;
    let grid = symbol_grid();
    for phi in &grid {
        for _ in 0..20 {
            let f = gen.sample_unit(a, p.half_width, &mut rng);
            worst = worst.max(commuting_square_gap(phi, &f, p.grid, Window::Grow)?);
        }
    }
    Ok(Outcome {
        measured: format!("max discrepancy {worst:.3e} over {} inputs", 20 * grid.len()),
        expected: "< 1e-6".into(),
        pass: worst < 1e-6,
    })
}

fn expansivity(p: &VerifyProfile) -> Result<Outcome> {
    let a = bw(1.0)?;
    let gen = WellResolved::default();
    let mut rng = p.rng(8);
    let mut agree = 0;
    let mut disagree = Vec::new();
    let mut worst_ratio: f64 = 0.0;
    let grid = symbol_grid();
    for phi in &grid {
        let f = gen.sample_unit(a, p.half_width, &mut rng);
        let expected = classify(phi, a).positively_expansive.value;
        let cert = expansivity_certificate(phi, a, &f);
        match cert {
            Ok(cert) if cert.is_expansive() == expected => {
                agree += 1;
                if let crate::dynamics::ExpansivityCertificate::BoundedOrbit { sup, bound, .. } = cert {
                    worst_ratio = worst_ratio.max(sup / bound);
                }
            }
            _ => disagree.push(format!("({}, {})", phi.c(), phi.d())),
        }
    }
    Ok(Outcome {
        measured: format!(
            "{agree}/{} agree; disagreements {:?}; max sup/bound {worst_ratio:.9}",
            grid.len(),
            disagree
        ),
        expected: format!("{0}/{0} agree; sup/bound <= 1 + 1e-6", grid.len()),
        pass: disagree.is_empty(),
    })
}

fn cesaro(p: &VerifyProfile) -> Result<Outcome> {
    let a = bw(1.0)?;
    let gen = WellResolved::default();
    let mut rng = p.rng(9);
    let mut worst: f64 = 0.0;
    let mut bounded = 0;
    for phi in symbol_grid() {
        if !classify(&phi, a).cesaro_bounded.value {
            continue;
        }
        bounded += 1;
        for _ in 0..5 {
            let f = gen.sample_unit(a, p.half_width, &mut rng);
            let t = cesaro_averages(&phi, a, &f, 40)?;
            let bound = t.bound.expect("bounded symbol");
            worst = worst.max(t.averages.iter().copied().fold(0.0, f64::max) / bound);
        }
    }
    let pi = Bandwidth::pi();
    let k1 = PwFunction::node(pi, p.half_width, 1);
    let witness = cesaro_averages(&sym(0.5, cx(0.0, 0.0))?, pi, &k1, 40)?;
    let first = witness.averages.iter().position(|&v| v > 100.0 * witness.norm).map(|i| i + 1);
    Ok(Outcome {
        measured: format!(
            "max A_n/bound {worst:.9} over {bounded} bounded symbols; witness A_n > 100||f|| first at n = {first:?} (A_40 = {:.3})",
            witness.average(40)
        ),
        expected: "A_n/bound <= 1 + 1e-6; witness crosses 100||f|| by n = 40".into(),
        pass: worst <= 1.0 + 1e-6 && first.is_some(),
    })
}

fn shadowing(p: &VerifyProfile) -> Result<Outcome> {
    let a = Bandwidth::pi();
    let phi = sym(0.5, cx(0.0, 0.0))?;
    let f = PwFunction::node(a, p.half_width, 0);
    let delta = 0.1;
    let pseudo = build_pseudotrajectory(&phi, a, &f, delta, 30)?;
    let gen = WellResolved::default();
    let mut rng = p.rng(10);
    let mut min_gap = f64::INFINITY;
    let mut worst_ratio: f64 = 0.0;
    let mut defect: f64 = 0.0;
    for n in 0..30 {
        defect = defect.max((pseudo.defect(n)? - delta).abs());
    }
    for _ in 0..10 {
        let g = with_norm(&gen.sample(a, p.half_width, &mut rng), delta / 10.0);
        let t = shadowing_divergence(&pseudo, &g, 30)?;
        min_gap = min_gap.min(t.min_gap());
        let ratio = t.lower[30] / t.lower[15];
        worst_ratio = worst_ratio.max((ratio - 2.0).abs() / 2.0);
    }
    Ok(Outcome {
        measured: format!(
            "min (D_n - L_n) = {min_gap:.6}; max |L_30/L_15 - 2|/2 = {worst_ratio:.4}; max |defect - delta| = {defect:.2e}"
        ),
        expected: ">= -1e-8; <= 0.05".into(),
        pass: min_gap >= -1e-8 && worst_ratio <= 0.05,
    })
}

fn li_yorke(p: &VerifyProfile) -> Result<Outcome> {
    let a = bw(1.0)?;
    let gen = WellResolved::default();
    let mut rng = p.rng(11);
    let inputs: Vec<PwFunction> = (0..50).map(|_| gen.sample_unit(a, p.half_width, &mut rng)).collect();
    let grid = symbol_grid();
    let mut irregular = 0;
    let mut orbits = 0;
    for phi in &grid {
        for f in &inputs {
            orbits += 1;
            if orbit_norms(phi, a, f, LI_YORKE_HORIZON)?.looks_irregular(IRREGULAR_LOW, IRREGULAR_HIGH) {
                irregular += 1;
            }
        }
    }
    Ok(Outcome {
        measured: format!("{irregular} irregular among {orbits} orbits"),
        expected: "0".into(),
        pass: irregular == 0,
    })
}

fn core_properties(p: &VerifyProfile) -> Result<Outcome> {
    let s = p.seed;
    let outcomes = [
        properties::interpolation(s, 32),
        properties::parseval(s + 1, 8, 48),
        properties::reproducing(s + 2, 32),
        properties::semigroup(s + 3, 6, 64, 8)?,
        properties::involution(s + 4, 16, 128)?,
        properties::kernel_continuity(s + 5, 64),
    ];
    let measured: Vec<String> = outcomes
        .iter()
        .map(|o| format!("{} {:.2e} ({} cases)", o.name, o.worst, o.cases))
        .collect();
    let expected: Vec<String> = outcomes.iter().map(|o| format!("{} <= {:.0e}", o.name, o.tolerance)).collect();
    Ok(Outcome {
        measured: measured.join(", "),
        expected: expected.join(", "),
        pass: outcomes.iter().all(|o| o.pass && o.cases > 0),
    })
}
