use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use pwlab::dynamics::{self, classify::*};
use pwlab::io;
use pwlab::kernel::KernelPoint;
use pwlab::random::{with_norm, WellResolved};
use pwlab::spectral::{self, closed_range_fact, norm_bounds, spectrum_closed_form};
use pwlab::verify::{self, VerifyProfile};
use pwlab::{Bandwidth, PwFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{parse_complex, RunConfig};
use crate::error::CliError;

pub const CITE_KERNEL: &str = "f(w) = <f, k_w> with k_w(z) = sin a(z - conj w)/(pi (z - conj w)) and ||k_w||^2 = sinh(2a Im w)/(2 pi Im w)";
pub const CITE_NORM: &str = "1/sqrt|c| <= ||C_phi|| <= e^{|Im d| a}/sqrt|c|, with equality when d is real";
pub const CITE_SPECTRUM: &str =
    "the spectrum is {-1, 1} for c = -1, the disk |lambda| <= 1/sqrt|c| for 0 < |c| < 1, and {e^{idt} : |t| <= a} for c = 1";
pub const CITE_PSEUDO: &str = "f_n = (delta/||C_phi f||) sum_{j=1..n} C_phi^j f is a delta-pseudotrajectory with f_n(alpha) = n delta f(alpha)/||C_phi f||";

/// What a subcommand produced: the JSON printed to stdout and an optional failed check.
pub struct Report {
    pub json: Value,
    pub failure: Option<String>,
}

impl Report {
    fn ok(json: Value) -> Self {
        Self { json, failure: None }
    }
}

pub struct Output {
    dir: PathBuf,
}

impl Output {
    pub fn new(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|source| CliError::Write {
            path: dir.display().to_string(),
            source,
        })?;
        Ok(Self { dir: dir.to_path_buf() })
    }

    pub fn write(&self, name: &str, contents: impl AsRef<[u8]>) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|source| CliError::Write {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn json(&self, name: &str, value: &Value) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
        self.write(name, text)
    }
}

fn symbol_json(cfg: &RunConfig) -> Value {
    json!({ "a": cfg.a, "c": cfg.c, "d": [cfg.d.re, cfg.d.im] })
}

fn cx_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// `random`, `node:K` or `kernel:W`.
pub fn build_input(input: &str, cfg: &RunConfig, a: Bandwidth) -> Result<PwFunction, CliError> {
    let n = cfg.half_width;
    match input.split_once(':') {
        None if input == "random" => {
            Ok(WellResolved::default().sample_unit(a, n, &mut ChaCha8Rng::seed_from_u64(cfg.seed)))
        }
        Some(("node", k)) => {
            let k: i64 = k
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("input: bad node index {k:?}")))?;
            if k.unsigned_abs() as usize > n {
                return Err(CliError::Config(format!("input: node {k} outside the window |n| <= {n}")));
            }
            Ok(PwFunction::node(a, n, k))
        }
        Some(("kernel", w)) => Ok(PwFunction::kernel(a, n, parse_complex(w)?)),
        _ => Err(CliError::Config(format!(
            "input: expected random, node:K or kernel:W, got {input:?}"
        ))),
    }
}

pub fn kernel(cfg: &RunConfig, out: &Output, w: Complex64) -> Result<Report, CliError> {
    let a = cfg.bandwidth()?;
    let k = KernelPoint::new(a, w);
    let f = PwFunction::kernel(a, cfg.half_width, w);
    let reach = a.node(cfg.half_width as i64);
    let points = 16 * cfg.half_width + 1;
    let rows = (0..points).map(|j| {
        let x = -reach + 2.0 * reach * j as f64 / (points - 1) as f64;
        let v = k.eval(Complex64::new(x, 0.0));
        vec![x, v.re, v.im, v.norm()]
    });
    out.write("kernel.dat", io::columns(&["x", "re", "im", "abs"], rows))?;
    out.write("kernel_samples.json", io::pw_to_json(&f)?)?;
    let json = json!({
        "command": "kernel",
        "a": cfg.a,
        "w": cx_json(w),
        "norm_sq": k.norm_sq(),
        "norm": k.norm(),
        "reproduces_at_w": cx_json(f.reproduce(w)),
        "value_at_w": cx_json(f.eval(w)),
        "citation": CITE_KERNEL,
    });
    out.json("kernel.json", &json)?;
    Ok(Report::ok(json))
}

pub fn norm(cfg: &RunConfig, out: &Output, export_matrix: bool) -> Result<Report, CliError> {
    let a = cfg.bandwidth()?;
    let phi = cfg.symbol()?;
    let t = spectral::build_matrix(&phi, a, cfg.half_width)?;
    let est = spectral::operator_norm_estimate(&t, cfg.tol)?;
    let (lower, upper) = norm_bounds(&phi, a);
    if export_matrix {
        out.write("matrix.csv", io::matrix_to_csv(&t))?;
        let mut buf = Vec::new();
        io::write_matrix_binary(&t, &mut buf)?;
        out.write("matrix.pwm", buf)?;
    }
    let json = json!({
        "command": "norm",
        "symbol": symbol_json(cfg),
        "N": cfg.half_width,
        "estimate": est.value,
        "residual": est.residual,
        "iterations": est.iterations,
        "lower": lower,
        "upper": upper,
        "d_real": phi.has_real_translation(),
        "citation": CITE_NORM,
    });
    out.json("norm.json", &json)?;
    Ok(Report::ok(json))
}

pub fn spectrum(cfg: &RunConfig, out: &Output, boundary: usize) -> Result<Report, CliError> {
    let a = cfg.bandwidth()?;
    let phi = cfg.symbol()?;
    spectral::overflow_guard(&phi, a)?;
    let desc = spectrum_closed_form(&phi, a);
    let radius = spectral::spectral_radius_closed(&phi, a);
    let samples = spectral::spectral_radius_estimate(&phi, a, cfg.half_width, cfg.n_max, cfg.tol)?;
    let pts = desc.boundary(boundary);
    out.write(
        "spectrum.dat",
        io::columns(&["re", "im"], pts.iter().map(|z| vec![z.re, z.im])),
    )?;
    out.write(
        "radius.dat",
        io::columns(
            &["n", "s_n", "lower", "upper"],
            samples.iter().map(|s| vec![s.n as f64, s.estimate, s.lower, s.upper]),
        ),
    )?;
    let mut csv = String::from("n,s_n,lower,upper\n");
    for s in &samples {
        csv.push_str(&format!("{},{},{},{}\n", s.n, s.estimate, s.lower, s.upper));
    }
    out.write("radius.csv", csv)?;
    let json = json!({
        "command": "spectrum",
        "symbol": symbol_json(cfg),
        "descriptor": desc,
        "radius": radius,
        "boundary": pts.iter().map(|z| cx_json(*z)).collect::<Vec<_>>(),
        "section_estimates": samples,
        "closed_range": closed_range_fact(&phi).justification(),
        "citation": CITE_SPECTRUM,
    });
    out.json("spectrum.json", &json)?;
    Ok(Report::ok(json))
}

pub fn orbit(cfg: &RunConfig, out: &Output, input: &str) -> Result<Report, CliError> {
    let a = cfg.bandwidth()?;
    let phi = cfg.symbol()?;
    let f = build_input(input, cfg, a)?;
    let trace = dynamics::orbit_norms(&phi, a, &f, cfg.n_max)?.with_label(input);
    let image = f.compose(&phi, cfg.window())?;
    out.write("image.json", io::pw_to_json(&image)?)?;
    out.write("orbit.csv", io::orbit_to_csv(&trace))?;
    out.write(
        "orbit.dat",
        io::columns(
            &["n", "norm"],
            trace.norms.iter().enumerate().map(|(n, v)| vec![n as f64, *v]),
        ),
    )?;
    let report = classify(&phi, a);
    let (certificate, failure) = if f.is_zero() {
        (Value::Null, None)
    } else {
        match dynamics::expansivity_certificate(&phi, a, &f) {
            Ok(c) => (serde_json::to_value(c).expect("serializable"), None),
            Err(e @ (pwlab::PwError::CapExceeded { .. } | pwlab::PwError::BoundExceeded { .. })) => {
                (Value::Null, Some(e.to_string()))
            }
            Err(e) => return Err(e.into()),
        }
    };
    let json = json!({
        "command": "orbit",
        "symbol": symbol_json(cfg),
        "input": input,
        "method": trace.method,
        "norms": trace.norms,
        "image_half_width": image.half_width(),
        "image_sampled_norm": image.norm(),
        "sup": trace.sup(),
        "inf": trace.inf(),
        "looks_irregular": trace.looks_irregular(dynamics::IRREGULAR_LOW, dynamics::IRREGULAR_HIGH),
        "positively_expansive": report.positively_expansive.value,
        "certificate": certificate,
        "citations": [CITE_EXPANSIVE, CITE_LI_YORKE],
    });
    out.json("orbit.json", &json)?;
    Ok(Report { json, failure })
}

pub fn cesaro(cfg: &RunConfig, out: &Output, input: &str) -> Result<Report, CliError> {
    let a = cfg.bandwidth()?;
    let phi = cfg.symbol()?;
    let f = build_input(input, cfg, a)?;
    let t = dynamics::cesaro_averages(&phi, a, &f, cfg.n_max)?;
    out.write("cesaro.csv", io::cesaro_to_csv(&t))?;
    let rows = (1..=cfg.n_max).map(|n| {
        let nan = f64::NAN;
        vec![
            n as f64,
            t.average(n),
            t.bound.unwrap_or(nan),
            t.envelope_at(n).unwrap_or(nan),
        ]
    });
    out.write("cesaro.dat", io::columns(&["n", "A_n", "bound", "envelope"], rows))?;
    let failure = t.bound.and_then(|b| {
        let worst = t.averages.iter().copied().fold(0.0, f64::max);
        (worst > b * (1.0 + dynamics::BOUND_TOLERANCE)).then(|| format!("max A_n = {worst} exceeds {b}"))
    });
    let json = json!({
        "command": "cesaro",
        "symbol": symbol_json(cfg),
        "input": input,
        "norm": t.norm,
        "averages": t.averages,
        "bound": t.bound,
        "envelope": t.envelope.map(|(n0, delta)| json!({ "n0": n0, "delta": delta })),
        "cesaro_bounded": t.bound.is_some(),
        "citation": CITE_CESARO,
    });
    out.json("cesaro.json", &json)?;
    Ok(Report { json, failure })
}

pub struct ShadowArgs<'a> {
    pub input: &'a str,
    pub delta: f64,
    pub candidates: usize,
    pub export_term: Option<u32>,
}

pub fn shadow(cfg: &RunConfig, out: &Output, args: &ShadowArgs) -> Result<Report, CliError> {
    let a = cfg.bandwidth()?;
    let phi = cfg.symbol()?;
    if args.delta.is_nan() || args.delta <= 0.0 {
        return Err(CliError::Config(format!("delta must be positive, got {}", args.delta)));
    }
    let f = build_input(args.input, cfg, a)?;
    let n_max = cfg.n_max;
    let p = dynamics::build_pseudotrajectory(&phi, a, &f, args.delta, n_max)?;
    let defects = (0..n_max).map(|n| p.defect(n)).collect::<Result<Vec<_>, _>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(10);
    let gen = WellResolved::default();
    let mut traces = Vec::with_capacity(args.candidates);
    for _ in 0..args.candidates {
        let g = with_norm(&gen.sample(a, cfg.half_width, &mut rng), args.delta / 10.0);
        traces.push(dynamics::shadowing_divergence(&p, &g, n_max)?);
    }
    let mut header = vec!["n".to_string(), "L_n".to_string()];
    header.extend((1..=traces.len()).map(|k| format!("D_n_{k}")));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let lower = traces.first().map(|t| t.lower.clone()).unwrap_or_default();
    let rows = (0..=n_max as usize).map(|n| {
        let mut row = vec![n as f64, lower.get(n).copied().unwrap_or(f64::NAN)];
        row.extend(traces.iter().map(|t| t.distance[n]));
        row
    });
    out.write("shadow.dat", io::columns(&header_refs, rows))?;
    let mut csv = String::from("candidate,n,lower,distance\n");
    for (k, t) in traces.iter().enumerate() {
        for n in 0..=n_max as usize {
            csv.push_str(&format!("{},{n},{},{}\n", k + 1, t.lower[n], t.distance[n]));
        }
    }
    out.write("shadow.csv", csv)?;
    if let Some(n) = args.export_term {
        if n > n_max {
            return Err(CliError::Config(format!("export-term {n} exceeds n_max {n_max}")));
        }
        let spread = phi.c().abs().powi(-(n as i32));
        let h = (cfg.half_width as f64 * spread).ceil() as usize;
        if h > 1 << 20 {
            return Err(CliError::Config(format!("term {n} needs a window of {h} nodes")));
        }
        let mut buf = Vec::new();
        io::write_pw_binary(&p.materialize(n, h)?, &mut buf)?;
        out.write(&format!("pseudotrajectory_{n}.pwf"), buf)?;
    }
    let min_gap = traces.iter().map(|t| t.min_gap()).fold(f64::INFINITY, f64::min);
    let failure = (min_gap < -1e-8).then(|| format!("D_n fell below L_n by {}", -min_gap));
    let json = json!({
        "command": "shadow",
        "symbol": symbol_json(cfg),
        "input": args.input,
        "delta": args.delta,
        "alpha": cx_json(p.alpha),
        "kappa": p.kappa,
        "defects": defects,
        "candidates": traces.len(),
        "candidate_norm": args.delta / 10.0,
        "slope": traces.first().map(|t| t.slope),
        "min_gap": min_gap,
        "citations": [CITE_SHADOWING, CITE_PSEUDO],
    });
    out.json("shadow.json", &json)?;
    Ok(Report { json, failure })
}

pub fn classify_cmd(cfg: &RunConfig, out: &Output) -> Result<Report, CliError> {
    let a = cfg.bandwidth()?;
    let phi = cfg.symbol()?;
    let report = classify(&phi, a);
    let (lower, upper) = norm_bounds(&phi, a);
    let json = json!({
        "command": "classify",
        "symbol": symbol_json(cfg),
        "expansive": report.positively_expansive.value,
        "cesaro": report.cesaro_bounded.value,
        "report": report,
        "closed_range_reason": closed_range_fact(&phi).justification(),
        "spectrum": spectrum_closed_form(&phi, a),
        "spectral_radius": spectral::spectral_radius_closed(&phi, a),
        "norm_bounds": [lower, upper],
    });
    out.json("classify.json", &json)?;
    Ok(Report::ok(json))
}

pub fn verify_cmd(out: &Output, profile: &VerifyProfile, only: &[u32]) -> Result<Report, CliError> {
    let reports: Vec<_> = verify::CRITERIA
        .iter()
        .filter(|c| only.is_empty() || only.contains(&c.id))
        .map(|c| {
            let r = c.run(profile);
            eprintln!("{}", r.line());
            r
        })
        .collect();
    let failed: Vec<u32> = reports.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    let lines: String = reports.iter().map(|r| r.line() + "\n").collect();
    out.write("verify.txt", lines)?;
    let json = json!({
        "command": "verify",
        "profile": profile,
        "passed": reports.len() - failed.len(),
        "failed": failed,
        "criteria": reports,
    });
    out.json("verify.json", &json)?;
    let failure = (!failed.is_empty()).then(|| format!("criteria {failed:?} failed"));
    Ok(Report { json, failure })
}
