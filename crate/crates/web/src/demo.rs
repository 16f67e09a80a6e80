use pwlab::dynamics::{cesaro_averages, classify, orbit_norms};
use pwlab::random::WellResolved;
use pwlab::spectral::{norm_bounds, spectral_radius_closed, spectrum_closed_form};
use pwlab::{AffineSymbol, Bandwidth, Complex64, PwFunction, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

/// Window half-width of the demo inputs; small enough for an interactive page.
pub const HALF_WIDTH: usize = 48;
pub const MAX_POINTS: usize = 4096;
pub const MAX_ORBIT: u32 = 60;

#[derive(Debug, Clone, Copy)]
pub struct SymbolInput {
    pub a: f64,
    pub c: f64,
    pub d_re: f64,
    pub d_im: f64,
}

impl SymbolInput {
    fn resolve(&self) -> Result<(Bandwidth, AffineSymbol)> {
        let a = Bandwidth::new(self.a)?;
        let phi = AffineSymbol::new(self.c, Complex64::new(self.d_re, self.d_im))?;
        Ok((a, phi))
    }
}

fn input(a: Bandwidth, seed: u64) -> PwFunction {
    WellResolved::default().sample_unit(a, HALF_WIDTH, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn composition_curves(s: &SymbolInput, seed: u64, x_max: f64, points: usize) -> Result<String> {
    let (a, phi) = s.resolve()?;
    let points = points.clamp(2, MAX_POINTS);
    let x_max = if x_max.is_finite() && x_max > 0.0 { x_max } else { 20.0 };
    let f = input(a, seed);
    let mut curves = [vec![], vec![], vec![], vec![], vec![]];
    for j in 0..points {
        let x = -x_max + 2.0 * x_max * j as f64 / (points - 1) as f64;
        let z = Complex64::new(x, 0.0);
        let (fx, gx) = (f.eval(z), f.eval(phi.apply(z)));
        for (curve, v) in curves.iter_mut().zip([x, fx.re, fx.im, gx.re, gx.im]) {
            curve.push(v);
        }
    }
    let [x, f_re, f_im, g_re, g_im] = curves;
    let (lower, upper) = norm_bounds(&phi, a);
    Ok(json!({
        "x": x,
        "f_re": f_re,
        "f_im": f_im,
        "g_re": g_re,
        "g_im": g_im,
        "norm_f": f.norm(),
        "norm_g": f.composed_norm_sq(&phi).sqrt(),
        "bounds": [lower, upper],
    })
    .to_string())
}

pub fn spectrum(s: &SymbolInput, boundary_points: usize) -> Result<String> {
    let (a, phi) = s.resolve()?;
    let descriptor = spectrum_closed_form(&phi, a);
    let boundary = descriptor.boundary(boundary_points.clamp(2, MAX_POINTS));
    let (lower, upper) = norm_bounds(&phi, a);
    Ok(json!({
        "descriptor": descriptor,
        "re": boundary.iter().map(|z| z.re).collect::<Vec<_>>(),
        "im": boundary.iter().map(|z| z.im).collect::<Vec<_>>(),
        "radius": spectral_radius_closed(&phi, a),
        "bounds": [lower, upper],
    })
    .to_string())
}

pub fn orbit_growth(s: &SymbolInput, seed: u64, n_max: u32) -> Result<String> {
    let (a, phi) = s.resolve()?;
    let n_max = n_max.clamp(1, MAX_ORBIT);
    let f = input(a, seed);
    let orbit = orbit_norms(&phi, a, &f, n_max)?;
    let cesaro = cesaro_averages(&phi, a, &f, n_max)?;
    let report = classify(&phi, a);
    let flags: serde_json::Map<String, serde_json::Value> = report
        .flags()
        .iter()
        .map(|(name, flag)| (name.to_string(), json!(flag.value)))
        .collect();
    Ok(json!({
        "norms": orbit.norms,
        "averages": cesaro.averages,
        "cesaro_bound": cesaro.bound,
        "flags": flags,
    })
    .to_string())
}
