//! Closed-form classification of `C_φ` and the orbit certificate for expansivity.

use serde::{Deserialize, Serialize};

use super::growth::{default_level, growth_constant_second_scan, growth_constant_third};
use super::{orbit_norms, BOUND_TOLERANCE};
use crate::error::{PwError, Result};
use crate::function::PwFunction;
use crate::symbol::{AffineSymbol, Bandwidth};

pub const CITE_NORMAL: &str = "C_phi is normal iff c = 1, or c = -1 and d is real";
pub const CITE_UNITARY: &str = "C_phi is unitary iff |c| = 1 and d is real";
pub const CITE_INVERTIBLE: &str = "C_phi is invertible iff |c| = 1";
pub const CITE_COMPACT: &str = "no composition operator on PW_a is compact";
pub const CITE_CLOSED_RANGE: &str = "every bounded composition operator on PW_a has closed range";
pub const CITE_LI_YORKE: &str = "no bounded composition operator on PW_a is Li-Yorke chaotic";
pub const CITE_EXPANSIVE: &str = "C_phi is positively expansive iff 0 < |c| < 1, or c = 1 and d is not real";
pub const CITE_CESARO: &str = "C_phi is absolutely Cesaro bounded iff c = -1, or c = 1 and d is real";
pub const CITE_SHADOWING: &str = "no bounded composition operator on PW_a has the positive shadowing property";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    pub value: bool,
    pub citation: String,
}

fn flag(value: bool, citation: &str) -> Flag {
    Flag {
        value,
        citation: citation.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub symbol: AffineSymbol,
    pub a: Bandwidth,
    pub normal: Flag,
    pub unitary: Flag,
    pub invertible: Flag,
    pub compact: Flag,
    pub closed_range: Flag,
    pub li_yorke: Flag,
    pub positively_expansive: Flag,
    pub cesaro_bounded: Flag,
    pub shadowing: Flag,
}

impl PropertyReport {
    pub fn flags(&self) -> [(&'static str, &Flag); 9] {
        [
            ("normal", &self.normal),
            ("unitary", &self.unitary),
            ("invertible", &self.invertible),
            ("compact", &self.compact),
            ("closed_range", &self.closed_range),
            ("li_yorke", &self.li_yorke),
            ("positively_expansive", &self.positively_expansive),
            ("cesaro_bounded", &self.cesaro_bounded),
            ("shadowing", &self.shadowing),
        ]
    }

    pub fn citation_strings(&self) -> impl Iterator<Item = &str> {
        self.flags().into_iter().map(|(_, f)| f.citation.as_str())
    }
}

/// Table lookup on `(c, Im d)`.
pub fn classify(phi: &AffineSymbol, a: Bandwidth) -> PropertyReport {
    let c = phi.c();
    let real = phi.has_real_translation();
    PropertyReport {
        symbol: *phi,
        a,
        normal: flag(c == 1.0 || (c == -1.0 && real), CITE_NORMAL),
        unitary: flag(phi.is_invertible() && real, CITE_UNITARY),
        invertible: flag(phi.is_invertible(), CITE_INVERTIBLE),
        compact: flag(false, CITE_COMPACT),
        closed_range: flag(true, CITE_CLOSED_RANGE),
        li_yorke: flag(false, CITE_LI_YORKE),
        positively_expansive: flag(c.abs() < 1.0 || (c == 1.0 && !real), CITE_EXPANSIVE),
        cesaro_bounded: flag(c == -1.0 || (c == 1.0 && real), CITE_CESARO),
        shadowing: flag(false, CITE_SHADOWING),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExpansivityCertificate {
    /// `‖C_φ^{n*} f‖ ≥ 2` for the normalized input, found within `cap`.
    Expansive {
        n_star: u32,
        norm: f64,
        delta: f64,
        cap: u32,
    },
    /// `sup_n ‖C_φⁿ f‖ ≤ bound·(1 + tol)` over the horizon.
    BoundedOrbit { sup: f64, bound: f64, horizon: u32 },
}

impl ExpansivityCertificate {
    pub fn is_expansive(&self) -> bool {
        matches!(self, ExpansivityCertificate::Expansive { .. })
    }
}

/// Horizon for bounded orbits; the orbit is periodic or isometric, so any is enough.
pub const BOUNDED_HORIZON: u32 = 40;

fn level_grid(f: &PwFunction) -> usize {
    (4 * f.half_width() + 2).next_power_of_two().max(4096)
}

pub fn expansivity_certificate(phi: &AffineSymbol, a: Bandwidth, f: &PwFunction) -> Result<ExpansivityCertificate> {
    super::check_bandwidth(a, f)?;
    let f = f.normalized()?;
    let report = classify(phi, a);
    let c = phi.c();
    let im = phi.d().im.abs();
    if !report.positively_expansive.value {
        let trace = orbit_norms(phi, a, &f, BOUNDED_HORIZON)?;
        let bound = (im * a.value()).exp();
        let sup = trace.sup();
        if sup > bound * (1.0 + BOUND_TOLERANCE) {
            return Err(PwError::BoundExceeded { sup, bound });
        }
        return Ok(ExpansivityCertificate::BoundedOrbit {
            sup,
            bound,
            horizon: BOUNDED_HORIZON,
        });
    }
    let (delta, rate) = if c.abs() < 1.0 {
        let g = growth_constant_second_scan(phi, a, &f)?;
        (g.delta, -0.5 * c.abs().ln())
    } else {
        let m = level_grid(&f);
        let g = growth_constant_third(phi.d(), a, &f, default_level(&f, m), m)?;
        (g.delta, im * a.value())
    };
    let cap = ((2.0 / delta).ln() / rate).ceil().max(0.0) as u32 + 10;
    let trace = orbit_norms(phi, a, &f, cap)?;
    match trace.norms.iter().position(|&v| v >= 2.0) {
        Some(n) => Ok(ExpansivityCertificate::Expansive {
            n_star: n as u32,
            norm: trace.norms[n],
            delta,
            cap,
        }),
        None => Err(PwError::CapExceeded { cap: cap as usize, delta }),
    }
}
