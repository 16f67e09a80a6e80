//! Bandwidths and affine symbols `φ(z) = cz + d`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{PwError, Result};

/// Exponential type bound `a > 0` of the space `PW_a`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Bandwidth(f64);

impl Bandwidth {
    pub fn new(a: f64) -> Result<Self> {
        if a.is_finite() && a > 0.0 {
            Ok(Self(a))
        } else {
            Err(PwError::InvalidBandwidth(a))
        }
    }

    /// The classical space `PW_π`, where the nodes are the integers.
    pub fn pi() -> Self {
        Self(PI)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Node spacing `π/a`.
    #[inline]
    pub fn spacing(self) -> f64 {
        PI / self.0
    }

    /// Grid node `πn/a`.
    #[inline]
    pub fn node(self, n: i64) -> f64 {
        PI * n as f64 / self.0
    }

    /// Converts a point to node units `az/π`, so that grid nodes become the integers.
    #[inline]
    pub fn to_node_units(self, z: Complex64) -> Complex64 {
        z * (self.0 / PI)
    }
}

impl TryFrom<f64> for Bandwidth {
    type Error = PwError;

    fn try_from(a: f64) -> Result<Self> {
        Self::new(a)
    }
}

impl From<Bandwidth> for f64 {
    fn from(a: Bandwidth) -> f64 {
        a.0
    }
}

impl fmt::Display for Bandwidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Affine symbol `φ(z) = cz + d` with `c` real, `0 < |c| ≤ 1`.
///
/// These are exactly the symbols inducing bounded composition operators on `PW_a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSymbol", into = "RawSymbol")]
pub struct AffineSymbol {
    c: f64,
    d: Complex64,
}

#[derive(Serialize, Deserialize)]
struct RawSymbol {
    c: f64,
    d: [f64; 2],
}

impl TryFrom<RawSymbol> for AffineSymbol {
    type Error = PwError;

    fn try_from(raw: RawSymbol) -> Result<Self> {
        Self::new(raw.c, Complex64::new(raw.d[0], raw.d[1]))
    }
}

impl From<AffineSymbol> for RawSymbol {
    fn from(s: AffineSymbol) -> Self {
        RawSymbol {
            c: s.c,
            d: [s.d.re, s.d.im],
        }
    }
}

impl AffineSymbol {
    pub fn new(c: f64, d: Complex64) -> Result<Self> {
        let admissible = c.is_finite() && c != 0.0 && c.abs() <= 1.0 && d.re.is_finite() && d.im.is_finite();
        if admissible {
            Ok(Self { c, d })
        } else {
            Err(PwError::InadmissibleSymbol { c, d })
        }
    }

    pub fn identity() -> Self {
        Self {
            c: 1.0,
            d: Complex64::new(0.0, 0.0),
        }
    }

    pub fn translation(d: Complex64) -> Result<Self> {
        Self::new(1.0, d)
    }

    pub fn dilation(c: f64) -> Result<Self> {
        Self::new(c, Complex64::new(0.0, 0.0))
    }

    #[inline]
    pub fn c(&self) -> f64 {
        self.c
    }

    #[inline]
    pub fn d(&self) -> Complex64 {
        self.d
    }

    #[inline]
    pub fn apply(&self, z: Complex64) -> Complex64 {
        z * self.c + self.d
    }

    pub fn is_identity(&self) -> bool {
        self.c == 1.0 && self.d == Complex64::new(0.0, 0.0)
    }

    /// `c = ±1`, the only case where `C_φ` is invertible.
    pub fn is_invertible(&self) -> bool {
        self.c.abs() == 1.0
    }

    pub fn has_real_translation(&self) -> bool {
        self.d.im == 0.0
    }

    /// The symbol `φ∘φ∘…∘φ` (`n` times), in closed form.
    pub fn iterate(&self, n: u32) -> Self {
        if n == 0 {
            return Self::identity();
        }
        if self.c == 1.0 {
            return Self {
                c: 1.0,
                d: self.d * n as f64,
            };
        }
        let cn = self.c.powi(n as i32);
        Self {
            c: cn,
            d: self.d * ((1.0 - cn) / (1.0 - self.c)),
        }
    }

    /// The fixed point `α = d/(1−c)`; attracting when `|c| < 1`.
    pub fn fixed_point(&self) -> Result<Complex64> {
        if self.c == 1.0 {
            return Err(PwError::NoFixedPoint(self.d));
        }
        Ok(self.d / (1.0 - self.c))
    }

    /// `self ∘ inner`, i.e. `z ↦ self(inner(z))`.
    pub fn after(&self, inner: &AffineSymbol) -> Self {
        Self {
            c: self.c * inner.c,
            d: inner.d * self.c + self.d,
        }
    }

    /// Splits `φ = τ ∘ σ` into the dilation `σ(z) = cz` and the translation `τ(z) = z + d`.
    pub fn factor(&self) -> (AffineSymbol, AffineSymbol) {
        (
            Self {
                c: self.c,
                d: Complex64::new(0.0, 0.0),
            },
            Self {
                c: 1.0,
                d: self.d,
            },
        )
    }
}

impl fmt::Display for AffineSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z -> {}z + ({}{:+}i)", self.c, self.d.re, self.d.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn admissibility() {
        assert!(AffineSymbol::new(0.0, cx(1.0, 0.0)).is_err());
        assert!(AffineSymbol::new(1.5, cx(0.0, 0.0)).is_err());
        assert!(AffineSymbol::new(-1.0000001, cx(0.0, 0.0)).is_err());
        assert!(AffineSymbol::new(f64::NAN, cx(0.0, 0.0)).is_err());
        assert!(AffineSymbol::new(0.5, cx(f64::INFINITY, 0.0)).is_err());
        assert!(AffineSymbol::new(-1.0, cx(3.0, 2.0)).is_ok());
        assert!(Bandwidth::new(0.0).is_err());
        assert!(Bandwidth::new(-1.0).is_err());
    }

    #[test]
    fn iterate_translation() {
        let phi = AffineSymbol::new(1.0, cx(2.0, 1.0)).unwrap();
        let it = phi.iterate(5);
        assert_eq!(it.c(), 1.0);
        assert_eq!(it.d(), cx(10.0, 5.0));
    }

    #[test]
    fn iterate_zero_is_identity() {
        let phi = AffineSymbol::new(-0.3, cx(2.0, -1.0)).unwrap();
        assert!(phi.iterate(0).is_identity());
    }

    #[test]
    fn iterate_contraction() {
        let phi = AffineSymbol::new(0.5, cx(1.0, 0.0)).unwrap();
        let it = phi.iterate(3);
        assert_eq!(it.c(), 0.125);
        assert_eq!(it.d(), cx(1.75, 0.0));
    }

    #[test]
    fn iterate_matches_repeated_composition() {
        let phi = AffineSymbol::new(-0.7, cx(0.3, -1.2)).unwrap();
        let mut acc = AffineSymbol::identity();
        for n in 1..=10 {
            acc = phi.after(&acc);
            let closed = phi.iterate(n);
            assert!((closed.c() - acc.c()).abs() < 1e-14);
            assert!((closed.d() - acc.d()).norm() < 1e-13);
        }
    }

    #[test]
    fn fixed_points() {
        let half = AffineSymbol::new(0.5, cx(1.0, 0.0)).unwrap();
        assert_eq!(half.fixed_point().unwrap(), cx(2.0, 0.0));
        let flip = AffineSymbol::new(-1.0, cx(0.0, 0.0)).unwrap();
        assert_eq!(flip.fixed_point().unwrap(), cx(0.0, 0.0));
        let flip4 = AffineSymbol::new(-1.0, cx(4.0, 0.0)).unwrap();
        assert_eq!(flip4.fixed_point().unwrap(), cx(2.0, 0.0));
        let shift = AffineSymbol::new(1.0, cx(1.0, 0.0)).unwrap();
        assert!(matches!(shift.fixed_point(), Err(PwError::NoFixedPoint(_))));
    }

    #[test]
    fn fixed_point_residual() {
        for &(c, d) in &[(0.5, cx(1.0, 2.0)), (-0.9, cx(-3.0, 0.5)), (0.999, cx(1e-3, 7.0))] {
            let phi = AffineSymbol::new(c, d).unwrap();
            let alpha = phi.fixed_point().unwrap();
            let eps = f64::EPSILON;
            assert!((phi.apply(alpha) - alpha).norm() <= 8.0 * eps * (1.0 + alpha.norm()));
        }
    }

    #[test]
    fn serde_rejects_inadmissible() {
        let ok: AffineSymbol = serde_json::from_str(r#"{"c":0.5,"d":[1.0,-2.0]}"#).unwrap();
        assert_eq!(ok.d(), cx(1.0, -2.0));
        assert!(serde_json::from_str::<AffineSymbol>(r#"{"c":2.0,"d":[0.0,0.0]}"#).is_err());
    }
}
