//! Elementary kernels: `sin(πx)` with exact argument reduction, the normalized
//! sinc, and the reproducing kernel `k_w(z) = sin a(z − w̄) / π(z − w̄)`.
//!
//! All complex sines go through `sin(x+iy) = sin x cosh y + i cos x sinh y`,
//! which has no subtractive cancellation and overflows only with `cosh`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::symbol::Bandwidth;

/// Below this `|u|` the sinc and kernel switch to their Taylor series.
pub const SERIES_SWITCH: f64 = 1e-4;

/// Splits `x = k + r` with `k` an integer and `|r| ≤ 1/2`. Exact in floating point.
#[inline]
fn reduce_half(x: f64) -> (f64, f64) {
    let k = x.round();
    (k, x - k)
}

#[inline]
fn parity_sign(k: f64) -> f64 {
    if (k * 0.5).fract() == 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// `sin(πx)`; exactly zero at integers.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let (k, r) = reduce_half(x);
    parity_sign(k) * (PI * r).sin()
}

/// `cos(πx)`; exactly `±1` at integers.
pub fn cos_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let (k, r) = reduce_half(x);
    parity_sign(k) * (PI * r).cos()
}

/// `sin(πζ)` for complex `ζ`.
pub fn csin_pi(z: Complex64) -> Complex64 {
    let y = PI * z.im;
    Complex64::new(sin_pi(z.re) * y.cosh(), cos_pi(z.re) * y.sinh())
}

/// `sin z` for complex `z`.
pub fn csin(z: Complex64) -> Complex64 {
    Complex64::new(z.re.sin() * z.im.cosh(), z.re.cos() * z.im.sinh())
}

#[inline]
fn sinc_series(u: Complex64) -> Complex64 {
    let u2 = u * u;
    Complex64::new(1.0, 0.0) - u2 / 6.0 + u2 * u2 / 120.0
}

/// `sin(u)/u` with value 1 at the origin.
pub fn sinc(u: Complex64) -> Complex64 {
    if u.norm() < SERIES_SWITCH {
        sinc_series(u)
    } else {
        csin(u) / u
    }
}

/// Normalized sinc `sin(πs)/(πs)` in node units; exactly `δ_{s,0}` at integers.
pub fn sinc_node(s: Complex64) -> Complex64 {
    let u = s * PI;
    if u.norm() < SERIES_SWITCH {
        sinc_series(u)
    } else {
        csin_pi(s) / u
    }
}

/// `sinc_a(u) = sin(au)/(au)`.
pub fn sinc_a(a: Bandwidth, u: Complex64) -> Complex64 {
    sinc(u * a.value())
}

/// Reproducing kernel `k_w(z)` of `PW_a`.
pub fn kernel_eval(a: Bandwidth, w: Complex64, z: Complex64) -> Complex64 {
    let diff = z - w.conj();
    let u = diff * a.value();
    if u.norm() < SERIES_SWITCH {
        sinc_series(u) * (a.value() / PI)
    } else {
        csin(u) / (diff * PI)
    }
}

/// `‖k_w‖² = sinh(2a Im w)/(2π Im w)`, equal to `a/π` on the real axis.
pub fn kernel_norm_sq(a: Bandwidth, w: Complex64) -> f64 {
    let a = a.value();
    let x = 2.0 * a * w.im;
    if x == 0.0 {
        a / PI
    } else if x.abs() < SERIES_SWITCH {
        let x2 = x * x;
        a / PI * (1.0 + x2 / 6.0 + x2 * x2 / 120.0)
    } else {
        x.sinh() / (2.0 * PI * w.im)
    }
}

/// A reproducing kernel `k_w` of `PW_a`, referenced by its node `w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelPoint {
    pub a: Bandwidth,
    pub w: Complex64,
}

impl KernelPoint {
    pub fn new(a: Bandwidth, w: Complex64) -> Self {
        Self { a, w }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        kernel_eval(self.a, self.w, z)
    }

    pub fn norm_sq(&self) -> f64 {
        kernel_norm_sq(self.a, self.w)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sin_pi_exact_at_integers() {
        for k in -1000..=1000 {
            assert_eq!(sin_pi(k as f64), 0.0);
            assert_eq!(cos_pi(k as f64).abs(), 1.0);
        }
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(-2.5) + 1.0).abs() < 1e-16);
        assert!((sin_pi(1e6 + 0.25) - (PI * 0.25).sin()).abs() < 1e-15);
    }

    #[test]
    fn sinc_node_is_kronecker_on_integers() {
        assert_eq!(sinc_node(cx(0.0, 0.0)), cx(1.0, 0.0));
        for k in 1..50 {
            assert_eq!(sinc_node(cx(k as f64, 0.0)), cx(0.0, 0.0));
            assert_eq!(sinc_node(cx(-(k as f64), 0.0)), cx(0.0, 0.0));
        }
    }

    #[test]
    fn sinc_series_branch_is_continuous() {
        for &t in &[0.99e-4, 1.01e-4] {
            let u = cx(t, 0.0);
            let direct = u.re.sin() / u.re;
            assert!((sinc(u).re - direct).abs() < 1e-15);
        }
    }

    #[test]
    fn kernel_examples() {
        let pi = Bandwidth::pi();
        assert!((kernel_eval(pi, cx(0.0, 0.0), cx(0.0, 0.0)) - cx(1.0, 0.0)).norm() < 1e-15);
        assert!((kernel_eval(pi, cx(0.0, 0.0), cx(0.5, 0.0)) - cx(2.0 / PI, 0.0)).norm() < 1e-15);
        // sin(i)/(πi) = sinh(1)/π
        let one = Bandwidth::new(1.0).unwrap();
        let v = kernel_eval(one, cx(0.0, 1.0), cx(0.0, 0.0));
        assert!((v - cx(0.374_078_158_191_813_4, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn kernel_norm_examples() {
        let pi = Bandwidth::pi();
        assert!((kernel_norm_sq(pi, cx(3.7, 0.0)) - 1.0).abs() < 1e-15);
        let one = Bandwidth::new(1.0).unwrap();
        assert!((kernel_norm_sq(one, cx(0.0, 1.0)) - 0.577_232_761_813_140_6).abs() < 1e-15);
        for &y in &[1e-4, 1e-6, 1e-9] {
            let rel = (kernel_norm_sq(pi, cx(0.3, y)) - 1.0).abs();
            assert!(rel < 1e-6, "y={y} rel={rel}");
        }
    }

    #[test]
    fn kernel_reproduces_its_norm() {
        // k_w(w) = ‖k_w‖²
        let a = Bandwidth::new(2.3).unwrap();
        for &w in &[cx(0.0, 0.0), cx(1.5, 0.0), cx(-0.4, 0.7), cx(2.0, -1.3), cx(0.1, 1e-7)] {
            let v = kernel_eval(a, w, w);
            assert!((v.re - kernel_norm_sq(a, w)).abs() < 1e-12 * v.re.abs());
            assert!(v.im.abs() < 1e-12);
        }
    }
}
