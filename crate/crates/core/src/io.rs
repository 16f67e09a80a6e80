//! Serialization: JSON records, the `PWF1`/`PWM1` little-endian binary formats, and
//! CSV / whitespace-column text for plotting.
//!
//! Floats are written with Rust's shortest round-trip formatting, so text output is
//! byte-identical across runs.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{CesaroTrace, OrbitTrace};
use crate::equivalence::L2Function;
use crate::error::{PwError, Result};
use crate::function::PwFunction;
use crate::spectral::{OperatorMatrix, SpectrumDescriptor};
use crate::symbol::{AffineSymbol, Bandwidth};

pub const PWF_MAGIC: &[u8; 4] = b"PWF1";
pub const PWM_MAGIC: &[u8; 4] = b"PWM1";

fn pairs(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|v| [v.re, v.im]).collect()
}

fn unpairs(values: &[[f64; 2]]) -> Vec<Complex64> {
    values.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct PwRecord {
    a: f64,
    #[serde(rename = "N")]
    n: usize,
    samples: Vec<[f64; 2]>,
}

pub fn pw_to_json(f: &PwFunction) -> Result<String> {
    let rec = PwRecord {
        a: f.bandwidth().value(),
        n: f.half_width(),
        samples: pairs(f.samples()),
    };
    Ok(serde_json::to_string(&rec)?)
}

pub fn pw_from_json(s: &str) -> Result<PwFunction> {
    let rec: PwRecord = serde_json::from_str(s)?;
    if rec.samples.len() != 2 * rec.n + 1 {
        return Err(PwError::Format(format!(
            "N = {} but {} samples",
            rec.n,
            rec.samples.len()
        )));
    }
    PwFunction::new(Bandwidth::new(rec.a)?, unpairs(&rec.samples))
}

fn put_f64(w: &mut impl Write, x: f64) -> Result<()> {
    w.write_all(&x.to_le_bytes())?;
    Ok(())
}

fn get_f64(r: &mut impl Read) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

fn get_u64(r: &mut impl Read) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn expect_magic(r: &mut impl Read, magic: &[u8; 4]) -> Result<()> {
    let mut m = [0u8; 4];
    r.read_exact(&mut m)?;
    if &m != magic {
        return Err(PwError::Format(format!(
            "bad magic {:?}, expected {:?}",
            String::from_utf8_lossy(&m),
            String::from_utf8_lossy(magic)
        )));
    }
    Ok(())
}

fn read_pairs(r: &mut impl Read, count: usize) -> Result<Vec<Complex64>> {
    (0..count)
        .map(|_| Ok(Complex64::new(get_f64(r)?, get_f64(r)?)))
        .collect()
}

/// `"PWF1"`, `a` (f64), `N` (u64), then `2N+1` pairs `(re, im)`.
pub fn write_pw_binary(f: &PwFunction, w: &mut impl Write) -> Result<()> {
    w.write_all(PWF_MAGIC)?;
    put_f64(w, f.bandwidth().value())?;
    w.write_all(&(f.half_width() as u64).to_le_bytes())?;
    for v in f.samples() {
        put_f64(w, v.re)?;
        put_f64(w, v.im)?;
    }
    Ok(())
}

pub fn read_pw_binary(r: &mut impl Read) -> Result<PwFunction> {
    expect_magic(r, PWF_MAGIC)?;
    let a = Bandwidth::new(get_f64(r)?)?;
    let n = get_u64(r)? as usize;
    if n > crate::function::MAX_HALF_WIDTH {
        return Err(PwError::WindowTooLarge(n));
    }
    PwFunction::new(a, read_pairs(r, 2 * n + 1)?)
}

#[derive(Debug, Serialize, Deserialize)]
struct L2Record {
    a: f64,
    #[serde(rename = "M")]
    m: usize,
    values: Vec<[f64; 2]>,
}

pub fn l2_to_json(f: &L2Function) -> Result<String> {
    let rec = L2Record {
        a: f.bandwidth().value(),
        m: f.len(),
        values: pairs(f.values()),
    };
    Ok(serde_json::to_string(&rec)?)
}

pub fn l2_from_json(s: &str) -> Result<L2Function> {
    let rec: L2Record = serde_json::from_str(s)?;
    if rec.values.len() != rec.m {
        return Err(PwError::Format(format!("M = {} but {} values", rec.m, rec.values.len())));
    }
    Ok(L2Function::new(Bandwidth::new(rec.a)?, unpairs(&rec.values)))
}

/// `t,re,im` on the midpoint grid.
pub fn l2_to_csv(f: &L2Function) -> String {
    let mut out = String::from("t,re,im\n");
    for (t, v) in f.grid().zip(f.values()) {
        out.push_str(&format!("{t},{},{}\n", v.re, v.im));
    }
    out
}

/// `row,col,re,im` with rows and columns labelled by node index `−N..N`.
pub fn matrix_to_csv(t: &OperatorMatrix) -> String {
    let h = t.half_width as i64;
    let mut out = String::from("row,col,re,im\n");
    for i in 0..t.dim() {
        for j in 0..t.dim() {
            let v = t.entries[(i, j)];
            out.push_str(&format!("{},{},{},{}\n", i as i64 - h, j as i64 - h, v.re, v.im));
        }
    }
    out
}

/// `"PWM1"`, `a`, `c`, `Re d`, `Im d` (f64), `N` (u64), then row-major pairs.
pub fn write_matrix_binary(t: &OperatorMatrix, w: &mut impl Write) -> Result<()> {
    w.write_all(PWM_MAGIC)?;
    for x in [t.a.value(), t.phi.c(), t.phi.d().re, t.phi.d().im] {
        put_f64(w, x)?;
    }
    w.write_all(&(t.half_width as u64).to_le_bytes())?;
    for i in 0..t.dim() {
        for j in 0..t.dim() {
            let v = t.entries[(i, j)];
            put_f64(w, v.re)?;
            put_f64(w, v.im)?;
        }
    }
    Ok(())
}

pub fn read_matrix_binary(r: &mut impl Read) -> Result<OperatorMatrix> {
    expect_magic(r, PWM_MAGIC)?;
    let a = Bandwidth::new(get_f64(r)?)?;
    let c = get_f64(r)?;
    let d = Complex64::new(get_f64(r)?, get_f64(r)?);
    let phi = AffineSymbol::new(c, d)?;
    let h = get_u64(r)? as usize;
    if h > 1 << 14 {
        return Err(PwError::WindowTooLarge(h));
    }
    let dim = 2 * h + 1;
    let data = read_pairs(r, dim * dim)?;
    Ok(OperatorMatrix {
        a,
        phi,
        half_width: h,
        entries: nalgebra::DMatrix::from_row_slice(dim, dim, &data),
    })
}

#[derive(Debug, Serialize)]
struct SpectrumRecord<'a> {
    symbol: AffineSymbol,
    a: f64,
    descriptor: &'a SpectrumDescriptor,
    radius: f64,
    boundary: Vec<[f64; 2]>,
}

/// The descriptor with `samples` boundary points for plotting.
pub fn spectrum_to_json(
    phi: &AffineSymbol,
    a: Bandwidth,
    descriptor: &SpectrumDescriptor,
    radius: f64,
    samples: usize,
) -> Result<String> {
    let rec = SpectrumRecord {
        symbol: *phi,
        a: a.value(),
        descriptor,
        radius,
        boundary: pairs(&descriptor.boundary(samples)),
    };
    Ok(serde_json::to_string_pretty(&rec)?)
}

/// `n,value` rows starting at `first`.
pub fn sequence_to_csv(first: usize, values: &[f64]) -> String {
    let mut out = String::from("n,value\n");
    for (k, v) in values.iter().enumerate() {
        out.push_str(&format!("{},{v}\n", first + k));
    }
    out
}

pub fn orbit_to_csv(t: &OrbitTrace) -> String {
    sequence_to_csv(0, &t.norms)
}

pub fn cesaro_to_csv(t: &CesaroTrace) -> String {
    sequence_to_csv(1, &t.averages)
}

/// Whitespace-separated columns with a `#` header line, as read by gnuplot.
pub fn columns(header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut out = format!("# {}\n", header.join(" "));
    for row in rows {
        let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::build_matrix;

    fn sample() -> PwFunction {
        let a = Bandwidth::new(1.5).unwrap();
        PwFunction::from_fn(a, 3, |x| Complex64::new(x.sin(), 0.1 * x - 1.0 / 3.0))
    }

    #[test]
    fn pw_json_round_trip() {
        let f = sample();
        let s = pw_to_json(&f).unwrap();
        assert!(s.starts_with("{\"a\":1.5,\"N\":3,\"samples\":[["));
        assert_eq!(pw_from_json(&s).unwrap(), f);
        assert!(pw_from_json(r#"{"a":1,"N":1,"samples":[[0,0]]}"#).is_err());
        assert!(pw_from_json(r#"{"a":-1,"N":0,"samples":[[0,0]]}"#).is_err());
    }

    #[test]
    fn pw_binary_round_trip() {
        let f = sample();
        let mut buf = Vec::new();
        write_pw_binary(&f, &mut buf).unwrap();
        assert_eq!(&buf[..4], b"PWF1");
        assert_eq!(buf.len(), 4 + 8 + 8 + 7 * 16);
        assert_eq!(f64::from_le_bytes(buf[4..12].try_into().unwrap()), 1.5);
        assert_eq!(read_pw_binary(&mut buf.as_slice()).unwrap(), f);
        buf[0] = b'X';
        assert!(matches!(read_pw_binary(&mut buf.as_slice()), Err(PwError::Format(_))));
        assert!(read_pw_binary(&mut &b"PWF1"[..]).is_err());
    }

    #[test]
    fn l2_formats() {
        let f = L2Function::from_fn(Bandwidth::new(1.0).unwrap(), 4, |t| Complex64::new(t, -t));
        let back = l2_from_json(&l2_to_json(&f).unwrap()).unwrap();
        assert_eq!(back.values(), f.values());
        let csv = l2_to_csv(&f);
        assert_eq!(csv.lines().next(), Some("t,re,im"));
        assert_eq!(csv.lines().nth(1), Some("-0.75,-0.75,0.75"));
    }

    #[test]
    fn matrix_formats() {
        let phi = AffineSymbol::new(0.5, Complex64::new(0.2, 0.3)).unwrap();
        let t = build_matrix(&phi, Bandwidth::pi(), 2).unwrap();
        let csv = matrix_to_csv(&t);
        assert_eq!(csv.lines().count(), 1 + 25);
        assert!(csv.lines().nth(1).unwrap().starts_with("-2,-2,"));
        let mut buf = Vec::new();
        write_matrix_binary(&t, &mut buf).unwrap();
        assert_eq!(buf.len(), 4 + 5 * 8 + 25 * 16);
        let back = read_matrix_binary(&mut buf.as_slice()).unwrap();
        assert_eq!(back.entries, t.entries);
        assert_eq!(back.phi, phi);
    }

    #[test]
    fn text_columns() {
        assert_eq!(sequence_to_csv(1, &[0.5, 2.0]), "n,value\n1,0.5\n2,2\n");
        assert_eq!(columns(&["x", "y"], vec![vec![1.0, 0.25]]), "# x y\n1 0.25\n");
    }
}
