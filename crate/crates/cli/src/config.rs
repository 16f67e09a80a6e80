//! Run configuration: defaults, then `PWLAB_OUT`, then flags, then a `key=value` file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use pwlab::random::DEFAULT_SEED;
use pwlab::{AffineSymbol, Bandwidth};
use serde::Serialize;

use crate::error::CliError;

pub const OUT_ENV: &str = "PWLAB_OUT";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub a: f64,
    pub c: f64,
    pub d: Complex64,
    /// Window half-width `N`.
    pub half_width: usize,
    /// `L²` grid size `M`.
    pub grid: usize,
    pub n_max: u32,
    pub tol: f64,
    pub out: PathBuf,
    pub seed: u64,
    pub grow_window: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            a: 1.0,
            c: 1.0,
            d: Complex64::new(0.0, 0.0),
            half_width: 128,
            grid: 4096,
            n_max: 12,
            tol: 1e-10,
            out: PathBuf::from("pwlab-out"),
            seed: DEFAULT_SEED,
            grow_window: false,
        }
    }
}

/// Unresolved settings as strings, keyed like the config file.
pub type Overrides = BTreeMap<String, String>;

pub const KEYS: [&str; 10] = ["a", "c", "d", "n", "m", "n_max", "tol", "out", "seed", "grow_window"];

pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|_| CliError::Config(format!("cannot parse complex number {s:?}; use the form re+imi, e.g. 0.5-2i")))
}

fn parse_f64(key: &str, s: &str) -> Result<f64, CliError> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| CliError::Config(format!("{key}: cannot parse {s:?} as a number")))
}

fn parse_int<T: std::str::FromStr>(key: &str, s: &str) -> Result<T, CliError> {
    s.trim()
        .parse::<T>()
        .map_err(|_| CliError::Config(format!("{key}: cannot parse {s:?} as a non-negative integer")))
}

pub fn parse_seed(s: &str) -> Result<u64, CliError> {
    let t = s.trim().replace('_', "");
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map_err(|_| CliError::Config(format!("seed: cannot parse {s:?}")))
}

fn parse_bool(key: &str, s: &str) -> Result<bool, CliError> {
    match s.trim() {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        _ => Err(CliError::Config(format!("{key}: expected true or false, got {s:?}"))),
    }
}

/// `key = value` lines; `#` starts a comment, blank lines are skipped.
pub fn parse_config_file(text: &str) -> Result<Overrides, CliError> {
    let mut out = Overrides::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("config line {}: expected key=value, got {raw:?}", i + 1)))?;
        let key = key.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Config(format!("config line {}: unknown key {key:?}", i + 1)));
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

pub fn read_config_file(path: &Path) -> Result<Overrides, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config file {}: {e}", path.display())))?;
    parse_config_file(&text)
}

impl RunConfig {
    /// Applies the layers in order; later layers win.
    pub fn resolve(env_out: Option<String>, layers: &[Overrides]) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(out) = env_out.filter(|s| !s.is_empty()) {
            cfg.out = PathBuf::from(out);
        }
        for layer in layers {
            for (key, value) in layer {
                cfg.set(key, value)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "a" => self.a = parse_f64(key, value)?,
            "c" => self.c = parse_f64(key, value)?,
            "d" => self.d = parse_complex(value)?,
            "n" => self.half_width = parse_int(key, value)?,
            "m" => self.grid = parse_int(key, value)?,
            "n_max" => self.n_max = parse_int(key, value)?,
            "tol" => self.tol = parse_f64(key, value)?,
            "out" => self.out = PathBuf::from(value.trim()),
            "seed" => self.seed = parse_seed(value)?,
            "grow_window" => self.grow_window = parse_bool(key, value)?,
            _ => return Err(CliError::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    fn validate(&self) -> Result<(), CliError> {
        self.bandwidth()?;
        self.symbol()?;
        if self.half_width < 1 {
            return Err(CliError::Config("n: window half-width must be at least 1".into()));
        }
        if self.grid < 2 * self.half_width + 1 {
            return Err(CliError::Config(format!(
                "m: grid size {} must be at least 2N+1 = {}",
                self.grid,
                2 * self.half_width + 1
            )));
        }
        if self.n_max < 1 {
            return Err(CliError::Config("n_max must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(CliError::Config(format!("tol must lie in (0, 1), got {}", self.tol)));
        }
        Ok(())
    }

    pub fn bandwidth(&self) -> Result<Bandwidth, CliError> {
        Ok(Bandwidth::new(self.a)?)
    }

    pub fn symbol(&self) -> Result<AffineSymbol, CliError> {
        Ok(AffineSymbol::new(self.c, self.d)?)
    }

    pub fn window(&self) -> pwlab::Window {
        if self.grow_window {
            pwlab::Window::Grow
        } else {
            pwlab::Window::Same
        }
    }
}
