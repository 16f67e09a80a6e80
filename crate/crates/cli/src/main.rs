mod commands;
mod config;
mod error;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pwlab::verify::VerifyProfile;

use crate::commands::{Output, Report, ShadowArgs};
use crate::config::{Overrides, RunConfig, OUT_ENV};
use crate::error::CliError;

/// Composition operators on Paley-Wiener spaces.
///
/// Every subcommand prints its JSON summary to stdout and writes CSV, JSON and gnuplot
/// data files into the output directory (`--out`, else `PWLAB_OUT`, else ./pwlab-out).
#[derive(Parser, Debug)]
#[command(name = "pwlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Bandwidth a > 0.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Dilation c, real with 0 < |c| <= 1.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Translation d as re+imi, e.g. 0.5-2i.
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
    /// Window half-width N.
    #[arg(long = "n")]
    n: Option<String>,
    /// L2 grid size M.
    #[arg(long = "m")]
    m: Option<String>,
    #[arg(long)]
    n_max: Option<String>,
    /// Norm-estimation tolerance.
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    out: Option<String>,
    /// Decimal or 0x-prefixed hexadecimal.
    #[arg(long)]
    seed: Option<String>,
    /// Evaluate compositions onto ceil(N/|c|) nodes.
    #[arg(long)]
    grow_window: bool,
    /// key=value file; its entries override the flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Common {
    fn flags(&self) -> Overrides {
        let pairs = [
            ("a", &self.a),
            ("c", &self.c),
            ("d", &self.d),
            ("n", &self.n),
            ("m", &self.m),
            ("n_max", &self.n_max),
            ("tol", &self.tol),
            ("out", &self.out),
            ("seed", &self.seed),
        ];
        let mut map: Overrides = pairs
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone())))
            .collect();
        if self.grow_window {
            map.insert("grow_window".into(), "true".into());
        }
        map
    }

    fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut layers = vec![self.flags()];
        if let Some(path) = &self.config {
            layers.push(config::read_config_file(path)?);
        }
        RunConfig::resolve(std::env::var(OUT_ENV).ok(), &layers)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reproducing kernel k_w: norm, values on the real line, node samples.
    Kernel {
        #[command(flatten)]
        common: Common,
        /// Kernel point w as re+imi.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        w: String,
    },
    /// Norm of the N-section of C_phi against the closed-form bounds.
    Norm {
        #[command(flatten)]
        common: Common,
        /// Also write matrix.csv and matrix.pwm.
        #[arg(long)]
        export_matrix: bool,
    },
    /// Closed-form spectrum, boundary samples and section estimates of the radius.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 512)]
        boundary: usize,
    },
    /// Orbit norms ||C_phi^n f|| and the expansivity certificate.
    Orbit {
        #[command(flatten)]
        common: Common,
        /// random, node:K or kernel:W.
        #[arg(long, default_value = "random")]
        input: String,
    },
    /// Cesaro averages of orbit norms.
    Cesaro {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "random")]
        input: String,
    },
    /// Pseudotrajectory and divergence of candidate shadowing orbits.
    Shadow {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "node:0")]
        input: String,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long, default_value_t = 10)]
        candidates: usize,
        /// Write f_K in the PWF1 binary format.
        #[arg(long)]
        export_term: Option<u32>,
    },
    /// Operator-theoretic and dynamical properties of C_phi.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, default_value = "desk")]
        profile: String,
        /// Output directory (default PWLAB_OUT, else ./pwlab-out).
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        seed: Option<String>,
        /// Criterion ids to run (default all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let with_cfg = |common: &Common| -> Result<(RunConfig, Output), CliError> {
        let cfg = common.resolve()?;
        let out = Output::new(&cfg.out)?;
        Ok((cfg, out))
    };
    match cli.command {
        Command::Kernel { common, w } => {
            let (cfg, out) = with_cfg(&common)?;
            commands::kernel(&cfg, &out, config::parse_complex(&w)?)
        }
        Command::Norm { common, export_matrix } => {
            let (cfg, out) = with_cfg(&common)?;
            commands::norm(&cfg, &out, export_matrix)
        }
        Command::Spectrum { common, boundary } => {
            let (cfg, out) = with_cfg(&common)?;
            commands::spectrum(&cfg, &out, boundary)
        }
        Command::Orbit { common, input } => {
            let (cfg, out) = with_cfg(&common)?;
            commands::orbit(&cfg, &out, &input)
        }
        Command::Cesaro { common, input } => {
            let (cfg, out) = with_cfg(&common)?;
            commands::cesaro(&cfg, &out, &input)
        }
        Command::Shadow {
            common,
            input,
            delta,
            candidates,
            export_term,
        } => {
            let (cfg, out) = with_cfg(&common)?;
            let args = ShadowArgs {
                input: &input,
                delta,
                candidates,
                export_term,
            };
            commands::shadow(&cfg, &out, &args)
        }
        Command::Classify { common } => {
            let (cfg, out) = with_cfg(&common)?;
            commands::classify_cmd(&cfg, &out)
        }
        Command::Verify {
            profile,
            out,
            seed,
            only,
        } => {
            let mut profile = VerifyProfile::by_name(&profile)
                .ok_or_else(|| CliError::Config(format!("unknown profile {profile:?}; use desk or fast")))?;
            if let Some(s) = seed {
                profile.seed = config::parse_seed(&s)?;
            }
            let dir = out
                .or_else(|| std::env::var(OUT_ENV).ok().filter(|s| !s.is_empty()))
                .unwrap_or_else(|| RunConfig::default().out.display().to_string());
            let out = Output::new(std::path::Path::new(&dir))?;
            commands::verify_cmd(&out, &profile, &only)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(
                std::io::stdout().lock(),
                "{}",
                serde_json::to_string_pretty(&report.json).expect("serializable")
            );
            match report.failure {
                None => ExitCode::SUCCESS,
                Some(msg) => {
                    eprintln!("pwlab: check failed: {msg}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("pwlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
