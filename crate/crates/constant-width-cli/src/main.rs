//! Command-line front end: one invocation is one job, batch by shell.
//! Exit codes: 0 all checks pass, 1 check failures (report written),
//! 2 configuration or input errors.

mod job;

use clap::{Args, Parser, Subcommand};
use constant_width::export::ProfileSpec;
use job::{execute, JobConfig, SeedSpec};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cwidth",
    about = "Construct and verify solids and curves of constant width",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOut {
    /// Primary artifact path; the extension picks the format
    #[arg(long)]
    out: Option<PathBuf>,
    /// Additional CSV artifact
    #[arg(long)]
    csv: Option<PathBuf>,
    /// JSON verification report path
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write the effective configuration (defaults filled in) as TOML
    #[arg(long)]
    emit_config: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct SeedArgs {
    /// Builtin seed name: cos3theta, xyz or random-cubic
    #[arg(long)]
    seed: Option<String>,
    /// Seed scale
    #[arg(long)]
    eps: Option<f64>,
    /// Seed definition file (TOML with dimension and terms)
    #[arg(long)]
    seed_file: Option<PathBuf>,
    /// RNG seed for randomized pieces
    #[arg(long)]
    rng_seed: Option<u64>,
}

impl SeedArgs {
    fn to_spec(&self) -> Result<Option<SeedSpec>, String> {
        match (&self.seed, &self.seed_file) {
            (Some(name), None) => {
                let mut spec = SeedSpec::builtin(name, self.eps);
                spec.rng_seed = self.rng_seed;
                Ok(Some(spec))
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                let spec: SeedSpec = toml::from_str(&text).map_err(|e| e.to_string())?;
                Ok(Some(spec))
            }
            (None, None) => Ok(None),
            (Some(_), Some(_)) => Err("give either --seed or --seed-file, not both".into()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a constant-width body from a seed function
    Construct {
        #[command(flatten)]
        seed: SeedArgs,
        /// Width; defaults to 1.05 times the sampled critical width
        #[arg(long)]
        r: Option<f64>,
        /// Direction sample count
        #[arg(long)]
        dirs: Option<usize>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Build the homotopy family joining the ball to the full body
    Family {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        r: Option<f64>,
        /// Explicit homotopy parameters (ascending, in [0, 1])
        #[arg(long, value_delimiter = ',')]
        lambdas: Option<Vec<f64>>,
        /// Uniform parameter step when no explicit list is given
        #[arg(long)]
        lambda_step: Option<f64>,
        #[arg(long)]
        dirs: Option<usize>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Sampled critical width of a seed, with the extremal direction
    Rstar {
        #[command(flatten)]
        seed: SeedArgs,
        /// Initial direction sample count for the refinement loop
        #[arg(long)]
        dirs: Option<usize>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Synthesize a planar curve from a curvature profile
    Planar {
        /// Inline JSON profile spec
        #[arg(long)]
        profile_json: Option<String>,
        /// JSON profile spec file
        #[arg(long)]
        profile_file: Option<PathBuf>,
        #[arg(long)]
        r: Option<f64>,
        /// Curve integration steps
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        dirs: Option<usize>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// The Reuleaux polygon with 2k + 1 vertices
    Reuleaux {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        dirs: Option<usize>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Embed a curvature-bounded curve piece into a constant-width boundary
    EmbedArc {
        /// Normal-angle span of the piece (at most pi/3)
        #[arg(long)]
        theta_star: f64,
        /// Constant radius of curvature
        #[arg(long)]
        rho_const: Option<f64>,
        /// CSV of (t, rho) samples
        #[arg(long)]
        rho_csv: Option<PathBuf>,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Complete a point cloud to a diametrically maximal set on a grid
    Complete {
        /// Input cloud CSV
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        r: f64,
        /// Grid step; defaults so the box spans at most 400 steps per axis
        /// in the plane (120 in space)
        #[arg(long)]
        grid_step: Option<f64>,
        /// Norm: euclidean or l-infinity
        #[arg(long)]
        norm: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Verify constant-width invariants of a point cloud
    Verify {
        /// Input cloud CSV
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        norm: Option<String>,
        #[arg(long)]
        dirs: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        rng_seed: Option<u64>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Run a job described by a TOML config file
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

fn parse_norm(s: &Option<String>) -> Result<Option<constant_width::geom::Norm>, String> {
    match s.as_deref() {
        None => Ok(None),
        Some("euclidean") => Ok(Some(constant_width::geom::Norm::Euclidean)),
        Some("linf") | Some("l-infinity") => Ok(Some(constant_width::geom::Norm::LInfinity)),
        Some(other) => Err(format!("unknown norm '{other}' (euclidean or linf)")),
    }
}

fn apply_out(cfg: &mut JobConfig, out: &CommonOut) {
    cfg.out = out.out.clone();
    cfg.csv = out.csv.clone();
    cfg.report = out.report.clone();
    cfg.emit_config = out.emit_config.clone();
}

fn build_config(command: Command) -> Result<JobConfig, String> {
    Ok(match command {
        Command::Construct { seed, r, dirs, out } => {
            let mut cfg = JobConfig::empty("construct");
            cfg.seed = seed.to_spec()?;
            cfg.r = r;
            cfg.directions = dirs;
            apply_out(&mut cfg, &out);
            cfg
        }
        Command::Family {
            seed,
            r,
            lambdas,
            lambda_step,
            dirs,
            out,
        } => {
            let mut cfg = JobConfig::empty("family");
            cfg.seed = seed.to_spec()?;
            cfg.r = r;
            cfg.lambdas = lambdas;
            cfg.lambda_step = lambda_step;
            cfg.directions = dirs;
            apply_out(&mut cfg, &out);
            cfg
        }
        Command::Rstar { seed, dirs, out } => {
            let mut cfg = JobConfig::empty("rstar");
            cfg.seed = seed.to_spec()?;
            cfg.directions = dirs;
            apply_out(&mut cfg, &out);
            cfg
        }
        Command::Planar {
            profile_json,
            profile_file,
            r,
            steps,
            dirs,
            out,
        } => {
            let mut cfg = JobConfig::empty("planar");
            cfg.profile = match (profile_json, profile_file) {
                (Some(json), None) => Some(ProfileSpec::from_json(&json).map_err(|e| e.to_string())?),
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
                    Some(ProfileSpec::from_json(&text).map_err(|e| e.to_string())?)
                }
                (None, None) => return Err("planar needs --profile-json or --profile-file".into()),
                _ => return Err("give one of --profile-json or --profile-file".into()),
            };
            cfg.r = r;
            cfg.steps = steps;
            cfg.directions = dirs;
            apply_out(&mut cfg, &out);
            cfg
        }
        Command::Reuleaux {
            k,
            r,
            steps,
            dirs,
            out,
        } => {
            let mut cfg = JobConfig::empty("reuleaux");
            cfg.k = Some(k);
            cfg.r = r;
            cfg.steps = steps;
            cfg.directions = dirs;
            apply_out(&mut cfg, &out);
            cfg
        }
        Command::EmbedArc {
            theta_star,
            rho_const,
            rho_csv,
            r,
            steps,
            out,
        } => {
            let mut cfg = JobConfig::empty("embed-arc");
            cfg.theta_star = Some(theta_star);
            cfg.rho_const = rho_const;
            cfg.rho_csv = rho_csv;
            cfg.r = r;
            cfg.steps = steps;
            apply_out(&mut cfg, &out);
            cfg
        }
        Command::Complete {
            input,
            r,
            grid_step,
            norm,
            tol,
            out,
        } => {
            let mut cfg = JobConfig::empty("complete");
            cfg.input = Some(input);
            cfg.r = Some(r);
            cfg.grid_step = grid_step;
            cfg.norm = parse_norm(&norm)?;
            cfg.tol = tol;
            apply_out(&mut cfg, &out);
            cfg
        }
        Command::Verify {
            input,
            r,
            norm,
            dirs,
            tol,
            rng_seed,
            out,
        } => {
            let mut cfg = JobConfig::empty("verify");
            cfg.input = Some(input);
            cfg.r = Some(r);
            cfg.norm = parse_norm(&norm)?;
            cfg.directions = dirs;
            cfg.tol = tol;
            cfg.rng_seed = rng_seed;
            apply_out(&mut cfg, &out);
            cfg
        }
        Command::Run { config } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| format!("cannot read {}: {e}", config.display()))?;
            JobConfig::from_toml(&text).map_err(|e| e.to_string())?
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(cli.command) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match execute(cfg) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                if let Some(path) = &outcome.report_path {
                    eprintln!("checks failed; report at {}", path.display());
                } else {
                    eprintln!("checks failed");
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
