use std::ffi::OsString;
use std::io::Write;
use std::net::IpAddr;
use std::path::PathBuf;

use clap::{Args, Parser};
use proxigraph_core::compute::{find_algorithm, run, Params};
use proxigraph_core::io::{parse_points, write_ipe_with, InputFormat, IpeOptions, OutputFormat};

use crate::service::{self, Cors};

/// Exit code for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit code when the input data or parameters are rejected.
pub const EXIT_DATA: i32 = 1;
/// Exit code for command-line misuse.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "proxigraph",
    version,
    about = "Compute a proximity graph or clustering of a planar point set",
    after_help = "Run `proxigraph serve --help` for the HTTP service.",
    allow_negative_numbers = true
)]
pub struct RunArgs {
    /// Algorithm identifier, e.g. knn, gabriel, epsilon, dbscan.
    pub algorithm: String,
    /// Point file: CSV `x,y` lines, a JSON array of pairs, or an Ipe document.
    #[arg(long)]
    pub input: PathBuf,
    /// Defaults from the input file extension.
    #[arg(long, value_parser = parse_input_format)]
    pub input_format: Option<InputFormat>,
    /// Output file, or `-` for standard output.
    #[arg(long)]
    pub output: PathBuf,
    /// Defaults from the output file extension.
    #[arg(long, value_parser = parse_output_format)]
    pub output_format: Option<OutputFormat>,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Ipe file version written into Ipe output.
    #[arg(long, default_value = "70218")]
    pub ipe_version: String,
    /// Ipe symbol for non-noise points.
    #[arg(long, default_value = "mark/disk(sx)")]
    pub ipe_mark: String,
    #[arg(long, default_value = "normal")]
    pub ipe_mark_size: String,
}

#[derive(Debug, Args, Default)]
pub struct ParamArgs {
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub sectors: Option<u64>,
    /// Yao cone rotation in degrees.
    #[arg(long)]
    pub sector_offset: Option<f64>,
    #[arg(long)]
    pub min_pts: Option<u64>,
    #[arg(long)]
    pub min_cluster_size: Option<u64>,
    #[arg(long)]
    pub bandwidth: Option<f64>,
    /// Mean-shift mode merge distance.
    #[arg(long)]
    pub merge_tol: Option<f64>,
    #[arg(long)]
    pub target: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub max_iter: Option<u64>,
}

impl ParamArgs {
    /// The same parameter map a JSON request would carry.
    pub fn to_params(&self) -> Result<Params, String> {
        let mut p = Params::new();
        let ints = [
            ("k", self.k),
            ("sectors", self.sectors),
            ("min_pts", self.min_pts),
            ("min_cluster_size", self.min_cluster_size),
            ("target", self.target),
            ("seed", self.seed),
            ("max_iter", self.max_iter),
        ];
        for (name, v) in ints {
            if let Some(v) = v {
                p.insert(name.to_string(), v.into());
            }
        }
        let reals = [
            ("epsilon", self.epsilon),
            ("sector_offset", self.sector_offset),
            ("bandwidth", self.bandwidth),
            ("merge_tol", self.merge_tol),
        ];
        for (name, v) in reals {
            if let Some(v) = v {
                let n = serde_json::Number::from_f64(v)
                    .ok_or_else(|| format!("--{} must be a finite number", name.replace('_', "-")))?;
                p.insert(name.to_string(), n);
            }
        }
        Ok(p)
    }
}

fn parse_input_format(s: &str) -> Result<InputFormat, String> {
    s.parse()
}

fn parse_output_format(s: &str) -> Result<OutputFormat, String> {
    s.parse()
}

#[derive(Debug, Parser)]
#[command(name = "proxigraph serve", about = "Run the stateless HTTP compute service")]
pub struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1")]
    pub bind: IpAddr,
    #[arg(long, env = "PROXIGRAPH_PORT", default_value_t = 8080)]
    pub port: u16,
    /// Origin allowed to make cross-origin requests; repeatable. `*` allows any.
    #[arg(long = "cors-origin", default_value = "*")]
    pub cors_origins: Vec<String>,
    /// Send no cross-origin headers at all.
    #[arg(long, conflicts_with = "cors_origins")]
    pub no_cors: bool,
}

impl ServeArgs {
    pub fn cors(&self) -> Cors {
        if self.no_cors {
            Cors::Disabled
        } else if self.cors_origins.iter().any(|o| o == "*") {
            Cors::Any
        } else {
            Cors::Origins(self.cors_origins.clone())
        }
    }
}

/// A failure with its exit code and one-line message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn data(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_DATA, message: message.into() }
}

/// Entry point: parses `argv` (program name first), does the work and
/// returns the process exit code. Diagnostics go to `stderr`.
pub fn main_with(argv: Vec<OsString>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let is_serve = argv.get(1).is_some_and(|a| a == "serve");
    let result = if is_serve {
        let rest = std::iter::once(OsString::from("proxigraph serve")).chain(argv.into_iter().skip(2));
        match ServeArgs::try_parse_from(rest) {
            Ok(args) => service::run_blocking(&args).map_err(data),
            Err(e) => Err(clap_failure(e, stdout)),
        }
    } else {
        match RunArgs::try_parse_from(argv) {
            Ok(args) => run_batch(&args, stdout),
            Err(e) => Err(clap_failure(e, stdout)),
        }
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) if f.code == EXIT_OK => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "proxigraph: {}", f.message);
            f.code
        }
    }
}

/// Help and version requests print in full and succeed; real errors shrink
/// to their first line.
fn clap_failure(e: clap::Error, stdout: &mut dyn Write) -> Failure {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            let _ = write!(stdout, "{e}");
            Failure { code: EXIT_OK, message: String::new() }
        }
        _ => {
            let text = e.to_string();
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            usage(line.trim_start_matches("error: ").to_string())
        }
    }
}

/// Reads, computes and writes one batch job.
pub fn run_batch(args: &RunArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    if find_algorithm(&args.algorithm).is_none() {
        return Err(usage(format!("unknown algorithm `{}`", args.algorithm)));
    }
    let input = args.input.to_string_lossy();
    let input_format = args
        .input_format
        .or_else(|| InputFormat::from_path(&input))
        .ok_or_else(|| usage(format!("cannot tell the format of `{input}`; pass --input-format")))?;
    let output = args.output.to_string_lossy();
    let output_format = args
        .output_format
        .or_else(|| OutputFormat::from_path(&output))
        .ok_or_else(|| usage(format!("cannot tell the format of `{output}`; pass --output-format")))?;
    let params = args.params.to_params().map_err(usage)?;

    let bytes = std::fs::read(&args.input).map_err(|e| data(format!("IoError: cannot read `{input}`: {e}")))?;
    let ps = parse_points(&bytes, input_format).map_err(|e| data(e.to_string()))?;
    let outcome = run(&args.algorithm, &ps, &params).map_err(|e| data(e.to_string()))?;
    let rendered = match output_format {
        OutputFormat::Ipe => {
            let options = IpeOptions {
                version: args.ipe_version.clone(),
                disk_mark: args.ipe_mark.clone(),
                mark_size: args.ipe_mark_size.clone(),
            };
            write_ipe_with(&outcome.document(&ps), &options)
        }
        _ => outcome.render(&ps, output_format),
    };

    if output == "-" {
        stdout
            .write_all(&rendered)
            .map_err(|e| data(format!("IoError: cannot write output: {e}")))
    } else {
        std::fs::write(&args.output, rendered)
            .map_err(|e| data(format!("IoError: cannot write `{output}`: {e}")))
    }
}
