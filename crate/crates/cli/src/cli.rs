use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toric_core::bridge::{bridge_construct, bridge_geometry, max_residual, ConeVertex};
use toric_core::document::{build_document, SectionRequest};
use toric_core::export::{to_csv, to_json, to_svg, SvgStyle};
use toric_core::{classify, trace_section, ToricError, DEFAULT_TOL};

use crate::server;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const CLI_RESOLUTION: usize = 512;
/// Bridge verification fails above this residual.
pub const BRIDGE_LIMIT: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "toric",
    version,
    about = "Torus-plane sections: trace, classify, bridge, serve"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trace the section and write it as JSON, SVG or CSV.
    Trace {
        #[command(flatten)]
        params: SectionArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file; stdout when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print the section class.
    Classify {
        #[command(flatten)]
        params: SectionArgs,
    },
    /// Rebuild the section from the cone-cylinder construction and check it.
    Bridge {
        #[command(flatten)]
        params: SectionArgs,
        #[arg(long, default_value_t = 4096)]
        samples: usize,
    },
    /// Run the HTTP JSON service.
    Serve {
        #[arg(long, env = "TORIC_PORT", default_value_t = server::DEFAULT_PORT)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Directory with the explorer bundle served at `/`.
        #[arg(long)]
        ui_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
    Csv,
}

/// Shape parameters; angles in degrees.
#[derive(Debug, Clone, Args)]
pub struct SectionArgs {
    /// Major radius.
    #[arg(long = "R", default_value_t = 3.0, allow_negative_numbers = true)]
    pub major: f64,
    /// Minor radius.
    #[arg(long = "r", default_value_t = 1.0, allow_negative_numbers = true)]
    pub minor: f64,
    /// Plane distance from the torus center.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub rho: f64,
    /// Azimuth of the plane normal, degrees.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Elevation of the plane normal, degrees.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    #[arg(long, default_value_t = CLI_RESOLUTION)]
    pub resolution: usize,
    /// Relative classification tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

impl SectionArgs {
    pub fn request(&self) -> SectionRequest {
        SectionRequest {
            major: self.major,
            minor: self.minor,
            rho: self.rho,
            alpha_deg: self.alpha,
            phi_deg: self.phi,
            resolution: self.resolution,
            tol: self.tol,
        }
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let result = match cli.command {
        Command::Trace {
            params,
            format,
            output,
        } => cmd_trace(&params, format, output, out),
        Command::Classify { params } => cmd_classify(&params, out),
        Command::Bridge { params, samples } => cmd_bridge(&params, samples, out),
        Command::Serve { port, host, ui_dir } => server::serve_blocking(&host, port, ui_dir)
            .map(|_| EXIT_OK)
            .map_err(|e| CommandError::Io(e.to_string())),
    };
    match result {
        Ok(code) => code,
        Err(CommandError::Invalid(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(CommandError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_VERIFY
        }
    }
}

#[derive(Debug)]
enum CommandError {
    Invalid(ToricError),
    Io(String),
}

impl From<ToricError> for CommandError {
    fn from(e: ToricError) -> Self {
        CommandError::Invalid(e)
    }
}

impl From<std::io::Error> for CommandError {
    fn from(e: std::io::Error) -> Self {
        CommandError::Io(e.to_string())
    }
}

fn cmd_trace(
    params: &SectionArgs,
    format: Format,
    output: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32, CommandError> {
    let req = params.request();
    let text = match format {
        Format::Json => to_json(&build_document(&req)?),
        Format::Svg | Format::Csv => {
            let sp = req.problem()?;
            let curve = trace_section(&sp, req.resolution)?;
            if format == Format::Svg {
                to_svg(&curve, &SvgStyle::default())
            } else {
                to_csv(&curve)
            }
        }
    };
    match output {
        Some(path) => std::fs::write(path, text.as_bytes())?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn cmd_classify(params: &SectionArgs, out: &mut dyn Write) -> Result<i32, CommandError> {
    let req = params.request();
    let sp = req.problem()?;
    let class = classify(&sp, req.tol)?;
    writeln!(out, "{class}")?;
    Ok(EXIT_OK)
}

fn cmd_bridge(
    params: &SectionArgs,
    samples: usize,
    out: &mut dyn Write,
) -> Result<i32, CommandError> {
    let sp = params.request().problem()?;
    let geom = bridge_geometry(&sp)?;
    let points = bridge_construct(&sp, samples)?;
    let residual = max_residual(&points, &sp);
    writeln!(out, "k = cos(phi) = {:.12}", geom.k)?;
    for (k, c) in geom.circle_centers.iter().enumerate() {
        writeln!(
            out,
            "circle {} center (z, y) = ({:.12}, {:.12})",
            k + 1,
            c.z,
            c.y
        )?;
    }
    writeln!(out, "circle radius = {:.12}", geom.circle_radius)?;
    match geom.cone_vertex {
        ConeVertex::Finite(v) => writeln!(out, "cone vertex = ({}, {:.12}, {})", v.x, v.y, v.z)?,
        ConeVertex::AtInfinity => writeln!(out, "cone vertex = at infinity")?,
        ConeVertex::Degenerate => writeln!(out, "cone vertex = degenerate (plane pair)")?,
    }
    writeln!(
        out,
        "samples per circle = {samples}, constructed points = {}",
        points.len()
    )?;
    writeln!(out, "max |section residual| = {residual:.3e}")?;
    if residual > BRIDGE_LIMIT {
        writeln!(out, "verification FAILED (limit {BRIDGE_LIMIT:e})")?;
        return Ok(EXIT_VERIFY);
    }
    writeln!(out, "verification ok")?;
    Ok(EXIT_OK)
}
