use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadloci::Vec2;

#[derive(Debug, Parser)]
#[command(name = "quadloci", version, about = "Loci of conic centers for a quadrilateral")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// JSON file of the form {"vertices": [[x,y], [x,y], [x,y], [x,y]]}
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "vertices")]
    pub input: Option<PathBuf>,
    /// Inline vertices, "x,y;x,y;x,y;x,y" in traversal order
    #[arg(long, global = true, value_name = "LIST", allow_hyphen_values = true)]
    pub vertices: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LocusChoice {
    /// Tangent family if the point is on the Newton line, else the nine-point conic
    Auto,
    Tangent,
    Passing,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the quadrilateral and report its shape flags
    Validate,
    /// Newton line and its excluded points
    NewtonLine,
    /// Nine-point conic and its nine named points
    NinePoint,
    /// Conic of the tangent family at parameter t
    TangentConic {
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// A conic with the given center, tangent to the sides or through the vertices
    CenterToConic {
        #[arg(long, value_name = "X,Y", value_parser = parse_point, allow_hyphen_values = true)]
        point: Vec2,
        #[arg(long, value_enum, default_value_t = LocusChoice::Auto)]
        locus: LocusChoice,
    },
    /// Largest ellipse inscribed in a strictly convex quadrilateral
    MaxEllipse,
    /// Random clouds of tangent-conic and passing-conic centers
    Sample {
        #[arg(long, default_value_t = 3000)]
        tangent: usize,
        #[arg(long, default_value_t = 3000)]
        passing: usize,
        /// Sample t uniformly from [t-min, t-max] instead of the heavy-tailed default
        #[arg(long, allow_hyphen_values = true, requires = "t_max")]
        t_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "t_min")]
        t_max: Option<f64>,
    },
    /// Run the randomized property suite
    Verify {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Override a tolerance, e.g. --tol tangency=1e-6 or --tol all=0
        #[arg(long = "tol", value_name = "NAME=VALUE", value_parser = parse_tol)]
        tol: Vec<(String, f64)>,
    },
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

pub fn parse_point(s: &str) -> Result<Vec2, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [x, y] => Ok(Vec2::new(parse_f64(x)?, parse_f64(y)?)),
        _ => Err(format!("expected 'x,y', got '{s}'")),
    }
}

pub fn parse_vertices(s: &str) -> Result<[Vec2; 4], String> {
    let pts = s
        .split(';')
        .map(parse_point)
        .collect::<Result<Vec<_>, _>>()?;
    pts.try_into()
        .map_err(|v: Vec<Vec2>| format!("expected 4 vertices, got {}", v.len()))
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got '{s}'"))?;
    let v = parse_f64(value)?;
    if v < 0.0 {
        return Err("tolerance must be non-negative".into());
    }
    Ok((name.trim().to_string(), v))
}
