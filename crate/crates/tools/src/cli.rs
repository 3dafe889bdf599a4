//! The `amoeba` command-line interface.
//!
//! Exit codes: 0 success, 1 usage error, 2 computation error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use amoeba_core::cert::{certify_point, Status, DEFAULT_CERT_TOL};
use amoeba_core::charsum::{delta_bound, DEFAULT_ROOT_TOL};
use amoeba_core::lattice::{
    general_bound, honeycomb_model, honeycomb_sharp_2d, improved_bound_2d, lower_bound_check,
    polynomial_bound, sharp_bound, snap_support_with_mu, vertex_bound, DEFAULT_DELTA_TOL,
};
use amoeba_core::oracles::{fiber_min, fujiwara_expr, fujiwara_root, poly_roots};
use amoeba_core::{Complex64, ExponentialSum, UnivariatePolynomial};
use anyhow::{bail, Context};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::format::{format_exponential_sum, parse_exponential_sum};
use crate::render::{render_grid, Window};

const UNCERTIFIED_NOTE: &str =
    "# UNCERTIFIED is not a membership claim: the point may still lie outside the amoeba.";

#[derive(Debug, Parser)]
#[command(
    name = "amoeba",
    version,
    about = "Certified outer approximations of amoebas of exponential sums"
)]
struct Cli {
    /// Digits after the decimal point in numeric output.
    #[arg(long, global = true, default_value_t = 6, value_name = "P")]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Distance bound of the support and the pivot attaining it.
    Delta {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "T", default_value_t = DEFAULT_ROOT_TOL, value_parser = positive)]
        tol: f64,
    },
    /// Certifies a point as on the tropical variety, outside the amoeba, or uncertified.
    Certify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "v1,v2,...", value_parser = point, allow_hyphen_values = true)]
        point: Point,
        #[arg(long, value_name = "T", default_value_t = DEFAULT_CERT_TOL, value_parser = positive)]
        tol: f64,
    },
    /// Closed-form distance bounds for dimension d and scaling parameter mu.
    Bounds {
        #[arg(long, value_name = "D", value_parser = clap::value_parser!(u32).range(1..))]
        dimension: u32,
        #[arg(long, value_name = "M", default_value_t = 1.0, value_parser = positive)]
        mu: f64,
    },
    /// Solves the lattice-sum equation for given d and rhs.
    Sharp {
        #[arg(long, value_name = "D", value_parser = clap::value_parser!(u32).range(1..))]
        dimension: u32,
        #[arg(long, value_name = "R", default_value_t = 1.0, value_parser = positive)]
        rhs: f64,
        #[arg(long, value_name = "T", default_value_t = DEFAULT_DELTA_TOL, value_parser = positive)]
        tol: f64,
    },
    /// Reproduces the comparison of distance bounds in dimension 2.
    Table1 {
        #[arg(long, value_name = "T", default_value_t = DEFAULT_DELTA_TOL, value_parser = positive)]
        tol: f64,
    },
    /// The transformation T, and for d = 2 the honeycomb sharp bound.
    Honeycomb {
        #[arg(long, value_name = "D", default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        dimension: u32,
        #[arg(long, value_name = "T", default_value_t = DEFAULT_ROOT_TOL, value_parser = positive)]
        tol: f64,
    },
    /// Characteristic sum of the ray support at the origin; values above 1 bound the sharp bound from below.
    LowerBound {
        #[arg(long, value_name = "D", value_parser = clap::value_parser!(u32).range(1..))]
        dimension: u32,
        /// Ray depth.
        #[arg(long, value_name = "M", value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(long, value_name = "DELTA", value_parser = positive)]
        delta: f64,
    },
    /// Snaps the support onto the grid pivot + (mu / 2 sqrt d) Z^d.
    Snap {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "I", default_value_t = 0)]
        pivot: usize,
        /// Grid scale; defaults to the support's scaling parameter.
        #[arg(long, value_name = "M", value_parser = positive)]
        mu: Option<f64>,
    },
    /// Rasterizes a planar window into tropical, outside and uncertified cells.
    Render {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "xmin,xmax,ymin,ymax", value_parser = window, allow_hyphen_values = true)]
        window: Window,
        #[arg(long, value_name = "NX,NY", default_value = "200,200", value_parser = resolution)]
        resolution: (usize, usize),
        /// Output file; standard output when omitted.
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = RasterFormat::Ppm)]
        format: RasterFormat,
    },
    /// Roots of a univariate polynomial given with nonnegative integer exponents.
    Roots {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "T", default_value_t = DEFAULT_ROOT_TOL, value_parser = positive)]
        tol: f64,
    },
    /// Fujiwara's root bound and the positive root it majorizes.
    Fujiwara {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "T", default_value_t = DEFAULT_ROOT_TOL, value_parser = positive)]
        tol: f64,
    },
    /// Minimum of |f| over the torus fiber above a point.
    FiberMin {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "v1,v2,...", value_parser = point, allow_hyphen_values = true)]
        point: Point,
        /// Grid points per angular axis.
        #[arg(long, value_name = "N", default_value_t = 256, value_parser = clap::value_parser!(u32).range(1..))]
        resolution: u32,
    },
    /// Experiment on the open question comparing two planar numeric bounds; makes no claim.
    ExploreQ52 {
        #[arg(long, value_name = "T", default_value_t = DEFAULT_DELTA_TOL, value_parser = positive)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
struct Input {
    /// Exponential sum in the text format.
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RasterFormat {
    Ppm,
    Csv,
}

fn real(token: &str) -> Result<f64, String> {
    token
        .trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("{token:?} is not a finite number"))
}

fn positive(s: &str) -> Result<f64, String> {
    let v = real(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{s} must be positive"))
    }
}

fn real_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(real).collect()
}

#[derive(Debug, Clone)]
struct Point(Vec<f64>);

fn point(s: &str) -> Result<Point, String> {
    real_list(s).map(Point)
}

fn window(s: &str) -> Result<Window, String> {
    match real_list(s)?.as_slice() {
        &[xmin, xmax, ymin, ymax] => Ok(Window::new(xmin, xmax, ymin, ymax)),
        _ => Err("expected four values xmin,xmax,ymin,ymax".into()),
    }
}

fn resolution(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        &[nx, ny] => {
            let n = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("{t:?} is not a count"))
            };
            Ok((n(nx)?, n(ny)?))
        }
        _ => Err("expected NX,NY".into()),
    }
}

fn read_sum(path: &Path) -> anyhow::Result<ExponentialSum> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_exponential_sum(&text).with_context(|| format!("parsing {}", path.display()))
}

fn univariate(f: &ExponentialSum) -> anyhow::Result<UnivariatePolynomial> {
    if f.dim() != 1 {
        bail!("a univariate polynomial needs d = 1 (got d = {})", f.dim());
    }
    let mut degrees = Vec::with_capacity(f.len());
    for lambda in f.support().exponents() {
        let e = lambda[0];
        if e < 0.0 || e.fract() != 0.0 || e > u32::MAX as f64 {
            bail!("exponent {e} is not a nonnegative integer");
        }
        degrees.push(e as usize);
    }
    let n = degrees.iter().copied().max().unwrap_or(0);
    let mut coefficients = vec![Complex64::new(0.0, 0.0); n + 1];
    for (&k, &c) in degrees.iter().zip(f.coefficients()) {
        coefficients[k] = c;
    }
    Ok(UnivariatePolynomial::new(coefficients)?)
}

struct Printer<'a> {
    out: &'a mut dyn Write,
    precision: usize,
}

impl Printer<'_> {
    fn num(&self, v: f64) -> String {
        if v.is_nan() {
            "none".into()
        } else {
            format!("{v:.*}", self.precision)
        }
    }

    fn list(&self, v: &[f64]) -> String {
        v.iter().map(|x| self.num(*x)).collect::<Vec<_>>().join(",")
    }

    fn line(&mut self, s: &str) -> anyhow::Result<()> {
        writeln!(self.out, "{s}")?;
        Ok(())
    }

    fn pairs(&mut self, pairs: &[(&str, String)]) -> anyhow::Result<()> {
        let s = pairs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        self.line(&s)
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    let mut p = Printer {
        out,
        precision: cli.precision,
    };
    match execute(cli.command, &mut p) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn execute(command: Command, p: &mut Printer<'_>) -> anyhow::Result<()> {
    match command {
        Command::Delta { input, tol } => {
            let f = read_sum(&input.input)?;
            let b = delta_bound(f.support(), tol)?;
            p.pairs(&[("delta", p.num(b.value)), ("pivot", b.pivot.to_string())])
        }
        Command::Certify { input, point, tol } => {
            let f = read_sum(&input.input)?;
            let c = certify_point(&f, &point.0, tol)?;
            let dominant = c.dominant.map_or_else(|| "none".into(), |i| i.to_string());
            p.pairs(&[
                ("point", p.list(&c.point)),
                ("status", c.status.as_str().into()),
                ("dominant", dominant),
                ("distance", p.num(c.distance)),
                ("xi", p.num(c.xi_at_distance)),
                ("modulus_floor", p.num(c.modulus_floor)),
            ])?;
            if c.status == Status::Uncertified {
                p.line(UNCERTIFIED_NOTE)?;
            }
            Ok(())
        }
        Command::Bounds { dimension, mu } => {
            let d = dimension as usize;
            p.pairs(&[("polynomial_bound", p.num(polynomial_bound(d)?))])?;
            p.pairs(&[("general_bound", p.num(general_bound(d, mu)?))])?;
            p.pairs(&[("improved_bound_2d", p.num(improved_bound_2d()))])?;
            p.pairs(&[("vertex_bound", p.num(vertex_bound(d)?))])
        }
        Command::Sharp {
            dimension,
            rhs,
            tol,
        } => {
            let v = sharp_bound(dimension as usize, rhs, tol)?;
            p.pairs(&[("sharp_bound", p.num(v))])
        }
        Command::Table1 { tol } => {
            let rows = [
                ("polynomial_bound", polynomial_bound(2)?),
                ("improved_bound_2d", improved_bound_2d()),
                ("sharp_bound", sharp_bound(2, 1.0, tol)?),
                ("vertex_bound", vertex_bound(2)?),
                ("vertex_sharp_bound", sharp_bound(2, 2.0, tol)?),
            ];
            for (name, v) in rows {
                p.line(&format!("{name:<20}{}", p.num(v)))?;
            }
            Ok(())
        }
        Command::Honeycomb { dimension, tol } => {
            let m = honeycomb_model(dimension as usize)?;
            p.pairs(&[
                ("dimension", m.dim.to_string()),
                ("epsilon", p.num(m.epsilon)),
                ("determinant", p.num(m.determinant)),
                ("spectral_value", p.num(m.spectral_value)),
            ])?;
            if m.dim == 2 {
                let h = honeycomb_sharp_2d(tol)?;
                let s = sharp_bound(2, 1.0, DEFAULT_DELTA_TOL)?;
                p.pairs(&[
                    ("honeycomb_root", p.num(h.root)),
                    ("unit_neighbours", h.unit_neighbours.to_string()),
                    ("sqrt3_neighbours", h.sqrt3_neighbours.to_string()),
                    ("integer_sharp_bound", p.num(s)),
                    ("exceeds_integer", (h.root > s).to_string()),
                ])?;
            }
            Ok(())
        }
        Command::LowerBound {
            dimension,
            m,
            delta,
        } => {
            let xi = lower_bound_check(dimension as usize, delta, m as usize)?;
            p.pairs(&[("xi", p.num(xi)), ("exceeds_one", (xi > 1.0).to_string())])
        }
        Command::Snap { input, pivot, mu } => {
            let f = read_sum(&input.input)?;
            let mu = match mu {
                Some(mu) => mu,
                None => f.support().mu()?,
            };
            let s = snap_support_with_mu(f.support(), pivot, mu)?;
            let snapped = ExponentialSum::new(s.support.clone(), f.coefficients().to_vec())?;
            p.line(&format!(
                "# pivot={} mu={} spacing={}",
                s.pivot,
                p.num(s.mu),
                p.num(s.spacing)
            ))?;
            p.line(format_exponential_sum(&snapped).trim_end())
        }
        Command::Render {
            input,
            window,
            resolution,
            output,
            format,
        } => {
            let f = read_sum(&input.input)?;
            let grid = render_grid(&f, window, resolution)?;
            let text = match format {
                RasterFormat::Ppm => grid.to_ppm(),
                RasterFormat::Csv => grid.to_csv(),
            };
            match output {
                Some(path) => {
                    fs::write(&path, text)
                        .with_context(|| format!("writing {}", path.display()))?;
                    p.pairs(&[
                        ("tropical", grid.count(crate::render::TROPICAL).to_string()),
                        ("outside", grid.count(crate::render::OUTSIDE).to_string()),
                        (
                            "uncertified",
                            grid.count(crate::render::UNCERTIFIED).to_string(),
                        ),
                    ])
                }
                None => {
                    p.out.write_all(text.as_bytes())?;
                    Ok(())
                }
            }
        }
        Command::Roots { input, tol } => {
            let g = univariate(&read_sum(&input.input)?)?;
            let mut roots = poly_roots(&g, tol)?;
            roots.sort_by(|a, b| {
                a.norm()
                    .total_cmp(&b.norm())
                    .then(a.arg().total_cmp(&b.arg()))
            });
            for r in roots {
                p.pairs(&[
                    ("re", p.num(r.re)),
                    ("im", p.num(r.im)),
                    ("modulus", p.num(r.norm())),
                    ("log_modulus", p.num(r.norm().ln())),
                ])?;
            }
            Ok(())
        }
        Command::Fujiwara { input, tol } => {
            let g = univariate(&read_sum(&input.input)?)?;
            p.pairs(&[
                ("fujiwara_expr", p.num(fujiwara_expr(&g))),
                ("fujiwara_root", p.num(fujiwara_root(&g, tol)?)),
            ])
        }
        Command::FiberMin {
            input,
            point,
            resolution,
        } => {
            let f = read_sum(&input.input)?;
            let v = fiber_min(&f, &point.0, resolution as usize)?;
            p.pairs(&[("point", p.list(&point.0)), ("fiber_min", p.num(v))])
        }
        Command::ExploreQ52 { tol } => {
            let d = 2.0f64;
            let h = honeycomb_sharp_2d(DEFAULT_ROOT_TOL)?.root;
            let s = sharp_bound(2, 1.0, tol)?;
            let mu = 1.0;
            p.line("# experiment only, not a claim: compares sqrt(2)*honeycomb bound with mu*sqrt(1+d)*sharp_bound, d = 2, mu = 1")?;
            p.pairs(&[
                ("sqrt2_honeycomb", p.num(2f64.sqrt() * h)),
                ("mu_sqrt_1_plus_d_sharp", p.num(mu * (1.0 + d).sqrt() * s)),
            ])
        }
    }
}
