use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use hawking_core::metrics::{MetricReport, PhaseReport};
use hawking_core::protocol::BranchStatistics;
use hawking_core::{
    kraus_pair, squeezing_from_geometry, BlackHoleGeometry, ChannelParams, ComplexMatrix,
    DensityMatrix, Error, Metric, ProtocolConfig, SuperpositionReport, SweepSpec,
};
use serde_json::{json, Value};

use crate::config::{load_config, FileConfig, InputState, OutputFormat};
use crate::output::{write_grid, Destination, SweepFormat};
use crate::parallel::run_sweep_parallel;

#[derive(Parser, Debug)]
#[command(
    name = "hawking",
    version,
    about = "Hawking channels, their superposition, and figure sweeps",
    long_about = "Hawking channels, their superposition, and figure sweeps.\n\nAll angles are in radians."
)]
struct Args {
    /// Report format. For `sweep` this picks the file format (csv or json).
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// JSON file with default parameter values; flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Squeezing parameter seen by an observer hovering at a fixed radius.
    #[command(allow_negative_numbers = true)]
    Geometry {
        /// Black-hole mass m (horizon at 2m).
        #[arg(long)]
        mass: Option<f64>,
        /// Observer radius R0; must exceed 2m.
        #[arg(long)]
        radius: Option<f64>,
        /// Mode wavenumber k0.
        #[arg(long)]
        k0: Option<f64>,
        /// Reduced Planck constant [default: 1].
        #[arg(long)]
        hbar: Option<f64>,
    },
    /// One Hawking channel applied to Rob's half of a Bell pair.
    #[command(allow_negative_numbers = true)]
    Channel {
        /// Squeezing parameter, 0 <= r < pi/2.
        #[arg(long)]
        r: Option<f64>,
        /// Squeezing phase [default: 0].
        #[arg(long)]
        phi: Option<f64>,
        /// Input state [default: bell].
        #[arg(long, value_enum)]
        state: Option<InputState>,
    },
    /// Two channels superposed on a control qubit, against their classical mixture.
    #[command(allow_negative_numbers = true)]
    Protocol {
        #[arg(long)]
        r1: Option<f64>,
        #[arg(long)]
        r2: Option<f64>,
        /// [default: 0]
        #[arg(long)]
        phi1: Option<f64>,
        /// [default: 0]
        #[arg(long)]
        phi2: Option<f64>,
    },
    /// Two channels with equal squeezing and opposite phases.
    #[command(allow_negative_numbers = true)]
    Phase {
        #[arg(long)]
        r: Option<f64>,
    },
    /// Evaluate a metric over a grid of squeezing parameters and write it to a file.
    #[command(allow_negative_numbers = true)]
    Sweep {
        /// neg_pct_diff_mixture, neg_pct_diff_convex, coherent_info_diff or phase_curve.
        #[arg(long)]
        metric: Option<String>,
        /// Points per axis, endpoints included [default: 101].
        #[arg(long)]
        resolution: Option<usize>,
        /// Lower end of every axis [default: 0].
        #[arg(long)]
        min: Option<f64>,
        /// Upper end of every axis [default: pi/4].
        #[arg(long)]
        max: Option<f64>,
        /// Output file, or `-` for standard output.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

/// Fully resolved parameters of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    Geometry(BlackHoleGeometry),
    Channel(ChannelParams),
    Protocol(ProtocolConfig),
    Phase(f64),
    Sweep {
        spec: SweepSpec,
        format: SweepFormat,
        out: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub job: Job,
    pub format: OutputFormat,
}

impl CliConfig {
    /// The effective parameters in config-file form.
    pub fn echo(&self) -> FileConfig {
        let mut c = FileConfig {
            format: Some(self.format),
            ..Default::default()
        };
        match &self.job {
            Job::Geometry(g) => {
                c.mass = Some(g.mass());
                c.radius = Some(g.radius());
                c.k0 = Some(g.k0());
                c.hbar = Some(g.hbar());
            }
            Job::Channel(p) => {
                c.r = Some(p.r());
                c.phi = Some(p.phi());
                c.state = Some(InputState::Bell);
            }
            Job::Protocol(cfg) => {
                c.r1 = Some(cfg.params1.r());
                c.r2 = Some(cfg.params2.r());
                c.phi1 = Some(cfg.params1.phi());
                c.phi2 = Some(cfg.params2.phi());
            }
            Job::Phase(r) => c.r = Some(*r),
            Job::Sweep { spec, out, .. } => {
                c.metric = Some(spec.metric.name().to_string());
                c.resolution = Some(spec.resolution);
                c.min = Some(spec.r1_range.0);
                c.max = Some(spec.r1_range.1);
                c.out = Some(out.clone());
            }
        }
        c
    }
}

#[derive(Debug)]
enum Failure {
    /// Bad invocation or out-of-domain input; exit 2.
    Usage(String),
    /// A computation broke one of its own checks; exit 1.
    Internal(String),
    /// Standard output went away or failed; exit 1.
    Io(String),
}

impl Failure {
    fn flag(flag: &str, message: impl std::fmt::Display) -> Self {
        Failure::Usage(format!("{flag}: {message}"))
    }

    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Internal(_) | Failure::Io(_) => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn required(flag: &str, value: Option<f64>) -> Result<f64, Failure> {
    let v = value.ok_or_else(|| Failure::flag(flag, "required"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Failure::flag(flag, format!("must be finite, got {v}")))
    }
}

fn optional(flag: &str, value: Option<f64>, default: f64) -> Result<f64, Failure> {
    required(flag, Some(value.unwrap_or(default)))
}

fn channel_params(r: (&str, f64), phi: (&str, f64)) -> Result<ChannelParams, Failure> {
    ChannelParams::new(r.1, phi.1).map_err(|e| match e {
        Error::NotFinite { name: "phi", .. } => Failure::flag(phi.0, e),
        _ => Failure::flag(r.0, e),
    })
}

fn resolve(
    command: Command,
    format: Option<OutputFormat>,
    file: FileConfig,
) -> Result<CliConfig, Failure> {
    let requested = format.or(file.format);
    let mut format = requested.unwrap_or_default();
    let job = match command {
        Command::Geometry {
            mass,
            radius,
            k0,
            hbar,
        } => {
            let mass = required("--mass", mass.or(file.mass))?;
            let radius = required("--radius", radius.or(file.radius))?;
            let k0 = required("--k0", k0.or(file.k0))?;
            let hbar = optional("--hbar", hbar.or(file.hbar), 1.0)?;
            let g = BlackHoleGeometry::new(mass, radius, k0, hbar).map_err(|e| match &e {
                Error::NonPositive { name, .. } | Error::NotFinite { name, .. } => {
                    Failure::flag(&format!("--{name}"), e)
                }
                _ => Failure::flag("--radius", e),
            })?;
            Job::Geometry(g)
        }
        Command::Channel { r, phi, state } => {
            let r = required("--r", r.or(file.r))?;
            let phi = optional("--phi", phi.or(file.phi), 0.0)?;
            let InputState::Bell = state.or(file.state).unwrap_or_default();
            Job::Channel(channel_params(("--r", r), ("--phi", phi))?)
        }
        Command::Protocol { r1, r2, phi1, phi2 } => {
            let r1 = required("--r1", r1.or(file.r1))?;
            let r2 = required("--r2", r2.or(file.r2))?;
            let phi1 = optional("--phi1", phi1.or(file.phi1), 0.0)?;
            let phi2 = optional("--phi2", phi2.or(file.phi2), 0.0)?;
            Job::Protocol(ProtocolConfig::new(
                channel_params(("--r1", r1), ("--phi1", phi1))?,
                channel_params(("--r2", r2), ("--phi2", phi2))?,
            ))
        }
        Command::Phase { r } => {
            let r = required("--r", r.or(file.r))?;
            channel_params(("--r", r), ("--r", 0.0))?;
            Job::Phase(r)
        }
        Command::Sweep {
            metric,
            resolution,
            min,
            max,
            out,
        } => {
            let metric: Metric = metric
                .or(file.metric)
                .ok_or_else(|| Failure::flag("--metric", "required"))?
                .parse()
                .map_err(|e| Failure::flag("--metric", e))?;
            let resolution = resolution
                .or(file.resolution)
                .unwrap_or(SweepSpec::DEFAULT_RESOLUTION);
            if resolution < 2 {
                return Err(Failure::flag(
                    "--resolution",
                    format!("must be at least 2, got {resolution}"),
                ));
            }
            let min = optional("--min", min.or(file.min), 0.0)?;
            let max = optional("--max", max.or(file.max), std::f64::consts::FRAC_PI_4)?;
            let spec = SweepSpec::new(metric, min, max, resolution)
                .map_err(|e| Failure::flag("--min/--max", e))?;
            let out = out
                .or(file.out)
                .ok_or_else(|| Failure::flag("--out", "required"))?;
            let sweep_format = match requested {
                Some(OutputFormat::Csv) => SweepFormat::Csv,
                Some(OutputFormat::Json) => SweepFormat::Json,
                Some(OutputFormat::Human) => {
                    return Err(Failure::flag("--format", "sweep files are csv or json"));
                }
                None => infer_format(&out),
            };
            format = match sweep_format {
                SweepFormat::Csv => OutputFormat::Csv,
                SweepFormat::Json => OutputFormat::Json,
            };
            Job::Sweep {
                spec,
                format: sweep_format,
                out,
            }
        }
    };
    if format == OutputFormat::Csv && !matches!(job, Job::Sweep { .. }) {
        return Err(Failure::flag("--format", "csv is only available for sweep"));
    }
    Ok(CliConfig { job, format })
}

fn infer_format(out: &Path) -> SweepFormat {
    match out.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => SweepFormat::Json,
        _ => SweepFormat::Csv,
    }
}

fn matrix_json(m: &ComplexMatrix) -> Value {
    let part = |f: fn(&hawking_core::C64) -> f64| -> Vec<Vec<f64>> {
        m.row_iter()
            .map(|row| row.iter().map(f).collect())
            .collect()
    };
    json!({"re": part(|z| z.re), "im": part(|z| z.im)})
}

fn state_json(rho: Option<&DensityMatrix>) -> Value {
    rho.map_or(Value::Null, |r| matrix_json(r.matrix()))
}

fn branches_json(stats: &BranchStatistics) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("a".into(), json!(stats.a_scalar));
    m.insert("b".into(), json!(stats.b_scalar));
    m.insert("c".into(), json!(stats.c_scalar));
    m.insert("p_plus".into(), json!(stats.p_plus));
    m.insert("p_minus".into(), json!(stats.p_minus));
    m.insert("rho_plus".into(), state_json(Some(&stats.rho_plus)));
    m.insert("rho_minus".into(), state_json(stats.rho_minus.as_ref()));
    m
}

fn report(cfg: &CliConfig) -> Result<Value, Failure> {
    let mut body = match &cfg.job {
        Job::Geometry(g) => {
            let p = squeezing_from_geometry(g);
            json!({
                "r": p.r(),
                "redshift_factor": g.redshift_factor(),
                "surface_gravity": g.surface_gravity(),
                "schwarzschild_radius": g.schwarzschild_radius(),
            })
        }
        Job::Channel(p) => {
            let k = kraus_pair(p);
            let (rho, m) = MetricReport::single_channel(p)?;
            json!({
                "kraus": {"m0": matrix_json(&k.m0), "m1": matrix_json(&k.m1)},
                "output_state": matrix_json(rho.matrix()),
                "negativity": m.negativity_numeric,
                "negativity_closed_form": m.negativity_closed_form,
                "coherent_information": m.coherent_information,
                "ppt_separable": m.ppt,
            })
        }
        Job::Protocol(pc) => {
            let rep = SuperpositionReport::evaluate(pc)?;
            let mut m = branches_json(&rep.stats);
            m.insert(
                "classical_mixture".into(),
                matrix_json(rep.mixture.matrix()),
            );
            m.insert("negativity_avg".into(), json!(rep.negativity_avg));
            m.insert(
                "negativity_avg_closed".into(),
                json!(rep.negativity_avg_closed),
            );
            m.insert("negativity_mixture".into(), json!(rep.negativity_mixture));
            m.insert(
                "negativity_mixture_closed".into(),
                json!(rep.negativity_mixture_closed),
            );
            m.insert("negativity_convex".into(), json!(rep.negativity_convex));
            m.insert(
                "negativity_convex_closed".into(),
                json!(rep.negativity_convex_closed),
            );
            m.insert(
                "coherent_information".into(),
                json!({
                    "ensemble": rep.coherent_info_ensemble,
                    "plus_branch": rep.coherent_info_plus,
                    "mixture": rep.coherent_info_mixture,
                }),
            );
            Value::Object(m)
        }
        Job::Phase(r) => {
            let rep = PhaseReport::evaluate(*r)?;
            let mut m = branches_json(&rep.stats);
            m.insert("negativity_plus".into(), json!(rep.negativity_plus));
            m.insert(
                "negativity_plus_closed".into(),
                json!(rep.negativity_plus_closed),
            );
            m.insert("negativity_avg".into(), json!(rep.negativity_avg));
            m.insert(
                "negativity_avg_closed".into(),
                json!(rep.negativity_avg_closed),
            );
            m.insert(
                "negativity_classical".into(),
                json!(rep.negativity_classical),
            );
            Value::Object(m)
        }
        Job::Sweep { .. } => unreachable!("sweeps write files"),
    };
    let echo = serde_json::to_value(cfg.echo()).expect("config serializes");
    body.as_object_mut()
        .expect("reports are objects")
        .insert("config".into(), echo);
    Ok(body)
}

fn is_matrix(v: &Value) -> Option<(&Vec<Value>, &Vec<Value>)> {
    let obj = v.as_object()?;
    if obj.len() != 2 {
        return None;
    }
    Some((obj.get("re")?.as_array()?, obj.get("im")?.as_array()?))
}

fn complex_text(re: f64, im: f64) -> String {
    if im == 0.0 {
        format!("{re}")
    } else if im.is_sign_negative() {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

fn render_human(v: &serde_json::Map<String, Value>, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    for (key, value) in v {
        if let Some((re, im)) = is_matrix(value) {
            let _ = writeln!(out, "{pad}{key}:");
            for (rr, ir) in re.iter().zip(im) {
                let cells: Vec<String> = rr
                    .as_array()
                    .into_iter()
                    .flatten()
                    .zip(ir.as_array().into_iter().flatten())
                    .map(|(a, b)| {
                        complex_text(
                            a.as_f64().unwrap_or(f64::NAN),
                            b.as_f64().unwrap_or(f64::NAN),
                        )
                    })
                    .collect();
                let _ = writeln!(out, "{pad}  [{}]", cells.join(", "));
            }
            continue;
        }
        match value {
            Value::Object(inner) => {
                let _ = writeln!(out, "{pad}{key}:");
                render_human(inner, indent + 2, out);
            }
            Value::Null => {
                let _ = writeln!(out, "{pad}{key}: none");
            }
            Value::String(s) => {
                let _ = writeln!(out, "{pad}{key}: {s}");
            }
            other => {
                let _ = writeln!(out, "{pad}{key}: {other}");
            }
        }
    }
}

fn execute(args: Args, out: &mut dyn Write) -> Result<(), Failure> {
    let file = match &args.config {
        Some(path) => load_config(path).map_err(|e| Failure::flag("--config", e))?,
        None => FileConfig::default(),
    };
    let cfg = resolve(args.command, args.format, file)?;
    let io_fail = |e: std::io::Error| Failure::Io(format!("cannot write report: {e}"));

    if let Job::Sweep {
        spec,
        format,
        out: path,
    } = &cfg.job
    {
        let grid = run_sweep_parallel(spec)?;
        let destination = Destination::parse(path);
        match &destination {
            Destination::Stdout => write_grid(&grid, *format, &mut *out).map_err(io_fail)?,
            Destination::Path(_) => {
                crate::output::emit(&grid, *format, &destination)
                    .map_err(|e| Failure::flag("--out", e))?;
                let cells = grid.values.len();
                if *format == SweepFormat::Json {
                    let summary = json!({
                        "cells": cells,
                        "config": serde_json::to_value(cfg.echo()).expect("config serializes"),
                        "out": destination.to_string(),
                    });
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string(&summary).expect("valid JSON")
                    )
                    .map_err(io_fail)?;
                } else {
                    writeln!(out, "wrote {cells} {} cells to {destination}", spec.metric)
                        .map_err(io_fail)?;
                }
            }
        }
        return Ok(());
    }

    let value = report(&cfg)?;
    match cfg.format {
        OutputFormat::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&value).expect("valid JSON")
        )
        .map_err(io_fail),
        _ => {
            let mut text = String::new();
            render_human(
                value.as_object().expect("reports are objects"),
                0,
                &mut text,
            );
            out.write_all(text.as_bytes()).map_err(io_fail)
        }
    }
}

/// Runs one invocation. `argv[0]` is the program name. Returns the exit
/// status: 0 on success, 2 for usage or domain errors, 1 when a computation
/// fails an internal consistency check.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match execute(args, out) {
        Ok(()) => 0,
        Err(failure) => {
            let message = match &failure {
                Failure::Usage(m) | Failure::Io(m) => format!("error: {m}"),
                Failure::Internal(m) => format!("internal error: {m}"),
            };
            let _ = writeln!(err, "{message}");
            failure.code()
        }
    }
}
