//! Command-line front end: Lorentz boosts of fields and events, vector
//! rotations, Compton scattering, wave-packet propagation, and the
//! self-check suites, with JSON/CSV output suitable for scripting.

mod checks;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use cl3::exponential::rapidity_from_speed;
use cl3::lorentz::{boost_event, boost_event_components, boost_field, rotate, FieldMultivector};
use cl3::multivector::Vector3;
use cl3::schrodinger::{
    closed_form, fit_spread, phase_rotation_rate, propagate_quadrature, spread, QuadratureSpec,
    WavePacketParams,
};
use cl3::spacetime::Event;
use cl3::Error as Cl3Error;

use checks::{run_suite, Suite};
use config::{Format, RunConfig, Units};

#[derive(Parser)]
#[command(
    name = "cl3",
    version,
    about = "Clifford algebra Cl(3,0) toolkit: boosts, rotations, Compton scattering, wave packets"
)]
struct Cli {
    /// Unit system (also settable via config file or CL3_UNITS)
    #[arg(long, global = true, value_enum)]
    units: Option<Units>,

    /// Output format where a choice exists
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Seed for the randomized check suites
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Comparison tolerance override for the check suites
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Optional key = value config file (keys: units, format, seed, tolerance)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Boost an electromagnetic field or a spacetime event
    Boost(BoostArgs),
    /// Rotate a vector about an axis
    Rotate(RotateArgs),
    /// Compton scattering: wavelength shift and the conservation ledger
    Compton(ComptonArgs),
    /// Propagate a Gaussian wave packet
    Wavepacket(WavepacketArgs),
    /// Run the self-check suites
    Check(CheckArgs),
}

#[derive(Args)]
struct BoostArgs {
    /// Rapidity of the boost
    #[arg(long, conflicts_with = "speed")]
    phi: Option<f64>,

    /// Speed as a fraction of c (tanh of the rapidity)
    #[arg(long)]
    speed: Option<f64>,

    /// Boost axis as x,y,z (normalized if needed)
    #[arg(long, value_parser = parse_vec3)]
    axis: Vec3Arg,

    /// Field input as JSON {"E":[..],"B":[..]}
    #[arg(long, conflicts_with_all = ["event", "multivector"])]
    field: Option<String>,

    /// Event input as JSON {"x":[..],"t":[..],"c":..}
    #[arg(long, conflicts_with = "multivector")]
    event: Option<String>,

    /// Raw multivector input, as JSON {"s":..,"v":[..],"b":[..],"p":..} or a
    /// CSV row of 8 coefficients; boosted by operator conjugation
    #[arg(long)]
    multivector: Option<String>,
}

#[derive(Args)]
struct RotateArgs {
    /// Vector to rotate, as x,y,z
    #[arg(long, value_parser = parse_vec3)]
    vector: Vec3Arg,

    /// Rotation angle (radians unless --deg)
    #[arg(long)]
    theta: f64,

    /// Interpret angles as degrees
    #[arg(long)]
    deg: bool,

    /// Rotation axis as x,y,z (normalized if needed)
    #[arg(long, value_parser = parse_vec3)]
    axis: Vec3Arg,
}

#[derive(Args)]
struct ComptonArgs {
    /// Incident wavelength
    #[arg(long = "lambda-i")]
    lambda_i: f64,

    /// Scattering angle (radians unless --deg)
    #[arg(long)]
    theta: f64,

    /// Interpret angles as degrees
    #[arg(long)]
    deg: bool,

    /// Scatterer mass
    #[arg(long)]
    m: f64,

    /// Emit a CSV sweep with this many angles over (0, pi]
    #[arg(long)]
    sweep: Option<usize>,
}

#[derive(Args)]
struct WavepacketArgs {
    /// Wavenumber-space width of the packet
    #[arg(long)]
    sigma: f64,

    /// Central wavenumber
    #[arg(long)]
    k0: f64,

    /// Particle mass
    #[arg(long)]
    m: f64,

    /// Planck constant over 2 pi
    #[arg(long)]
    hbar: f64,

    /// Evaluation time
    #[arg(long, default_value_t = 0.0)]
    t: f64,

    /// Sample window as a,b
    #[arg(long = "x-range", value_parser = parse_range)]
    x_range: Option<(f64, f64)>,

    /// Number of samples across the window
    #[arg(long, default_value_t = 200)]
    samples: usize,

    /// Emit fit diagnostics as JSON instead of the sample CSV
    #[arg(long)]
    fit: bool,

    /// Quadrature node count
    #[arg(long, default_value_t = 257)]
    nodes: usize,
}

#[derive(Args)]
struct CheckArgs {
    /// Which suite to run
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
}

#[derive(Copy, Clone, Debug)]
struct Vec3Arg([f64; 3]);

fn parse_vec3(raw: &str) -> Result<Vec3Arg, String> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected x,y,z with three components, got {raw:?}"));
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(parts.iter()) {
        *slot = part
            .trim()
            .parse()
            .map_err(|e| format!("bad component {part:?}: {e}"))?;
    }
    Ok(Vec3Arg(out))
}

fn parse_range(raw: &str) -> Result<(f64, f64), String> {
    let (a, b) = raw
        .split_once(',')
        .ok_or_else(|| format!("expected a,b range, got {raw:?}"))?;
    let a: f64 = a.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if !(b > a) {
        return Err(format!("empty range {raw:?}"));
    }
    Ok((a, b))
}

/// Usage problems exit 2; check failures exit 1.
enum CliError {
    Usage(String),
}

impl From<Cl3Error> for CliError {
    fn from(e: Cl3Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldPayload {
    #[serde(rename = "E")]
    e: [f64; 3],
    #[serde(rename = "B")]
    b: [f64; 3],
}

#[derive(Serialize)]
struct EventPayload {
    x: [f64; 3],
    t: [f64; 3],
    c: f64,
}

#[derive(Serialize)]
struct BoostFieldReport {
    kind: &'static str,
    units: String,
    phi: f64,
    speed_ratio: f64,
    gamma: f64,
    axis: [f64; 3],
    input: FieldPayload,
    output: FieldPayload,
}

#[derive(Serialize)]
struct BoostEventReport {
    kind: &'static str,
    units: String,
    phi: f64,
    speed_ratio: f64,
    gamma: f64,
    axis: [f64; 3],
    method: &'static str,
    input: EventPayload,
    output: EventPayload,
}

#[derive(Serialize)]
struct BoostMultivectorReport {
    kind: &'static str,
    units: String,
    phi: f64,
    speed_ratio: f64,
    gamma: f64,
    axis: [f64; 3],
    input: cl3::Multivector,
    output: cl3::Multivector,
}

/// Accept either the JSON object form or a CSV row of 8 coefficients.
fn parse_multivector(raw: &str) -> Result<cl3::Multivector, CliError> {
    if raw.trim_start().starts_with('{') {
        return serde_json::from_str(raw)
            .map_err(|e| CliError::Usage(format!("bad --multivector JSON: {e}")));
    }
    cl3::Multivector::from_csv_row(raw).map_err(|e| e.into())
}

#[derive(Serialize)]
struct RotateReport {
    vector: [f64; 3],
    theta: f64,
    axis: [f64; 3],
    rotated: [f64; 3],
}

#[derive(Serialize)]
struct ComptonReport {
    lambda_f: f64,
    shift: f64,
    ledger_residual_norm: f64,
}

#[derive(Serialize)]
struct WavepacketFitReport {
    spread_fit: f64,
    spread_formula: f64,
    phase_rate_fit: f64,
    w0: f64,
}

fn unit_axis(arg: Vec3Arg) -> Result<Vector3, CliError> {
    Vector3(arg.0)
        .normalized()
        .map_err(|_| CliError::Usage("axis must be a nonzero vector".to_string()))
}

/// Write one line to stdout; a closed pipe (e.g. piping into `head`) ends
/// the program quietly instead of panicking.
fn emit(line: std::fmt::Arguments) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_fmt(line).and_then(|_| out.write_all(b"\n")) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(1);
    }
}

fn print_json<T: Serialize>(value: &T) {
    emit(format_args!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serialization cannot fail")
    ));
}

fn run_boost(args: BoostArgs, cfg: &RunConfig) -> Result<ExitCode, CliError> {
    let axis = unit_axis(args.axis)?;
    let phi = match (args.phi, args.speed) {
        (Some(phi), None) => phi,
        (None, Some(speed)) => rapidity_from_speed(speed)?,
        (None, None) => {
            return Err(CliError::Usage(
                "one of --phi or --speed is required".to_string(),
            ))
        }
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let speed_ratio = phi.tanh();
    let gamma = phi.cosh();

    if let Some(raw) = args.multivector {
        let input = parse_multivector(&raw)?;
        let operator = cl3::LorentzOperator::new(phi, axis, 0.0, axis)?;
        let output = operator.transform(&input);
        if cfg.format == Format::Csv {
            emit(format_args!("{}", output.csv_row()));
        } else {
            print_json(&BoostMultivectorReport {
                kind: "multivector",
                units: cfg.units.to_string(),
                phi,
                speed_ratio,
                gamma,
                axis: axis.0,
                input,
                output,
            });
        }
        return Ok(ExitCode::SUCCESS);
    }

    match (args.field, args.event) {
        (Some(field_json), None) => {
            let payload: FieldPayload = serde_json::from_str(&field_json)
                .map_err(|e| CliError::Usage(format!("bad --field JSON: {e}")))?;
            let field =
                FieldMultivector::new(Vector3(payload.e), Vector3(payload.b), cfg.units.c())?;
            let boosted = boost_field(&field, phi, axis)?;
            print_json(&BoostFieldReport {
                kind: "field",
                units: cfg.units.to_string(),
                phi,
                speed_ratio,
                gamma,
                axis: axis.0,
                input: payload,
                output: FieldPayload {
                    e: boosted.e.0,
                    b: boosted.b.0,
                },
            });
            Ok(ExitCode::SUCCESS)
        }
        (None, Some(event_json)) => {
            let event: Event = serde_json::from_str(&event_json)
                .map_err(|e| CliError::Usage(format!("bad --event JSON: {e}")))?;
            let (boosted, method) = match boost_event(&event, phi, axis) {
                Ok(b) => (b, "conjugation"),
                Err(Cl3Error::DegenerateGeometry(_)) => {
                    (boost_event_components(&event, phi, axis)?, "components")
                }
                Err(e) => return Err(e.into()),
            };
            print_json(&BoostEventReport {
                kind: "event",
                units: cfg.units.to_string(),
                phi,
                speed_ratio,
                gamma,
                axis: axis.0,
                method,
                input: EventPayload {
                    x: event.x().0,
                    t: event.t().0,
                    c: event.c(),
                },
                output: EventPayload {
                    x: boosted.x().0,
                    t: boosted.t().0,
                    c: boosted.c(),
                },
            });
            Ok(ExitCode::SUCCESS)
        }
        (None, None) => Err(CliError::Usage(
            "one of --field, --event, or --multivector is required".to_string(),
        )),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

fn run_rotate(args: RotateArgs) -> Result<ExitCode, CliError> {
    let axis = unit_axis(args.axis)?;
    let theta = if args.deg {
        args.theta.to_radians()
    } else {
        args.theta
    };
    let rotated = rotate(Vector3(args.vector.0), theta, axis)?;
    print_json(&RotateReport {
        vector: args.vector.0,
        theta,
        axis: axis.0,
        rotated: rotated.0,
    });
    Ok(ExitCode::SUCCESS)
}

fn run_compton(args: ComptonArgs, cfg: &RunConfig) -> Result<ExitCode, CliError> {
    let theta = if args.deg {
        args.theta.to_radians()
    } else {
        args.theta
    };
    let (h, c) = (cfg.units.h(), cfg.units.c());

    let sweep = match (cfg.format, args.sweep) {
        (Format::Csv, n) => Some(n.unwrap_or(100)),
        (Format::Json, Some(n)) => Some(n),
        (Format::Json, None) => None,
    };

    if let Some(count) = sweep {
        if count == 0 {
            return Err(CliError::Usage("sweep count must be positive".to_string()));
        }
        emit(format_args!("theta,lambda_f,shift,ledger_residual_norm"));
        for i in 1..=count {
            let angle = std::f64::consts::PI * i as f64 / count as f64;
            let sol = cl3::interactions::compton_solve_multivector(
                args.lambda_i,
                angle,
                args.m,
                h,
                c,
            )?;
            let residual = sol.ledger.conservation_residual()?.max_coeff();
            emit(format_args!(
                "{angle},{},{},{residual}",
                sol.lambda_f, sol.shift
            ));
        }
        return Ok(ExitCode::SUCCESS);
    }

    let sol = cl3::interactions::compton_solve_multivector(args.lambda_i, theta, args.m, h, c)?;
    let residual = sol.ledger.conservation_residual()?.max_coeff();
    print_json(&ComptonReport {
        lambda_f: sol.lambda_f,
        shift: sol.shift,
        ledger_residual_norm: residual,
    });
    Ok(ExitCode::SUCCESS)
}

fn run_wavepacket(args: WavepacketArgs) -> Result<ExitCode, CliError> {
    let params = WavePacketParams::new(args.sigma, args.k0, args.m, args.hbar)?;

    if args.fit {
        let spread_fit = fit_spread(&params, args.t)?;
        let phase_rate_fit = phase_rotation_rate(&params, (0.5, 2.5))?;
        print_json(&WavepacketFitReport {
            spread_fit,
            spread_formula: spread(&params, args.t),
            phase_rate_fit,
            w0: params.w0(),
        });
        return Ok(ExitCode::SUCCESS);
    }

    if args.samples < 2 {
        return Err(CliError::Usage("need at least two samples".to_string()));
    }
    let (x_lo, x_hi) = args.x_range.unwrap_or_else(|| {
        let center = params.group_velocity() * args.t;
        let s = spread(&params, args.t);
        (center - 4.0 * s, center + 4.0 * s)
    });
    let spec = QuadratureSpec {
        nodes: args.nodes,
        ..QuadratureSpec::default()
    };
    emit(format_args!("x,re,im,modulus,analytic_modulus"));
    for i in 0..args.samples {
        let x = x_lo + (x_hi - x_lo) * i as f64 / (args.samples - 1) as f64;
        let psi = propagate_quadrature(&params, x, args.t, &spec)?;
        let reference = closed_form(&params, x, args.t);
        emit(format_args!(
            "{x},{},{},{},{}",
            psi.re,
            psi.im,
            psi.modulus(),
            reference.modulus()
        ));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_check(args: CheckArgs, cfg: &RunConfig) -> Result<ExitCode, CliError> {
    let results = run_suite(args.suite, cfg.seed, cfg.tolerance);
    print_json(&results);
    if results.iter().all(|r| r.pass) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match config::resolve(cli.units, cli.format, cli.seed, cli.tol, cli.config.as_deref())
    {
        Ok(cfg) => cfg,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };

    let outcome = match cli.command {
        Command::Boost(args) => run_boost(args, &cfg),
        Command::Rotate(args) => run_rotate(args),
        Command::Compton(args) => run_compton(args, &cfg),
        Command::Wavepacket(args) => run_wavepacket(args),
        Command::Check(args) => run_check(args, &cfg),
    };

    match outcome {
        Ok(code) => code,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
