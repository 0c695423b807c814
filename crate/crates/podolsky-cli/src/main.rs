//! `podolsky`: command-line front end for the library of the same name.
//!
//! Every subcommand prints either plain text / CSV (default) or, with
//! `--json`, a single report object `{command, config, results, provenance}`.
//! Numeric output is rendered to 12 significant digits everywhere, so a
//! given invocation is byte-reproducible.
//!
//! Parameters may come from flags, from a flat JSON file via `--config`
//! (keys are the snake_case flag names), or both; flags win. Exit codes:
//! 0 success, 1 usage or configuration problems, 2 a computation refused
//! by the library (domain, overflow, convergence, non-physical regime).

mod output;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use podolsky::bessel::{self, BesselEval};
use podolsky::constants::{self, PhysicalConstants};
use podolsky::fields::{CylinderGeometry, CylinderSolution, Epsilon, PotentialProfile};
use podolsky::hydrogen::{self, HydrogenModel};
use podolsky::interferometry::{self, BeamSpec, DrivePlan, Experiment, GridSpec};
use podolsky::oracle::{self, HelmholtzBranch};
use podolsky::units::Length;

use output::{emit_json, fmt_sci, num, report};

/// Subcommand names, in declaration order. Kept as data so tests can pin
/// the public surface; a unit test checks it against the clap definition.
#[cfg_attr(not(test), allow(dead_code))]
const COMMANDS: [&str; 9] = [
    "constants",
    "bessel",
    "profile",
    "phase",
    "estimate",
    "sweep",
    "mass",
    "hydrogen",
    "oracle",
];

const DEFAULT_PRESET: &str = "H+";
const DEFAULT_A: &str = "6.9e-4 m";
const DEFAULT_HYDROGEN_A: &str = "1 fm";
const DEFAULT_ONE_MINUS: f64 = 1e-8;
const DEFAULT_DELTA_PHI: f64 = 1e-2;

const BESSEL_CSV_HEADER: &str = "x,i0,i1,k0,k1,i0e,i1e,k0e,k1e";
const BESSEL_SCALED_CSV_HEADER: &str = "x,i0e,i1e,k0e,k1e";

#[derive(Parser)]
#[command(
    name = "podolsky",
    version,
    about = "Probes of a finite photon range: shielded-cylinder interferometry and the hydrogen variational bound",
    long_about = "Numerical toolkit for electrodynamics with a short-range correction of scale a.\n\
                  Tabulates shielded-cylinder potentials, predicts and inverts ion-interferometer\n\
                  phases into estimates of a, and bounds a from hydrogen spectroscopy via a\n\
                  variational ground-state calculation."
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the physical constants in use
    Constants(ConstantsArgs),
    /// Tabulate the modified Bessel functions I0, I1, K0, K1
    Bessel(BesselArgs),
    /// Sample a radial potential/field profile as CSV
    Profile(ProfileArgs),
    /// Predict the interferometer phase for a given length scale
    Phase(PhaseArgs),
    /// Invert a measured phase into a length-scale estimate
    Estimate(EstimateArgs),
    /// Map the estimate over an (epsilon, delta_phi) grid
    Sweep(SweepArgs),
    /// Convert between the length scale and the heavy-mode mass
    Mass(MassArgs),
    /// Hydrogen ground state: variational minimum and spectroscopy bound
    Hydrogen(HydrogenArgs),
    /// Independent numerical checks of the closed-form solutions
    Oracle(OracleArgs),
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Lib(podolsky::Error),
}

impl From<podolsky::Error> for CliError {
    fn from(e: podolsky::Error) -> Self {
        CliError::Lib(e)
    }
}

type CResult<T> = Result<T, CliError>;

fn main() {
    // Rust ignores SIGPIPE by default, which turns `podolsky sweep | head`
    // into a panic. Restore the conventional pipeline behaviour.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; everything else a
            // clap rejects is a usage problem.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let outcome = match cli.command {
        Cmd::Constants(args) => run_constants(args),
        Cmd::Bessel(args) => run_bessel(args),
        Cmd::Profile(args) => run_profile(args),
        Cmd::Phase(args) => run_phase(args),
        Cmd::Estimate(args) => run_estimate(args),
        Cmd::Sweep(args) => run_sweep(args),
        Cmd::Mass(args) => run_mass(args),
        Cmd::Hydrogen(args) => run_hydrogen(args),
        Cmd::Oracle(args) => run_oracle(args),
    };
    match outcome {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(CliError::Lib(err)) => {
            eprintln!("error: {err}");
            std::process::exit(2);
        }
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing

fn load_config<T>(path: &Option<String>) -> CResult<T>
where
    T: Default + serde::de::DeserializeOwned,
{
    let Some(path) = path else {
        return Ok(T::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {path}: {e}")))
}

/// Fill every `None` field of the flag struct from the config-file struct,
/// so explicit flags always win.
macro_rules! merge {
    ($flags:ident, $file:ident: $($field:ident),+ $(,)?) => {
        $( if $flags.$field.is_none() { $flags.$field = $file.$field; } )+
    };
}

fn parse_length(what: &str, text: &str) -> CResult<Length> {
    text.parse::<Length>()
        .map_err(|e| CliError::Usage(format!("{what}: {e}")))
}

fn length_or(what: &str, text: &Option<String>, default: &str) -> CResult<Length> {
    parse_length(what, text.as_deref().unwrap_or(default))
}

fn resolve_epsilon(
    epsilon: Option<f64>,
    one_minus: Option<f64>,
    default: Epsilon,
) -> CResult<Epsilon> {
    match (epsilon, one_minus) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give either --epsilon or --one-minus, not both".into(),
        )),
        (Some(e), None) => Ok(Epsilon::new(e)?),
        (None, Some(m)) => Ok(Epsilon::from_one_minus(m)?),
        (None, None) => Ok(default),
    }
}

#[allow(clippy::too_many_arguments)]
fn resolve_experiment(
    preset: &Option<String>,
    speed: Option<f64>,
    segment_length: Option<f64>,
    outer_radius: &Option<String>,
    beam_radius: &Option<String>,
    arm_separation: &Option<String>,
    delta_v: Option<f64>,
) -> CResult<Experiment> {
    let base = interferometry::preset(preset.as_deref().unwrap_or(DEFAULT_PRESET))?;
    let outer = match outer_radius {
        Some(s) => parse_length("outer radius", s)?.metres(),
        None => base.geometry.outer_radius(),
    };
    let beam_r = match beam_radius {
        Some(s) => parse_length("beam radius", s)?.metres(),
        None => base.geometry.beam_radius(),
    };
    let sep = match arm_separation {
        Some(s) => parse_length("arm separation", s)?.metres(),
        None => base.geometry.arm_separation(),
    };
    let geometry = CylinderGeometry::new(outer, beam_r, sep)?;
    let beam = BeamSpec::new(
        base.beam.label(),
        speed.unwrap_or_else(|| base.beam.speed()),
        segment_length.unwrap_or_else(|| base.beam.segment_length()),
        base.beam.charge(),
    )?;
    Ok(Experiment {
        geometry,
        beam,
        delta_v: delta_v.unwrap_or(base.delta_v),
    })
}

fn print_kv(rows: &[(&str, String)]) {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        println!("{k:width$}  {v}");
    }
}

fn experiment_config_json(exp: &Experiment) -> Value {
    json!({
        "beam": exp.beam.label(),
        "speed_m_per_s": num(exp.beam.speed()),
        "segment_length_m": num(exp.beam.segment_length()),
        "charge_c": num(exp.beam.charge()),
        "outer_radius_m": num(exp.geometry.outer_radius()),
        "beam_radius_m": num(exp.geometry.beam_radius()),
        "arm_separation_m": num(exp.geometry.arm_separation()),
        "delta_v_volts": num(exp.delta_v),
    })
}

// ---------------------------------------------------------------------------
// constants

#[derive(Args, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConstantsArgs {
    /// Emit a JSON report instead of text
    #[arg(long)]
    #[serde(skip)]
    json: bool,
}

fn run_constants(args: ConstantsArgs) -> CResult<()> {
    let set = PhysicalConstants::CODATA_2018;
    let rows: [(&str, f64, &str); 9] = [
        ("hbar", constants::HBAR, "J s"),
        ("speed_of_light", constants::SPEED_OF_LIGHT, "m/s"),
        ("elementary_charge", constants::ELEMENTARY_CHARGE, "C"),
        ("electron_volt", constants::ELECTRON_VOLT_J, "J"),
        ("hbar_c", constants::HBAR_C_MEV_FM, "MeV fm"),
        ("electron_mass", constants::ELECTRON_MASS_MEV, "MeV"),
        ("fine_structure", constants::FINE_STRUCTURE, ""),
        ("bohr_radius", constants::BOHR_RADIUS_M, "m"),
        ("bohr_radius_derived", set.bohr_radius_derived(), "m"),
    ];
    if args.json {
        let mut results = serde_json::Map::new();
        for (name, value, _) in rows {
            results.insert(name.to_string(), num(value));
        }
        emit_json(&report("constants", json!({}), Value::Object(results)));
    } else {
        let mut text: Vec<(&str, String)> = rows
            .iter()
            .map(|(name, value, unit)| (*name, format!("{} {unit}", fmt_sci(*value))))
            .collect();
        text.push(("version", constants::CONSTANTS_VERSION.to_string()));
        print_kv(&text);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// bessel

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Spacing {
    Linear,
    Log,
}

#[derive(Args, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct BesselArgs {
    /// Explicit evaluation point; repeatable. Overrides the range flags.
    #[arg(long = "x", value_name = "X")]
    x: Option<Vec<f64>>,
    /// Range start [default: 0.25]
    #[arg(long)]
    x_min: Option<f64>,
    /// Range end [default: 30]
    #[arg(long)]
    x_max: Option<f64>,
    /// Number of range points [default: 16]
    #[arg(long)]
    points: Option<usize>,
    /// Point spacing over the range [default: linear]
    #[arg(long, value_enum)]
    spacing: Option<Spacing>,
    /// Only the exponentially scaled variants (no overflow at any x)
    #[arg(long)]
    #[serde(default)]
    scaled_only: bool,
    /// Flat JSON file supplying any of the parameter keys
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    config: Option<String>,
    /// Emit a JSON report instead of CSV
    #[arg(long)]
    #[serde(skip)]
    json: bool,
}

fn axis_points(lo: f64, hi: f64, count: usize, spacing: Spacing) -> CResult<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(CliError::Usage(format!(
            "range [{lo}, {hi}] must be finite with min <= max"
        )));
    }
    if count == 0 || (count == 1 && lo != hi) {
        return Err(CliError::Usage(
            "need at least 2 points unless the endpoints coincide".into(),
        ));
    }
    if spacing == Spacing::Log && lo <= 0.0 {
        return Err(CliError::Usage("log spacing needs a positive range".into()));
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = match spacing {
        Spacing::Linear => (lo, hi),
        Spacing::Log => (lo.ln(), hi.ln()),
    };
    let step = (b - a) / (count - 1) as f64;
    let mut pts: Vec<f64> = (0..count)
        .map(|i| {
            let v = if i == count - 1 { b } else { a + step * i as f64 };
            match spacing {
                Spacing::Linear => v,
                Spacing::Log => v.exp(),
            }
        })
        .collect();
    // exp(ln x) can be off by an ulp; endpoints are contractual.
    pts[0] = lo;
    *pts.last_mut().unwrap() = hi;
    Ok(pts)
}

fn run_bessel(mut args: BesselArgs) -> CResult<()> {
    let file: BesselArgs = load_config(&args.config)?;
    merge!(args, file: x, x_min, x_max, points, spacing);
    let scaled_only = args.scaled_only || file.scaled_only;

    let xs = match &args.x {
        Some(list) if !list.is_empty() => list.clone(),
        _ => axis_points(
            args.x_min.unwrap_or(0.25),
            args.x_max.unwrap_or(30.0),
            args.points.unwrap_or(16),
            args.spacing.unwrap_or(Spacing::Linear),
        )?,
    };

    if scaled_only {
        let mut rows = Vec::with_capacity(xs.len());
        for &x in &xs {
            rows.push([x, bessel::i0e(x)?, bessel::i1e(x)?, bessel::k0e(x)?, bessel::k1e(x)?]);
        }
        if args.json {
            let columns = ["x", "i0e", "i1e", "k0e", "k1e"];
            let mut results = serde_json::Map::new();
            for (j, name) in columns.iter().enumerate() {
                results.insert(
                    name.to_string(),
                    Value::Array(rows.iter().map(|r| num(r[j])).collect()),
                );
            }
            let config = json!({ "scaled_only": true, "points": rows.len() });
            emit_json(&report("bessel", config, Value::Object(results)));
        } else {
            println!("{BESSEL_SCALED_CSV_HEADER}");
            for row in &rows {
                println!(
                    "{},{},{},{},{}",
                    fmt_sci(row[0]),
                    fmt_sci(row[1]),
                    fmt_sci(row[2]),
                    fmt_sci(row[3]),
                    fmt_sci(row[4])
                );
            }
        }
        return Ok(());
    }

    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        rows.push(BesselEval::compute(x)?);
    }
    if args.json {
        let mut results = serde_json::Map::new();
        let column = |f: fn(&BesselEval) -> f64| Value::Array(rows.iter().map(|r| num(f(r))).collect());
        results.insert("x".into(), column(|r| r.x));
        results.insert("i0".into(), column(|r| r.i0));
        results.insert("i1".into(), column(|r| r.i1));
        results.insert("k0".into(), column(|r| r.k0));
        results.insert("k1".into(), column(|r| r.k1));
        results.insert("i0e".into(), column(|r| r.i0_scaled));
        results.insert("i1e".into(), column(|r| r.i1_scaled));
        results.insert("k0e".into(), column(|r| r.k0_scaled));
        results.insert("k1e".into(), column(|r| r.k1_scaled));
        let config = json!({ "scaled_only": false, "points": rows.len() });
        emit_json(&report("bessel", config, Value::Object(results)));
    } else {
        println!("{BESSEL_CSV_HEADER}");
        for r in &rows {
            println!(
                "{},{},{},{},{},{},{},{},{}",
                fmt_sci(r.x),
                fmt_sci(r.i0),
                fmt_sci(r.i1),
                fmt_sci(r.k0),
                fmt_sci(r.k1),
                fmt_sci(r.i0_scaled),
                fmt_sci(r.i1_scaled),
                fmt_sci(r.k0_scaled),
                fmt_sci(r.k1_scaled)
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// profile

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Shape {
    /// Interior of the driven shell
    Cylinder,
    /// Coefficient profile around a point charge
    Point,
}

#[derive(Args, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ProfileArgs {
    /// Which source to profile [default: cylinder]
    #[arg(long, value_enum)]
    shape: Option<Shape>,
    /// Length scale, with unit suffix fm/mm/cm/m [default: 6.9e-4 m]
    #[arg(long)]
    a: Option<String>,
    /// Shell potential, volts [default: 4e5]
    #[arg(long)]
    v_total: Option<f64>,
    /// Interior plateau fraction, in (0, 1]
    #[arg(long)]
    epsilon: Option<f64>,
    /// Complement 1 - epsilon, exact even when tiny [default: 0.5]
    #[arg(long)]
    one_minus: Option<f64>,
    /// Shell radius [default: 0.27 m]
    #[arg(long)]
    outer_radius: Option<String>,
    /// Number of radii, axis to shell inclusive [default: 101]
    #[arg(long)]
    samples: Option<usize>,
    /// Outermost radius for point profiles [default: 10 a]
    #[arg(long)]
    r_max: Option<String>,
    /// Flat JSON file supplying any of the parameter keys
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    config: Option<String>,
    /// Emit a JSON report instead of CSV
    #[arg(long)]
    #[serde(skip)]
    json: bool,
}

fn profile_results_json(profile: &PotentialProfile) -> Value {
    json!({
        "r_m": profile.radii.iter().map(|&v| num(v)).collect::<Vec<_>>(),
        "phi_V": profile.potential.iter().map(|&v| num(v)).collect::<Vec<_>>(),
        "E_V_per_m": profile.field.iter().map(|&v| num(v)).collect::<Vec<_>>(),
    })
}

fn run_profile(mut args: ProfileArgs) -> CResult<()> {
    let file: ProfileArgs = load_config(&args.config)?;
    merge!(args, file: shape, a, v_total, epsilon, one_minus, outer_radius, samples, r_max);

    let shape = args.shape.unwrap_or(Shape::Cylinder);
    let a = length_or("a", &args.a, DEFAULT_A)?.metres();
    let samples = args.samples.unwrap_or(101);

    let (profile, config) = match shape {
        Shape::Cylinder => {
            let v_total = args.v_total.unwrap_or(4e5);
            let epsilon = resolve_epsilon(args.epsilon, args.one_minus, Epsilon::new(0.5)?)?;
            let outer = length_or("outer radius", &args.outer_radius, "0.27 m")?.metres();
            // Only the shell radius matters for sampling; the arm fields
            // just have to be admissible.
            let geometry = CylinderGeometry::new(outer, 0.5 * outer, 0.0)?;
            let solution = CylinderSolution::new(a, v_total, epsilon)?;
            let profile = PotentialProfile::sample_cylinder(&solution, &geometry, samples)?;
            let config = json!({
                "shape": "cylinder",
                "a_m": num(a),
                "v_total_volts": num(v_total),
                "epsilon": num(epsilon.value()),
                "outer_radius_m": num(outer),
                "samples": samples,
            });
            (profile, config)
        }
        Shape::Point => {
            let r_max = match &args.r_max {
                Some(s) => parse_length("r_max", s)?.metres(),
                None => 10.0 * a,
            };
            let profile = PotentialProfile::sample_point_charge(a, r_max, samples)?;
            let config = json!({
                "shape": "point",
                "a_m": num(a),
                "r_max_m": num(r_max),
                "samples": samples,
            });
            (profile, config)
        }
    };

    if args.json {
        emit_json(&report("profile", config, profile_results_json(&profile)));
    } else {
        print!("{}", profile.to_csv(fmt_sci));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// phase

#[derive(Args, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct PhaseArgs {
    /// Base configuration, "H+" or "Cs+" [default: H+]
    #[arg(long)]
    preset: Option<String>,
    /// Length scale to predict for, with unit suffix [default: 6.9e-4 m]
    #[arg(long)]
    a: Option<String>,
    /// Beam speed, m/s (overrides the preset)
    #[arg(long)]
    speed: Option<f64>,
    /// Driven section length, m (overrides the preset)
    #[arg(long)]
    segment_length: Option<f64>,
    /// Shell radius (overrides the preset)
    #[arg(long)]
    outer_radius: Option<String>,
    /// Inner arm radius (overrides the preset)
    #[arg(long)]
    beam_radius: Option<String>,
    /// Arm separation (overrides the preset)
    #[arg(long)]
    arm_separation: Option<String>,
    /// Drive amplitude, volts (overrides the preset)
    #[arg(long)]
    delta_v: Option<f64>,
    /// Interior plateau fraction, in (0, 1]
    #[arg(long)]
    epsilon: Option<f64>,
    /// Complement 1 - epsilon [default: 1e-8]
    #[arg(long)]
    one_minus: Option<f64>,
    /// Flat JSON file supplying any of the parameter keys
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    config: Option<String>,
    /// Emit a JSON report instead of text
    #[arg(long)]
    #[serde(skip)]
    json: bool,
}

fn run_phase(mut args: PhaseArgs) -> CResult<()> {
    let file: PhaseArgs = load_config(&args.config)?;
    merge!(args, file: preset, a, speed, segment_length, outer_radius, beam_radius,
           arm_separation, delta_v, epsilon, one_minus);

    let exp = resolve_experiment(
        &args.preset,
        args.speed,
        args.segment_length,
        &args.outer_radius,
        &args.beam_radius,
        &args.arm_separation,
        args.delta_v,
    )?;
    let a = length_or("a", &args.a, DEFAULT_A)?.metres();
    let epsilon = resolve_epsilon(
        args.epsilon,
        args.one_minus,
        Epsilon::from_one_minus(DEFAULT_ONE_MINUS)?,
    )?;
    let plan = DrivePlan::new(exp.delta_v, 0.0, epsilon)?;

    let exact = interferometry::phase_difference(&exp.geometry, &exp.beam, a, &plan)?;
    let asymptotic = interferometry::phase_difference_asymptotic(&exp.geometry, &exp.beam, a, &plan)?;
    let gap = if exact != 0.0 {
        (asymptotic - exact).abs() / exact.abs()
    } else {
        0.0
    };

    if args.json {
        let mut config = experiment_config_json(&exp);
        config["a_m"] = num(a);
        config["epsilon"] = num(epsilon.value());
        config["one_minus_epsilon"] = num(epsilon.one_minus());
        let results = json!({
            "phase_exact_rad": num(exact),
            "phase_asymptotic_rad": num(asymptotic),
            "relative_gap": num(gap),
        });
        emit_json(&report("phase", config, results));
    } else {
        print_kv(&[
            ("beam", exp.beam.label().to_string()),
            ("a", format!("{} m", fmt_sci(a))),
            ("phase_exact", format!("{} rad", fmt_sci(exact))),
            ("phase_asymptotic", format!("{} rad", fmt_sci(asymptotic))),
            ("relative_gap", fmt_sci(gap)),
        ]);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// estimate

#[derive(Args, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct EstimateArgs {
    /// Base configuration, "H+" or "Cs+" [default: H+]
    #[arg(long)]
    preset: Option<String>,
    /// Measured phase response, radians [default: 1e-2]
    #[arg(long)]
    delta_phi: Option<f64>,
    /// Beam speed, m/s (overrides the preset)
    #[arg(long)]
    speed: Option<f64>,
    /// Driven section length, m (overrides the preset)
    #[arg(long)]
    segment_length: Option<f64>,
    /// Shell radius (overrides the preset)
    #[arg(long)]
    outer_radius: Option<String>,
    /// Inner arm radius (overrides the preset)
    #[arg(long)]
    beam_radius: Option<String>,
    /// Arm separation (overrides the preset)
    #[arg(long)]
    arm_separation: Option<String>,
    /// Drive amplitude, volts (overrides the preset)
    #[arg(long)]
    delta_v: Option<f64>,
    /// Interior plateau fraction, in (0, 1]
    #[arg(long)]
    epsilon: Option<f64>,
    /// Complement 1 - epsilon [default: 1e-8]
    #[arg(long)]
    one_minus: Option<f64>,
    /// Flat JSON file supplying any of the parameter keys
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    config: Option<String>,
    /// Emit a JSON report instead of text
    #[arg(long)]
    #[serde(skip)]
    json: bool,
}

fn run_estimate(mut args: EstimateArgs) -> CResult<()> {
    let file: EstimateArgs = load_config(&args.config)?;
    merge!(args, file: preset, delta_phi, speed, segment_length, outer_radius, beam_radius,
           arm_separation, delta_v, epsilon, one_minus);

    let exp = resolve_experiment(
        &args.preset,
        args.speed,
        args.segment_length,
        &args.outer_radius,
        &args.beam_radius,
        &args.arm_separation,
        args.delta_v,
    )?;
    let delta_phi = args.delta_phi.unwrap_or(DEFAULT_DELTA_PHI);
    let epsilon = resolve_epsilon(
        args.epsilon,
        args.one_minus,
        Epsilon::from_one_minus(DEFAULT_ONE_MINUS)?,
    )?;
    let plan = DrivePlan::new(exp.delta_v, delta_phi, epsilon)?;

    let a = interferometry::estimate_a(&exp.geometry, &exp.beam, &plan)?;
    let scale = interferometry::photon_mass(a)?;
    // Diagnostics: how deep into the asymptotic regime the inversion sits,
    // and how well it closes against both phase models.
    let x_big = exp.geometry.outer_radius() / a;
    let x1 = exp.geometry.far_arm_radius() / a;
    let exact = interferometry::phase_difference(&exp.geometry, &exp.beam, a, &plan)?;
    let asymptotic =
        interferometry::phase_difference_asymptotic(&exp.geometry, &exp.beam, a, &plan)?;
    let roundtrip = (asymptotic - delta_phi).abs() / delta_phi;

    if args.json {
        let mut config = experiment_config_json(&exp);
        config["delta_phi_rad"] = num(delta_phi);
        config["epsilon"] = num(epsilon.value());
        config["one_minus_epsilon"] = num(epsilon.one_minus());
        let results = json!({
            "a_m": num(a),
            "a_cm": num(a * 1e2),
            "mass_kg": num(scale.mass_kg),
            "mass_ev": num(scale.mass_ev),
            "outer_radius_over_a": num(x_big),
            "far_arm_over_a": num(x1),
            "phase_exact_at_estimate_rad": num(exact),
            "phase_asymptotic_at_estimate_rad": num(asymptotic),
            "asymptotic_roundtrip_rel": num(roundtrip),
        });
        emit_json(&report("estimate", config, results));
    } else {
        print_kv(&[
            ("beam", exp.beam.label().to_string()),
            ("a", format!("{} m  ({} cm)", fmt_sci(a), fmt_sci(a * 1e2))),
            ("photon_mass", format!("{} kg  ({} eV)", fmt_sci(scale.mass_kg), fmt_sci(scale.mass_ev))),
            ("outer_radius/a", fmt_sci(x_big)),
            ("far_arm/a", fmt_sci(x1)),
            ("phase_exact(a)", format!("{} rad", fmt_sci(exact))),
            ("phase_asymptotic(a)", format!("{} rad", fmt_sci(asymptotic))),
            ("roundtrip_rel", fmt_sci(roundtrip)),
        ]);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// sweep

#[derive(Args, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SweepArgs {
    /// Base configuration, "H+" or "Cs+" [default: H+]
    #[arg(long)]
    preset: Option<String>,
    /// Beam speed, m/s (overrides the preset)
    #[arg(long)]
    speed: Option<f64>,
    /// Driven section length, m (overrides the preset)
    #[arg(long)]
    segment_length: Option<f64>,
    /// Shell radius (overrides the preset)
    #[arg(long)]
    outer_radius: Option<String>,
    /// Inner arm radius (overrides the preset)
    #[arg(long)]
    beam_radius: Option<String>,
    /// Arm separation (overrides the preset)
    #[arg(long)]
    arm_separation: Option<String>,
    /// Drive amplitude, volts (overrides the preset)
    #[arg(long)]
    delta_v: Option<f64>,
    /// Smallest plateau fraction [default: 0.001]
    #[arg(long)]
    epsilon_min: Option<f64>,
    /// Largest plateau fraction [default: 0.999]
    #[arg(long)]
    epsilon_max: Option<f64>,
    /// Plateau-axis size [default: 100]
    #[arg(long)]
    epsilon_count: Option<usize>,
    /// Smallest phase, radians [default: 1e-4]
    #[arg(long)]
    delta_phi_min: Option<f64>,
    /// Largest phase, radians [default: 1e-2]
    #[arg(long)]
    delta_phi_max: Option<f64>,
    /// Phase-axis size (log-spaced) [default: 100]
    #[arg(long)]
    delta_phi_count: Option<usize>,
    /// Print only the extremes and mask count
    #[arg(long)]
    #[serde(skip)]
    summary: bool,
    /// Flat JSON file supplying any of the parameter keys
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    config: Option<String>,
    /// Emit a JSON report instead of CSV
    #[arg(long)]
    #[serde(skip)]
    json: bool,
}

fn run_sweep(mut args: SweepArgs) -> CResult<()> {
    let file: SweepArgs = load_config(&args.config)?;
    merge!(args, file: preset, speed, segment_length, outer_radius, beam_radius, arm_separation,
           delta_v, epsilon_min, epsilon_max, epsilon_count,
           delta_phi_min, delta_phi_max, delta_phi_count);

    let exp = resolve_experiment(
        &args.preset,
        args.speed,
        args.segment_length,
        &args.outer_radius,
        &args.beam_radius,
        &args.arm_separation,
        args.delta_v,
    )?;
    let defaults = GridSpec::default();
    let grid = GridSpec {
        epsilon_min: args.epsilon_min.unwrap_or(defaults.epsilon_min),
        epsilon_max: args.epsilon_max.unwrap_or(defaults.epsilon_max),
        epsilon_count: args.epsilon_count.unwrap_or(defaults.epsilon_count),
        delta_phi_min: args.delta_phi_min.unwrap_or(defaults.delta_phi_min),
        delta_phi_max: args.delta_phi_max.unwrap_or(defaults.delta_phi_max),
        delta_phi_count: args.delta_phi_count.unwrap_or(defaults.delta_phi_count),
    };
    let table = interferometry::sweep(&exp.geometry, &exp.beam, exp.delta_v, &grid)?;
    let (min_a, max_a) = table.min_max().unwrap_or((f64::NAN, f64::NAN));

    if args.json {
        let mut config = experiment_config_json(&exp);
        config["epsilon_count"] = json!(grid.epsilon_count);
        config["delta_phi_count"] = json!(grid.delta_phi_count);
        let cells: Vec<Value> = table
            .epsilon_axis
            .iter()
            .enumerate()
            .map(|(i, _)| {
                Value::Array(
                    (0..table.delta_phi_axis.len())
                        .map(|j| match table.value(i, j) {
                            Some(v) => num(v),
                            None => Value::Null,
                        })
                        .collect(),
                )
            })
            .collect();
        let results = json!({
            "epsilon_axis": table.epsilon_axis.iter().map(|&v| num(v)).collect::<Vec<_>>(),
            "delta_phi_axis_rad": table.delta_phi_axis.iter().map(|&v| num(v)).collect::<Vec<_>>(),
            "a_m": cells,
            "min_a_m": num(min_a),
            "max_a_m": num(max_a),
            "masked_cells": table.masked_count(),
        });
        emit_json(&report("sweep", config, results));
    } else if args.summary {
        print_kv(&[
            ("beam", exp.beam.label().to_string()),
            ("cells", format!("{}", table.cells.len())),
            ("masked", format!("{}", table.masked_count())),
            ("min_a", format!("{} m", fmt_sci(min_a))),
            ("max_a", format!("{} m", fmt_sci(max_a))),
        ]);
    } else {
        print!("{}", table.to_csv(fmt_sci));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// mass

#[derive(Args, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct MassArgs {
    /// Length scale, with unit suffix fm/mm/cm/m
    #[arg(long)]
    a: Option<String>,
    /// Heavy-mode mass in eV, to invert into a length scale
    #[arg(long)]
    mass_ev: Option<f64>,
    /// Flat JSON file supplying any of the parameter keys
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    config: Option<String>,
    /// Emit a JSON report instead of text
    #[arg(long)]
    #[serde(skip)]
    json: bool,
}

fn run_mass(mut args: MassArgs) -> CResult<()> {
    let file: MassArgs = load_config(&args.config)?;
    merge!(args, file: a, mass_ev);

    let a = match (&args.a, args.mass_ev) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "give either --a or --mass-ev, not both".into(),
            ))
        }
        (Some(s), None) => parse_length("a", s)?.metres(),
        (None, Some(ev)) => {
            if !(ev.is_finite() && ev > 0.0) {
                return Err(CliError::Usage(format!("mass {ev} eV must be positive")));
            }
            let mass_kg = ev * constants::ELEMENTARY_CHARGE
                / (constants::SPEED_OF_LIGHT * constants::SPEED_OF_LIGHT);
            constants::HBAR / (mass_kg * constants::SPEED_OF_LIGHT)
        }
        (None, None) => {
            return Err(CliError::Usage(
                "need a length scale (--a) or a mass (--mass-ev)".into(),
            ))
        }
    };
    let scale = interferometry::photon_mass(a)?;

    if args.json {
        let results = json!({
            "a_m": num(scale.a_m),
            "mass_kg": num(scale.mass_kg),
            "mass_ev": num(scale.mass_ev),
        });
        emit_json(&report("mass", json!({}), results));
    } else {
        print_kv(&[
            ("a", format!("{} m", fmt_sci(scale.a_m))),
            ("mass", format!("{} kg", fmt_sci(scale.mass_kg))),
            ("mass", format!("{} eV", fmt_sci(scale.mass_ev))),
        ]);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// hydrogen

#[derive(Args, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct HydrogenArgs {
    /// Length scale with unit suffix; electron mass and charge are physical
    #[arg(long)]
    a: Option<String>,
    /// Dimensionless a / bohr_radius; natural units (m = e^2 = 1)
    #[arg(long)]
    a_over_bohr: Option<f64>,
    /// Re-derive the minimum energy by radial quadrature as a cross-check
    #[arg(long)]
    #[serde(default)]
    quadrature: bool,
    /// Turn a spectroscopy uncertainty into a bound on the length scale
    #[arg(long)]
    #[serde(default)]
    bound: bool,
    /// Relative ground-state energy uncertainty for --bound [default: 8.83e-8]
    #[arg(long)]
    sigma_rel: Option<f64>,
    /// Flat JSON file supplying any of the parameter keys
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    config: Option<String>,
    /// Emit a JSON report instead of text
    #[arg(long)]
    #[serde(skip)]
    json: bool,
}

fn run_hydrogen(mut args: HydrogenArgs) -> CResult<()> {
    let file: HydrogenArgs = load_config(&args.config)?;
    merge!(args, file: a, a_over_bohr, sigma_rel);
    let quadrature = args.quadrature || file.quadrature;
    let bound = args.bound || file.bound;

    if bound {
        let sigma = args.sigma_rel.unwrap_or(hydrogen::SIGMA_REL_DEFAULT);
        let result = hydrogen::bound_a(sigma)?;
        if args.json {
            let config = json!({ "sigma_rel": num(result.sigma_rel) });
            let results = json!({
                "a_max_fm": num(result.a_max_fm),
                "a_max_m": num(result.a_max_fm * 1e-15),
                "mass_min_mev": num(result.mass_min_mev),
            });
            emit_json(&report("hydrogen", config, results));
        } else {
            print_kv(&[
                ("sigma_rel", fmt_sci(result.sigma_rel)),
                ("a_max", format!("{} fm", fmt_sci(result.a_max_fm))),
                ("mass_min", format!("{} MeV", fmt_sci(result.mass_min_mev))),
            ]);
        }
        return Ok(());
    }

    let (model, units) = match (&args.a, args.a_over_bohr) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "give either --a or --a-over-bohr, not both".into(),
            ))
        }
        (None, Some(t)) => (HydrogenModel::new(1.0, 1.0, t)?, "natural"),
        (a, None) => {
            let len = length_or("a", a, DEFAULT_HYDROGEN_A)?;
            (HydrogenModel::physical(len)?, "MeV")
        }
    };

    let result = hydrogen::minimize(&model)?;
    let residual = hydrogen::stationarity_residual(&model, result.gamma_star);
    let quad_check = if quadrature {
        Some(hydrogen::energy_quadrature(&model, result.gamma_star)?)
    } else {
        None
    };

    if args.json {
        let config = json!({
            "units": units,
            "a_over_bohr": num(model.a_over_bohr()),
            "perturbative_regime": model.is_perturbative(),
        });
        let mut results = json!({
            "gamma_star": num(result.gamma_star),
            "gamma_star_bracket": num(result.gamma_star_bracket),
            "e_star": num(result.e_star),
            "stationary_points": result.roots.iter().map(|&v| num(v)).collect::<Vec<_>>(),
            "stationary_energies": result.energies.iter().map(|&v| num(v)).collect::<Vec<_>>(),
            "perturbative_gamma": num(result.perturbative_gamma),
            "perturbative_energy": num(result.perturbative_energy),
            "stationarity_residual": num(residual),
        });
        if units == "MeV" {
            results["e_star_ev"] = num(result.e_star * 1e6);
        }
        if let Some(q) = &quad_check {
            results["quadrature_energy"] = num(q.energy);
            results["quadrature_error_estimate"] = num(q.error_estimate);
            results["quadrature_normalization"] = num(q.normalization);
            results["quadrature_rel_gap"] =
                num((q.energy - result.e_star).abs() / result.e_star.abs());
        }
        emit_json(&report("hydrogen", config, results));
    } else {
        let mut rows = vec![
            ("units", units.to_string()),
            ("a_over_bohr", fmt_sci(model.a_over_bohr())),
            ("gamma_star", fmt_sci(result.gamma_star)),
            ("gamma_star_bracket", fmt_sci(result.gamma_star_bracket)),
            ("e_star", fmt_sci(result.e_star)),
            ("perturbative_gamma", fmt_sci(result.perturbative_gamma)),
            ("perturbative_energy", fmt_sci(result.perturbative_energy)),
            ("stationarity_residual", fmt_sci(residual)),
        ];
        if units == "MeV" {
            rows.insert(5, ("e_star_eV", fmt_sci(result.e_star * 1e6)));
        }
        if let Some(q) = &quad_check {
            rows.push(("quadrature_energy", fmt_sci(q.energy)));
            rows.push((
                "quadrature_rel_gap",
                fmt_sci((q.energy - result.e_star).abs() / result.e_star.abs()),
            ));
            rows.push(("quadrature_normalization", fmt_sci(q.normalization)));
        }
        print_kv(&rows);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// oracle

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum OracleMode {
    /// Integrate the radial ODE and compare with the closed form
    Radial,
    /// Residual of the defining equation for the Bessel evaluators
    Helmholtz,
    /// Cylinder potential against its general-solution coefficients
    Reduction,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum HelmholtzKind {
    First,
    Second,
    Both,
}

#[derive(Args, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct OracleArgs {
    /// Which check to run [default: radial]
    #[arg(long, value_enum)]
    mode: Option<OracleMode>,
    /// Shell-to-scale ratio R/a for the radial check [default: 10]
    #[arg(long)]
    r_over_a: Option<f64>,
    /// Interior plateau fraction [default: 0.5]
    #[arg(long)]
    epsilon: Option<f64>,
    /// Complement 1 - epsilon
    #[arg(long)]
    one_minus: Option<f64>,
    /// Shell potential, volts [default: 4e5]
    #[arg(long)]
    v_total: Option<f64>,
    /// Shell radius [default: 0.27 m]
    #[arg(long)]
    outer_radius: Option<String>,
    /// RK4 step count [default: 100000]
    #[arg(long)]
    steps: Option<usize>,
    /// Length scale for the helmholtz and reduction checks
    #[arg(long)]
    a: Option<String>,
    /// Which Bessel branch to check [default: both]
    #[arg(long, value_enum)]
    kind: Option<HelmholtzKind>,
    /// Smallest sample r/a for the helmholtz check [default: 0.75]
    #[arg(long)]
    r_over_a_min: Option<f64>,
    /// Largest sample r/a for the helmholtz check [default: 5]
    #[arg(long)]
    r_over_a_max: Option<f64>,
    /// Helmholtz sample count [default: 18]
    #[arg(long)]
    helmholtz_samples: Option<usize>,
    /// Comparison radii for the reduction check [default: 100]
    #[arg(long)]
    samples: Option<usize>,
    /// Print the full grid as CSV (radial mode)
    #[arg(long)]
    #[serde(skip)]
    csv: bool,
    /// Flat JSON file supplying any of the parameter keys
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    config: Option<String>,
    /// Emit a JSON report instead of text
    #[arg(long)]
    #[serde(skip)]
    json: bool,
}

fn run_oracle(mut args: OracleArgs) -> CResult<()> {
    let file: OracleArgs = load_config(&args.config)?;
    merge!(args, file: mode, r_over_a, epsilon, one_minus, v_total, outer_radius, steps,
           a, kind, r_over_a_min, r_over_a_max, helmholtz_samples, samples);

    match args.mode.unwrap_or(OracleMode::Radial) {
        OracleMode::Radial => {
            let outer = length_or("outer radius", &args.outer_radius, "0.27 m")?.metres();
            let r_over_a = args.r_over_a.unwrap_or(10.0);
            if !(r_over_a.is_finite() && r_over_a > 0.0) {
                return Err(CliError::Usage(format!(
                    "r_over_a = {r_over_a} must be positive"
                )));
            }
            let a = outer / r_over_a;
            let epsilon = resolve_epsilon(args.epsilon, args.one_minus, Epsilon::new(0.5)?)?;
            let v_total = args.v_total.unwrap_or(4e5);
            let steps = args.steps.unwrap_or(100_000);
            let solution = CylinderSolution::new(a, v_total, epsilon)?;
            // The integrator only reads the shell radius; the arm fields
            // just have to be admissible.
            let geometry = CylinderGeometry::new(outer, 0.5 * outer, 0.0)?;
            let run = oracle::integrate_radial(&solution, &geometry, steps)?;
            if args.csv {
                print!("{}", run.to_csv(fmt_sci));
            } else if args.json {
                let config = json!({
                    "mode": "radial",
                    "r_over_a": num(r_over_a),
                    "epsilon": num(epsilon.value()),
                    "v_total_volts": num(v_total),
                    "outer_radius_m": num(outer),
                    "steps": steps,
                });
                let results = json!({
                    "max_rel_err": num(run.max_rel_err),
                    "tolerance": num(oracle::ODE_TOLERANCE),
                    "grid_points": run.grid.len(),
                });
                emit_json(&report("oracle", config, results));
            } else {
                print_kv(&[
                    ("mode", "radial".to_string()),
                    ("r_over_a", fmt_sci(r_over_a)),
                    ("steps", format!("{steps}")),
                    ("max_rel_err", fmt_sci(run.max_rel_err)),
                    ("tolerance", fmt_sci(oracle::ODE_TOLERANCE)),
                    ("status", "ok".to_string()),
                ]);
            }
        }
        OracleMode::Helmholtz => {
            let a = length_or("a", &args.a, "1 m")?.metres();
            let lo = args.r_over_a_min.unwrap_or(0.75);
            let hi = args.r_over_a_max.unwrap_or(5.0);
            let count = args.helmholtz_samples.unwrap_or(18);
            let ratios = axis_points(lo, hi, count, Spacing::Linear)?;
            let radii: Vec<f64> = ratios.iter().map(|&t| t * a).collect();
            let kind = args.kind.unwrap_or(HelmholtzKind::Both);
            let first = match kind {
                HelmholtzKind::Second => None,
                _ => Some(oracle::check_modified_helmholtz(
                    a,
                    &radii,
                    HelmholtzBranch::FirstKind,
                )?),
            };
            let second = match kind {
                HelmholtzKind::First => None,
                _ => Some(oracle::check_modified_helmholtz(
                    a,
                    &radii,
                    HelmholtzBranch::SecondKind,
                )?),
            };
            if args.json {
                let config = json!({
                    "mode": "helmholtz",
                    "a_m": num(a),
                    "r_over_a_min": num(lo),
                    "r_over_a_max": num(hi),
                    "samples": count,
                });
                let mut results = json!({});
                if let Some(v) = first {
                    results["residual_first_kind"] = num(v);
                }
                if let Some(v) = second {
                    results["residual_second_kind"] = num(v);
                }
                emit_json(&report("oracle", config, results));
            } else {
                let mut rows = vec![
                    ("mode", "helmholtz".to_string()),
                    ("r_over_a", format!("[{}, {}] x{count}", fmt_sci(lo), fmt_sci(hi))),
                ];
                if let Some(v) = first {
                    rows.push(("residual_first_kind", fmt_sci(v)));
                }
                if let Some(v) = second {
                    rows.push(("residual_second_kind", fmt_sci(v)));
                }
                print_kv(&rows);
            }
        }
        OracleMode::Reduction => {
            let a = length_or("a", &args.a, "2.7e-2 m")?.metres();
            let outer = length_or("outer radius", &args.outer_radius, "0.27 m")?.metres();
            let epsilon = resolve_epsilon(args.epsilon, args.one_minus, Epsilon::new(0.5)?)?;
            let v_total = args.v_total.unwrap_or(4e5);
            let samples = args.samples.unwrap_or(100);
            if samples == 0 {
                return Err(CliError::Usage("need at least one sample radius".into()));
            }
            let solution = CylinderSolution::new(a, v_total, epsilon)?;
            let geometry = CylinderGeometry::new(outer, 0.5 * outer, 0.0)?;
            let general = solution.general_coefficients(&geometry)?;
            let mut worst = 0.0_f64;
            for i in 1..=samples {
                let r = outer * i as f64 / samples as f64;
                let direct = solution.potential(&geometry, r)?;
                let via_general = general.value(r)?;
                let rel = (direct - via_general).abs() / direct.abs().max(f64::MIN_POSITIVE);
                worst = worst.max(rel);
            }
            if args.json {
                let config = json!({
                    "mode": "reduction",
                    "a_m": num(a),
                    "epsilon": num(epsilon.value()),
                    "v_total_volts": num(v_total),
                    "outer_radius_m": num(outer),
                    "samples": samples,
                });
                let results = json!({
                    "max_rel_diff": num(worst),
                    "coeff_i0": num(general.coeff_i0),
                    "coeff_k0": num(general.coeff_k0),
                    "coeff_const": num(general.coeff_const),
                    "coeff_log": num(general.coeff_log),
                });
                emit_json(&report("oracle", config, results));
            } else {
                print_kv(&[
                    ("mode", "reduction".to_string()),
                    ("max_rel_diff", fmt_sci(worst)),
                    ("coeff_i0", fmt_sci(general.coeff_i0)),
                    ("coeff_k0", fmt_sci(general.coeff_k0)),
                    ("coeff_const", fmt_sci(general.coeff_const)),
                    ("coeff_log", fmt_sci(general.coeff_log)),
                ]);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_internally_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn command_table_matches_the_definition() {
        let cmd = Cli::command();
        let names: Vec<&str> = cmd.get_subcommands().map(|c| c.get_name()).collect();
        assert_eq!(names, COMMANDS);
    }

    #[test]
    fn sci_format_is_twelve_significant_digits() {
        assert_eq!(fmt_sci(1.0), "1.00000000000e0");
        assert_eq!(fmt_sci(6.916360895315421e-4), "6.91636089532e-4");
        assert_eq!(fmt_sci(-2.5e8), "-2.50000000000e8");
    }

    #[test]
    fn json_numbers_keep_the_formatted_digits() {
        // serde_json re-encodes the number but keeps every digit; positive
        // exponents gain an explicit sign.
        let v = num(6.916360895315421e-4);
        assert_eq!(serde_json::to_string(&v).unwrap(), "6.91636089532e-4");
        let v = num(4e5);
        assert_eq!(serde_json::to_string(&v).unwrap(), "4.00000000000e+5");
    }

    #[test]
    fn axis_points_pins_endpoints() {
        let pts = axis_points(1e-4, 1e-2, 7, Spacing::Log).unwrap();
        assert_eq!(pts[0], 1e-4);
        assert_eq!(*pts.last().unwrap(), 1e-2);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }
}
