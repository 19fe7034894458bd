//! Command-line front end. [`run`] parses arguments, dispatches to the library
//! and writes data to `out`, diagnostics to `err`, returning the exit status:
//! 0 on success, 1 for domain errors, 2 for usage errors.

use std::fmt::Write as _;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::decoherence::{classical_crossing_time, decay_table, entanglement_vanishing_time, BathParams, DecayPoint};
use crate::entanglement::analyze;
use crate::error::Error;
use crate::output::fmt_sig;
use crate::phase_space::{check_physical, from_decibels, symplectic_eigenvalues, CovarianceMatrix, TOL_PHYS};
use crate::protocols::{
    network_report, optimal_asymmetric_family, optimized_teleport_fidelity, telecloning_asymmetric_fidelities,
    telecloning_report, telecloning_symmetric_fidelity, FidelityReport,
};
use crate::states::{random_pure_sample, StateSpec};

/// Environment variable holding the default physicality tolerance.
pub const TOL_ENV: &str = "TRIMODE_TOL";

#[derive(Debug, Parser)]
#[command(name = "trimode", version, about = "Three-mode Gaussian states, entanglement sharing and teleportation")]
struct Cli {
    /// Output format; CSV for sample, decohere and sweep, JSON otherwise.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Tolerance for the physicality check of constructed states
    /// (default from TRIMODE_TOL, else 1e-9).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a state and print its covariance matrix.
    MakeState(FamilyArgs),
    /// Entanglement across every bipartition of a state.
    Analyze(FamilyArgs),
    /// Two-party teleportation through the sender/receiver reduction, optimized over local operations.
    Teleport(TeleportArgs),
    /// 1 -> 2 telecloning fidelities.
    Teleclone(TelecloneArgs),
    /// Three-party teleportation network fidelity.
    Network(TeleportArgs),
    /// Random pure three-mode states with fixed a1, as CSV "a1,a2,a3,s,t,m".
    Sample(SampleArgs),
    /// Fidelity and 1|23 log-negativity under local thermal noise.
    Decohere(DecohereArgs),
    /// Fidelity of a protocol over a grid of one family parameter.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    TwoModeSqueezed,
    Ghzw,
    NoisyGhzw,
    TState,
    BassetHound,
    ArbitraryPure,
    AllotmentRaw,
}

/// Family parameters. dB values are converted as `x = 10^(dB / 10)`.
#[derive(Debug, Clone, Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Local mixedness (ghzw, t-state, basset-hound).
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    r1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    r2: Option<f64>,
    /// Thermal noise of noisy-ghzw inputs.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "n_db")]
    n: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    n_db: Option<f64>,
    /// Squeezing factor e^(2r) (noisy-ghzw) or first allotment transmissivity.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "s_db")]
    s: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    s_db: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a3: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    m: Option<f64>,
    /// Second allotment transmissivity.
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
}

#[derive(Debug, Args)]
struct TeleportArgs {
    #[command(flatten)]
    state: FamilyArgs,
    /// Sending mode, one-based.
    #[arg(long, default_value_t = 1)]
    sender: usize,
    /// Receiving mode, one-based.
    #[arg(long, default_value_t = 2)]
    receiver: usize,
}

#[derive(Debug, Args)]
struct TelecloneArgs {
    /// Resource family; without it the closed forms are evaluated.
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a3: Option<f64>,
    /// Position on the optimal asymmetric family, with --optimal-family.
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    #[arg(long, requires = "t")]
    optimal_family: bool,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long, allow_negative_numbers = true)]
    a1: f64,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct DecohereArgs {
    #[command(flatten)]
    state: FamilyArgs,
    /// Mean thermal photon number of each bath.
    #[arg(long, allow_negative_numbers = true)]
    nbar: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Grid in units of gamma t, as start:stop:step.
    #[arg(long, default_value = "0:5:0.05")]
    grid: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Protocol {
    /// Two-party teleportation from mode 1 to mode 2.
    Teleport,
    /// Assisted network from mode 1 to mode 2.
    Network,
    /// Telecloning clone at mode 2.
    TelecloneBob,
    /// Telecloning clone at mode 3.
    TelecloneClaire,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    state: FamilyArgs,
    #[arg(long, value_enum)]
    protocol: Protocol,
    /// Family parameter to vary, by flag name (a, r, n, s-db, ...).
    #[arg(long)]
    param: String,
    /// Values as start:stop:step.
    #[arg(long)]
    grid: String,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

/// Runs one command line.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli, out, err) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn tolerance(cli: &Cli) -> CliResult<f64> {
    let tol = match (cli.tol, std::env::var(TOL_ENV)) {
        (Some(t), _) => t,
        (None, Ok(v)) => match v.trim().parse::<f64>() {
            Ok(t) => t,
            Err(_) => return usage(format!("{TOL_ENV} must be a number, got {v:?}")),
        },
        (None, Err(_)) => TOL_PHYS,
    };
    if !(tol >= 0.0) || !tol.is_finite() {
        return usage(format!("tolerance must be finite and >= 0, got {tol}"));
    }
    Ok(tol)
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let tol = tolerance(cli)?;
    let format = cli.format.unwrap_or(match cli.command {
        Command::Sample(_) | Command::Decohere(_) | Command::Sweep(_) => Format::Csv,
        _ => Format::Json,
    });
    match &cli.command {
        Command::MakeState(fam) => make_state(fam, format, tol, out),
        Command::Analyze(fam) => {
            let spec = build_spec(fam)?;
            let report = analyze(&spec)?;
            match format {
                Format::Json => emit_json(out, &report),
                Format::Csv => {
                    let mut csv = String::from("quantity,partition,value\n");
                    for (p, v) in &report.logneg {
                        writeln!(csv, "logneg,{p},{}", fmt_sig(*v)).unwrap();
                    }
                    for (p, v) in &report.contangle {
                        writeln!(csv, "contangle,{p},{}", fmt_sig(*v)).unwrap();
                    }
                    if let Some(g) = report.residual_gaussian_contangle {
                        writeln!(csv, "residual_contangle,,{}", fmt_sig(g)).unwrap();
                    }
                    writeln!(csv, "purity,,{}", fmt_sig(report.purity)).unwrap();
                    Ok(out.write_all(csv.as_bytes())?)
                }
            }
        }
        Command::Teleport(args) => {
            let spec = build_spec(&args.state)?;
            let (s, r) = modes(&spec, args.sender, args.receiver)?;
            emit_fidelities(out, format, &[teleport_report(&spec, s, r)?])
        }
        Command::Network(args) => {
            let spec = build_spec(&args.state)?;
            let (s, r) = modes(&spec, args.sender, args.receiver)?;
            emit_fidelities(out, format, &[network_report(&spec, s, r)?])
        }
        Command::Teleclone(args) => teleclone(args, format, out),
        Command::Sample(args) => {
            let set = random_pure_sample(args.a1, args.count, args.seed)?;
            if set.rejected > 0 {
                writeln!(err, "note: {} draws rejected", set.rejected)?;
            }
            match format {
                Format::Csv => Ok(out.write_all(set.to_csv().as_bytes())?),
                Format::Json => emit_json(out, &set),
            }
        }
        Command::Decohere(args) => decohere(args, format, out),
        Command::Sweep(args) => sweep(args, format, out, err),
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.into()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn emit_fidelities(out: &mut dyn Write, format: Format, reports: &[FidelityReport]) -> CliResult<()> {
    match format {
        Format::Json if reports.len() == 1 => emit_json(out, &reports[0]),
        Format::Json => emit_json(out, &reports),
        Format::Csv => {
            let mut csv = String::from("sender,receiver,F,beats_classical,beats_nocloning\n");
            for r in reports {
                let recv: Vec<String> = r.receivers.iter().map(|m| m.to_string()).collect();
                writeln!(
                    csv,
                    "{},{},{},{},{}",
                    r.sender,
                    recv.join(" "),
                    fmt_sig(r.fidelity),
                    r.beats_classical,
                    r.beats_no_cloning
                )
                .unwrap();
            }
            Ok(out.write_all(csv.as_bytes())?)
        }
    }
}

#[derive(Serialize)]
struct StateOutput<'a> {
    spec: &'a StateSpec,
    covariance: &'a CovarianceMatrix,
    symplectic_eigenvalues: Vec<f64>,
    local_mixedness: Vec<f64>,
    physical: bool,
}

fn make_state(fam: &FamilyArgs, format: Format, tol: f64, out: &mut dyn Write) -> CliResult<()> {
    let spec = build_spec(fam)?;
    let sigma = spec.build()?;
    let physical = check_physical(&sigma, tol);
    if !physical {
        return Err(Error::InvalidState(format!("constructed state is unphysical at tolerance {tol}")).into());
    }
    match format {
        Format::Json => emit_json(
            out,
            &StateOutput {
                spec: &spec,
                covariance: &sigma,
                symplectic_eigenvalues: symplectic_eigenvalues(sigma.matrix())?.values().to_vec(),
                local_mixedness: sigma.local_mixednesses(),
                physical,
            },
        ),
        Format::Csv => {
            let m = sigma.matrix();
            let mut csv = String::new();
            for i in 0..m.nrows() {
                let row: Vec<String> = (0..m.ncols()).map(|j| fmt_sig(m[(i, j)])).collect();
                writeln!(csv, "{}", row.join(",")).unwrap();
            }
            Ok(out.write_all(csv.as_bytes())?)
        }
    }
}

fn need(value: Option<f64>, flag: &str, family: &str) -> CliResult<f64> {
    match value {
        Some(v) => Ok(v),
        None => usage(format!("--{flag} is required for the {family} family")),
    }
}

fn db_or_linear(linear: Option<f64>, db: Option<f64>) -> Option<f64> {
    linear.or(db.map(from_decibels))
}

fn build_spec(f: &FamilyArgs) -> CliResult<StateSpec> {
    let spec = match f.family {
        Family::TwoModeSqueezed => StateSpec::TwoModeSqueezed { r: need(f.r, "r", "two-mode-squeezed")? },
        Family::Ghzw => match (f.a, f.r, f.r1, f.r2) {
            (Some(a), None, None, None) => StateSpec::ghzw_with_mixedness(a)?,
            (None, Some(r), None, None) => StateSpec::Ghzw { r1: r, r2: r },
            (None, None, Some(r1), Some(r2)) => StateSpec::Ghzw { r1, r2 },
            _ => return usage("ghzw takes exactly one of --a, --r, or --r1 with --r2"),
        },
        Family::NoisyGhzw => {
            let n = need(db_or_linear(f.n, f.n_db), "n", "noisy-ghzw")?;
            match (db_or_linear(f.s, f.s_db), f.r) {
                (Some(s), None) => StateSpec::noisy_ghzw_from_s(n, s)?,
                (None, Some(r)) => StateSpec::NoisyGhzw { n, r },
                _ => return usage("noisy-ghzw takes exactly one of --s, --s-db or --r"),
            }
        }
        Family::TState => match (f.a, f.r) {
            (Some(a), None) => StateSpec::t_state_with_mixedness(a)?,
            (None, Some(r)) => StateSpec::TState { r },
            _ => return usage("t-state takes exactly one of --a or --r"),
        },
        Family::BassetHound => StateSpec::BassetHound { a: need(f.a, "a", "basset-hound")? },
        Family::ArbitraryPure => StateSpec::ArbitraryPure {
            a1: need(f.a1, "a1", "arbitrary-pure")?,
            a2: need(f.a2, "a2", "arbitrary-pure")?,
            a3: need(f.a3, "a3", "arbitrary-pure")?,
        },
        Family::AllotmentRaw => StateSpec::AllotmentRaw {
            m: need(f.m, "m", "allotment-raw")?,
            s: need(f.s, "s", "allotment-raw")?,
            t: need(f.t, "t", "allotment-raw")?,
        },
    };
    spec.validate()?;
    Ok(spec)
}

/// One-based CLI labels to zero-based modes.
fn modes(spec: &StateSpec, sender: usize, receiver: usize) -> CliResult<(usize, usize)> {
    let n = spec.n_modes();
    for m in [sender, receiver] {
        if m == 0 || m > n {
            return usage(format!("modes are numbered 1..={n}, got {m}"));
        }
    }
    if sender == receiver {
        return usage("sender and receiver must differ");
    }
    Ok((sender - 1, receiver - 1))
}

fn teleport_report(spec: &StateSpec, sender: usize, receiver: usize) -> CliResult<FidelityReport> {
    let pair = spec.build()?.reduce(&[sender, receiver])?;
    let opt = optimized_teleport_fidelity(&pair)?;
    Ok(FidelityReport::new(opt.fidelity, sender + 1, vec![receiver + 1], spec.family()))
}

fn teleclone(args: &TelecloneArgs, format: Format, out: &mut dyn Write) -> CliResult<()> {
    let reports = if let Some(family) = args.family {
        let fam = FamilyArgs {
            family,
            a: args.a,
            r: None,
            r1: None,
            r2: None,
            n: None,
            n_db: None,
            s: None,
            s_db: None,
            a1: args.a1,
            a2: args.a2,
            a3: args.a3,
            m: None,
            t: None,
        };
        let spec = build_spec(&fam)?;
        let rep = telecloning_report(&spec)?;
        vec![rep.bob, rep.claire]
    } else if args.optimal_family {
        let a = need(args.a, "a", "optimal asymmetric")?;
        let (fb, fc) = optimal_asymmetric_family(a, args.t.expect("required by clap"))?;
        vec![
            FidelityReport::new(fb, 1, vec![2], "optimal-asymmetric"),
            FidelityReport::new(fc, 1, vec![3], "optimal-asymmetric"),
        ]
    } else if let (Some(a1), Some(a2), Some(a3)) = (args.a1, args.a2, args.a3) {
        let (fb, fc) = telecloning_asymmetric_fidelities(a1, a2, a3)?;
        vec![
            FidelityReport::new(fb, 1, vec![2], "arbitrary-pure"),
            FidelityReport::new(fc, 1, vec![3], "arbitrary-pure"),
        ]
    } else if let Some(a) = args.a {
        let f = telecloning_symmetric_fidelity(a)?;
        vec![
            FidelityReport::new(f, 1, vec![2], "basset-hound"),
            FidelityReport::new(f, 1, vec![3], "basset-hound"),
        ]
    } else {
        return usage("teleclone needs --a, --a1/--a2/--a3, --a with --t --optimal-family, or --family");
    };
    emit_fidelities(out, format, &reports)
}

/// Parses `start:stop:step` into an inclusive, increasing list of values.
fn parse_grid(text: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let nums: Vec<f64> = match parts.iter().map(|p| p.trim().parse::<f64>()).collect() {
        Ok(v) => v,
        Err(_) => return usage(format!("grid must be start:stop:step, got {text:?}")),
    };
    let [start, stop, step] = nums[..] else {
        return usage(format!("grid must be start:stop:step, got {text:?}"));
    };
    if !nums.iter().all(|v| v.is_finite()) || !(step > 0.0) || stop < start {
        return usage(format!("grid needs finite start <= stop and step > 0, got {text:?}"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return usage(format!("grid {text:?} has too many points"));
    }
    Ok((0..count).map(|k| start + k as f64 * step).collect())
}

#[derive(Serialize)]
struct DecayOutput {
    spec: StateSpec,
    n_bar: f64,
    gamma: f64,
    points: Vec<DecayPoint>,
    classical_crossing_gamma_t: Option<f64>,
    entanglement_vanishing_gamma_t: Option<f64>,
}

fn decohere(args: &DecohereArgs, format: Format, out: &mut dyn Write) -> CliResult<()> {
    let spec = build_spec(&args.state)?;
    let gts = parse_grid(&args.grid)?;
    let bath = BathParams::new(args.nbar, args.gamma, 0.0)?;
    let times: Vec<f64> = gts.iter().map(|gt| gt / args.gamma).collect();
    let points = decay_table(&spec, &bath, &times)?;
    match format {
        Format::Csv => {
            let mut csv = String::from("gt,F,logneg_1_23\n");
            for p in &points {
                writeln!(csv, "{},{},{}", fmt_sig(p.gamma_t), fmt_sig(p.fidelity), fmt_sig(p.logneg_1_23)).unwrap();
            }
            Ok(out.write_all(csv.as_bytes())?)
        }
        Format::Json => {
            let horizon = bath.at(times.last().copied().unwrap_or(0.0))?;
            let to_gt = |t: Option<f64>| t.map(|t| t * args.gamma);
            emit_json(
                out,
                &DecayOutput {
                    spec,
                    n_bar: args.nbar,
                    gamma: args.gamma,
                    points,
                    classical_crossing_gamma_t: to_gt(classical_crossing_time(&spec, &horizon)?),
                    entanglement_vanishing_gamma_t: to_gt(entanglement_vanishing_time(&spec, &horizon)?),
                },
            )
        }
    }
}

fn set_param(fam: &FamilyArgs, param: &str, value: f64) -> CliResult<FamilyArgs> {
    let mut f = fam.clone();
    let slot = match param {
        "a" => &mut f.a,
        "r" => &mut f.r,
        "r1" => &mut f.r1,
        "r2" => &mut f.r2,
        "n" => &mut f.n,
        "n-db" | "n_db" => &mut f.n_db,
        "s" => &mut f.s,
        "s-db" | "s_db" => &mut f.s_db,
        "a1" => &mut f.a1,
        "a2" => &mut f.a2,
        "a3" => &mut f.a3,
        "m" => &mut f.m,
        "t" => &mut f.t,
        other => return usage(format!("unknown sweep parameter {other:?}")),
    };
    *slot = Some(value);
    Ok(f)
}

fn sweep_point(args: &SweepArgs, value: f64) -> CliResult<f64> {
    let spec = build_spec(&set_param(&args.state, &args.param, value)?)?;
    let report = match args.protocol {
        Protocol::Teleport => teleport_report(&spec, 0, 1)?,
        Protocol::Network => network_report(&spec, 0, 1)?,
        Protocol::TelecloneBob => telecloning_report(&spec)?.bob,
        Protocol::TelecloneClaire => telecloning_report(&spec)?.claire,
    };
    if !report.fidelity.is_finite() {
        return Err(Error::NumericalDomain(format!("non-finite fidelity at {}={value}", args.param)).into());
    }
    Ok(report.fidelity)
}

#[derive(Serialize)]
struct SweepRow {
    param: String,
    value: f64,
    fidelity: Option<f64>,
    beats_classical: Option<bool>,
    beats_no_cloning: Option<bool>,
    error: Option<String>,
}

fn sweep(args: &SweepArgs, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let mut values = parse_grid(&args.grid)?;
    values.sort_by(f64::total_cmp);
    // reject an unknown parameter before the loop
    set_param(&args.state, &args.param, values[0])?;
    let mut rows = Vec::with_capacity(values.len());
    for v in values {
        let row = match sweep_point(args, v) {
            Ok(f) => SweepRow {
                param: args.param.clone(),
                value: v,
                fidelity: Some(f),
                beats_classical: Some(crate::protocols::beats_classical(f)),
                beats_no_cloning: Some(crate::protocols::beats_no_cloning(f)),
                error: None,
            },
            Err(e) => {
                let msg = match e {
                    CliError::Usage(m) => m,
                    CliError::Domain(e) => e.to_string(),
                    CliError::Io(e) => e.to_string(),
                };
                writeln!(err, "{}={}: {msg}", args.param, fmt_sig(v))?;
                SweepRow {
                    param: args.param.clone(),
                    value: v,
                    fidelity: None,
                    beats_classical: None,
                    beats_no_cloning: None,
                    error: Some(msg),
                }
            }
        };
        rows.push(row);
    }
    if format == Format::Json {
        return emit_json(out, &rows);
    }
    let mut csv = String::from("param,value,F,beats_classical,beats_nocloning\n");
    for r in &rows {
        match (r.fidelity, r.beats_classical, r.beats_no_cloning) {
            (Some(f), Some(c), Some(n)) => {
                writeln!(csv, "{},{},{},{c},{n}", r.param, fmt_sig(r.value), fmt_sig(f)).unwrap()
            }
            _ => writeln!(csv, "{},{},error,,", r.param, fmt_sig(r.value)).unwrap(),
        }
    }
    Ok(out.write_all(csv.as_bytes())?)
}
