//! `qteleport` — run teleportation protocols and their classical analogues
//! from the command line, or drive the verification suite.
//!
//! Exit codes: 0 on success, 2 for configuration errors (bad or missing
//! flags, out-of-range parameters), 1 for runtime failures including a
//! failing verification suite.

mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use qteleport::classical::{
    enumerate_delocalize, enumerate_otp, run_otp, BitSource, CopyDiscipline, SharedKey,
};
use qteleport::protocol::{
    run_standard, run_two_step, CorrectionTable, ResourceKind, StopAfter, Transcript,
};
use qteleport::rng::{weighted_index, SeedStream};
use qteleport::verify::{run_suite, run_suite_with_table, Suite};
use qteleport::BlochParams;

#[derive(Parser)]
#[command(name = "qteleport", version, about = "Exact teleportation simulator and verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate or sample a protocol and emit a transcript.
    Run(RunArgs),
    /// Run the verification suite and report each check.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProtocolArg {
    Standard,
    TwoStep,
    Otp,
    Delocalize,
}

impl ProtocolArg {
    fn name(self) -> &'static str {
        match self {
            ProtocolArg::Standard => "standard",
            ProtocolArg::TwoStep => "two-step",
            ProtocolArg::Otp => "otp",
            ProtocolArg::Delocalize => "delocalize",
        }
    }

    fn is_quantum(self) -> bool {
        matches!(self, ProtocolArg::Standard | ProtocolArg::TwoStep)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ResourceArg {
    Entangled,
    Classical,
}

impl From<ResourceArg> for ResourceKind {
    fn from(r: ResourceArg) -> ResourceKind {
        match r {
            ResourceArg::Entangled => ResourceKind::Entangled,
            ResourceArg::Classical => ResourceKind::ClassicalCorrelated,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StopArg {
    Step1,
    Step2,
}

impl From<StopArg> for StopAfter {
    fn from(s: StopArg) -> StopAfter {
        match s {
            StopArg::Step1 => StopAfter::Step1,
            StopArg::Step2 => StopAfter::Step2,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Enumerate,
    Sample,
}

impl ModeArg {
    fn name(self) -> &'static str {
        match self {
            ModeArg::Enumerate => "enumerate",
            ModeArg::Sample => "sample",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl FormatArg {
    fn name(self) -> &'static str {
        match self {
            FormatArg::Json => "json",
            FormatArg::Csv => "csv",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Quantum,
    Classical,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Quantum => Suite::Quantum,
            SuiteArg::Classical => Suite::Classical,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// Protocol to run.
    #[arg(long, value_enum)]
    protocol: ProtocolArg,

    /// Polar angle of the input state in radians (quantum protocols only).
    #[arg(long)]
    theta: Option<f64>,

    /// Azimuthal phase of the input state in radians (quantum protocols only).
    #[arg(long)]
    phi: Option<f64>,

    /// Shared resource for the two-step protocol (default: entangled).
    #[arg(long, value_enum)]
    resource: Option<ResourceArg>,

    /// Stop the two-step protocol after step 1 or step 2 (default: step2).
    #[arg(long, value_enum)]
    stop_after: Option<StopArg>,

    /// Enumerate every branch exactly, or draw shots at random.
    #[arg(long, value_enum, default_value_t = ModeArg::Enumerate)]
    mode: ModeArg,

    /// Number of shots to draw (sample mode only).
    #[arg(long)]
    shots: Option<u64>,

    /// RNG seed for sample mode.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Probability that the classical input bit is 0 (classical protocols only).
    #[arg(long)]
    p: Option<f64>,

    /// Output format; CSV covers the classical protocols only.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Write the transcript to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which checks to run.
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,

    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Report format.
    #[arg(long, value_enum, default_value_t = ReportFormatArg::Text)]
    format: ReportFormatArg,

    /// Write the report to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Swap the X and Z corrections so the teleportation-correctness check
    /// fails; exists to exercise the failure path end to end.
    #[arg(long, hide = true)]
    corrupt_corrections: bool,
}

enum CliError {
    /// Invalid or inconsistent configuration; exits with code 2.
    Config(String),
    /// Runtime failure, including a failing verification suite; exits 1.
    Failure(String),
}

fn config_err<S: Into<String>>(msg: S) -> CliError {
    CliError::Config(msg.into())
}

fn internal(e: qteleport::Error) -> CliError {
    CliError::Failure(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Reject flag combinations that don't describe a runnable configuration.
fn validate_run(args: &RunArgs) -> Result<(), CliError> {
    if args.protocol.is_quantum() {
        if args.theta.is_none() || args.phi.is_none() {
            return Err(config_err(
                "--theta and --phi are required for quantum protocols (standard, two-step)",
            ));
        }
        if args.p.is_some() {
            return Err(config_err(
                "--p applies only to classical protocols (otp, delocalize)",
            ));
        }
    } else {
        if args.p.is_none() {
            return Err(config_err(
                "--p is required for classical protocols (otp, delocalize)",
            ));
        }
        if args.theta.is_some() || args.phi.is_some() {
            return Err(config_err(
                "--theta and --phi apply only to quantum protocols (standard, two-step)",
            ));
        }
    }
    if args.protocol != ProtocolArg::TwoStep
        && (args.resource.is_some() || args.stop_after.is_some())
    {
        return Err(config_err(
            "--resource and --stop-after apply only to the two-step protocol",
        ));
    }
    match args.mode {
        ModeArg::Sample => match args.shots {
            None => return Err(config_err("--shots is required in sample mode")),
            Some(0) => return Err(config_err("--shots must be at least 1")),
            Some(_) => {}
        },
        ModeArg::Enumerate => {
            if args.shots.is_some() {
                return Err(config_err("--shots applies only in sample mode"));
            }
        }
    }
    if args.format == FormatArg::Csv && args.protocol.is_quantum() {
        return Err(config_err(
            "CSV output covers classical protocols only; use --format json",
        ));
    }
    Ok(())
}

/// Echo the effective configuration. Only fields that influence the output
/// appear: angles for quantum protocols, the bias for classical ones, the
/// resolved resource and stop point for two-step, and shots plus seed in
/// sample mode.
fn run_config_json(args: &RunArgs) -> Value {
    let mut m = Map::new();
    m.insert("protocol".into(), json!(args.protocol.name()));
    if let Some(theta) = args.theta {
        m.insert("theta".into(), json!(theta));
    }
    if let Some(phi) = args.phi {
        m.insert("phi".into(), json!(phi));
    }
    if args.protocol == ProtocolArg::TwoStep {
        let resource: ResourceKind = args.resource.unwrap_or(ResourceArg::Entangled).into();
        m.insert("resource".into(), json!(resource.name()));
        let stop = match args.stop_after.unwrap_or(StopArg::Step2) {
            StopArg::Step1 => "step1",
            StopArg::Step2 => "step2",
        };
        m.insert("stop_after".into(), json!(stop));
    }
    if let Some(p) = args.p {
        m.insert("p".into(), json!(p));
    }
    m.insert("mode".into(), json!(args.mode.name()));
    if args.mode == ModeArg::Sample {
        m.insert("shots".into(), json!(args.shots.expect("validated")));
        m.insert("seed".into(), json!(args.seed));
    }
    m.insert("format".into(), json!(args.format.name()));
    Value::Object(m)
}

fn cmd_run(args: &RunArgs) -> Result<(), CliError> {
    validate_run(args)?;
    let text = match args.protocol {
        ProtocolArg::Standard | ProtocolArg::TwoStep => render_quantum(args)?,
        ProtocolArg::Otp => render_otp(args)?,
        ProtocolArg::Delocalize => render_delocalize(args)?,
    };
    emit(&text, args.output.as_deref())
}

fn render_quantum(args: &RunArgs) -> Result<String, CliError> {
    let params = BlochParams::new(args.theta.expect("validated"), args.phi.expect("validated"))
        .map_err(|e| CliError::Config(e.to_string()))?;
    let transcripts = match args.protocol {
        ProtocolArg::Standard => run_standard(params),
        ProtocolArg::TwoStep => run_two_step(
            params,
            args.resource.unwrap_or(ResourceArg::Entangled).into(),
            args.stop_after.unwrap_or(StopArg::Step2).into(),
        ),
        _ => unreachable!("quantum protocols only"),
    }
    .map_err(internal)?;

    let branch = |t: &Transcript, shot: Option<u64>| -> Result<Value, CliError> {
        let fidelity = t.fidelity_to_target().map_err(internal)?;
        Ok(render::quantum_branch(t, fidelity, shot))
    };

    let branches = match args.mode {
        ModeArg::Enumerate => transcripts
            .iter()
            .map(|t| branch(t, None))
            .collect::<Result<Vec<_>, _>>()?,
        ModeArg::Sample => {
            let shots = args.shots.expect("validated");
            let weights: Vec<f64> = transcripts.iter().map(|t| t.probability).collect();
            let mut rng = SeedStream::new(args.seed).substream(0);
            (0..shots)
                .map(|shot| {
                    let idx = weighted_index(&weights, &mut rng);
                    branch(&transcripts[idx], Some(shot))
                })
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    Ok(render::document(run_config_json(args), branches))
}

fn render_otp(args: &RunArgs) -> Result<String, CliError> {
    let p = args.p.expect("validated");
    let source = BitSource::new(p).map_err(|e| CliError::Config(e.to_string()))?;
    match args.mode {
        ModeArg::Enumerate => {
            let rows = enumerate_otp(p).map_err(internal)?;
            Ok(match args.format {
                FormatArg::Csv => render::otp_csv(&rows),
                FormatArg::Json => {
                    let branches = rows.iter().map(|r| render::otp_branch(r, None)).collect();
                    render::document(run_config_json(args), branches)
                }
            })
        }
        ModeArg::Sample => {
            let shots = args.shots.expect("validated") as usize;
            let seeds = SeedStream::new(args.seed);
            let mut key = SharedKey::generate(shots, &mut seeds.substream(0));
            let run = run_otp(
                &source,
                &mut key,
                shots,
                CopyDiscipline::Destroy,
                &mut seeds.substream(1),
            )
            .map_err(internal)?;
            Ok(match args.format {
                FormatArg::Csv => render::otp_sample_csv(&run.records),
                FormatArg::Json => {
                    let branches = run
                        .records
                        .iter()
                        .enumerate()
                        .map(|(i, rec)| {
                            let p_input = if rec.input.is_one() {
                                source.p_one()
                            } else {
                                source.p_zero()
                            };
                            render::otp_record_branch(rec, p_input * 0.5, i as u64)
                        })
                        .collect();
                    render::document(run_config_json(args), branches)
                }
            })
        }
    }
}

fn render_delocalize(args: &RunArgs) -> Result<String, CliError> {
    let p = args.p.expect("validated");
    let rows = enumerate_delocalize(p).map_err(|e| CliError::Config(e.to_string()))?;
    match args.mode {
        ModeArg::Enumerate => Ok(match args.format {
            FormatArg::Csv => render::delocalize_csv(&rows),
            FormatArg::Json => {
                let branches = rows
                    .iter()
                    .map(|r| render::delocalize_branch(r, None))
                    .collect();
                render::document(run_config_json(args), branches)
            }
        }),
        ModeArg::Sample => {
            let shots = args.shots.expect("validated");
            let weights: Vec<f64> = rows.iter().map(|r| r.probability).collect();
            let mut rng = SeedStream::new(args.seed).substream(0);
            let drawn: Vec<_> = (0..shots)
                .map(|_| rows[weighted_index(&weights, &mut rng)])
                .collect();
            Ok(match args.format {
                FormatArg::Csv => render::delocalize_sample_csv(&drawn),
                FormatArg::Json => {
                    let branches = drawn
                        .iter()
                        .enumerate()
                        .map(|(i, r)| render::delocalize_branch(r, Some(i as u64)))
                        .collect();
                    render::document(run_config_json(args), branches)
                }
            })
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let suite: Suite = args.suite.into();
    let report = if args.corrupt_corrections {
        run_suite_with_table(suite, args.seed, &CorrectionTable::swapped_x_z())
    } else {
        run_suite(suite, args.seed)
    }
    .map_err(internal)?;

    let text = match args.format {
        ReportFormatArg::Text => render::report_text(&report),
        ReportFormatArg::Json => render::report_json(&report),
    };
    emit(&text, args.output.as_deref())?;

    if report.passed {
        Ok(())
    } else {
        let failing: Vec<&str> = report.failing().iter().map(|c| c.name.as_str()).collect();
        Err(CliError::Failure(format!(
            "verification failed: {}",
            failing.join(", ")
        )))
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            CliError::Failure(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
