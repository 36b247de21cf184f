mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::commands::CliError;

pub const HARD_MAX_RANK: usize = 16;
pub const HARD_MAX_LENGTH: usize = loopflag::weyl::MAX_ENUM_LENGTH;

#[derive(Parser, Debug)]
#[command(
    name = "loopflag",
    version,
    about = "Exact computations for loop groups and their flag manifolds"
)]
pub struct Cli {
    /// Emit a single JSON document instead of text tables.
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest rank accepted (hard limit 16).
    #[arg(long, global = true, default_value_t = 8)]
    pub max_rank: usize,

    /// Longest Weyl group element enumerated (hard limit 40).
    #[arg(long, global = true, default_value_t = 10)]
    pub max_length: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cartan matrix, positive roots, highest root and comarks.
    Roots(SystemArgs),
    /// Value of 2<rho,theta> + <theta,theta> in the Killing normalisation.
    Strange(SystemArgs),
    /// Classify the parabolic of a crossing and list its graded pieces.
    Classify(ClassifyArgs),
    /// Automorphism group of the extended Dynkin diagram.
    Autos(SystemArgs),
    /// Find an automorphism moving a crossing onto one with node 0 crossed.
    Standardize(CrossArgs),
    /// Number of affine Weyl group elements of each length.
    WeylCount(SystemArgs),
    /// Hasse elements (minimal coset representatives) and their strata.
    Hasse(CrossArgs),
    /// Formal dimension of the space of maps of a given multi-degree.
    Degree(DegreeArgs),
    /// Dimension 4 h k of the instanton moduli space.
    InstantonDim(InstantonArgs),
    /// Chern classes k_i of a flag of sheaves.
    Charges(ChargesArgs),
    /// Surviving sheaves and quotient sizes of a flag of sheaves.
    Sheafseq(SheafseqArgs),
    /// Relabel a sheaf index under the Hecke shift.
    HeckeShift(HeckeShiftArgs),
    /// Cyclic action of the Hecke shift on degree vectors.
    HeckeDegrees(HeckeDegreesArgs),
    /// The sl(2) flip example: Borel fixed, P1 carried into P2.
    FlipDemo(FlipDemoArgs),
    /// Block window of a loop matrix.
    Window(WindowArgs),
    /// Random monad data and its Hecke transform.
    Monad(MonadArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct SystemArgs {
    /// Root system family: A, B, C or D.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub rank: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct CrossArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    /// Crossed nodes of the extended diagram, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub cross: Vec<usize>,
}

#[derive(Args, Debug, Serialize)]
pub struct ClassifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub crossing: CrossArgs,
    #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
    pub min_level: i64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub max_level: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct DegreeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub crossing: CrossArgs,
    /// One degree per crossed node, in node order.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub k: Vec<i64>,
}

#[derive(Args, Debug, Serialize)]
pub struct InstantonArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    #[arg(long)]
    pub k: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct ChargesArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub k: i64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub j: Vec<i64>,
}

#[derive(Args, Debug, Serialize)]
pub struct SheafseqArgs {
    /// gl, sp, so-odd or so-even.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_delimiter = ',')]
    pub cross: Vec<usize>,
    /// Index i at which sheaf degrees are reported.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub i: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct HeckeShiftArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub i: i64,
    /// Label such as 3, 2+ or 2-.
    #[arg(long)]
    pub label: String,
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
    #[arg(long)]
    pub inverse: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct HeckeDegreesArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub k: Vec<i64>,
}

#[derive(Args, Debug, Serialize)]
pub struct FlipDemoArgs {
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub lo: i64,
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub hi: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct WindowArgs {
    #[arg(long)]
    pub size: usize,
    /// Entry `row,col,power,coeff` (coeff may be p/q); repeatable.
    #[arg(long = "entry", allow_hyphen_values = true)]
    pub entries: Vec<String>,
    /// Conjugate by an outer automorphism before taking the window.
    #[arg(long)]
    pub conjugate: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lo: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub hi: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct MonadArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also verify that n transforms equal the action of A.
    #[arg(long)]
    pub check_order: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error { message: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommandResult {
    pub command: String,
    pub inputs: Value,
    pub payload: Value,
    pub status: Status,
}

pub struct Limits {
    pub max_rank: usize,
    pub max_length: usize,
}

fn name_and_inputs(cmd: &Command, limits: &Limits) -> (&'static str, Value) {
    let (name, inputs) = match cmd {
        Command::Roots(a) => ("roots", serde_json::to_value(a)),
        Command::Strange(a) => ("strange", serde_json::to_value(a)),
        Command::Classify(a) => ("classify", serde_json::to_value(a)),
        Command::Autos(a) => ("autos", serde_json::to_value(a)),
        Command::Standardize(a) => ("standardize", serde_json::to_value(a)),
        Command::WeylCount(a) => ("weyl-count", serde_json::to_value(a)),
        Command::Hasse(a) => ("hasse", serde_json::to_value(a)),
        Command::Degree(a) => ("degree", serde_json::to_value(a)),
        Command::InstantonDim(a) => ("instanton-dim", serde_json::to_value(a)),
        Command::Charges(a) => ("charges", serde_json::to_value(a)),
        Command::Sheafseq(a) => ("sheafseq", serde_json::to_value(a)),
        Command::HeckeShift(a) => ("hecke-shift", serde_json::to_value(a)),
        Command::HeckeDegrees(a) => ("hecke-degrees", serde_json::to_value(a)),
        Command::FlipDemo(a) => ("flip-demo", serde_json::to_value(a)),
        Command::Window(a) => ("window", serde_json::to_value(a)),
        Command::Monad(a) => ("monad", serde_json::to_value(a)),
    };
    let mut inputs = inputs.unwrap_or(Value::Null);
    if let Value::Object(map) = &mut inputs {
        if matches!(cmd, Command::WeylCount(_) | Command::Hasse(_)) {
            map.insert("max_length".into(), limits.max_length.into());
        }
        if map.contains_key("rank") {
            map.insert("max_rank".into(), limits.max_rank.into());
        }
    }
    (name, inputs)
}

fn execute(cmd: &Command, limits: &Limits) -> Result<Value, CliError> {
    match cmd {
        Command::Roots(a) => commands::roots(a, limits),
        Command::Strange(a) => commands::strange(a, limits),
        Command::Classify(a) => commands::classify(a, limits),
        Command::Autos(a) => commands::autos(a, limits),
        Command::Standardize(a) => commands::standardize(a, limits),
        Command::WeylCount(a) => commands::weyl_count(a, limits),
        Command::Hasse(a) => commands::hasse(a, limits),
        Command::Degree(a) => commands::degree(a, limits),
        Command::InstantonDim(a) => commands::instanton_dim(a, limits),
        Command::Charges(a) => commands::charges(a),
        Command::Sheafseq(a) => commands::sheafseq(a),
        Command::HeckeShift(a) => commands::hecke_shift(a),
        Command::HeckeDegrees(a) => commands::hecke_degrees(a),
        Command::FlipDemo(a) => commands::flip_demo(a),
        Command::Window(a) => commands::window(a),
        Command::Monad(a) => commands::monad(a),
    }
}

/// Runs one invocation and returns the result with its exit code.
pub fn run(cli: &Cli) -> (CommandResult, u8) {
    let limits = Limits {
        max_rank: cli.max_rank,
        max_length: cli.max_length,
    };
    let (name, inputs) = name_and_inputs(&cli.command, &limits);
    let outcome = commands::check_limits(&limits).and_then(|()| execute(&cli.command, &limits));
    let (payload, status, code) = match outcome {
        Ok(p) => (p, Status::Ok, 0),
        Err(e) => (
            Value::Null,
            Status::Error {
                message: e.message(),
            },
            e.exit_code(),
        ),
    };
    let result = CommandResult {
        command: name.to_string(),
        inputs,
        payload,
        status,
    };
    (result, code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (result, code) = run(&cli);
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&result).expect("serializable result")
        );
    } else {
        match &result.status {
            Status::Ok => print!("{}", render::text(&result.payload)),
            Status::Error { message } => eprintln!("error: {message}"),
        }
    }
    ExitCode::from(code)
}
