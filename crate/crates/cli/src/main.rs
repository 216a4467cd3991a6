//! `decrement`: inspect epistemic states, apply operators and run postulate
//! checks from the command line.
//!
//! Exit status: 0 on success, 1 when `--expect-pass` finds a failing cell,
//! 2 on usage or input errors.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use decrement::checker::{
    conformance_matrix, successor_satisfiability, verify_representation, CheckConfig, CheckError,
    ConformanceMatrix, PostulateId, SatReport, Scope,
};
use decrement::io::{LayersDocument, LayersError};
use decrement::logic::{ParseError, SignatureError};
use decrement::operators::{achieve_order, iterate_order, OperatorError, UnknownOperator};
use decrement::preorder::{enumerate_preorders, PreorderError, MAX_ENUMERATION_WORLDS};
use decrement::{EpistemicState, OperatorKind, Signature, WorldSet};

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    State { path: PathBuf, source: LayersError },
    #[error("formula: {0}")]
    Formula(#[from] ParseError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    UnknownOperator(#[from] UnknownOperator),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Preorder(#[from] PreorderError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser)]
#[command(
    name = "decrement",
    version,
    about = "Decrement operators for belief contraction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a state file as a layer table.
    Show { state: PathBuf },
    /// Apply an operator to a state.
    Apply(ApplyArgs),
    /// Apply an operator until the formula is no longer believed.
    Achieve(ChangeArgs),
    /// Check postulates and write a conformance matrix as JSON.
    Check(CheckArgs),
    /// Every operator against every postulate.
    Matrix(MatrixArgs),
    /// Count successor orders admitted by a set of DR conditions.
    Sat(SatArgs),
    /// Enumerate all total preorders over the worlds of N atoms.
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct ChangeArgs {
    state: PathBuf,
    #[arg(long)]
    formula: String,
    #[arg(long, default_value = "type1")]
    op: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ApplyArgs {
    #[command(flatten)]
    change: ChangeArgs,
    #[arg(long, default_value_t = 1, conflicts_with = "achieve")]
    steps: usize,
    #[arg(long)]
    achieve: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sample,
}

#[derive(Args)]
struct DomainArgs {
    #[arg(long, default_value_t = 2)]
    atoms: usize,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of sampled cases in sample mode.
    #[arg(long, default_value_t = 1000)]
    count: usize,
    /// Only cases whose changing formula is believed.
    #[arg(long)]
    believed_only: bool,
    #[arg(long)]
    workers: Option<usize>,
    /// Counterexamples kept per report.
    #[arg(long, default_value_t = 5)]
    max_counterexamples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit with status 1 if any report fails.
    #[arg(long)]
    expect_pass: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Operator names, comma-separated, or `all`.
    #[arg(long)]
    op: String,
    /// Postulate names, comma-separated, or `all`.
    #[arg(long, default_value = "all")]
    postulates: String,
    /// Check the representation conditions instead of postulates.
    #[arg(long)]
    representation: bool,
    #[command(flatten)]
    domain: DomainArgs,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    domain: DomainArgs,
}

#[derive(Args)]
struct SatArgs {
    state: PathBuf,
    #[arg(long)]
    formula: String,
    /// Subset of DR8..DR15, comma-separated.
    #[arg(long)]
    constraints: String,
    /// Successors to list.
    #[arg(long, default_value_t = 5)]
    limit: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    atoms: usize,
    /// Print only the count.
    #[arg(long)]
    count_only: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Show { state } => show(&state),
        Command::Apply(args) => {
            let steps = if args.achieve { None } else { Some(args.steps) };
            change(&args.change, steps)
        }
        Command::Achieve(args) => change(&args, None),
        Command::Check(args) => check(args),
        Command::Matrix(args) => {
            let kinds = OperatorKind::ALL.to_vec();
            let signature = Signature::alphabetic(args.domain.atoms)?;
            let m =
                conformance_matrix(&kinds, &PostulateId::ALL, &signature, &config(&args.domain))?;
            emit_matrix(&m, &args.domain)
        }
        Command::Sat(args) => sat(args),
        Command::Enumerate(args) => enumerate(args),
    }
}

fn read_state(path: &Path) -> Result<EpistemicState, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    LayersDocument::parse(&text)
        .and_then(|d| d.to_state())
        .map_err(|source| CliError::State {
            path: path.to_path_buf(),
            source,
        })
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n")).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn show(path: &Path) -> Result<ExitCode, CliError> {
    let state = read_state(path)?;
    print!("{}", render::layer_table(state.signature(), state.order()));
    println!("{}", LayersDocument::from_state(&state).to_json());
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ChangeOutput {
    operator: String,
    formula: String,
    steps: usize,
    before: LayersDocument,
    after: LayersDocument,
}

fn models_of(state: &EpistemicState, text: &str) -> Result<WorldSet, CliError> {
    let f = state.signature().parse(text)?;
    Ok(state
        .signature()
        .models(&f)
        .map_err(OperatorError::SignatureMismatch)?)
}

/// `steps = None` means apply until the formula is given up.
fn change(args: &ChangeArgs, steps: Option<usize>) -> Result<ExitCode, CliError> {
    let state = read_state(&args.state)?;
    let kind: OperatorKind = args.op.parse()?;
    let alpha = models_of(&state, &args.formula)?;
    let (order, n) = match steps {
        Some(n) => (iterate_order(&kind, state.order(), &alpha, n), n),
        None => {
            let r = achieve_order(&kind, state.order(), &alpha)?;
            (r.order, r.steps)
        }
    };
    let after = state.with_order(order);
    let sig = state.signature();
    println!("before:");
    print!("{}", render::layer_table(sig, state.order()));
    println!("after {n} step(s) of {kind} with {}:", args.formula);
    print!("{}", render::layer_table(sig, after.order()));
    if steps.is_none() {
        println!("n = {n}");
    }
    let output = ChangeOutput {
        operator: kind.to_string(),
        formula: args.formula.clone(),
        steps: n,
        before: LayersDocument::from_state(&state),
        after: LayersDocument::from_state(&after),
    };
    let json = serde_json::to_string(&output).expect("outputs always serialize");
    write_or_print(args.out.as_deref(), &json)?;
    Ok(ExitCode::SUCCESS)
}

fn config(d: &DomainArgs) -> CheckConfig {
    let mut c = match d.mode {
        ModeArg::Exhaustive => CheckConfig::exhaustive(),
        ModeArg::Sample => CheckConfig::sample(d.seed, d.count),
    };
    if d.believed_only {
        c.scope = Scope::BelievedInput;
    }
    c.workers = d.workers;
    c.max_counterexamples = d.max_counterexamples;
    c
}

fn parse_kinds(text: &str) -> Result<Vec<OperatorKind>, CliError> {
    if text.trim() == "all" {
        return Ok(OperatorKind::ALL.to_vec());
    }
    let kinds = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<Vec<OperatorKind>, _>>()?;
    if kinds.is_empty() {
        return Err(CliError::Usage("no operator given".into()));
    }
    Ok(kinds)
}

fn check(args: CheckArgs) -> Result<ExitCode, CliError> {
    let kinds = parse_kinds(&args.op)?;
    let signature = Signature::alphabetic(args.domain.atoms)?;
    if args.representation {
        let mut all_pass = true;
        let mut reports = Vec::new();
        for kind in &kinds {
            let r = verify_representation(kind, &signature)?;
            eprint!("{}", render::representation_summary(&r));
            all_pass &= r.passed();
            reports.push(r);
        }
        let json = serde_json::to_string_pretty(&reports).expect("reports always serialize");
        write_or_print(args.domain.out.as_deref(), &json)?;
        return Ok(exit_for(all_pass, args.domain.expect_pass));
    }
    let postulates = PostulateId::parse_list(&args.postulates)?;
    let m = conformance_matrix(&kinds, &postulates, &signature, &config(&args.domain))?;
    emit_matrix(&m, &args.domain)
}

fn emit_matrix(m: &ConformanceMatrix, d: &DomainArgs) -> Result<ExitCode, CliError> {
    eprint!("{}", render::matrix_summary(m));
    write_or_print(d.out.as_deref(), &m.to_json())?;
    Ok(exit_for(m.all_pass(), d.expect_pass))
}

fn exit_for(pass: bool, expect_pass: bool) -> ExitCode {
    if expect_pass && !pass {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn sat(args: SatArgs) -> Result<ExitCode, CliError> {
    let state = read_state(&args.state)?;
    let alpha = models_of(&state, &args.formula)?;
    let constraints = PostulateId::parse_list(&args.constraints)?;
    let found = successor_satisfiability(state.order(), &alpha, &constraints)?;
    let sig = state.signature();
    println!("{} satisfying successor(s)", found.len());
    for (i, s) in found.iter().take(args.limit).enumerate() {
        println!("successor {}:", i + 1);
        print!("{}", render::layer_table(sig, s));
    }
    let report = SatReport::new(sig, state.order(), &alpha, &constraints, &found, args.limit);
    write_or_print(args.out.as_deref(), &report.to_json())?;
    Ok(ExitCode::SUCCESS)
}

fn enumerate(args: EnumerateArgs) -> Result<ExitCode, CliError> {
    let signature = Signature::alphabetic(args.atoms)?;
    let worlds = signature.world_count();
    if worlds > MAX_ENUMERATION_WORLDS {
        return Err(PreorderError::UniverseTooLarge(worlds).into());
    }
    let mut count = 0u64;
    for order in enumerate_preorders(worlds)? {
        count += 1;
        if !args.count_only {
            println!(
                "{}",
                LayersDocument::from_order(&signature, &order).to_json()
            );
        }
    }
    if args.count_only {
        println!("{count}");
    } else {
        eprintln!("{count} total preorders");
    }
    Ok(ExitCode::SUCCESS)
}
