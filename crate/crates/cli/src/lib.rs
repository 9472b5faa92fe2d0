//! Command-line front end: `run`, `tree` and `measure` over circuit files.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use qkont::dense::{dense_run, DenseError};
use qkont::measure::{outcome_distribution, sample, tally, MeasureError};
use qkont::trace::{to_dot, trace_tree, TraceError, DEFAULT_MAX_H};
use qkont::{
    format_amplitude, parse_circuit, run_hash, run_list, run_prob, BasisState, Circuit, ParseError,
};

#[derive(Debug, Parser)]
#[command(
    name = "qkont",
    version,
    about = "Continuation-tree simulator for {CCX, H} circuits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a circuit and print the resulting weighted states.
    Run(RunArgs),
    /// Print the evaluation tree as a Graphviz digraph.
    Tree(TreeArgs),
    /// Print exact outcome probabilities and optionally sampled counts.
    Measure(MeasureArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Circuit file, or `-` for stdin.
    pub file: PathBuf,
    /// Initial basis state, qubit 0 first. Defaults to all zeros.
    #[arg(long)]
    pub init: Option<String>,
    /// Render kets as `|01>` instead of `|01⟩`.
    #[arg(long)]
    pub ascii: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CollectorKind {
    List,
    Hash,
    Prob,
    Dense,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value = "hash")]
    pub collector: CollectorKind,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct TreeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Refuse circuits with more H gates than this.
    #[arg(long, default_value_t = DEFAULT_MAX_H)]
    pub max_h: usize,
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Comma-separated qubits to measure. Defaults to all.
    #[arg(long, value_delimiter = ',')]
    pub qubits: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    pub shots: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(ParseError),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Dense(#[from] DenseError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("malformed JSON output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 1 I/O, 3 parse error, 4 validation error, 5 runtime limit.
    /// Usage errors exit with clap's code 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Json(_) => 1,
            CliError::Parse(e) if e.is_validation() => 4,
            CliError::Parse(_) => 3,
            CliError::Invalid(_) | CliError::Measure(_) => 4,
            CliError::Trace(_) | CliError::Dense(_) => 5,
        }
    }
}

/// One line of `run` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputEntry {
    pub state: String,
    pub amplitude: f64,
    /// Exact numerator `k` of `k·(1/√2)^h`; absent for the dense collector.
    pub numerator: Option<i64>,
    pub half_exp: Option<u32>,
}

impl OutputEntry {
    pub fn render(&self, ascii: bool) -> String {
        let close = if ascii { '>' } else { '⟩' };
        format!(
            "({}|{}{close})",
            format_amplitude(self.amplitude),
            self.state
        )
    }
}

pub fn render_text(entries: &[OutputEntry], ascii: bool) -> String {
    entries.iter().map(|e| e.render(ascii) + "\n").collect()
}

pub fn render_json(entries: &[OutputEntry]) -> String {
    serde_json::to_string_pretty(entries).expect("entries serialize") + "\n"
}

/// Re-renders JSON `run` output as text.
pub fn text_from_json(json: &str, ascii: bool) -> Result<String, CliError> {
    let entries: Vec<OutputEntry> = serde_json::from_str(json)?;
    Ok(render_text(&entries, ascii))
}

pub fn load_circuit(path: &PathBuf) -> Result<Circuit, CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(io)?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(io)?
    };
    parse_circuit(&text).map_err(CliError::Parse)
}

pub fn initial_state(init: Option<&str>, circuit: &Circuit) -> Result<BasisState, CliError> {
    let Some(bits) = init else {
        return Ok(BasisState::zeros(circuit.qubits()));
    };
    let state: BasisState = bits
        .parse()
        .map_err(|e: qkont::state::BitstringError| CliError::Invalid(e.to_string()))?;
    if state.width() != circuit.qubits() {
        return Err(CliError::Invalid(format!(
            "--init has {} bit(s) but the circuit has {} qubit(s)",
            state.width(),
            circuit.qubits()
        )));
    }
    Ok(state)
}

pub fn collect_entries(
    kind: CollectorKind,
    circuit: &Circuit,
    init: &BasisState,
) -> Result<Vec<OutputEntry>, CliError> {
    let exact = |state: &BasisState, amp: qkont::Amplitude| OutputEntry {
        state: state.to_string(),
        amplitude: amp.to_f64(),
        numerator: Some(amp.numerator()),
        half_exp: Some(amp.half_exp()),
    };
    Ok(match kind {
        CollectorKind::List => run_list(circuit, init)
            .iter()
            .map(|w| exact(&w.state, w.amp))
            .collect(),
        CollectorKind::Prob => run_prob(circuit, init)
            .iter()
            .map(|w| exact(&w.state, w.amp))
            .collect(),
        CollectorKind::Hash => run_hash(circuit, init)
            .iter()
            .map(|(s, a)| exact(s, a))
            .collect(),
        CollectorKind::Dense => dense_run(circuit, init)?
            .nonzero(1e-12)
            .map(|(state, amplitude)| OutputEntry {
                state: state.to_string(),
                amplitude,
                numerator: None,
                half_exp: None,
            })
            .collect(),
    })
}

pub fn cmd_run(args: &RunArgs) -> Result<String, CliError> {
    let circuit = load_circuit(&args.common.file)?;
    let init = initial_state(args.common.init.as_deref(), &circuit)?;
    let entries = collect_entries(args.collector, &circuit, &init)?;
    Ok(match args.format {
        Format::Text => render_text(&entries, args.common.ascii),
        Format::Json => render_json(&entries),
    })
}

pub fn cmd_tree(args: &TreeArgs) -> Result<String, CliError> {
    let circuit = load_circuit(&args.common.file)?;
    let init = initial_state(args.common.init.as_deref(), &circuit)?;
    let tree = trace_tree(&circuit, &init, args.max_h)?;
    Ok(to_dot(&tree, args.common.ascii))
}

#[derive(Debug, Serialize)]
struct MeasureReport {
    qubits: Vec<usize>,
    distribution: Vec<(String, String)>,
    shots: usize,
    seed: u64,
    counts: Vec<(String, usize)>,
}

pub fn cmd_measure(args: &MeasureArgs) -> Result<String, CliError> {
    let circuit = load_circuit(&args.common.file)?;
    let init = initial_state(args.common.init.as_deref(), &circuit)?;
    let qubits = args
        .qubits
        .clone()
        .unwrap_or_else(|| (0..circuit.qubits()).collect());
    let ket = run_hash(&circuit, &init);
    let dist = outcome_distribution(&ket, &qubits)?;
    let counts = if args.shots > 0 {
        tally(&sample(&ket, &qubits, args.seed, args.shots)?)
    } else {
        Default::default()
    };

    let report = MeasureReport {
        qubits,
        distribution: dist
            .iter()
            .map(|(p, w)| (p.to_string(), w.to_string()))
            .collect(),
        shots: args.shots,
        seed: args.seed,
        counts: counts.iter().map(|(p, c)| (p.to_string(), *c)).collect(),
    };
    if args.format == Format::Json {
        return Ok(serde_json::to_string_pretty(&report)? + "\n");
    }

    let list = |qs: &[usize]| {
        qs.iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut out = format!("distribution on qubits {}:\n", list(&report.qubits));
    for (pattern, p) in &report.distribution {
        let _ = writeln!(out, "{pattern}: {p}");
    }
    if args.shots > 0 {
        let _ = writeln!(
            out,
            "samples ({} shots, seed {}):",
            report.shots, report.seed
        );
        for (pattern, c) in &report.counts {
            let _ = writeln!(out, "{pattern}: {c}");
        }
    }
    Ok(out)
}

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Tree(args) => cmd_tree(args),
        Command::Measure(args) => cmd_measure(args),
    }
}
