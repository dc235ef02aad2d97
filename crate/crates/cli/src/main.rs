//! `quarter`: command-line front end for the verifiers, experiments and
//! geometry pipelines.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use manifest::{RunManifest, Sink};

#[derive(Parser, Debug, Serialize)]
#[command(
    name = "quarter",
    version,
    about = "Bi-cliques in complements of string graphs: verifiers and experiments"
)]
pub struct Cli {
    /// Base seed for randomized subcommands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Write artifacts and a run manifest here instead of printing to stdout.
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Graph6,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Run an exhaustive verifier; exits 1 if any assertion fails.
    Verify(VerifyArgs),
    /// List partial subdivisions of K_t up to isomorphism.
    EnumeratePatterns(PatternArgs),
    /// Search a graph or weighted graph for an admissible subgraph.
    Admissible(AdmissibleArgs),
    /// Exact minimum of phi over the simplex.
    MinimizePhi(PhiArgs),
    /// Collapse and normalise a weighted complete graph; prints the quotient.
    ReduceWeights(ReduceArgs),
    /// Run the embedding over a seed range from a JSON config.
    Embed(EmbedArgs),
    /// Curve arrangement pipelines.
    #[command(subcommand)]
    Geometry(Geometry),
    /// Bi-clique sizes of the four-clique extremal graphs.
    Extremal(ExtremalArgs),
    /// Re-run a manifest and compare output hashes.
    Replay(ReplayArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    Prop14,
    S8,
    Observations,
    CliqueBound,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub scope: Scope,
    /// Vertex count; prop14 defaults to 5, 6 and 7 in turn, clique-bound to 8.
    #[arg(long)]
    pub s: Option<usize>,
    /// Clique-bound only: at most t - 1 cliques.
    #[arg(long, default_value_t = 5)]
    pub t: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct PatternArgs {
    #[arg(long, default_value_t = 5)]
    pub t: usize,
    #[arg(long, default_value_t = 8)]
    pub max_vertices: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct AdmissibleArgs {
    /// Host graph in graph6.
    #[arg(required_unless_present = "weights", conflicts_with = "weights")]
    pub graph: Option<String>,
    /// Weighted host: a JSON weighted complete graph.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Threshold for the weighted host.
    #[arg(long, default_value = "0")]
    pub eps: String,
    /// Pattern graphs in graph6; defaults to the partial subdivisions of K5
    /// on at most 8 vertices.
    #[arg(long = "pattern")]
    pub patterns: Vec<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct PhiArgs {
    /// Graphs in graph6.
    pub graphs: Vec<String>,
    /// File with one graph6 string per line.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ReduceArgs {
    /// JSON weighted complete graph: {"k":3,"edges":[[0,1,"1/3"],...]}.
    pub input: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct EmbedArgs {
    #[arg(long)]
    pub config: PathBuf,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Geometry {
    /// All crossings of a curve file, as JSON.
    Crossings { input: PathBuf },
    /// The intersection graph of a curve file.
    Graph { input: PathBuf },
    /// Planar separator and the balanced empty pair it yields.
    Separator { input: PathBuf },
    /// Same as the top-level `extremal` subcommand.
    Extremal(ExtremalArgs),
    /// Seeded random polyline arrangement.
    Random(RandomArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct RandomArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub segments: usize,
    #[arg(long, default_value_t = 1000)]
    pub bbox: i64,
    #[arg(long)]
    pub step: Option<i64>,
}

#[derive(Args, Debug, Serialize)]
pub struct ExtremalArgs {
    /// Vertex counts, comma separated or repeated; multiples of 4.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, default_value = "0.1")]
    pub eps: String,
    /// `a..b` (inclusive) or a comma list; defaults to the global seed.
    #[arg(long)]
    pub seeds: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
}

#[derive(Debug)]
pub enum CliError {
    Core(quarter::Error),
    Usage(String),
    Input(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use quarter::Error as E;
        match self {
            CliError::Core(E::Capacity { .. }) => 3,
            CliError::Core(E::Argument(_)) | CliError::Usage(_) => 2,
            CliError::Core(E::EmptyGraph | E::Input(_) | E::Parse { .. } | E::Generation(_)) => 4,
            CliError::Input(_) | CliError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<quarter::Error> for CliError {
    fn from(e: quarter::Error) -> Self {
        CliError::Core(e)
    }
}

/// Whether every assertion of the run held.
pub type Passed = bool;

pub fn run(cli: &Cli, args: Vec<String>) -> Result<Passed, CliError> {
    let name = subcommand_name(&cli.command);
    let params = serde_json::to_value(cli).expect("arguments serialise");
    let mut manifest = RunManifest::new(&name, args, params);
    let sink = Sink::new(cli.out_dir.clone())?;
    let ctx = commands::Ctx {
        seed: cli.seed,
        format: cli.format,
        sink: &sink,
    };
    let passed = match &cli.command {
        Command::Verify(a) => commands::verify(&ctx, a, &mut manifest)?,
        Command::EnumeratePatterns(a) => commands::enumerate_patterns(&ctx, a, &mut manifest)?,
        Command::Admissible(a) => commands::admissible(&ctx, a, &mut manifest)?,
        Command::MinimizePhi(a) => commands::minimize_phi_cmd(&ctx, a, &mut manifest)?,
        Command::ReduceWeights(a) => commands::reduce_weights(&ctx, a, &mut manifest)?,
        Command::Embed(a) => commands::embed(&ctx, a, &mut manifest)?,
        Command::Geometry(g) => commands::geometry(&ctx, g, &mut manifest)?,
        Command::Extremal(a) => commands::extremal(&ctx, a, &mut manifest)?,
        Command::Replay(a) => return commands::replay(cli, a),
    };
    sink.finish(manifest)?;
    Ok(passed)
}

fn subcommand_name(c: &Command) -> String {
    match c {
        Command::Verify(a) => format!("verify-{}", a.scope.to_possible_value().expect("visible").get_name()),
        Command::EnumeratePatterns(_) => "enumerate-patterns".into(),
        Command::Admissible(_) => "admissible".into(),
        Command::MinimizePhi(_) => "minimize-phi".into(),
        Command::ReduceWeights(_) => "reduce-weights".into(),
        Command::Embed(_) => "embed".into(),
        Command::Geometry(g) => match g {
            Geometry::Crossings { .. } => "geometry-crossings".into(),
            Geometry::Graph { .. } => "geometry-graph".into(),
            Geometry::Separator { .. } => "geometry-separator".into(),
            Geometry::Extremal(_) => "geometry-extremal".into(),
            Geometry::Random(_) => "geometry-random".into(),
        },
        Command::Extremal(_) => "extremal".into(),
        Command::Replay(_) => "replay".into(),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("usage error: --workers must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("usage error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli, args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("quarter: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
