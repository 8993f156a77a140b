//! `cardwriter` command-line entry point.
//!
//! Exit codes: 0 success, 1 validation error, 2 I/O or parse error,
//! 3 model name that matches no registry entry. Errors are printed as one
//! line prefixed `error:`, warnings as `warning:`, both on stderr.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cardwriter::catalog::load_catalog;
use cardwriter::registry::{load_registry, merge, serialize_registry};
use cardwriter::request::{WireCustomModel, WireDisclaimers, WireWindow};
use cardwriter::{
    builtin_catalog, builtin_registry, CardError, Engine, RenderFormat, Threshold, WireCardRequest,
    WireModel,
};
use chrono::NaiveDate;
use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser};

const EXIT_VALIDATION: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_UNRESOLVED: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cardwriter",
    version,
    about = "Generate a PaperCard declaring generative-AI use in a manuscript"
)]
struct Cli {
    /// JSON request file (same shape as the HTTP API's `request` object)
    #[arg(long, value_name = "PATH", conflicts_with_all = ["no_ai", "steps", "models", "custom_models", "d1", "d2", "d3", "from", "to"])]
    request: Option<PathBuf>,

    /// Registry file merged over the builtin models (overlay wins)
    #[arg(long, value_name = "PATH", env = "CARDWRITER_REGISTRY")]
    registry: Option<PathBuf>,

    /// Usage-category catalog replacing the builtin one
    #[arg(long, value_name = "PATH", env = "CARDWRITER_CATALOG")]
    catalog: Option<PathBuf>,

    #[arg(long, value_parser = parse_format, default_value = "plain")]
    format: RenderFormat,

    /// Minimum similarity for fuzzy model-name matches, in (0, 1]
    #[arg(long, default_value_t = Threshold::DEFAULT.value())]
    match_threshold: f64,

    /// Write the card here instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Declare that no generative AI was used
    #[arg(long)]
    no_ai: bool,

    /// Usage-category id; repeatable, order is kept
    #[arg(long = "step", value_name = "ID")]
    steps: Vec<String>,

    /// Model name resolved against the registry; repeatable
    #[arg(long = "model", value_name = "NAME")]
    models: Vec<String>,

    /// Model not in the registry, as JSON: {"model": ..., "provider"?, "url"?, "terms"?, "version"?}
    #[arg(long = "model-custom", value_name = "JSON")]
    custom_models: Vec<String>,

    /// We own the rights of the generated text
    #[arg(long)]
    d1: bool,

    /// The AI-generated text raises no ethical issues
    #[arg(long)]
    d2: bool,

    /// The text was inspected for accuracy and plagiarism
    #[arg(long)]
    d3: bool,

    /// First access date, YYYY-MM-DD
    #[arg(long, value_name = "DATE")]
    from: Option<NaiveDate>,

    /// Last access date, YYYY-MM-DD
    #[arg(long, value_name = "DATE")]
    to: Option<NaiveDate>,

    /// Print the effective model registry and exit
    #[arg(long)]
    list_models: bool,

    /// Print the usage-category catalog and exit
    #[arg(long)]
    list_steps: bool,
}

fn parse_format(s: &str) -> Result<RenderFormat, String> {
    s.parse().map_err(|e: cardwriter::renderer::UnknownFormat| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Card(CardError),
    Usage(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => EXIT_IO,
            Failure::Card(e) if e.is_unresolved_model() => EXIT_UNRESOLVED,
            Failure::Card(_) | Failure::Usage(_) => EXIT_VALIDATION,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(m) | Failure::Usage(m) => m.clone(),
            Failure::Card(e) => format!("{} [{}]", e, e.code()),
        }
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn build_engine(cli: &Cli) -> Result<Engine, Failure> {
    let threshold = Threshold::new(cli.match_threshold).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut registry = builtin_registry();
    if let Some(path) = &cli.registry {
        let overlay = load_registry(read_file(path)?.as_slice())
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        registry = merge(&registry, &overlay);
    }
    let catalog = match &cli.catalog {
        Some(path) => load_catalog(read_file(path)?.as_slice())
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => builtin_catalog(),
    };
    Ok(Engine::new(registry, catalog, threshold))
}

/// `--model` and `--model-custom` interleaved in command-line order.
fn ordered_models(cli: &Cli, matches: &ArgMatches) -> Result<Vec<WireModel>, Failure> {
    let mut indexed: Vec<(usize, WireModel)> = Vec::new();
    if let Some(idx) = matches.indices_of("models") {
        indexed.extend(idx.zip(cli.models.iter().cloned().map(WireModel::Name)));
    }
    if let Some(idx) = matches.indices_of("custom_models") {
        for (i, raw) in idx.zip(&cli.custom_models) {
            let custom: WireCustomModel = serde_json::from_str(raw)
                .map_err(|e| Failure::Io(format!("invalid --model-custom JSON: {e}")))?;
            indexed.push((i, WireModel::Custom(custom)));
        }
    }
    indexed.sort_by_key(|(i, _)| *i);
    Ok(indexed.into_iter().map(|(_, m)| m).collect())
}

fn inline_request(cli: &Cli, matches: &ArgMatches) -> Result<WireCardRequest, Failure> {
    let window = match (cli.from, cli.to) {
        (Some(from), Some(to)) => Some(WireWindow { from, to }),
        (None, None) => None,
        _ if cli.no_ai => {
            return Err(Failure::Card(CardError::MutuallyExclusive {
                conflicting: vec!["window"],
            }))
        }
        _ => {
            return Err(Failure::Card(CardError::Incomplete {
                missing: vec!["window"],
            }))
        }
    };
    Ok(WireCardRequest {
        no_ai: cli.no_ai,
        steps: cli.steps.clone(),
        models: ordered_models(cli, matches)?,
        disclaimers: WireDisclaimers {
            d1_rights: cli.d1,
            d2_ethics: cli.d2,
            d3_integrity: cli.d3,
        },
        window,
    })
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, bytes)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

fn run(cli: &Cli, matches: &ArgMatches) -> Result<(), Failure> {
    let engine = build_engine(cli)?;

    if cli.list_models {
        return write_output(cli.output.as_deref(), &serialize_registry(engine.registry()));
    }
    if cli.list_steps {
        let json = serde_json::to_string_pretty(engine.catalog().categories())
            .map_err(|e| Failure::Io(e.to_string()))?;
        return write_output(cli.output.as_deref(), format!("{json}\n").as_bytes());
    }

    let wire = match &cli.request {
        Some(path) => WireCardRequest::from_json(&read_file(path)?)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => inline_request(cli, matches)?,
    };

    let generated = engine.generate(&wire, cli.format).map_err(Failure::Card)?;
    for w in &generated.warnings {
        eprintln!("warning: {w}");
    }
    write_output(cli.output.as_deref(), generated.rendered.body.as_bytes())
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(&cli, &matches) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
