use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use cardwriter::catalog::load_catalog;
use cardwriter::registry::{load_registry, merge};
use cardwriter::{builtin_catalog, builtin_registry, Engine, Threshold};
use cardwriter_service::ServiceConfig;
use clap::Parser;

#[derive(Debug, Parser)]
#[command(name = "cardwriter-serve", version, about = "PaperCard JSON HTTP API")]
struct Args {
    #[arg(long, env = "CARDWRITER_ADDR", default_value = "127.0.0.1:8080")]
    addr: String,

    /// Registry file merged over the builtin models
    #[arg(long, env = "CARDWRITER_REGISTRY")]
    registry: Option<PathBuf>,

    #[arg(long, env = "CARDWRITER_CATALOG")]
    catalog: Option<PathBuf>,

    #[arg(long, env = "CARDWRITER_THRESHOLD", default_value_t = Threshold::DEFAULT.value())]
    match_threshold: f64,

    /// Browser origin allowed by CORS, e.g. http://localhost:5173
    #[arg(long, env = "CARDWRITER_ALLOWED_ORIGIN")]
    allowed_origin: Option<String>,
}

fn engine(args: &Args) -> Result<Engine, String> {
    let threshold = Threshold::new(args.match_threshold).map_err(|e| e.to_string())?;
    let mut registry = builtin_registry();
    if let Some(path) = &args.registry {
        let bytes = fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let overlay =
            load_registry(bytes.as_slice()).map_err(|e| format!("{}: {e}", path.display()))?;
        registry = merge(&registry, &overlay);
    }
    let catalog = match &args.catalog {
        Some(path) => {
            let bytes =
                fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            load_catalog(bytes.as_slice()).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => builtin_catalog(),
    };
    Ok(Engine::new(registry, catalog, threshold))
}

#[tokio::main]
async fn main() -> ExitCode {
    let args = Args::parse();
    let engine = match engine(&args) {
        Ok(e) => e,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let listener = match tokio::net::TcpListener::bind(&args.addr).await {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: cannot listen on {}: {e}", args.addr);
            return ExitCode::from(2);
        }
    };
    eprintln!("listening on http://{}", args.addr);
    let config = ServiceConfig {
        engine,
        allowed_origin: args.allowed_origin,
    };
    let app = cardwriter_service::router(config);
    let result = axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await;
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
