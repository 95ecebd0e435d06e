use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fusion_kk::catalog::{builtin, load_model_from_path, Model};
use fusion_kk::exact_arith::parse_rational;
use fusion_kk::modular::{enumerate_modular_invariants, EnumerationOptions};
use fusion_kk::reports::{self, KkRequest, Outcome};
use fusion_kk::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "fusion-kk", version, about = "Fusion rings as integer matrices, KK products and modular invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModelArgs {
    /// Built-in model: trivial, ising, fibonacci, su2, z (or su2_4, z_5).
    model: Option<String>,
    /// Level for su2.
    #[arg(long)]
    k: Option<u32>,
    /// Order for z.
    #[arg(long)]
    n: Option<u32>,
    /// Load a model file instead of a built-in.
    #[arg(long, conflicts_with = "model")]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Fusion and modular verification report.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Fusion matrix of one sector acting on K_0.
    Eta {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        sector: String,
    },
    /// KK classes of the sectors, products and the homomorphism checks.
    Kk {
        #[command(flatten)]
        model: ModelArgs,
        /// Two sector labels `a,b`; prints a x b.
        #[arg(long)]
        product: Option<String>,
        #[arg(long)]
        theorem2: bool,
        #[arg(long)]
        properness: bool,
    },
    /// Fusion tensor recomputed from S, with a diff against the model.
    Verlinde {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Classify modular invariants.
    Invariants {
        #[command(flatten)]
        model: ModelArgs,
        /// Entry bound multiplier, an integer or p/q.
        #[arg(long, default_value = "1")]
        bound_mult: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

enum Failure {
    Usage(String),
    Check(String, Option<Value>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(r) => {
                let msg = r.summary();
                Failure::Check(msg, Some(reports::report(&r)))
            }
            Error::InvalidModularData(_) | Error::DegenerateBraiding => Failure::Check(e.to_string(), None),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn load(args: &ModelArgs) -> Result<Model, Failure> {
    match (&args.file, &args.model) {
        (Some(path), _) => Ok(load_model_from_path(path)?),
        (None, Some(name)) => Ok(builtin(name, args.k, args.n)?),
        (None, None) => Err(Failure::Usage("a model name or --file is required".into())),
    }
}

fn need_modular(m: &Model) -> Result<(), Failure> {
    if m.modular.is_none() {
        return Err(Failure::Usage(format!("model `{}` carries no modular data", m.name)));
    }
    Ok(())
}

fn sector(m: &Model, label: &str) -> Result<usize, Failure> {
    Ok(m.ring.sector(label.trim())?)
}

enum Output {
    Json(Outcome),
    Text(String, bool),
}

fn run(cmd: Command) -> Result<Output, Failure> {
    Ok(match cmd {
        Command::Verify { model } => Output::Json(reports::verify(&load(&model)?)?),
        Command::Eta { model, sector: label } => {
            let m = load(&model)?;
            let i = sector(&m, &label)?;
            Output::Json(reports::eta(&m, i)?)
        }
        Command::Kk { model, product, theorem2, properness } => {
            let m = load(&model)?;
            let product = match product {
                None => None,
                Some(p) => {
                    let (a, b) = p
                        .split_once(',')
                        .ok_or_else(|| Failure::Usage("--product expects `a,b`".into()))?;
                    Some((sector(&m, a)?, sector(&m, b)?))
                }
            };
            Output::Json(reports::kk(&m, &KkRequest { product, theorem2, properness })?)
        }
        Command::Verlinde { model } => {
            let m = load(&model)?;
            need_modular(&m)?;
            Output::Json(reports::verlinde(&m)?)
        }
        Command::Invariants { model, bound_mult, format, jobs } => {
            let m = load(&model)?;
            need_modular(&m)?;
            let bound_multiplier = parse_rational(&bound_mult)?;
            if jobs == 0 {
                return Err(Failure::Usage("--jobs must be at least 1".into()));
            }
            let opts = EnumerationOptions { bound_multiplier, jobs };
            let c = enumerate_modular_invariants(m.modular.as_ref().unwrap(), &opts)?;
            match format {
                Format::Json => Output::Json(reports::invariants(&m, &c)?),
                Format::Csv => {
                    let ok = reports::invariants(&m, &c)?.passed;
                    Output::Text(reports::invariants_csv(&m, &c), ok)
                }
            }
        }
    })
}

fn envelope(data: Value, start: Instant) -> String {
    let doc = json!({
        "data": data,
        "meta": {
            "version": env!("CARGO_PKG_VERSION"),
            "wall_time_ms": start.elapsed().as_millis().to_string(),
        },
    });
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Output::Json(o)) => {
            println!("{}", envelope(o.data, start));
            if o.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("one or more checks failed");
                ExitCode::from(1)
            }
        }
        Ok(Output::Text(s, ok)) => {
            print!("{s}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg, report)) => {
            eprintln!("check failed: {msg}");
            if let Some(r) = report {
                println!("{}", envelope(json!({ "error": msg, "report": r }), start));
            }
            ExitCode::from(1)
        }
    }
}
