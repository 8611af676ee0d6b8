use clap::{Parser, Subcommand, ValueEnum};
use goguen_core::algebras::enumerate_em_algebras;
use goguen_core::monads::base::Powers;
use goguen_core::quantale::verify_quantale_laws;
use goguen_core::submonads::{enumerate_qfilters, FilterPredicate};
use goguen_core::suites::{run_suite, suite_names};
use goguen_core::towers::DEFAULT_CAP;
use goguen_core::{parse_quantale_ref, Params, Quantale, VerificationReport};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "goguen", version, about = "Finite-model law checking for quantale-valued fuzzy sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a quantale and scan its laws.
    CheckQuantale {
        /// `builtin:<family>` or a path to a JSON definition.
        quantale: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a named verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value = "builtin:bool")]
        quantale: String,
        #[arg(long, default_value_t = 2)]
        max_size: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Enumerate Q-filters or exp_Q-algebras on a finite set.
    Enumerate {
        kind: Kind,
        #[arg(long, default_value = "builtin:bool")]
        quantale: String,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// List the registered suite names.
    Suites,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Filters,
    Algebras,
}

/// Input that cannot be processed at all; maps to exit code 2.
struct Malformed(String);

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, Malformed> {
    match cli.command {
        Command::CheckQuantale { quantale, json } => {
            let q = parse_quantale_ref(&quantale).map_err(|e| Malformed(e.to_string()))?;
            let report = verify_quantale_laws(&q);
            if let Err(e) = q.validate() {
                eprintln!("{e}");
            }
            emit(&report, json.as_deref())
        }
        Command::Verify { suite, quantale, max_size, cap, samples, seed, json } => {
            let q = load_valid(&quantale)?;
            let params = Params { max_size, cap, samples, seed };
            let report = run_suite(&suite, &q, &params)
                .map_err(|e| Malformed(format!("{e}; known suites: {}", suite_names().join(", "))))?;
            emit(&report, json.as_deref())
        }
        Command::Enumerate { kind, quantale, size, cap, json } => {
            let q = load_valid(&quantale)?;
            let listing = enumerate(kind, &q, size, cap)?;
            println!("{}", listing["count"]);
            if let Some(path) = json {
                write(&path, &serde_json::to_string_pretty(&listing).expect("listing serializes"))?;
            }
            Ok(true)
        }
        Command::Suites => {
            for name in suite_names() {
                println!("{name}");
            }
            Ok(true)
        }
    }
}

fn load_valid(r: &str) -> Result<Quantale, Malformed> {
    let q = parse_quantale_ref(r).map_err(|e| Malformed(e.to_string()))?;
    q.validate().map_err(|e| Malformed(format!("`{r}` is not a quantale: {e}")))?;
    Ok(q)
}

fn emit(report: &VerificationReport, json: Option<&Path>) -> Result<bool, Malformed> {
    print!("{}", report.summary());
    if let Some(path) = json {
        write(path, &report.to_json())?;
    }
    Ok(report.passed())
}

fn write(path: &Path, text: &str) -> Result<(), Malformed> {
    std::fs::write(path, format!("{text}\n")).map_err(|e| Malformed(format!("cannot write {}: {e}", path.display())))
}

fn enumerate(kind: Kind, q: &Quantale, size: usize, cap: u64) -> Result<serde_json::Value, Malformed> {
    let cap_err = |e: &dyn std::fmt::Display| Malformed(e.to_string());
    let powers = Powers::new(q, size, cap).map_err(|e| cap_err(&e))?;
    let label = |t: &[u8]| t.iter().map(|&e| q.label(e).to_string()).collect::<Vec<_>>();
    let arguments: Vec<Vec<String>> = powers.tables.iter().map(|t| label(t)).collect();
    let (name, items): (&str, Vec<serde_json::Value>) = match kind {
        Kind::Filters => {
            let fs = enumerate_qfilters(q, size, cap, FilterPredicate::Full).map_err(|e| cap_err(&e))?;
            ("filters", fs.iter().map(|f| f.to_json(q)).collect())
        }
        Kind::Algebras => {
            let params = Params { max_size: size, cap, ..Params::default() };
            let hs = enumerate_em_algebras(q, size, &params).map_err(|e| cap_err(&e))?;
            ("algebras", hs.iter().map(|h| json!(h.h)).collect())
        }
    };
    Ok(json!({
        "kind": name,
        "quantale": q.name(),
        "size": size,
        "arguments": arguments,
        "count": items.len(),
        "items": items,
    }))
}
