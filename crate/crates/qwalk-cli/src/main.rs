mod error;
mod experiments;
mod output;
mod params;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use error::CliError;
use experiments::{find, Experiment, EXPERIMENTS};
use params::{parse_params_file, split_pair, Params};

#[derive(Parser)]
#[command(name = "qwalk", version, about = "Quantum and classical walk experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List experiments and their parameters
    List {
        #[arg(long)]
        json: bool,
    },
    /// Run one experiment
    Run {
        name: String,
        /// key=value, may be repeated; overrides the params file
        #[arg(long = "param", short = 'p', value_parser = parse_pair)]
        params: Vec<(String, String)>,
        #[arg(long)]
        params_file: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

fn parse_pair(s: &str) -> Result<(String, String), String> {
    split_pair(s)
}

fn list(as_json: bool) {
    if as_json {
        let v: Vec<Value> = EXPERIMENTS
            .iter()
            .map(|e| {
                let params: Vec<Value> = e
                    .params
                    .iter()
                    .map(|s| json!({"key": s.key, "default": s.default, "help": s.help}))
                    .collect();
                json!({"name": e.name, "anchor": e.anchor, "about": e.about, "params": params})
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
        return;
    }
    for e in EXPERIMENTS {
        println!("{}\n  anchor: {}\n  {}", e.name, e.anchor, e.about);
        print!("{}", params::describe(e.params));
    }
}

fn run(
    e: &Experiment,
    mut given: Vec<(String, String)>,
    file: Option<&Path>,
    seed: Option<u64>,
    out: &Path,
) -> Result<Vec<PathBuf>, CliError> {
    if let Some(f) = file {
        let mut all = parse_params_file(&fs::read_to_string(f)?)?;
        all.append(&mut given);
        given = all;
    }
    // a seed given as a parameter counts unless --seed overrides it
    let mut seed = seed;
    let mut rest = Vec::new();
    for (k, v) in given {
        if k == "seed" {
            let s = v.parse().map_err(|_| CliError::Param(format!("seed must be a nonnegative integer, got '{v}'")))?;
            seed = seed.or(Some(s));
        } else {
            rest.push((k, v));
        }
    }
    let params = Params::resolve(e.params, &rest)?;
    if (e.stochastic)(&params) && seed.is_none() {
        return Err(CliError::Param(format!("experiment '{}' needs --seed", e.name)));
    }

    let started = chrono::Utc::now();
    let clock = Instant::now();
    let result = (e.run)(&params, seed);
    let duration = clock.elapsed().as_secs_f64();
    let output = result?;

    fs::create_dir_all(out)?;
    let mut written = Vec::new();
    for t in &output.tables {
        let file = if t.suffix.is_empty() { format!("{}.csv", e.name) } else { format!("{}_{}.csv", e.name, t.suffix) };
        let path = out.join(file);
        fs::write(&path, t.to_csv())?;
        written.push(path);
    }
    let meta_path = out.join(format!("{}.json", e.name));
    let mut meta = Map::new();
    meta.insert("name".into(), e.name.into());
    meta.insert("anchor".into(), e.anchor.into());
    meta.insert("params".into(), params.to_json());
    meta.insert("seed".into(), seed.map_or(Value::Null, Value::from));
    meta.insert("started".into(), started.to_rfc3339().into());
    meta.insert("duration_s".into(), duration.into());
    meta.insert(
        "outputs".into(),
        written.iter().map(|p| Value::from(p.display().to_string())).collect::<Vec<_>>().into(),
    );
    meta.insert("version".into(), env!("CARGO_PKG_VERSION").into());
    meta.insert("results".into(), Value::Object(output.summary));
    fs::write(&meta_path, serde_json::to_string_pretty(&Value::Object(meta)).expect("serializable") + "\n")?;
    written.push(meta_path);
    Ok(written)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List { json } => {
            list(json);
            ExitCode::SUCCESS
        }
        Command::Run { name, params, params_file, seed, out } => {
            let Some(e) = find(&name) else {
                let names: Vec<&str> = EXPERIMENTS.iter().map(|e| e.name).collect();
                eprintln!("error: unknown experiment '{name}' (known: {})", names.join(", "));
                return ExitCode::from(2);
            };
            match run(e, params, params_file.as_deref(), seed, &out) {
                Ok(paths) => {
                    for p in paths {
                        println!("{}", p.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    ExitCode::from(err.exit_code() as u8)
                }
            }
        }
    }
}
