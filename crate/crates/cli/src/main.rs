use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cli::expr::{evaluate, parse_binding, ExprError};
use cli::{run, CliError, Config, Golden, RunOptions, Section};
use serde::Deserialize;

#[derive(Parser)]
#[command(name = "repro", about = "Exact reproduction runner for the K-stability and quartic-curve computations")]
struct Args {
    /// INI configuration (curve-list mode, parameter specializations).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute every claim of a section and write the JSON report.
    Reproduce {
        #[arg(long, default_value = "all")]
        section: String,
        #[arg(long)]
        out: PathBuf,
        /// Golden corpus to compare against instead of the bundled one.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Run everything on the calling thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Evaluate an expression, integral or orbit query read from a file.
    Eval {
        #[arg(long)]
        expr: PathBuf,
        #[arg(long = "bind", value_name = "VAR=VALUE")]
        bind: Vec<String>,
    },
    /// Orbit of a point under the group generated by the matrices in a JSON file.
    Orbit {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Evaluate one table row given as JSON.
    Equivpic {
        #[arg(long)]
        row: PathBuf,
    },
}

/// `{"generators": [[["0","i","0","0"], ...], ...], "cap": 1000}`
#[derive(Deserialize)]
struct GroupFile {
    generators: Vec<[[String; 4]; 4]>,
    #[serde(default = "default_cap")]
    cap: usize,
}

fn default_cap() -> usize {
    10_000
}

fn fail(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn read(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = match &args.config {
        Some(p) => match Config::load(p) {
            Ok(c) => c,
            Err(e) => return fail(format!("{}: {e}", p.display())),
        },
        None => Config::default(),
    };
    match args.cmd {
        Cmd::Reproduce { section, out, golden, sequential } => {
            let section: Section = match section.parse() {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            let golden = match golden {
                Some(p) => match Golden::load(&p) {
                    Ok(g) => g,
                    Err(e) => return fail(format!("{}: {e}", p.display())),
                },
                None => Golden::bundled(),
            };
            let opts = RunOptions { config, parallel: !sequential && cfg!(feature = "parallel") };
            let report = match run(section, &golden, &opts) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            let json = match report.to_json() {
                Ok(j) => j,
                Err(e) => return fail(e),
            };
            if let Err(e) = std::fs::write(&out, json) {
                return fail(CliError::from(e));
            }
            let mut counts = std::collections::BTreeMap::new();
            for c in &report.claims {
                *counts.entry(format!("{:?}", c.status).to_lowercase()).or_insert(0) += 1;
            }
            let summary: Vec<String> = counts.iter().map(|(k, v)| format!("{k} {v}")).collect();
            println!("{} claims: {}", report.claims.len(), summary.join(", "));
            for c in report.claims.iter().filter(|c| c.status == cli::Status::Mismatch) {
                println!("mismatch {}: expected {}, computed {}", c.id, c.expected, c.computed);
            }
            if report.has_mismatch() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Cmd::Eval { expr, bind } => {
            let text = match read(&expr) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let mut binds: Vec<(String, String)> = Vec::new();
            for b in &bind {
                match parse_binding(b) {
                    Ok(p) => binds.push(p),
                    Err(e) => return fail(e),
                }
            }
            if !binds.iter().any(|(n, _)| n == "a") && text.contains('a') {
                binds.push(("a".into(), exactnum::fmt_rat(&config.a)));
            }
            match evaluate(&text, &binds) {
                Ok(v) => {
                    println!("{v}");
                    ExitCode::SUCCESS
                }
                Err(e @ ExprError::Parse { .. }) => fail(format!("{}: {e}", expr.display())),
                Err(e) => fail(e),
            }
        }
        Cmd::Orbit { group, point } => {
            let text = match read(&group) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let file: GroupFile = match serde_json::from_str(&text) {
                Ok(f) => f,
                Err(e) => return fail(format!("{}: {e}", group.display())),
            };
            let mut gens = Vec::new();
            for m in &file.generators {
                let rows: [[&str; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].as_str()));
                match groups::ProjMatrix::from_strs(&rows) {
                    Ok(g) => gens.push(g),
                    Err(e) => return fail(e),
                }
            }
            let g = match groups::MatrixGroup::enumerate(&gens, file.cap) {
                Ok(g) => g,
                Err(e) => return fail(e),
            };
            let p: groups::ProjPoint = match point.parse() {
                Ok(p) => p,
                Err(e) => return fail(e),
            };
            let orbit = g.orbit(&p);
            println!("group order: {}", g.order());
            println!("orbit length: {}", orbit.len());
            println!("stabilizer order: {}", g.stabilizer(&p).order());
            for q in orbit {
                println!("{q}");
            }
            ExitCode::SUCCESS
        }
        Cmd::Equivpic { row } => {
            let text = match read(&row) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let row: equivpic::TableRow = match serde_json::from_str(&text) {
                Ok(r) => r,
                Err(e) => return fail(format!("{}: {e}", row.display())),
            };
            let report = equivpic::evaluate_row(&row);
            match serde_json::to_string_pretty(&report) {
                Ok(j) => {
                    println!("{j}");
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
    }
}
