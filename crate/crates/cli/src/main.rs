use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use gmonoid::corpus::{build_corpus, builtin, ActionSource, CorpusSpec, Filter};
use gmonoid::format::{load, print, LoadOptions};
use gmonoid::report;
use gmonoid::{Error, GammaStructure, Limits};

/// Finite commutative monoids with group actions: properties, ideals,
/// quotients and composition series.
#[derive(Parser)]
#[command(name = "gmonoid", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Accept non-abelian groups.
    #[arg(long, global = true)]
    allow_nonabelian: bool,
    /// Largest monoid accepted from a file.
    #[arg(long, global = true, default_value_t = 64)]
    max_size: usize,
    /// Largest structure handed to isomorphism search.
    #[arg(long, global = true, default_value_t = 10)]
    max_iso: usize,
    /// Largest structure given a canonical form.
    #[arg(long, global = true, default_value_t = 8)]
    max_canonical: usize,
    /// Largest size for exhaustive monoid enumeration.
    #[arg(long, global = true, default_value_t = 6)]
    max_enumeration: usize,
}

impl Global {
    fn limits(&self) -> Limits {
        Limits {
            max_iso: self.max_iso,
            max_canonical: self.max_canonical,
            max_enumeration: self.max_enumeration,
            ..Limits::default()
        }
    }

    fn load_options(&self) -> LoadOptions {
        LoadOptions {
            allow_nonabelian: self.allow_nonabelian,
            max_size: self.max_size,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the monoid, group and action axioms.
    Validate { file: String },
    /// Conical, cancellative and refinement verdicts, minimal elements.
    Props { file: String },
    /// The lattice of Γ-order-ideals.
    Ideals { file: String },
    /// The quotient by an ideal.
    Quotient {
        file: String,
        /// Elements of the ideal, comma separated.
        #[arg(long)]
        ideal: String,
    },
    /// Composition series, factors and chain conditions.
    Series { file: String },
    /// Schreier refinements of two series and their factor pairing.
    Jh {
        file: String,
        /// Terms separated by `;`, elements by commas.
        #[arg(long)]
        series1: String,
        #[arg(long)]
        series2: String,
    },
    /// Replay a worked example: paper-counterexample or paper-shift.
    Demo { name: String },
    /// Print a named instance as an instance file.
    Builtin { spec: String },
    /// Enumerate small instances and write them with a manifest.
    Corpus {
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// refinement, conical or cancellative; repeatable.
        #[arg(long)]
        filter: Vec<String>,
        /// trivial, cyclic or full.
        #[arg(long, default_value = "cyclic")]
        actions: String,
        /// A builtin instance to add; repeatable.
        #[arg(long)]
        family: Vec<String>,
        /// Directory for the instance files; the manifest goes to stdout
        /// when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Output of a command and the exit code it asks for.
struct Outcome {
    text: String,
    json: serde_json::Value,
    code: u8,
}

impl Outcome {
    fn of<T: Serialize + std::fmt::Display>(report: &T, code: u8) -> Self {
        Outcome {
            text: report.to_string(),
            json: serde_json::to_value(report).expect("serializable"),
            code,
        }
    }
}

fn read_instance(path: &str, global: &Global) -> Result<GammaStructure, Error> {
    if let Some(spec) = path.strip_prefix("builtin:") {
        return builtin(spec);
    }
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::BadParams(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Error::BadParams(format!("{path}: {e}")))?
    };
    load(&text, &global.load_options())
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let g = &cli.global;
    let limits = g.limits();
    Ok(match &cli.command {
        Command::Validate { file } => Outcome::of(&report::validate(&read_instance(file, g)?), 0),
        Command::Props { file } => Outcome::of(&report::props(&read_instance(file, g)?), 0),
        Command::Ideals { file } => Outcome::of(&report::ideals(&read_instance(file, g)?), 0),
        Command::Quotient { file, ideal } => {
            Outcome::of(&report::quotient_report(&read_instance(file, g)?, ideal)?, 0)
        }
        Command::Series { file } => Outcome::of(&report::series_report(&read_instance(file, g)?, &limits)?, 0),
        Command::Jh { file, series1, series2 } => {
            let r = report::jh(&read_instance(file, g)?, series1, series2, &limits)?;
            let code = if r.equivalent { 0 } else { 1 };
            Outcome::of(&r, code)
        }
        Command::Demo { name } => {
            let text = report::demo(name, &limits)?;
            Outcome {
                json: serde_json::json!({ "demo": name, "text": text }),
                text,
                code: 0,
            }
        }
        Command::Builtin { spec } => {
            let text = print(&builtin(spec)?);
            Outcome {
                json: serde_json::json!({ "builtin": spec, "instance": text }),
                text,
                code: 0,
            }
        }
        Command::Corpus {
            max_size,
            filter,
            actions,
            family,
            out,
        } => {
            let spec = CorpusSpec {
                max_size: *max_size,
                filters: filter.iter().map(|f| f.parse()).collect::<Result<Vec<Filter>, _>>()?,
                actions: actions.parse::<ActionSource>()?,
                families: family.clone(),
            };
            let entries = build_corpus(&spec, &limits)?;
            let lines: Vec<String> = entries.par_iter().map(|e| e.manifest_line()).collect();
            let mut manifest = lines.join("\n");
            manifest.push('\n');
            if let Some(dir) = out {
                let io_err = |e: io::Error| Error::BadParams(format!("{}: {e}", dir.display()));
                fs::create_dir_all(dir).map_err(io_err)?;
                for e in &entries {
                    let file = dir.join(format!("{}.gm", e.name.replace(['(', ')', ',', ' ', ':', '<'], "_")));
                    fs::write(file, print(&e.structure)).map_err(io_err)?;
                }
                fs::write(dir.join("manifest.tsv"), &manifest).map_err(io_err)?;
            }
            Outcome {
                json: serde_json::json!({ "instances": lines }),
                text: manifest,
                code: 0,
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if cli.global.json {
                println!("{}", serde_json::to_string_pretty(&outcome.json).expect("json"));
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            if cli.global.json {
                println!("{}", serde_json::json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
