//! `knotalg`: command line front end for the Hochschild complex computations.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use knotalg::Error;

#[derive(Parser, Debug)]
#[command(
    name = "knotalg",
    version,
    about = "Exact Hochschild homology of the Poisson operads"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    #[arg(long, global = true, value_enum, default_value_t = OperadChoice::Pois)]
    pub operad: OperadChoice,

    /// Dimension of the Poisson operad; repeat to run several.
    #[arg(long = "n", global = true, default_values_t = [5usize])]
    pub n: Vec<usize>,

    #[arg(long, global = true, default_value_t = 4)]
    pub max_complexity: usize,

    #[arg(long, global = true, default_value_t = 8)]
    pub max_arity: usize,

    /// Use the full complex instead of the normalized one.
    #[arg(long, global = true)]
    pub full: bool,

    #[arg(long, global = true, value_enum, default_value_t = FieldChoice::Q)]
    pub field: FieldChoice,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[arg(long, global = true, env = "KNOTALG_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Chain basis at one bidegree, or dimensions over the window.
    Basis {
        #[arg(long, allow_hyphen_values = true)]
        bidegree: Option<String>,
    },
    /// Homology at one bidegree, or all nonzero groups in the window.
    Homology {
        #[arg(long, allow_hyphen_values = true)]
        bidegree: Option<String>,
    },
    /// Homology ranks along a total degree.
    Slice {
        #[arg(long, allow_hyphen_values = true)]
        total_degree: i64,
    },
    /// The bracket of two elements.
    Bracket {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// The cup product of two elements.
    Cup {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// The named classes `iota`, `iota^2` and `v2`.
    Classes,
    /// Cups and brackets among the named classes.
    Table {
        /// Largest total degree kept; defaults to `3n - 8`.
        #[arg(long, allow_hyphen_values = true)]
        total_degree: Option<i64>,
    },
    /// Dimensions of chord diagrams modulo 4T and 1T.
    ChordDims {
        #[arg(long, default_value_t = 4)]
        max_k: usize,
    },
    /// Run property sweeps; exits with 1 when a check fails.
    Verify {
        #[arg(value_enum)]
        what: VerifyKind,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperadChoice {
    Pois,
    Assoc,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Q,
    P32003,
    P65537,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyKind {
    Cosimplicial,
    OperadAxioms,
    Leibniz,
    Laws,
    Knot,
    Signs,
    Chords,
    All,
}

/// What a command hands back for printing.
pub struct Output {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub summary: Vec<String>,
    pub results: Value,
    /// `Some(false)` turns into exit code 1.
    pub passed: Option<bool>,
}

impl Output {
    pub fn new(header: Vec<&'static str>) -> Self {
        Output {
            header,
            rows: Vec::new(),
            summary: Vec::new(),
            results: Value::Array(Vec::new()),
            passed: None,
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Basis { .. } => "basis",
        Command::Homology { .. } => "homology",
        Command::Slice { .. } => "slice",
        Command::Bracket { .. } => "bracket",
        Command::Cup { .. } => "cup",
        Command::Classes => "classes",
        Command::Table { .. } => "table",
        Command::ChordDims { .. } => "chord-dims",
        Command::Verify { .. } => "verify",
    }
}

fn config_json(cli: &Cli) -> Value {
    let c = &cli.common;
    let mut v = json!({
        "operad": format!("{:?}", c.operad).to_lowercase(),
        "n": c.n,
        "field": format!("{:?}", c.field).to_lowercase(),
        "max_arity": c.max_arity,
        "max_complexity": c.max_complexity,
        "normalized": !c.full,
    });
    let extra = match &cli.command {
        Command::Basis { bidegree } | Command::Homology { bidegree } => {
            json!({ "bidegree": bidegree })
        }
        Command::Slice { total_degree } => json!({ "total_degree": total_degree }),
        Command::Bracket { x, y } | Command::Cup { x, y } => json!({ "x": x, "y": y }),
        Command::Table { total_degree } => json!({ "total_degree": total_degree }),
        Command::ChordDims { max_k } => json!({ "max_k": max_k }),
        Command::Verify { what } => json!({ "check": format!("{:?}", what).to_lowercase() }),
        Command::Classes => json!({}),
    };
    if let (Value::Object(a), Value::Object(b)) = (&mut v, extra) {
        a.extend(b);
    }
    v
}

fn render(cli: &Cli, out: &Output) -> Result<String, Error> {
    match cli.common.format {
        Format::Json => {
            let doc = json!({
                "command": command_name(&cli.command),
                "config": config_json(cli),
                "results": out.results,
                "version": env!("CARGO_PKG_VERSION"),
            });
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
            w.write_record(&out.header).map_err(io)?;
            for r in &out.rows {
                w.write_record(r).map_err(io)?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
            Ok(String::from_utf8_lossy(&bytes).into_owned())
        }
        Format::Text => {
            let mut widths: Vec<usize> = out.header.iter().map(|h| h.chars().count()).collect();
            for r in &out.rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{:<w$}", c, w = *w))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            let mut s = String::new();
            if !out.rows.is_empty() {
                s += &line(out.header.clone());
                s.push('\n');
                for r in &out.rows {
                    s += &line(r.iter().map(String::as_str).collect());
                    s.push('\n');
                }
            }
            for l in &out.summary {
                s += l;
                s.push('\n');
            }
            Ok(s)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Argument(_) | Error::Parse(_) => 2,
        Error::Resource(_) | Error::WindowTooSmall { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.common.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
        {
            eprintln!("error: could not size the thread pool: {}", e);
            return ExitCode::from(2);
        }
    }
    let result = commands::run(&cli).and_then(|out| Ok((render(&cli, &out)?, out.passed)));
    match result {
        Ok((text, passed)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            if passed == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            if let Error::WindowTooSmall { missing } = &e {
                let p = missing.iter().map(|(p, _)| -p).max().unwrap_or(0);
                let q = missing.iter().map(|(_, q)| *q).max().unwrap_or(0);
                eprintln!(
                    "hint: rerun with --max-arity {} or larger and enough --max-complexity to reach internal degree {}",
                    p + 1,
                    q
                );
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
