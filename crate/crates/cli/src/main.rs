use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use planewalk::fixtures;
use planewalk::ingest::{parse_document, Document};
use planewalk::obstruction::pair_obstruction;
use planewalk::oracle::DEFAULT_BUDGET;
use planewalk::render;
use planewalk::report::{self, AnalyzeOptions, Methods};
use planewalk::Instance;

const EXIT_ERROR: u8 = 3;

/// Approximability of drawn paths and cycles by embeddings.
///
/// INPUT is a JSON document path, `-` for standard input, or the name of a
/// built-in fixture (see `planewalk fixtures`).
#[derive(Parser)]
#[command(name = "planewalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide approximability by embeddings.
    Analyze {
        input: String,
        #[command(flatten)]
        run: RunArgs,
        /// Write SVG renderings (drawing, tower, table) into this directory.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Print the generalised winding degree of a closed walk.
    Degree { input: String },
    /// Decide whether two walks can be perturbed apart.
    Disjoint {
        input: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Render an SVG picture.
    Render {
        input: String,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long)]
        out: PathBuf,
    },
    /// List the built-in fixtures.
    Fixtures,
}

#[derive(Args)]
struct RunArgs {
    /// derivative, obstruction, geom, oracle or all; repeatable.
    #[arg(long = "method")]
    methods: Vec<String>,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    oracle_budget: u64,
    /// Leave timings out of the report.
    #[arg(long)]
    no_timings: bool,
}

impl RunArgs {
    fn methods(&self, default: Methods) -> Result<Methods> {
        if self.methods.is_empty() {
            return Ok(default);
        }
        let mut methods = Methods::none();
        for name in self.methods.iter().flat_map(|m| m.split(',')) {
            if !methods.enable(name.trim()) {
                bail!("unknown method `{name}`");
            }
        }
        Ok(methods)
    }

    fn options(&self) -> AnalyzeOptions {
        AnalyzeOptions { oracle_budget: self.oracle_budget, timings: !self.no_timings }
    }

    fn emit(&self, json: String, summary: String) -> Result<()> {
        match &self.json {
            Some(path) => {
                fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
                say(summary);
            }
            None => say(json),
        }
        Ok(())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Drawing,
    Tower,
    Table,
}

/// Prints a line, ignoring a closed pipe.
fn say(line: impl std::fmt::Display) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn load(input: &str) -> Result<Document> {
    let bytes = if input == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf)?;
        buf
    } else if Path::new(input).exists() {
        fs::read(input).with_context(|| format!("reading {input}"))?
    } else if fixtures::lookup(input).is_ok() {
        serde_json::to_vec(&serde_json::json!({ "fixture": input }))?
    } else {
        bail!("no such file or fixture: {input}");
    };
    parse_document(&bytes).with_context(|| format!("in {input}"))
}

fn load_instance(input: &str) -> Result<Instance> {
    Ok(load(input)?.into_instance().with_context(|| format!("in {input}"))?)
}

fn write_svg(dir: &Path, name: &str, svg: String) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, svg).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze { input, run, svg } => {
            let inst = load_instance(&input)?;
            let methods = run.methods(Methods::default_for(&inst))?;
            let report = report::analyze(&inst, &methods, run.options());
            if let Some(dir) = svg {
                write_svg(&dir, "drawing.svg", render::render_drawing(&inst))?;
                write_svg(&dir, "tower.svg", render::render_tower(&inst))?;
                write_svg(&dir, "table.svg", render::render_obstruction(&inst))?;
            }
            for v in &report.violations {
                eprintln!("theorem violation: {v}");
            }
            let summary = format!("verdict: {}", serde_json::to_value(report.verdict)?.as_str().unwrap_or("?"));
            run.emit(serde_json::to_string_pretty(&report)?, summary)?;
            Ok(report.exit_code() as u8)
        }
        Command::Degree { input } => {
            let inst = load_instance(&input)?;
            let degree = report::degree(&inst)?;
            say(degree.degree);
            Ok(0)
        }
        Command::Disjoint { input, run } => {
            let (k, l) = load(&input)?.into_pair().with_context(|| format!("in {input}"))?;
            let default = Methods { geometric: k.graph.is_straight_line(), ..Methods::none() };
            let methods = run.methods(default)?;
            let Some(report) = report::analyze_pair(&k, &l, &methods, run.options()) else {
                bail!("instances do not share a common arrangement");
            };
            for v in &report.violations {
                eprintln!("theorem violation: {v}");
            }
            let summary = format!("verdict: {}", serde_json::to_value(report.verdict)?.as_str().unwrap_or("?"));
            run.emit(serde_json::to_string_pretty(&report)?, summary)?;
            Ok(report.exit_code() as u8)
        }
        Command::Render { input, what, out } => {
            let (name, svg) = match load(&input)? {
                Document::Pair(k, l) => {
                    let (k, l) = Document::Pair(k, l).into_pair()?;
                    let ob = pair_obstruction(&k, &l)?;
                    match what {
                        What::Table => ("table.svg", render::render_pair_obstruction(&ob, k.step_count(), l.step_count())),
                        _ => bail!("pairs can only be rendered as a table"),
                    }
                }
                doc => {
                    let inst = doc.into_instance()?;
                    match what {
                        What::Drawing => ("drawing.svg", render::render_drawing(&inst)),
                        What::Tower => ("tower.svg", render::render_tower(&inst)),
                        What::Table => ("table.svg", render::render_obstruction(&inst)),
                    }
                }
            };
            write_svg(&out, name, svg)?;
            say(out.join(name).display());
            Ok(0)
        }
        Command::Fixtures => {
            for (name, description) in fixtures::names() {
                say(format!("{name:<12} {description}"));
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
