//! Command-line front end for the `gitfan` library: reads a problem specification,
//! runs one computation and writes a canonical JSON document, a table or an SVG.

pub mod commands;
pub mod error;
pub mod plot;
pub mod render;
pub mod spec;

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use commands::Limits;
use error::CliError;
use spec::{parse_vector, ProblemSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Roots,
    Sigma,
    Fan,
    Regions,
    Weyl,
    Count,
    ClassifyWall,
    Query,
    ToricFan,
    ToricWall,
    Hypertoric,
    Plot,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Debug, Parser)]
#[command(name = "gitfan", version, about = "GIT fans of quiver, toric and hypertoric data")]
pub struct Cli {
    pub command: Command,
    /// Problem specification (`.json`, `.toml`, or a previous result document).
    pub spec: PathBuf,
    /// Worker threads; results do not depend on it.
    #[arg(long, env = "GITFAN_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, default_value_t = gitfan::quiverfan::DEFAULT_GROUP_CAP)]
    pub group_cap: usize,
    #[arg(long, default_value_t = gitfan::sigma::DEFAULT_DECOMPOSITION_CAP)]
    pub decomposition_cap: usize,
    /// Print `path value` lines instead of JSON.
    #[arg(long)]
    pub table: bool,
    /// Write the output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Stability parameter in ambient coordinates, e.g. `-1,1` or `1/2,-1/2,0`.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub other_theta: Option<String>,
    #[arg(long)]
    pub chamber: Option<usize>,
    /// Wall normal in fan coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub wall: Option<String>,
    /// Two vectors in fan coordinates separated by `;`, e.g. `1,0,0;0,1,0`.
    #[arg(long, allow_hyphen_values = true)]
    pub slice: Option<String>,
}

/// The text a run writes and whether it ended in a diagnostic.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub error: Option<CliError>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, CliError::exit_code)
    }
}

fn apply_flags(cli: &Cli, spec: &mut ProblemSpec) -> Result<(), CliError> {
    let o = &mut spec.options;
    if let Some(t) = &cli.theta {
        o.theta = Some(parse_vector(t)?);
    }
    if let Some(t) = &cli.other_theta {
        o.other_theta = Some(parse_vector(t)?);
    }
    if let Some(c) = cli.chamber {
        o.chamber = Some(c);
    }
    if let Some(w) = &cli.wall {
        o.wall = Some(parse_vector(w)?);
    }
    if let Some(s) = &cli.slice {
        let (a, b) = s
            .split_once(';')
            .ok_or_else(|| CliError::Usage("--slice takes two vectors separated by ';'".into()))?;
        o.slice = Some((parse_vector(a)?, parse_vector(b)?));
    }
    Ok(())
}

pub fn compute(command: Command, spec: &ProblemSpec, limits: Limits) -> Result<Value, CliError> {
    match command {
        Command::Roots => commands::roots(spec),
        Command::Sigma => commands::sigma(spec, limits),
        Command::Fan => commands::fan(spec, limits),
        Command::Regions => commands::regions_cmd(spec, limits),
        Command::Weyl => commands::weyl(spec, limits),
        Command::Count => commands::count(spec, limits),
        Command::ClassifyWall => commands::classify(spec, limits),
        Command::Query => commands::query(spec, limits),
        Command::ToricFan => commands::toric_fan(spec),
        Command::ToricWall => commands::toric_wall(spec),
        Command::Hypertoric => commands::hypertoric(spec),
        Command::Plot => unreachable!("plot produces SVG"),
    }
}

/// The full document for one command: the canonical input echo plus either the
/// result or the error.
pub fn document(command: Command, spec: &ProblemSpec, limits: Limits) -> (Value, Option<CliError>) {
    let input = serde_json::to_value(spec).expect("specifications serialize");
    match compute(command, spec, limits) {
        Ok(result) => (json!({ "command": command.name(), "input": input, "result": result }), None),
        Err(e) => {
            let mut error = json!({ "class": e.class(), "message": e.to_string() });
            if let CliError::Hypothesis {
                diagnostic: Some(d), ..
            } = &e
            {
                error["diagnostic"] = d.clone();
            }
            (json!({ "command": command.name(), "input": input, "error": error }), Some(e))
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let mut spec = ProblemSpec::read(&cli.spec)?;
    apply_flags(cli, &mut spec)?;
    let limits = Limits {
        group_cap: cli.group_cap,
        decomposition_cap: cli.decomposition_cap,
    };
    if cli.command == Command::Plot {
        return Ok(Outcome {
            text: commands::plot(&spec, limits)?,
            error: None,
        });
    }
    let (doc, error) = document(cli.command, &spec, limits);
    let text = if cli.table {
        render::to_table(&doc)
    } else {
        render::to_json(&doc)
    };
    Ok(Outcome { text, error })
}
