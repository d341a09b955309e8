use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use finlang_cli::commands::{self, GroupSource, PipelineChoice};
use finlang_cli::{CliError, EXIT_MISMATCH};
use finlang_core::oracle::GroupName;
use finlang_core::{ChoicePolicy, Error};

#[derive(Parser)]
#[command(
    name = "finlang",
    version,
    about = "Count finite-field Langlands parameters and check them against brute force"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count parameters and print the report.
    Count {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum)]
        pipeline: Option<PipelineArg>,
    },
    /// Count with both pipelines and compare with the class count of the group.
    Compare {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Two-sided cells of the Weyl group of a simple type.
    Cells { type_label: String },
    /// Special classes and family groups of a simple type.
    Tables { type_label: String },
    /// Order and class count of a named group by brute force.
    Oracle {
        #[arg(long)]
        group: String,
        #[arg(long)]
        q: u64,
    },
}

#[derive(Args)]
struct GroupArgs {
    /// Shortcut: sl2, gl2, pgl2, sl3, gl3, pgl3, sp4, so5, g2, torus1, o2.
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    group: Option<String>,
    /// TOML group configuration.
    #[arg(long)]
    config: Option<String>,
    #[arg(long)]
    q: Option<u64>,
    /// Write the JSON report here as well.
    #[arg(long)]
    json: Option<String>,
    /// Randomize every choice of representative with this seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PipelineArg {
    Spectral,
    Stratified,
    Both,
}

impl GroupArgs {
    fn source(&self) -> Result<GroupSource, CliError> {
        match (&self.group, &self.config) {
            (Some(name), _) => {
                let q = self.q.ok_or_else(|| CliError::Usage("--q is required with --group".into()))?;
                Ok(GroupSource::Named { name: name.clone(), q })
            }
            (None, Some(path)) => Ok(GroupSource::Config { path: path.clone(), q: self.q }),
            (None, None) => Err(CliError::Usage("one of --group or --config is required".into())),
        }
    }

    fn policy(&self) -> ChoicePolicy {
        self.seed.map_or(ChoicePolicy::Canonical, ChoicePolicy::Randomized)
    }
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    match cli.command {
        Command::Count { group, pipeline } => {
            let g = commands::load_group(&group.source()?)?;
            let pipeline = pipeline.map(|p| match p {
                PipelineArg::Spectral => PipelineChoice::Spectral,
                PipelineArg::Stratified => PipelineChoice::Stratified,
                PipelineArg::Both => PipelineChoice::Both,
            });
            let report = commands::count(&g, pipeline, group.policy())?;
            if report.pipelines_agree == Some(false) {
                return Err(Error::Invariant("spectral and stratified breakdowns differ".into()).into());
            }
            Ok((commands::emit(&report, group.json.as_deref())?, true))
        }
        Command::Compare { group } => {
            let g = commands::load_group(&group.source()?)?;
            let report = commands::compare(&g, group.policy())?;
            let ok = report.matches == Some(true);
            Ok((commands::emit(&report, group.json.as_deref())?, ok))
        }
        Command::Cells { type_label } => Ok((commands::emit(&commands::cells_report(&type_label)?, None)?, true)),
        Command::Tables { type_label } => Ok((commands::emit(&commands::tables_report(&type_label)?, None)?, true)),
        Command::Oracle { group, q } => {
            let name = GroupName::parse(&group).ok_or_else(|| Error::NotInOracleMenu(group.clone()))?;
            Ok((commands::emit(&commands::oracle(name, q)?, None)?, true))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
