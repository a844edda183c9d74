use std::path::PathBuf;

use assertlint_core::discover::ProjectMode;
use assertlint_core::report::Format;
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "assertlint", version, about = "Analyze and lint JUnit 4 assertion messages")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze test sources and write the full corpus report (JSON by default).
    Scan(CommonArgs),
    /// Report anti-pattern findings as `file:line:col rule message`.
    Lint(CommonArgs),
    /// Print the corpus statistics tables.
    Stats(CommonArgs),
}

impl Command {
    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::Scan(a) | Command::Lint(a) | Command::Stats(a) => a,
        }
    }
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn parse_projects(s: &str) -> Result<ProjectMode, String> {
    match s {
        "root" => Ok(ProjectMode::Root),
        "subdirectory" | "subdir" => Ok(ProjectMode::Subdirectory),
        _ => Err(format!("unknown project mode `{s}`; expected root or subdirectory")),
    }
}

#[derive(Debug, Args, Default)]
pub struct CommonArgs {
    /// Files or directories to scan [default: .]
    pub paths: Vec<PathBuf>,

    /// TOML configuration file.
    #[arg(long, env = "ASSERTLINT_CONFIG", value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Output format: json, csv or table.
    #[arg(long, value_parser = parse_format)]
    pub format: Option<Format>,

    /// Output file, or directory for csv.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Turn a rule off (AP1..AP4, NO-MESSAGE or the full id). Repeatable.
    #[arg(long, value_name = "RULE")]
    pub disable: Vec<String>,

    /// Turn a rule back on. Enabling NO-MESSAGE implies --require-messages.
    #[arg(long, value_name = "RULE")]
    pub enable: Vec<String>,

    /// Shortest acceptable text message, in words.
    #[arg(long, value_name = "N")]
    pub min_words: Option<usize>,

    /// Flag assertions without a message (NO-MESSAGE).
    #[arg(long)]
    pub require_messages: bool,

    /// Only accept unqualified assertions in files importing org.junit.
    #[arg(long)]
    pub require_junit_import: bool,

    /// Also analyze assertions in methods without @Test.
    #[arg(long)]
    pub include_helpers: bool,

    /// Worker threads; 1 runs sequentially.
    #[arg(long, short = 'j', value_name = "N")]
    pub jobs: Option<usize>,

    /// Print the effective configuration and exit.
    #[arg(long)]
    pub print_config: bool,

    /// Lowest severity that makes `lint` fail: info or warning.
    #[arg(long, value_name = "LEVEL")]
    pub min_severity: Option<String>,

    /// Glob of files to include, relative to each root. Repeatable.
    #[arg(long, value_name = "GLOB")]
    pub include: Vec<String>,

    /// Glob of files to skip, relative to each root. Repeatable.
    #[arg(long, value_name = "GLOB")]
    pub exclude: Vec<String>,

    /// Project granularity: root or subdirectory.
    #[arg(long, value_parser = parse_projects)]
    pub projects: Option<ProjectMode>,

    /// Regex for tolerance-like names in 3-argument delta overloads.
    #[arg(long, value_name = "REGEX")]
    pub tolerance_name: Option<String>,

    /// Replacement assertion table.
    #[arg(long, value_name = "FILE")]
    pub assertion_table: Option<PathBuf>,

    /// Extra lexicon entries (`word<TAB>tag`) that override the bundled ones.
    #[arg(long, value_name = "FILE")]
    pub lexicon: Option<PathBuf>,

    /// Patterns shown per prefix length in the part-of-speech tables.
    #[arg(long, value_name = "K")]
    pub top_k: Option<usize>,
}
