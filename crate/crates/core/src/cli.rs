//! Command-line parsing and orchestration.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgAction, Parser, ValueEnum};

use crate::error::Error;
use crate::heuristics::load_thresholds;
use crate::report::{render_pretty, write_csv, write_json, Context, SortSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FATAL: i32 = 2;
pub const EXIT_FINDINGS: i32 = 3;

/// Default row count per context for `-a`.
pub const ALL_TOP: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "drtools",
    version,
    about = "Source code metrics for Java projects",
    disable_version_flag = true
)]
pub struct Args {
    /// Root directory of the Java sources
    pub source_root: PathBuf,

    /// All contexts, top 5 rows each unless --top is given
    #[arg(short = 'a', long)]
    pub all: bool,
    /// Project summary
    #[arg(short = 's', long)]
    pub summary: bool,
    /// Namespace metrics
    #[arg(short = 'n', long)]
    pub namespaces: bool,
    /// Type metrics
    #[arg(short = 't', long)]
    pub types: bool,
    /// Method metrics
    #[arg(short = 'm', long)]
    pub methods: bool,
    /// Namespace coupling (CA, CE, I, A, D)
    #[arg(short = 'c', long)]
    pub coupling: bool,
    /// Type coupling
    #[arg(long)]
    pub type_coupling: bool,
    /// Dependencies per type
    #[arg(short = 'd', long)]
    pub dependencies: bool,
    /// Dependency cycles
    #[arg(long)]
    pub cycles: bool,
    /// Heuristic findings
    #[arg(long)]
    pub findings: bool,

    /// Rows per context in pretty output
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub top: Option<u64>,
    #[arg(short = 'f', long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Output directory for csv and json
    #[arg(short = 'o', long, default_value = "drtools-out")]
    pub output: PathBuf,
    /// Threshold overrides (`key = value` lines, .toml or .json)
    #[arg(long, value_name = "FILE")]
    pub thresholds: Option<PathBuf>,
    /// Custom key chain, e.g. `types=nom:desc,sloc:desc`; repeatable
    #[arg(long, value_name = "SPEC")]
    pub sort: Vec<String>,
    /// Omit the generation timestamp
    #[arg(long)]
    pub no_timestamp: bool,
    /// Exit with status 3 when any finding is reported
    #[arg(long)]
    pub fail_on_findings: bool,
    /// Print version
    #[arg(short = 'v', long, action = ArgAction::Version)]
    version: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliOptions {
    pub source_root: PathBuf,
    pub contexts: Vec<Context>,
    pub top: Option<usize>,
    pub format: Format,
    pub output_dir: PathBuf,
    pub thresholds_path: Option<PathBuf>,
    pub sort: Vec<String>,
    pub no_timestamp: bool,
    pub fail_on_findings: bool,
}

impl From<Args> for CliOptions {
    fn from(a: Args) -> Self {
        let picked: Vec<Context> = [
            (a.summary, Context::Summary),
            (a.namespaces, Context::Namespaces),
            (a.types, Context::Types),
            (a.methods, Context::Methods),
            (a.coupling, Context::Coupling),
            (a.type_coupling, Context::TypeCoupling),
            (a.dependencies, Context::Dependencies),
            (a.cycles, Context::Cycles),
            (a.findings, Context::Findings),
        ]
        .into_iter()
        .filter_map(|(on, c)| on.then_some(c))
        .collect();
        // no context flag at all behaves like -a
        let all = a.all || picked.is_empty();
        let contexts = if all { Context::ALL.to_vec() } else { picked };
        let top = a.top.map(|n| n as usize).or(all.then_some(ALL_TOP));
        Self {
            source_root: a.source_root,
            contexts,
            top,
            format: a.format,
            output_dir: a.output,
            thresholds_path: a.thresholds,
            sort: a.sort,
            no_timestamp: a.no_timestamp,
            fail_on_findings: a.fail_on_findings,
        }
    }
}

/// Parses argv (including the program name). `Err` carries the exit code
/// and the text clap produced for help, version or usage errors.
pub fn parse_args<I, T>(argv: I) -> Result<CliOptions, (i32, String)>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Args::try_parse_from(argv) {
        Ok(args) => Ok(args.into()),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            Err((code, e.render().to_string()))
        }
    }
}

fn timestamp() -> String {
    chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ").to_string()
}

/// Runs the pipeline for validated options.
pub fn run(opts: &CliOptions, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match execute(opts, stdout, stderr) {
        Ok(code) => code,
        Err(Error::Config(crate::error::ConfigError::SortSpec(s))) => {
            let _ = writeln!(stderr, "drtools: invalid sort specification `{s}`");
            EXIT_USAGE
        }
        Err(Error::Config(e @ crate::error::ConfigError::UnknownColumn { .. })) => {
            let _ = writeln!(stderr, "drtools: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(stderr, "drtools: {e}");
            EXIT_FATAL
        }
    }
}

fn execute(opts: &CliOptions, stdout: &mut dyn Write, stderr: &mut dyn Write) -> crate::Result<i32> {
    let mut spec = SortSpec::default();
    for entry in &opts.sort {
        spec.parse_entry(entry)?;
    }
    let cfg = load_thresholds(opts.thresholds_path.as_deref())?;
    let scan = crate::java::scan_project(&opts.source_root)?;
    for d in &scan.diagnostics {
        let _ = writeln!(stderr, "{d}");
    }
    let generated_at = (!opts.no_timestamp).then(timestamp);
    let mut report = crate::analyze(&scan.model, &cfg, generated_at);
    report.sort(&spec)?;

    match opts.format {
        Format::Pretty => {
            let text = render_pretty(&report, &opts.contexts, opts.top);
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::io("<stdout>", e))?;
        }
        Format::Csv => write_csv(&report, &opts.output_dir)?,
        Format::Json => write_json(&report, &opts.output_dir)?,
    }
    if opts.fail_on_findings && !report.findings.is_empty() {
        return Ok(EXIT_FINDINGS);
    }
    Ok(EXIT_OK)
}

/// Entry point used by the binary.
pub fn main_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(opts) => run(&opts, stdout, stderr),
        Err((code, text)) => {
            if code == EXIT_OK {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            code
        }
    }
}
