//! Command-line driver for superspace-core.

pub mod analysis;
pub mod cache;
pub mod error;
pub mod fixtures;
pub mod spec;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use analysis::{Analysis, Context, Report};
use cache::Cache;
use error::CliError;
use fixtures::Tier;
use spec::{catalog_shorthand, parse_spec, AlgebraSpec};
use superspace_core::multiplets::MultipletKind;
use superspace_core::prolong::DEFAULT_CAP;

pub const CACHE_ENV: &str = "SUPERSPACE_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "superspace", version, about = "Nilpotence varieties, multiplets, twists and prolongations of supertranslation algebras")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Directory for cached results (default: $SUPERSPACE_CACHE_DIR, else no cache).
    #[arg(long, global = true, value_name = "PATH")]
    pub cache_dir: Option<PathBuf>,
    /// Recompute every cache hit and compare with the stored bytes.
    #[arg(long, global = true)]
    pub verify_cache: bool,
    /// Maximum reduction steps per Groebner basis computation.
    #[arg(long, global = true, value_name = "STEPS")]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimensions, degree-zero derivations and the ideal of quadrics.
    Info { spec: String },
    /// Groebner basis, Hilbert series, dim Y and Gorenstein flags.
    Variety { spec: String },
    /// Betti numbers and component fields of a multiplet.
    Multiplet {
        /// conf, kaehler, canonical or form:K
        kind: String,
        spec: String,
        /// Only internal degrees up to N.
        #[arg(long, value_name = "N")]
        window: Option<i64>,
    },
    /// Homological dimension d - k + dim Y.
    Hdim {
        spec: String,
        /// Also find the top nonvanishing Chevalley-Eilenberg degree.
        #[arg(long)]
        cross_check: bool,
    },
    /// Twist by a square-zero supercharge.
    Twist {
        spec: String,
        /// Comma-separated coordinates, or a catalog twist name.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Extra analyses of the twisted algebra: conf, determinantal.
        #[arg(long, value_delimiter = ',')]
        analyses: Vec<String>,
    },
    /// Graded dimensions of the maximal transitive prolongation.
    Prolong {
        spec: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Check the super Jacobi identity on the computed range.
        #[arg(long)]
        jacobi: bool,
    },
    /// Check the built-in reference cases.
    Verify {
        #[arg(long, value_enum, default_value_t = TierArg::Fast)]
        tier: TierArg,
        /// A single case, or every case under a name prefix.
        #[arg(long)]
        case: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TierArg {
    Fast,
    All,
}

/// Reads a spec file, or falls back to a catalog shorthand such as `3dN1`.
pub fn load_spec(arg: &str) -> Result<AlgebraSpec, CliError> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{arg}: {e}")))?;
        return parse_spec(&text).map_err(|err| CliError::Spec { path: arg.to_string(), err });
    }
    catalog_shorthand(arg).ok_or_else(|| CliError::Usage(format!("'{arg}' is neither a spec file nor a catalog name like 3dN1 or 6d(2,0)")))
}

fn cache_dir(cli: &Cli) -> Option<PathBuf> {
    cli.cache_dir.clone().or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let cache = match cache_dir(cli) {
        Some(dir) => Some(Cache::new(&dir, cli.verify_cache).map_err(|e| CliError::Io(format!("cache directory {}: {e}", dir.display())))?),
        None => None,
    };
    let mut ctx = Context { cache, budget: cli.budget };
    match &cli.command {
        Command::Info { spec } => analysis::info(&mut ctx, &load_spec(spec)?.build()?),
        Command::Variety { spec } => analysis::variety(&mut ctx, &load_spec(spec)?.build()?),
        Command::Multiplet { kind, spec, window } => {
            let kind: MultipletKind = kind.parse()?;
            analysis::multiplet_report(&mut ctx, &load_spec(spec)?.build()?, &kind, *window)
        }
        Command::Hdim { spec, cross_check } => analysis::hdim_report(&mut ctx, &load_spec(spec)?.build()?, *cross_check),
        Command::Twist { spec, q, analyses } => {
            let s = load_spec(spec)?;
            let analyses: Vec<Analysis> = analyses.iter().map(|a| a.parse()).collect::<Result<_, _>>()?;
            analysis::twist_report(&mut ctx, &s, &s.build()?, q, &analyses)
        }
        Command::Prolong { spec, cap, jacobi } => analysis::prolong_report(&mut ctx, &load_spec(spec)?.build()?, *cap, *jacobi),
        Command::Verify { tier, case } => {
            let tier = match tier {
                TierArg::Fast => Tier::Fast,
                TierArg::All => Tier::Slow,
            };
            fixtures::verify(&mut ctx, tier, case.as_deref())
        }
    }
}

/// Output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Invocation { code, stdout: text, stderr: String::new() }
            } else {
                Invocation { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&report.json).expect("reports serialize");
                s.push('\n');
                s
            } else {
                report.text
            };
            Invocation { code: if report.ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => Invocation { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
