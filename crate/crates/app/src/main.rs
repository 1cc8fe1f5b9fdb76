use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fusion_app::report::{EXIT_INPUT, EXIT_OK};
use fusion_app::{
    builtin_scenarios, load_scenarios, run_batch, AppError, BatchReport, Catalog, Registry,
    Scenario, Settings,
};
use fusion_core::Limits;

#[derive(Parser)]
#[command(name = "fusion", version, about = "Fusion systems, control of fusion and stable-element cohomology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Extra catalog file, merged after the built-in groups.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, global = true)]
    max_elements: Option<usize>,
    /// Upper bound on every scenario's cohomology degree.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Record per-check wall-clock times (makes reports nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog maintenance.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
        #[command(flatten)]
        common: Common,
    },
    /// Run a scenario file, or the built-in suite with `builtin`.
    Run {
        files: Vec<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Compare F_P(H) with F_P(G); H is generated by the --sub permutations.
    Mislin {
        #[arg(short = 'g', long)]
        group: String,
        #[arg(short = 'p', long)]
        prime: u32,
        /// Comma-separated 0-based images; repeat for several generators.
        #[arg(long = "sub", value_parser = parse_images)]
        sub: Vec<Vec<u32>>,
        #[command(flatten)]
        common: Common,
    },
    /// Stable-element dimensions up to degree N.
    Dims {
        #[arg(short = 'g', long)]
        group: String,
        #[arg(short = 'p', long)]
        prime: u32,
        #[arg(short = 'N', long = "degree")]
        degree: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Saturation of F_P(G) for a Sylow P.
    Saturated {
        #[arg(short = 'g', long)]
        group: String,
        #[arg(short = 'p', long)]
        prime: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Classes of elementary abelian subgroups with their automizers.
    Strata {
        #[arg(short = 'g', long)]
        group: String,
        #[arg(short = 'p', long)]
        prime: u32,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Parse and validate the catalog, then print its canonical form.
    Validate,
}

fn parse_images(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}")))
        .collect()
}

fn catalog(common: &Common) -> Result<Catalog, AppError> {
    let builtin = Catalog::builtin();
    match &common.catalog {
        Some(path) => builtin.extended(&Catalog::load(path)?),
        None => Ok(builtin),
    }
}

fn settings(common: &Common) -> Settings {
    let mut limits = Limits::default();
    if let Some(m) = common.max_elements {
        limits.max_elements = m;
    }
    Settings {
        limits,
        max_degree: common.max_degree,
        timings: common.timings,
    }
}

fn write_out(text: &str, out: Option<&Path>) -> Result<(), AppError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| AppError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(report: &BatchReport, common: &Common) -> Result<i32, AppError> {
    let text = match common.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    write_out(&text, common.out.as_deref())?;
    Ok(report.exit_code())
}

fn single(
    common: &Common,
    group: String,
    p: u32,
    ambient_sub_gens: Option<Vec<Vec<u32>>>,
    max_degree: usize,
    checks: &[&str],
) -> Result<i32, AppError> {
    let scenario = Scenario {
        id: format!("{group}-p{p}"),
        group,
        p,
        subgroup_gens: None,
        ambient_sub_gens,
        max_degree,
        checks: checks.iter().map(|c| c.to_string()).collect(),
    };
    let report = run_batch(
        &[scenario],
        &catalog(common)?,
        &Registry::builtin(),
        &settings(common),
        common.jobs,
    )?;
    emit(&report, common)
}

fn dispatch(cli: Cli) -> Result<i32, AppError> {
    match cli.command {
        Command::Catalog {
            action: CatalogAction::Validate,
            common,
        } => {
            let cat = catalog(&common)?;
            for g in cat.groups() {
                g.build(settings(&common).limits.max_elements)?;
            }
            let text = format!("# sha256 {}\n{}", cat.sha256(), cat.to_toml());
            write_out(&text, common.out.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Run { files, common } => {
            let mut scenarios = Vec::new();
            for f in &files {
                if f.as_os_str() == "builtin" {
                    scenarios.extend(builtin_scenarios());
                } else {
                    scenarios.extend(load_scenarios(f)?);
                }
            }
            let report = run_batch(
                &scenarios,
                &catalog(&common)?,
                &Registry::builtin(),
                &settings(&common),
                common.jobs,
            )?;
            emit(&report, &common)
        }
        Command::Mislin {
            group,
            prime,
            sub,
            common,
        } => {
            let sub = if sub.is_empty() { None } else { Some(sub) };
            single(&common, group, prime, sub, 0, &["control", "mislin"])
        }
        Command::Dims {
            group,
            prime,
            degree,
            common,
        } => single(&common, group, prime, None, degree, &["dims"]),
        Command::Saturated {
            group,
            prime,
            common,
        } => single(&common, group, prime, None, 0, &["saturation"]),
        Command::Strata {
            group,
            prime,
            common,
        } => single(&common, group, prime, None, 0, &["strata"]),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
