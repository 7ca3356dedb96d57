//! Command-line front end: compute sharp determinant bounds, verify them by
//! scanning the coefficient body, evaluate extremal functions, list the
//! generator registry.
//!
//! Exit codes: 0 pass, 1 scan violation, 2 every requested bound (or the
//! scan itself) inapplicable, 64 usage error, 74 I/O error.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use toeplitz_sharp_core::bounds;
use toeplitz_sharp_core::classes::{
    self, CtcBase, ExtremalId, FamilySpec, MindaGenerator, DEFAULT_ORDER,
};
use toeplitz_sharp_core::oracle::{self, OracleError, ScanConfig};
use toeplitz_sharp_core::series::TruncatedSeries;

const EXIT_VIOLATION: u8 = 1;
const EXIT_INAPPLICABLE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(
    name = "toeplitz-sharp",
    version,
    about = "Sharp Hermitian-Toeplitz determinant bounds for starlike, convex and close-to-convex families, with brute-force verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the sharp determinant bounds for a family.
    Bounds(BoundsArgs),
    /// Scan the coefficient body and check every sample against the bounds.
    Verify(VerifyArgs),
    /// Evaluate an extremal function (f1..f7) and its determinants.
    Extremal(ExtremalArgs),
    /// Generator registry operations.
    Classes {
        #[command(subcommand)]
        action: ClassesAction,
    },
}

#[derive(Subcommand)]
enum ClassesAction {
    /// List the built-in generators and close-to-convex bases.
    List {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Starlike,
    Convex,
    Ctc,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct SourceArgs {
    /// Built-in generator, `name` or `name:key=value,...`
    /// (e.g. `janowski:A=1,B=-1`, `order:a=0.5`, `sin`).
    #[arg(long, value_name = "SPEC")]
    phi: Option<String>,
    /// JSON file with a custom generator series `[[re,im],...]`, index = degree.
    #[arg(long, value_name = "PATH")]
    phi_file: Option<PathBuf>,
    /// Named close-to-convex base: f1-base, f2-base, f3-base (alias koebe),
    /// f4-base, id.
    #[arg(long, value_name = "NAME")]
    g: Option<String>,
    /// JSON file with a custom base series.
    #[arg(long, value_name = "PATH")]
    g_file: Option<PathBuf>,
    /// Truncation order of the series machinery.
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[command(flatten)]
    source: SourceArgs,
    /// Grid resolution as `P1,RADIUS,PHASE` counts.
    #[arg(long, value_name = "P1,RAD,PHASE", default_value = "200,64,64")]
    grid: String,
    /// Number of random samples on top of the grid.
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Absolute tolerance for violation checks.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Write every sample as a CSV row (runs the scan sequentially).
    #[arg(long, value_name = "PATH")]
    dump_samples: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct ExtremalArgs {
    /// Extremal id: f1..f7.
    id: String,
    /// Family override; inferred from the id when omitted.
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

enum Failure {
    Usage(String),
    Io(String),
    Inapplicable(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Io(_) => EXIT_IO,
            Failure::Inapplicable(_) => EXIT_INAPPLICABLE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::Inapplicable(m) => m,
        }
    }
}

fn usage<T>(message: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(message.into()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Bounds(args) => cmd_bounds(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Extremal(args) => cmd_extremal(args),
        Command::Classes {
            action: ClassesAction::List { format },
        } => {
            print!("{}", render::classes_list(format));
            Ok(0)
        }
    }
}

fn cmd_bounds(args: BoundsArgs) -> Result<u8, Failure> {
    let family = build_family(args.family, &args.source)?;
    let outcomes = bounds::family_bounds(&family).map_err(|e| Failure::Usage(e.to_string()))?;
    print!("{}", render::bounds(args.format, &family, &outcomes));
    if outcomes.iter().all(|o| !o.is_applicable()) {
        return Ok(EXIT_INAPPLICABLE);
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let family = build_family(args.family, &args.source)?;
    let (grid_p1, grid_r, grid_phase) = parse_grid(&args.grid)?;
    let cfg = ScanConfig {
        grid_p1,
        grid_zeta_radius: grid_r,
        grid_zeta_phase: grid_phase,
        random_samples: args.samples,
        seed: args.seed,
        tolerance: args.tolerance,
    };

    let scanned = match &args.dump_samples {
        None => oracle::verify_family(&family, &cfg),
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| Failure::Io(format!("cannot create {}: {e}", path.display())))?;
            let mut writer = std::io::BufWriter::new(file);
            oracle::scan_family_dump(&family, &cfg, &mut writer).and_then(|mut report| {
                let outcomes = bounds::family_bounds(&family)?;
                report.sharp_gaps = oracle::check_sharpness(&family, &outcomes)?;
                Ok((outcomes, report))
            })
        }
    };

    match scanned {
        Ok((outcomes, report)) => {
            print!("{}", render::verify(args.format, &cfg, &outcomes, &report));
            Ok(if report.passed() { 0 } else { EXIT_VIOLATION })
        }
        Err(OracleError::Inapplicable { family, reason }) => {
            Err(Failure::Inapplicable(format!("{family}: {reason}")))
        }
        Err(OracleError::EmptyScan) => usage("scan has zero samples; raise --grid or --samples"),
        Err(OracleError::Io(e)) => Err(Failure::Io(e)),
        Err(e) => usage(e.to_string()),
    }
}

fn cmd_extremal(args: ExtremalArgs) -> Result<u8, Failure> {
    let id: ExtremalId = args
        .id
        .parse()
        .map_err(|_| Failure::Usage(format!("unknown extremal '{}'; expected f1..f7", args.id)))?;
    let inferred = match id {
        ExtremalId::F1 | ExtremalId::F2 => FamilyKind::Starlike,
        ExtremalId::F3 | ExtremalId::F4 => FamilyKind::Convex,
        _ => FamilyKind::Ctc,
    };
    if let Some(explicit) = args.family {
        if explicit != inferred {
            return usage(format!(
                "extremal {id} belongs to the {} family",
                kind_name(inferred)
            ));
        }
    }
    let family = build_family(inferred, &args.source)?;
    let f = classes::extremal(id, &family).map_err(|e| Failure::Usage(e.to_string()))?;
    print!("{}", render::extremal(args.format, id, &family, &f));
    Ok(0)
}

fn kind_name(kind: FamilyKind) -> &'static str {
    match kind {
        FamilyKind::Starlike => "starlike",
        FamilyKind::Convex => "convex",
        FamilyKind::Ctc => "ctc",
    }
}

fn build_family(kind: FamilyKind, source: &SourceArgs) -> Result<FamilySpec, Failure> {
    let provided = [
        source.phi.is_some(),
        source.phi_file.is_some(),
        source.g.is_some(),
        source.g_file.is_some(),
    ];
    if provided.iter().filter(|p| **p).count() != 1 {
        return usage("provide exactly one generator source: --phi, --phi-file, --g or --g-file");
    }
    if source.order < 3 {
        return usage("--order must be at least 3 to hold a2 and a3");
    }
    match kind {
        FamilyKind::Starlike | FamilyKind::Convex => {
            let phi = if let Some(spec) = &source.phi {
                parse_phi_spec(spec, source.order)?
            } else if let Some(path) = &source.phi_file {
                load_phi_file(path, source.order)?
            } else {
                return usage("starlike/convex families are described by --phi or --phi-file");
            };
            Ok(match kind {
                FamilyKind::Starlike => FamilySpec::Starlike(phi),
                _ => FamilySpec::Convex(phi),
            })
        }
        FamilyKind::Ctc => {
            let g = if let Some(name) = &source.g {
                CtcBase::named(name, source.order).map_err(|e| Failure::Usage(e.to_string()))?
            } else if let Some(path) = &source.g_file {
                load_g_file(path, source.order)?
            } else {
                return usage("ctc families are described by --g or --g-file");
            };
            Ok(FamilySpec::CloseToConvex(g))
        }
    }
}

fn parse_phi_spec(spec: &str, order: usize) -> Result<MindaGenerator, Failure> {
    let (name, params_text) = match spec.split_once(':') {
        Some((name, rest)) => (name, Some(rest)),
        None => (spec, None),
    };
    let mut params: Vec<(String, f64)> = Vec::new();
    if let Some(text) = params_text {
        for item in text.split(',').filter(|s| !s.is_empty()) {
            let Some((key, value)) = item.split_once('=') else {
                return usage(format!("malformed parameter '{item}'; expected key=value"));
            };
            let value: f64 = value.trim().parse().map_err(|_| {
                Failure::Usage(format!("parameter '{key}' is not a number: {value}"))
            })?;
            params.push((key.trim().to_string(), value));
        }
    }
    let params: Vec<(&str, f64)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    classes::phi_named(name.trim(), &params, order).map_err(|e| Failure::Usage(e.to_string()))
}

fn load_series(path: &Path) -> Result<TruncatedSeries, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{} is not a series file: {e}", path.display())))
}

fn load_phi_file(path: &Path, order: usize) -> Result<MindaGenerator, Failure> {
    let series = load_series(path)?.truncate(order);
    MindaGenerator::from_series(format!("custom:{}", path.display()), series)
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn load_g_file(path: &Path, order: usize) -> Result<CtcBase, Failure> {
    let series = load_series(path)?.truncate(order);
    CtcBase::from_series(format!("custom:{}", path.display()), series)
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_grid(text: &str) -> Result<(usize, usize, usize), Failure> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return usage(format!("--grid expects P1,RAD,PHASE counts, got '{text}'"));
    }
    let mut counts = [0usize; 3];
    for (slot, part) in counts.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("grid count '{part}' is not an integer")))?;
    }
    Ok((counts[0], counts[1], counts[2]))
}
