use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use arrcheck::report::{analyze, bench, AnalyzeOptions};
use arrcheck::signgeo::{SearchLimits, DEFAULT_CHAMBER_CAP, DEFAULT_NODE_CAP};
use arrcheck::vg::export_presentation;
use arrcheck::{catalog, input, Arrangement, Error, FieldKind};

/// Exact analysis of real hyperplane arrangements.
#[derive(Parser)]
#[command(name = "arrcheck", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report sigma counts, Yoshinaga, VG and Cordovil quadraticity, chordality and formality.
    Analyze {
        /// Arrangement file (text or JSON).
        #[arg(required_unless_present = "catalog", conflicts_with = "catalog")]
        path: Option<PathBuf>,
        /// Catalog entry instead of a file, e.g. `d4` or `er(-1)`.
        #[arg(long)]
        catalog: Option<String>,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
        /// Coefficient field: `q` or `fp:<prime>`.
        #[arg(long, default_value = "q")]
        field: FieldKind,
        /// Also compute sigma_3 .. sigma_{r-1}.
        #[arg(long)]
        sigma_chain: bool,
        /// Write a computer-algebra presentation of I_k to this path.
        #[arg(long)]
        export_cas: Option<PathBuf>,
        /// The k used by --export-cas.
        #[arg(long, default_value_t = 2)]
        cas_k: usize,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Time sigma_2, the chamber count and the VG verdict.
    Bench {
        /// Catalog entry, e.g. `remark13`.
        name: String,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Catalog utilities.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entry names and family templates.
    List,
    /// Print an entry in the text input format.
    Show { name: String },
}

#[derive(Args)]
struct LimitArgs {
    /// Maximum search nodes for the sign-vector searches.
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    node_cap: u64,
    /// Maximum number of chambers to enumerate.
    #[arg(long, default_value_t = DEFAULT_CHAMBER_CAP)]
    chamber_cap: usize,
}

impl LimitArgs {
    fn limits(&self) -> SearchLimits {
        SearchLimits {
            node_cap: self.node_cap,
            chamber_cap: self.chamber_cap,
        }
    }
}

fn load(path: Option<&PathBuf>, name: Option<&str>) -> Result<(Arrangement, String), Error> {
    match (path, name) {
        (_, Some(name)) => Ok((catalog::get(name)?, name.to_string())),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
            Ok((input::parse_any(&text)?, path.display().to_string()))
        }
        (None, None) => Err(Error::InvalidInput("no input given".into())),
    }
}

/// Writes to stdout, tolerating a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Analyze {
            path,
            catalog,
            json,
            field,
            sigma_chain,
            export_cas,
            cas_k,
            limits,
        } => {
            let (arr, source) = load(path.as_ref(), catalog.as_deref())?;
            if let Some(out) = export_cas {
                let text = export_presentation(&arr, cas_k, field)?;
                std::fs::write(&out, text).map_err(|e| {
                    Error::InvalidInput(format!("cannot write {}: {e}", out.display()))
                })?;
            }
            let opts = AnalyzeOptions {
                field,
                sigma_chain,
                limits: limits.limits(),
            };
            let report = analyze(&arr, &source, &opts)?;
            if json {
                emit(&format!("{}\n", report.to_json()));
            } else {
                emit(&report.render_text());
            }
        }
        Command::Bench { name, json, limits } => {
            let arr = catalog::get(&name)?;
            let rec = bench(&arr, &name, FieldKind::Rationals, &limits.limits())?;
            if json {
                emit(&format!(
                    "{}\n",
                    serde_json::to_string_pretty(&rec).expect("record serializes")
                ));
            } else {
                let ms = |us: u64| us as f64 / 1000.0;
                println!("{name}: n = {}, rank {}", rec.n, rec.rank);
                println!(
                    "  sigma_2   {:>10} in {:.1} ms",
                    rec.sigma2,
                    ms(rec.sigma2_us)
                );
                println!(
                    "  chambers  {:>10} in {:.1} ms",
                    rec.chamber_count,
                    ms(rec.chambers_us)
                );
                println!(
                    "  vg        quadratic = {} in {:.1} ms",
                    rec.vg_quadratic,
                    ms(rec.vg_us)
                );
                println!("  yoshinaga {}", rec.yoshinaga);
                println!("  total     {:.1} ms", ms(rec.total_us));
            }
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for name in catalog::NAMES {
                    println!("{name}");
                }
            }
            CatalogAction::Show { name } => {
                let entry = catalog::entry(&name)?;
                println!("# {}: {}", name, entry.provenance);
                print!("{}", input::to_text(&entry.arrangement));
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("arrcheck: {e}");
            match e {
                Error::CapExceeded(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
