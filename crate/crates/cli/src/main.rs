use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use dvr_core::datasets::Dataset;
use dvr_core::density::KernelFamily;
use dvr_core::diagram_metrics::bottleneck;
use dvr_core::filtration::FiltrationFamily;
use dvr_core::io;
use dvr_core::persistence::DEFAULT_FIELD;
use dvr_core::pipeline::{compute_diagram, KChoice, RunConfig};
use dvr_core::plot::diagram_svg;
use dvr_core::scaled_metric::component_counts;

const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_NUMERIC: u8 = 4;

#[derive(Parser)]
#[command(name = "dvr", version, about = "Density-scaled Vietoris-Rips persistent homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a sample cloud and write it as CSV.
    Sample {
        /// two-circles, cassini, noisy-circle, two-squares or lorenz-delay
        dataset: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample size (circle points for noisy-circle; ignored by lorenz-delay).
        #[arg(long)]
        n: Option<usize>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute a persistence diagram of a CSV point cloud.
    Ph {
        input: PathBuf,
        #[arg(long, default_value = "dvr")]
        filtration: String,
        /// Intrinsic dimension of the sampled space.
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Neighbor count, or "auto" for the component-plateau heuristic.
        #[arg(long, default_value = "auto")]
        k: String,
        #[arg(long, default_value_t = 5)]
        ell: usize,
        #[arg(long, default_value = "biweight")]
        kernel: String,
        #[arg(long, default_value_t = DEFAULT_FIELD)]
        field: u32,
        #[arg(long, default_value_t = 1)]
        max_dim: usize,
        /// Largest filtration value kept.
        #[arg(long)]
        cap: Option<f64>,
        /// Accepted for symmetry with `sample`; the computation is deterministic.
        #[arg(long)]
        seed: Option<u64>,
        /// Diagram JSON path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also render the diagram as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Print the number of kNN-graph components for k = 1..k_max.
    KnnDiag {
        input: PathBuf,
        #[arg(long, default_value_t = 20)]
        k_max: usize,
    },
    /// Bottleneck distance between two diagram files in one dimension.
    Bottleneck {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 0)]
        dim: usize,
    },
    /// Render a diagram file as SVG.
    Plot {
        diagram: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use dvr_core::Error as E;
    match err.downcast_ref::<E>() {
        Some(E::Io(_) | E::Parse(_)) => EXIT_INPUT,
        Some(E::NoPlateau { .. } | E::DegenerateInput(_) | E::InvalidFiltration(_) | E::Oversize(_)) => EXIT_NUMERIC,
        Some(E::InvalidParameter(_)) => EXIT_USAGE,
        None => {
            if err.downcast_ref::<std::io::Error>().is_some() {
                EXIT_INPUT
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Sample { dataset, seed, n, out } => {
            let dataset: Dataset = dataset.parse()?;
            let cloud = dataset.generate(seed, n)?;
            match out {
                Some(path) => io::write_cloud_file(&cloud, &path).with_context(|| format!("writing {}", path.display()))?,
                None => io::write_cloud_csv(&cloud, std::io::stdout().lock())?,
            }
        }
        Command::Ph {
            input,
            filtration,
            n,
            k,
            ell,
            kernel,
            field,
            max_dim,
            cap,
            seed: _,
            out,
            svg,
        } => {
            let k = if k == "auto" {
                if ell == 0 {
                    return Err(dvr_core::Error::InvalidParameter("--ell must be at least 1".into()).into());
                }
                KChoice::Auto { ell }
            } else {
                KChoice::Fixed(k.parse().map_err(|_| {
                    dvr_core::Error::InvalidParameter(format!("--k must be a positive integer or 'auto', got '{k}'"))
                })?)
            };
            let cfg = RunConfig {
                family: filtration.parse::<FiltrationFamily>()?,
                dim: n,
                k,
                kernel: kernel.parse::<KernelFamily>()?,
                field,
                max_dim,
                cap,
            };
            let cloud = read_cloud(&input)?;
            let dgm = compute_diagram(&cloud, &cfg)?;
            let json = io::diagram_to_json(&dgm);
            match out {
                Some(path) => std::fs::write(&path, json)
                    .map_err(dvr_core::Error::from)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => std::io::stdout().lock().write_all(json.as_bytes())?,
            }
            if let Some(path) = svg {
                std::fs::write(&path, diagram_svg(&dgm))
                    .map_err(dvr_core::Error::from)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::KnnDiag { input, k_max } => {
            let cloud = read_cloud(&input)?;
            let counts = component_counts(&cloud, k_max)?;
            let mut out = std::io::stdout().lock();
            writeln!(out, "k,components")?;
            for (k, c) in counts {
                writeln!(out, "{k},{c}")?;
            }
        }
        Command::Bottleneck { a, b, dim } => {
            let da = read_diagram(&a)?;
            let db = read_diagram(&b)?;
            println!("{}", format_sig(bottleneck(&da, &db, dim), 9));
        }
        Command::Plot { diagram, out } => {
            let d = read_diagram(&diagram)?;
            std::fs::write(&out, diagram_svg(&d))
                .map_err(dvr_core::Error::from)
                .with_context(|| format!("writing {}", out.display()))?;
        }
    }
    Ok(())
}

fn read_cloud(path: &Path) -> Result<dvr_core::PointCloud> {
    io::read_cloud_file(path).with_context(|| format!("reading {}", path.display()))
}

fn read_diagram(path: &Path) -> Result<dvr_core::persistence::PersistenceDiagram> {
    io::read_diagram_file(path).with_context(|| format!("reading {}", path.display()))
}

/// `%.{digits}g`-style formatting.
fn format_sig(x: f64, digits: usize) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
