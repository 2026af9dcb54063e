//! Subcommand dispatch. Exit codes: 0 success (and verification pass),
//! 1 verification failure, 2 usage error, 3 domain error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use henon_core::{
    construct_partner, full_suite, q_polynomial_with, zeta_series_with, Complex64, CoverDynamics,
    MonicCenteredHenon, Point2, Precision, RigidityParams, SuiteOptions,
};

use crate::formats::{
    write_series_csv, MapSpec, PairSpec, QSummaryJson, ReportJson, SliceSpecJson,
};
use crate::render::render_slice;
use crate::CliError;

#[derive(Parser)]
#[command(name = "henon", version, about = "Escaping-set computations for complex Hénon maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the Böttcher tail coefficients L_k and D_k as CSV
    Series {
        /// Map spec JSON file
        #[arg(long)]
        map: PathBuf,
        /// Series truncation order (default 2d)
        #[arg(long)]
        order: Option<usize>,
        /// Coefficient mantissa bits (<= 53 doubles, above double-double)
        #[arg(long, default_value_t = 53)]
        precision: u32,
        /// Output prefix; writes <out>_L.csv and <out>_D.csv
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the polynomial Q with the L/D tails as JSON
    QPoly {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = 53)]
        precision: u32,
        /// Output file (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct the partner map F from H and root-of-unity indices
    Partner {
        #[arg(long)]
        map: PathBuf,
        /// Index a of alpha = e^{2 pi i a/(d^2-1)}
        #[arg(long)]
        alpha_index: u64,
        /// Index g of gamma = e^{2 pi i g/(d-1)}
        #[arg(long, default_value_t = 0)]
        gamma_index: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run all applicable verification suites on a pair spec
    Verify {
        /// Pair spec JSON file
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        order: Option<usize>,
        /// Tolerance for the series-based relation checks
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 53)]
        precision: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Deck-transformation property suite for a map's lifted dynamics
    DeckCheck {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 53)]
        precision: u32,
    },
    /// Evaluate the Green function at points given as x_re,x_im,y_re,y_im
    Green {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 1000)]
        max_iter: usize,
        /// Points, one quadruple per argument
        points: Vec<String>,
    },
    /// Render escape-time and Green layers of a C^2 slice
    Render {
        #[arg(long)]
        map: PathBuf,
        /// Slice spec JSON file
        #[arg(long)]
        slice: PathBuf,
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Output prefix; writes <out>_escape.ppm, <out>_green.ppm, <out>.csv
        #[arg(long)]
        out: PathBuf,
        /// Rayon thread count (default: library default)
        #[arg(long)]
        threads: Option<usize>,
        /// Additionally encode PNG copies of both layers
        #[arg(long, default_value_t = false)]
        png: bool,
    },
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            3
        }
    }
}

fn load_map(path: &Path) -> Result<MonicCenteredHenon, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let spec: MapSpec = serde_json::from_str(&text)?;
    let (map, sigma) = spec.to_monic()?;
    if sigma.is_some() {
        eprintln!("note: general map normalised to monic centered form");
    }
    Ok(map)
}

fn write_or_print(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, text)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn series_data(
    map: &MonicCenteredHenon,
    order: Option<usize>,
    precision: u32,
) -> Result<(henon_core::TailSeries, henon_core::TailSeries, usize), CliError> {
    let order = order.unwrap_or(2 * map.degree());
    let precision = Precision::from_bits(precision);
    let zeta = zeta_series_with(map, order, precision)?;
    let y = zeta.revert(order)?;
    Ok((zeta, y, order))
}

fn execute(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Series {
            map,
            order,
            precision,
            out,
        } => {
            let map = load_map(&map)?;
            let (zeta, y, _) = series_data(&map, order, precision)?;
            match out {
                Some(prefix) => {
                    let l_path = path_with_suffix(&prefix, "_L.csv");
                    let d_path = path_with_suffix(&prefix, "_D.csv");
                    let mut buf = Vec::new();
                    write_series_csv(&mut buf, &zeta)?;
                    fs::write(&l_path, &buf)?;
                    buf.clear();
                    write_series_csv(&mut buf, &y)?;
                    fs::write(&d_path, &buf)?;
                    println!("{}", l_path.display());
                    println!("{}", d_path.display());
                }
                None => {
                    println!("# L_k");
                    write_series_csv(std::io::stdout().lock(), &zeta)?;
                    println!("# D_k");
                    write_series_csv(std::io::stdout().lock(), &y)?;
                }
            }
            Ok(0)
        }
        Command::QPoly {
            map,
            order,
            precision,
            out,
        } => {
            let map = load_map(&map)?;
            let (zeta, y, order) = series_data(&map, order, precision)?;
            let q = q_polynomial_with(&map, order.max(map.degree()), Precision::from_bits(precision))?;
            let summary = QSummaryJson::new(&q, &zeta, &y);
            let mut text = serde_json::to_string_pretty(&summary)?;
            text.push('\n');
            write_or_print(out.as_ref(), &text)?;
            Ok(0)
        }
        Command::Partner {
            map,
            alpha_index,
            gamma_index,
            out,
        } => {
            let h = load_map(&map)?;
            let params = RigidityParams::new(h.degree(), alpha_index, gamma_index)?;
            let f = construct_partner(&h, &params);
            let mut text = serde_json::to_string_pretty(&MapSpec::from_map(&f))?;
            text.push('\n');
            write_or_print(out.as_ref(), &text)?;
            Ok(0)
        }
        Command::Verify {
            pair,
            order,
            tol,
            precision,
            out,
        } => {
            let text = fs::read_to_string(&pair)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", pair.display())))?;
            let spec: PairSpec = serde_json::from_str(&text)?;
            let (h, f, params) = spec.load()?;
            let opts = SuiteOptions {
                order: order.unwrap_or(2 * h.degree()),
                tol,
                samples: 64,
                precision: Precision::from_bits(precision),
            };
            let report = full_suite(&h, &f, &params, &opts)?;
            let json = ReportJson::from_report(&report);
            let mut text = serde_json::to_string_pretty(&json)?;
            text.push('\n');
            write_or_print(out.as_ref(), &text)?;
            if out.is_some() {
                println!("overall: {}", if report.overall { "pass" } else { "fail" });
            }
            Ok(if report.overall { 0 } else { 1 })
        }
        Command::DeckCheck {
            map,
            tol,
            samples,
            precision,
        } => {
            let map = load_map(&map)?;
            let q = q_polynomial_with(&map, map.degree(), Precision::from_bits(precision))?;
            let cov = CoverDynamics::new(q, map.delta())?;
            let report = cov.deck_suite(samples, tol);
            let json = ReportJson::from_report(&report);
            println!("{}", serde_json::to_string_pretty(&json)?);
            Ok(if report.overall { 0 } else { 1 })
        }
        Command::Green {
            map,
            tol,
            max_iter,
            points,
        } => {
            if points.is_empty() {
                return Err(CliError::Usage(
                    "green needs at least one point as x_re,x_im,y_re,y_im".into(),
                ));
            }
            let map = load_map(&map)?;
            println!("x_re,x_im,y_re,y_im,green,error_bound");
            for spec in points {
                let parts: Vec<f64> = spec
                    .split(',')
                    .map(|p| p.trim().parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| CliError::Usage(format!("bad point '{spec}': {e}")))?;
                if parts.len() != 4 {
                    return Err(CliError::Usage(format!(
                        "bad point '{spec}': need four comma-separated numbers"
                    )));
                }
                let p = Point2::new(
                    Complex64::new(parts[0], parts[1]),
                    Complex64::new(parts[2], parts[3]),
                );
                let g = henon_core::green_numeric(&map, p, tol, max_iter);
                println!(
                    "{},{},{},{},{},{}",
                    parts[0], parts[1], parts[2], parts[3], g.value, g.error_bound
                );
            }
            Ok(0)
        }
        Command::Render {
            map,
            slice,
            max_iter,
            tol,
            out,
            threads,
            png,
        } => {
            let map = load_map(&map)?;
            let text = fs::read_to_string(&slice)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", slice.display())))?;
            let spec: SliceSpecJson = serde_json::from_str(&text)?;
            let slice = spec.to_slice()?;
            let output = match threads {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?
                    .install(|| render_slice(&map, &slice, max_iter, tol, None)),
                None => render_slice(&map, &slice, max_iter, tol, None),
            };
            let escape_path = path_with_suffix(&out, "_escape.ppm");
            let green_path = path_with_suffix(&out, "_green.ppm");
            let csv_path = path_with_suffix(&out, ".csv");
            fs::write(&escape_path, &output.ppm_escape)?;
            fs::write(&green_path, &output.ppm_green)?;
            fs::write(&csv_path, &output.csv)?;
            if png {
                let (escape, green) = output.gray_planes();
                save_png(&path_with_suffix(&out, "_escape.png"), output.width, output.height, escape)?;
                save_png(&path_with_suffix(&out, "_green.png"), output.width, output.height, green)?;
            }
            println!("checksum: {:016x}", output.checksum);
            println!("{}", escape_path.display());
            println!("{}", green_path.display());
            println!("{}", csv_path.display());
            Ok(0)
        }
    }
}

fn path_with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

fn save_png(path: &Path, width: u32, height: u32, gray: Vec<u8>) -> Result<(), CliError> {
    let img = image::GrayImage::from_raw(width, height, gray)
        .ok_or_else(|| CliError::Usage("internal: PNG plane size mismatch".into()))?;
    img.save(path)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}
