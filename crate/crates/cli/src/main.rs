//! Command-line front end: named presets or matrix files in, verification
//! reports and table/series exports out.
//!
//! Exit codes: 0 when every selected check passes, 1 when a check fails,
//! 2 on configuration or environment errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use twistpoly::hecke::{
    check_conjugation_closed_forms, check_dihedral_identity_coefficient,
    check_dihedral_support_containment, check_generator_support_containment,
    check_module_support_containment, check_paired_product_identity_coefficient,
    check_structure_constant_positivity, check_sum_stability,
};
use twistpoly::invol::{PhiTable, TwistedInvolutionSet};
use twistpoly::presets::{preset, PRESET_NAMES};
use twistpoly::report::{
    involutions_csv, series_csv, series_to_strings, table_csv, CheckReport, InvolutionRow,
    TableRow, VerifyReport,
};
use twistpoly::series::{poincare, poincare_star, twisted_series, verify_series_identity};
use twistpoly::xtable::{
    check_descent_choice_independence, check_dual_recursions, check_entry_shape,
    check_identity_row, check_module_oracle, check_nonnegative_evaluations, check_row_sums,
    XTable,
};
use twistpoly::{CoxeterPresentation, ElementStore, WirePresentation};

#[derive(Parser)]
#[command(
    name = "twistpoly",
    version,
    about = "Twisted involutions in Coxeter groups: enumeration, polynomial tables \
             and power-series identity verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the series identity and the selected families of exhaustive
    /// checks; exit code 0 exactly when everything selected passes.
    Verify(RunArgs),
    /// Export the polynomial table as (z word, y word, coefficients) rows.
    Xtable(RunArgs),
    /// Export the length series P, the star-fixed series P_* and the
    /// twisted-involution series R.
    Series(RunArgs),
    /// List twisted involutions with their lengths and phi values.
    Invols(RunArgs),
    /// List the built-in presets and their stars.
    Presets,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckSet {
    /// The series identity R * P_* = P(u^2), truncated, by division, and
    /// (for finite groups) as a cleared polynomial identity.
    Theorem,
    /// Table row checks: sums, identity row, dual recursions, entry shape,
    /// descent independence, the module oracle and prime evaluations.
    Xrows,
    /// Algebra checks: closed forms, support containments, paired products,
    /// sum stability and structure-constant positivity.
    Hecke,
    /// Descent independence, parity and bounds of phi.
    Phi,
    All,
}

#[derive(Args)]
struct RunArgs {
    /// Preset name(s), comma separated (see `twistpoly presets`).
    #[arg(long, value_delimiter = ',')]
    preset: Vec<String>,

    /// JSON presentation file {"rank", "m", "star"} with the strict upper
    /// triangle of the Coxeter matrix in "m" (0 encodes infinity).
    #[arg(long, conflicts_with = "preset")]
    matrix_file: Option<PathBuf>,

    /// Star name, or "all" for every star of each preset.
    #[arg(long, default_value = "id")]
    star: String,

    /// Ball bound L; defaults to max(order, 2 * ly).
    #[arg(long)]
    ball: Option<u32>,

    /// Series truncation order N (default 12).
    #[arg(long)]
    order: Option<usize>,

    /// Maximal row length of the polynomial table (default 4).
    #[arg(long)]
    ly: Option<u32>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Which check families `verify` runs, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    checks: Vec<CheckSet>,

    /// Directory for per-run output files; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Omit the timestamp field, making reports byte-reproducible.
    #[arg(long)]
    no_timestamp: bool,

    /// Cap on the number of enumerated elements.
    #[arg(long, default_value_t = twistpoly::DEFAULT_ELEMENT_LIMIT)]
    limit: usize,
}

struct RunSpec {
    preset: Option<String>,
    star: Option<String>,
    presentation: CoxeterPresentation,
}

impl RunSpec {
    fn slug(&self, command: &str, ext: &str) -> String {
        let sanitize = |s: &str| -> String {
            s.chars()
                .map(|c| if c.is_ascii_alphanumeric() { c } else { '-' })
                .collect::<String>()
                .trim_matches('-')
                .to_string()
        };
        let p = self.preset.as_deref().unwrap_or("matrix");
        let s = self.star.as_deref().unwrap_or("file");
        format!("{command}_{}_{}.{ext}", sanitize(p), sanitize(s))
    }
}

/// Optional run parameters a matrix file may carry next to the presentation;
/// explicit flags take precedence.
#[derive(Default, Deserialize)]
struct FileRunFields {
    order: Option<usize>,
    ly: Option<u32>,
    ball: Option<u32>,
}

struct Config {
    runs: Vec<RunSpec>,
    order: usize,
    ly: u32,
    ball: u32,
}

fn resolve(args: &RunArgs) -> Result<Config> {
    let mut file_fields = FileRunFields::default();
    let runs = if let Some(path) = &args.matrix_file {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let wire: WirePresentation =
            serde_json::from_str(&text).context("parsing the presentation file")?;
        file_fields = serde_json::from_str(&text).context("parsing the run fields")?;
        vec![RunSpec {
            preset: None,
            star: None,
            presentation: wire.validate()?,
        }]
    } else {
        if args.preset.is_empty() {
            bail!("one of --preset or --matrix-file is required");
        }
        let mut runs = Vec::new();
        for name in &args.preset {
            let p = preset(name)?;
            let stars: Vec<&str> = if args.star == "all" {
                p.star_names()
            } else {
                vec![args.star.as_str()]
            };
            for star in stars {
                runs.push(RunSpec {
                    preset: Some(p.name.to_string()),
                    star: Some(star.to_string()),
                    presentation: p.presentation(star)?,
                });
            }
        }
        runs
    };

    let order = args.order.or(file_fields.order).unwrap_or(12);
    let ly = args.ly.or(file_fields.ly).unwrap_or(4);
    let needed = (order as u32).max(2 * ly);
    let ball = match args.ball.or(file_fields.ball) {
        None => needed,
        Some(ball) if ball >= needed => ball,
        Some(ball) => bail!(
            "ball {ball} is below the required max(order, 2*ly) = {needed}; \
             raise the ball or lower order/ly"
        ),
    };
    Ok(Config {
        runs,
        order,
        ly,
        ball,
    })
}

fn timestamp(args: &RunArgs) -> Option<u64> {
    if args.no_timestamp {
        None
    } else {
        Some(
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .expect("system clock after the epoch")
                .as_secs(),
        )
    }
}

fn emit(out: &Option<PathBuf>, filename: &str, body: &str) -> Result<()> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)
                .with_context(|| format!("creating {}", dir.display()))?;
            let path: PathBuf = Path::new(dir).join(filename);
            fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {}", path.display());
        }
        None => println!("{body}"),
    }
    Ok(())
}

fn wants(args: &RunArgs, set: CheckSet) -> bool {
    args.checks.contains(&CheckSet::All) || args.checks.contains(&set)
}

fn build_store(spec: &RunSpec, ball: u32, limit: usize) -> Result<ElementStore> {
    Ok(ElementStore::build_with_limit(
        spec.presentation.clone(),
        ball,
        limit,
    )?)
}

fn run_verify(args: &RunArgs) -> Result<bool> {
    let config = resolve(args)?;
    let ball = config.ball;
    let mut all_pass = true;
    for spec in &config.runs {
        let store = build_store(spec, ball, args.limit)?;
        let identity = verify_series_identity(&store, config.order)?;
        let mut checks: Vec<CheckReport> = Vec::new();
        let mut pass = true;

        if wants(args, CheckSet::Theorem) {
            pass &= identity.pass
                && identity.division_pass
                && identity.cleared_pass.unwrap_or(true);
        }

        if wants(args, CheckSet::Xrows) {
            let invols = TwistedInvolutionSet::enumerate(&store);
            let table = XTable::compute(&store, &invols, config.ly)?;
            checks.push(check_row_sums(&store, &table));
            checks.push(check_identity_row(&store, &table));
            checks.push(check_dual_recursions(&store, &invols, &table));
            checks.push(check_entry_shape(&store, &table));
            checks.push(check_descent_choice_independence(&store, &invols, &table));
            checks.push(check_module_oracle(&store, &invols, &table, config.ly.min(4)));
            if store.presentation().is_crystallographic() {
                checks.push(check_nonnegative_evaluations(&store, &table, &[2, 3, 5]));
            }
        }

        if wants(args, CheckSet::Hecke) {
            let invols = TwistedInvolutionSet::enumerate(&store);
            checks.push(check_conjugation_closed_forms(&store, &invols));
            checks.push(check_generator_support_containment(&store, &invols));
            checks.push(check_dihedral_support_containment(&store, &invols));
            checks.push(check_dihedral_identity_coefficient(&store));
            checks.push(check_paired_product_identity_coefficient(&store, ball / 2));
            checks.push(check_module_support_containment(&store, ball / 2));
            checks.push(check_sum_stability(&store, &invols));
            // Products are quadratic in the ball size; cap the total length.
            checks.push(check_structure_constant_positivity(&store, ball.min(8)));
        }

        if wants(args, CheckSet::Phi) {
            let invols = TwistedInvolutionSet::enumerate(&store);
            let phi = PhiTable::build(&store, &invols);
            let independent = phi.check_descent_independence(&store, &invols);
            checks.push(if independent {
                CheckReport::passed("phi descent independence", invols.len())
            } else {
                CheckReport::failed(
                    "phi descent independence",
                    invols.len(),
                    "descent choices disagree".into(),
                )
            });
            let bad = invols
                .iter()
                .find(|&z| {
                    let l = store.length(z);
                    let f = phi.phi(z);
                    f > l || f % 2 != l % 2
                })
                .map(|z| format!("bad value at {:?}", store.word(z)));
            checks.push(match bad {
                None => CheckReport::passed("phi parity and bounds", invols.len()),
                Some(detail) => {
                    CheckReport::failed("phi parity and bounds", invols.len(), detail)
                }
            });
        }

        pass &= checks.iter().all(|c| c.pass);
        all_pass &= pass;

        let mut report = VerifyReport::from_identity_check(
            &identity,
            spec.preset.clone(),
            spec.star.clone(),
            ball,
        );
        report.checks = Some(checks);
        report.timestamp = timestamp(args);

        match args.format {
            Format::Json => {
                let body = serde_json::to_string_pretty(&report)?;
                emit(&args.out, &spec.slug("verify", "json"), &body)?;
            }
            Format::Csv => {
                let mut body = series_csv(&[
                    ("p", &identity.p),
                    ("p_star", &identity.p_star),
                    ("r", &identity.r),
                    ("residual", &identity.residual),
                ]);
                body.push_str(&format!("pass,{pass}\n"));
                emit(&args.out, &spec.slug("verify", "csv"), &body)?;
            }
        }
    }
    Ok(all_pass)
}

#[derive(Serialize, Deserialize)]
struct TableReport {
    preset: Option<String>,
    star: Option<String>,
    ly: u32,
    ball: u32,
    rows: Vec<TableRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

fn run_xtable(args: &RunArgs) -> Result<bool> {
    let config = resolve(args)?;
    let ball = config.ball;
    for spec in &config.runs {
        let store = build_store(spec, ball, args.limit)?;
        let invols = TwistedInvolutionSet::enumerate(&store);
        let table = XTable::compute(&store, &invols, config.ly)?;
        let mut rows = Vec::new();
        for (y, row) in table.rows() {
            for (z, p) in row {
                rows.push(TableRow {
                    z_word: store.word(*z).to_vec(),
                    y_word: store.word(y).to_vec(),
                    coeffs: p.coeffs().iter().map(|c| c.to_string()).collect(),
                });
            }
        }
        match args.format {
            Format::Json => {
                let report = TableReport {
                    preset: spec.preset.clone(),
                    star: spec.star.clone(),
                    ly: config.ly,
                    ball,
                    rows,
                    timestamp: timestamp(args),
                };
                let body = serde_json::to_string_pretty(&report)?;
                emit(&args.out, &spec.slug("xtable", "json"), &body)?;
            }
            Format::Csv => {
                emit(&args.out, &spec.slug("xtable", "csv"), &table_csv(&rows))?;
            }
        }
    }
    Ok(true)
}

#[derive(Serialize, Deserialize)]
struct SeriesReport {
    preset: Option<String>,
    star: Option<String>,
    order: usize,
    ball: u32,
    p: Vec<String>,
    p_star: Vec<String>,
    r: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

fn run_series(args: &RunArgs) -> Result<bool> {
    let config = resolve(args)?;
    let ball = config.ball;
    for spec in &config.runs {
        let store = build_store(spec, ball, args.limit)?;
        let invols = TwistedInvolutionSet::enumerate(&store);
        let phi = PhiTable::build(&store, &invols);
        let p = poincare(&store, config.order)?;
        let p_star = poincare_star(&store, config.order)?;
        let r = twisted_series(&store, &invols, &phi, config.order)?;
        match args.format {
            Format::Json => {
                let report = SeriesReport {
                    preset: spec.preset.clone(),
                    star: spec.star.clone(),
                    order: config.order,
                    ball,
                    p: series_to_strings(&p),
                    p_star: series_to_strings(&p_star),
                    r: series_to_strings(&r),
                    timestamp: timestamp(args),
                };
                let body = serde_json::to_string_pretty(&report)?;
                emit(&args.out, &spec.slug("series", "json"), &body)?;
            }
            Format::Csv => {
                let body = series_csv(&[("p", &p), ("p_star", &p_star), ("r", &r)]);
                emit(&args.out, &spec.slug("series", "csv"), &body)?;
            }
        }
    }
    Ok(true)
}

#[derive(Serialize, Deserialize)]
struct InvolsReport {
    preset: Option<String>,
    star: Option<String>,
    ball: u32,
    rows: Vec<InvolutionRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

fn run_invols(args: &RunArgs) -> Result<bool> {
    let config = resolve(args)?;
    let ball = config.ball;
    for spec in &config.runs {
        let store = build_store(spec, ball, args.limit)?;
        let invols = TwistedInvolutionSet::enumerate(&store);
        let phi = PhiTable::build(&store, &invols);
        let rows: Vec<InvolutionRow> = invols
            .iter()
            .map(|z| InvolutionRow {
                word: store.word(z).to_vec(),
                length: store.length(z),
                phi: phi.phi(z),
            })
            .collect();
        match args.format {
            Format::Json => {
                let report = InvolsReport {
                    preset: spec.preset.clone(),
                    star: spec.star.clone(),
                    ball,
                    rows,
                    timestamp: timestamp(args),
                };
                let body = serde_json::to_string_pretty(&report)?;
                emit(&args.out, &spec.slug("invols", "json"), &body)?;
            }
            Format::Csv => {
                emit(&args.out, &spec.slug("invols", "csv"), &involutions_csv(&rows))?;
            }
        }
    }
    Ok(true)
}

fn run_presets() -> Result<bool> {
    for name in PRESET_NAMES {
        let p = preset(name)?;
        let stars = p.star_names().join(", ");
        let kind = if p.is_crystallographic() {
            "crystallographic"
        } else {
            "non-crystallographic"
        };
        println!("{name:8} rank {}  stars: {stars}  ({kind})", p.rank());
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify(args) => run_verify(args),
        Command::Xtable(args) => run_xtable(args),
        Command::Series(args) => run_series(args),
        Command::Invols(args) => run_invols(args),
        Command::Presets => run_presets(),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
