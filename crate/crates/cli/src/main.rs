//! `zetalab`: one subcommand per experiment, tables on stdout or `--out`.

use std::fs::{self, File, TryLockError};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use zetalab::fermat::{convergence_rows, fermat_scan, parse_positive_real, LimitKind};
use zetalab::gram::gram_count;
use zetalab::hardy_littlewood::comparator;
use zetalab::ladder::{iterate, Backend, Direction, LadderContext};
use zetalab::ortho::{cauchy_table, power_law_coeffs, sample_points, GeneratedSystem, GenerationSpec, Normalization};
use zetalab::report::{self, ReportOptions, Suite};
use zetalab::table::{Cell, Format, Table};
use zetalab::titchmarsh::{asymptotic_report, SumKind};
use zetalab::zeta_core::{riemann_siegel_z, theta};
use zetalab::{Lab, LabConfig, LabError, Strategy, ZetaEvalConfig};

const EXIT_FAILURE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_CONVERGENCE: u8 = 3;
const EXIT_USAGE: u8 = 64;

const ORTHO_QUAD_ORDER: usize = 512;

#[derive(Debug, Parser)]
#[command(name = "zetalab", version, about = "Riemann-Siegel Z, Gram points, Titchmarsh sums and Jacob's ladders")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Persistent cache for Gram points and Z^2 checkpoints; in memory if unset.
    #[arg(long, global = true, env = "ZETALAB_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Write the table here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Riemann-Siegel correction terms.
    #[arg(long, global = true, default_value_t = ZetaEvalConfig::default().correction_order)]
    correction_order: usize,
    /// Gauss-Legendre nodes per Gram gap [default: 8]; for ortho-gram, the
    /// order of the rule on [-1, 1] instead [default: 512].
    #[arg(long, global = true)]
    quad_order: Option<usize>,
    /// Target absolute accuracy of Z.
    #[arg(long, global = true, default_value_t = ZetaEvalConfig::default().target_abs_tol)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Smooth)]
    backend: BackendArg,
    /// Integration constant of the ladder main term.
    #[arg(long, global = true, default_value_t = 0.0, allow_negative_numbers = true)]
    c0: f64,
    #[arg(long, global = true, value_enum, default_value_t = StrategyArg::Parallel)]
    strategy: StrategyArg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gram points t_nu <= X with Z(t_nu).
    Gram {
        #[arg(long = "x")]
        x: f64,
    },
    /// Z(t) at each height.
    Z {
        #[arg(long = "t", value_delimiter = ',', required = true, allow_negative_numbers = true)]
        t: Vec<f64>,
    },
    /// Riemann-Siegel theta at each height.
    Theta {
        #[arg(long = "t", value_delimiter = ',', required = true, allow_negative_numbers = true)]
        t: Vec<f64>,
    },
    /// Sum of Z(t_nu)^2 over Gram points against its main term.
    T1 {
        #[arg(long = "x", value_delimiter = ',', default_value = "1e3,1e4,1e5")]
        x: Vec<f64>,
    },
    /// Sum of Z(t_nu) Z(t_nu+1) against its main term.
    T2 {
        #[arg(long = "x", value_delimiter = ',', default_value = "1e3,1e4,1e5")]
        x: Vec<f64>,
    },
    /// Integral of |zeta|^2 over [0, T] against T ln(T/2pi) + (2c-1)T.
    Hl {
        #[arg(long = "T", value_delimiter = ',', default_value = "1e3,1e4,1e5")]
        t: Vec<f64>,
    },
    /// Ladder chain T, phi1^(+-1)(T), ... as "r,T_r".
    Ladder {
        #[arg(long = "T")]
        t: f64,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, value_enum, default_value_t = DirectionArg::Reverse)]
        direction: DirectionArg,
    },
    /// Increment ratio against its limit over a range of tau.
    Limit {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Positive rational "p/q" or decimal.
        #[arg(long = "x")]
        x: String,
        #[arg(long, value_delimiter = ',', default_value = "1e3,1e4,1e5")]
        tau: Vec<f64>,
    },
    /// Exhaustive search for (x^n + y^n)/z^n = 1.
    FermatScan {
        #[arg(long, default_value_t = 20)]
        max_xyz: u32,
        #[arg(long, default_value_t = 7)]
        max_n: u32,
    },
    /// Gram matrix of the ladder-generated Legendre system.
    OrthoGram {
        #[arg(long = "T", default_value_t = 1e4)]
        t: f64,
        /// Reverse-iteration depth of each generation, innermost first.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        p: Vec<usize>,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long, value_enum, default_value_t = NormalizationArg::Empirical)]
        normalization: NormalizationArg,
    },
    /// |S_2M - S_M| for a_n = (n+1)^-decay at sample points, M = 1, 2, 4, ... < M_max.
    Mr {
        #[arg(long, default_value_t = 1.1)]
        decay: f64,
        #[arg(long = "M", default_value_t = 64)]
        m: usize,
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[arg(long = "T", default_value_t = 1e4)]
        t: f64,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        p: Vec<usize>,
        #[arg(long, value_enum, default_value_t = NormalizationArg::Empirical)]
        normalization: NormalizationArg,
    },
    /// Bundled evidence tables with pass flags.
    Report {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, value_delimiter = ',', default_value = "1e3,1e4,1e5")]
        heights: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BackendArg {
    Smooth,
    Cumulative,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Sequential,
    Parallel,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DirectionArg {
    Forward,
    Reverse,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Zeta,
    T1,
    T2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NormalizationArg {
    Raw,
    Nominal,
    Empirical,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: LabError| e.to_string())
}

impl RunArgs {
    fn format(&self) -> Format {
        match self.format {
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }

    fn ladder(&self) -> LadderContext {
        LadderContext {
            c0: self.c0,
            backend: match self.backend {
                BackendArg::Smooth => Backend::Smooth,
                BackendArg::Cumulative => Backend::Cumulative,
            },
            ..LadderContext::default()
        }
    }

    fn lab_config(&self, command: &Command) -> LabConfig {
        let quad_order = match command {
            Command::OrthoGram { .. } => None,
            _ => self.quad_order,
        };
        LabConfig {
            zeta: ZetaEvalConfig {
                correction_order: self.correction_order,
                target_abs_tol: self.tol,
                ..ZetaEvalConfig::default()
            },
            quad_order: quad_order.unwrap_or(LabConfig::default().quad_order),
            strategy: match self.strategy {
                StrategyArg::Sequential => Strategy::Sequential,
                StrategyArg::Parallel => Strategy::Parallel,
            },
            cache_dir: self.cache_dir.clone(),
        }
    }
}

impl From<NormalizationArg> for Normalization {
    fn from(n: NormalizationArg) -> Self {
        match n {
            NormalizationArg::Raw => Normalization::Raw,
            NormalizationArg::Nominal => Normalization::Nominal,
            NormalizationArg::Empirical => Normalization::Empirical,
        }
    }
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Forward => Direction::Forward,
            DirectionArg::Reverse => Direction::Reverse,
        }
    }
}

impl From<KindArg> for LimitKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Zeta => LimitKind::Zeta,
            KindArg::T1 => LimitKind::T1,
            KindArg::T2 => LimitKind::T2,
        }
    }
}

/// Exclusive advisory lock on the cache directory, held for the whole run.
fn acquire_lease(dir: &Path) -> Result<File, LabError> {
    fs::create_dir_all(dir)?;
    let file = File::options().create(true).truncate(false).write(true).open(dir.join(".lock"))?;
    match file.try_lock() {
        Ok(()) => Ok(file),
        Err(TryLockError::WouldBlock) => Err(io::Error::new(
            io::ErrorKind::WouldBlock,
            format!("cache directory {} is in use by another process", dir.display()),
        )
        .into()),
        Err(TryLockError::Error(e)) => Err(e.into()),
    }
}

/// Output of one subcommand: a table, or a multi-section report.
enum Output {
    Table(Table),
    Report(report::Report),
}

fn execute(cli: &Cli) -> Result<Output, LabError> {
    let run = &cli.run;
    let ctx = run.ladder();
    ctx.validate()?;
    let _lease = run.cache_dir.as_deref().map(acquire_lease).transpose()?;
    let lab = Lab::new(run.lab_config(&cli.command))?;
    let zeta = *lab.zeta_config();

    let table = match &cli.command {
        Command::Gram { x } => {
            let n = gram_count(&lab, *x)? as usize + 1;
            let mut table = Table::new(&["nu", "t", "z"]);
            lab.with_gram(n, |records| {
                for r in &records[..n] {
                    table.push(vec![r.nu.into(), r.t.into(), r.z.into()]);
                }
            })?;
            table
        }
        Command::Z { t } => {
            let mut table = Table::new(&["t", "Z"]);
            for &t in t {
                table.push(vec![t.into(), riemann_siegel_z(t, &zeta)?.into()]);
            }
            table
        }
        Command::Theta { t } => {
            let mut table = Table::new(&["t", "theta"]);
            for &t in t {
                table.push(vec![t.into(), theta(t, &zeta)?.into()]);
            }
            table
        }
        Command::T1 { x } => titchmarsh_table(&lab, x, SumKind::T1)?,
        Command::T2 { x } => titchmarsh_table(&lab, x, SumKind::T2)?,
        Command::Hl { t } => {
            let rows = t.iter().map(|&t| comparator(&lab, t)).collect::<Result<Vec<_>, _>>()?;
            Table::from_rows(&rows)
        }
        Command::Ladder { t, r, direction } => {
            let chain = iterate(&lab, *t, *r, (*direction).into(), &ctx)?;
            if chain.truncated {
                eprintln!("warning: chain stopped early after {} steps", chain.points.len() - 1);
            }
            Table::from_rows(&chain.rows())
        }
        Command::Limit { kind, x, tau } => {
            let x = parse_positive_real(x)?;
            Table::from_rows(&convergence_rows(&lab, (*kind).into(), x, tau, &ctx)?)
        }
        Command::FermatScan { max_xyz, max_n } => {
            let scan = fermat_scan(*max_xyz, *max_n)?;
            let mut table = Table::new(&["max_xyz", "max_n", "checked", "unit_values"]);
            table.push(vec![
                Cell::from(u64::from(scan.max_xyz)),
                u64::from(scan.max_n).into(),
                scan.checked.into(),
                scan.unit_values.len().into(),
            ]);
            table
        }
        Command::OrthoGram { t, p, nmax, normalization } => {
            let sys = GeneratedSystem::new(&lab, GenerationSpec::new(p.clone(), *t, *nmax), &ctx)?;
            let g = sys.gram_matrix(run.quad_order.unwrap_or(ORTHO_QUAD_ORDER), (*normalization).into())?;
            if let Some(w) = &g.warning {
                eprintln!("warning: {w}");
            }
            Table::from_rows(&g.rows())
        }
        Command::Mr { decay, m, points, t, p, normalization } => {
            let ms: Vec<usize> = std::iter::successors(Some(1usize), |k| Some(k * 2))
                .take_while(|k| 2 * k <= *m)
                .collect();
            let sys = GeneratedSystem::new(&lab, GenerationSpec::new(p.clone(), *t, *m), &ctx)?;
            let coeffs = power_law_coeffs(*decay, m + 1);
            let rows = cauchy_table(&sys, &coeffs, &sample_points(*points), &ms, (*normalization).into())?;
            Table::from_rows(&rows)
        }
        Command::Report { suite, heights } => {
            let opts = ReportOptions {
                heights: heights.clone(),
                ladder: ctx,
            };
            return Ok(Output::Report(report::run(&lab, *suite, &opts)?));
        }
    };
    Ok(Output::Table(table))
}

fn titchmarsh_table(lab: &Lab, xs: &[f64], kind: SumKind) -> Result<Table, LabError> {
    let rows: Vec<_> = asymptotic_report(lab, xs)?.into_iter().filter(|r| r.kind == kind).collect();
    Ok(Table::from_rows(&rows))
}

fn emit(output: &Output, format: Format, out: Option<&Path>) -> io::Result<()> {
    let mut sink: Box<dyn Write> = match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match output {
        Output::Table(t) => t.write(format, &mut sink)?,
        Output::Report(r) => r.write(format, &mut sink)?,
    }
    sink.flush()
}

fn exit_code(e: &LabError) -> u8 {
    match e {
        LabError::Domain { .. } => EXIT_DOMAIN,
        LabError::Convergence { .. } => EXIT_CONVERGENCE,
        LabError::Config(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let output = match execute(&cli) {
        Ok(output) => output,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    if let Err(e) = emit(&output, cli.run.format(), cli.run.out.as_deref()) {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(EXIT_FAILURE);
    }
    ExitCode::SUCCESS
}
