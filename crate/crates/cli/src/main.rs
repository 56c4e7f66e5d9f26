use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use robust_qfi::combinatorics::ExactRational;
use robust_qfi::dephasing::qfi_lower_bound_iid;
use robust_qfi::error::Error;
use robust_qfi::render::{parse_rational, to_decimal};
use robust_qfi::sweep::{self, OutputFormat, SweepConfig, SweepMode, SweepPoint, SweepRecord};
use robust_qfi::verify::{run_verification, VerifyScope};

#[derive(Parser, Debug)]
#[command(name = "robust-qfi", version, about = "QFI lower bounds for gnu probe states under erasure and dephasing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bound after erasing t qubits of the u = 1 probe.
    Erasure {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u64,
        #[arg(long, value_enum, default_value_t = PointFormat::Text)]
        format: PointFormat,
    },
    /// Bound after the single-error dephasing channel on the u = 2 probe.
    Dephasing {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        n: u64,
        /// Probability of no error, e.g. 0.5 or 1/2.
        #[arg(long, value_parser = rational)]
        lambda: ExactRational,
        #[arg(long, value_enum, default_value_t = PointFormat::Text)]
        format: PointFormat,
    },
    /// Bound after i.i.d. dephasing with t_expected = pN expected errors.
    DephasingIid {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_parser = rational)]
        t_expected: ExactRational,
        #[arg(long, value_enum, default_value_t = PointFormat::Text)]
        format: PointFormat,
    },
    /// Evaluate a grid of points and write CSV or JSON.
    Sweep {
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        /// Defaults to the preset's mode, else inferred from the lists given.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<u64>>,
        /// Erasure counts t, or t_expected values in dephasing-iid mode.
        #[arg(long, value_delimiter = ',', value_parser = rational)]
        t_list: Option<Vec<ExactRational>>,
        #[arg(long, value_delimiter = ',', value_parser = rational)]
        lambda_list: Option<Vec<ExactRational>>,
        #[arg(long)]
        max_qubits: Option<u64>,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FileFormat::Csv)]
        format: FileFormat,
    },
    /// Compare every closed form with the brute-force oracle (N <= 12).
    Verify {
        #[arg(long, value_enum, default_value_t = ScopeArg::All)]
        scope: ScopeArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PointFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FileFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Preset {
    Fig1,
    Fig2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Erasure,
    DephasingSingle,
    DephasingIid,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScopeArg {
    Erasure,
    Dephasing,
    Identities,
    All,
}

fn rational(s: &str) -> Result<ExactRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Failure modes mapped onto exit codes.
enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Erasure { g, n, t, format } => {
            let bound = sweep::evaluate(SweepMode::Erasure, g, n, &ExactRational::from_integer(t.into()))?;
            print_point(SweepMode::Erasure, g, n, ExactRational::from_integer(t.into()), bound, &[], format)
        }
        Command::Dephasing { g, n, lambda, format } => {
            let bound = sweep::evaluate(SweepMode::DephasingSingle, g, n, &lambda)?;
            print_point(SweepMode::DephasingSingle, g, n, lambda, bound, &[], format)
        }
        Command::DephasingIid { g, n, t_expected, format } => {
            let b = qfi_lower_bound_iid(g, n, &t_expected)?;
            let extra = [
                ("approximant", to_decimal(&b.approximant)),
                ("penalty", to_decimal(&b.penalty)),
                ("vacuous", b.is_vacuous().to_string()),
            ];
            if b.is_vacuous() {
                eprintln!("warning: bound is not positive and carries no information");
            }
            print_point(SweepMode::DephasingIid, g, n, t_expected, b.value, &extra, format)
        }
        Command::Sweep {
            preset,
            mode,
            n_list,
            t_list,
            lambda_list,
            max_qubits,
            out,
            format,
        } => {
            let config = sweep_config(preset, mode, n_list, t_list, lambda_list, max_qubits)?;
            run_sweep(&config, out, format)
        }
        Command::Verify { scope } => {
            let scope = match scope {
                ScopeArg::Erasure => VerifyScope::Erasure,
                ScopeArg::Dephasing => VerifyScope::Dephasing,
                ScopeArg::Identities => VerifyScope::Identities,
                ScopeArg::All => VerifyScope::All,
            };
            let report = run_verification(scope);
            for c in &report.checks {
                let tag = if c.passed() { "PASS" } else { "FAIL" };
                println!(
                    "[{tag}] {}: {} instances, max error {:.3e} (tolerance {:.0e})",
                    c.name, c.instances, c.max_error, c.tolerance
                );
                for f in &c.failures {
                    println!("    {f}");
                }
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

fn print_point(
    mode: SweepMode,
    g: u64,
    n: u64,
    noise: ExactRational,
    bound: ExactRational,
    extra: &[(&str, String)],
    format: PointFormat,
) -> Result<(), Failure> {
    let exact = bound.to_string();
    let point = SweepPoint {
        mode,
        g,
        n,
        noise,
        bound: Ok(bound),
    };
    let rec = point.record();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        PointFormat::Text => {
            let mut rows: Vec<(&str, String)> = vec![
                ("mode", rec.mode.clone()),
                ("N", rec.big_n.to_string()),
                ("g", rec.g.to_string()),
                ("n", rec.n.to_string()),
                ("u", rec.u.to_string()),
                ("noise_param", rec.noise_param.clone()),
                ("bound", rec.bound.clone()),
                ("bound_exact", exact),
                ("bound_over_N", rec.bound_over_n.clone()),
                ("bound_over_N2", rec.bound_over_n2.clone()),
                ("exponent", rec.exponent.clone()),
            ];
            rows.extend(extra.iter().cloned());
            for (k, v) in rows {
                writeln!(out, "{k:<14}{v}")?;
            }
        }
        PointFormat::Csv => sweep::write_csv(&[rec], &mut out)?,
        PointFormat::Json => sweep::write_json(&[rec], &mut out)?,
    }
    Ok(())
}

fn sweep_config(
    preset: Option<Preset>,
    mode: Option<ModeArg>,
    n_list: Option<Vec<u64>>,
    t_list: Option<Vec<ExactRational>>,
    lambda_list: Option<Vec<ExactRational>>,
    max_qubits: Option<u64>,
) -> Result<SweepConfig, Failure> {
    let base = preset.map(|p| match p {
        Preset::Fig1 => SweepConfig::fig1(),
        Preset::Fig2 => SweepConfig::fig2(),
    });
    let mode = match (mode, &base) {
        (Some(ModeArg::Erasure), _) => SweepMode::Erasure,
        (Some(ModeArg::DephasingSingle), _) => SweepMode::DephasingSingle,
        (Some(ModeArg::DephasingIid), _) => SweepMode::DephasingIid,
        (None, Some(b)) => b.mode,
        (None, None) => match (&t_list, &lambda_list) {
            (_, Some(_)) => SweepMode::DephasingSingle,
            (Some(_), None) => SweepMode::Erasure,
            (None, None) => return Err(Failure::Usage("sweep needs --preset, --mode or a parameter list".into())),
        },
    };
    let lists = match mode {
        SweepMode::DephasingSingle => lambda_list,
        _ => t_list,
    };
    let noise_values = match (lists, &base) {
        (Some(v), _) => v,
        (None, Some(b)) if b.mode == mode => b.noise_values.clone(),
        _ => {
            let flag = if mode == SweepMode::DephasingSingle { "--lambda-list" } else { "--t-list" };
            return Err(Failure::Usage(format!("{} sweep needs {flag}", mode.as_str())));
        }
    };
    let n_values = n_list
        .or_else(|| base.as_ref().map(|b| b.n_values.clone()))
        .ok_or_else(|| Failure::Usage("sweep needs --n-list".into()))?;
    let max_qubits = max_qubits
        .or_else(|| base.as_ref().map(|b| b.max_qubits))
        .ok_or_else(|| Failure::Usage("sweep needs --max-qubits".into()))?;
    let config = SweepConfig {
        mode,
        n_values,
        noise_values,
        max_qubits,
    };
    config.validate()?;
    Ok(config)
}

fn run_sweep(config: &SweepConfig, out: Option<PathBuf>, format: FileFormat) -> Result<(), Failure> {
    let points = sweep::run_sweep(config)?;
    let records: Vec<SweepRecord> = points.iter().map(SweepPoint::record).collect();
    let failed = points.iter().filter(|p| p.bound.is_err()).count();
    let format = match format {
        FileFormat::Csv => OutputFormat::Csv,
        FileFormat::Json => OutputFormat::Json,
    };
    match &out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            sweep::write_records(&records, format, &mut w)?;
            w.flush()?;
            eprintln!("wrote {} rows to {}", records.len(), path.display());
        }
        None => sweep::write_records(&records, format, io::stdout().lock())?,
    }
    if failed > 0 {
        eprintln!("{failed} of {} points failed; see the error column", records.len());
    }
    if !records.is_empty() && failed == records.len() {
        return Err(Failure::Usage("every sweep point failed".into()));
    }
    Ok(())
}
