//! `zsr`: decompose, verify, compare and simulate replicator systems from JSON files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use zsr_core::decomposition::{adjacent_pair_formula, kernel_dimension, spanning_set};
use zsr_core::format::{matrix_strings, vector_strings};
use zsr_core::{
    affine_skew_equivalent, constant_representability, decompose, nullspace_equivalent, Error, FeasibilityVerdict,
    FieldForm, IntegrateOptions, ReplicatorSystem, ReportDocument, SystemFile, SystemSpec,
};

#[derive(Debug, Parser)]
#[command(name = "zsr", version, about = "Zero-sum payoff representations of polynomial replicator dynamics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a skew payoff A(x) with g = A(x) x on the hyperplane, plus its certificate.
    Decompose {
        system: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-check skewness, the degree bound and the divisibility certificate of a report.
    Verify { report: PathBuf },
    /// Payoff equivalences.
    Equiv {
        #[command(subcommand)]
        kind: EquivKind,
    },
    /// Decide whether a field comes from a constant payoff on the hyperplane.
    Representable { system: PathBuf },
    /// Spanning set and exact dimension of degree-m fields with x^T g = 0.
    Basis { n: usize, m: usize },
    /// Integrate with fixed-step RK4 and write a CSV trajectory.
    Simulate {
        system: PathBuf,
        /// Initial state, comma separated; entries may be fractions like 1/3.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        x0: Vec<String>,
        #[arg(long = "T")]
        horizon: f64,
        #[arg(long)]
        dt: f64,
        #[arg(long)]
        no_renormalize: bool,
        /// Integrate the payoff's own field instead of its zero-sum form.
        #[arg(long)]
        replicator_form: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Phase portrait of a 3-strategy system as SVG.
    Portrait {
        system: PathBuf,
        #[arg(long, default_value_t = 10)]
        density: usize,
        #[arg(long = "T")]
        horizon: f64,
        #[arg(long)]
        dt: f64,
        #[arg(short, long)]
        output: PathBuf,
        /// Also write every trajectory to one CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Keep every k-th sample in the CSV bundle.
        #[arg(long, default_value_t = 10)]
        stride: usize,
    },
}

#[derive(Debug, Subcommand)]
enum EquivKind {
    /// Skew payoff H'(x) with the same replicator field as a constant H.
    Skew {
        payoff: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Whether two payoffs differ by 1 v^T (identical replicator fields).
    Null { first: PathBuf, second: PathBuf },
}

enum Failure {
    Usage(String),
    Input(String),
    Negative(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Negative(_) => 3,
            Failure::Internal(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Internal(e.to_string()),
            Error::HypothesisViolated { .. } => Failure::Negative(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CliResult<T = u8> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = configure_threads().and_then(|()| run(cli.command));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("usage error: {m}"),
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Negative(m) => eprintln!("{m}"),
                Failure::Internal(m) => eprintln!("internal error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("ZSR_THREADS") else {
        return Ok(());
    };
    let threads: usize =
        raw.trim().parse().map_err(|_| Failure::Usage(format!("ZSR_THREADS must be a count, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| Failure::Internal(e.to_string()))
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Decompose { system, output } => {
            let g = load_system(&system)?.field()?;
            let report = decompose(&g)?;
            emit(output.as_deref(), &ReportDocument::new(&report).to_json())?;
            Ok(0)
        }
        Command::Verify { report } => {
            let doc = ReportDocument::from_json(&read(&report)?)?;
            let check = doc.recheck()?;
            let mark = |ok: bool| if ok { "ok" } else { "FAILED" };
            println!("skew-symmetric: {}", mark(check.skew));
            println!("degree bound: {}", mark(check.degree_bound));
            println!("certificate: {}", mark(check.certificate));
            Ok(if check.passed() { 0 } else { 3 })
        }
        Command::Equiv { kind: EquivKind::Skew { payoff, output } } => {
            let file = load_system(&payoff)?;
            let h = file.payoff()?;
            let skew = affine_skew_equivalent(&h)?;
            let out = SystemFile {
                name: file.name.as_ref().map(|n| format!("{n}-skew")),
                description: Some("skew payoff with the same replicator field on the simplex".into()),
                n: h.dimension(),
                payoff: Some(matrix_strings(skew.matrix())),
                field: None,
            };
            emit(output.as_deref(), &out.to_json())?;
            Ok(0)
        }
        Command::Equiv { kind: EquivKind::Null { first, second } } => {
            let h1 = load_system(&first)?.payoff()?;
            let h2 = load_system(&second)?.payoff()?;
            if nullspace_equivalent(&h1, &h2)? {
                println!("equivalent: rows of H1 - H2 coincide");
                Ok(0)
            } else {
                println!("not equivalent: H1 - H2 is not of the form 1 v^T");
                Ok(3)
            }
        }
        Command::Representable { system } => {
            let g = load_system(&system)?.field()?;
            match constant_representability(&g)? {
                FeasibilityVerdict::Feasible { witness } => {
                    println!("feasible");
                    print!("{}", SystemFile::from_payoff(Some("witness".into()), &witness).to_json());
                    Ok(0)
                }
                FeasibilityVerdict::Infeasible { obstruction } => {
                    println!("infeasible");
                    println!("obstruction: {obstruction}");
                    Ok(3)
                }
            }
        }
        Command::Basis { n, m } => basis(n, m),
        Command::Simulate { system, x0, horizon, dt, no_renormalize, replicator_form, output } => {
            let sys = load_dynamics(&system)?;
            let x0 = x0.iter().map(|s| parse_number(s)).collect::<CliResult<Vec<_>>>()?;
            let opts = IntegrateOptions {
                renormalize: !no_renormalize,
                form: if replicator_form { FieldForm::Replicator } else { FieldForm::ZeroSum },
            };
            let traj = sys.integrate(&x0, horizon, dt, opts)?;
            emit(output.as_deref(), &traj.to_csv())?;
            Ok(0)
        }
        Command::Portrait { system, density, horizon, dt, output, csv, stride } => {
            let sys = load_dynamics(&system)?;
            let portrait = sys.phase_portrait(density, horizon, dt, IntegrateOptions::default())?;
            emit(Some(&output), &portrait.to_svg())?;
            if let Some(path) = csv {
                emit(Some(&path), &portrait.to_csv(stride))?;
            }
            Ok(0)
        }
    }
}

fn basis(n: usize, m: usize) -> CliResult {
    let elements = spanning_set(n, m)?;
    let dim = kernel_dimension(n, m)?;
    let mut out = String::new();
    let _ = writeln!(out, "spanning set for degree-{m} fields in {n} variables with x^T g = 0:");
    for e in &elements {
        let alpha: Vec<String> = e.alpha.exponents().iter().map(u32::to_string).collect();
        let _ = writeln!(
            out,
            "  alpha=({}) i={} j={}: ({})",
            alpha.join(","),
            e.i + 1,
            e.j + 1,
            vector_strings(&e.vector()).join(", ")
        );
    }
    let _ = writeln!(out, "spanning set size: {}", elements.len());
    let _ = writeln!(out, "dimension: {dim}");
    let adjacent = adjacent_pair_formula(n, m);
    if adjacent != dim {
        let _ = writeln!(
            out,
            "note: the adjacent-pair count (n-1)*C(n+m-1,m-1) = {adjacent} disagrees with the exact dimension {dim}"
        );
    }
    print!("{out}");
    Ok(0)
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_system(path: &Path) -> CliResult<SystemFile> {
    SystemFile::from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_dynamics(path: &Path) -> CliResult<ReplicatorSystem> {
    Ok(match load_system(path)?.spec()? {
        SystemSpec::Payoff(h) => ReplicatorSystem::new(h)?,
        SystemSpec::Field(g) => ReplicatorSystem::from_field(&g)?,
    })
}

fn parse_number(s: &str) -> CliResult<f64> {
    let bad = || Failure::Usage(format!("not a number: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q): (f64, f64) = (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
            if q == 0.0 {
                return Err(bad());
            }
            Ok(p / q)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

fn emit(path: Option<&Path>, content: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
