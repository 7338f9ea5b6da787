use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pctoep_core::hypothesis::{sweep_table_experimental, MonotonicityReport};
use pctoep_core::io::{read_matrix_file, write_matrix, MatrixFormat};
use pctoep_core::spectral::closed_form_spectrum;
use pctoep_core::verify::{run_suite, VerifyGrid, VerifyReport};
use pctoep_core::{
    analyze, circulant_spectrum, gerschgorin_discs, monotonicity_probe, perron_power, sweep_table,
    Complex64, ConsistencyReport, Error, FamilyKind, FamilySpec, HypothesisRow, PcMatrix,
    PowerOptions,
};
use serde::Serialize;

mod grid;
mod svg;

#[derive(Parser)]
#[command(name = "pctoep", version, about = "Special-case pairwise-comparison Toeplitz matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family member as CSV or JSON.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Perron root, CI, Kii and bounds for a matrix file or family member.
    Analyze {
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Even-order layer-cake table: radii, harmonic and geometric bounds.
    Sweep {
        #[arg(long, default_value = "2:9:1", value_parser = grid::reals)]
        x: grid::Reals,
        #[arg(long, default_value = "4,6,12", value_parser = grid::orders)]
        n: grid::Orders,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit 1 when a conjectured bound is violated.
        #[arg(long)]
        strict: bool,
        /// Also accept 0 < x < 1. Rows are reported, never judged.
        #[arg(long)]
        experimental: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Closed forms against power iteration over a grid of every family.
    Verify {
        #[arg(long, value_parser = grid::reals)]
        x: Option<grid::Reals>,
        #[arg(long, value_parser = grid::orders)]
        n: Option<grid::Orders>,
        /// `json` writes every individual check.
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// SVG of the Gerschgorin discs with eigenvalue markers.
    Discs {
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

#[derive(Args, Default)]
struct FamilyArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: Option<FamilyKind>,
    #[arg(long)]
    x: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// One-based `i,j` of the deviating entry.
    #[arg(long, value_parser = grid::parse_pair)]
    placement: Option<(usize, usize)>,
    /// One-based diagonal offsets carrying `x`.
    #[arg(long, value_parser = grid::list)]
    offsets: Option<grid::Orders>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, default_value_t = pctoep_core::spectral::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = pctoep_core::spectral::DEFAULT_MAX_ITER)]
    max_iter: usize,
}

impl OracleArgs {
    fn options(&self) -> PowerOptions {
        PowerOptions { tol: self.tol, max_iter: self.max_iter }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_kind(s: &str) -> Result<FamilyKind, String> {
    s.parse::<FamilyKind>().map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Core(Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Core(e.into())
    }
}

#[derive(Serialize)]
struct Diagnostic<'a> {
    error: &'a str,
    message: String,
}

impl FamilyArgs {
    fn spec(&self) -> Result<Option<FamilySpec>, Failure> {
        let Some(kind) = self.kind else {
            if self.x.is_some() || self.n.is_some() || self.k.is_some() {
                return Err(Failure::Usage("--x/--n/--k need --kind".into()));
            }
            return Ok(None);
        };
        let n = self.n.ok_or_else(|| Failure::Usage("--n is required with --kind".into()))?;
        let spec = FamilySpec {
            kind,
            x: self.x.unwrap_or(1.0),
            n,
            k: self.k,
            placement: self.placement,
            offsets: self.offsets.clone().map(|o| o.0),
        };
        spec.validate()?;
        Ok(Some(spec))
    }

    fn require_spec(&self) -> Result<FamilySpec, Failure> {
        self.spec()?.ok_or_else(|| Failure::Usage("--kind and --n are required".into()))
    }
}

/// Matrix from `--input` or the family flags; the spec is kept when given.
fn load(input: Option<&Path>, family: &FamilyArgs) -> Result<(PcMatrix, Option<FamilySpec>), Failure> {
    let spec = family.spec()?;
    match (input, spec) {
        (Some(path), spec) => {
            let m = read_matrix_file(path)?;
            if let Some(s) = &spec {
                if s.n != m.order() {
                    return Err(Failure::Usage(format!(
                        "--n {} does not match the {}x{} input",
                        s.n,
                        m.order(),
                        m.order()
                    )));
                }
            }
            Ok((m, spec))
        }
        (None, Some(spec)) => Ok((spec.generate()?, Some(spec))),
        (None, None) => Err(Failure::Usage("give --input or --kind with --n".into())),
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, bytes)?,
        None => io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn csv_line(fields: &[String]) -> String {
    let mut line = fields.join(",");
    line.push('\n');
    line
}

fn cmd_gen(family: &FamilyArgs, format: Option<Format>, out: Option<&Path>) -> Result<(), Failure> {
    let spec = family.require_spec()?;
    let m = spec.generate()?;
    let format = match (format, out) {
        (Some(Format::Json), _) => MatrixFormat::Json,
        (Some(Format::Csv), _) => MatrixFormat::Csv,
        (None, Some(path)) => MatrixFormat::from_path(path),
        (None, None) => MatrixFormat::Csv,
    };
    let mut buf = Vec::new();
    write_matrix(&m, format, &mut buf)?;
    emit(out, &buf)
}

fn render_report(report: &ConsistencyReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serialises");
            s.push('\n');
            s
        }
        Format::Csv => {
            let header: Vec<String> = ConsistencyReport::CSV_HEADER.iter().map(|h| h.to_string()).collect();
            csv_line(&header) + &csv_line(&report.csv_record())
        }
    }
}

fn cmd_analyze(
    input: Option<&Path>,
    family: &FamilyArgs,
    format: Format,
    out: Option<&Path>,
    opts: PowerOptions,
) -> Result<(), Failure> {
    let (m, spec) = load(input, family)?;
    let report = analyze(&m, spec.as_ref(), opts)?;
    emit(out, render_report(&report, format).as_bytes())
}

fn render_rows(rows: &[HypothesisRow], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rows).expect("rows serialise");
            s.push('\n');
            s
        }
        Format::Csv => {
            let header: Vec<String> = HypothesisRow::CSV_HEADER.iter().map(|h| h.to_string()).collect();
            let mut s = csv_line(&header);
            for row in rows {
                s.push_str(&csv_line(&row.csv_record()));
            }
            s
        }
    }
}

struct SweepArgs<'a> {
    xs: &'a [f64],
    ns: &'a [usize],
    format: Format,
    out: Option<&'a Path>,
    strict: bool,
    experimental: bool,
    opts: PowerOptions,
}

fn cmd_sweep(a: SweepArgs<'_>) -> Result<(), Failure> {
    let rows = if a.experimental {
        sweep_table_experimental(a.xs, a.ns, a.opts)?
    } else {
        sweep_table(a.xs, a.ns, a.opts)?
    };
    emit(a.out, render_rows(&rows, a.format).as_bytes())?;

    let judged: Vec<&HypothesisRow> = rows.iter().filter(|r| r.x > 1.0).collect();
    let conj_ok = judged.iter().filter(|r| r.holds).count();
    let chain_ok = judged.iter().filter(|r| r.proven_chain_holds).count();
    let mut err = io::stderr().lock();
    writeln!(err, "rows: {}", rows.len())?;
    writeln!(err, "proven     1+r <= lambda < 1+m    : {chain_ok}/{} hold", judged.len())?;
    writeln!(err, "conjecture 1+H <= lambda <= 1+G   : {conj_ok}/{} hold", judged.len())?;
    let sorted = a.xs.windows(2).all(|w| w[0] < w[1]) && a.ns.windows(2).all(|w| w[0] < w[1]);
    if !a.experimental && sorted {
        let mono: MonotonicityReport = monotonicity_probe(a.xs, a.ns, a.opts)?;
        writeln!(
            err,
            "conjecture monotone in x and n  : {} violations in {} comparisons",
            mono.violations.len(),
            mono.comparisons
        )?;
        for v in &mono.violations {
            writeln!(err, "  {}", serde_json::to_string(v).expect("violation serialises"))?;
        }
        if a.strict && !mono.is_clean() {
            return Err(Failure::Check("monotonicity violated".into()));
        }
    }
    if chain_ok != judged.len() {
        return Err(Failure::Check("proven chain violated".into()));
    }
    if a.strict && conj_ok != judged.len() {
        return Err(Failure::Check("conjectured bound violated".into()));
    }
    Ok(())
}

fn render_verify(report: &VerifyReport) -> String {
    let mut s = String::new();
    for (name, t) in report.tally() {
        let label = if t.proven { "proven" } else { "conjecture" };
        let worst = report.worst(name).unwrap_or(0.0);
        s.push_str(&format!(
            "{label:<10} {name:<26} {:>5}/{:<5} max value {worst:e}\n",
            t.passed, t.total
        ));
    }
    for c in report.proven_failures().chain(report.conjecture_failures()) {
        s.push_str(&format!(
            "FAILED {} {}: value {:e} threshold {:e}\n",
            c.check,
            serde_json::to_string(&c.spec).expect("spec serialises"),
            c.value,
            c.threshold
        ));
    }
    let verdict = if report.all_proven_pass() { "all proven checks pass" } else { "proven checks FAILED" };
    s.push_str(verdict);
    s.push('\n');
    s
}

fn cmd_verify(grid: VerifyGrid, format: Option<Format>, out: Option<&Path>, opts: PowerOptions) -> Result<(), Failure> {
    let report = run_suite(&grid, opts)?;
    let text = match format {
        Some(Format::Json) => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serialises");
            s.push('\n');
            s
        }
        _ => render_verify(&report),
    };
    emit(out, text.as_bytes())?;
    if out.is_some() && format != Some(Format::Json) {
        io::stderr().lock().write_all(text.as_bytes())?;
    }
    if report.all_proven_pass() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} proven checks failed", report.proven_failures().count())))
    }
}

fn cmd_discs(input: Option<&Path>, family: &FamilyArgs, out: Option<&Path>, opts: PowerOptions) -> Result<(), Failure> {
    let (m, spec) = load(input, family)?;
    let discs = gerschgorin_discs(&m);
    let closed = match &spec {
        Some(s) => closed_form_spectrum(s)?,
        None => m.circulant_row().map(|row| circulant_spectrum(&row)),
    };
    let eigenvalues = match closed {
        Some(e) => e,
        None => vec![Complex64::new(perron_power(&m, opts)?.lambda_max, 0.0)],
    };
    let title = match &spec {
        Some(s) if s.kind == FamilyKind::Cc => format!("CC(n={})", s.n),
        Some(s) => format!("{}(x={}, n={})", s.kind.name().to_uppercase(), s.x, s.n),
        None => format!("input (n={})", m.order()),
    };
    emit(out, svg::render(&title, &discs, &eigenvalues).as_bytes())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen { family, format, out } => cmd_gen(&family, format, out.as_deref()),
        Command::Analyze { input, family, format, out, oracle } => {
            cmd_analyze(input.as_deref(), &family, format, out.as_deref(), oracle.options())
        }
        Command::Sweep { x, n, format, out, strict, experimental, oracle } => cmd_sweep(SweepArgs {
            xs: &x.0,
            ns: &n.0,
            format,
            out: out.as_deref(),
            strict,
            experimental,
            opts: oracle.options(),
        }),
        Command::Verify { x, n, format, out, oracle } => {
            let mut grid = VerifyGrid::default();
            if let Some(xs) = x {
                grid.xs = xs.0;
            }
            if let Some(ns) = n {
                grid.ns = ns.0;
            }
            cmd_verify(grid, format, out.as_deref(), oracle.options())
        }
        Command::Discs { input, family, out, oracle } => {
            cmd_discs(input.as_deref(), &family, out.as_deref(), oracle.options())
        }
    }
}

fn diagnose(kind: &str, message: String) {
    let d = Diagnostic { error: kind, message };
    eprintln!("{}", serde_json::to_string(&d).expect("diagnostic serialises"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            diagnose("Usage", msg);
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            diagnose(e.kind(), e.to_string());
            ExitCode::from(if e.is_numerical() { 1 } else { 2 })
        }
        Err(Failure::Check(msg)) => {
            diagnose("CheckFailed", msg);
            ExitCode::from(1)
        }
    }
}
