use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use parity_hanoi::analysis::{self, Ratio};
use parity_hanoi::sequences::{self, Column, CountTable};
use parity_hanoi::solver::{self, DEFAULT_ORACLE_CAP};
use parity_hanoi::stategraph::{self as sg, ExportFormat, GraphMetrics, StateGraph};
use parity_hanoi::verify::{self, Suite};
use parity_hanoi::{Error, Task};

#[derive(Parser)]
#[command(name = "parity-hanoi", version, about = "Parity-restricted four-peg Tower of Hanoi")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Largest n checked against breadth-first search.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Table of h3, h4, a, b, c, d, cross-checked across all routes.
    Seq {
        #[arg(long, default_value_t = 14)]
        max: u32,
        /// Add the √2ⁿ column for growth comparison.
        #[arg(long)]
        compare: bool,
        /// With --compare, emit base-10 logarithms.
        #[arg(long, requires = "compare")]
        log10: bool,
    },
    /// Optimal move sequence for one objective, verified before output.
    Solve {
        #[arg(long)]
        task: Task,
        #[arg(long)]
        n: u32,
        /// `states` prints the state word after every move.
        #[arg(long, value_enum)]
        emit: Option<Emit>,
    },
    /// Build the state graph and export it or its metrics.
    Graph {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        export: Option<Export>,
        /// Print the metrics block (default when nothing else is requested).
        #[arg(long)]
        stats: bool,
        /// Build the unrestricted Hanoi graph on this many pegs instead.
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=4))]
        classical: Option<u8>,
    },
    /// Run self-check suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 10)]
        max: u32,
    },
    /// Parity subsequence ratios with two-step and growth columns.
    Ratios {
        #[arg(long, default_value_t = 30)]
        k: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    States,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Export {
    Dot,
    Edges,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Sequences,
    Solver,
    Graph,
    Analysis,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Sequences => Suite::Sequences,
            SuiteArg::Solver => Suite::Solver,
            SuiteArg::Graph => Suite::Graph,
            SuiteArg::Analysis => Suite::Analysis,
            SuiteArg::All => Suite::All,
        }
    }
}

/// Exit statuses.
const VERIFICATION_FAILED: u8 = 1;
const INCONSISTENT: u8 = 2;
const RESOURCE: u8 = 3;

/// A failure with its exit status.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Failure {
        let code = match error.downcast_ref::<Error>() {
            Some(Error::CapExceeded { .. } | Error::Overflow { .. } | Error::TooManyDiscs { .. }) => RESOURCE,
            _ => INCONSISTENT,
        };
        Failure { code, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        anyhow::Error::from(e).into()
    }
}

fn failure(code: u8, msg: impl Into<String>) -> Failure {
    Failure {
        code,
        error: anyhow!(msg.into()),
    }
}

/// Output produced by a command, with a non-zero status for reports that
/// completed but found failures.
struct Output {
    body: String,
    code: u8,
}

impl From<String> for Output {
    fn from(body: String) -> Output {
        Output { body, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        emit(&cli, &out.body)?;
        Ok(out.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush());
        }
    }
    Ok(())
}

fn unsupported(cli: &Cli, command: &str) -> Failure {
    let name = cli.format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    failure(INCONSISTENT, format!("--format {name} is not available for {command}"))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Seq { max, compare, log10 } => seq(cli, *max, *compare, *log10),
        Command::Solve { task, n, emit } => solve(cli, *task, *n, emit.is_some()),
        Command::Graph {
            n,
            export,
            stats,
            classical,
        } => graph(cli, *n, *export, *stats, *classical),
        Command::Verify { suite, max } => verify(cli, (*suite).into(), *max),
        Command::Ratios { k } => ratios(cli, *k),
    }
}

fn seq(cli: &Cli, max: u32, compare: bool, log10: bool) -> Result<Output, Failure> {
    let table = sequences::coupled_counts(max)?;
    let agreement = sequences::route_agreement(max)?;
    if let Some(d) = agreement.discrepancies.first() {
        return Err(failure(
            INCONSISTENT,
            format!(
                "{} route disagrees for {} ({}) at n = {}: expected {}, found {}",
                d.route, d.sequence, d.parity, d.n, d.expected, d.found
            ),
        ));
    }
    if compare {
        let cmp = analysis::comparison_table(max)?;
        return Ok(match cli.format {
            Format::Csv => cmp.to_csv(log10),
            Format::Json => pretty(&cmp.to_json(log10)),
            Format::Text => align_csv(&cmp.to_csv(log10)),
            Format::Dot => return Err(unsupported(cli, "seq")),
        }
        .into());
    }
    Ok(match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json => pretty(&table.to_json()),
        Format::Text => text_table(&table),
        Format::Dot => return Err(unsupported(cli, "seq")),
    }
    .into())
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn text_table(table: &CountTable) -> String {
    align_csv(&table.to_csv())
}

/// Right-aligns the fields of a CSV text into columns.
fn align_csv(csv: &str) -> String {
    let rows: Vec<Vec<&str>> = csv.lines().map(|l| l.split(',').collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|i| rows.iter().map(|r| r.get(i).map_or(0, |f| f.chars().count())).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(f, &w)| format!("{f:>w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn solve(cli: &Cli, task: Task, n: u32, states: bool) -> Result<Output, Failure> {
    let seq = solver::solve(task, n)?;
    let report = solver::verify_sequence(&seq, cli.oracle_cap);
    if let Some(f) = &report.failure {
        return Err(failure(INCONSISTENT, format!("sequence ({task}, {n}) failed verification: {f}")));
    }
    let visited = if states { Some(seq.states()?) } else { None };
    Ok(match cli.format {
        Format::Text | Format::Csv => {
            let mut out = String::new();
            if cli.format == Format::Csv {
                out.push_str(if states { "disc,from,to,state\n" } else { "disc,from,to\n" });
            } else if let Some(v) = &visited {
                let _ = writeln!(out, "{}", v[0]);
            }
            for (i, m) in seq.moves.iter().enumerate() {
                match (cli.format, &visited) {
                    (Format::Csv, Some(v)) => writeln!(out, "{},{},{},{}", m.disc, m.from, m.to, v[i + 1]),
                    (Format::Csv, None) => writeln!(out, "{},{},{}", m.disc, m.from, m.to),
                    (_, Some(v)) => writeln!(out, "{m}\n{}", v[i + 1]),
                    (_, None) => writeln!(out, "{m}"),
                }
                .expect("writing to a String");
            }
            out
        }
        Format::Json => {
            let moves: Vec<serde_json::Value> = seq
                .moves
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let mut v = json!({ "disc": m.disc, "from": m.from.get(), "to": m.to.get() });
                    if let Some(s) = &visited {
                        v["state"] = s[i + 1].to_string().into();
                    }
                    v
                })
                .collect();
            pretty(&serde_json::Value::Array(moves))
        }
        Format::Dot => return Err(unsupported(cli, "solve")),
    }
    .into())
}

fn graph(cli: &Cli, n: u32, export: Option<Export>, stats: bool, classical: Option<u8>) -> Result<Output, Failure> {
    let export = match (export, cli.format) {
        (Some(e), _) => Some(e),
        (None, Format::Dot) => Some(Export::Dot),
        (None, Format::Csv) => return Err(unsupported(cli, "graph")),
        (None, _) => None,
    };
    let stats = stats || export.is_none();
    let g: StateGraph = match classical {
        Some(pegs) => sg::build_classical_graph(pegs, n)?,
        None => sg::build_parity_graph(n)?,
    };
    let mut body = Vec::new();
    match export {
        Some(Export::Dot) => sg::export(&g, ExportFormat::Dot, &mut body)?,
        Some(Export::Edges) => sg::export(&g, ExportFormat::EdgeList, &mut body)?,
        Some(Export::Json) | None => {}
    }
    if stats || export == Some(Export::Json) {
        let metrics = GraphMetrics::compute(&g)?;
        if cli.format == Format::Text && export.is_none() {
            body.extend(metrics_text(&metrics).into_bytes());
        } else {
            sg::export::write_json(&metrics, &mut body).context("writing metrics")?;
        }
    }
    Ok(String::from_utf8(body).expect("exports are UTF-8").into())
}

fn metrics_text(m: &GraphMetrics) -> String {
    let opt = |v: Option<usize>| v.map_or("unknown".to_string(), |v| v.to_string());
    let mut out = String::new();
    let _ = writeln!(out, "n             {}", m.n);
    let _ = writeln!(out, "vertices      {}", m.vertices);
    let _ = writeln!(out, "edges         {}", m.edges);
    let _ = writeln!(out, "delta         {}", m.delta);
    let _ = writeln!(out, "Delta         {}", m.max_degree);
    let _ = writeln!(out, "avg_degree    {:.6}", m.avg_degree);
    let _ = writeln!(out, "kappa         {}", m.kappa);
    let _ = writeln!(out, "lambda        {}", m.lambda);
    match (m.diameter, m.diameter_lower_bound) {
        (Some(d), _) => writeln!(out, "diameter      {d}"),
        (None, Some(d)) => writeln!(out, "diameter      >= {d}"),
        (None, None) => writeln!(out, "diameter      unknown"),
    }
    .expect("writing to a String");
    let _ = writeln!(out, "omega         {}", m.omega);
    let _ = writeln!(out, "chi           {}", opt(m.chi));
    let _ = writeln!(out, "chi_prime     {}", opt(m.chi_prime));
    out
}

fn verify(cli: &Cli, suite: Suite, max: u32) -> Result<Output, Failure> {
    let report = verify::run(suite, max, cli.oracle_cap)?;
    let body = match cli.format {
        Format::Json => pretty(&serde_json::to_value(&report).expect("reports serialize")),
        Format::Text => report.to_text(),
        _ => return Err(unsupported(cli, "verify")),
    };
    let code = if report.passed() { 0 } else { VERIFICATION_FAILED };
    if let Some(f) = report.first_failure() {
        eprintln!("first failure: [{}] {}: {}", f.suite, f.name, f.detail);
    }
    Ok(Output { body, code })
}

/// One output row of `ratios`.
struct RatioRow {
    report: analysis::RatioReport,
    /// `x_{2k+1} / x_{2k−1}`
    two_step: Ratio,
    /// `x_{2k} / 2^k` and `x_{2k+1} / 2^{k+1/2}`
    envelope: (f64, f64),
}

const RATIO_TOLERANCE: f64 = 1e-3;

fn ratios(cli: &Cli, k: u32) -> Result<Output, Failure> {
    let reports = analysis::all_subsequence_ratios(k)?;
    let table = sequences::coupled_counts(2 * k + 1)?;
    let rows: Vec<RatioRow> = reports
        .into_iter()
        .map(|report| {
            let col = Column::from(report.sequence);
            let (even, odd) = (2 * report.k, 2 * report.k + 1);
            let two_step = Ratio::new(table.value(col, odd), table.value(col, odd - 2));
            let envelope = (
                sequences::scaled_by_sqrt2_pow(table.value(col, even), even),
                sequences::scaled_by_sqrt2_pow(table.value(col, odd), odd),
            );
            RatioRow {
                report,
                two_step,
                envelope,
            }
        })
        .collect();
    Ok(match cli.format {
        Format::Text => ratios_text(&rows, k),
        Format::Csv => {
            let mut out = String::from(
                "sequence,k,even_over_odd,even_decimal,even_limit,even_distance,odd_over_even,odd_decimal,odd_limit,odd_distance,two_step,two_step_decimal,even_envelope,odd_envelope\n",
            );
            for r in &rows {
                let p = &r.report;
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{:e},{},{},{},{:e},{},{},{},{}",
                    p.sequence,
                    p.k,
                    p.even_over_odd,
                    p.even_over_odd.to_f64(),
                    p.even_limit,
                    p.even_distance,
                    p.odd_over_even,
                    p.odd_over_even.to_f64(),
                    p.odd_limit,
                    p.odd_distance,
                    r.two_step,
                    r.two_step.to_f64(),
                    r.envelope.0,
                    r.envelope.1
                );
            }
            out
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(&r.report).expect("reports serialize");
                    v["two_step"] = serde_json::to_value(&r.two_step).expect("ratios serialize");
                    v["even_envelope"] = r.envelope.0.into();
                    v["odd_envelope"] = r.envelope.1.into();
                    v["within_tolerance"] = r.report.within(RATIO_TOLERANCE).into();
                    v
                })
                .collect();
            pretty(&serde_json::Value::Array(rows))
        }
        Format::Dot => return Err(unsupported(cli, "ratios")),
    }
    .into())
}

fn ratios_text(rows: &[RatioRow], k_max: u32) -> String {
    let mut out = String::new();
    for task in Task::ALL {
        let (even_limit, odd_limit) = analysis::ratio_limits(task);
        let _ = writeln!(
            out,
            "{task}: x(2k)/x(2k-1) -> {even_limit}, x(2k+1)/x(2k) -> {odd_limit}, product 2: {}",
            analysis::limit_product_is_two(task)
        );
        for r in rows.iter().filter(|r| r.report.sequence == task) {
            let p = &r.report;
            let _ = writeln!(
                out,
                "  k={:<3} {:>12.8} ({:.1e})  {:>12.8} ({:.1e})  two-step {:.6}  envelope {:.6} {:.6}",
                p.k,
                p.even_over_odd.to_f64(),
                p.even_distance,
                p.odd_over_even.to_f64(),
                p.odd_distance,
                r.two_step.to_f64(),
                r.envelope.0,
                r.envelope.1
            );
        }
        if let Some(last) = rows.iter().rfind(|r| r.report.sequence == task) {
            let verdict = if last.report.within(RATIO_TOLERANCE) { "pass" } else { "not yet" };
            let _ = writeln!(out, "  within {RATIO_TOLERANCE:e} of both limits at k={k_max}: {verdict}");
        }
    }
    out
}
