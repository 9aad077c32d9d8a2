use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lauricella::kernel::{format_rational, parse_rational};
use lauricella::sweep::{job_rng, random_point, MAX_SWEEP_DIM};
use lauricella::{
    dual_table, flows_are_symmetries, full_suite, gamma_table, hierarchy_generate, kodama_konopelchenko, operator_l,
    a0_poly, sweep, tsarev_residuals, BlockConfig, ChristoffelTable, DiagonalSystem, Error, FlowSequence, Rational,
    SweepOptions, VerificationReport,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "lauricella", version, about = "Exact Lauricella bi-flat structures, checks and hierarchies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Christoffel symbols of the natural connection.
    Gamma(PointArgs),
    /// Print the Christoffel symbols of the dual connection.
    Dual(PointArgs),
    /// Run the axiom and identity suites at one point.
    Verify(PointArgs),
    /// Generate the flows of the hierarchy.
    Hierarchy(HierarchyArgs),
    /// Integrability residuals of a diagonal system.
    Tsarev(TsarevArgs),
    /// Run every check over all configurations up to a dimension.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct PointArgs {
    /// Block configuration: a JSON file or inline JSON like {"sizes":[2,1],"weights":["1/2","1"]}.
    #[arg(long)]
    config: String,
    /// Point as a JSON array of "p/q" strings; drawn from --seed when absent.
    #[arg(long)]
    point: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Draw the random point off the locus where the dual structure degenerates.
    #[arg(long)]
    dual: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct HierarchyArgs {
    /// Block configuration (path or inline JSON); uses its canonical operator and potential.
    #[arg(long, conflicts_with = "kodama")]
    config: Option<String>,
    /// Use the Kodama–Konopelchenko operator in this many components instead.
    #[arg(long)]
    kodama: Option<usize>,
    #[arg(long, default_value_t = 4)]
    steps: usize,
    /// Also check at this point that the flows are symmetries (needs --config).
    #[arg(long)]
    point: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct TsarevArgs {
    /// System as a JSON file or inline JSON {"speeds":[[{"coeff":"1","exps":[1,0]}], ...]}.
    #[arg(long)]
    system: String,
    #[arg(long)]
    point: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    /// Largest dimension to enumerate.
    #[arg(long, default_value_t = 4)]
    dim: usize,
    /// Random points per configuration.
    #[arg(long, default_value_t = 2)]
    points: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

/// Output and whether every check passed.
struct Outcome {
    text: String,
    pass: bool,
}

fn input_error(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Inline JSON when the argument starts with `{` or `[`, a file path otherwise.
fn read_json(arg: &str) -> Result<Value, Error> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| input_error(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| input_error(format!("invalid JSON: {e}")))
}

fn parse_config(arg: &str) -> Result<BlockConfig, Error> {
    serde_json::from_value(read_json(arg)?).map_err(|e| input_error(format!("invalid configuration: {e}")))
}

fn parse_point(arg: &str) -> Result<Vec<Rational>, Error> {
    let items = read_json(arg)?;
    let items = items.as_array().ok_or_else(|| input_error("point must be a JSON array"))?;
    items
        .iter()
        .map(|v| match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
            other => Err(input_error(format!("bad coordinate {other}"))),
        })
        .collect()
}

fn point_or_random(config: &BlockConfig, point: &Option<String>, seed: u64, dual: bool) -> Result<Vec<Rational>, Error> {
    match point {
        Some(p) => parse_point(p),
        None => random_point(&mut job_rng(seed, 0), config, dual),
    }
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn table_output(table: &ChristoffelTable<Rational>, format: Format) -> String {
    match format {
        Format::Json => json!({
            "config": table.config(),
            "point": strings(table.point()),
            "entries": table.to_entries(),
        })
        .to_string(),
        Format::Table => {
            let mut s = String::from("k\ti\tj\tvalue\n");
            for e in table.to_entries() {
                let _ = writeln!(s, "{}\t{}\t{}\t{}", e.k, e.i, e.j, e.value);
            }
            s.trim_end().to_string()
        }
    }
}

fn report_output(report: &VerificationReport, point: Option<&[Rational]>, format: Format) -> String {
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(report).expect("report serializes");
            if let Some(p) = point {
                v["point"] = json!(strings(p));
            }
            v.to_string()
        }
        Format::Table => {
            let mut s = String::new();
            if let Some(p) = point {
                let _ = writeln!(s, "point {}", strings(p).join(" "));
            }
            for c in &report.checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                let _ = write!(s, "{status}\t{}\t{} evaluated", c.name, c.evaluated);
                if !c.pass {
                    let _ = write!(s, "\tat {:?} value {}", c.witness.indices, format_rational(&c.witness.value));
                }
                s.push('\n');
            }
            for w in &report.warnings {
                let _ = writeln!(s, "warning: {w}");
            }
            s.trim_end().to_string()
        }
    }
}

fn cmd_gamma(args: &PointArgs, dual: bool) -> Result<Outcome, Error> {
    let config = parse_config(&args.config)?;
    let point = point_or_random(&config, &args.point, args.seed, args.dual || dual)?;
    let table = if dual { dual_table::<Rational>(&config, &point)? } else { gamma_table::<Rational>(&config, &point)? };
    Ok(Outcome { text: table_output(&table, args.format), pass: true })
}

fn cmd_verify(args: &PointArgs) -> Result<Outcome, Error> {
    let config = parse_config(&args.config)?;
    // random points avoid the dual degeneracy so that the dual checks run too
    let point = point_or_random(&config, &args.point, args.seed, true)?;
    let report = full_suite(&config, &point)?;
    Ok(Outcome { text: report_output(&report, Some(&point), args.format), pass: report.all_pass() })
}

fn cmd_hierarchy(args: &HierarchyArgs) -> Result<Outcome, Error> {
    let (config, (l, a0)) = match (&args.config, args.kodama) {
        (Some(c), None) => {
            let config = parse_config(c)?;
            let pair = (operator_l(&config), a0_poly(&config));
            (Some(config), pair)
        }
        (None, Some(n)) => (None, kodama_konopelchenko(n)?),
        _ => return Err(input_error("give exactly one of --config or --kodama")),
    };
    let seq: FlowSequence = hierarchy_generate(&l, &a0, args.steps)?;
    let mut out = seq.to_json();
    let mut pass = true;
    let mut report_text = None;
    if let Some(p) = &args.point {
        let config = config.as_ref().ok_or_else(|| input_error("--point needs --config"))?;
        let point = parse_point(p)?;
        let report = flows_are_symmetries(config, &point, &seq)?;
        pass = report.all_pass();
        out["report"] = serde_json::to_value(&report).expect("report serializes");
        report_text = Some(report_output(&report, Some(&point), Format::Table));
    }
    let text = match args.format {
        Format::Json => out.to_string(),
        Format::Table => {
            let mut s = String::new();
            for (k, (a, v)) in seq.a.iter().zip(&seq.v).enumerate() {
                let _ = writeln!(s, "a_{k} = {a}");
                for row in v {
                    let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
                    let _ = writeln!(s, "  [{}]", cells.join(", "));
                }
            }
            if let Some(r) = report_text {
                s.push_str(&r);
            }
            s.trim_end().to_string()
        }
    };
    Ok(Outcome { text, pass })
}

fn cmd_tsarev(args: &TsarevArgs) -> Result<Outcome, Error> {
    let sys: DiagonalSystem =
        serde_json::from_value(read_json(&args.system)?).map_err(|e| input_error(format!("invalid system: {e}")))?;
    let point = match &args.point {
        Some(p) => parse_point(p)?,
        None => {
            let n = sys.dim();
            let semisimple = BlockConfig::new(vec![1; n], vec![Rational::from_integer(1.into()); n])?;
            random_point(&mut job_rng(args.seed, 0), &semisimple, false)?
        }
    };
    let report = tsarev_residuals(&sys, &point)?;
    Ok(Outcome { text: report_output(&report, Some(&point), args.format), pass: report.all_pass() })
}

fn cmd_sweep(args: &SweepArgs) -> Result<Outcome, Error> {
    if args.dim == 0 || args.dim > MAX_SWEEP_DIM {
        return Err(input_error(format!("--dim must be in 1..={MAX_SWEEP_DIM}")));
    }
    let summary = sweep(&SweepOptions { max_dim: args.dim, points: args.points, seed: args.seed })?;
    let text = match args.format {
        Format::Json => serde_json::to_string(&summary).expect("summary serializes"),
        Format::Table => {
            let mut s = format!("{} configurations, {} points\n", summary.configs, summary.points);
            for c in &summary.checks {
                let _ = writeln!(s, "{}\t{}\tpassed {}\tfailed {}", if c.failed == 0 { "PASS" } else { "FAIL" }, c.name, c.passed, c.failed);
            }
            for f in &summary.failures {
                let _ = writeln!(s, "failure: sizes {:?} check {} at {:?}", f.sizes, f.check, f.witness.indices);
            }
            s.trim_end().to_string()
        }
    };
    Ok(Outcome { text, pass: summary.all_pass })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gamma(a) => cmd_gamma(a, false),
        Command::Dual(a) => cmd_gamma(a, true),
        Command::Verify(a) => cmd_verify(a),
        Command::Hierarchy(a) => cmd_hierarchy(a),
        Command::Tsarev(a) => cmd_tsarev(a),
        Command::Sweep(a) => cmd_sweep(a),
    };
    match result {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{}", out.text);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
