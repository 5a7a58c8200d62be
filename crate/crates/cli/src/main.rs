mod files;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use tmd_core::bounds::structural_lower_bound;
use tmd_core::construct::{build_optimal, optimal_size};
use tmd_core::resolution::is_resolving;
use tmd_core::solver::{brute_force_tmd, greedy_solve, sweep, SweepRow};
use tmd_core::transforms::{
    check_conditions, grow_to_optimal, normalize_attractions, plan_transform_a, plan_transform_b,
    plan_transform_c, shorten_weak_paths,
};
use tmd_core::{SensorSet, TmdError, Tree, Verdict, Vertex};

/// Threshold-k metric dimension of trees.
///
/// Exit codes: 0 success, 1 semantic failure (for example a non-resolving
/// sensor set or a violated transformation precondition), 2 input error,
/// 3 size guard exceeded.
#[derive(Parser)]
#[command(name = "tmd", version)]
struct Cli {
    /// Add wall-clock timing to the JSON report.
    #[arg(long, global = true)]
    timing: bool,
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a sensor set resolves a tree.
    Verify {
        #[command(flatten)]
        input: SensorInput,
    },
    /// Worst-case and structural lower bounds.
    Bounds {
        #[command(flatten)]
        input: TreeInput,
    },
    /// Exact or greedy threshold-k metric dimension.
    Solve {
        #[command(flatten)]
        input: TreeInput,
        /// Exhaustive search (default).
        #[arg(long, conflicts_with = "greedy")]
        exact: bool,
        /// Greedy heuristic; gives an upper bound.
        #[arg(long)]
        greedy: bool,
        /// Tie-breaking seed for the greedy heuristic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build a maximum-size tree resolved by m sensors.
    Construct {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        /// Tree on m vertices giving the sensor adjacency (default: path).
        #[arg(long)]
        skeleton: Option<PathBuf>,
        /// Output tree file.
        #[arg(long)]
        out: PathBuf,
        /// Output sensor file (default: OUT with a `.sensors` suffix).
        #[arg(long)]
        sensors_out: Option<PathBuf>,
    },
    /// Apply a transformation or one of the iterative drivers.
    Transform {
        #[command(flatten)]
        input: SensorInput,
        #[arg(long, value_enum)]
        op: Op,
        /// Sensor for transformation A.
        #[arg(long)]
        sensor: Option<Vertex>,
        /// Sensor pair `s0,s1` for transformation B (default: the longest weak path).
        #[arg(long)]
        pair: Option<String>,
        /// Step budget for `grow`.
        #[arg(long)]
        max_steps: Option<usize>,
        /// Where to write the rewritten tree.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact dimension and both bounds for every tree class up to n-max.
    Sweep {
        #[arg(long)]
        n_max: usize,
        /// Thresholds, repeated or comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Args)]
struct TreeInput {
    /// Tree file: vertex count, then one `u v` edge per line.
    #[arg(long)]
    tree: PathBuf,
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct SensorInput {
    #[command(flatten)]
    tree: TreeInput,
    /// Comma-separated sensor ids.
    #[arg(long, conflicts_with = "sensors_file", required_unless_present = "sensors_file")]
    sensors: Option<String>,
    /// File with one sensor id per line.
    #[arg(long)]
    sensors_file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Op {
    A,
    B,
    C,
    Normalize,
    Shorten,
    Grow,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    inputs: Value,
    outputs: Value,
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<Timing>,
}

#[derive(Serialize)]
struct Timing {
    elapsed_us: u64,
}

/// A finished command: its report and whether the answer was affirmative.
struct Done {
    command: &'static str,
    inputs: Value,
    outputs: Value,
    ok: bool,
}

impl Done {
    fn ok(command: &'static str, inputs: Value, outputs: Value) -> Self {
        Done { command, inputs, outputs, ok: true }
    }
}

/// Raw text written to stdout instead of a JSON report.
enum Output {
    Report(Done),
    Text(String),
}

impl SensorInput {
    fn load(&self) -> Result<(Tree, SensorSet, Value)> {
        let tree = files::read_tree(&self.tree.tree)?;
        let ids = match (&self.sensors, &self.sensors_file) {
            (Some(list), _) => files::parse_sensor_list(list)?,
            (None, Some(path)) => files::read_sensor_file(path)?,
            (None, None) => bail!("either --sensors or --sensors-file is required"),
        };
        let sensors = SensorSet::new(&tree, ids, self.tree.k)?;
        let inputs = json!({
            "tree": self.tree.tree,
            "k": self.tree.k,
            "sensors": sensors.ids(),
            "sensors_file": self.sensors_file,
        });
        Ok((tree, sensors, inputs))
    }
}

fn verify(input: &SensorInput) -> Result<Done> {
    let (tree, sensors, inputs) = input.load()?;
    let verdict = is_resolving(&tree, &sensors)?;
    let outputs = match verdict {
        Verdict::Resolving => json!({ "resolving": true }),
        Verdict::Uncovered(v) => json!({ "resolving": false, "uncovered": v }),
        Verdict::Unresolved(x, y) => json!({ "resolving": false, "failing_pair": [x, y] }),
    };
    Ok(Done { command: "verify", inputs, outputs, ok: verdict.is_ok() })
}

fn bounds(input: &TreeInput) -> Result<Done> {
    let tree = files::read_tree(&input.tree)?;
    let report = structural_lower_bound(&tree, input.k)?;
    let inputs = json!({ "tree": input.tree, "k": input.k });
    Ok(Done::ok("bounds", inputs, serde_json::to_value(report)?))
}

fn solve(input: &TreeInput, greedy: bool, seed: u64) -> Result<Done> {
    let tree = files::read_tree(&input.tree)?;
    let result = if greedy { greedy_solve(&tree, input.k, seed)? } else { brute_force_tmd(&tree, input.k)? };
    let inputs = json!({
        "tree": input.tree,
        "k": input.k,
        "method": if greedy { "greedy" } else { "exact" },
        "seed": greedy.then_some(seed),
    });
    Ok(Done::ok("solve", inputs, serde_json::to_value(result)?))
}

fn construct(m: usize, k: usize, skeleton: Option<&Path>, out: &Path, sensors_out: Option<&Path>) -> Result<Done> {
    let skeleton_tree = skeleton.map(files::read_tree).transpose()?;
    let (tree, sensors) = build_optimal(m, k, skeleton_tree)?;
    let sensors_path = sensors_out.map_or_else(
        || {
            let mut name = out.as_os_str().to_owned();
            name.push(".sensors");
            PathBuf::from(name)
        },
        Path::to_path_buf,
    );
    files::write_tree(out, &tree)?;
    files::write_sensor_file(&sensors_path, sensors.ids())?;
    let inputs = json!({ "m": m, "k": k, "skeleton": skeleton });
    let outputs = json!({
        "n": tree.vertex_count(),
        "optimal_size": optimal_size(m, k),
        "sensors": sensors.ids(),
        "tree_file": out,
        "sensors_file": sensors_path,
    });
    Ok(Done::ok("construct", inputs, outputs))
}

fn parse_pair(text: &str) -> Result<(Vertex, Vertex)> {
    match files::parse_sensor_list(text)?.as_slice() {
        &[a, b] => Ok((a, b)),
        other => Err(TmdError::Parse { line: 1, message: format!("--pair needs two ids, got {other:?}") })?,
    }
}

fn transform(
    input: &SensorInput,
    op: Op,
    sensor: Option<Vertex>,
    pair: Option<&str>,
    max_steps: Option<usize>,
    out: Option<&Path>,
) -> Result<Done> {
    let (tree, sensors, mut inputs) = input.load()?;
    inputs["op"] = serde_json::to_value(op)?;
    let (result, details) = match op {
        Op::A => {
            let s = sensor.context("--op a needs --sensor")?;
            inputs["sensor"] = json!(s);
            let plan = plan_transform_a(&tree, &sensors, s)?;
            (plan.apply(&tree)?, serde_json::to_value(plan)?)
        }
        Op::B => {
            let (s0, s1) = match pair {
                Some(text) => parse_pair(text)?,
                None => check_conditions(&tree, &sensors)?
                    .longest_weak_path
                    .ok_or_else(|| TmdError::Precondition("there is no weak sensor path".into()))?,
            };
            inputs["pair"] = json!([s0, s1]);
            let plan = plan_transform_b(&tree, &sensors, s0, s1)?;
            (plan.apply(&tree)?, serde_json::to_value(plan)?)
        }
        Op::C => {
            let plan = plan_transform_c(&tree, &sensors)?;
            (plan.apply(&tree)?, serde_json::to_value(plan)?)
        }
        Op::Normalize => (normalize_attractions(&tree, &sensors)?, json!({})),
        Op::Shorten => {
            let outcome = shorten_weak_paths(&tree, &sensors)?;
            let details = serde_json::to_value(&outcome)?;
            (outcome.tree, details)
        }
        Op::Grow => {
            inputs["max_steps"] = json!(max_steps);
            let outcome = grow_to_optimal(&tree, &sensors, max_steps)?;
            let details = serde_json::to_value(&outcome)?;
            (outcome.tree, details)
        }
    };
    if let Some(path) = out {
        files::write_tree(path, &result)?;
    }
    let outputs = json!({
        "details": details,
        "vertex_count_before": tree.vertex_count(),
        "vertex_count_after": result.vertex_count(),
        "resolving_after": is_resolving(&result, &sensors)?.is_ok(),
        "changed": result != tree,
        "edges": result.edges(),
        "out": out,
    });
    Ok(Done::ok("transform", inputs, outputs))
}

const CSV_HEADER: &str = "n,k,canonical_id,tmd,worst_bound,structural_bound";

fn csv(rows: &[SweepRow]) -> String {
    let mut text = format!("{CSV_HEADER}\n");
    for r in rows {
        text += &format!("{},{},{},{},{},{}\n", r.n, r.k, r.canonical_id, r.tmd, r.worst_bound, r.structural_bound);
    }
    text
}

fn run_sweep(n_max: usize, ks: &[usize], format: Format) -> Result<Output> {
    let mut rows = sweep(n_max, ks)?;
    rows.sort_by(|a, b| (a.n, a.k, &a.canonical_id).cmp(&(b.n, b.k, &b.canonical_id)));
    Ok(match format {
        Format::Csv => Output::Text(csv(&rows)),
        Format::Json => Output::Report(Done::ok(
            "sweep",
            json!({ "n_max": n_max, "k": ks }),
            json!({ "rows": rows }),
        )),
    })
}

fn run(cli: &Cli) -> Result<Output> {
    let done = match &cli.command {
        Command::Verify { input } => verify(input)?,
        Command::Bounds { input } => bounds(input)?,
        Command::Solve { input, greedy, seed, .. } => solve(input, *greedy, *seed)?,
        Command::Construct { m, k, skeleton, out, sensors_out } => {
            construct(*m, *k, skeleton.as_deref(), out, sensors_out.as_deref())?
        }
        Command::Transform { input, op, sensor, pair, max_steps, out } => {
            transform(input, *op, *sensor, pair.as_deref(), *max_steps, out.as_deref())?
        }
        Command::Sweep { n_max, k, format } => return run_sweep(*n_max, k, *format),
    };
    Ok(Output::Report(done))
}

/// Maps an error to its exit code by the first library error in its chain.
fn exit_code(err: &anyhow::Error) -> u8 {
    let Some(e) = err.chain().find_map(|c| c.downcast_ref::<TmdError>()) else { return 2 };
    match e {
        TmdError::Guard { .. } => 3,
        TmdError::NotResolving(_)
        | TmdError::Precondition(_)
        | TmdError::InvalidRewrite(_)
        | TmdError::BoundViolation(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(Output::Text(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report(done)) => {
            let report = RunReport {
                command: done.command,
                inputs: done.inputs,
                outputs: done.outputs,
                version: env!("CARGO_PKG_VERSION"),
                timing: cli.timing.then(|| Timing { elapsed_us: start.elapsed().as_micros() as u64 }),
            };
            let text = if cli.pretty { serde_json::to_string_pretty(&report) } else { serde_json::to_string(&report) };
            println!("{}", text.expect("reports serialize"));
            if done.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
