//! `sfvs`: command-line front end for the subset-FVS toolkit.
//!
//! Exit codes: 0 YES or success, 1 NO, 2 usage or parse error, 3 input
//! rejected (size guard, not chordal, not split).

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sfvs_core::bench::{run_suite, write_csv};
use sfvs_core::gen::{generate, Family, GenSpec};
use sfvs_core::graph::{find_t_cycle, Instance, Vertex};
use sfvs_core::io::{parse_instance, write_instance_with_comments};
use sfvs_core::kernel::{kernelize, KernelError, KernelKind};
use sfvs_core::oracle::{export_3hs, oracle_decide_with, OracleError, OracleMode, DEFAULT_MAX_N};
use sfvs_core::solve::{solve, Answer, SolveError};
use sfvs_core::trace::RuleTrace;

const YES: u8 = 0;
const NO: u8 = 1;
const USAGE: u8 = 2;
const REJECTED: u8 = 3;

#[derive(Parser)]
#[command(name = "sfvs", version, about = "Subset Feedback Vertex Set on chordal and split graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Instance file (`p sfvs n m k` format); `-` reads standard input.
    #[arg(short, long)]
    input: PathBuf,
    /// Override the budget given in the file.
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    /// Print JSON instead of plain text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    family: Family,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 12)]
    n: usize,
    /// Clique-side size for split-random.
    #[arg(long, default_value_t = 4)]
    clique_size: usize,
    /// Edge probability (split-random, vc-reduction) or clique reuse share
    /// (chordal families).
    #[arg(long, default_value_t = 0.4)]
    p: f64,
    #[arg(long, default_value_t = 0.5)]
    terminal_fraction: f64,
    #[arg(long, default_value_t = 3)]
    k: i64,
}

impl GenArgs {
    fn spec(&self, family: Family, seed: u64) -> GenSpec {
        GenSpec {
            family,
            n: self.n,
            clique_size: self.clique_size,
            p: self.p,
            terminal_fraction: self.terminal_fraction,
            k: self.k,
            seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide a chordal instance and print a verified solution.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        /// Write the rule trace as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Kernelize a split instance.
    Kernelize {
        #[command(flatten)]
        input: InputArgs,
        /// Write the kernel instance to this file.
        #[arg(long)]
        emit_kernel: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Exact answer by exhaustive search.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_oracle_n: usize,
        /// Also write the terminal triangles as a 3-hitting-set instance.
        #[arg(long)]
        hitting_set: Option<PathBuf>,
    },
    /// Check that a vertex set is a solution of size at most k.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Comma or space separated vertex identifiers.
        #[arg(long, default_value = "")]
        set: String,
    },
    /// Generate an instance.
    Gen {
        #[command(flatten)]
        gen: GenArgs,
        /// Output file; standard output if absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a suite of generated instances and write CSV rows.
    Bench {
        #[command(flatten)]
        gen: GenArgs,
        /// Number of consecutive seeds, starting at `--seed`.
        #[arg(long, default_value_t = 10)]
        count: u64,
        /// CSV file to append to; standard output if absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    body: Value,
}

impl Failure {
    fn usage(msg: impl ToString) -> Self {
        Failure { code: USAGE, body: json!({ "error": msg.to_string() }) }
    }

    fn rejected(body: Value) -> Self {
        Failure { code: REJECTED, body }
    }
}

type Outcome = Result<u8, Failure>;

fn read_input(args: &InputArgs) -> Result<Instance, Failure> {
    let text = if args.input == Path::new("-") {
        io::read_to_string(io::stdin()).map_err(Failure::usage)?
    } else {
        fs::read_to_string(&args.input)
            .map_err(|e| Failure::usage(format!("{}: {e}", args.input.display())))?
    };
    let mut inst = parse_instance(&text).map_err(|e| {
        Failure { code: USAGE, body: json!({ "error": e.kind.to_string(), "line": e.line }) }
    })?;
    if let Some(k) = args.k {
        inst.k = k;
    }
    Ok(inst)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_trace(path: Option<&PathBuf>, trace: &RuleTrace) -> Result<(), Failure> {
    let Some(path) = path else { return Ok(()) };
    let mut out = String::new();
    for step in &trace.steps {
        out.push_str(&serde_json::to_string(step).expect("trace steps serialize"));
        out.push('\n');
    }
    write_file(path, &out)
}

fn ids(s: &BTreeSet<Vertex>) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn emit(json_mode: bool, value: &Value, text: String) {
    if json_mode {
        println!("{value}");
    } else {
        println!("{text}");
    }
}

fn not_chordal(cycle: Vec<Vertex>) -> Failure {
    Failure::rejected(json!({ "error": "graph is not chordal", "induced_cycle": cycle }))
}

fn cmd_solve(input: &InputArgs, trace: Option<&PathBuf>) -> Outcome {
    let inst = read_input(input)?;
    let start = Instant::now();
    let r = match solve(&inst) {
        Ok(r) => r,
        Err(SolveError::NotChordal(c)) => return Err(not_chordal(c)),
        Err(e) => return Err(Failure { code: REJECTED, body: json!({ "error": e.to_string() }) }),
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    write_trace(trace, &r.trace)?;
    let value = json!({
        "answer": r.answer,
        "solution": r.solution,
        "nodes_visited": r.nodes_visited,
        "max_depth": r.max_depth,
        "wall_ms": wall_ms,
    });
    let text = match &r.solution {
        Some(s) => format!("YES\n{}", ids(s)),
        None => "NO".to_string(),
    };
    emit(input.json, &value, text);
    Ok(if r.answer == Answer::Yes { YES } else { NO })
}

fn cmd_kernelize(input: &InputArgs, emit_kernel: Option<&PathBuf>, trace: Option<&PathBuf>) -> Outcome {
    let inst = read_input(input)?;
    let k_in = inst.k;
    let out = match kernelize(inst) {
        Ok(o) => o,
        Err(KernelError::NotSplit(u, v)) => {
            return Err(Failure::rejected(json!({ "error": "graph is not split", "violation": [u, v] })))
        }
        Err(e) => return Err(Failure { code: REJECTED, body: json!({ "error": e.to_string() }) }),
    };
    write_trace(trace, &out.trace)?;
    if let Some(path) = emit_kernel {
        let note = format!("kernel of {}", input.input.display());
        write_file(path, &write_instance_with_comments(&out.instance, &[note]))?;
    }
    let kind = match out.kind {
        KernelKind::Reduced => "reduced",
        KernelKind::TrivialYes => "trivial-yes",
        KernelKind::TrivialNo => "trivial-no",
    };
    let g = &out.instance.graph;
    let value = json!({
        "kind": kind,
        "k_in": k_in,
        "k_out": out.instance.k,
        "clique_side": out.clique_side.len(),
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "steps": out.trace.len(),
    });
    let text = format!(
        "{kind}: k {k_in} -> {}, |K| = {}, {} vertices, {} edges, {} steps",
        out.instance.k,
        out.clique_side.len(),
        g.vertex_count(),
        g.edge_count(),
        out.trace.len()
    );
    emit(input.json, &value, text);
    Ok(if out.kind == KernelKind::TrivialNo { NO } else { YES })
}

fn cmd_oracle(input: &InputArgs, max_n: usize, hitting_set: Option<&PathBuf>) -> Outcome {
    let inst = read_input(input)?;
    if let Some(path) = hitting_set {
        let hs = export_3hs(&inst).map_err(|e| match e {
            OracleError::NotChordal(c) => not_chordal(c),
            other => Failure::rejected(json!({ "error": other.to_string() })),
        })?;
        write_file(path, &hs.to_text())?;
    }
    let a = match oracle_decide_with(&inst, max_n, OracleMode::Auto) {
        Ok(a) => a,
        Err(e) => return Err(Failure::rejected(json!({ "error": e.to_string() }))),
    };
    let value = json!({ "answer": if a.yes { "yes" } else { "no" }, "solution": a.solution });
    let text = match &a.solution {
        Some(s) => format!("YES\n{}", ids(s)),
        None => "NO".to_string(),
    };
    emit(input.json, &value, text);
    Ok(if a.yes { YES } else { NO })
}

fn cmd_verify(input: &InputArgs, set: &str) -> Outcome {
    let inst = read_input(input)?;
    let mut s = BTreeSet::new();
    for tok in set.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let v: Vertex = tok.parse().map_err(|_| Failure::usage(format!("bad vertex `{tok}`")))?;
        if !inst.graph.has_vertex(v) {
            return Err(Failure::usage(format!("vertex {v} is not in the graph")));
        }
        s.insert(v);
    }
    let rest = inst.minus(&s, 0).expect("vertices checked above");
    let cycle = find_t_cycle(&rest);
    let within = s.len() as i64 <= inst.k;
    let valid = within && cycle.is_none();
    let value = json!({
        "valid": valid,
        "size": s.len(),
        "k": inst.k,
        "witness_cycle": cycle,
    });
    let text = match (&cycle, within) {
        (Some(c), _) => format!("invalid: terminal cycle {c:?}"),
        (None, false) => format!("invalid: {} vertices exceed k = {}", s.len(), inst.k),
        (None, true) => "valid".to_string(),
    };
    emit(input.json, &value, text);
    Ok(if valid { YES } else { NO })
}

fn cmd_gen(gen: &GenArgs, output: Option<&PathBuf>) -> Outcome {
    let spec = gen.spec(gen.family, gen.seed);
    let inst = generate(&spec).map_err(Failure::usage)?;
    let note = format!("family {} seed {}", gen.family, gen.seed);
    let text = write_instance_with_comments(&inst, &[note]);
    match output {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    Ok(YES)
}

fn cmd_bench(gen: &GenArgs, count: u64, output: Option<&PathBuf>) -> Outcome {
    let specs: Vec<GenSpec> = (0..count).map(|i| gen.spec(gen.family, gen.seed + i)).collect();
    let records = run_suite(&specs);
    match output {
        Some(path) => {
            let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
            let file = fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            write_csv(file, &records, fresh).map_err(Failure::usage)?;
        }
        None => write_csv(io::stdout().lock(), &records, true).map_err(Failure::usage)?,
    }
    Ok(YES)
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Solve { input, trace } => cmd_solve(input, trace.as_ref()),
        Command::Kernelize { input, emit_kernel, trace } => cmd_kernelize(input, emit_kernel.as_ref(), trace.as_ref()),
        Command::Oracle { input, max_oracle_n, hitting_set } => cmd_oracle(input, *max_oracle_n, hitting_set.as_ref()),
        Command::Verify { input, set } => cmd_verify(input, set),
        Command::Gen { gen, output } => cmd_gen(gen, output.as_ref()),
        Command::Bench { gen, count, output } => cmd_bench(gen, *count, output.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = writeln!(io::stderr(), "{}", f.body);
            ExitCode::from(f.code)
        }
    }
}
