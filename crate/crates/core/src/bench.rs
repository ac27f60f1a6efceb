//! Benchmark suites: generate, kernelize (split families), solve, and
//! record one CSV row per instance.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::gen::{generate, GenSpec};
use crate::kernel::{kernelize, KernelKind};
use crate::solve::{solve, Answer};

/// One CSV row. Column order is the field order and is part of the format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub id: usize,
    pub family: String,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub terminals: usize,
    pub k: i64,
    /// `yes`, `no`, or empty when the instance failed.
    pub answer: String,
    /// `reduced`, `trivial-yes`, `trivial-no`, or empty when not kernelized.
    pub kernel_kind: String,
    pub kernel_clique_side: Option<usize>,
    pub kernel_vertices: Option<usize>,
    pub nodes_visited: Option<u64>,
    pub kernel_ms: Option<f64>,
    pub solve_ms: Option<f64>,
    pub error: String,
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Runs one instance. Failures land in the `error` column.
pub fn run_one(id: usize, spec: &GenSpec) -> BenchRecord {
    let mut rec = BenchRecord {
        id,
        family: spec.family.name().to_string(),
        seed: spec.seed,
        n: 0,
        m: 0,
        terminals: 0,
        k: spec.k,
        answer: String::new(),
        kernel_kind: String::new(),
        kernel_clique_side: None,
        kernel_vertices: None,
        nodes_visited: None,
        kernel_ms: None,
        solve_ms: None,
        error: String::new(),
    };
    let inst = match generate(spec) {
        Ok(i) => i,
        Err(e) => {
            rec.error = e.to_string();
            return rec;
        }
    };
    rec.n = inst.graph.vertex_count();
    rec.m = inst.graph.edge_count();
    rec.terminals = inst.terminals.len();

    if spec.family.is_split() {
        let start = Instant::now();
        match kernelize(inst.clone()) {
            Ok(out) => {
                rec.kernel_ms = Some(ms(start));
                rec.kernel_kind = match out.kind {
                    KernelKind::Reduced => {
                        rec.kernel_clique_side = Some(out.clique_side.len());
                        rec.kernel_vertices = Some(out.instance.graph.vertex_count());
                        "reduced"
                    }
                    KernelKind::TrivialYes => "trivial-yes",
                    KernelKind::TrivialNo => "trivial-no",
                }
                .to_string();
            }
            Err(e) => rec.error = format!("kernel: {e}"),
        }
    }

    let start = Instant::now();
    match solve(&inst) {
        Ok(r) => {
            rec.solve_ms = Some(ms(start));
            rec.nodes_visited = Some(r.nodes_visited);
            rec.answer = match r.answer {
                Answer::Yes => "yes",
                Answer::No => "no",
            }
            .to_string();
        }
        Err(e) => {
            if !rec.error.is_empty() {
                rec.error.push_str("; ");
            }
            rec.error.push_str(&format!("solve: {e}"));
        }
    }
    rec
}

/// Runs every spec in order; ids are positions in `specs`.
pub fn run_suite(specs: &[GenSpec]) -> Vec<BenchRecord> {
    specs.iter().enumerate().map(|(i, s)| run_one(i, s)).collect()
}

/// Writes records as CSV. The header is written only when `header` is set,
/// so rows can be appended to an existing file.
pub fn write_csv<W: Write>(out: W, records: &[BenchRecord], header: bool) -> Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new().has_headers(header).from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
