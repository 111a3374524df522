use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::kernel::{kernelize, KernelStats};

use super::format::parse_document;
use super::solve::{solve, Algorithm, Answer, SolveOptions, Verdict};
use super::CliError;

/// One line of the bench table. The CSV columns are the field names, in
/// this order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub file: String,
    pub algorithm: String,
    pub variant: String,
    /// `yes`, `no`, `unknown`, a number, `infinite`, or `error`.
    pub answer: String,
    pub cardinality: Option<usize>,
    pub wall_ms: Option<f64>,
    pub nodes: u64,
    pub vertices_before: usize,
    pub edges_before: usize,
    pub vertices_after: usize,
    pub edges_after: usize,
    pub feedback_edges: usize,
    pub kernel_within_bound: bool,
}

fn answer_text(answer: &Answer) -> String {
    match answer {
        Answer::Verdict(Verdict::Yes) => "yes".into(),
        Answer::Verdict(Verdict::No) => "no".into(),
        Answer::Verdict(Verdict::Unknown) => "unknown".into(),
        Answer::Cost(c) => c.to_string(),
        Answer::Length(d) => d.to_string(),
    }
}

/// Runs every algorithm on every regular file of `dir`, in parallel, and
/// returns rows sorted by file name then algorithm order. Unreadable or
/// malformed files are skipped with a warning on stderr.
pub fn bench(
    dir: &Path,
    algorithms: &[Algorithm],
    options: &SolveOptions,
    k: Option<usize>,
    ell: Option<u64>,
) -> Result<Vec<BenchRow>, CliError> {
    let io = |source| CliError::Io { path: dir.display().to_string(), source };
    let mut files: Vec<_> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|entry| entry.ok())
        .filter(|entry| entry.file_type().is_ok_and(|t| t.is_file()))
        .map(|entry| entry.path())
        .collect();
    files.sort();

    let per_file: Vec<Vec<BenchRow>> = files
        .par_iter()
        .map(|path| {
            let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let instance = fs::read_to_string(path)
                .map_err(|e| e.to_string())
                .and_then(|text| parse_document(&text).map_err(|e| e.to_string()))
                .and_then(|doc| doc.instance(k, ell).map_err(|e| e.to_string()));
            let instance = match instance {
                Ok(i) => i,
                Err(e) => {
                    eprintln!("warning: skipping {}: {e}", path.display());
                    return Vec::new();
                }
            };
            let (kernel, _) = kernelize(&instance);
            let stats = KernelStats::of(&instance, &kernel);
            algorithms
                .iter()
                .map(|&algorithm| {
                    let opts = SolveOptions { algorithm, ..options.clone() };
                    let (answer, cardinality, wall_ms, nodes) = match solve(&instance, &opts) {
                        Ok(r) => {
                            let card = r.distance_after.is_some().then_some(r.solution_edges.len());
                            (answer_text(&r.answer), card, r.wall_ms, r.nodes_explored)
                        }
                        Err(e) => {
                            eprintln!("warning: {name} with {algorithm}: {e}");
                            ("error".into(), None, None, 0)
                        }
                    };
                    BenchRow {
                        file: name.clone(),
                        algorithm: algorithm.name().into(),
                        variant: options.variant.name().into(),
                        answer,
                        cardinality,
                        wall_ms,
                        nodes,
                        vertices_before: stats.vertices_before,
                        edges_before: stats.edges_before,
                        vertices_after: stats.vertices_after,
                        edges_after: stats.edges_after,
                        feedback_edges: stats.feedback_edges,
                        kernel_within_bound: stats.within_bound(),
                    }
                })
                .collect()
        })
        .collect();
    Ok(per_file.into_iter().flatten().collect())
}

const COLUMNS: [&str; 13] = [
    "file",
    "algorithm",
    "variant",
    "answer",
    "cardinality",
    "wall_ms",
    "nodes",
    "vertices_before",
    "edges_before",
    "vertices_after",
    "edges_after",
    "feedback_edges",
    "kernel_within_bound",
];

pub(crate) fn to_csv(rows: &[BenchRow]) -> String {
    // header written by hand so an empty table still has one
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(COLUMNS).expect("in-memory write");
    for row in rows {
        w.serialize(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub(crate) fn to_text(rows: &[BenchRow]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
            vec![
                r.file.clone(),
                r.algorithm.clone(),
                r.variant.clone(),
                r.answer.clone(),
                opt(r.cardinality.map(|c| c.to_string())),
                opt(r.wall_ms.map(|w| format!("{w:.2}"))),
                r.nodes.to_string(),
                r.vertices_before.to_string(),
                r.edges_before.to_string(),
                r.vertices_after.to_string(),
                r.edges_after.to_string(),
                r.feedback_edges.to_string(),
                r.kernel_within_bound.to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..COLUMNS.len())
        .map(|i| cells.iter().map(|c| c[i].len()).chain([COLUMNS[i].len()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in std::iter::once(COLUMNS.map(String::from).to_vec()).chain(cells) {
        let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}
