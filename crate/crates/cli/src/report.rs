//! Text renderings shared by the commands. Everything is LF-terminated.

use std::fmt::Write;

use mobius_tree::store::escape_payload;
use mobius_tree::{
    depth, matrix_to_interval, matrix_to_path, next_sibling, parent, MobiusMatrix, NodeRecord,
    Path, StoreStats,
};

pub fn path_text(p: &Path) -> String {
    if p.is_empty() {
        "root".to_string()
    } else {
        p.to_string()
    }
}

/// One `key: value` line per representation, in a fixed order.
pub fn node_report(m: &MobiusMatrix) -> String {
    let path = matrix_to_path(m).expect("valid matrix");
    let opt = |v: Option<String>| v.unwrap_or_else(|| "none".to_string());
    let mut out = String::new();
    let _ = writeln!(out, "path: {}", path_text(&path));
    let _ = writeln!(out, "ratio: {}", opt(m.label().map(|r| r.to_string())));
    let _ = writeln!(out, "matrix: {m}");
    let _ = writeln!(out, "interval: {}", matrix_to_interval(m));
    let _ = writeln!(out, "depth: {}", depth(m));
    let _ = writeln!(out, "determinant: {}", m.determinant());
    let _ = writeln!(out, "canonical: {}", path.is_canonical());
    let _ = writeln!(out, "parent: {}", opt(parent(m).map(|p| p.to_string())));
    let _ = writeln!(
        out,
        "next_sibling: {}",
        opt(next_sibling(m).ok().map(|s| s.to_string()))
    );
    out
}

/// `path<TAB>ratio<TAB>payload`, payload escaped.
pub fn record_line(rec: &NodeRecord) -> String {
    format!(
        "{}\t{}\t{}\n",
        rec.path(),
        rec.label(),
        escape_payload(rec.payload())
    )
}

pub fn record_lines<'a>(records: impl IntoIterator<Item = &'a NodeRecord>) -> String {
    records.into_iter().map(record_line).collect()
}

/// Depth-first by sibling index, two spaces of indent per level.
pub fn tree_text<'a>(records: impl IntoIterator<Item = &'a NodeRecord>) -> String {
    let mut rows: Vec<(Path, &NodeRecord)> = records.into_iter().map(|r| (r.path(), r)).collect();
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out = String::new();
    for (path, rec) in rows {
        let indent = "  ".repeat(path.len() - 1);
        let _ = writeln!(out, "{indent}{path}  {}", escape_payload(rec.payload()));
    }
    out
}

pub fn stats_text(s: &StoreStats) -> String {
    format!(
        "nodes: {}\nmax_depth: {}\nmax_numerator: {}\nmax_numerator_bits: {}\nmax_key_bytes: {}\n",
        s.nodes, s.max_depth, s.max_numerator, s.max_numerator_bits, s.max_key_bytes
    )
}
