//! The `.hg` text format.
//!
//! First non-comment line is `r n`; each further non-comment line is one edge
//! as `r` space-separated vertex ids. `#` starts a comment. A trailing
//! comment of the form `# order: i1 i2 ...` optionally records an edge
//! ordering witnessing tightness and is validated on load.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError};
use crate::trees;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: duplicate edge")]
    DuplicateEdge { line: usize },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: HypergraphError },
    #[error("stored ordering is not a proper ordering (fails at position {0})")]
    BadStoredOrder(usize),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// A parsed `.hg` file: the graph plus the optional stored edge ordering.
#[derive(Debug, Clone)]
pub struct HgFile {
    pub graph: Hypergraph,
    pub order: Option<Vec<usize>>,
}

pub fn load_str(text: &str) -> Result<HgFile, LoadError> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw_edges: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut order: Option<Vec<usize>> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(list) = rest.trim().strip_prefix("order:") {
                let parsed: Result<Vec<usize>, _> =
                    list.split_whitespace().map(str::parse).collect();
                order = Some(parsed.map_err(|_| LoadError::Parse {
                    line: line_no,
                    msg: "malformed order comment".into(),
                })?);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let nums: Result<Vec<u64>, _> = line.split_whitespace().map(str::parse).collect();
        let nums = nums.map_err(|_| LoadError::Parse {
            line: line_no,
            msg: format!("expected integers, got {line:?}"),
        })?;
        match header {
            None => {
                if nums.len() != 2 {
                    return Err(LoadError::Parse {
                        line: line_no,
                        msg: "header must be `r n`".into(),
                    });
                }
                header = Some((nums[0] as usize, nums[1] as usize));
            }
            Some((r, _)) => {
                if nums.len() != r {
                    return Err(LoadError::Parse {
                        line: line_no,
                        msg: format!("edge must have {r} vertices"),
                    });
                }
                raw_edges.push((line_no, nums.into_iter().map(|v| v as u32).collect()));
            }
        }
    }

    let (r, n) = header.ok_or(LoadError::Parse { line: 1, msg: "missing `r n` header".into() })?;

    // Attribute duplicate-edge errors to the offending line.
    let mut seen: Vec<Vec<u32>> = Vec::new();
    for (line, e) in &raw_edges {
        let mut s = e.clone();
        s.sort_unstable();
        if seen.contains(&s) {
            return Err(LoadError::DuplicateEdge { line: *line });
        }
        seen.push(s);
    }

    let first_edge_line = raw_edges.first().map(|(l, _)| *l).unwrap_or(1);
    let graph = Hypergraph::new(r, n, raw_edges.into_iter().map(|(_, e)| e))
        .map_err(|source| LoadError::Graph { line: first_edge_line, source })?;

    if let Some(ord) = &order {
        match trees::is_proper_ordering(&graph, ord) {
            Ok(_) => {}
            Err(trees::OrderingRefutation::FailsAt { position }) => {
                return Err(LoadError::BadStoredOrder(position))
            }
            Err(trees::OrderingRefutation::NotPermutation) => {
                return Err(LoadError::BadStoredOrder(0))
            }
        }
    }

    Ok(HgFile { graph, order })
}

pub fn load(path: &Path) -> Result<HgFile, LoadError> {
    load_str(&fs::read_to_string(path)?)
}

/// Canonical text for a graph; `order` is appended as a trailing comment.
pub fn save_str(graph: &Hypergraph, order: Option<&[usize]>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", graph.uniformity(), graph.vertex_count());
    for e in graph.edges() {
        let words: Vec<String> = e.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", words.join(" "));
    }
    if let Some(ord) = order {
        let words: Vec<String> = ord.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "# order: {}", words.join(" "));
    }
    out
}

pub fn save(graph: &Hypergraph, order: Option<&[usize]>, path: &Path) -> Result<(), LoadError> {
    fs::write(path, save_str(graph, order))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_canonical() {
        let text = "# a comment\n3 5\n2 1 0\n0 1 3\n";
        let f = load_str(text).unwrap();
        assert_eq!(f.graph.edges(), &[vec![0, 1, 2], vec![0, 1, 3]]);
        let saved = save_str(&f.graph, None);
        let again = load_str(&saved).unwrap();
        assert_eq!(again.graph, f.graph);
        assert_eq!(save_str(&again.graph, None), saved);
    }

    #[test]
    fn duplicate_edges_error_with_line() {
        let text = "3 4\n0 1 2\n2 1 0\n";
        match load_str(text) {
            Err(LoadError::DuplicateEdge { line }) => assert_eq!(line, 3),
            other => panic!("expected duplicate error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_header_and_edges() {
        assert!(matches!(load_str(""), Err(LoadError::Parse { line: 1, .. })));
        assert!(matches!(load_str("3\n"), Err(LoadError::Parse { line: 1, .. })));
        assert!(matches!(load_str("3 4\n0 1\n"), Err(LoadError::Parse { line: 2, .. })));
        assert!(matches!(load_str("3 4\n0 1 x\n"), Err(LoadError::Parse { line: 2, .. })));
    }

    #[test]
    fn order_comment_roundtrip_and_validation() {
        let text = "3 5\n0 1 2\n0 1 3\n1 3 4\n# order: 0 1 2\n";
        let f = load_str(text).unwrap();
        assert_eq!(f.order, Some(vec![0, 1, 2]));

        let bad = "3 6\n0 1 2\n3 4 5\n# order: 0 1\n";
        assert!(matches!(load_str(bad), Err(LoadError::BadStoredOrder(_))));
    }

    #[test]
    fn tolerates_crlf_blanks_and_interleaved_comments() {
        let text = "# head\r\n3 5\r\n\r\n0 1 2\r\n# middle\n0 1 3\r\n";
        let f = load_str(text).unwrap();
        assert_eq!(f.graph.edges(), &[vec![0, 1, 2], vec![0, 1, 3]]);
    }
}
