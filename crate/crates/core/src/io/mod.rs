//! Text formats, feature-vector graphs and ratings hypergraphs.
//!
//! All readers take 0-based node indices, ignore blank lines and `#`
//! comments, and report the 1-based line number of malformed input. Graph
//! files may open with a `# nodes N` header so isolated trailing nodes
//! survive a round trip.

mod formats;
mod knn;
mod ratings;

pub use formats::{
    parse_ratio, read_edge_list, read_edge_list_real, read_hyperedge_list, read_labels, read_points, write_edge_list,
    write_edge_list_real, write_hyperedge_list, write_labels, write_points, ScaledGraph, ScaledHypergraph,
    SelectionDoc, TraceEntry,
};
pub use knn::{knn_graph, knn_unweighted, neighbor_lists, sigma_from_kth_distances, sigma_heuristic};
pub use ratings::{ratings_to_hypergraph, read_ratings, write_ratings, Rating, RatingsHypergraph};

use crate::error::{Error, Result};
use std::io::BufRead;

/// A data line or a node-count header.
pub(crate) enum Line<'a> {
    Nodes(usize),
    Data(&'a str),
}

/// Calls `f(line_number, line)` for every meaningful line.
pub(crate) fn for_each_line<R: BufRead>(reader: R, mut f: impl FnMut(usize, Line<'_>) -> Result<()>) -> Result<()> {
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let number = i + 1;
        let trimmed = line.trim_end_matches(['\r', '\n']);
        if let Some(comment) = trimmed.trim_start().strip_prefix('#') {
            let mut words = comment.split_whitespace();
            if words.next() == Some("nodes") {
                let n = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| parse_error(number, "malformed node-count header"))?;
                f(number, Line::Nodes(n))?;
            }
            continue;
        }
        if trimmed.trim().is_empty() {
            continue;
        }
        f(number, Line::Data(trimmed))?;
    }
    Ok(())
}

pub(crate) fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
