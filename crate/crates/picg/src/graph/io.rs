//! Graph serialization: edge-list CSV and Pajek.

use std::io::{self, BufRead, Write};

use super::MultiGraph;

/// CSV with header `u,v`, one row per edge, decimal ids, in the graph's
/// internal edge order (deterministic; subdivision reorders by swap-remove).
pub fn write_edge_list_csv<W: Write>(g: &MultiGraph, mut w: W) -> io::Result<()> {
    writeln!(w, "u,v")?;
    for &(u, v) in g.edges() {
        writeln!(w, "{u},{v}")?;
    }
    Ok(())
}

/// Reads an edge-list CSV produced by [`write_edge_list_csv`].
///
/// The vertex count is `max id + 1` unless `n` supplies it explicitly
/// (isolated vertices do not appear in the edge list).
pub fn read_edge_list_csv<R: BufRead>(r: R, n: Option<usize>) -> io::Result<MultiGraph> {
    let mut edges = Vec::new();
    let mut max_id = None;
    for (lineno, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if lineno == 0 || line.is_empty() {
            // header row
            continue;
        }
        let mut cols = line.split(',');
        let parse = |field: Option<&str>| -> io::Result<usize> {
            field
                .map(str::trim)
                .and_then(|f| f.parse().ok())
                .ok_or_else(|| {
                    io::Error::new(
                        io::ErrorKind::InvalidData,
                        format!("line {}: expected `u,v` with integer ids", lineno + 1),
                    )
                })
        };
        let u = parse(cols.next())?;
        let v = parse(cols.next())?;
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let n = n.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    MultiGraph::from_edges(n, &edges)
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e.to_string()))
}

/// Pajek .net: `*Vertices n`, 1-based labeled vertices, then `*Edges` rows;
/// parallel edges repeat.
pub fn write_pajek<W: Write>(g: &MultiGraph, mut w: W) -> io::Result<()> {
    writeln!(w, "*Vertices {}", g.n())?;
    for v in 0..g.n() {
        writeln!(w, "{} \"v{}\"", v + 1, v + 1)?;
    }
    writeln!(w, "*Edges")?;
    for &(u, v) in g.edges() {
        writeln!(w, "{} {}", u + 1, v + 1)?;
    }
    Ok(())
}
