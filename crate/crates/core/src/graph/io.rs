use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};

/// Reads a SNAP-style edge list: two whitespace-separated identifiers per
/// line, `#` comment lines and blank lines skipped.
pub fn load_edge_list(path: impl AsRef<Path>, directed: bool) -> Result<Graph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_edge_list(BufReader::new(file), directed, path)
}

/// [`load_edge_list`] over any reader; `origin` is only used in error messages.
pub fn read_edge_list<R: BufRead>(reader: R, directed: bool, origin: &Path) -> Result<Graph> {
    let mut builder = GraphBuilder::new(directed);
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(origin, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(u), Some(v), None) => builder.add_edge(u, v),
            _ => {
                return Err(Error::Parse {
                    path: origin.to_path_buf(),
                    line: i + 1,
                    message: format!("expected two node identifiers, found `{trimmed}`"),
                })
            }
        }
    }
    Ok(builder.build())
}

/// Writes the graph back as an edge list using the original identifiers.
/// Undirected edges are written once. A node without edges is written as a
/// self-loop line, which the loader turns back into an isolated node.
pub fn export_edge_list<W: Write>(graph: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(
        out,
        "# {} graph, nodes: {}, edges: {}",
        if graph.is_directed() { "directed" } else { "undirected" },
        graph.node_count(),
        graph.edge_count()
    )?;
    for u in graph.nodes() {
        if graph.out_degree(u) == 0 && graph.in_degree(u) == 0 {
            writeln!(out, "{0}\t{0}", graph.label(u))?;
        }
        for a in graph.out_arcs(u) {
            if graph.is_directed() || u < a.node {
                writeln!(out, "{}\t{}", graph.label(u), graph.label(a.node))?;
            }
        }
    }
    Ok(())
}
