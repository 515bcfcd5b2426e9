//! Text formats for graphs: a plain edge list and JSON.
//!
//! Edge list: first non-comment line is `n m`, followed by `m` lines `u v`
//! with 0-based ids. Everything after a `#` on a line is ignored.

use std::fmt::Write as _;

use crate::graph::{Graph, GraphBuilder, GraphError};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error("missing header line")]
    MissingHeader,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GraphFormat {
    Edgelist,
    Json,
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), FormatError> {
    let err = |msg: &str| FormatError::Parse {
        line,
        msg: msg.to_string(),
    };
    let mut it = text.split_whitespace();
    let a = it.next().ok_or_else(|| err("expected two integers"))?;
    let b = it.next().ok_or_else(|| err("expected two integers"))?;
    if it.next().is_some() {
        return Err(err("trailing tokens"));
    }
    let a = a.parse().map_err(|_| err("not a non-negative integer"))?;
    let b = b.parse().map_err(|_| err("not a non-negative integer"))?;
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let (n, m) = parse_pair(hline, header)?;
    let mut b = GraphBuilder::new(n);
    let mut found = 0;
    for (line, l) in lines {
        let (u, v) = parse_pair(line, l)?;
        b.try_add_edge(u, v)
            .map_err(|source| FormatError::Graph { line, source })?;
        found += 1;
    }
    if found != m {
        return Err(FormatError::EdgeCount { declared: m, found });
    }
    Ok(b.build())
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(text)?)
    } else {
        parse_edge_list(text)
    }
}

pub fn write_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Edgelist => write_edge_list(g),
        GraphFormat::Json => serde_json::to_string(g).expect("graph serializes"),
    }
}
