//! Text formats: graph6, DOT and a plain edge list.
//!
//! graph6 follows the usual rules: the vertex count comes first (one byte
//! `n + 63` for `n <= 62`, otherwise byte 126 followed by three 6-bit groups
//! of `n`, each plus 63), then the upper triangle of the adjacency matrix
//! column by column, `(0,1), (0,2), (1,2), (0,3), ...`, packed six bits per
//! byte, most significant first, zero padded, each group plus 63. The
//! `>>graph6<<` header is accepted on input and never written.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count with a 4-byte graph6 size prefix.
pub const GRAPH6_MAX_VERTICES: usize = 258_047;

const HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.vertex_count();
    if n > GRAPH6_MAX_VERTICES {
        return Err(Error::Parameter(format!(
            "graph6 output limited to {GRAPH6_MAX_VERTICES} vertices"
        )));
    }
    let mut out: Vec<u8> = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|b| b as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let body = text.trim();
    let body = body.strip_prefix(HEADER).unwrap_or(body).as_bytes();
    if let Some(&bad) = body.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("invalid graph6 byte {bad}")));
    }
    let (n, rest) = match body {
        [] => return Err(Error::Parse("empty graph6 input".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Parse("truncated graph6 size".into()));
            }
            let n = rest[..6]
                .iter()
                .fold(0usize, |a, &b| a << 6 | (b - 63) as usize);
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Parse("truncated graph6 size".into()));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |a, &b| a << 6 | (b - 63) as usize);
            (n, &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if rest.len() != bits.div_ceil(6) {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {} for {n} vertices",
            rest.len(),
            bits.div_ceil(6)
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// DOT text. Nodes are named by subset labels when present.
pub fn to_dot(g: &Graph) -> String {
    let name = |v: usize| match g.label(v) {
        Some(l) => format!("\"{l}\""),
        None => v.to_string(),
    };
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  {};", name(v));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {} -- {};", name(u), name(v));
    }
    out.push_str("}\n");
    out
}

/// Vertex count on the first line, then one `u v` pair per line.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("empty edge list".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad vertex count: {e}")))?;
    let mut edges = Vec::new();
    for line in lines {
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|e| Error::Parse(format!("bad edge {line:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        match nums[..] {
            [u, v] => edges.push((u, v)),
            _ => return Err(Error::Parse(format!("expected two endpoints: {line:?}"))),
        }
    }
    Graph::from_edges(n, &edges)
}

/// Parse graph6 or an edge list, whichever `text` is.
///
/// The first character decides: an edge list starts with a decimal digit,
/// which graph6 never does.
pub fn parse_graph(text: &str) -> Result<Graph> {
    match text.trim_start().chars().next() {
        Some(c) if c.is_ascii_digit() || c == '#' => from_edge_list(text),
        Some(_) => from_graph6(text),
        None => Err(Error::Parse("empty input".into())),
    }
}
