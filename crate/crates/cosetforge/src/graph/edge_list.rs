use super::{Color, ColoredBipartiteGraph};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Parses the plain edge-list format: one `u v` pair per line, optional
/// `c v black|white` color lines, `#` comments, blank lines ignored.
pub fn parse_edge_list(contents: &str) -> Result<ColoredBipartiteGraph> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut coloring: BTreeMap<usize, Color> = BTreeMap::new();
    for (lineno, raw) in contents.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: &str| Error::Parse(format!("line {}: {msg}: `{line}`", lineno + 1));
        match tokens.as_slice() {
            ["c", v, color] => {
                let v: usize = v.parse().map_err(|_| bad("bad vertex id"))?;
                let c = match *color {
                    "black" => Color::Black,
                    "white" => Color::White,
                    _ => return Err(bad("color must be `black` or `white`")),
                };
                if coloring.insert(v, c).is_some_and(|old| old != c) {
                    return Err(bad("vertex colored twice"));
                }
            }
            [u, v] => {
                let u: usize = u.parse().map_err(|_| bad("bad vertex id"))?;
                let v: usize = v.parse().map_err(|_| bad("bad vertex id"))?;
                edges.push((u, v));
            }
            _ => return Err(bad("expected `u v` or `c v black|white`")),
        }
    }
    let coloring = if coloring.is_empty() { None } else { Some(&coloring) };
    ColoredBipartiteGraph::from_edge_list(&edges, coloring, None)
}

/// Writes the edge-list format with explicit color lines.
pub fn write_edge_list(g: &ColoredBipartiteGraph) -> String {
    let mut out = String::new();
    for v in 0..g.n() {
        let color = match g.color(v) {
            Color::Black => "black",
            Color::White => "white",
        };
        out.push_str(&format!("c {v} {color}\n"));
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
