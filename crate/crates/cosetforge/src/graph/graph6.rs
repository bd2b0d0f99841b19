use super::{ColoredBipartiteGraph, SimpleGraph};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

/// Decodes one graph6 record (optional `>>graph6<<` prefix) and computes the
/// bipartition. The record's vertex order is preserved.
pub fn parse_graph6(text: &str) -> Result<ColoredBipartiteGraph> {
    let g = parse_graph6_plain(text)?;
    ColoredBipartiteGraph::with_computed_coloring(g, None)
}

/// Decodes one graph6 record without requiring bipartiteness.
pub fn parse_graph6_plain(text: &str) -> Result<SimpleGraph> {
    let record = text.strip_prefix(HEADER).unwrap_or(text).trim_end_matches(['\n', '\r']);
    let bytes = record.as_bytes();
    if bytes.is_empty() {
        return Err(Error::MalformedRecord("empty graph6 record".into()));
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(Error::MalformedRecord(format!(
                "byte {b:#04x} outside the graph6 alphabet"
            )));
        }
    }
    let (n, body) = decode_order(bytes)?;
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if body.len() != bytes_needed {
        return Err(Error::MalformedRecord(format!(
            "record for {n} vertices needs {bytes_needed} data bytes, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut bit_index = 0usize;
    // Upper triangle in column order: (0,1), (0,2), (1,2), (0,3), ...
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit_index / 6] - 63;
            let bit = (byte >> (5 - (bit_index % 6))) & 1;
            if bit == 1 {
                edges.push((i, j));
            }
            bit_index += 1;
        }
    }
    // Padding bits must be zero.
    while bit_index < bytes_needed * 6 {
        let byte = body[bit_index / 6] - 63;
        if (byte >> (5 - (bit_index % 6))) & 1 != 0 {
            return Err(Error::MalformedRecord("non-zero padding bits".into()));
        }
        bit_index += 1;
    }
    SimpleGraph::from_edges(n, &edges)
}

fn decode_order(bytes: &[u8]) -> Result<(usize, &[u8])> {
    if bytes[0] != 126 {
        return Ok(((bytes[0] - 63) as usize, &bytes[1..]));
    }
    if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Error::MalformedRecord("truncated 3-byte order".into()));
        }
        let n = ((bytes[1] - 63) as usize) << 12
            | ((bytes[2] - 63) as usize) << 6
            | (bytes[3] - 63) as usize;
        if n < 63 {
            return Err(Error::MalformedRecord("non-canonical order encoding".into()));
        }
        return Ok((n, &bytes[4..]));
    }
    if bytes.len() < 8 {
        return Err(Error::MalformedRecord("truncated 6-byte order".into()));
    }
    let mut n = 0usize;
    for &b in &bytes[2..8] {
        n = n << 6 | (b - 63) as usize;
    }
    if n < 258048 {
        return Err(Error::MalformedRecord("non-canonical order encoding".into()));
    }
    Ok((n, &bytes[8..]))
}

/// Standard graph6 encoding of the adjacency structure (colors are not
/// representable in graph6).
pub fn write_graph6(g: &SimpleGraph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258047 {
        out.push(126);
        out.push(63 + ((n >> 12) & 63) as u8);
        out.push(63 + ((n >> 6) & 63) as u8);
        out.push(63 + (n & 63) as u8);
    } else {
        out.push(126);
        out.push(126);
        for shift in (0..6).rev() {
            out.push(63 + ((n >> (6 * shift)) & 63) as u8);
        }
    }
    let bits_needed = n * n.saturating_sub(1) / 2;
    let mut acc = 0u8;
    let mut filled = 0u8;
    let mut bit_index = 0usize;
    for j in 1..n {
        for i in 0..j {
            acc <<= 1;
            if g.has_edge(i, j) {
                acc |= 1;
            }
            filled += 1;
            bit_index += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        acc <<= 6 - filled;
        out.push(63 + acc);
    }
    debug_assert_eq!(bit_index, bits_needed);
    String::from_utf8(out).expect("graph6 alphabet is ASCII")
}

/// Reads a whole graph6 file: one record per line, optional header line or
/// prefix, blank lines skipped. Returns per-record results so a bad record
/// does not sink the batch.
pub fn parse_graph6_file(contents: &str) -> Vec<Result<ColoredBipartiteGraph>> {
    let mut out = Vec::new();
    for (i, raw) in contents.lines().enumerate() {
        let mut line = raw.trim();
        if i == 0 {
            line = line.strip_prefix(HEADER).unwrap_or(line).trim();
        }
        if line.is_empty() {
            continue;
        }
        out.push(parse_graph6(line));
    }
    out
}
