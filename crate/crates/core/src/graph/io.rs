//! graph6 (short form, n < 63) and plain edge-list formats.

use super::Graph;
use crate::error::{Error, Result};

const MAX_SHORT_N: usize = 62;

fn format_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Format { offset, message: message.into() }
}

/// Decodes one graph6 string. Only the one-byte header form is supported.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    let header = *bytes.first().ok_or_else(|| format_err(0, "empty input"))?;
    if header == b'~' {
        return Err(format_err(0, "n >= 63 needs the long header form, which is not supported"));
    }
    if !(63..=126).contains(&header) {
        return Err(format_err(0, format!("invalid header byte {header:#04x}")));
    }
    let n = (header - 63) as usize;
    debug_assert!(n <= MAX_SHORT_N);
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[1..];
    if let Some(i) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(format_err(1 + i, format!("byte {:#04x} outside the graph6 range", body[i])));
    }
    if body.len() < nbytes {
        return Err(format_err(
            1 + body.len(),
            format!("truncated bit field: expected {nbytes} bytes, found {}", body.len()),
        ));
    }
    if body.len() > nbytes {
        return Err(format_err(1 + nbytes, "trailing bytes after the bit field"));
    }
    let mut g = Graph::empty(n);
    let mut bit = 0;
    for (i, &b) in body.iter().enumerate() {
        let chunk = b - 63;
        for shift in (0..6).rev() {
            let set = chunk >> shift & 1 == 1;
            if bit >= nbits {
                if set {
                    return Err(format_err(1 + i, "nonzero padding bits"));
                }
            } else if set {
                let (u, v) = upper_pair(bit);
                g.add_edge(u, v);
            }
            bit += 1;
        }
    }
    Ok(g)
}

/// Position `bit` in the column-major upper triangle: (0,1),(0,2),(1,2),(0,3),...
fn upper_pair(bit: usize) -> (usize, usize) {
    let mut v = 1;
    let mut start = 0;
    while start + v <= bit {
        start += v;
        v += 1;
    }
    (bit - start, v)
}

/// Encodes a graph with fewer than 63 vertices as graph6.
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.vertex_count();
    if n > MAX_SHORT_N {
        return Err(Error::Capability(format!("graph6 output supports n < 63, got {n}")));
    }
    let mut out = vec![(n + 63) as u8];
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
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
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// One graph6 string per non-empty line.
pub fn parse_graph6_corpus(text: &str) -> Result<Vec<Graph>> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(parse_graph6).collect()
}

/// Parses `n` on the first line followed by `u v` lines. Line numbers in
/// errors are 1-based.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first_line, header) = lines.next().ok_or(Error::Parse { line: 1, message: "missing vertex count".into() })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line: first_line,
        message: format!("expected a vertex count, found `{header}`"),
    })?;
    if n > super::MAX_VERTICES {
        return Err(Error::Capability(format!("{n} vertices exceeds the {}-vertex limit", super::MAX_VERTICES)));
    }
    let mut g = Graph::empty(n);
    for (line, l) in lines {
        let err = |message: String| Error::Parse { line, message };
        let mut parts = l.split_whitespace();
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err(format!("expected `u v`, found `{l}`")));
        };
        let parse = |s: &str| s.parse::<usize>().map_err(|_| err(format!("`{s}` is not a vertex")));
        let (u, v) = (parse(a)?, parse(b)?);
        if u >= n || v >= n {
            return Err(err(format!("vertex out of range 0..{n} in `{l}`")));
        }
        if u == v {
            return Err(err(format!("self-loop at vertex {u}")));
        }
        if g.has_edge(u, v) {
            return Err(err(format!("duplicate edge {u} {v}")));
        }
        g.add_edge(u, v);
    }
    Ok(g)
}

/// Edge-list corpora hold several graphs separated by blank lines.
pub fn parse_edge_list_corpus(text: &str) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    let mut block = String::new();
    for line in text.lines().chain(std::iter::once("")) {
        if line.trim().is_empty() {
            if !block.trim().is_empty() {
                graphs.push(parse_edge_list(&block)?);
            }
            block.clear();
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    Ok(graphs)
}
