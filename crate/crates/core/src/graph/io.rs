//! Edge-list, graph6 and DOT serialization.

use std::fmt::Write as _;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

/// Largest vertex count graph6 can encode with the short or 4-byte header.
pub const GRAPH6_MAX_VERTICES: usize = 258_047;

/// Parses the edge-list format: optional `# vertices=<V>` header, one
/// `u v` pair per line, `#` comments ignored.
pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<usize> = None;
    let mut header_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(value) = comment.trim().strip_prefix("vertices=") {
                let v = value.trim().parse::<usize>().map_err(|e| Error::Parse {
                    line: line_no,
                    message: format!("bad vertex count `{}`: {e}", value.trim()),
                })?;
                if declared.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "repeated vertices header".into(),
                    });
                }
                declared = Some(v);
                header_line = line_no;
            }
            continue;
        }
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected `u v`, found {} fields", fields.len()),
            });
        }
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|e| Error::Parse {
                line: line_no,
                message: format!("bad vertex id `{s}`: {e}"),
            })
        };
        let (u, v) = (parse(fields[0])?, parse(fields[1])?);
        if u == v {
            return Err(Error::Parse {
                line: line_no,
                message: format!("self-loop at {u}"),
            });
        }
        if let Some(n) = declared {
            if u.max(v) >= n {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("vertex {} exceeds declared count {n}", u.max(v)),
                });
            }
        }
        max_id = Some(max_id.map_or(u.max(v), |m: usize| m.max(u).max(v)));
        edges.push((u, v));
    }
    let n = declared.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    if let Some(m) = max_id.filter(|&m| m >= n) {
        return Err(Error::Parse {
            line: header_line,
            message: format!("vertex {m} exceeds declared count {n}"),
        });
    }
    Graph::new(n, edges)
}

/// Writes the header and edges in canonical order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + g.edge_count() * 12);
    let _ = writeln!(out, "# vertices={}", g.vertex_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Encodes a graph as a graph6 line, including the trailing newline.
pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.vertex_count();
    if n > GRAPH6_MAX_VERTICES {
        return Err(Error::Graph6(format!(
            "{n} vertices exceeds the supported maximum {GRAPH6_MAX_VERTICES}"
        )));
    }
    let mut bytes = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else {
        bytes.push(126);
        for shift in [12, 6, 0] {
            bytes.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                bytes.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push((acc << (6 - filled)) + 63);
    }
    let mut s = String::from_utf8(bytes).expect("graph6 bytes are ASCII");
    s.push('\n');
    Ok(s)
}

/// Decodes one graph6 line. A leading `>>graph6<<` marker and trailing
/// whitespace are accepted.
pub fn read_graph6(text: &str) -> Result<Graph> {
    let s = text.trim_end();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b} outside 63..=126")));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, 126, ..] => {
            return Err(Error::Graph6(format!(
                "8-byte size header: more than {GRAPH6_MAX_VERTICES} vertices"
            )))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated size header".into()));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
            (n, &rest[3..])
        }
        [first, rest @ ..] => (usize::from(first - 63), rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let pad = (body[bits / 6] - 63) & ((1 << (6 - bits % 6)) - 1);
        if pad != 0 {
            return Err(Error::Graph6("non-zero padding bits".into()));
        }
    }
    Graph::new(n, edges)
}

/// Undirected DOT; color classes become `fillcolor` indices in a 12-color scheme.
pub fn write_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    match g.colors() {
        Some(colors) => {
            out.push_str("  node [style=filled, colorscheme=set312];\n");
            for (v, c) in colors.iter().enumerate() {
                let _ = writeln!(out, "  {v} [fillcolor={}];", c % 12 + 1);
            }
        }
        None => {
            for v in 0..g.vertex_count() {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

/// Reads a graph file, choosing graph6 for `.g6`/`.graph6` and the edge-list
/// format otherwise.
pub fn read_graph_file(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6") | Some("graph6") => read_graph6(&text),
        _ => read_edge_list(&text),
    }
}
