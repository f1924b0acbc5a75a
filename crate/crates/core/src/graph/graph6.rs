//! graph6 encoding.
//!
//! The upper triangle is read column by column, `(0,1), (0,2), (1,2),
//! (0,3), ...`, packed six bits per byte (most significant first), each
//! byte offset by 63. Orders up to 62 use a single header byte; 63 and 64
//! use the `~` form with three 6-bit bytes.

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n) / 12 + 1);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn parse_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        reason: reason.into(),
    }
}

/// Parses a single graph6 string. A leading `>>graph6<<` header and
/// trailing whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let mut start = 0;
    if text.starts_with(HEADER) {
        start = HEADER.len();
    }
    let bytes = text.trim_end().as_bytes();
    if bytes.len() <= start {
        return Err(parse_err(start, "missing order header"));
    }

    let (n, mut pos) = match bytes[start] {
        b'~' => {
            if bytes.get(start + 1) == Some(&b'~') {
                return Err(parse_err(start + 1, "8-byte order header exceeds the vertex cap"));
            }
            let mut n = 0usize;
            for j in 1..=3 {
                let b = *bytes
                    .get(start + j)
                    .ok_or_else(|| parse_err(start + j, "truncated order header"))?;
                if !(63..=126).contains(&b) {
                    return Err(parse_err(start + j, format!("invalid byte {b:#04x}")));
                }
                n = n << 6 | (b - 63) as usize;
            }
            (n, start + 4)
        }
        b @ 63..=125 => ((b - 63) as usize, start + 1),
        b => return Err(parse_err(start, format!("invalid order byte {b:#04x}"))),
    };
    if n > MAX_VERTICES {
        return Err(parse_err(start, format!("order {n} exceeds the {MAX_VERTICES}-vertex cap")));
    }

    let pairs = n * n.saturating_sub(1) / 2;
    let body_len = pairs.div_ceil(6);
    let body_end = pos + body_len;
    if bytes.len() < body_end {
        return Err(parse_err(bytes.len(), format!("truncated body: expected {body_len} bytes")));
    }
    if bytes.len() > body_end {
        return Err(parse_err(body_end, "trailing bytes after graph body"));
    }

    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    let mut word = 0u8;
    for v in 1..n {
        for u in 0..v {
            if bit.is_multiple_of(6) {
                let b = bytes[pos];
                if !(63..=126).contains(&b) {
                    return Err(parse_err(pos, format!("invalid byte {b:#04x}")));
                }
                word = b - 63;
                pos += 1;
            }
            if word >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(u, v);
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) && word & ((1u8 << (6 - bit % 6)) - 1) != 0 {
        return Err(parse_err(pos - 1, "non-zero padding bits"));
    }
    Ok(g)
}

/// Parses one graph per non-empty line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim();
        if !trimmed.is_empty() {
            out.push(parse_graph6(trimmed).map_err(|e| match e {
                Error::Parse { offset: o, reason } => Error::Parse {
                    offset: offset + o,
                    reason,
                },
                other => other,
            })?);
        }
        offset += line.len();
    }
    Ok(out)
}
