//! The graph6 text encoding.
//!
//! A graph is written as `N(n)` followed by the upper triangle of its
//! adjacency matrix in column order (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed
//! six bits per printable byte with an offset of 63.

use crate::error::{Error, Result};
use crate::graph::DenseGraph;

pub const HEADER: &str = ">>graph6<<";

const MAX_N: usize = 68_719_476_735;

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn encode(g: &DenseGraph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        location: format!("byte {offset}"),
        message: message.into(),
    }
}

/// Decodes one graph6 line. A leading `>>graph6<<` header is accepted and a
/// trailing newline is ignored.
pub fn decode(s: &str) -> Result<DenseGraph> {
    let body = s.trim_end_matches(['\n', '\r']);
    let (skip, body) = match body.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, body),
    };
    let bytes = body.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(skip + i, format!("byte {b:#04x} outside the graph6 range")));
        }
    }
    let six = |i: usize| -> Result<usize> {
        bytes
            .get(i)
            .map(|&b| (b - 63) as usize)
            .ok_or_else(|| err(skip + i, "truncated vertex count"))
    };
    let (n, mut pos) = if bytes.first() == Some(&126) {
        if bytes.get(1) == Some(&126) {
            let mut n = 0;
            for i in 2..8 {
                n = (n << 6) | six(i)?;
            }
            (n, 8)
        } else {
            let mut n = 0;
            for i in 1..4 {
                n = (n << 6) | six(i)?;
            }
            (n, 4)
        }
    } else {
        (six(0)?, 1)
    };
    if n > MAX_N {
        return Err(err(skip, "vertex count too large"));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if bytes.len() - pos != need {
        return Err(err(
            skip + pos,
            format!("expected {need} data bytes for n={n}, found {}", bytes.len() - pos),
        ));
    }
    let mut g = DenseGraph::empty(n);
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = bytes[pos + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    pos += need;
    if bits % 6 != 0 {
        let last = bytes[pos - 1] - 63;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(err(skip + pos - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Decodes every nonblank line of a graph6 file.
pub fn decode_lines(text: &str) -> Result<Vec<DenseGraph>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        out.push(decode(line).map_err(|e| match e {
            Error::Parse { location, message } => Error::Parse {
                location: format!("line {}, {location}", lineno + 1),
                message,
            },
            other => other,
        })?);
    }
    Ok(out)
}
