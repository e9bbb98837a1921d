//! Edge-list text format and graph6.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with `0 <= u < v < n`.
//! graph6: the header-less variant, upper-triangle bits in column order
//! `(0,1), (0,2), (1,2), (0,3), ...`, packed big-endian into 6-bit groups offset by 63.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

const GRAPH6_HEADER: &str = ">>graph6<<";

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.to_edge_list() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (header_no, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header line \"n m\"".into(),
    })?;
    let (n, m) = parse_pair(header, header_no + 1)?;
    if n == 0 {
        return Err(Error::Parse {
            line: header_no + 1,
            msg: "vertex count must be at least 1".into(),
        });
    }
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_no + 1;
    for (no, line) in lines {
        let line_no = no + 1;
        last_line = line_no;
        let (u, v) = parse_pair(line, line_no)?;
        if u >= n || v >= n {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("vertex out of range for n = {n}"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("self-loop at vertex {u}"),
            });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: last_line,
            msg: format!("header declares {m} edges but {} were listed", edges.len()),
        });
    }
    Graph::from_edge_list(n, &edges)
}

fn parse_pair(line: &str, line_no: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line: line_no,
            msg: "expected two integers".into(),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("not a nonnegative integer: {tok:?}"),
        })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line: line_no,
            msg: "trailing tokens".into(),
        });
    }
    Ok((a, b))
}

fn encode_size(n: usize, out: &mut String) {
    let push = |out: &mut String, value: usize, groups: u32| {
        for g in (0..groups).rev() {
            out.push((((value >> (6 * g)) & 63) as u8 + 63) as char);
        }
    };
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        push(out, n, 3);
    } else {
        out.push_str("~~");
        push(out, n, 6);
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        acc <<= 6 - filled;
        out.push((acc + 63) as char);
    }
    out
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let s = text.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b} outside the printable range 63..=126")));
    }
    let digits = |from: usize, count: usize| -> Result<usize> {
        let slice = bytes
            .get(from..from + count)
            .ok_or_else(|| Error::Graph6("truncated size field".into()))?;
        Ok(slice.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
    };
    let (n, offset) = match bytes {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, 126, ..] => (digits(2, 6)?, 8),
        [126, ..] => (digits(1, 3)?, 4),
        [b, ..] => ((b - 63) as usize, 1),
    };
    if n == 0 {
        return Err(Error::Graph6("graphs here need at least one vertex".into()));
    }
    let nbits = n * (n - 1) / 2;
    let expected = nbits.div_ceil(6);
    let body = &bytes[offset..];
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let bit = |idx: usize| (body[idx / 6] - 63) >> (5 - idx % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(idx) {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    for pad in nbits..expected * 6 {
        if bit(pad) {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Graph::from_edge_list(n, &edges)
}
