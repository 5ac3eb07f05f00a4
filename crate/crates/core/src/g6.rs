//! Bit-exact graph6 encoder and decoder (short form, n <= 62).
//!
//! Layout: one header byte `n + 63`, then the upper-triangle adjacency bits
//! x(0,1), x(0,2), x(1,2), x(0,3), ... packed big-endian into 6-bit groups,
//! each group offset by 63 into the printable range `?`..`~`. Padding bits in
//! the final group must be zero. Long-form headers (`~`, for n > 62) and
//! ">>graph6<<" prefixes are rejected, never silently handled: the pipeline's
//! maximum order is far below the short-form limit and a long header in a
//! list file signals corruption.

use thiserror::Error;

use crate::graph::Graph;

/// Largest order representable in short form.
pub const MAX_G6_ORDER: usize = 62;

const OFFSET: u8 = 63;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum G6Error {
    #[error("graph6 short form supports 1 <= n <= {MAX_G6_ORDER}, got {0}")]
    OrderTooLarge(usize),
    #[error("malformed graph6 header")]
    MalformedHeader,
    #[error("expected {expected} body bytes, got {actual}")]
    BadLength { expected: usize, actual: usize },
    #[error("nonzero padding bits")]
    NonzeroPadding,
    #[error("byte {byte:#04x} at position {pos} outside graph6 range")]
    CharOutOfRange { byte: u8, pos: usize },
}

/// Number of body bytes for an order-`n` graph: ceil(n(n-1)/2 / 6).
fn body_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

/// Encodes a graph in graph6 short form.
pub fn encode(g: &Graph) -> Result<String, G6Error> {
    let n = g.n();
    if n > MAX_G6_ORDER {
        return Err(G6Error::OrderTooLarge(n));
    }
    let mut out = Vec::with_capacity(1 + body_len(n));
    out.push(n as u8 + OFFSET);
    let mut group = 0u8;
    let mut filled = 0u8;
    for v in 1..n {
        for u in 0..v {
            group = (group << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(group + OFFSET);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + OFFSET);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Decodes a graph6 short-form string; exact inverse of [`encode`].
pub fn decode(s: &str) -> Result<Graph, G6Error> {
    let bytes = s.as_bytes();
    if let Some((pos, &byte)) = bytes
        .iter()
        .enumerate()
        .find(|&(_, &b)| !(OFFSET..=126).contains(&b))
    {
        return Err(G6Error::CharOutOfRange { byte, pos });
    }
    let (&header, body) = bytes.split_first().ok_or(G6Error::MalformedHeader)?;
    if header == 126 {
        // Long-form length marker; out of scope by design.
        return Err(G6Error::MalformedHeader);
    }
    let n = (header - OFFSET) as usize;
    if n == 0 {
        return Err(G6Error::MalformedHeader);
    }
    let expected = body_len(n);
    if body.len() != expected {
        return Err(G6Error::BadLength {
            expected,
            actual: body.len(),
        });
    }
    let mut g = Graph::new(n);
    let mut bits = body.iter().flat_map(|&b| {
        let group = b - OFFSET;
        (0..6).map(move |i| group >> (5 - i) & 1 == 1)
    });
    for v in 1..n {
        for u in 0..v {
            if bits.next().expect("body length checked") {
                g.add_edge(u, v);
            }
        }
    }
    if bits.any(|bit| bit) {
        return Err(G6Error::NonzeroPadding);
    }
    Ok(g)
}

/// Reads a list file: one graph6 string per line.
pub fn decode_lines(text: &str) -> Result<Vec<Graph>, G6Error> {
    text.lines().map(decode).collect()
}
