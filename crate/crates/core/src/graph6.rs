//! graph6 encoding for graphs on at most 62 vertices.
//!
//! Header byte `63 + n`, then the upper triangle of the adjacency matrix in
//! column order (`(0,1), (0,2), (1,2), (0,3), ...`), six bits per byte, most
//! significant bit first, every byte offset by 63.

use crate::error::Graph6Error;
use crate::graph::Graph;

const BIAS: u8 = 63;
const MAX_N: usize = 62;

pub fn format_graph6(g: &Graph) -> String {
    String::from_utf8(encode(g)).expect("graph6 is ASCII")
}

pub(crate) fn encode(g: &Graph) -> Vec<u8> {
    let n = g.n();
    assert!(n <= MAX_N);
    let nbits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(1 + nbits.div_ceil(6));
    out.push(BIAS + n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    out
}

pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let (&head, body) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    if !(BIAS..=BIAS + MAX_N as u8).contains(&head) {
        return Err(Graph6Error::Header { offset: 0, byte: head });
    }
    let n = (head - BIAS) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    for (i, &b) in body.iter().enumerate() {
        if !(BIAS..=BIAS + 63).contains(&b) {
            return Err(Graph6Error::OutOfRange { offset: i + 1, byte: b });
        }
    }
    if body.len() < expected {
        return Err(Graph6Error::Truncated { offset: bytes.len(), expected: expected + 1 });
    }
    if body.len() > expected {
        return Err(Graph6Error::Trailing { offset: expected + 1 });
    }
    let bit = |k: usize| (body[k / 6] - BIAS) >> (5 - k % 6) & 1 == 1;
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[expected - 1] - BIAS;
        if last & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(Graph6Error::Padding { offset: expected });
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_decoded_examples() {
        // 'A' = 63 + 2; '_' = 63 + 0b100000, the single bit (0,1) set.
        assert_eq!(parse_graph6("A_").unwrap(), Graph::complete(2));
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1));
        assert_eq!(parse_graph6("?").unwrap(), Graph::null());
        assert_eq!(format_graph6(&Graph::complete(2)), "A_");
        // K3: bits (0,1),(0,2),(1,2) = 111000 -> 56 + 63 = 'w'.
        assert_eq!(format_graph6(&Graph::complete(3)), "Bw");
    }

    #[test]
    fn matches_petgraph_reference_string() {
        // Edges a-c, a-e, b-d, d-e on five vertices encode as "DQc".
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(format_graph6(&g), "DQc");
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(parse_graph6("~"), Err(Graph6Error::Header { offset: 0, byte: b'~' }));
        assert_eq!(parse_graph6(" "), Err(Graph6Error::Header { offset: 0, byte: b' ' }));
        assert_eq!(parse_graph6("C"), Err(Graph6Error::Truncated { offset: 1, expected: 2 }));
        assert_eq!(parse_graph6("A_?"), Err(Graph6Error::Trailing { offset: 2 }));
        assert_eq!(parse_graph6("B\x7f"), Err(Graph6Error::OutOfRange { offset: 1, byte: 0x7f }));
        // K2 with a stray padding bit.
        assert_eq!(parse_graph6("A`"), Err(Graph6Error::Padding { offset: 1 }));
    }
}
