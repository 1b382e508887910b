//! graph6 encoding: printable ASCII with the upper-triangle adjacency bits
//! taken column by column, six bits per character.

use crate::graph::{Graph, MAX_ORDER};
use crate::{Error, Result};

const HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_order(n, &mut out);

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
    // all bytes are in 63..=126
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 0x3f) as u8 + BIAS);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((n >> shift & 0x3f) as u8 + BIAS);
        }
    }
}

/// Decodes one graph6 line. An optional `>>graph6<<` header and a trailing
/// line terminator are accepted. Padding bits must be zero, so that decoding
/// followed by [`encode`] reproduces the input exactly.
pub fn parse(text: &str) -> Result<Graph> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let body = body.strip_suffix('\r').unwrap_or(body);
    let (skip, body) = match body.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, body),
    };
    let bytes = body.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::parse(
            skip + pos,
            format!(
                "byte 0x{:02x} outside the graph6 range 63..=126",
                bytes[pos]
            ),
        ));
    }

    let (n, mut pos) = decode_order(bytes).map_err(|(off, msg)| Error::parse(skip + off, msg))?;
    if n > MAX_ORDER {
        return Err(Error::ResourceLimit(format!(
            "graph6 order {n} exceeds {MAX_ORDER}"
        )));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    let have = bytes.len() - pos;
    if have != need {
        return Err(Error::parse(
            skip + pos.min(bytes.len()) + have.min(need),
            format!("order {n} needs {need} adjacency bytes, found {have}"),
        ));
    }

    let mut g = Graph::empty(n);
    let mut k = 0;
    let (mut i, mut j) = (0, 1);
    while k < nbits {
        let chunk = bytes[pos] - BIAS;
        for b in (0..6).rev() {
            if k == nbits {
                if chunk & ((1 << (b + 1)) - 1) != 0 {
                    return Err(Error::parse(skip + pos, "nonzero padding bits"));
                }
                break;
            }
            if chunk >> b & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
        pos += 1;
    }
    Ok(g)
}

fn decode_order(bytes: &[u8]) -> std::result::Result<(usize, usize), (usize, String)> {
    let value = |range: std::ops::Range<usize>| -> std::result::Result<usize, (usize, String)> {
        if bytes.len() < range.end {
            return Err((bytes.len(), "truncated order field".to_string()));
        }
        Ok(bytes[range]
            .iter()
            .fold(0, |acc, &b| acc << 6 | (b - BIAS) as usize))
    };
    match bytes {
        [] => Err((0, "empty graph6 string".to_string())),
        [126, 126, ..] => {
            let n = value(2..8)?;
            if n <= 258_047 {
                return Err((2, format!("order {n} must use the short form")));
            }
            Ok((n, 8))
        }
        [126, ..] => {
            let n = value(1..4)?;
            if n <= 62 {
                return Err((1, format!("order {n} must use the one-byte form")));
            }
            Ok((n, 4))
        }
        [b, ..] => Ok(((b - BIAS) as usize, 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::h_graph;

    #[test]
    fn known_encodings() {
        assert_eq!(encode(&Graph::complete(4)), "C~");
        assert_eq!(encode(&Graph::empty(5)), "D??");
        assert_eq!(encode(&Graph::empty(0)), "?");
        assert_eq!(encode(&Graph::empty(1)), "@");
        assert_eq!(encode(&Graph::complete(2)), "A_");
        // 5-cycle a-c, a-e, b-d, d-e pattern from the petgraph fixture
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
    }

    #[test]
    fn round_trip_h() {
        let h = h_graph(8, 3).unwrap();
        assert_eq!(parse(&encode(&h)).unwrap(), h);
    }

    #[test]
    fn long_order_form() {
        let g = Graph::complete(63);
        let s = encode(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(parse(&s).unwrap(), g);
    }

    #[test]
    fn header_and_newline() {
        assert_eq!(parse(">>graph6<<C~\n").unwrap(), Graph::complete(4));
        assert_eq!(parse("C~\r\n").unwrap(), Graph::complete(4));
    }

    #[test]
    fn malformed_inputs() {
        let offset = |s: &str| match parse(s) {
            Err(Error::Parse { offset, .. }) => offset,
            other => panic!("expected parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(offset(""), 0);
        assert_eq!(offset("C~~"), 2);
        assert_eq!(offset("C"), 1);
        assert_eq!(offset("C !"), 1);
        assert_eq!(offset("D?@"), 2); // padding bit set
        assert_eq!(offset("~?@"), 3); // truncated long form
        assert_eq!(offset("~??@"), 1); // short order in long form
        assert!(matches!(
            parse("~~?????@"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(parse("~~??@???"), Err(Error::ResourceLimit(_))));
    }
}
