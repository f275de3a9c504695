//! The graph6 interchange format, header-less, bit-exact.
//!
//! Byte 0 encodes the order: `n + 63` for `n <= 62`, otherwise `'~'` followed
//! by three bytes carrying `n` in 18 bits big-endian (this crate only accepts
//! `n <= 64`). The upper triangle of the adjacency matrix is read column by
//! column — x(0,1), x(0,2), x(1,2), x(0,3), … — packed big-endian into 6-bit
//! groups, zero-padded, each group offset by 63 into printable ASCII.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

/// Encodes a graph as a graph6 string.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(b'~');
        out.push(63 + ((n >> 12) & 0x3f) as u8);
        out.push(63 + ((n >> 6) & 0x3f) as u8);
        out.push(63 + (n & 0x3f) as u8);
    }
    let mut group = 0u8;
    let mut filled = 0u8;
    for v in 1..n {
        for u in 0..v {
            group <<= 1;
            if g.has_edge(u, v) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(63 + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        group <<= 6 - filled;
        out.push(63 + group);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 line. `line` is used for error reporting (1-based).
pub fn from_graph6_at(s: &str, line: usize) -> Result<Graph> {
    let bytes = s.as_bytes();
    let fail = |reason: &str| Error::Decode {
        line,
        reason: reason.to_string(),
    };
    if bytes.is_empty() {
        return Err(fail("empty line"));
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(fail(&format!("byte {b:#04x} outside graph6 range 63..=126")));
        }
    }
    let (n, mut pos) = if bytes[0] == b'~' {
        if bytes.len() < 4 {
            return Err(fail("truncated long-form order"));
        }
        if bytes[1] == b'~' {
            return Err(fail("8-byte order form implies n > 258047; unsupported"));
        }
        let n = (((bytes[1] - 63) as usize) << 12)
            | (((bytes[2] - 63) as usize) << 6)
            | ((bytes[3] - 63) as usize);
        (n, 4)
    } else {
        ((bytes[0] - 63) as usize, 1)
    };
    if n == 0 {
        return Err(fail("graphs must have at least one vertex"));
    }
    if n > MAX_VERTICES {
        return Err(Error::SizeLimit(format!(
            "line {line}: order {n} exceeds supported maximum {MAX_VERTICES}"
        )));
    }
    let triangle_bits = n * (n - 1) / 2;
    let expected_groups = triangle_bits.div_ceil(6);
    if bytes.len() - pos != expected_groups {
        return Err(fail(&format!(
            "expected {} data bytes for n={}, found {}",
            expected_groups,
            n,
            bytes.len() - pos
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut group = 0u8;
    let mut remaining = 0u8;
    for v in 1..n {
        for u in 0..v {
            if remaining == 0 {
                group = bytes[pos] - 63;
                pos += 1;
                remaining = 6;
            }
            if group & 0x20 != 0 {
                g.add_edge_mut(u, v)?;
            }
            group <<= 1;
            group &= 0x3f;
            remaining -= 1;
        }
    }
    if group != 0 {
        return Err(fail("nonzero padding bits"));
    }
    Ok(g)
}

/// Decodes one graph6 string.
pub fn from_graph6(s: &str) -> Result<Graph> {
    from_graph6_at(s, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, Graph};

    #[test]
    fn k3_is_bw() {
        let k3 = complete_graph(3).unwrap();
        assert_eq!(to_graph6(&k3), "Bw");
        assert_eq!(from_graph6("Bw").unwrap(), k3);
    }

    #[test]
    fn five_vertex_reference_encoding() {
        // Edges (0,2), (0,4), (1,3), (3,4) encode to "DQc".
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(from_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn single_vertex() {
        let k1 = complete_graph(1).unwrap();
        assert_eq!(to_graph6(&k1), "@");
        assert_eq!(from_graph6("@").unwrap(), k1);
    }

    #[test]
    fn long_form_orders() {
        for n in [63usize, 64] {
            let g = complete_graph(n).unwrap();
            let s = to_graph6(&g);
            assert!(s.starts_with('~'));
            assert_eq!(from_graph6(&s).unwrap(), g);
        }
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(from_graph6(""), Err(Error::Decode { .. })));
        assert!(matches!(from_graph6("B"), Err(Error::Decode { .. })));
        assert!(matches!(from_graph6("Bw "), Err(Error::Decode { .. })));
        // 'B' announces n=3 (one data byte); nonzero padding must be rejected.
        assert!(matches!(from_graph6("B\x7f"), Err(Error::Decode { .. })));
        // Long-form header announcing n = 65 is over the supported cap.
        let s: String = ['~', '?', '@', 'A'].iter().collect();
        assert!(matches!(from_graph6(&s), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn error_reports_line_number() {
        match from_graph6_at("!!", 17) {
            Err(Error::Decode { line, .. }) => assert_eq!(line, 17),
            other => panic!("unexpected: {other:?}"),
        }
    }
}
