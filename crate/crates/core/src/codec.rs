//! graph6, digraph6 and the JSON relational-system format.

use crate::graph::{Digraph, Graph, GraphError, RelSystem};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed length header")]
    BadHeader,
    #[error("byte {byte:#04x} at offset {offset} outside the printable range 63..=126")]
    ByteOutOfRange { offset: usize, byte: u8 },
    #[error("truncated input: expected {expected} data bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing garbage after {expected} data bytes")]
    TrailingGarbage { expected: usize },
    #[error("missing '&' prefix for digraph6")]
    MissingDigraphPrefix,
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

const G6_HEADER: &str = ">>graph6<<";
const D6_HEADER: &str = ">>digraph6<<";

fn encode_n(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

fn check_byte(offset: usize, byte: u8) -> Result<u8, ParseError> {
    if (63..=126).contains(&byte) {
        Ok(byte - 63)
    } else {
        Err(ParseError::ByteOutOfRange { offset, byte })
    }
}

/// Returns (n, offset of the first data byte).
fn decode_n(bytes: &[u8], start: usize) -> Result<(usize, usize), ParseError> {
    let b = |i: usize| -> Result<u8, ParseError> {
        let byte = *bytes.get(i).ok_or(ParseError::BadHeader)?;
        check_byte(i, byte)
    };
    let first = *bytes.get(start).ok_or(ParseError::BadHeader)?;
    if first != 126 {
        return Ok((b(start)? as usize, start + 1));
    }
    if bytes.get(start + 1) == Some(&126) {
        let mut n = 0usize;
        for i in 0..6 {
            n = (n << 6) | b(start + 2 + i)? as usize;
        }
        if n <= 258_047 {
            return Err(ParseError::BadHeader);
        }
        Ok((n, start + 8))
    } else {
        let mut n = 0usize;
        for i in 0..3 {
            n = (n << 6) | b(start + 1 + i)? as usize;
        }
        if n <= 62 {
            return Err(ParseError::BadHeader);
        }
        Ok((n, start + 4))
    }
}

fn pack_bits(bits: impl Iterator<Item = bool>, out: &mut Vec<u8>) {
    let mut acc = 0u8;
    let mut k = 0;
    for bit in bits {
        acc = (acc << 1) | bit as u8;
        k += 1;
        if k == 6 {
            out.push(acc + 63);
            acc = 0;
            k = 0;
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
}

fn unpack_bits(bytes: &[u8], start: usize, nbits: usize) -> Result<Vec<bool>, ParseError> {
    let expected = nbits.div_ceil(6);
    let data = &bytes[start..];
    if data.len() < expected {
        data.iter()
            .enumerate()
            .try_for_each(|(i, &b)| check_byte(start + i, b).map(|_| ()))?;
        return Err(ParseError::Truncated {
            expected,
            found: data.len(),
        });
    }
    if data.len() > expected {
        return Err(ParseError::TrailingGarbage { expected });
    }
    let mut bits = Vec::with_capacity(expected * 6);
    for (i, &byte) in data.iter().enumerate() {
        let v = check_byte(start + i, byte)?;
        for s in (0..6).rev() {
            bits.push((v >> s) & 1 == 1);
        }
    }
    bits.truncate(nbits);
    Ok(bits)
}

fn strip(text: &str, header: &str) -> String {
    let t = text.trim_end_matches(['\n', '\r']);
    t.strip_prefix(header).unwrap_or(t).to_string()
}

pub fn parse_g6(text: &str) -> Result<Graph, ParseError> {
    let s = strip(text, G6_HEADER);
    let bytes = s.as_bytes();
    let (n, start) = decode_n(bytes, 0)?;
    let bits = unpack_bits(bytes, start, n * n.saturating_sub(1) / 2)?;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

pub fn emit_g6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_n(n, &mut out);
    pack_bits(
        (1..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .map(|(i, j)| g.has_edge(i, j)),
        &mut out,
    );
    String::from_utf8(out).expect("printable ascii")
}

/// digraph6 input may contain loops, so the result allows them.
pub fn parse_d6(text: &str) -> Result<Digraph, ParseError> {
    let s = strip(text, D6_HEADER);
    let bytes = s.as_bytes();
    if bytes.first() != Some(&b'&') {
        return Err(ParseError::MissingDigraphPrefix);
    }
    let (n, start) = decode_n(bytes, 1)?;
    let bits = unpack_bits(bytes, start, n * n)?;
    let arcs = (0..n * n).filter(|&k| bits[k]).map(|k| (k / n, k % n));
    Ok(Digraph::from_arcs(n, arcs, true)?)
}

pub fn emit_d6(d: &Digraph) -> String {
    let n = d.n();
    let mut out = vec![b'&'];
    encode_n(n, &mut out);
    pack_bits((0..n * n).map(|k| d.has_arc(k / n, k % n)), &mut out);
    String::from_utf8(out).expect("printable ascii")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemJson {
    n: usize,
    colours: Vec<String>,
    arcs: BTreeMap<String, Vec<[usize; 2]>>,
}

pub fn parse_system(text: &str) -> Result<RelSystem, ParseError> {
    let js: SystemJson = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let arcs = js
        .arcs
        .into_iter()
        .map(|(c, l)| (c, l.into_iter().map(|[u, v]| (u, v)).collect()))
        .collect();
    Ok(RelSystem::from_named(js.n, js.colours, arcs)?)
}

/// Compact JSON with colour keys sorted and arcs sorted per colour.
pub fn emit_system(s: &RelSystem) -> String {
    let arcs = s
        .colours()
        .iter()
        .enumerate()
        .map(|(c, name)| (name.clone(), s.arcs(c).map(|(u, v)| [u, v]).collect()))
        .collect();
    let js = SystemJson {
        n: s.n(),
        colours: s.colours().to_vec(),
        arcs,
    };
    serde_json::to_string(&js).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g6_small() {
        assert_eq!(emit_g6(&Graph::empty(1)), "@");
        assert_eq!(emit_g6(&Graph::empty(0)), "?");
        // K3: bits 111 -> 111000 = 56 -> 'w'
        assert_eq!(emit_g6(&Graph::complete(3)), "Bw");
        assert_eq!(parse_g6("Bw").unwrap(), Graph::complete(3));
        assert_eq!(parse_g6(">>graph6<<Bw\n").unwrap(), Graph::complete(3));
    }

    #[test]
    fn g6_errors() {
        assert_eq!(parse_g6(""), Err(ParseError::BadHeader));
        assert_eq!(parse_g6("~?"), Err(ParseError::BadHeader));
        assert!(matches!(
            parse_g6("B "),
            Err(ParseError::ByteOutOfRange { offset: 1, .. })
        ));
        assert!(matches!(
            parse_g6("Bww"),
            Err(ParseError::TrailingGarbage { .. })
        ));
        assert!(matches!(parse_g6("D"), Err(ParseError::Truncated { .. })));
    }

    #[test]
    fn g6_large_header() {
        let g = Graph::cycle(70);
        let s = emit_g6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_g6(&s).unwrap(), g);
    }

    #[test]
    fn d6_roundtrip_with_loop() {
        let d = Digraph::from_arcs(3, [(0, 0), (0, 1), (2, 1)], true).unwrap();
        let s = emit_d6(&d);
        assert!(s.starts_with('&'));
        assert_eq!(parse_d6(&s).unwrap(), d);
        assert_eq!(parse_d6("Bw"), Err(ParseError::MissingDigraphPrefix));
    }

    #[test]
    fn system_json() {
        let s = RelSystem::new(3, vec![], vec![]).unwrap();
        assert_eq!(emit_system(&s), r#"{"n":3,"colours":[],"arcs":{}}"#);
        let s = RelSystem::new(1, vec!["a".into()], vec![vec![(0, 0)]]).unwrap();
        let t = emit_system(&s);
        assert_eq!(t, r#"{"n":1,"colours":["a"],"arcs":{"a":[[0,0]]}}"#);
        assert_eq!(parse_system(&t).unwrap(), s);
        assert!(parse_system(r#"{"n":1,"colours":[],"arcs":{"b":[]}}"#).is_err());
        assert!(parse_system(r#"{"n":1,"colours":["a"],"arcs":{"a":[[0,1]]}}"#).is_err());
    }
}
