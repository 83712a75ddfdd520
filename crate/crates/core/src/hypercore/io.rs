//! Canonical line-oriented text format.
//!
//! ```text
//! H <n> <m>
//! <weight> <k> <v1> ... <vk>      (m lines, 0-based vertices)
//! ```
//!
//! `#` starts a comment. The writer emits edges in id order with ascending
//! vertices and weights in shortest round-trip decimal form (`1` for unit
//! weight), so `write(read(write(h)))` is byte-identical to `write(h)`.

use std::io::{BufRead, Write};

use super::{EdgeId, Hyperedge, Hypergraph};
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn read_hypergraph<R: BufRead>(reader: R) -> Result<Hypergraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let Some((n, m)) = header else {
            if toks.len() != 3 || toks[0] != "H" {
                return Err(parse_err(lineno, "expected header `H <n> <m>`"));
            }
            let n = toks[1].parse().map_err(|_| parse_err(lineno, "bad vertex count"))?;
            let m = toks[2].parse().map_err(|_| parse_err(lineno, "bad edge count"))?;
            header = Some((n, m));
            continue;
        };
        if edges.len() == m {
            return Err(parse_err(lineno, format!("more than the declared {m} edges")));
        }
        if toks.len() < 2 {
            return Err(parse_err(lineno, "expected `<weight> <k> <vertices...>`"));
        }
        let weight: f64 = toks[0].parse().map_err(|_| parse_err(lineno, "bad weight"))?;
        let k: usize = toks[1].parse().map_err(|_| parse_err(lineno, "bad edge size"))?;
        if toks.len() != 2 + k {
            return Err(parse_err(
                lineno,
                format!("edge declares {k} vertices but lists {}", toks.len() - 2),
            ));
        }
        let vs = toks[2..]
            .iter()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| parse_err(lineno, format!("bad vertex `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut uniq = vs.clone();
        uniq.sort_unstable();
        uniq.dedup();
        if uniq.len() != vs.len() && uniq.len() >= 2 {
            return Err(parse_err(lineno, "repeated vertex in edge"));
        }
        let e = Hyperedge::new(EdgeId(edges.len() as u64), n, &vs, weight).map_err(|e| match e {
            Error::VertexOutOfRange { .. } | Error::EdgeTooSmall(_) | Error::BadWeight(_) => {
                parse_err(lineno, e.to_string())
            }
            other => other,
        })?;
        edges.push(e);
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing header"))?;
    if edges.len() != m {
        return Err(parse_err(0, format!("declared {m} edges, found {}", edges.len())));
    }
    Hypergraph::from_edges(n, edges)
}

pub fn write_hypergraph<W: Write>(h: &Hypergraph, mut w: W) -> Result<()> {
    writeln!(w, "H {} {}", h.n(), h.m())?;
    let mut order: Vec<&Hyperedge> = h.edges().iter().collect();
    order.sort_by_key(|e| e.id());
    for e in order {
        write!(w, "{} {}", e.weight(), e.size())?;
        for v in e.vertices() {
            write!(w, " {v}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

pub fn to_canonical_string(h: &Hypergraph) -> String {
    let mut buf = Vec::new();
    write_hypergraph(h, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("canonical output is ASCII")
}

pub fn from_str(s: &str) -> Result<Hypergraph> {
    read_hypergraph(s.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reads_single_edge() {
        let h = from_str("H 3 1\n1 3 0 1 2\n").unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.edges()[0].vertices(), &[0, 1, 2]);
        assert_eq!(h.edges()[0].weight(), 1.0);
    }

    #[test]
    fn comments_and_blank_lines() {
        let h = from_str("# demo\nH 4 2 # header\n\n2.5 2 3 0\n1 2 1 2\n").unwrap();
        assert_eq!(h.m(), 2);
        assert_eq!(to_canonical_string(&h), "H 4 2\n2.5 2 0 3\n1 2 1 2\n");
    }

    #[test]
    fn rejects_bad_lines() {
        let err = from_str("H 3 1\n1 2 0 5\n").unwrap_err();
        assert!(err.to_string().contains("out of range"), "{err}");
        assert!(from_str("H 3 1\n0 2 0 1\n").is_err());
        assert!(from_str("H 3 1\n-1 2 0 1\n").is_err());
        assert!(from_str("H 3 1\n1 1 0\n").is_err());
        assert!(from_str("H 3 1\n1 3 0 1\n").is_err());
        assert!(from_str("H 3 2\n1 2 0 1\n").is_err());
        assert!(from_str("1 2 0 1\n").is_err());
        assert!(from_str("H 3 1\n1 2 1 1\n").is_err());
        assert!(from_str("H 3 1\n1 3 0 1 1\n").is_err());
    }

    proptest! {
        #[test]
        fn canonical_output_is_byte_stable(
            n in 2usize..9,
            raw in prop::collection::vec((prop::collection::vec(0usize..8, 2..5), 1u32..40), 0..12)
        ) {
            let edges: Vec<(Vec<usize>, f64)> = raw
                .into_iter()
                .map(|(vs, w)| (vs.into_iter().map(|v| v % n).collect::<Vec<_>>(), w as f64 / 4.0))
                .filter(|(vs, _)| { let mut u = vs.clone(); u.sort(); u.dedup(); u.len() >= 2 })
                .collect();
            let h = Hypergraph::new(n, edges).unwrap();
            let text = to_canonical_string(&h);
            let back = from_str(&text).unwrap();
            prop_assert_eq!(&back, &h);
            prop_assert_eq!(to_canonical_string(&back), text);
        }
    }
}
