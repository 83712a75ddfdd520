//! One-line-per-query transcripts: `V|E|N1|N2 <args> -> <answer>`.
//!
//! Vertex sets are comma-separated (`-` for the empty set), edge answers are
//! edge ids, and `NIL` marks an empty neighbor query. A failed edge sample on
//! an empty cut is written as `ERR`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypercore::EdgeId;

#[derive(Debug, Clone, PartialEq)]
pub enum Query {
    Value(Vec<usize>),
    Edge(Vec<usize>),
    Nbr1(usize),
    Nbr2(usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Answer {
    Value(f64),
    Edge(EdgeId),
    Nil,
    Err,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TranscriptEntry {
    pub query: Query,
    pub answer: Answer,
}

fn fmt_set(f: &mut fmt::Formatter<'_>, s: &[usize]) -> fmt::Result {
    if s.is_empty() {
        return write!(f, "-");
    }
    for (i, v) in s.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

impl fmt::Display for TranscriptEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.query {
            Query::Value(s) => {
                write!(f, "V ")?;
                fmt_set(f, s)?;
            }
            Query::Edge(s) => {
                write!(f, "E ")?;
                fmt_set(f, s)?;
            }
            Query::Nbr1(v) => write!(f, "N1 {v}")?,
            Query::Nbr2(u, v) => write!(f, "N2 {u} {v}")?,
        }
        write!(f, " -> ")?;
        match &self.answer {
            Answer::Value(x) => write!(f, "{x}"),
            Answer::Edge(id) => write!(f, "{}", id.0),
            Answer::Nil => write!(f, "NIL"),
            Answer::Err => write!(f, "ERR"),
        }
    }
}

fn parse_set(tok: &str) -> std::result::Result<Vec<usize>, String> {
    if tok == "-" {
        return Ok(Vec::new());
    }
    tok.split(',')
        .map(|t| t.parse().map_err(|_| format!("bad vertex `{t}`")))
        .collect()
}

impl FromStr for TranscriptEntry {
    type Err = String;

    fn from_str(line: &str) -> std::result::Result<Self, String> {
        let (lhs, rhs) = line.split_once(" -> ").ok_or("missing ` -> `")?;
        let toks: Vec<&str> = lhs.split_whitespace().collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| format!("bad vertex `{t}`"));
        let query = match toks.as_slice() {
            ["V", s] => Query::Value(parse_set(s)?),
            ["E", s] => Query::Edge(parse_set(s)?),
            ["N1", v] => Query::Nbr1(num(v)?),
            ["N2", u, v] => Query::Nbr2(num(u)?, num(v)?),
            _ => return Err(format!("unrecognized query `{lhs}`")),
        };
        let rhs = rhs.trim();
        let answer = match (&query, rhs) {
            (_, "NIL") => Answer::Nil,
            (_, "ERR") => Answer::Err,
            (Query::Value(_), x) => Answer::Value(x.parse().map_err(|_| format!("bad value `{x}`"))?),
            (_, x) => Answer::Edge(EdgeId(x.parse().map_err(|_| format!("bad edge id `{x}`"))?)),
        };
        Ok(TranscriptEntry { query, answer })
    }
}

pub fn render(entries: &[TranscriptEntry]) -> String {
    entries.iter().map(|e| format!("{e}\n")).collect()
}

pub fn parse(text: &str) -> Result<Vec<TranscriptEntry>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| l.parse().map_err(|msg| Error::Parse { line: i + 1, msg }))
        .collect()
}
