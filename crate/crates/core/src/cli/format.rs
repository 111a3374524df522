//! Line-oriented instance format:
//!
//! ```text
//! # comment
//! # k 2
//! # ell 5
//! p mve <n> <m>
//! s <id>
//! t <id>
//! e <u> <v> <length>
//! ```
//!
//! Ids are 1-indexed. The `# k` and `# ell` comments are optional defaults
//! for the budget and target; command-line flags override them.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::generators::TripartiteGraph;
use crate::graph::Graph;
use crate::instance::Instance;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("malformed line: {0}")]
    Syntax(String),
    #[error("missing or repeated header \"p mve <n> <m>\"")]
    Header,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop")]
    SelfLoop,
    #[error("duplicate edge")]
    DuplicateEdge,
    #[error("edge length must be positive")]
    NonPositiveLength,
    #[error("terminal given twice")]
    DuplicateTerminal,
    #[error("missing terminal line \"{0} <id>\"")]
    MissingTerminal(char),
    #[error("s and t are the same vertex")]
    SameTerminals,
    #[error("header announces {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
}

impl ParseErrorKind {
    pub fn code(&self) -> &'static str {
        match self {
            ParseErrorKind::Syntax(_) => "Syntax",
            ParseErrorKind::Header => "Header",
            ParseErrorKind::VertexOutOfRange(_) => "VertexOutOfRange",
            ParseErrorKind::SelfLoop => "SelfLoop",
            ParseErrorKind::DuplicateEdge => "DuplicateEdge",
            ParseErrorKind::NonPositiveLength => "NonPositiveLength",
            ParseErrorKind::DuplicateTerminal => "DuplicateTerminal",
            ParseErrorKind::MissingTerminal(_) => "MissingTerminal",
            ParseErrorKind::SameTerminals => "SameTerminals",
            ParseErrorKind::EdgeCount { .. } => "EdgeCount",
        }
    }
}

/// A parse failure at a 1-indexed line (0 when it concerns the whole file).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

/// Contents of an instance file before budget and target are fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub graph: Graph,
    pub s: usize,
    pub t: usize,
    pub k: Option<usize>,
    pub ell: Option<u64>,
}

impl Document {
    /// Builds the instance; missing values fall back to the file's hints,
    /// then to `k = 0`, `ell = 1`.
    pub fn instance(&self, k: Option<usize>, ell: Option<u64>) -> crate::Result<Instance> {
        let k = k.or(self.k).unwrap_or(0);
        let ell = ell.or(self.ell).unwrap_or(1);
        Instance::new(self.graph.clone(), self.s, self.t, k, ell)
    }
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn number<T: std::str::FromStr>(line: usize, token: Option<&str>, what: &str) -> Result<T, ParseError> {
    let token = token.ok_or_else(|| err(line, ParseErrorKind::Syntax(format!("missing {what}"))))?;
    token
        .parse()
        .map_err(|_| err(line, ParseErrorKind::Syntax(format!("{what} {token:?} is not a number"))))
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let (mut s, mut t) = (None, None);
    let (mut k, mut ell) = (None, None);
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    let mut seen = HashSet::new();

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let mut tokens = raw.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        if let Some(rest) = tag.strip_prefix('#') {
            // hints look like "# k 3"; anything else is a plain comment
            let mut words = std::iter::once(rest).filter(|w| !w.is_empty()).chain(tokens);
            match (words.next(), words.next(), words.next()) {
                (Some("k"), Some(v), None) => k = v.parse().ok().or(k),
                (Some("ell"), Some(v), None) => ell = v.parse().ok().or(ell),
                _ => {}
            }
            continue;
        }
        let vertex = |tok: Option<&str>, what: &str, n: usize| -> Result<usize, ParseError> {
            let v: usize = number(line, tok, what)?;
            if v == 0 || v > n {
                return Err(err(line, ParseErrorKind::VertexOutOfRange(v)));
            }
            Ok(v - 1)
        };
        match tag {
            "p" => {
                if header.is_some() || tokens.next() != Some("mve") {
                    return Err(err(line, ParseErrorKind::Header));
                }
                let n = number(line, tokens.next(), "vertex count")?;
                let m = number(line, tokens.next(), "edge count")?;
                header = Some((n, m));
            }
            "s" | "t" => {
                let (n, _) = header.ok_or_else(|| err(line, ParseErrorKind::Header))?;
                let v = vertex(tokens.next(), "terminal", n)?;
                let slot = if tag == "s" { &mut s } else { &mut t };
                if slot.replace(v).is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateTerminal));
                }
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| err(line, ParseErrorKind::Header))?;
                let u = vertex(tokens.next(), "endpoint", n)?;
                let v = vertex(tokens.next(), "endpoint", n)?;
                let length: i64 = number(line, tokens.next(), "length")?;
                if u == v {
                    return Err(err(line, ParseErrorKind::SelfLoop));
                }
                if length <= 0 {
                    return Err(err(line, ParseErrorKind::NonPositiveLength));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(err(line, ParseErrorKind::DuplicateEdge));
                }
                edges.push((u, v, length as u64));
            }
            other => return Err(err(line, ParseErrorKind::Syntax(format!("unknown line type {other:?}")))),
        }
        if tokens.next().is_some() {
            return Err(err(line, ParseErrorKind::Syntax("trailing tokens".into())));
        }
    }

    let (n, m) = header.ok_or_else(|| err(0, ParseErrorKind::Header))?;
    if edges.len() != m {
        return Err(err(0, ParseErrorKind::EdgeCount { expected: m, found: edges.len() }));
    }
    let s = s.ok_or_else(|| err(0, ParseErrorKind::MissingTerminal('s')))?;
    let t = t.ok_or_else(|| err(0, ParseErrorKind::MissingTerminal('t')))?;
    if s == t {
        return Err(err(0, ParseErrorKind::SameTerminals));
    }
    let graph = Graph::new(n, edges).expect("edges validated while parsing");
    Ok(Document { graph, s, t, k, ell })
}

/// Parses a file into an instance using its `# k` / `# ell` hints.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let doc = parse_document(text)?;
    Ok(doc.instance(None, None).expect("document already validated"))
}

/// Writes an instance, budget and target included as hints, so that
/// `parse_instance(&emit_instance(i)) == i`.
pub fn emit_instance(instance: &Instance) -> String {
    let g = &instance.graph;
    let mut out = String::new();
    let _ = writeln!(out, "# k {}", instance.k);
    let _ = writeln!(out, "# ell {}", instance.ell);
    let _ = writeln!(out, "p mve {} {}", g.vertex_count(), g.edge_count());
    let _ = writeln!(out, "s {}", instance.s + 1);
    let _ = writeln!(out, "t {}", instance.t + 1);
    for e in g.edges() {
        let _ = writeln!(out, "e {} {} {}", e.u + 1, e.v + 1, e.length);
    }
    out
}

/// Tripartite input of the vertex cover constructions:
///
/// ```text
/// p tri <n> <m>
/// c <id> <part 1..3>
/// e <u> <v>
/// ```
///
/// Every vertex needs exactly one `c` line.
pub fn parse_tripartite(text: &str) -> Result<TripartiteGraph, ParseError> {
    let mut n = None;
    let mut part: Vec<Option<u8>> = Vec::new();
    let mut pairs = Vec::new();
    let mut seen = HashSet::new();
    let mut expected_edges = 0;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let mut tokens = raw.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        if tag.starts_with('#') {
            continue;
        }
        let vertex = |tok: Option<&str>, n: usize| -> Result<usize, ParseError> {
            let v: usize = number(line, tok, "vertex")?;
            if v == 0 || v > n {
                return Err(err(line, ParseErrorKind::VertexOutOfRange(v)));
            }
            Ok(v - 1)
        };
        match (tag, n) {
            ("p", None) => {
                if tokens.next() != Some("tri") {
                    return Err(err(line, ParseErrorKind::Header));
                }
                let count: usize = number(line, tokens.next(), "vertex count")?;
                expected_edges = number(line, tokens.next(), "edge count")?;
                part = vec![None; count];
                n = Some(count);
            }
            ("c", Some(n)) => {
                let v = vertex(tokens.next(), n)?;
                let p: u8 = number(line, tokens.next(), "part")?;
                if !(1..=3).contains(&p) {
                    return Err(err(line, ParseErrorKind::Syntax(format!("part {p} not in 1..=3"))));
                }
                if part[v].replace(p - 1).is_some() {
                    return Err(err(line, ParseErrorKind::Syntax(format!("vertex {} coloured twice", v + 1))));
                }
            }
            ("e", Some(n)) => {
                let u = vertex(tokens.next(), n)?;
                let v = vertex(tokens.next(), n)?;
                if u == v {
                    return Err(err(line, ParseErrorKind::SelfLoop));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(err(line, ParseErrorKind::DuplicateEdge));
                }
                pairs.push((u, v));
            }
            _ => return Err(err(line, ParseErrorKind::Syntax(format!("unexpected line type {tag:?}")))),
        }
        if tokens.next().is_some() {
            return Err(err(line, ParseErrorKind::Syntax("trailing tokens".into())));
        }
    }
    let n = n.ok_or_else(|| err(0, ParseErrorKind::Header))?;
    if pairs.len() != expected_edges {
        return Err(err(0, ParseErrorKind::EdgeCount { expected: expected_edges, found: pairs.len() }));
    }
    let part = part
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| err(0, ParseErrorKind::Syntax(format!("vertex {} has no part", v + 1)))))
        .collect::<Result<Vec<u8>, _>>()?;
    let graph = Graph::unit(n, pairs).expect("edges validated while parsing");
    TripartiteGraph::new(graph, part).map_err(|e| err(0, ParseErrorKind::Syntax(e.to_string())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let inst = parse_instance("p mve 2 1\ns 1\nt 2\ne 1 2 1\n").unwrap();
        assert_eq!((inst.s, inst.t, inst.graph.edge_count()), (0, 1, 1));
        assert_eq!((inst.k, inst.ell), (0, 1));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let dup = "p mve 3 2\ns 1\nt 3\ne 1 2 1\ne 2 1 1\n";
        assert_eq!(parse_document(dup).unwrap_err(), err(5, ParseErrorKind::DuplicateEdge));
        let selfloop = "p mve 2 1\ns 1\nt 2\ne 1 1 1\n";
        assert_eq!(parse_document(selfloop).unwrap_err(), err(4, ParseErrorKind::SelfLoop));
        let zero = "# c\np mve 2 1\ns 1\nt 2\ne 1 2 0\n";
        assert_eq!(parse_document(zero).unwrap_err(), err(5, ParseErrorKind::NonPositiveLength));
        let same = "p mve 2 1\ns 1\nt 1\ne 1 2 1\n";
        assert_eq!(parse_document(same).unwrap_err().kind, ParseErrorKind::SameTerminals);
        let range = "p mve 2 1\ns 1\nt 3\n";
        assert_eq!(parse_document(range).unwrap_err(), err(3, ParseErrorKind::VertexOutOfRange(3)));
        let short = "p mve 2 2\ns 1\nt 2\ne 1 2 1\n";
        assert!(matches!(parse_document(short).unwrap_err().kind, ParseErrorKind::EdgeCount { .. }));
        assert_eq!(parse_document("e 1 2 1").unwrap_err(), err(1, ParseErrorKind::Header));
    }

    #[test]
    fn hints_and_round_trip() {
        let text = "#k 3\n# ell 7\n# free text here\np mve 3 2\ns 1\nt 3\ne 1 2 4\ne 2 3 1\n";
        let doc = parse_document(text).unwrap();
        assert_eq!((doc.k, doc.ell), (Some(3), Some(7)));
        let inst = doc.instance(None, Some(9)).unwrap();
        assert_eq!((inst.k, inst.ell), (3, 9));
        assert_eq!(parse_instance(&emit_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn tripartite_files() {
        let tri = parse_tripartite("p tri 3 3\nc 1 1\nc 2 2\nc 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!((tri.part(0), tri.part(2)), (0, 2));
        assert!(parse_tripartite("p tri 2 1\nc 1 1\nc 2 1\ne 1 2\n").is_err());
        assert!(parse_tripartite("p tri 2 0\nc 1 1\n").is_err());
    }
}
