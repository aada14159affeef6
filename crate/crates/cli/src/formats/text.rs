//! Line-based graph, embedding and labeling files.
//!
//! ```text
//! mwc-graph 1
//! k 3
//! nodes 4
//! terminals 0 1 2
//! edge 0 3 1/2
//! ```
//!
//! Embeddings use `mwc-embedding 1`, `k <int>` and one
//! `point <node> <c_1> ... <c_k>` line per node; labelings use
//! `mwc-labeling 1`, `k <int>` and `label <node> <terminal>` lines. Numbers
//! are decimal or `p/q`; `#` starts a comment.

use std::fmt::Write as _;

use mwc_core::graph::{Edge, Labeling, WeightedGraph};
use mwc_core::relaxation::Embedding;
use mwc_core::{Rational, Scalar, SimplexPoint};

use super::FormatError;

/// Number types readable from and writable to the line formats.
pub trait Token: Scalar {
    fn parse_token(s: &str) -> Option<Self>;
    fn write_token(&self) -> String;
}

impl Token for f64 {
    fn parse_token(s: &str) -> Option<Self> {
        if let Some((p, q)) = s.split_once('/') {
            let (p, q) = (p.trim().parse::<f64>().ok()?, q.trim().parse::<f64>().ok()?);
            return (q != 0.0).then(|| p / q);
        }
        s.parse::<f64>().ok().filter(|v| v.is_finite())
    }

    fn write_token(&self) -> String {
        format!("{self}")
    }
}

impl Token for Rational {
    fn parse_token(s: &str) -> Option<Self> {
        parse_rational(s)
    }

    fn write_token(&self) -> String {
        if self.is_integer() {
            format!("{}", self.numer())
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Exact value of `p/q`, an integer or a plain decimal (optionally with an
/// exponent); `None` when it does not fit.
pub fn parse_rational(s: &str) -> Option<Rational> {
    if let Some((p, q)) = s.split_once('/') {
        let (p, q) = (p.trim().parse::<i64>().ok()?, q.trim().parse::<i64>().ok()?);
        return (q != 0).then(|| Rational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(at) => (&s[..at], s[at + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let mut num: i64 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let mut scale = exp - frac.len() as i32;
    let mut den: i64 = 1;
    while scale > 0 {
        num = num.checked_mul(10)?;
        scale -= 1;
    }
    while scale < 0 {
        den = den.checked_mul(10)?;
        scale += 1;
    }
    if neg {
        num = -num;
    }
    Some(Rational::new(num, den))
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            iter: text.lines().enumerate(),
        }
    }
}

impl<'a> Iterator for Lines<'a> {
    /// 1-based line number and whitespace-separated fields.
    type Item = (usize, Vec<&'a str>);

    fn next(&mut self) -> Option<Self::Item> {
        for (n, line) in self.iter.by_ref() {
            let line = line.split('#').next().unwrap_or("");
            let fields: Vec<&str> = line.split_whitespace().collect();
            if !fields.is_empty() {
                return Some((n + 1, fields));
            }
        }
        None
    }
}

fn bad(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn int_field(line: usize, fields: &[&str], at: usize) -> Result<usize, FormatError> {
    fields
        .get(at)
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| bad(line, format!("expected an integer in field {}", at + 1)))
}

fn num_field<T: Token>(line: usize, fields: &[&str], at: usize) -> Result<T, FormatError> {
    let f = fields.get(at).ok_or_else(|| bad(line, "missing number"))?;
    T::parse_token(f).ok_or_else(|| bad(line, format!("cannot read number {f:?}")))
}

fn expect_header<'a>(lines: &mut Lines<'a>, magic: &str) -> Result<(), FormatError> {
    match lines.next() {
        Some((_, f)) if f == [magic, "1"] => Ok(()),
        Some((n, f)) => Err(bad(n, format!("expected header `{magic} 1`, found `{}`", f.join(" ")))),
        None => Err(bad(0, "empty file")),
    }
}

fn keyed_int(lines: &mut Lines<'_>, key: &str) -> Result<usize, FormatError> {
    match lines.next() {
        Some((n, f)) if f.len() == 2 && f[0] == key => int_field(n, &f, 1),
        Some((n, _)) => Err(bad(n, format!("expected `{key} <int>`"))),
        None => Err(bad(0, format!("missing `{key}` line"))),
    }
}

pub fn parse_graph<T: Token>(text: &str) -> Result<WeightedGraph<T>, FormatError> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "mwc-graph")?;
    let k = keyed_int(&mut lines, "k")?;
    let nodes = keyed_int(&mut lines, "nodes")?;
    let terminals = match lines.next() {
        Some((n, f)) if f[0] == "terminals" => {
            if f.len() != k + 1 {
                return Err(bad(n, format!("expected {k} terminals")));
            }
            (1..=k).map(|at| int_field(n, &f, at)).collect::<Result<Vec<_>, _>>()?
        }
        Some((n, _)) => return Err(bad(n, "expected `terminals` line")),
        None => return Err(bad(0, "missing `terminals` line")),
    };
    let mut edges = Vec::new();
    for (n, f) in lines {
        if f[0] != "edge" || f.len() != 4 {
            return Err(bad(n, "expected `edge <u> <v> <weight>`"));
        }
        edges.push(Edge {
            u: int_field(n, &f, 1)?,
            v: int_field(n, &f, 2)?,
            weight: num_field(n, &f, 3)?,
        });
    }
    Ok(WeightedGraph::new(k, nodes, terminals, edges)?)
}

pub fn write_graph<T: Token>(g: &WeightedGraph<T>) -> String {
    let mut s = String::from("mwc-graph 1\n");
    let _ = writeln!(s, "k {}", g.k());
    let _ = writeln!(s, "nodes {}", g.node_count());
    let t: Vec<String> = g.terminals().iter().map(|t| t.to_string()).collect();
    let _ = writeln!(s, "terminals {}", t.join(" "));
    for e in g.edges() {
        let _ = writeln!(s, "edge {} {} {}", e.u, e.v, e.weight.write_token());
    }
    s
}

pub fn parse_embedding<T: Token, W: Scalar>(text: &str, g: &WeightedGraph<W>) -> Result<Embedding<T>, FormatError> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "mwc-embedding")?;
    let k = keyed_int(&mut lines, "k")?;
    if k != g.k() {
        return Err(mwc_core::Error::DimensionMismatch { expected: g.k(), found: k }.into());
    }
    let mut points: Vec<Option<SimplexPoint<T>>> = vec![None; g.node_count()];
    for (n, f) in lines {
        if f[0] != "point" || f.len() != k + 2 {
            return Err(bad(n, format!("expected `point <node>` and {k} coordinates")));
        }
        let v = int_field(n, &f, 1)?;
        if v >= points.len() {
            return Err(bad(n, format!("node {v} out of range")));
        }
        if points[v].is_some() {
            return Err(bad(n, format!("node {v} listed twice")));
        }
        let coords = (2..k + 2).map(|at| num_field(n, &f, at)).collect::<Result<Vec<T>, _>>()?;
        points[v] = Some(SimplexPoint::new(coords)?);
    }
    let points = points
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or(mwc_core::Error::MissingPoint(v)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Embedding::new(g, points)?)
}

pub fn write_embedding<T: Token>(emb: &Embedding<T>) -> String {
    let mut s = String::from("mwc-embedding 1\n");
    let k = emb.points().first().map_or(0, |p| p.k());
    let _ = writeln!(s, "k {k}");
    for (v, p) in emb.points().iter().enumerate() {
        let c: Vec<String> = p.coords().iter().map(|x| x.write_token()).collect();
        let _ = writeln!(s, "point {v} {}", c.join(" "));
    }
    s
}

pub fn parse_labeling<W: Scalar>(text: &str, g: &WeightedGraph<W>) -> Result<Labeling, FormatError> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "mwc-labeling")?;
    let k = keyed_int(&mut lines, "k")?;
    if k != g.k() {
        return Err(mwc_core::Error::DimensionMismatch { expected: g.k(), found: k }.into());
    }
    let mut labels: Vec<Option<usize>> = vec![None; g.node_count()];
    for (n, f) in lines {
        if f[0] != "label" || f.len() != 3 {
            return Err(bad(n, "expected `label <node> <terminal>`"));
        }
        let v = int_field(n, &f, 1)?;
        if v >= labels.len() || labels[v].is_some() {
            return Err(bad(n, format!("node {v} out of range or repeated")));
        }
        labels[v] = Some(int_field(n, &f, 2)?);
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| bad(0, format!("node {v} has no label"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Labeling::new(g, labels)?)
}

pub fn write_labeling(k: usize, lab: &Labeling) -> String {
    let mut s = String::from("mwc-labeling 1\n");
    let _ = writeln!(s, "k {k}");
    for (v, l) in lab.labels().iter().enumerate() {
        let _ = writeln!(s, "label {v} {l}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const STAR: &str = "mwc-graph 1\n# a star\nk 3\nnodes 4\nterminals 0 1 2\nedge 0 3 1\nedge 1 3 1/2\nedge 2 3 0.25 # trailing\n";

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/6"), Some(Rational::new(1, 2)));
        assert_eq!(parse_rational("-0.125"), Some(Rational::new(-1, 8)));
        assert_eq!(parse_rational("2.5e-1"), Some(Rational::new(1, 4)));
        assert_eq!(parse_rational("12"), Some(Rational::from_integer(12)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("."), None);
        assert_eq!(parse_rational("1e30"), None);
    }

    #[test]
    fn graph_both_modes() {
        let g: WeightedGraph<Rational> = parse_graph(STAR).unwrap();
        assert_eq!(g.edges()[2].weight, Rational::new(1, 4));
        let back: WeightedGraph<Rational> = parse_graph(&write_graph(&g)).unwrap();
        assert_eq!(back, g);
        let f: WeightedGraph<f64> = parse_graph(STAR).unwrap();
        assert_eq!(f.edges()[1].weight, 0.5);
        assert_eq!(parse_graph::<f64>(&write_graph(&f)).unwrap(), f);
    }

    #[test]
    fn graph_errors() {
        assert!(matches!(parse_graph::<f64>("mwc-graph 2\n"), Err(FormatError::Syntax { line: 1, .. })));
        let bad_edge = STAR.replace("edge 1 3 1/2", "edge 1 3");
        assert!(matches!(parse_graph::<f64>(&bad_edge), Err(FormatError::Syntax { line: 7, .. })));
        let neg = STAR.replace("1/2", "-1");
        assert!(matches!(parse_graph::<f64>(&neg), Err(FormatError::Invalid(_))));
    }

    #[test]
    fn embedding_and_labeling() {
        let g: WeightedGraph<f64> = parse_graph(STAR).unwrap();
        let text = "mwc-embedding 1\nk 3\npoint 0 1 0 0\npoint 1 0 1 0\npoint 2 0 0 1\npoint 3 1/3 1/3 1/3\n";
        let e: Embedding<Rational> = parse_embedding(text, &g).unwrap();
        assert_eq!(e.points()[3].coords()[0], Rational::new(1, 3));
        assert_eq!(parse_embedding::<Rational, _>(&write_embedding(&e), &g).unwrap(), e);
        let f: Embedding<f64> = parse_embedding(text, &g).unwrap();
        assert_eq!(parse_embedding::<f64, _>(&write_embedding(&f), &g).unwrap(), f);
        let missing = "mwc-embedding 1\nk 3\npoint 0 1 0 0\n";
        assert!(parse_embedding::<f64, _>(missing, &g).is_err());
        let lab = Labeling::new(&g, vec![0, 1, 2, 1]).unwrap();
        assert_eq!(parse_labeling(&write_labeling(3, &lab), &g).unwrap(), lab);
    }
}
