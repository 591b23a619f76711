//! Text formats: `.opg` drawings, edge lists and edge colorings.
//!
//! `.opg` layout, sections in this order:
//!
//! ```text
//! opg 1
//! v 6
//! e 0 1
//! x (0 3) (1 4) 0
//! r 0: 1 z(0 3) 5
//! ```
//!
//! Edge lists use the same `v` and `e` lines without the magic line.
//! `#` starts a comment anywhere on a line.

use std::fmt::Write as _;

use crate::drawing::{CrossingPair, OnePlanarDrawing};
use crate::edge_color::EdgeColoring;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const OPG_MAGIC: &str = "opg 1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Drawing(OnePlanarDrawing),
    Graph(Graph),
}

impl Input {
    pub fn graph(&self) -> &Graph {
        match self {
            Input::Drawing(d) => d.graph(),
            Input::Graph(g) => g,
        }
    }

    pub fn drawing(&self) -> Option<&OnePlanarDrawing> {
        match self {
            Input::Drawing(d) => Some(d),
            Input::Graph(_) => None,
        }
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Lines that carry content, with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty())
}

/// Parses either format, chosen by the first content line.
pub fn parse_input(text: &str) -> Result<Input> {
    match content_lines(text).next() {
        Some((_, first)) if first.starts_with("opg") => parse_opg(text).map(Input::Drawing),
        _ => parse_edge_list(text).map(Input::Graph),
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| perr(line, format!("expected a nonnegative integer, found `{tok}`")))
}

fn parse_vertex_count(line: usize, rest: &[&str]) -> Result<usize> {
    match rest {
        [n] => parse_num(line, n),
        _ => Err(perr(line, "expected `v N`")),
    }
}

fn add_edge_line(g: &mut Graph, line: usize, rest: &[&str]) -> Result<()> {
    let [u, v] = rest else {
        return Err(perr(line, "expected `e u v`"));
    };
    let (u, v) = (parse_num(line, u)?, parse_num(line, v)?);
    g.add_edge(u, v).map(|_| ()).map_err(|e| perr(line, e.to_string()))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut last_line = 0;
    for (line, content) in content_lines(text) {
        last_line = line;
        let toks: Vec<&str> = content.split_whitespace().collect();
        match (toks[0], graph.as_mut()) {
            ("v", None) => graph = Some(Graph::new(parse_vertex_count(line, &toks[1..])?)),
            ("v", Some(_)) => return Err(perr(line, "duplicate `v` line")),
            ("e", Some(g)) => add_edge_line(g, line, &toks[1..])?,
            ("e", None) => return Err(perr(line, "`e` before `v`")),
            (other, _) => return Err(perr(line, format!("unknown record `{other}`"))),
        }
    }
    graph.ok_or_else(|| perr(last_line.max(1), "missing `v N` line"))
}

#[derive(Debug, PartialEq)]
enum Token {
    Word(String),
    /// `( ... )`, the flag records a leading `z`.
    Group(bool, Vec<String>),
}

fn tokenize(line: usize, s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let z = c == 'z' && chars.get(i + 1) == Some(&'(');
        if c == '(' || z {
            let open = if z { i + 1 } else { i };
            let close = chars[open..]
                .iter()
                .position(|&c| c == ')')
                .map(|p| open + p)
                .ok_or_else(|| perr(line, "unclosed `(`"))?;
            let inner: String = chars[open + 1..close].iter().collect();
            out.push(Token::Group(
                z,
                inner.split_whitespace().map(str::to_owned).collect(),
            ));
            i = close + 1;
        } else {
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '(' {
                i += 1;
            }
            out.push(Token::Word(chars[start..i].iter().collect()));
        }
    }
    Ok(out)
}

fn group_edge(line: usize, items: &[String]) -> Result<(usize, usize)> {
    match items {
        [a, b] => Ok((parse_num(line, a)?, parse_num(line, b)?)),
        _ => Err(perr(line, "expected an edge `(a b)`")),
    }
}

#[derive(PartialEq, PartialOrd)]
enum Section {
    Header,
    Count,
    Edges,
    Crossings,
    Rotations,
}

pub fn parse_opg(text: &str) -> Result<OnePlanarDrawing> {
    let mut section = Section::Header;
    let mut graph = Graph::new(0);
    let mut crossings: Vec<CrossingPair> = Vec::new();
    let mut rotations: Vec<Option<Vec<usize>>> = Vec::new();
    let mut have_count = false;
    let mut last_line = 0;

    for (line, content) in content_lines(text) {
        last_line = line;
        if section == Section::Header {
            if content != OPG_MAGIC {
                return Err(perr(line, format!("expected `{OPG_MAGIC}`")));
            }
            section = Section::Count;
            continue;
        }
        let (keyword, rest) = content
            .split_once(char::is_whitespace)
            .unwrap_or((content, ""));
        let rank = match keyword {
            "v" => Section::Count,
            "e" => Section::Edges,
            "x" => Section::Crossings,
            "r" => Section::Rotations,
            other => return Err(perr(line, format!("unknown record `{other}`"))),
        };
        if rank < section || (rank == Section::Count && have_count) {
            return Err(perr(line, format!("`{keyword}` line out of order")));
        }
        if rank != Section::Count && !have_count {
            return Err(perr(line, "missing `v N` line"));
        }
        section = rank;
        let toks: Vec<&str> = rest.split_whitespace().collect();
        match section {
            Section::Count => {
                let n = parse_vertex_count(line, &toks)?;
                if n == 0 {
                    return Err(perr(line, "vertex count must be positive"));
                }
                graph = Graph::new(n);
                rotations = vec![None; n];
                have_count = true;
            }
            Section::Edges => add_edge_line(&mut graph, line, &toks)?,
            Section::Crossings => crossings.push(parse_crossing(line, rest, &graph)?),
            Section::Rotations => {
                let (v, rot) = parse_rotation(line, rest, &graph, &crossings)?;
                if rotations[v].is_some() {
                    return Err(perr(line, format!("duplicate rotation for vertex {v}")));
                }
                rotations[v] = Some(rot);
            }
            Section::Header => unreachable!(),
        }
    }
    if section == Section::Header {
        return Err(perr(last_line.max(1), format!("missing `{OPG_MAGIC}`")));
    }
    if !have_count {
        return Err(perr(last_line, "missing `v N` line"));
    }
    let rotations = rotations.into_iter().map(Option::unwrap_or_default).collect();
    Ok(OnePlanarDrawing::new(graph, crossings, rotations))
}

fn parse_crossing(line: usize, rest: &str, g: &Graph) -> Result<CrossingPair> {
    let toks = tokenize(line, rest)?;
    let [Token::Group(false, first), Token::Group(false, second), Token::Word(o)] = toks.as_slice()
    else {
        return Err(perr(line, "expected `x (a b) (c d) o`"));
    };
    let first = group_edge(line, first)?;
    let second = group_edge(line, second)?;
    for (u, v) in [first, second] {
        if !(u < g.vertex_count() && v < g.vertex_count() && g.has_edge(u, v)) {
            return Err(perr(line, format!("{{{u} {v}}} is not an edge")));
        }
    }
    let orientation = match o.as_str() {
        "0" => 0,
        "1" => 1,
        _ => return Err(perr(line, "orientation must be 0 or 1")),
    };
    Ok(CrossingPair::new(first, second, orientation))
}

fn parse_rotation(
    line: usize,
    rest: &str,
    g: &Graph,
    crossings: &[CrossingPair],
) -> Result<(usize, Vec<usize>)> {
    let (head, body) = rest
        .split_once(':')
        .ok_or_else(|| perr(line, "expected `r u: ...`"))?;
    let u = parse_num(line, head.trim())?;
    if u >= g.vertex_count() {
        return Err(perr(line, format!("vertex {u} out of range")));
    }
    let crossed = |a: usize, b: usize| {
        crossings.iter().any(|x| {
            [x.first, x.second]
                .iter()
                .any(|&e| e == (a, b) || e == (b, a))
        })
    };
    let mut rot = Vec::new();
    for tok in tokenize(line, body)? {
        let w = match tok {
            Token::Word(w) => {
                let w = parse_num(line, &w)?;
                if g.has_edge(u, w) && crossed(u, w) {
                    return Err(perr(
                        line,
                        format!("edge {{{u} {w}}} is crossed; write `z({u} {w})`"),
                    ));
                }
                w
            }
            Token::Group(true, items) => {
                let (a, b) = group_edge(line, &items)?;
                let w = match (a == u, b == u) {
                    (true, false) => b,
                    (false, true) => a,
                    _ => return Err(perr(line, format!("z({a} {b}) is not incident to {u}"))),
                };
                if !crossed(a, b) {
                    return Err(perr(line, format!("edge {{{a} {b}}} has no declared crossing")));
                }
                w
            }
            Token::Group(false, _) => return Err(perr(line, "unexpected `(`")),
        };
        rot.push(w);
    }
    Ok((u, rot))
}

/// Canonical `.opg` text. `header` lines are emitted as `#` comments after
/// the magic line.
pub fn write_opg(d: &OnePlanarDrawing, header: &[String]) -> String {
    let g = d.graph();
    let mut s = String::new();
    writeln!(s, "{OPG_MAGIC}").unwrap();
    for h in header {
        writeln!(s, "# {h}").unwrap();
    }
    writeln!(s, "v {}", g.vertex_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(s, "e {u} {v}").unwrap();
    }
    for x in d.crossings() {
        writeln!(
            s,
            "x ({} {}) ({} {}) {}",
            x.first.0, x.first.1, x.second.0, x.second.1, x.orientation
        )
        .unwrap();
    }
    for u in 0..g.vertex_count() {
        write!(s, "r {u}:").unwrap();
        for &w in d.rotation(u) {
            if d.crossing_on(u, w).is_some() {
                write!(s, " z({u} {w})").unwrap();
            } else {
                write!(s, " {w}").unwrap();
            }
        }
        s.push('\n');
    }
    s
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("v {}\n", g.vertex_count());
    for &(u, v) in g.edges() {
        writeln!(s, "e {u} {v}").unwrap();
    }
    s
}

/// `colors K` followed by `c u v k` lines sorted by `(u, v)`.
pub fn write_coloring(g: &Graph, c: &EdgeColoring) -> String {
    let mut rows: Vec<(usize, usize, usize)> = g
        .edges()
        .iter()
        .zip(c.colors())
        .map(|(&(u, v), &k)| (u, v, k))
        .collect();
    rows.sort_unstable();
    let mut s = format!("colors {}\n", c.color_count());
    for (u, v, k) in rows {
        writeln!(s, "c {u} {v} {k}").unwrap();
    }
    s
}
