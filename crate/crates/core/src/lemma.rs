//! Executable forms of the structural lemmas on triangle-free 1-planar
//! drawings, the adjacency and size properties of critical graphs, and the
//! Class 1 statement for maximum degree at least 7.
//!
//! The face-count lemmas hold for crossing-minimal drawings. Minimality is
//! not certified anywhere in this crate, so a failure on a valid
//! triangle-free drawing is reported as evidence that the drawing is not
//! crossing-minimal.

use std::fmt;

use serde::Serialize;

use crate::drawing::{validate_drawing, OnePlanarDrawing, PlanarizedGraph};
use crate::edge_color::{exact_chromatic_index, EdgeClass};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaTag {
    Lemma1,
    Lemma2,
    Lemma3,
    Lemma4,
    Theorem1,
}

impl fmt::Display for LemmaTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LemmaTag::Lemma1 => "lemma1",
            LemmaTag::Lemma2 => "lemma2",
            LemmaTag::Lemma3 => "lemma3",
            LemmaTag::Lemma4 => "lemma4",
            LemmaTag::Theorem1 => "theorem1",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    NotApplicable,
    Unknown,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "NOT_APPLICABLE",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Vertex(usize),
    /// Directed: the first vertex is the one being checked.
    Edge(usize, usize),
    Graph,
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Vertex(v) => write!(f, "vertex {v}"),
            Subject::Edge(u, v) => write!(f, "edge {u}->{v}"),
            Subject::Graph => write!(f, "graph"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaViolation {
    pub subject: Subject,
    /// Which case of a multi-case statement failed, e.g. `2(3)`.
    pub case: Option<String>,
    pub observed: String,
    pub required: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Caveat {
    /// The statement is proved for crossing-minimal drawings only.
    ConditionalOnMinimalDrawing,
    /// A failure here certifies that the drawing is not crossing-minimal.
    NonMinimalDrawing,
    /// A failure here certifies the graph is not critical.
    NotCritical,
    /// The graph was certified critical, so a failure is a defect.
    ContradictsCriticality,
    BudgetExhausted,
}

impl fmt::Display for Caveat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Caveat::ConditionalOnMinimalDrawing => "conditional on crossing-minimal drawing",
            Caveat::NonMinimalDrawing => "drawing is not crossing-minimal",
            Caveat::NotCritical => "graph is not critical",
            Caveat::ContradictsCriticality => "contradicts certified criticality (defect)",
            Caveat::BudgetExhausted => "search budget exhausted",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub tag: LemmaTag,
    pub verdict: Verdict,
    pub violations: Vec<LemmaViolation>,
    pub caveats: Vec<Caveat>,
    pub notes: Vec<String>,
}

impl LemmaReport {
    fn new(tag: LemmaTag, verdict: Verdict) -> Self {
        LemmaReport {
            tag,
            verdict,
            violations: Vec::new(),
            caveats: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn not_applicable(tag: LemmaTag, why: impl Into<String>) -> Self {
        let mut r = LemmaReport::new(tag, Verdict::NotApplicable);
        r.notes.push(why.into());
        r
    }

    pub fn unknown(tag: LemmaTag, why: impl Into<String>) -> Self {
        let mut r = LemmaReport::new(tag, Verdict::Unknown);
        r.caveats.push(Caveat::BudgetExhausted);
        r.notes.push(why.into());
        r
    }

    /// PASS or FAIL from the collected violations.
    fn from_violations(tag: LemmaTag, violations: Vec<LemmaViolation>) -> Self {
        let verdict = if violations.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        LemmaReport {
            violations,
            ..LemmaReport::new(tag, verdict)
        }
    }
}

fn matches_graph(p: &PlanarizedGraph, g: &Graph) -> Result<()> {
    if p.base().graph() == g {
        Ok(())
    } else {
        Err(Error::Mismatch(
            "planarization was not built from this graph".into(),
        ))
    }
}

fn with_minimality_caveats(mut r: LemmaReport) -> LemmaReport {
    r.caveats.push(Caveat::ConditionalOnMinimalDrawing);
    if r.verdict == Verdict::Fail {
        r.caveats.push(Caveat::NonMinimalDrawing);
    }
    r
}

/// Every original vertex lies on at most as many 3-faces as it has
/// adjacent crossing vertices.
pub fn check_lemma1(p: &PlanarizedGraph, g: &Graph) -> Result<LemmaReport> {
    matches_graph(p, g)?;
    if !g.is_triangle_free() {
        return Ok(LemmaReport::not_applicable(
            LemmaTag::Lemma1,
            "graph contains a triangle",
        ));
    }
    let mut violations = Vec::new();
    for v in 0..g.vertex_count() {
        let (f3, nc) = (p.f3_count(v)?, p.nc_count(v)?);
        if f3 > nc {
            violations.push(LemmaViolation {
                subject: Subject::Vertex(v),
                case: None,
                observed: format!("f3={f3} nc={nc}"),
                required: "f3 <= nc".into(),
            });
        }
    }
    Ok(with_minimality_caveats(LemmaReport::from_violations(
        LemmaTag::Lemma1,
        violations,
    )))
}

/// Degree-specific bounds on 3-faces; see the case table in
/// [`lemma2_case`].
pub fn check_lemma2(p: &PlanarizedGraph, g: &Graph) -> Result<LemmaReport> {
    matches_graph(p, g)?;
    if !g.is_triangle_free() {
        return Ok(LemmaReport::not_applicable(
            LemmaTag::Lemma2,
            "graph contains a triangle",
        ));
    }
    let mut violations = Vec::new();
    for v in 0..g.vertex_count() {
        let d = g.deg(v);
        let (f3, nc) = (p.f3_count(v)?, p.nc_count(v)?);
        if let Some((case, bound)) = lemma2_case(d, nc) {
            if f3 > bound {
                violations.push(LemmaViolation {
                    subject: Subject::Vertex(v),
                    case: Some(case.into()),
                    observed: format!("d={d} nc={nc} f3={f3}"),
                    required: format!("f3 <= {bound}"),
                });
            }
        }
        // equality in case (2) needs a face of degree at least 6 at v
        if d == 3 && nc >= 2 && f3 == 2 {
            let big = p.faces_at(v).into_iter().any(|f| p.face_degree(f) >= 6);
            if !big {
                violations.push(LemmaViolation {
                    subject: Subject::Vertex(v),
                    case: Some("2(2)".into()),
                    observed: format!("d=3 nc={nc} f3=2, no 6+-face at v"),
                    required: "f3 = 2 implies v is on a face of degree >= 6".into(),
                });
            }
        }
    }
    Ok(with_minimality_caveats(LemmaReport::from_violations(
        LemmaTag::Lemma2,
        violations,
    )))
}

/// The case of the degree-specific bound that applies to a vertex of
/// degree `d` with `nc` adjacent crossings, with its upper bound on `f3`.
pub fn lemma2_case(d: usize, nc: usize) -> Option<(&'static str, usize)> {
    match (d, nc) {
        (2, _) => Some(("2(1)", 0)),
        (3, 2..) => Some(("2(2)", 2)),
        (4, 3..) => Some(("2(3)", 2)),
        (5, 4..) => Some(("2(4)", 2)),
        (6, 5..) => Some(("2(5)", 2)),
        (7, 5..) => Some(("2(6)", 4)),
        _ => None,
    }
}

/// Tightest bound on `f3` implied by both face-count lemmas together.
pub fn f3_upper_bound(d: usize, nc: usize) -> Result<usize> {
    if !(2..=7).contains(&d) {
        return Err(Error::InvalidArgument(format!(
            "degree {d} outside 2..=7"
        )));
    }
    if nc > d {
        return Err(Error::InvalidArgument(format!(
            "n_c = {nc} exceeds degree {d}"
        )));
    }
    Ok(match lemma2_case(d, nc) {
        Some((_, bound)) => bound.min(nc),
        None => nc,
    })
}

/// Per-vertex comparison of `f3` with [`f3_upper_bound`], falling back to
/// `f3 <= nc` for degrees outside `2..=7`. Returns the offending vertices.
pub fn f3_bound_violations(p: &PlanarizedGraph, g: &Graph) -> Result<Vec<usize>> {
    matches_graph(p, g)?;
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        let (d, f3, nc) = (g.deg(v), p.f3_count(v)?, p.nc_count(v)?);
        let bound = if (2..=7).contains(&d) {
            f3_upper_bound(d, nc)?
        } else {
            nc
        };
        if f3 > bound {
            out.push(v);
        }
    }
    Ok(out)
}

/// Vizing's adjacency lemma in both directions of every edge: for an edge
/// `uv` with `d(v) = k`, `u` has at least `Δ - k + 1` neighbors of degree
/// `Δ`. A failure proves the graph is not `Δ`-critical.
pub fn check_vizing_adjacency(g: &Graph, assume_critical: bool) -> LemmaReport {
    if g.edge_count() == 0 {
        return LemmaReport::not_applicable(LemmaTag::Lemma3, "graph has no edges");
    }
    let delta = g.max_degree();
    let major: Vec<usize> = (0..g.vertex_count())
        .map(|u| g.neighbors(u).filter(|&w| g.deg(w) == delta).count())
        .collect();
    let mut violations = Vec::new();
    for &(a, b) in g.edges() {
        for (u, v) in [(a, b), (b, a)] {
            let need = delta - g.deg(v) + 1;
            if major[u] < need {
                violations.push(LemmaViolation {
                    subject: Subject::Edge(u, v),
                    case: None,
                    observed: format!(
                        "d({v})={}, {u} has {} neighbors of degree {delta}",
                        g.deg(v),
                        major[u]
                    ),
                    required: format!(">= {need}"),
                });
            }
        }
    }
    let mut r = LemmaReport::from_violations(LemmaTag::Lemma3, violations);
    if r.verdict == Verdict::Fail {
        r.caveats.push(if assume_critical {
            Caveat::ContradictsCriticality
        } else {
            Caveat::NotCritical
        });
    }
    r
}

/// Size bound `e >= 3n` for `k`-critical graphs with `k >= 8`.
pub fn check_critical_size(g: &Graph, k: usize, assume_k_critical: bool) -> LemmaReport {
    if k < 8 {
        return LemmaReport::not_applicable(LemmaTag::Lemma4, format!("k = {k} < 8"));
    }
    let (n, e) = (g.vertex_count(), g.edge_count());
    let mut violations = Vec::new();
    if e < 3 * n {
        violations.push(LemmaViolation {
            subject: Subject::Graph,
            case: None,
            observed: format!("e={e} n={n}"),
            required: format!("e >= 3n = {}", 3 * n),
        });
    }
    let mut r = LemmaReport::from_violations(LemmaTag::Lemma4, violations);
    if r.verdict == Verdict::Fail {
        r.caveats.push(if assume_k_critical {
            Caveat::ContradictsCriticality
        } else {
            Caveat::NotCritical
        });
    }
    r
}

/// Triangle-free with a valid 1-planar drawing and `Δ >= 7` implies
/// chromatic index `Δ`.
pub fn check_theorem1(g: &Graph, d: &OnePlanarDrawing, budget: u64) -> Result<LemmaReport> {
    if d.graph() != g {
        return Err(Error::Mismatch("drawing does not draw this graph".into()));
    }
    let report = validate_drawing(d);
    if !report.is_ok() {
        return Err(Error::InvalidDrawing(report));
    }
    if !g.is_triangle_free() {
        return Ok(LemmaReport::not_applicable(
            LemmaTag::Theorem1,
            "graph contains a triangle",
        ));
    }
    let delta = g.max_degree();
    if delta < 7 {
        return Ok(LemmaReport::not_applicable(
            LemmaTag::Theorem1,
            format!("max degree {delta} < 7"),
        ));
    }
    let verdict = exact_chromatic_index(g, budget);
    let mut r = match verdict.class {
        EdgeClass::One => LemmaReport::new(LemmaTag::Theorem1, Verdict::Pass),
        EdgeClass::Unknown => LemmaReport::unknown(
            LemmaTag::Theorem1,
            format!("{} search nodes used", verdict.nodes),
        ),
        EdgeClass::Two => LemmaReport::from_violations(
            LemmaTag::Theorem1,
            vec![LemmaViolation {
                subject: Subject::Graph,
                case: None,
                observed: format!("chromatic index {}", delta + 1),
                required: format!("chromatic index = max degree = {delta}"),
            }],
        ),
    };
    r.notes.push(format!(
        "max degree {delta}, chromatic index {}",
        verdict
            .chromatic_index
            .map_or("unknown".to_string(), |c| c.to_string())
    ));
    Ok(r)
}
