//! Charges on the elements of a planarized drawing and the four transfer
//! rules, in exact rational arithmetic.
//!
//! Every vertex and face starts with `degree - 4`. On a connected plane
//! graph Euler's formula makes the total exactly `-8`.
//!
//! Rules, with degrees taken in the original graph:
//!
//! * R1: along an edge `uv` with `d(u) = 7` and `2 <= d(v) <= 6`, `u` sends
//!   `1/(d(v) - 1)` to `v`.
//! * R2: along an edge `uv` with `d(u) = 6`, `u` sends `1/2` to `v` when
//!   `d(v) = 3` and `1/6` when `d(v) = 4`.
//! * R3: a 3-face with exactly one crossing vertex receives `1/2` from each
//!   of its two original vertices.
//! * R4: a face of degree at least 6 sends `2/3` to each degree-3 original
//!   vertex on its boundary, once per appearance on the walk.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::drawing::PlanarizedGraph;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Charge = Rational64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    OriginalVertex,
    CrossingVertex,
    Face,
}

/// A vertex (by planarized vertex id) or a face (by face id).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Element {
    pub kind: ElementKind,
    pub id: usize,
}

impl Element {
    pub fn vertex(p: &PlanarizedGraph, id: usize) -> Self {
        let kind = if p.is_crossing(id) {
            ElementKind::CrossingVertex
        } else {
            ElementKind::OriginalVertex
        };
        Element { kind, id }
    }

    pub fn face(id: usize) -> Self {
        Element {
            kind: ElementKind::Face,
            id,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            ElementKind::OriginalVertex => "vertex",
            ElementKind::CrossingVertex => "crossing",
            ElementKind::Face => "face",
        };
        write!(f, "{tag}:{}", self.id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub rule: Rule,
    pub source: Element,
    pub target: Element,
    #[serde(serialize_with = "ser_charge")]
    pub amount: Charge,
}

fn ser_charge<S: Serializer>(c: &Charge, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_charge(c))
}

fn ser_charge_map<S: Serializer>(
    m: &BTreeMap<Element, Charge>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for (e, c) in m {
        seq.serialize_element(&(e, fmt_charge(c)))?;
    }
    seq.end()
}

/// `p/q` in lowest terms, or a bare integer.
pub fn fmt_charge(c: &Charge) -> String {
    if *c.denom() == 1 {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChargeLedger {
    #[serde(serialize_with = "ser_charge_map")]
    pub initial: BTreeMap<Element, Charge>,
    #[serde(serialize_with = "ser_charge_map")]
    pub final_charges: BTreeMap<Element, Charge>,
    pub transfers: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn initial_total(&self) -> Charge {
        self.initial.values().sum()
    }

    pub fn final_total(&self) -> Charge {
        self.final_charges.values().sum()
    }

    pub fn is_conserved(&self) -> bool {
        self.initial_total() == self.final_total()
    }

    /// Final charges recomputed from the initial charges and the transfer log.
    pub fn replay(&self) -> BTreeMap<Element, Charge> {
        let mut out = self.initial.clone();
        for t in &self.transfers {
            *out.get_mut(&t.source).expect("known source") -= t.amount;
            *out.get_mut(&t.target).expect("known target") += t.amount;
        }
        out
    }

    /// Element lines, the transfer section when non-empty, and a totals
    /// footer.
    pub fn report(&self) -> String {
        let mut s = String::from("elements\n");
        for (e, init) in &self.initial {
            let kind = match e.kind {
                ElementKind::OriginalVertex => "vertex",
                ElementKind::CrossingVertex => "crossing",
                ElementKind::Face => "face",
            };
            writeln!(
                s,
                "{kind} {} {} {}",
                e.id,
                fmt_charge(init),
                fmt_charge(&self.final_charges[e])
            )
            .unwrap();
        }
        if !self.transfers.is_empty() {
            s.push_str("transfers\n");
            for t in &self.transfers {
                writeln!(
                    s,
                    "{} {} {} {}",
                    t.rule,
                    t.source,
                    t.target,
                    fmt_charge(&t.amount)
                )
                .unwrap();
            }
        }
        writeln!(
            s,
            "totals initial {} final {}",
            fmt_charge(&self.initial_total()),
            fmt_charge(&self.final_total())
        )
        .unwrap();
        s
    }
}

fn require_connected(p: &PlanarizedGraph) -> Result<()> {
    let (components, _) = p.base().graph().components();
    if components > 1 {
        return Err(Error::Disconnected { components });
    }
    Ok(())
}

fn ch(degree: usize) -> Charge {
    Charge::from_integer(degree as i64 - 4)
}

/// Ledger holding only `degree - 4` per element; no transfers.
pub fn initial_charges(p: &PlanarizedGraph) -> Result<ChargeLedger> {
    require_connected(p)?;
    let mut initial = BTreeMap::new();
    for v in 0..p.vertex_count() {
        initial.insert(Element::vertex(p, v), ch(p.degree(v)));
    }
    for f in 0..p.face_count() {
        initial.insert(Element::face(f), ch(p.face_degree(f)));
    }
    Ok(ChargeLedger {
        final_charges: initial.clone(),
        initial,
        transfers: Vec::new(),
    })
}

/// Sum of the initial charges; `-8` on every connected planarization.
pub fn euler_charge_total(p: &PlanarizedGraph) -> Result<Charge> {
    Ok(initial_charges(p)?.initial_total())
}

fn r1_r2(g: &Graph, rule: Rule) -> Vec<(usize, usize, Charge)> {
    let mut out = Vec::new();
    for &(a, b) in g.edges() {
        for (u, v) in [(a, b), (b, a)] {
            let (du, dv) = (g.deg(u) as i64, g.deg(v) as i64);
            let amount = match rule {
                Rule::R1 if du == 7 && (2..=6).contains(&dv) => Some(Charge::new(1, dv - 1)),
                Rule::R2 if du == 6 && dv == 3 => Some(Charge::new(1, 2)),
                Rule::R2 if du == 6 && dv == 4 => Some(Charge::new(1, 6)),
                _ => None,
            };
            if let Some(amount) = amount {
                out.push((u, v, amount));
            }
        }
    }
    out
}

/// Runs R1–R4 once each over the planarization `p` of a drawing of `g`.
///
/// The log is ordered R1, R2, R3, R4, each block sorted by source then
/// target.
pub fn apply_rules(p: &PlanarizedGraph, g: &Graph) -> Result<ChargeLedger> {
    if p.base().graph() != g {
        return Err(Error::Mismatch(
            "planarization was not built from this graph".into(),
        ));
    }
    let mut ledger = initial_charges(p)?;

    let mut blocks: Vec<Vec<Transfer>> = Vec::new();
    for rule in [Rule::R1, Rule::R2] {
        blocks.push(
            r1_r2(g, rule)
                .into_iter()
                .map(|(u, v, amount)| Transfer {
                    rule,
                    source: Element::vertex(p, u),
                    target: Element::vertex(p, v),
                    amount,
                })
                .collect(),
        );
    }

    let mut r3 = Vec::new();
    let mut r4 = Vec::new();
    for (f, walk) in p.faces().iter().enumerate() {
        if walk.len() == 3 {
            let crossings = walk.iter().filter(|&&v| p.is_crossing(v)).count();
            if crossings == 1 {
                for &v in walk.iter().filter(|&&v| !p.is_crossing(v)) {
                    r3.push(Transfer {
                        rule: Rule::R3,
                        source: Element::vertex(p, v),
                        target: Element::face(f),
                        amount: Charge::new(1, 2),
                    });
                }
            }
        }
        if walk.len() >= 6 {
            for &v in walk.iter() {
                if !p.is_crossing(v) && g.deg(v) == 3 {
                    r4.push(Transfer {
                        rule: Rule::R4,
                        source: Element::face(f),
                        target: Element::vertex(p, v),
                        amount: Charge::new(2, 3),
                    });
                }
            }
        }
    }
    blocks.push(r3);
    blocks.push(r4);

    for block in &mut blocks {
        block.sort_by_key(|t| (t.source, t.target));
    }
    ledger.transfers = blocks.into_iter().flatten().collect();
    ledger.final_charges = ledger.replay();
    Ok(ledger)
}

/// Elements with negative final charge, most negative first.
pub fn negative_elements(l: &ChargeLedger) -> Vec<(Element, Charge)> {
    let mut out: Vec<(Element, Charge)> = l
        .final_charges
        .iter()
        .filter(|(_, c)| **c < Charge::from_integer(0))
        .map(|(e, c)| (*e, *c))
        .collect();
    out.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    out
}
