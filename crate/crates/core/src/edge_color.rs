//! Proper edge colorings: the constructive fan algorithm with at most
//! `Δ + 1` colors, an exact branch-and-bound feasibility search, class
//! classification and criticality.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Color per edge id. Colors are `0..color_count()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeColoring {
    colors: Vec<usize>,
    k: usize,
}

impl EdgeColoring {
    /// Wraps raw colors; `k` counts distinct values.
    pub fn new(colors: Vec<usize>) -> Self {
        let mut distinct = colors.clone();
        distinct.sort_unstable();
        distinct.dedup();
        EdgeColoring {
            k: distinct.len(),
            colors,
        }
    }

    /// Relabels colors onto `0..k` keeping their relative order.
    fn compacted(colors: Vec<usize>) -> Self {
        let mut distinct = colors.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let colors = colors
            .into_iter()
            .map(|c| distinct.binary_search(&c).unwrap())
            .collect();
        EdgeColoring {
            k: distinct.len(),
            colors,
        }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, edge: usize) -> usize {
        self.colors[edge]
    }

    pub fn color_count(&self) -> usize {
        self.k
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringCheck {
    pub proper: bool,
    /// Pairs of adjacent edge ids with the same color, `a < b`.
    pub conflicts: Vec<(usize, usize)>,
}

pub fn verify_coloring(g: &Graph, c: &EdgeColoring) -> Result<ColoringCheck> {
    if c.colors.len() != g.edge_count() {
        return Err(Error::Mismatch(format!(
            "coloring covers {} edges, graph has {}",
            c.colors.len(),
            g.edge_count()
        )));
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        incident[u].push(id);
        incident[v].push(id);
    }
    let mut conflicts = Vec::new();
    for ids in &incident {
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                if c.colors[a] == c.colors[b] {
                    conflicts.push((a.min(b), a.max(b)));
                }
            }
        }
    }
    conflicts.sort_unstable();
    Ok(ColoringCheck {
        proper: conflicts.is_empty(),
        conflicts,
    })
}

/// Partial coloring with per-vertex color lookup, used by the fan algorithm.
struct FanState<'g> {
    g: &'g Graph,
    color: Vec<Option<usize>>,
    at: Vec<Vec<Option<usize>>>,
}

impl<'g> FanState<'g> {
    fn new(g: &'g Graph, palette: usize) -> Self {
        FanState {
            g,
            color: vec![None; g.edge_count()],
            at: vec![vec![None; palette]; g.vertex_count()],
        }
    }

    fn edge(&self, u: usize, v: usize) -> usize {
        self.g.edge_id(u, v).expect("edge")
    }

    fn color_of(&self, u: usize, v: usize) -> Option<usize> {
        self.color[self.edge(u, v)]
    }

    fn is_free(&self, v: usize, c: usize) -> bool {
        self.at[v][c].is_none()
    }

    fn smallest_free(&self, v: usize) -> usize {
        self.at[v]
            .iter()
            .position(Option::is_none)
            .expect("palette of Δ+1 colors always has a free color")
    }

    fn set(&mut self, u: usize, v: usize, c: usize) {
        let id = self.edge(u, v);
        self.color[id] = Some(c);
        self.at[u][c] = Some(v);
        self.at[v][c] = Some(u);
    }

    fn clear(&mut self, u: usize, v: usize) {
        let id = self.edge(u, v);
        if let Some(c) = self.color[id].take() {
            self.at[u][c] = None;
            self.at[v][c] = None;
        }
    }

    fn is_fan(&self, u: usize, fan: &[usize]) -> bool {
        fan.windows(2).all(|w| {
            self.color_of(u, w[1])
                .is_some_and(|c| self.is_free(w[0], c))
        })
    }

    /// Colors the uncolored edge `{u, v}` using a fan at `u`.
    fn color_edge(&mut self, u: usize, v: usize) {
        let mut fan = vec![v];
        loop {
            let last = *fan.last().unwrap();
            let next = (0..self.at[u].len())
                .filter(|&c| self.is_free(last, c))
                .find_map(|c| self.at[u][c].filter(|w| !fan.contains(w)));
            match next {
                Some(w) => fan.push(w),
                None => break,
            }
        }

        let c = self.smallest_free(u);
        let d = self.smallest_free(*fan.last().unwrap());

        if c != d {
            // invert the alternating d/c path that starts at u
            let mut path = Vec::new();
            let (mut x, mut cur) = (u, d);
            while let Some(y) = self.at[x][cur] {
                path.push((x, y, cur));
                x = y;
                cur = if cur == d { c } else { d };
            }
            for &(x, y, _) in &path {
                self.clear(x, y);
            }
            for &(x, y, old) in &path {
                self.set(x, y, if old == d { c } else { d });
            }
        }

        let end = (0..fan.len())
            .find(|&i| self.is_free(fan[i], d) && self.is_fan(u, &fan[..=i]))
            .expect("fan prefix ending at a vertex missing d");

        let shifted: Vec<usize> = (0..end)
            .map(|j| self.color_of(u, fan[j + 1]).unwrap())
            .collect();
        for &w in &fan[..=end] {
            self.clear(u, w);
        }
        for (j, &col) in shifted.iter().enumerate() {
            self.set(u, fan[j], col);
        }
        self.set(u, fan[end], d);
    }
}

/// Proper coloring with at most `Δ + 1` colors, processing edges in id order.
pub fn vizing_color(g: &Graph) -> Result<EdgeColoring> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let mut state = FanState::new(g, g.max_degree() + 1);
    for &(u, v) in g.edges() {
        state.color_edge(u, v);
    }
    let colors = state.color.into_iter().map(Option::unwrap).collect();
    Ok(EdgeColoring::compacted(colors))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EdgeClass {
    One,
    Two,
    Unknown,
}

impl std::fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EdgeClass::One => "ONE",
            EdgeClass::Two => "TWO",
            EdgeClass::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassVerdict {
    pub max_degree: usize,
    pub chromatic_index: Option<usize>,
    pub class: EdgeClass,
    pub witness: Option<EdgeColoring>,
    /// Best bounds established; equal when the index is known.
    pub lower: usize,
    pub upper: usize,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(EdgeColoring),
    Infeasible,
    BudgetExhausted,
}

/// Colors are held in a 128-bit mask.
const MAX_COLORS: usize = 128;

struct Search<'g> {
    g: &'g Graph,
    k: usize,
    order: Vec<usize>,
    color: Vec<Option<usize>>,
    used: Vec<u128>,
    uncolored: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn available(&self, e: usize) -> u128 {
        let (u, v) = self.g.edges()[e];
        let all = if self.k == MAX_COLORS {
            u128::MAX
        } else {
            (1u128 << self.k) - 1
        };
        all & !(self.used[u] | self.used[v])
    }

    fn vertex_ok(&self, v: usize) -> bool {
        self.uncolored[v] <= self.k - self.used[v].count_ones() as usize
    }

    fn assign(&mut self, e: usize, c: usize) {
        let (u, v) = self.g.edges()[e];
        self.color[e] = Some(c);
        self.used[u] |= 1 << c;
        self.used[v] |= 1 << c;
        self.uncolored[u] -= 1;
        self.uncolored[v] -= 1;
    }

    fn unassign(&mut self, e: usize) {
        let (u, v) = self.g.edges()[e];
        let c = self.color[e].take().unwrap();
        self.used[u] &= !(1 << c);
        self.used[v] &= !(1 << c);
        self.uncolored[u] += 1;
        self.uncolored[v] += 1;
    }

    /// `Some(true)` when a completion exists, `Some(false)` when none does,
    /// `None` once the node budget runs out.
    fn dfs(&mut self) -> Option<bool> {
        // most constrained uncolored edge, ties by the static order
        let mut best: Option<(u32, usize)> = None;
        for &e in &self.order {
            if self.color[e].is_some() {
                continue;
            }
            let choices = self.available(e).count_ones();
            if choices == 0 {
                return Some(false);
            }
            if best.is_none_or(|(b, _)| choices < b) {
                best = Some((choices, e));
                if choices == 1 {
                    break;
                }
            }
        }
        let Some((_, e)) = best else {
            return Some(true);
        };
        let (u, v) = self.g.edges()[e];
        let mut avail = self.available(e);
        while avail != 0 {
            let c = avail.trailing_zeros() as usize;
            avail &= avail - 1;
            if self.nodes >= self.budget {
                return None;
            }
            self.nodes += 1;
            self.assign(e, c);
            if self.vertex_ok(u) && self.vertex_ok(v) {
                match self.dfs() {
                    Some(true) => return Some(true),
                    None => {
                        self.unassign(e);
                        return None;
                    }
                    Some(false) => {}
                }
            }
            self.unassign(e);
        }
        Some(false)
    }
}

/// Searches for a proper coloring with at most `k` colors.
///
/// Edges around one maximum-degree vertex are fixed to colors `0..d`; the
/// remaining edges are branched most-constrained first, pruning any vertex
/// left with more uncolored edges than unused colors.
pub fn k_edge_coloring(g: &Graph, k: usize, budget: u64) -> (SearchOutcome, u64) {
    let delta = g.max_degree();
    if g.edge_count() == 0 {
        return (SearchOutcome::Found(EdgeColoring::new(Vec::new())), 0);
    }
    if k < delta {
        return (SearchOutcome::Infeasible, 0);
    }
    if k > MAX_COLORS {
        return (SearchOutcome::BudgetExhausted, 0);
    }

    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by_key(|&e| {
        let (u, v) = g.edges()[e];
        (std::cmp::Reverse(g.deg(u) + g.deg(v)), e)
    });
    let mut s = Search {
        g,
        k,
        order,
        color: vec![None; g.edge_count()],
        used: vec![0; g.vertex_count()],
        uncolored: (0..g.vertex_count()).map(|v| g.deg(v)).collect(),
        nodes: 0,
        budget,
    };
    let hub = (0..g.vertex_count()).find(|&v| g.deg(v) == delta).unwrap();
    for (c, w) in g.neighbors(hub).enumerate() {
        s.assign(g.edge_id(hub, w).unwrap(), c);
    }
    if !(0..g.vertex_count()).all(|v| s.vertex_ok(v)) {
        return (SearchOutcome::Infeasible, 0);
    }
    let outcome = match s.dfs() {
        Some(true) => {
            let colors = s.color.iter().map(|c| c.unwrap()).collect();
            SearchOutcome::Found(EdgeColoring::compacted(colors))
        }
        Some(false) => SearchOutcome::Infeasible,
        None => SearchOutcome::BudgetExhausted,
    };
    (outcome, s.nodes)
}

/// More edges than `Δ` matchings can hold forces class two.
fn overfull(g: &Graph) -> bool {
    g.edge_count() > g.max_degree() * (g.vertex_count() / 2)
}

/// Exact chromatic index. Only `k = Δ` is searched; infeasibility there
/// certifies `Δ + 1`, witnessed by the fan algorithm.
pub fn exact_chromatic_index(g: &Graph, budget: u64) -> ClassVerdict {
    let delta = g.max_degree();
    if g.edge_count() == 0 {
        return ClassVerdict {
            max_degree: 0,
            chromatic_index: Some(0),
            class: EdgeClass::One,
            witness: Some(EdgeColoring::new(Vec::new())),
            lower: 0,
            upper: 0,
            nodes: 0,
        };
    }
    let (outcome, nodes) = if overfull(g) {
        (SearchOutcome::Infeasible, 0)
    } else {
        k_edge_coloring(g, delta, budget)
    };
    let class_two = |nodes| {
        let witness = vizing_color(g).expect("graph has edges");
        debug_assert_eq!(witness.color_count(), delta + 1);
        ClassVerdict {
            max_degree: delta,
            chromatic_index: Some(delta + 1),
            class: EdgeClass::Two,
            witness: Some(witness),
            lower: delta + 1,
            upper: delta + 1,
            nodes,
        }
    };
    match outcome {
        SearchOutcome::Found(witness) => ClassVerdict {
            max_degree: delta,
            chromatic_index: Some(delta),
            class: EdgeClass::One,
            witness: Some(witness),
            lower: delta,
            upper: delta,
            nodes,
        },
        SearchOutcome::Infeasible => class_two(nodes),
        SearchOutcome::BudgetExhausted => {
            let heuristic = vizing_color(g).expect("graph has edges");
            if heuristic.color_count() == delta {
                // the fan algorithm happened to find a Δ-coloring
                return ClassVerdict {
                    max_degree: delta,
                    chromatic_index: Some(delta),
                    class: EdgeClass::One,
                    witness: Some(heuristic),
                    lower: delta,
                    upper: delta,
                    nodes,
                };
            }
            ClassVerdict {
                max_degree: delta,
                chromatic_index: None,
                class: EdgeClass::Unknown,
                witness: None,
                lower: delta,
                upper: heuristic.color_count(),
                nodes,
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Criticality {
    Critical,
    NotCritical,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalityVerdict {
    pub verdict: Criticality,
    pub chromatic_index: Option<usize>,
    /// First edge whose deletion leaves the chromatic index unchanged.
    pub failing_edge: Option<(usize, usize)>,
}

/// Class two and every single-edge deletion lowers the chromatic index.
pub fn is_critical(g: &Graph, budget: u64) -> CriticalityVerdict {
    let whole = exact_chromatic_index(g, budget);
    let unknown = CriticalityVerdict {
        verdict: Criticality::Unknown,
        chromatic_index: whole.chromatic_index,
        failing_edge: None,
    };
    match whole.class {
        EdgeClass::Unknown => return unknown,
        EdgeClass::One => {
            return CriticalityVerdict {
                verdict: Criticality::NotCritical,
                chromatic_index: whole.chromatic_index,
                failing_edge: None,
            }
        }
        EdgeClass::Two => {}
    }
    let chi = whole.chromatic_index.unwrap();
    let mut saw_unknown = false;
    for (id, &edge) in g.edges().iter().enumerate() {
        let sub = exact_chromatic_index(&g.without_edge(id), budget);
        match sub.chromatic_index {
            None => saw_unknown = true,
            Some(c) if c >= chi => {
                return CriticalityVerdict {
                    verdict: Criticality::NotCritical,
                    chromatic_index: Some(chi),
                    failing_edge: Some(edge),
                }
            }
            Some(_) => {}
        }
    }
    if saw_unknown {
        return unknown;
    }
    CriticalityVerdict {
        verdict: Criticality::Critical,
        chromatic_index: Some(chi),
        failing_edge: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    const BUDGET: u64 = 1_000_000;

    #[test]
    fn vizing_small_graphs() {
        let c = vizing_color(&star(7)).unwrap();
        assert_eq!(c.color_count(), 7);
        assert!(verify_coloring(&star(7), &c).unwrap().proper);
        for g in [cycle(5), petersen(), complete(5), cube()] {
            let c = vizing_color(&g).unwrap();
            assert!(verify_coloring(&g, &c).unwrap().proper);
            assert!(c.color_count() <= g.max_degree() + 1);
        }
        assert!(matches!(vizing_color(&Graph::new(3)), Err(Error::NoEdges)));
    }

    #[test]
    fn vizing_is_deterministic() {
        let g = petersen();
        assert_eq!(vizing_color(&g).unwrap(), vizing_color(&g).unwrap());
    }

    #[test]
    fn verify_reports_conflicts() {
        let g = cycle(4);
        let check = verify_coloring(&g, &EdgeColoring::new(vec![0; 4])).unwrap();
        assert!(!check.proper);
        assert_eq!(check.conflicts.len(), 4);
        let one = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(verify_coloring(&one, &EdgeColoring::new(vec![0])).unwrap().proper);
        assert!(matches!(
            verify_coloring(&g, &EdgeColoring::new(vec![0; 3])),
            Err(Error::Mismatch(_))
        ));
    }

    #[test]
    fn exact_known_values() {
        let v = exact_chromatic_index(&complete(3), BUDGET);
        assert_eq!((v.chromatic_index, v.class), (Some(3), EdgeClass::Two));
        let v = exact_chromatic_index(&hex_x(), BUDGET);
        assert_eq!((v.chromatic_index, v.class), (Some(3), EdgeClass::One));
        let v = exact_chromatic_index(&petersen(), BUDGET);
        assert_eq!((v.chromatic_index, v.class), (Some(4), EdgeClass::Two));
        let w = v.witness.unwrap();
        assert_eq!(w.color_count(), 4);
        assert!(verify_coloring(&petersen(), &w).unwrap().proper);
    }

    #[test]
    fn petersen_search_proves_infeasibility() {
        // not overfull, so class two comes from exhausting the search
        assert!(!overfull(&petersen()));
        let (outcome, nodes) = k_edge_coloring(&petersen(), 3, BUDGET);
        assert_eq!(outcome, SearchOutcome::Infeasible);
        assert!(nodes > 0);
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let (outcome, nodes) = k_edge_coloring(&petersen(), 3, 1);
        assert_eq!(outcome, SearchOutcome::BudgetExhausted);
        assert_eq!(nodes, 1);
    }

    #[test]
    fn criticality() {
        let v = is_critical(&cycle(5), BUDGET);
        assert_eq!(v.verdict, Criticality::Critical);
        assert_eq!(is_critical(&cycle(6), BUDGET).verdict, Criticality::NotCritical);
        assert_eq!(is_critical(&complete(3), BUDGET).verdict, Criticality::Critical);
        // K5 - e is still overfull
        assert_eq!(is_critical(&complete(5), BUDGET).verdict, Criticality::NotCritical);
        let v = is_critical(&petersen(), BUDGET);
        assert_eq!(v.verdict, Criticality::NotCritical);
        assert!(v.failing_edge.is_some());
    }
}
