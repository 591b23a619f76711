//! Simple undirected graphs with dense vertex ids.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are kept in insertion order with endpoints normalized so that
/// `u < v`; the position of an edge in [`Graph::edges`] is its edge id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<BTreeSet<usize>>,
    index: HashMap<(usize, usize), usize>,
}

fn normalize(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adjacency: vec![BTreeSet::new(); n],
            index: HashMap::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}` and returns its edge id.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        let key = normalize(u, v);
        if self.index.contains_key(&key) {
            return Err(Error::DuplicateEdge(key.0, key.1));
        }
        let id = self.edges.len();
        self.edges.push(key);
        self.index.insert(key, id);
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        Ok(id)
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adjacency.push(BTreeSet::new());
        self.n += 1;
        self.n - 1
    }

    /// Copy of the graph with edge `id` removed. Remaining edges keep their
    /// relative order.
    pub fn without_edge(&self, id: usize) -> Graph {
        let mut g = Graph::new(self.n);
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if i != id {
                g.add_edge(u, v).expect("edges of a simple graph");
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&normalize(u, v)).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.index.contains_key(&normalize(u, v))
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v].len())
    }

    /// Degree without the range check, for internal loops over `0..n`.
    pub(crate) fn deg(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).min().unwrap_or(0)
    }

    pub fn common_neighbor(&self, u: usize, v: usize) -> Option<usize> {
        let (small, large) = if self.adjacency[u].len() <= self.adjacency[v].len() {
            (&self.adjacency[u], &self.adjacency[v])
        } else {
            (&self.adjacency[v], &self.adjacency[u])
        };
        small.iter().copied().find(|w| large.contains(w))
    }

    /// First triangle found scanning edges in id order, if any.
    pub fn find_triangle(&self) -> Option<(usize, usize, usize)> {
        self.edges
            .iter()
            .find_map(|&(u, v)| self.common_neighbor(u, v).map(|w| (u, v, w)))
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }

    /// BFS two-coloring. Returns the side (0 or 1) of every vertex, with the
    /// smallest vertex of each component on side 0, or `None` on an odd cycle.
    pub fn is_bipartite(&self) -> Option<Vec<u8>> {
        let mut side: Vec<Option<u8>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(0);
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for w in self.neighbors(u) {
                    match side[w] {
                        None => {
                            side[w] = Some(1 - su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    /// Component label per vertex, labels assigned in order of smallest member.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn is_connected(&self) -> bool {
        self.components().0 <= 1
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }
}

/// Outcome of comparing a graph's size with the 1-planar edge bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeBoundReport {
    pub n: usize,
    pub e: usize,
    /// `4n - 8`
    pub one_planar_bound: i64,
    pub one_planar_holds: bool,
    pub one_planar_slack: i64,
    /// `3n - 6`, present only when the graph was declared triangle-free.
    pub triangle_free_bound: Option<i64>,
    pub triangle_free_holds: Option<bool>,
    pub triangle_free_slack: Option<i64>,
}

impl SizeBoundReport {
    pub fn holds(&self) -> bool {
        self.one_planar_holds && self.triangle_free_holds.unwrap_or(true)
    }
}

/// Diagnostic only: the caller vouches for 1-planarity, so a violation is
/// reported rather than raised.
pub fn check_size_bounds(g: &Graph, triangle_free: bool) -> SizeBoundReport {
    let n = g.vertex_count() as i64;
    let e = g.edge_count() as i64;
    let one_planar_bound = 4 * n - 8;
    let (tf_bound, tf_holds, tf_slack) = if triangle_free {
        let b = 3 * n - 6;
        (Some(b), Some(e <= b), Some(b - e))
    } else {
        (None, None, None)
    };
    SizeBoundReport {
        n: g.vertex_count(),
        e: g.edge_count(),
        one_planar_bound,
        one_planar_holds: e <= one_planar_bound,
        one_planar_slack: one_planar_bound - e,
        triangle_free_bound: tf_bound,
        triangle_free_holds: tf_holds,
        triangle_free_slack: tf_slack,
    }
}

/// Small named graphs used by tests and the CLI fixtures.
pub mod named {
    use super::Graph;

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path")
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("complete");
            }
        }
        g
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star")
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).expect("petersen")
    }

    pub fn cube() -> Graph {
        let mut g = Graph::new(8);
        for u in 0..8usize {
            for bit in 0..3 {
                let v = u ^ (1 << bit);
                if u < v {
                    g.add_edge(u, v).expect("cube");
                }
            }
        }
        g
    }

    /// C6 on 0..5 plus the chords {0,3} and {1,4}.
    pub fn hex_x() -> Graph {
        let mut g = cycle(6);
        g.add_edge(0, 3).unwrap();
        g.add_edge(1, 4).unwrap();
        g
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(complete(3).degree(0).unwrap(), 2);
        assert_eq!(star(7).degree(0).unwrap(), 7);
        assert_eq!(Graph::new(4).degree(2).unwrap(), 0);
        assert!(matches!(
            complete(3).degree(3),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        let mut g = Graph::new(3);
        assert!(matches!(g.add_edge(1, 1), Err(Error::Loop(1))));
        g.add_edge(0, 1).unwrap();
        assert!(matches!(g.add_edge(1, 0), Err(Error::DuplicateEdge(0, 1))));
    }

    #[test]
    fn triangles() {
        assert!(cycle(5).is_triangle_free());
        assert!(!complete(3).is_triangle_free());
        assert!(hex_x().is_triangle_free());
    }

    #[test]
    fn bipartiteness() {
        assert!(cycle(6).is_bipartite().is_some());
        assert!(cycle(5).is_bipartite().is_none());
        let sides = hex_x().is_bipartite().unwrap();
        assert_eq!(sides, vec![0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn size_bounds() {
        let r = check_size_bounds(&hex_x(), true);
        assert!(r.holds());
        assert_eq!(r.one_planar_bound, 16);
        assert_eq!(r.triangle_free_bound, Some(12));
        assert_eq!(r.triangle_free_slack, Some(4));

        let r = check_size_bounds(&cycle(5), false);
        assert!(r.one_planar_holds);
        assert_eq!(r.one_planar_bound, 12);
        assert_eq!(r.triangle_free_holds, None);

        // n = 6 with 13 edges: above 3n - 6 = 12.
        let mut g = complete(6);
        while g.edge_count() > 13 {
            g = g.without_edge(0);
        }
        let r = check_size_bounds(&g, true);
        assert_eq!(r.triangle_free_holds, Some(false));
        assert_eq!(r.triangle_free_slack, Some(-1));
        assert!(!r.holds());
    }

    #[test]
    fn components() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(g.components(), (2, vec![0, 0, 0, 1, 1, 1]));
        assert!(!g.is_connected());
        assert!(petersen().is_connected());
    }

    #[test]
    fn named_graphs() {
        assert_eq!(petersen().edge_count(), 15);
        assert!((0..10).all(|v| petersen().degree(v).unwrap() == 3));
        assert_eq!(cube().edge_count(), 12);
        assert!(cube().is_bipartite().is_some());
    }
}
