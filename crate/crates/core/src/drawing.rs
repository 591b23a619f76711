//! Combinatorial 1-planar drawings and their planarization.
//!
//! A drawing is a rotation system on the original vertices plus a list of
//! crossing pairs. Planarizing replaces every crossing with a degree-4
//! vertex, producing a plane graph whose faces are traced from the
//! rotations. The successor of a dart `u -> w` is the rotation successor,
//! at `w`, of the reverse dart `w -> u`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Two edges of the drawing that cross each other once.
///
/// Orientation 0 puts the four ends in cyclic order `(a, c, b, d)` around
/// the crossing point, orientation 1 gives `(a, d, b, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CrossingPair {
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub orientation: u8,
}

impl CrossingPair {
    pub fn new(first: (usize, usize), second: (usize, usize), orientation: u8) -> Self {
        CrossingPair {
            first,
            second,
            orientation,
        }
    }

    /// Cyclic order of the four original endpoints around the crossing.
    pub fn rotation(&self) -> [usize; 4] {
        let (a, b) = self.first;
        let (c, d) = self.second;
        if self.orientation == 0 {
            [a, c, b, d]
        } else {
            [a, d, b, c]
        }
    }

    pub fn endpoints(&self) -> [usize; 4] {
        [self.first.0, self.first.1, self.second.0, self.second.1]
    }

    fn involves(&self, u: usize, v: usize) -> bool {
        same_edge(self.first, (u, v)) || same_edge(self.second, (u, v))
    }
}

fn same_edge(a: (usize, usize), b: (usize, usize)) -> bool {
    a == b || a == (b.1, b.0)
}

/// A graph together with a rotation system and crossing declarations.
///
/// `rotations[u]` lists the neighbors of `u` in cyclic order; for a crossed
/// edge `{u, w}` the entry `w` stands for the segment from `u` to the
/// crossing on that edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnePlanarDrawing {
    graph: Graph,
    crossings: Vec<CrossingPair>,
    rotations: Vec<Vec<usize>>,
}

impl OnePlanarDrawing {
    /// Assembles a drawing without validating it; see [`validate_drawing`].
    pub fn new(graph: Graph, crossings: Vec<CrossingPair>, rotations: Vec<Vec<usize>>) -> Self {
        OnePlanarDrawing {
            graph,
            crossings,
            rotations,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn crossings(&self) -> &[CrossingPair] {
        &self.crossings
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    /// For each edge id, the index of the crossing pair containing it.
    /// Edges listed in more than one pair map to the first such pair.
    pub fn edge_crossings(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.graph.edge_count()];
        for (i, x) in self.crossings.iter().enumerate() {
            for (u, v) in [x.first, x.second] {
                if let Some(id) = self.graph.edge_id(u, v) {
                    out[id].get_or_insert(i);
                }
            }
        }
        out
    }

    pub fn crossing_on(&self, u: usize, v: usize) -> Option<usize> {
        self.crossings.iter().position(|x| x.involves(u, v))
    }

    pub(crate) fn into_parts(self) -> (Graph, Vec<CrossingPair>, Vec<Vec<usize>>) {
        (self.graph, self.crossings, self.rotations)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EmptyGraph,
    CrossingNotAnEdge { crossing: usize, edge: (usize, usize) },
    CrossingSameEdge { crossing: usize },
    EdgeCrossedTwice { edge: (usize, usize), crossings: Vec<usize> },
    SharedEndpoint { crossing: usize, vertex: usize },
    BadOrientation { crossing: usize, orientation: u8 },
    RotationCount { expected: usize, found: usize },
    RotationDartCount { vertex: usize, degree: usize, darts: usize },
    RotationBadDart { vertex: usize, dart: usize },
    AdjacentCrossings { first: usize, second: usize },
    Disconnected { components: usize },
    EulerFailure { vertices: usize, edges: usize, faces: usize },
    DegenerateFace { face: usize, degree: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyGraph => write!(f, "drawing has no vertices"),
            Violation::CrossingNotAnEdge { crossing, edge } => write!(
                f,
                "crossing {crossing}: {{{} {}}} is not an edge",
                edge.0, edge.1
            ),
            Violation::CrossingSameEdge { crossing } => {
                write!(f, "crossing {crossing}: an edge cannot cross itself")
            }
            Violation::EdgeCrossedTwice { edge, crossings } => write!(
                f,
                "edge {{{} {}}} crossed twice (crossings {:?})",
                edge.0, edge.1, crossings
            ),
            Violation::SharedEndpoint { crossing, vertex } => write!(
                f,
                "crossing {crossing}: crossed edges share endpoint {vertex}"
            ),
            Violation::BadOrientation {
                crossing,
                orientation,
            } => write!(f, "crossing {crossing}: orientation {orientation} not in {{0,1}}"),
            Violation::RotationCount { expected, found } => {
                write!(f, "expected {expected} rotations, found {found}")
            }
            Violation::RotationDartCount {
                vertex,
                degree,
                darts,
            } => write!(
                f,
                "rotation at {vertex} lists {darts} darts but degree is {degree}"
            ),
            Violation::RotationBadDart { vertex, dart } => write!(
                f,
                "rotation at {vertex}: dart {dart} is not an incidence or is repeated"
            ),
            Violation::AdjacentCrossings { first, second } => {
                write!(f, "crossing vertices {first} and {second} are adjacent")
            }
            Violation::Disconnected { components } => {
                write!(f, "drawing is disconnected ({components} components)")
            }
            Violation::EulerFailure {
                vertices,
                edges,
                faces,
            } => write!(
                f,
                "not a sphere embedding: {vertices} - {edges} + {faces} != 2"
            ),
            Violation::DegenerateFace { face, degree } => {
                write!(f, "face {face} has degree {degree} < 3")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "OK");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks the drawing axioms, the rotation system and the sphere embedding.
pub fn validate_drawing(d: &OnePlanarDrawing) -> ValidationReport {
    let mut violations = structural_violations(d);
    if !violations.is_empty() {
        return ValidationReport { violations };
    }
    let g = &d.graph;
    let (components, _) = g.components();
    if components > 1 {
        violations.push(Violation::Disconnected { components });
        return ValidationReport { violations };
    }

    let p = build(d);
    for z in p.n_original..p.vertex_count() {
        for &w in &p.rotations[z] {
            if p.is_crossing(w) && z < w {
                violations.push(Violation::AdjacentCrossings {
                    first: z,
                    second: w,
                });
            }
        }
    }
    let (v, e, f) = (p.vertex_count(), p.edge_count(), p.face_count());
    if v + f != e + 2 {
        violations.push(Violation::EulerFailure {
            vertices: v,
            edges: e,
            faces: f,
        });
    }
    if g.vertex_count() >= 3 && g.edge_count() >= g.vertex_count() {
        for (i, face) in p.faces.iter().enumerate() {
            if face.len() < 3 {
                violations.push(Violation::DegenerateFace {
                    face: i,
                    degree: face.len(),
                });
            }
        }
    }
    ValidationReport { violations }
}

fn structural_violations(d: &OnePlanarDrawing) -> Vec<Violation> {
    let g = &d.graph;
    let mut out = Vec::new();
    if g.vertex_count() == 0 {
        out.push(Violation::EmptyGraph);
        return out;
    }

    let mut uses: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, x) in d.crossings.iter().enumerate() {
        if x.orientation > 1 {
            out.push(Violation::BadOrientation {
                crossing: i,
                orientation: x.orientation,
            });
        }
        let mut both_edges = true;
        for (u, v) in [x.first, x.second] {
            if u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u, v) {
                out.push(Violation::CrossingNotAnEdge {
                    crossing: i,
                    edge: (u, v),
                });
                both_edges = false;
            }
        }
        if same_edge(x.first, x.second) {
            out.push(Violation::CrossingSameEdge { crossing: i });
            continue;
        }
        let [a, b, c, dd] = x.endpoints();
        for shared in [a, b] {
            if shared == c || shared == dd {
                out.push(Violation::SharedEndpoint {
                    crossing: i,
                    vertex: shared,
                });
            }
        }
        if both_edges {
            for (u, v) in [x.first, x.second] {
                uses.entry((u.min(v), u.max(v))).or_default().push(i);
            }
        }
    }
    let mut twice: Vec<_> = uses.into_iter().filter(|(_, xs)| xs.len() > 1).collect();
    twice.sort();
    for (edge, crossings) in twice {
        out.push(Violation::EdgeCrossedTwice { edge, crossings });
    }

    if d.rotations.len() != g.vertex_count() {
        out.push(Violation::RotationCount {
            expected: g.vertex_count(),
            found: d.rotations.len(),
        });
        return out;
    }
    for (v, rot) in d.rotations.iter().enumerate() {
        let degree = g.deg(v);
        if rot.len() != degree {
            out.push(Violation::RotationDartCount {
                vertex: v,
                degree,
                darts: rot.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for &w in rot {
            if !g.neighbor_set(v).contains(&w) || !seen.insert(w) {
                out.push(Violation::RotationBadDart { vertex: v, dart: w });
            }
        }
    }
    out
}

/// The plane graph obtained from a drawing by turning every crossing into a
/// vertex. Original vertices keep their ids; crossing `i` becomes vertex
/// `n + i`.
#[derive(Clone, Debug)]
pub struct PlanarizedGraph {
    base: OnePlanarDrawing,
    n_original: usize,
    rotations: Vec<Vec<usize>>,
    position: Vec<HashMap<usize, usize>>,
    faces: Vec<Vec<usize>>,
    dart_face: Vec<Vec<usize>>,
}

/// Validates `d` and builds its planarization.
pub fn planarize(d: &OnePlanarDrawing) -> Result<PlanarizedGraph> {
    let report = validate_drawing(d);
    if !report.is_ok() {
        return Err(Error::InvalidDrawing(report));
    }
    Ok(build(d))
}

pub(crate) fn build(d: &OnePlanarDrawing) -> PlanarizedGraph {
    let n = d.graph.vertex_count();
    let edge_crossing = d.edge_crossings();
    let mut rotations: Vec<Vec<usize>> = Vec::with_capacity(n + d.crossings.len());
    for (u, rot) in d.rotations.iter().enumerate() {
        rotations.push(
            rot.iter()
                .map(|&w| {
                    let id = d.graph.edge_id(u, w).expect("validated dart");
                    edge_crossing[id].map_or(w, |x| n + x)
                })
                .collect(),
        );
    }
    for x in &d.crossings {
        rotations.push(x.rotation().to_vec());
    }
    let position: Vec<HashMap<usize, usize>> = rotations
        .iter()
        .map(|rot| rot.iter().enumerate().map(|(i, &w)| (w, i)).collect())
        .collect();

    let mut dart_face: Vec<Vec<usize>> = rotations
        .iter()
        .map(|r| vec![usize::MAX; r.len()])
        .collect();
    let mut faces = Vec::new();
    for u in 0..rotations.len() {
        for slot in 0..rotations[u].len() {
            if dart_face[u][slot] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let (mut cu, mut cs) = (u, slot);
            while dart_face[cu][cs] == usize::MAX {
                dart_face[cu][cs] = id;
                walk.push(cu);
                let w = rotations[cu][cs];
                let back = position[w][&cu];
                cs = (back + 1) % rotations[w].len();
                cu = w;
            }
            faces.push(walk);
        }
    }
    if faces.is_empty() {
        // a lone vertex still bounds one face
        faces.push(Vec::new());
    }

    PlanarizedGraph {
        base: d.clone(),
        n_original: n,
        rotations,
        position,
        faces,
        dart_face,
    }
}

impl PlanarizedGraph {
    pub fn base(&self) -> &OnePlanarDrawing {
        &self.base
    }

    pub fn original_count(&self) -> usize {
        self.n_original
    }

    pub fn crossing_count(&self) -> usize {
        self.rotations.len() - self.n_original
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotations.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn is_crossing(&self, v: usize) -> bool {
        v >= self.n_original
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.position[u].contains_key(&v)
    }

    /// Vertex sequence of each face boundary walk.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    pub fn face_degree(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    /// Face degrees in ascending order.
    pub fn face_degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.faces.iter().map(Vec::len).collect();
        out.sort_unstable();
        out
    }

    /// Face to the left of the dart `u -> rotation(u)[slot]`.
    pub fn dart_face(&self, u: usize, slot: usize) -> usize {
        self.dart_face[u][slot]
    }

    /// Distinct faces incident to `v`, ascending.
    pub fn faces_at(&self, v: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.dart_face[v].iter().copied().collect();
        set.into_iter().collect()
    }

    /// Number of distinct faces of degree `k` incident to original vertex `v`.
    pub fn f_k(&self, v: usize, k: usize) -> Result<usize> {
        self.check_original(v)?;
        Ok(self
            .faces_at(v)
            .into_iter()
            .filter(|&f| self.faces[f].len() == k)
            .count())
    }

    pub fn f3_count(&self, v: usize) -> Result<usize> {
        self.f_k(v, 3)
    }

    /// Crossing vertices adjacent to original vertex `v`.
    pub fn nc_count(&self, v: usize) -> Result<usize> {
        self.check_original(v)?;
        Ok(self.rotations[v]
            .iter()
            .filter(|&&w| self.is_crossing(w))
            .count())
    }

    fn check_original(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            })
        } else if self.is_crossing(v) {
            Err(Error::CrossingVertex(v))
        } else {
            Ok(())
        }
    }
}

pub fn face_degrees(p: &PlanarizedGraph) -> Vec<usize> {
    p.face_degrees()
}

pub fn f3_count(p: &PlanarizedGraph, v: usize) -> Result<usize> {
    p.f3_count(v)
}

pub fn nc_count(p: &PlanarizedGraph, v: usize) -> Result<usize> {
    p.nc_count(v)
}

/// Drawings used across the test suites and shipped as fixtures.
pub mod fixtures {
    use super::{CrossingPair, OnePlanarDrawing};
    use crate::graph::{named, Graph};

    /// C6 with chords {0,3} and {1,4} crossing inside the hexagon.
    pub fn hex_x() -> OnePlanarDrawing {
        let rotations = vec![
            vec![1, 3, 5],
            vec![2, 4, 0],
            vec![3, 1],
            vec![4, 0, 2],
            vec![5, 1, 3],
            vec![0, 4],
        ];
        OnePlanarDrawing::new(
            named::hex_x(),
            vec![CrossingPair::new((0, 3), (1, 4), 0)],
            rotations,
        )
    }

    /// Plane drawing of the cycle `C_n`.
    pub fn cycle(n: usize) -> OnePlanarDrawing {
        let rotations = (0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect();
        OnePlanarDrawing::new(named::cycle(n), Vec::new(), rotations)
    }

    pub fn path(n: usize) -> OnePlanarDrawing {
        let g = named::path(n);
        let rotations = (0..n).map(|v| g.neighbors(v).collect()).collect();
        OnePlanarDrawing::new(g, Vec::new(), rotations)
    }

    pub fn star(leaves: usize) -> OnePlanarDrawing {
        let g = named::star(leaves);
        let rotations = (0..=leaves).map(|v| g.neighbors(v).collect()).collect();
        OnePlanarDrawing::new(g, Vec::new(), rotations)
    }

    pub fn single_edge() -> OnePlanarDrawing {
        OnePlanarDrawing::new(
            Graph::from_edges(2, &[(0, 1)]).unwrap(),
            Vec::new(),
            vec![vec![1], vec![0]],
        )
    }

    /// Plane cube: outer square 0-1-3-2, inner square 4-5-7-6.
    pub fn cube() -> OnePlanarDrawing {
        let rotations = vec![
            vec![1, 4, 2],
            vec![3, 5, 0],
            vec![0, 6, 3],
            vec![2, 7, 1],
            vec![6, 0, 5],
            vec![4, 1, 7],
            vec![7, 2, 4],
            vec![5, 3, 6],
        ];
        OnePlanarDrawing::new(named::cube(), Vec::new(), rotations)
    }

    /// Plane K4: triangle 0,1,2 with 3 in the middle.
    pub fn k4() -> OnePlanarDrawing {
        let rotations = vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]];
        OnePlanarDrawing::new(named::complete(4), Vec::new(), rotations)
    }

    /// K_{3,3} as HEX-X with the third diameter {2,5} routed outside.
    pub fn k33() -> OnePlanarDrawing {
        let mut g = named::hex_x();
        g.add_edge(2, 5).unwrap();
        let rotations = vec![
            vec![1, 3, 5],
            vec![2, 4, 0],
            vec![3, 1, 5],
            vec![4, 0, 2],
            vec![5, 1, 3],
            vec![0, 4, 2],
        ];
        OnePlanarDrawing::new(g, vec![CrossingPair::new((0, 3), (1, 4), 0)], rotations)
    }
}
