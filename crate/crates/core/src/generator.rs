//! Seeded construction of triangle-free 1-planar drawings.
//!
//! Instances start from a plane bipartite graph grown by ears inside faces,
//! so triangle-freeness holds by construction. Crossings are added as pairs
//! of interleaved chords drawn inside a single face of degree at least 6.
//! Every random choice comes from a ChaCha stream keyed by the seed.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::drawing::{build, fixtures, validate_drawing, CrossingPair, OnePlanarDrawing};
use crate::error::{Error, Result};
use crate::graph::{check_size_bounds, Graph};
use crate::io::write_opg;

/// Attempts made by [`gen_theorem1_instance`] before giving up.
pub const MAX_ATTEMPTS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenMode {
    /// Every chord joins the two colour classes, so the output is bipartite.
    Bipartite,
    /// Chords only avoid adjacent endpoints and common neighbours.
    TriangleFree,
}

impl fmt::Display for GenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenMode::Bipartite => "bipartite",
            GenMode::TriangleFree => "triangle-free",
        })
    }
}

impl FromStr for GenMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bipartite" => Ok(GenMode::Bipartite),
            "triangle-free" | "triangle_free" | "trianglefree" => Ok(GenMode::TriangleFree),
            other => Err(Error::InvalidArgument(format!(
                "unknown mode {other:?} (expected bipartite or triangle-free)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenSpec {
    pub seed: u64,
    pub n: usize,
    /// Required maximum degree. Generated instances hit it exactly.
    pub target_delta: usize,
    pub crossings: usize,
    pub mode: GenMode,
}

impl GenSpec {
    pub fn check(&self) -> Result<()> {
        if self.n < 4 {
            return Err(Error::InvalidArgument(format!(
                "n = {} is below the minimum of 4",
                self.n
            )));
        }
        if self.target_delta + 1 > self.n {
            return Err(Error::InvalidArgument(format!(
                "target delta {} exceeds n - 1 = {}",
                self.target_delta,
                self.n - 1
            )));
        }
        if self.target_delta < 2 {
            return Err(Error::InvalidArgument(
                "target delta must be at least 2".into(),
            ));
        }
        Ok(())
    }
}

/// A generated drawing with the data needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub drawing: OnePlanarDrawing,
    pub spec: GenSpec,
    /// Index `i` of the successful attempt; its sub-seed is `seed ^ i`.
    pub attempt: u32,
    pub crossings_inserted: usize,
}

impl Instance {
    pub fn graph(&self) -> &Graph {
        self.drawing.graph()
    }

    pub fn achieved_delta(&self) -> usize {
        self.graph().max_degree()
    }

    /// Metadata lines written as comments ahead of the drawing.
    pub fn header(&self) -> Vec<String> {
        vec![
            "generated by onechroma".to_string(),
            format!("seed {}", self.spec.seed),
            format!("mode {}", self.spec.mode),
            format!("n {}", self.spec.n),
            format!("target_delta {}", self.spec.target_delta),
            format!("achieved_delta {}", self.achieved_delta()),
            format!("crossings_requested {}", self.spec.crossings),
            format!("crossings_inserted {}", self.crossings_inserted),
            format!("attempt {}", self.attempt),
        ]
    }

    pub fn to_opg(&self) -> String {
        write_opg(&self.drawing, &self.header())
    }
}

/// Mutable rotation system used while growing a drawing.
struct Builder {
    graph: Graph,
    crossings: Vec<CrossingPair>,
    rotations: Vec<Vec<usize>>,
}

impl Builder {
    fn from_drawing(d: OnePlanarDrawing) -> Self {
        let (graph, crossings, rotations) = d.into_parts();
        Builder {
            graph,
            crossings,
            rotations,
        }
    }

    fn drawing(&self) -> OnePlanarDrawing {
        OnePlanarDrawing::new(
            self.graph.clone(),
            self.crossings.clone(),
            self.rotations.clone(),
        )
    }

    /// Face walks of the current planarization.
    fn faces(&self) -> Vec<Vec<usize>> {
        build(&self.drawing()).faces().to_vec()
    }

    /// Slot at `walk[i]` of the dart leaving along the walk. Rotation slots
    /// of original vertices coincide in the drawing and its planarization.
    fn out_slot(&self, walk: &[usize], i: usize) -> usize {
        let n = self.graph.vertex_count();
        let u = walk[i];
        let next = walk[(i + 1) % walk.len()];
        let target = if next >= n {
            // the segment towards a crossing belongs to the crossed edge at u
            let x = &self.crossings[next - n];
            if x.first.0 == u || x.first.1 == u {
                x.first.0 + x.first.1 - u
            } else {
                x.second.0 + x.second.1 - u
            }
        } else {
            next
        };
        self.rotations[u]
            .iter()
            .position(|&w| w == target)
            .expect("walk follows rotation darts")
    }

    /// Draws a path with `inner` new vertices from corner `i` to corner `j`
    /// of `walk`, splitting that face in two.
    fn insert_path(&mut self, walk: &[usize], i: usize, j: usize, inner: usize) {
        let (a, c) = (walk[i], walk[j]);
        let (sa, sc) = (self.out_slot(walk, i), self.out_slot(walk, j));
        let mut chain = vec![a];
        for _ in 0..inner {
            let v = self.graph.add_vertex();
            self.rotations.push(Vec::new());
            chain.push(v);
        }
        chain.push(c);
        for w in chain.windows(2) {
            self.graph.add_edge(w[0], w[1]).expect("fresh path edge");
        }
        for k in 1..chain.len() - 1 {
            self.rotations[chain[k]] = vec![chain[k - 1], chain[k + 1]];
        }
        self.rotations[a].insert(sa, chain[1]);
        self.rotations[c].insert(sc, chain[chain.len() - 2]);
    }

    /// Draws chords `walk[i]–walk[j]` and `walk[k]–walk[l]`, with
    /// `i < k < j < l`, crossing each other inside the face.
    fn insert_crossing(&mut self, walk: &[usize], i: usize, k: usize, j: usize, l: usize) {
        let (a, c, b, d) = (walk[i], walk[k], walk[j], walk[l]);
        let slots = [
            (a, b, self.out_slot(walk, i)),
            (b, a, self.out_slot(walk, j)),
            (c, d, self.out_slot(walk, k)),
            (d, c, self.out_slot(walk, l)),
        ];
        for (u, w, s) in slots {
            self.rotations[u].insert(s, w);
        }
        self.graph.add_edge(a, b).expect("admissible chord");
        self.graph.add_edge(c, d).expect("admissible chord");
        // the face is traced a, c, b, d, so the crossing sees (a, d, b, c)
        self.crossings.push(CrossingPair::new((a, b), (d, c), 0));
    }
}

/// Plane bipartite quadrangulation on `n` vertices: a 4-cycle grown by
/// paths of length two across opposite corners of random 4-faces.
pub fn gen_quadrangulation(seed: u64, n: usize) -> Result<OnePlanarDrawing> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "a quadrangulation needs at least 4 vertices, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::from_drawing(fixtures::cycle(4));
    while b.graph.vertex_count() < n {
        let faces = b.faces();
        let walk = faces.choose(&mut rng).expect("at least two faces");
        let i = rng.gen_range(0..4);
        b.insert_path(walk, i, (i + 2) % 4, 1);
    }
    Ok(b.drawing())
}

struct ChordRules<'a> {
    graph: &'a Graph,
    sides: Option<Vec<u8>>,
    cap: Option<usize>,
}

impl ChordRules<'_> {
    fn admits(&self, u: usize, v: usize) -> bool {
        let g = self.graph;
        if u == v || g.has_edge(u, v) || g.common_neighbor(u, v).is_some() {
            return false;
        }
        if let Some(cap) = self.cap {
            if g.deg(u) >= cap || g.deg(v) >= cap {
                return false;
            }
        }
        match &self.sides {
            Some(side) => side[u] != side[v],
            None => true,
        }
    }
}

fn walk_distance(len: usize, i: usize, j: usize) -> usize {
    let d = j.abs_diff(i);
    d.min(len - d)
}

/// Every admissible crossing position `(face, i, k, j, l)` in `b`.
fn crossing_candidates(b: &Builder, faces: &[Vec<usize>], rules: &ChordRules<'_>) -> Vec<(usize, [usize; 4])> {
    let n = b.graph.vertex_count();
    let mut out = Vec::new();
    for (f, walk) in faces.iter().enumerate() {
        let len = walk.len();
        if len < 6 {
            continue;
        }
        let original: Vec<usize> = (0..len).filter(|&p| walk[p] < n).collect();
        for (x, &i) in original.iter().enumerate() {
            for (y, &k) in original.iter().enumerate().skip(x + 1) {
                for (z, &j) in original.iter().enumerate().skip(y + 1) {
                    if walk_distance(len, i, j) < 3 || !rules.admits(walk[i], walk[j]) {
                        continue;
                    }
                    for &l in &original[z + 1..] {
                        let ends = [walk[i], walk[k], walk[j], walk[l]];
                        let distinct = (0..4).all(|s| (s + 1..4).all(|t| ends[s] != ends[t]));
                        if distinct
                            && walk_distance(len, k, l) >= 3
                            && rules.admits(walk[k], walk[l])
                        {
                            out.push((f, [i, k, j, l]));
                        }
                    }
                }
            }
        }
    }
    out
}

fn require_generator_input(d: &OnePlanarDrawing, mode: GenMode) -> Result<()> {
    let report = validate_drawing(d);
    if !report.is_ok() {
        return Err(Error::InvalidDrawing(report));
    }
    if let Some((a, b, c)) = d.graph().find_triangle() {
        return Err(Error::InvalidArgument(format!(
            "input graph has a triangle {a} {b} {c}"
        )));
    }
    if mode == GenMode::Bipartite && d.graph().is_bipartite().is_none() {
        return Err(Error::InvalidArgument(
            "bipartite mode needs a bipartite input graph".into(),
        ));
    }
    Ok(())
}

/// Inserts up to `k` crossing pairs into `d`. Returns the new drawing and
/// the number of pairs actually inserted.
pub fn add_crossing_pairs(
    d: &OnePlanarDrawing,
    k: usize,
    seed: u64,
    mode: GenMode,
) -> Result<(OnePlanarDrawing, usize)> {
    add_crossing_pairs_capped(d, k, seed, mode, None)
}

/// As [`add_crossing_pairs`], refusing chords whose endpoints already have
/// degree `cap` or more.
pub fn add_crossing_pairs_capped(
    d: &OnePlanarDrawing,
    k: usize,
    seed: u64,
    mode: GenMode,
    cap: Option<usize>,
) -> Result<(OnePlanarDrawing, usize)> {
    require_generator_input(d, mode)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::from_drawing(d.clone());
    let inserted = insert_crossings(&mut b, k, mode, cap, &mut rng);
    Ok((b.drawing(), inserted))
}

fn insert_crossings(b: &mut Builder, k: usize, mode: GenMode, cap: Option<usize>, rng: &mut ChaCha8Rng) -> usize {
    for done in 0..k {
        let faces = b.faces();
        let candidates = {
            let sides = match mode {
                GenMode::Bipartite => b.graph.is_bipartite(),
                GenMode::TriangleFree => None,
            };
            let rules = ChordRules {
                graph: &b.graph,
                sides,
                cap,
            };
            crossing_candidates(b, &faces, &rules)
        };
        // shortest faces first, so long faces stay available for later pairs
        let Some(shortest) = candidates.iter().map(|c| faces[c.0].len()).min() else {
            return done;
        };
        let mut hosts: Vec<usize> = candidates
            .iter()
            .filter(|c| faces[c.0].len() == shortest)
            .map(|c| c.0)
            .collect();
        hosts.dedup();
        let host = *hosts.choose(rng).expect("non-empty");
        let here: Vec<_> = candidates.iter().filter(|c| c.0 == host).collect();
        let &(f, [i, kk, j, l]) = *here.choose(rng).expect("non-empty");
        b.insert_crossing(&faces[f], i, kk, j, l);
    }
    k
}

/// Why a single attempt failed; the most frequent reason is reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Shortfall {
    HubDegree,
    Growth,
    Crossings,
    Invalid,
}

impl Shortfall {
    fn describe(self, spec: &GenSpec) -> String {
        match self {
            Shortfall::HubDegree => format!(
                "maximum degree {} not reachable with {} vertices",
                spec.target_delta, spec.n
            ),
            Shortfall::Growth => format!(
                "no room to grow to {} vertices under degree cap {}",
                spec.n, spec.target_delta
            ),
            Shortfall::Crossings => format!(
                "fewer than {} admissible crossing pairs",
                spec.crossings
            ),
            Shortfall::Invalid => "output failed validation".to_string(),
        }
    }
}

/// Triangle-free 1-planar drawing on exactly `spec.n` vertices with maximum
/// degree exactly `spec.target_delta` and exactly `spec.crossings` crossing
/// pairs. Attempt `i` uses sub-seed `spec.seed ^ i`.
pub fn gen_theorem1_instance(spec: &GenSpec) -> Result<Instance> {
    spec.check()?;
    let mut tally = std::collections::BTreeMap::new();
    for attempt in 0..MAX_ATTEMPTS {
        match try_instance(spec, spec.seed ^ u64::from(attempt)) {
            Ok((drawing, inserted)) => {
                return Ok(Instance {
                    drawing,
                    spec: *spec,
                    attempt,
                    crossings_inserted: inserted,
                })
            }
            Err(why) => *tally.entry(why).or_insert(0u32) += 1,
        }
    }
    let worst = tally
        .iter()
        .max_by_key(|(why, count)| (**count, std::cmp::Reverse(**why)))
        .map(|(why, _)| *why)
        .unwrap_or(Shortfall::Invalid);
    Err(Error::GenerationFailed {
        attempts: MAX_ATTEMPTS,
        constraint: worst.describe(spec),
    })
}

fn try_instance(spec: &GenSpec, seed: u64) -> std::result::Result<(OnePlanarDrawing, usize), Shortfall> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = spec.target_delta;
    let hub = 0;
    let hub_need = cap.saturating_sub(2);
    if spec.n < 4 + hub_need {
        return Err(Shortfall::HubDegree);
    }
    // a long starting cycle leaves big faces to carve 6-faces from
    let longest = (spec.n - hub_need).min(16) & !1;
    let start = if longest > 8 {
        2 * rng.gen_range(4..=longest / 2)
    } else {
        longest
    };
    let mut b = Builder::from_drawing(fixtures::cycle(start));

    while b.graph.deg(hub) < cap {
        let faces = b.faces();
        if !hub_ear(&mut b, &faces, hub, cap, &mut rng) {
            return Err(Shortfall::HubDegree);
        }
    }
    let mut chords_left = spec.n / 4;
    while b.graph.vertex_count() < spec.n {
        let left = spec.n - b.graph.vertex_count();
        let faces = b.faces();
        let roll: f64 = rng.gen();
        let grown = (roll < 0.4 && grow(&mut b, &faces, cap, Growth::Carve, &mut rng))
            || (roll < 0.55 && chords_left > 0 && {
                chords_left -= 1;
                grow(&mut b, &faces, cap, Growth::Chord, &mut rng)
            })
            || (left >= 2 && roll < 0.8 && grow(&mut b, &faces, cap, Growth::Widen, &mut rng))
            || grow(&mut b, &faces, cap, Growth::Ear, &mut rng)
            || grow(&mut b, &faces, cap, Growth::Carve, &mut rng)
            || grow(&mut b, &faces, cap, Growth::AnyEar, &mut rng);
        if !grown {
            return Err(Shortfall::Growth);
        }
    }

    let inserted = insert_crossings(&mut b, spec.crossings, spec.mode, Some(cap), &mut rng);
    if inserted < spec.crossings {
        return Err(Shortfall::Crossings);
    }
    let d = b.drawing();
    let g = d.graph();
    let ok = validate_drawing(&d).is_ok()
        && g.is_triangle_free()
        && g.max_degree() == cap
        && check_size_bounds(g, true).holds()
        && (spec.mode == GenMode::TriangleFree || g.is_bipartite().is_some());
    if !ok {
        return Err(Shortfall::Invalid);
    }
    Ok((d, inserted))
}

/// Adds a path of length two from the hub, cutting off a 6-face when the
/// face is long enough and a 4-face otherwise.
fn hub_ear(b: &mut Builder, faces: &[Vec<usize>], hub: usize, cap: usize, rng: &mut ChaCha8Rng) -> bool {
    let mut long = Vec::new();
    let mut short = Vec::new();
    for (f, walk) in faces.iter().enumerate() {
        let len = walk.len();
        let Some(i) = walk.iter().position(|&v| v == hub) else {
            continue;
        };
        for step in [2, 4, len - 4, len - 2] {
            if step < 2 || step + 2 > len {
                continue;
            }
            let j = (i + step) % len;
            if b.graph.deg(walk[j]) >= cap {
                continue;
            }
            if walk_distance(len, i, j) == 4 && len >= 8 {
                long.push((f, i, j));
            } else {
                short.push((f, i, j));
            }
        }
    }
    let pool = if long.is_empty() { short } else { long };
    match pool.choose(rng) {
        Some(&(f, i, j)) => {
            b.insert_path(&faces[f], i, j, 1);
            true
        }
        None => false,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Growth {
    /// One new vertex across opposite corners of a 4-face.
    Ear,
    /// One new vertex across corners at distance 4 of a face of length at
    /// least 8, cutting off a 6-face.
    Carve,
    /// Two new vertices across an edge of a 4-face, leaving a 6-face.
    Widen,
    /// A plain edge cutting a 6-face off a face of length at least 10.
    Chord,
    /// One new vertex across corners at distance 2 of any face.
    AnyEar,
}

fn grow(b: &mut Builder, faces: &[Vec<usize>], cap: usize, kind: Growth, rng: &mut ChaCha8Rng) -> bool {
    let free = |v: usize| b.graph.deg(v) < cap;
    let mut options = Vec::new();
    for (f, walk) in faces.iter().enumerate() {
        let len = walk.len();
        for i in 0..len {
            if !free(walk[i]) {
                continue;
            }
            for j in i + 1..len {
                let dist = walk_distance(len, i, j);
                let fits = match kind {
                    Growth::Ear => len == 4 && dist == 2,
                    Growth::AnyEar => dist == 2,
                    Growth::Carve => len >= 8 && dist == 4,
                    Growth::Widen => len == 4 && dist == 1,
                    Growth::Chord => {
                        len >= 10 && dist == 5 && !b.graph.has_edge(walk[i], walk[j])
                    }
                };
                if fits && free(walk[j]) {
                    options.push((f, i, j));
                }
            }
        }
    }
    let Some(&(f, i, j)) = options.choose(rng) else {
        return false;
    };
    let inner = match kind {
        Growth::Ear | Growth::Carve | Growth::AnyEar => 1,
        Growth::Widen => 2,
        Growth::Chord => 0,
    };
    b.insert_path(&faces[f], i, j, inner);
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::planarize;

    #[test]
    fn quadrangulation_is_valid_and_bipartite() {
        for n in [4, 5, 8, 13, 30] {
            let d = gen_quadrangulation(1, n).unwrap();
            assert!(validate_drawing(&d).is_ok(), "n={n}");
            assert_eq!(d.graph().vertex_count(), n);
            assert_eq!(d.graph().edge_count(), 2 * n - 4);
            assert!(d.graph().is_bipartite().is_some());
            let p = planarize(&d).unwrap();
            assert!(p.face_degrees().iter().all(|&f| f == 4));
        }
        assert_eq!(gen_quadrangulation(2, 4).unwrap(), fixtures::cycle(4));
        assert!(gen_quadrangulation(1, 3).is_err());
    }

    #[test]
    fn quadrangulation_is_deterministic() {
        let a = write_opg(&gen_quadrangulation(1, 8).unwrap(), &[]);
        let b = write_opg(&gen_quadrangulation(1, 8).unwrap(), &[]);
        assert_eq!(a, b);
    }

    #[test]
    fn c6_with_one_pair_is_hex_x() {
        for seed in 0..8 {
            let (d, k) = add_crossing_pairs(&fixtures::cycle(6), 1, seed, GenMode::Bipartite).unwrap();
            assert_eq!(k, 1);
            let p = planarize(&d).unwrap();
            assert_eq!(p.face_degrees(), vec![3, 3, 4, 4, 6]);
            let g = d.graph();
            assert_eq!(g.edge_count(), 8);
            let x = d.crossings()[0];
            for (u, v) in [x.first, x.second] {
                assert_eq!(u.abs_diff(v), 3);
            }
        }
    }

    #[test]
    fn zero_pairs_is_identity() {
        let d = fixtures::hex_x();
        let (out, k) = add_crossing_pairs(&d, 0, 5, GenMode::TriangleFree).unwrap();
        assert_eq!((out, k), (d, 0));
    }

    #[test]
    fn four_faces_admit_nothing() {
        let d = gen_quadrangulation(3, 12).unwrap();
        let (out, k) = add_crossing_pairs(&d, 1, 3, GenMode::TriangleFree).unwrap();
        assert_eq!((out, k), (d, 0));
    }

    #[test]
    fn rejects_triangles() {
        assert!(add_crossing_pairs(&fixtures::k4(), 1, 0, GenMode::TriangleFree).is_err());
    }

    #[test]
    fn theorem1_instance_properties() {
        let spec = GenSpec {
            seed: 7,
            n: 30,
            target_delta: 7,
            crossings: 5,
            mode: GenMode::Bipartite,
        };
        let inst = gen_theorem1_instance(&spec).unwrap();
        let g = inst.graph();
        assert_eq!(g.vertex_count(), 30);
        assert_eq!(g.max_degree(), 7);
        assert_eq!(inst.crossings_inserted, 5);
        assert!(g.is_triangle_free());
        assert!(g.is_bipartite().is_some());
        assert!(g.edge_count() <= 3 * 30 - 6);
        assert!(validate_drawing(&inst.drawing).is_ok());
        assert_eq!(inst, gen_theorem1_instance(&spec).unwrap());
    }

    #[test]
    fn target_above_n_minus_one_is_rejected() {
        let spec = GenSpec {
            seed: 1,
            n: 5,
            target_delta: 7,
            crossings: 0,
            mode: GenMode::Bipartite,
        };
        assert!(matches!(gen_theorem1_instance(&spec), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn mode_parses() {
        assert_eq!("bipartite".parse::<GenMode>().unwrap(), GenMode::Bipartite);
        assert_eq!("triangle-free".parse::<GenMode>().unwrap(), GenMode::TriangleFree);
        assert!("planar".parse::<GenMode>().is_err());
    }
}
