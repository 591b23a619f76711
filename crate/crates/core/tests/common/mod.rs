#![allow(dead_code)]

use onechroma::drawing::{fixtures, OnePlanarDrawing};
use onechroma::generator::{gen_theorem1_instance, GenMode, GenSpec, Instance};
use onechroma::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The spec used for seed `s` of the acceptance-style corpus.
pub fn corpus_spec(s: u64) -> GenSpec {
    GenSpec {
        seed: s,
        n: 20 + (s as usize * 7) % 21,
        target_delta: 7,
        crossings: 3 + s as usize % 6,
        mode: if s % 2 == 0 {
            GenMode::Bipartite
        } else {
            GenMode::TriangleFree
        },
    }
}

pub fn corpus(seeds: std::ops::RangeInclusive<u64>) -> Vec<Instance> {
    seeds
        .map(|s| gen_theorem1_instance(&corpus_spec(s)).expect("corpus spec generates"))
        .collect()
}

/// Hand-built drawings, all valid and triangle-free.
pub fn curated() -> Vec<(&'static str, OnePlanarDrawing)> {
    vec![
        ("hex_x", fixtures::hex_x()),
        ("c4", fixtures::cycle(4)),
        ("c6", fixtures::cycle(6)),
        ("c8", fixtures::cycle(8)),
        ("cube", fixtures::cube()),
        ("k33", fixtures::k33()),
        ("p3", fixtures::path(3)),
        ("star7", fixtures::star(7)),
        ("edge", fixtures::single_edge()),
        ("c5", fixtures::cycle(5)),
    ]
}

/// G(n, p) graph from a seed.
pub fn random_graph(seed: u64, n: usize, p: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}
