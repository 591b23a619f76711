//! Charge ledger checked against a per-element recomputation of the rules.

mod common;

use num_rational::Rational64;
use onechroma::discharge::{apply_rules, euler_charge_total, initial_charges, Element, Rule};
use onechroma::drawing::{planarize, OnePlanarDrawing};
use onechroma::generator::{gen_theorem1_instance, GenMode, GenSpec};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// What each rule does to each element, summed directly from degrees and
/// face walks.
fn expected_final(d: &OnePlanarDrawing) -> Vec<(Element, Rational64)> {
    let p = planarize(d).unwrap();
    let g = d.graph();
    let deg = |v: usize| g.degree(v).unwrap() as i64;
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        let dv = deg(v);
        let mut c = q(dv - 4, 1);
        for u in g.neighbors(v) {
            let du = deg(u);
            if dv == 7 && (2..=6).contains(&du) {
                c -= q(1, du - 1);
            }
            if du == 7 && (2..=6).contains(&dv) {
                c += q(1, dv - 1);
            }
            if dv == 6 {
                c -= match du {
                    3 => q(1, 2),
                    4 => q(1, 6),
                    _ => q(0, 1),
                };
            }
            if du == 6 {
                c += match dv {
                    3 => q(1, 2),
                    4 => q(1, 6),
                    _ => q(0, 1),
                };
            }
        }
        for walk in p.faces() {
            let crossings = walk.iter().filter(|&&x| p.is_crossing(x)).count();
            let hits = walk.iter().filter(|&&x| x == v).count() as i64;
            if walk.len() == 3 && crossings == 1 {
                c -= q(hits, 2);
            }
            if walk.len() >= 6 && dv == 3 {
                c += q(2 * hits, 3);
            }
        }
        out.push((Element::vertex(&p, v), c));
    }
    for z in g.vertex_count()..p.vertex_count() {
        out.push((Element::vertex(&p, z), q(0, 1)));
    }
    for (f, walk) in p.faces().iter().enumerate() {
        let len = walk.len() as i64;
        let mut c = q(len - 4, 1);
        let crossings = walk.iter().filter(|&&x| p.is_crossing(x)).count();
        if len == 3 && crossings == 1 {
            c += q(1, 1);
        }
        if len >= 6 {
            let threes = walk.iter().filter(|&&x| !p.is_crossing(x) && deg(x) == 3).count() as i64;
            c -= q(2 * threes, 3);
        }
        out.push((Element::face(f), c));
    }
    out
}

fn check(d: &OnePlanarDrawing) {
    let p = planarize(d).unwrap();
    let ledger = apply_rules(&p, d.graph()).unwrap();
    assert_eq!(ledger.initial_total(), q(-8, 1));
    assert_eq!(euler_charge_total(&p).unwrap(), q(-8, 1));
    assert_eq!(initial_charges(&p).unwrap().initial, ledger.initial);
    assert!(ledger.is_conserved());
    assert_eq!(ledger.replay(), ledger.final_charges);
    for (e, c) in expected_final(d) {
        assert_eq!(ledger.final_charges[&e], c, "{e}");
    }
    let allowed = [q(1, 1), q(1, 2), q(1, 3), q(1, 4), q(1, 5), q(1, 6), q(2, 3)];
    for t in &ledger.transfers {
        assert!(allowed.contains(&t.amount), "{:?}", t);
        assert_eq!(60 % t.amount.denom(), 0);
        match t.rule {
            Rule::R3 => assert_eq!(p.face_degree(t.target.id), 3),
            Rule::R4 => assert!(p.face_degree(t.source.id) >= 6),
            Rule::R1 | Rule::R2 => assert!(!p.is_crossing(t.source.id) && !p.is_crossing(t.target.id)),
        }
    }
    let keys: Vec<_> = ledger.transfers.iter().map(|t| (t.rule, t.source, t.target)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn curated_drawings() {
    for (_, d) in common::curated() {
        check(&d);
    }
}

#[test]
fn generated_corpus() {
    for inst in common::corpus(1..=60) {
        check(&inst.drawing);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_instances(seed in any::<u64>(), n in 16usize..48, delta in 5usize..9, k in 0usize..6, bip in any::<bool>()) {
        let spec = GenSpec {
            seed,
            n,
            target_delta: delta,
            crossings: k,
            mode: if bip { GenMode::Bipartite } else { GenMode::TriangleFree },
        };
        if let Ok(inst) = gen_theorem1_instance(&spec) {
            check(&inst.drawing);
        }
    }
}
