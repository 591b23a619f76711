mod common;

use onechroma::drawing::planarize;
use onechroma::lemma::{
    check_critical_size, check_lemma1, check_lemma2, check_theorem1, f3_bound_violations,
    Caveat, Verdict,
};

const BUDGET: u64 = 5_000_000;

#[test]
fn curated_drawings_pass_lemmas_1_and_2() {
    let curated = common::curated();
    assert!(curated.len() >= 10);
    for (name, d) in curated {
        let p = planarize(&d).unwrap();
        for r in [check_lemma1(&p, d.graph()).unwrap(), check_lemma2(&p, d.graph()).unwrap()] {
            assert_eq!(r.verdict, Verdict::Pass, "{name}: {r:?}");
            assert!(r.caveats.contains(&Caveat::ConditionalOnMinimalDrawing));
        }
    }
}

#[test]
fn generated_corpus_respects_face_bounds() {
    let corpus = common::corpus(1..=200);
    let mut witnesses = 0;
    for inst in &corpus {
        let p = planarize(&inst.drawing).unwrap();
        let bad = f3_bound_violations(&p, inst.graph()).unwrap();
        if !bad.is_empty() {
            witnesses += 1;
            let l1 = check_lemma1(&p, inst.graph()).unwrap();
            let l2 = check_lemma2(&p, inst.graph()).unwrap();
            assert!(l1.verdict == Verdict::Fail || l2.verdict == Verdict::Fail);
            assert!(l2.violations.iter().all(|v| v.case.is_some()));
        }
    }
    assert!(witnesses * 20 < corpus.len(), "{witnesses} non-minimality witnesses");
}

#[test]
fn theorem1_and_size_lemma_on_corpus() {
    for inst in common::corpus(1..=40) {
        let g = inst.graph();
        let r = check_theorem1(g, &inst.drawing, BUDGET).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", inst.spec);
        assert_eq!(check_critical_size(g, 8, true).verdict, Verdict::Fail);
        assert_eq!(check_critical_size(g, 7, true).verdict, Verdict::NotApplicable);
    }
}
