use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use onechroma::discharge::{apply_rules, fmt_charge, negative_elements};
use onechroma::drawing::{planarize, validate_drawing, OnePlanarDrawing};
use onechroma::edge_color::{
    exact_chromatic_index, is_critical, verify_coloring, vizing_color, Criticality,
    CriticalityVerdict, EdgeClass, EdgeColoring,
};
use onechroma::generator::{gen_theorem1_instance, GenSpec};
use onechroma::graph::Graph;
use onechroma::io::{parse_input, write_coloring, Input};
use onechroma::lemma::{
    check_critical_size, check_lemma1, check_lemma2, check_theorem1, check_vizing_adjacency,
    LemmaReport, LemmaTag, Verdict,
};
use onechroma::Error;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::report::{Item, Status};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

struct Loaded {
    path: String,
    sha256: String,
    input: Input,
}

impl Loaded {
    fn item(&self, status: Status, result: serde_json::Value, text: String) -> Item {
        Item {
            path: self.path.clone(),
            sha256: Some(self.sha256.clone()),
            status,
            error: None,
            result,
            text,
        }
    }

    fn error(&self, message: impl Into<String>) -> Item {
        Item::error(&self.path, Some(self.sha256.clone()), message.into())
    }

    fn drawing(&self, command: &str) -> Result<&OnePlanarDrawing, Item> {
        self.input.drawing().ok_or_else(|| {
            self.error(format!(
                "`{command}` needs a drawing, but this is an edge list (use the opg format)"
            ))
        })
    }
}

fn load(path: &Path) -> Result<Loaded, Item> {
    let shown = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|e| Item::error(&shown, None, e.to_string()))?;
    let sha256 = sha256_hex(&bytes);
    let text = String::from_utf8(bytes)
        .map_err(|_| Item::error(&shown, Some(sha256.clone()), "file is not UTF-8".into()))?;
    let input = parse_input(&text).map_err(|e| Item::error(&shown, Some(sha256.clone()), e.to_string()))?;
    Ok(Loaded {
        path: shown,
        sha256,
        input,
    })
}

macro_rules! try_item {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(item) => return item,
        }
    };
}

pub fn validate(path: &Path) -> Item {
    let l = try_item!(load(path));
    let d = try_item!(l.drawing("validate"));
    let report = validate_drawing(d);
    let g = d.graph();
    if report.is_ok() {
        let p = planarize(d).expect("validated");
        let text = format!(
            "OK\nvertices {} edges {} crossings {} faces {}\n",
            g.vertex_count(),
            g.edge_count(),
            d.crossings().len(),
            p.face_count()
        );
        let result = json!({
            "ok": true,
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "crossings": d.crossings().len(),
            "faces": p.face_count(),
            "face_degrees": p.face_degrees(),
        });
        l.item(Status::Pass, result, text)
    } else {
        let mut text = String::from("INVALID\n");
        for v in &report.violations {
            writeln!(text, "violation: {v}").unwrap();
        }
        let result = json!({ "ok": false, "violations": report.violations });
        l.item(Status::Fail, result, text)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorMode {
    Exact,
    Vizing,
}

fn coloring_rows(g: &Graph, c: &EdgeColoring) -> Vec<[usize; 3]> {
    let mut rows: Vec<[usize; 3]> = g
        .edges()
        .iter()
        .zip(c.colors())
        .map(|(&(u, v), &k)| [u, v, k])
        .collect();
    rows.sort_unstable();
    rows
}

fn heuristic(g: &Graph) -> EdgeColoring {
    if g.edge_count() == 0 {
        EdgeColoring::new(Vec::new())
    } else {
        vizing_color(g).expect("graph has edges")
    }
}

pub fn color(path: &Path, mode: ColorMode, budget: u64) -> Item {
    let l = try_item!(load(path));
    let g = l.input.graph();
    match mode {
        ColorMode::Vizing => {
            let c = heuristic(g);
            let proper = verify_coloring(g, &c).expect("one color per edge").proper;
            let status = if proper { Status::Pass } else { Status::Fail };
            let result = json!({
                "mode": "vizing",
                "max_degree": g.max_degree(),
                "colors": c.color_count(),
                "proper": proper,
                "coloring": coloring_rows(g, &c),
            });
            l.item(status, result, write_coloring(g, &c))
        }
        ColorMode::Exact => {
            let v = exact_chromatic_index(g, budget);
            let c = v.witness.clone().unwrap_or_else(|| heuristic(g));
            let mut text = write_coloring(g, &c);
            writeln!(text, "class {}", v.class).unwrap();
            if v.class == EdgeClass::Unknown {
                writeln!(text, "bounds {} {}", v.lower, v.upper).unwrap();
            }
            let status = if v.class == EdgeClass::Unknown {
                Status::Unknown
            } else {
                Status::Pass
            };
            let result = json!({
                "mode": "exact",
                "max_degree": v.max_degree,
                "chromatic_index": v.chromatic_index,
                "class": v.class,
                "lower": v.lower,
                "upper": v.upper,
                "nodes": v.nodes,
                "colors": c.color_count(),
                "coloring": coloring_rows(g, &c),
            });
            l.item(status, result, text)
        }
    }
}

pub fn discharge(path: &Path) -> Item {
    let l = try_item!(load(path));
    let d = try_item!(l.drawing("discharge"));
    let p = match planarize(d) {
        Ok(p) => p,
        Err(e) => return l.error(e.to_string()),
    };
    let ledger = match apply_rules(&p, d.graph()) {
        Ok(x) => x,
        Err(e) => return l.error(e.to_string()),
    };
    let conserved = ledger.is_conserved() && ledger.replay() == ledger.final_charges;
    let negative: Vec<_> = negative_elements(&ledger)
        .into_iter()
        .map(|(e, c)| json!([e.to_string(), fmt_charge(&c)]))
        .collect();
    let result = json!({
        "conserved": conserved,
        "initial_total": fmt_charge(&ledger.initial_total()),
        "final_total": fmt_charge(&ledger.final_total()),
        "negative": negative,
        "ledger": ledger,
    });
    let status = if conserved { Status::Pass } else { Status::Fail };
    l.item(status, result, ledger.report())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckSelection {
    /// Lemma numbers in `1..=4`, ascending and distinct.
    pub lemmas: Vec<u8>,
    pub theorem1: bool,
}

fn render_lemma(r: &LemmaReport) -> String {
    let mut s = format!("{} {}\n", r.tag, r.verdict);
    for v in &r.violations {
        let case = v.case.as_ref().map(|c| format!(" [{c}]")).unwrap_or_default();
        writeln!(s, "  violation: {}{case}: {}; required {}", v.subject, v.observed, v.required).unwrap();
    }
    for c in &r.caveats {
        writeln!(s, "  caveat: {c}").unwrap();
    }
    for n in &r.notes {
        writeln!(s, "  note: {n}").unwrap();
    }
    s
}

/// Lemma 3 and 4 only say something about critical graphs, so they are run
/// on certified critical inputs and reported NOT_APPLICABLE otherwise.
fn criticality_gate(tag: LemmaTag, crit: &CriticalityVerdict, g: &Graph) -> Option<LemmaReport> {
    match crit.verdict {
        Criticality::Critical => None,
        Criticality::Unknown => Some(LemmaReport::unknown(tag, "criticality undecided within budget")),
        Criticality::NotCritical => {
            let why = if crit.chromatic_index == Some(g.max_degree()) {
                "graph is class ONE, hence not critical".to_string()
            } else if let Some((u, v)) = crit.failing_edge {
                format!("graph is not critical: deleting {{{u}, {v}}} keeps the chromatic index")
            } else {
                "graph is not critical".to_string()
            };
            Some(LemmaReport::not_applicable(tag, why))
        }
    }
}

pub fn check(path: &Path, sel: &CheckSelection, budget: u64) -> Item {
    let l = try_item!(load(path));
    let g = l.input.graph();
    let needs_drawing = sel.theorem1 || sel.lemmas.iter().any(|&k| k <= 2);
    let drawing = if needs_drawing {
        Some(try_item!(l.drawing("check")))
    } else {
        None
    };
    let planar = match drawing.map(planarize).transpose() {
        Ok(p) => p,
        Err(e) => return l.error(e.to_string()),
    };

    let mut crit: Option<CriticalityVerdict> = None;
    let mut reports = Vec::new();
    for &k in &sel.lemmas {
        let r: Result<LemmaReport, Error> = match k {
            1 => check_lemma1(planar.as_ref().expect("drawing"), g),
            2 => check_lemma2(planar.as_ref().expect("drawing"), g),
            3 => {
                let c = crit.get_or_insert_with(|| is_critical(g, budget));
                Ok(criticality_gate(LemmaTag::Lemma3, c, g)
                    .unwrap_or_else(|| check_vizing_adjacency(g, true)))
            }
            _ => {
                let delta = g.max_degree();
                if delta < 8 {
                    Ok(LemmaReport::not_applicable(
                        LemmaTag::Lemma4,
                        format!("max degree {delta} < 8"),
                    ))
                } else {
                    let c = crit.get_or_insert_with(|| is_critical(g, budget));
                    Ok(criticality_gate(LemmaTag::Lemma4, c, g)
                        .unwrap_or_else(|| check_critical_size(g, delta, true)))
                }
            }
        };
        match r {
            Ok(r) => reports.push(r),
            Err(e) => return l.error(e.to_string()),
        }
    }
    if sel.theorem1 {
        match check_theorem1(g, drawing.expect("drawing"), budget) {
            Ok(r) => reports.push(r),
            Err(e) => return l.error(e.to_string()),
        }
    }

    let worst = reports.iter().map(|r| r.verdict).max();
    let status = match worst {
        Some(Verdict::Fail) => Status::Fail,
        Some(Verdict::Unknown) => Status::Unknown,
        _ => Status::Pass,
    };
    let text: String = reports.iter().map(render_lemma).collect();
    l.item(status, json!({ "reports": reports }), text)
}

pub fn generate(spec: &GenSpec, out: Option<&PathBuf>) -> Item {
    let shown = out.map_or("-".to_string(), |p| p.display().to_string());
    if let Err(e) = spec.check() {
        return Item::error(&shown, None, e.to_string());
    }
    let inst = match gen_theorem1_instance(spec) {
        Ok(inst) => inst,
        Err(e @ Error::GenerationFailed { .. }) => {
            let mut item = Item::error(&shown, None, e.to_string());
            item.status = Status::GenerationFailed;
            return item;
        }
        Err(e) => return Item::error(&shown, None, e.to_string()),
    };
    let opg = inst.to_opg();
    let sha256 = sha256_hex(opg.as_bytes());
    let text = match out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &opg) {
                return Item::error(&shown, None, e.to_string());
            }
            let mut t: String = inst.header().iter().map(|h| format!("{h}\n")).collect();
            writeln!(t, "wrote {shown}").unwrap();
            t
        }
        None => opg,
    };
    let g = inst.graph();
    let result = json!({
        "spec": spec,
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "achieved_delta": inst.achieved_delta(),
        "crossings_inserted": inst.crossings_inserted,
        "attempt": inst.attempt,
    });
    Item {
        path: shown,
        sha256: Some(sha256),
        status: Status::Pass,
        error: None,
        result,
        text,
    }
}
