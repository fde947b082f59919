mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use coxeter_jsj::classify::{classify_subset, va_subsets};
use coxeter_jsj::jsj::{check_edge_separation, verify_trace};
use coxeter_jsj::oracle::{
    exhaustive_jsj, exhaustive_splitters, finite_separators, gram_nullity, gram_spectrum_classify, SpectrumClass,
};
use coxeter_jsj::orbifold::{classify_all, realize_orbifold_detailed};
use coxeter_jsj::splitters::VertexContext;
use coxeter_jsj::{
    check_amenable, fixtures, is_virtually_abelian, jsj, jsj_with, CoxeterDiagram, GenSet, IrreducibleType,
    JsjOptions, OrbifoldClass, Shape, SplitPick, VertexKind,
};

use common::{crossing_structure_violations, random_corpus, random_path_union, set};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], summary: String) -> Outcome {
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            summary
        } else {
            format!("{summary}; first failures: {}", failures.iter().take(5).cloned().collect::<Vec<_>>().join(" | "))
        },
    }
}

fn family(d: &CoxeterDiagram, sets: &[&[&str]]) -> BTreeSet<GenSet> {
    sets.iter().map(|s| set(d, s)).collect()
}

fn with_deadline(limit: Duration, run: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = run();
    let took = start.elapsed();
    out.detail = format!("{} ({:.2}s, limit {:.0}s)", out.detail, took.as_secs_f64(), limit.as_secs_f64());
    if took > limit {
        out.pass = false;
    }
    out
}

fn star_reproduction() -> Outcome {
    let d = fixtures::fix_star();
    let mut failures = Vec::new();
    let trace = jsj(&d).unwrap();
    let g = trace.final_stage();
    let want = family(&d, &[&["a", "b", "c"], &["a", "c", "d"], &["a", "c", "e"], &["a", "c", "f"]]);
    if g.vertex_family() != want {
        failures.push(format!("vertex family {:?}", g.vertex_family()));
    }
    if g.edge_multiset() != vec![set(&d, &["a", "c"]); 3] {
        failures.push(format!("edge sets {:?}", g.edge_multiset()));
    }
    outcome(&failures, "four vertices over {a,c}".into())
}

fn cycle8_reproduction() -> Outcome {
    let d = fixtures::fix_cycle8();
    let s = |n: &[&str]| set(&d, n);
    let mut failures = Vec::new();
    let trace = jsj(&d).unwrap();
    let g = trace.final_stage();
    let want = family(&d, &[&["a", "b", "x", "y"], &["x", "y", "u", "v"], &["u", "v", "c", "d"]]);
    if g.vertex_family() != want {
        failures.push(format!("vertex family {:?}", g.vertex_family()));
    }
    let mut edges = vec![s(&["x", "y"]), s(&["u", "v"])];
    edges.sort();
    if g.edge_multiset() != edges {
        failures.push(format!("edge sets {:?}", g.edge_multiset()));
    }
    let psi0 = &trace.stages[0];
    let v = psi0.vertex_ids().next().unwrap();
    let records = VertexContext::new(psi0, v).unwrap().minimal_splitters(&d);
    let got: BTreeSet<GenSet> = records.iter().map(|r| r.subset).collect();
    let want: BTreeSet<GenSet> = [s(&["x", "y"]), s(&["u", "v"]), s(&["x", "v"]), s(&["u", "y"])].into();
    if got != want {
        failures.push(format!("stage-1 minimal splitters {got:?}"));
    }
    let crossing: BTreeSet<(GenSet, GenSet)> = records
        .iter()
        .flat_map(|r| r.crossing_partners.iter().map(move |&b| (r.subset.min(b), r.subset.max(b))))
        .collect();
    let xv_uy = (s(&["x", "v"]).min(s(&["u", "y"])), s(&["x", "v"]).max(s(&["u", "y"])));
    if crossing != BTreeSet::from([xv_uy]) {
        failures.push(format!("crossing pairs {crossing:?}"));
    }
    outcome(&failures, "three-vertex chain, 4 minimal splitters, 1 crossing pair".into())
}

fn cycle8_orbifold() -> Outcome {
    let d = fixtures::fix_cycle8();
    let s = |n: &[&str]| set(&d, n);
    let mut failures = Vec::new();
    let trace = jsj(&d).unwrap();
    let kinds = classify_all(&d, trace.final_stage()).unwrap();
    let Some((_, VertexKind::Orbifold(o))) = kinds.iter().find(|(v, _)| *v == s(&["x", "y", "u", "v"])) else {
        return outcome(&["{x,y,u,v} is not an orbifold vertex".into()], String::new());
    };
    if o.t_part != s(&["x", "y", "u", "v"]) || !o.m_part.is_empty() {
        failures.push(format!("T = {:?}, M = {:?}", o.t_part, o.m_part));
    }
    match &o.shape {
        Shape::PathsAndPoints { paths, points } if points.is_empty() && paths.len() == 2 && paths.iter().all(|p| p.len() == 2) => {
        }
        other => failures.push(format!("shape {other:?}")),
    }
    if o.classification != OrbifoldClass::VirtuallyFree {
        failures.push("not virtually free".into());
    }
    match &o.free_decomposition {
        Some(fd) if fd.vertex_family() == family(&d, &[&["x", "u"], &["y", "v"]]) && fd.edge_multiset() == vec![GenSet::EMPTY] => {}
        other => failures.push(format!("free decomposition {other:?}")),
    }
    let rigid = kinds.iter().filter(|(_, k)| !k.is_orbifold()).count();
    if rigid != 2 {
        failures.push(format!("{rigid} rigid vertices"));
    }
    outcome(&failures, "<x,u> * <y,v>, M empty".into())
}

fn e5_reproduction() -> Outcome {
    let d = fixtures::fix_e5();
    let s = |n: &[&str]| set(&d, n);
    let mut failures = Vec::new();
    let trace = jsj(&d).unwrap();
    let g = trace.final_stage();
    let left = s(&["1", "2", "3", "4", "7", "8"]);
    if g.vertex_family() != BTreeSet::from([left, s(&["5", "6", "7", "8"])]) {
        failures.push(format!("vertex family {:?}", g.vertex_family()));
    }
    if g.edge_multiset() != vec![s(&["7", "8"])] {
        failures.push(format!("edge sets {:?}", g.edge_multiset()));
    }
    let kinds = classify_all(&d, g).unwrap();
    for (v, kind) in &kinds {
        match kind {
            VertexKind::Orbifold(o) if *v == left => {
                if o.t_part != s(&["1", "2", "3", "4"]) || o.m_part != s(&["7", "8"]) {
                    failures.push(format!("T = {:?}, M = {:?}", o.t_part, o.m_part));
                }
                if o.shape != Shape::Loop(4) || o.classification != OrbifoldClass::VirtuallySurface {
                    failures.push(format!("shape {:?} / {:?}", o.shape, o.classification));
                }
            }
            VertexKind::Rigid if *v != left => {}
            other => failures.push(format!("{:?} classified {other:?}", v)),
        }
    }
    let id = g.find_vertex(left).unwrap();
    let records = VertexContext::new(g, id).unwrap().minimal_splitters(&d);
    let a = records.iter().find(|r| r.subset == s(&["1", "2", "7", "8"]));
    match a {
        Some(r) if r.crossing_partners.contains(&s(&["3", "4", "7", "8"])) => {}
        _ => failures.push("{1,2,7,8} and {3,4,7,8} are not crossing minimal splitters".into()),
    }
    outcome(&failures, "loop {1,2,3,4} times {7,8}".into())
}

fn uniqueness() -> Outcome {
    let mut failures = Vec::new();
    let mut corpus = fixtures::all().into_iter().map(|(n, d)| (n.to_string(), d)).collect::<Vec<_>>();
    corpus.extend(random_corpus(200, 1000, 2, 8));
    for (name, d) in &corpus {
        let base = jsj(d).unwrap();
        let fam = base.final_stage().vertex_family();
        let edges = base.final_stage().edge_multiset();
        for k in 0..10u64 {
            let t = jsj_with(d, JsjOptions { pick: SplitPick::Seeded(k * 7919 + 13) }).unwrap();
            if t.final_stage().vertex_family() != fam || t.final_stage().edge_multiset() != edges {
                failures.push(format!("{name}: order {k} differs"));
            }
        }
        let all = exhaustive_jsj(d).unwrap();
        let want: Vec<GenSet> = fam.iter().copied().collect();
        if all.len() != 1 || !all.contains(&want) {
            failures.push(format!("{name}: exhaustive search found {} families", all.len()));
        }
    }
    outcome(&failures, format!("{} diagrams x 10 orders", corpus.len()))
}

fn invariants() -> Outcome {
    let mut failures = Vec::new();
    let mut corpus = fixtures::all().into_iter().map(|(n, d)| (n.to_string(), d)).collect::<Vec<_>>();
    corpus.extend(random_corpus(200, 1000, 2, 8));
    let mut stages = 0;
    for (name, d) in &corpus {
        let trace = jsj(d).unwrap();
        for (i, g) in trace.stages.iter().enumerate() {
            stages += 1;
            for v in check_amenable(d, g) {
                failures.push(format!("{name} stage {i}: {:?} separates {:?}", v.splitter, v.edge));
            }
        }
        for (a, b) in check_edge_separation(d, trace.final_stage()) {
            failures.push(format!("{name}: final edge {b:?} separated by {a:?}"));
        }
        for msg in verify_trace(d, &trace).unwrap().into_iter().chain(trace.diagnostics.iter().cloned()) {
            failures.push(format!("{name}: {msg}"));
        }
    }
    outcome(&failures, format!("{stages} stages checked"))
}

fn table_matches_spectrum(d: &CoxeterDiagram, a: GenSet) -> Option<String> {
    let spectral = gram_spectrum_classify(d, a);
    let table = classify_subset(d, a).ok()?;
    let agree = match table {
        IrreducibleType::Finite(_) => spectral == SpectrumClass::PositiveDefinite,
        IrreducibleType::Affine(_) => spectral == SpectrumClass::PositiveSemidefinite && gram_nullity(d, a) == 1,
        IrreducibleType::Indefinite => {
            spectral == SpectrumClass::Indefinite || (spectral == SpectrumClass::PositiveSemidefinite && gram_nullity(d, a) != 1)
        }
    };
    (!agree).then(|| format!("{:?}: table {table}, spectrum {spectral:?}", a))
}

fn oracle_equivalence() -> Outcome {
    let mut failures = Vec::new();
    let mut classified = 0;
    let mut corpus = fixtures::all().into_iter().map(|(n, d)| (n.to_string(), d)).collect::<Vec<_>>();
    corpus.extend(random_corpus(500, 5000, 1, 7));
    for (name, d) in &corpus {
        for a in d.all().subsets().filter(|a| !a.is_empty()) {
            if d.coxeter_components(a).len() == 1 {
                classified += 1;
                if let Some(msg) = table_matches_spectrum(d, a) {
                    failures.push(format!("{name}: {msg}"));
                }
            }
            if is_virtually_abelian(d, a) != (gram_spectrum_classify(d, a) != SpectrumClass::Indefinite) {
                failures.push(format!("{name}: {:?} virtual abelianity disagrees", a));
            }
        }
    }
    let mut vertices = 0;
    let mut splitter_corpus = fixtures::all().into_iter().map(|(n, d)| (n.to_string(), d)).collect::<Vec<_>>();
    splitter_corpus.extend(random_corpus(200, 1000, 2, 8));
    for (name, d) in &splitter_corpus {
        let trace = jsj(d).unwrap();
        for g in &trace.stages {
            for id in g.vertex_ids() {
                vertices += 1;
                let mut fast: Vec<GenSet> = VertexContext::new(g, id)
                    .unwrap()
                    .minimal_splitters(d)
                    .iter()
                    .map(|r| r.subset)
                    .collect();
                fast.sort();
                let slow = exhaustive_splitters(d, g, id).unwrap();
                if fast != slow {
                    failures.push(format!("{name}: splitters of {:?} differ", g.vertex_set(id)));
                }
            }
        }
    }
    outcome(
        &failures,
        format!("{classified} irreducible subsets, {vertices} vertices compared"),
    )
}

fn generator_round_trip() -> Outcome {
    let mut failures = Vec::new();
    for seed in 0..20u64 {
        let t = random_path_union(seed);
        let r = realize_orbifold_detailed(&t).unwrap();
        let d = &r.diagram;
        let tag = format!("seed {seed} (T = {})", d.format_set(r.t_part));
        let trace = jsj(d).unwrap();
        let g = trace.final_stage();
        let kinds = classify_all(d, g).unwrap();
        let orbifolds: Vec<&GenSet> = kinds.iter().filter(|(_, k)| k.is_orbifold()).map(|(v, _)| v).collect();
        if orbifolds.len() != 1 {
            failures.push(format!("{tag}: {} orbifold vertices", orbifolds.len()));
        }
        for (v, k) in &kinds {
            if let VertexKind::Orbifold(o) = k {
                if o.t_part != r.t_part {
                    failures.push(format!("{tag}: orbifold T = {}", d.format_set(o.t_part)));
                }
            }
            let _ = v;
        }
        let rigid: BTreeSet<GenSet> = kinds.iter().filter(|(_, k)| !k.is_orbifold()).map(|(v, _)| *v).collect();
        let blocks: BTreeSet<GenSet> = r.blocks.iter().copied().collect();
        if rigid != blocks {
            failures.push(format!("{tag}: rigid vertices {:?}", rigid));
        }
        let edges: BTreeSet<GenSet> = g.edge_multiset().into_iter().collect();
        let want: BTreeSet<GenSet> = r.edge_sets.iter().copied().collect();
        if edges != want {
            failures.push(format!("{tag}: edge sets {:?}", edges));
        }
        if !finite_separators(d).unwrap().is_empty() {
            failures.push(format!("{tag}: a finite subset separates"));
        }
    }
    outcome(&failures, "20 path unions".into())
}

fn structure_properties() -> Outcome {
    let mut failures = Vec::new();
    let mut pairs = 0;
    let mut corpus = fixtures::all().into_iter().map(|(n, d)| (n.to_string(), d)).collect::<Vec<_>>();
    corpus.extend(random_corpus(200, 1000, 2, 8));
    corpus.extend((0..20).map(|s| (format!("realized({s})"), realize_orbifold_detailed(&random_path_union(s)).unwrap().diagram)));
    for (name, d) in &corpus {
        let trace = jsj(d).unwrap();
        for g in &trace.stages {
            let (n, msgs) = crossing_structure_violations(d, g);
            pairs += n;
            failures.extend(msgs.into_iter().map(|m| format!("{name}: {m}")));
        }
    }
    outcome(&failures, format!("{pairs} crossing pairs"))
}

type Criterion = (&'static str, Box<dyn FnOnce() -> Outcome>);

#[test]
fn acceptance() {
    let criteria: Vec<Criterion> = vec![
        ("star decomposition", Box::new(|| with_deadline(Duration::from_secs(1), star_reproduction))),
        ("eight-cycle decomposition", Box::new(|| with_deadline(Duration::from_secs(1), cycle8_reproduction))),
        ("eight-cycle orbifold vertex", Box::new(cycle8_orbifold)),
        ("square-times-pair decomposition", Box::new(e5_reproduction)),
        ("uniqueness across split orders", Box::new(|| with_deadline(Duration::from_secs(60), uniqueness))),
        ("amenability and edge separation", Box::new(invariants)),
        ("oracle equivalence", Box::new(|| with_deadline(Duration::from_secs(120), oracle_equivalence))),
        ("orbifold generator round trip", Box::new(generator_round_trip)),
        ("crossing pair structure", Box::new(structure_properties)),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let out = run();
        println!("{} criterion {}: {name}: {}", if out.pass { "PASS" } else { "FAIL" }, i + 1, out.detail);
        if !out.pass {
            failed.push(i + 1);
        }
    }
    let _ = va_subsets;
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
