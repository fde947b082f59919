//! Star splits, reduction and the staged JSJ construction.
//!
//! Stage `i + 1` replaces every vertex `V` of stage `i` by its M-JSJ
//! decomposition: the minimal splitters of `V` are computed once against
//! stage `i`, and pieces of `V` are split along non-crossing ones until none
//! separates the piece containing it. Stages repeat until the vertex-set
//! family stops changing.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classify::va_subsets;
use crate::diagram::CoxeterDiagram;
use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::gog::{GraphOfGroups, VertexId};
use crate::splitters::{removable_euclidean_generators, SplitterRecord, VertexContext};

/// How the next split is chosen inside an M-JSJ decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitPick {
    /// Lowest rank first, then lexicographic, on the lexicographically first piece.
    #[default]
    Canonical,
    /// Uniformly among all applicable (piece, splitter) pairs.
    Seeded(u64),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct JsjOptions {
    pub pick: SplitPick,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitLog {
    pub stage: usize,
    /// The stage vertex whose decomposition this split belongs to.
    pub origin: GenSet,
    pub piece: GenSet,
    pub splitter: GenSet,
}

#[derive(Debug, Clone)]
pub struct StageTrace {
    /// `Ψ₀, Ψ₁, …`; the last two entries have equal vertex-set families.
    pub stages: Vec<GraphOfGroups>,
    /// `splits[i]` lists the splits that produced `stages[i + 1]`.
    pub splits: Vec<Vec<SplitLog>>,
    pub diagnostics: Vec<String>,
}

impl StageTrace {
    pub fn final_stage(&self) -> &GraphOfGroups {
        self.stages.last().expect("trace has at least one stage")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmenabilityViolation {
    pub vertex: GenSet,
    pub edge: GenSet,
    pub splitter: GenSet,
}

/// Splits `v` along `a` into the star of pieces `a ∪ (K ∩ v)`, then reduces.
pub fn split_vertex(d: &CoxeterDiagram, psi: &GraphOfGroups, v: VertexId, a: GenSet) -> Result<GraphOfGroups> {
    let mut g = psi.clone();
    split_in_place(d, &mut g, v, a)?;
    reduce_in_place(&mut g);
    Ok(g)
}

/// Unreduced star split; returns the new vertex ids, center first.
pub(crate) fn split_in_place(
    d: &CoxeterDiagram,
    g: &mut GraphOfGroups,
    v: VertexId,
    a: GenSet,
) -> Result<Vec<VertexId>> {
    let vset = g.try_vertex_set(v)?;
    if !a.is_subset(vset) {
        return Err(Error::NotSubset);
    }
    let parts: Vec<GenSet> = d.parts(a, vset).into_iter().map(|k| k & vset).collect();
    if parts.len() < 2 {
        return Err(Error::NotSeparating);
    }
    let incident = g.incident_edges(v).copied().collect::<Vec<_>>();
    let mut targets = Vec::with_capacity(incident.len());
    for e in &incident {
        let rest = e.set - a;
        let target = match rest.first() {
            None => 0,
            Some(_) => parts
                .iter()
                .position(|p| rest.is_subset(*p))
                .ok_or_else(|| Error::CompatibilityViolation {
                    edge: d.format_set(e.set),
                })?,
        };
        targets.push(target);
    }

    g.remove_vertex(v);
    let ids: Vec<VertexId> = parts.iter().map(|&p| g.add_vertex(a | p)).collect();
    for &id in &ids[1..] {
        g.add_edge(ids[0], id, a);
    }
    for (e, t) in incident.into_iter().zip(targets) {
        g.add_edge(ids[t], e.other(v), e.set);
    }
    Ok(ids)
}

/// Collapses edges whose set equals an endpoint set until none remain.
pub fn reduce(psi: &GraphOfGroups) -> GraphOfGroups {
    let mut g = psi.clone();
    reduce_in_place(&mut g);
    g
}

pub(crate) fn reduce_in_place(g: &mut GraphOfGroups) {
    loop {
        let mut best: Option<(GenSet, VertexId, GenSet, usize)> = None;
        for (k, e) in g.edges().iter().enumerate() {
            let (x, y) = e.ends;
            if x == y {
                continue;
            }
            for (absorbed, survivor) in [(x, y), (y, x)] {
                let aset = g.vertex_set(absorbed);
                if aset == e.set {
                    let key = (aset, absorbed, g.vertex_set(survivor), k);
                    if best.is_none_or(|b| (key.0, key.1, key.2) < (b.0, b.1, b.2)) {
                        best = Some(key);
                    }
                }
            }
        }
        let Some((_, absorbed, _, k)) = best else { break };
        let survivor = g.edges()[k].other(absorbed);
        g.edges_mut().remove(k);
        for e in g.edges_mut().iter_mut() {
            if e.ends.0 == absorbed {
                e.ends.0 = survivor;
            }
            if e.ends.1 == absorbed {
                e.ends.1 = survivor;
            }
        }
        g.remove_vertex(absorbed);
    }
}

/// Non-crossing minimal splitters of `V`, in pick order.
fn non_crossing(records: &[SplitterRecord]) -> Vec<GenSet> {
    records
        .iter()
        .filter(|r| !r.is_crossing())
        .map(|r| r.subset)
        .collect()
}

/// Refines `v` inside `g` along `nc` until no member separates the piece containing it.
fn refine_vertex(
    d: &CoxeterDiagram,
    g: &mut GraphOfGroups,
    v: VertexId,
    nc: &[GenSet],
    rng: Option<&mut ChaCha8Rng>,
    stage: usize,
    log: &mut Vec<SplitLog>,
) -> Result<()> {
    let origin = g.try_vertex_set(v)?;
    let mut rng = rng;
    let mut pieces: BTreeSet<VertexId> = BTreeSet::from([v]);
    loop {
        let mut ordered: Vec<(GenSet, VertexId)> = pieces.iter().map(|&p| (g.vertex_set(p), p)).collect();
        ordered.sort();
        let applicable: Vec<(VertexId, GenSet, GenSet)> = ordered
            .iter()
            .flat_map(|&(pset, p)| {
                nc.iter()
                    .filter(move |&&dd| dd.is_subset(pset) && d.separates(dd, pset))
                    .map(move |&dd| (p, pset, dd))
            })
            .collect();
        let chosen = match rng.as_deref_mut() {
            None => applicable.first(),
            Some(r) => applicable.choose(r),
        };
        let Some(&(p, pset, splitter)) = chosen else { break };
        let new_ids = split_in_place(d, g, p, splitter)?;
        reduce_in_place(g);
        log.push(SplitLog {
            stage,
            origin,
            piece: pset,
            splitter,
        });
        pieces.remove(&p);
        pieces.extend(new_ids);
        pieces.retain(|&id| g.contains_vertex(id));
    }
    Ok(())
}

/// `psi` with `v` replaced by its M-JSJ decomposition.
pub fn m_jsj_decomposition(d: &CoxeterDiagram, psi: &GraphOfGroups, v: VertexId) -> Result<GraphOfGroups> {
    let nc = non_crossing(&VertexContext::new(psi, v)?.minimal_splitters(d));
    let mut g = reduce(psi);
    refine_vertex(d, &mut g, v, &nc, None, 0, &mut Vec::new())?;
    Ok(g)
}

pub fn next_stage(d: &CoxeterDiagram, psi: &GraphOfGroups) -> Result<GraphOfGroups> {
    next_stage_logged(d, psi, None, 0, &mut Vec::new())
}

fn next_stage_logged(
    d: &CoxeterDiagram,
    psi: &GraphOfGroups,
    mut rng: Option<&mut ChaCha8Rng>,
    stage: usize,
    log: &mut Vec<SplitLog>,
) -> Result<GraphOfGroups> {
    let plan: Vec<(VertexId, Vec<GenSet>)> = psi
        .vertices_sorted()
        .into_iter()
        .map(|(id, _)| {
            let ctx = VertexContext::new(psi, id)?;
            Ok((id, non_crossing(&ctx.minimal_splitters(d))))
        })
        .collect::<Result<_>>()?;
    let mut g = psi.clone();
    for (id, nc) in plan {
        refine_vertex(d, &mut g, id, &nc, rng.as_deref_mut(), stage, log)?;
    }
    Ok(g)
}

pub fn jsj(d: &CoxeterDiagram) -> Result<StageTrace> {
    jsj_with(d, JsjOptions::default())
}

pub fn jsj_with(d: &CoxeterDiagram, options: JsjOptions) -> Result<StageTrace> {
    let mut rng = match options.pick {
        SplitPick::Canonical => None,
        SplitPick::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut trace = StageTrace {
        stages: vec![GraphOfGroups::trivial(d)],
        splits: Vec::new(),
        diagnostics: Vec::new(),
    };
    for stage in 0..=d.len() + 1 {
        let current = trace.stages.last().expect("nonempty");
        for v in check_amenable(d, current) {
            trace.diagnostics.push(format!(
                "stage {stage}: {} separates edge {} at vertex {}",
                d.format_set(v.splitter),
                d.format_set(v.edge),
                d.format_set(v.vertex)
            ));
        }
        for (vset, a) in check_removable_euclidean(d, current)? {
            trace.diagnostics.push(format!(
                "stage {stage}: minimal splitter {} of {} has a removable Euclidean generator",
                d.format_set(a),
                d.format_set(vset)
            ));
        }
        let mut log = Vec::new();
        let next = next_stage_logged(d, current, rng.as_mut(), stage, &mut log)?;
        let done = next.vertex_family() == current.vertex_family();
        trace.stages.push(next);
        trace.splits.push(log);
        if done {
            return Ok(trace);
        }
    }
    trace
        .diagnostics
        .push("stage loop did not stabilize within |S| + 2 stages".to_string());
    Ok(trace)
}

/// One violation per incident `(V, E)` for which some virtually abelian
/// `A ⊆ V` separates `E`.
pub fn check_amenable(d: &CoxeterDiagram, psi: &GraphOfGroups) -> Vec<AmenabilityViolation> {
    let mut out = Vec::new();
    for (id, vset) in psi.vertices_sorted() {
        let vas = va_subsets(d, vset);
        let mut sets = psi.incident_edge_sets(id);
        sets.sort();
        sets.dedup();
        for e in sets {
            if let Some(&a) = vas.iter().find(|&&a| d.separates(a, e)) {
                out.push(AmenabilityViolation {
                    vertex: vset,
                    edge: e,
                    splitter: a,
                });
            }
        }
    }
    out
}

/// Pairs `(A, B)` with `A ⊆ S` virtually abelian separating the edge set `B`.
pub fn check_edge_separation(d: &CoxeterDiagram, psi: &GraphOfGroups) -> Vec<(GenSet, GenSet)> {
    let mut edge_sets = psi.edge_multiset();
    edge_sets.dedup();
    let vas = va_subsets(d, d.all());
    let mut out = Vec::new();
    for &b in &edge_sets {
        for &a in &vas {
            if d.separates(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Triples `(V, B, A)` where `B` is a minimal splitter of the vertex `V`
/// separating `V`, `A ⊆ S` is virtually abelian and separates `B`, yet `A ⊄ V`.
pub fn check_nosplit(d: &CoxeterDiagram, psi: &GraphOfGroups) -> Result<Vec<(GenSet, GenSet, GenSet)>> {
    let vas = va_subsets(d, d.all());
    let mut out = Vec::new();
    for (id, vset) in psi.vertices_sorted() {
        for rec in VertexContext::new(psi, id)?.minimal_splitters(d) {
            for &a in &vas {
                if d.separates(a, rec.subset) && !a.is_subset(vset) {
                    out.push((vset, rec.subset, a));
                }
            }
        }
    }
    Ok(out)
}

/// Minimal splitters `A` of stage vertices with some `x ∈ E(A)` whose removal
/// still separates the vertex.
pub fn check_removable_euclidean(d: &CoxeterDiagram, psi: &GraphOfGroups) -> Result<Vec<(GenSet, GenSet)>> {
    let mut out = Vec::new();
    for (id, vset) in psi.vertices_sorted() {
        for rec in VertexContext::new(psi, id)?.minimal_splitters(d) {
            if !removable_euclidean_generators(d, vset, &rec).is_empty() {
                out.push((vset, rec.subset));
            }
        }
    }
    Ok(out)
}

/// Every runtime invariant of a trace, as human-readable messages.
pub fn verify_trace(d: &CoxeterDiagram, trace: &StageTrace) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (i, g) in trace.stages.iter().enumerate() {
        for msg in g.check_visual(d) {
            out.push(format!("stage {i}: {msg}"));
        }
        if !g.is_reduced() {
            out.push(format!("stage {i}: not reduced"));
        }
        for v in check_amenable(d, g) {
            out.push(format!(
                "stage {i}: {} separates edge {} at vertex {}",
                d.format_set(v.splitter),
                d.format_set(v.edge),
                d.format_set(v.vertex)
            ));
        }
        for (vset, b, a) in check_nosplit(d, g)? {
            out.push(format!(
                "stage {i}: {} separates minimal splitter {} of {} but is not inside it",
                d.format_set(a),
                d.format_set(b),
                d.format_set(vset)
            ));
        }
    }
    if let Some(last) = trace.stages.last() {
        for (a, b) in check_edge_separation(d, last) {
            out.push(format!(
                "final: {} separates edge set {}",
                d.format_set(a),
                d.format_set(b)
            ));
        }
    }
    let n = trace.stages.len();
    if n < 2 || trace.stages[n - 1].vertex_family() != trace.stages[n - 2].vertex_family() {
        out.push("trace did not reach a fixed point".to_string());
    }
    Ok(out)
}
