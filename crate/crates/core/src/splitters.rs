//! Virtually abelian visual splitters of a vertex.
//!
//! A candidate splitter of a vertex `V` is a virtually abelian `A ⊆ V` that
//! separates `V` in the presentation diagram and does not separate any edge
//! set incident to `V`. A candidate is minimal when no other candidate has a
//! strictly smaller Euclidean part `E(·)`.

use crate::classify::{va_subsets, virtually_abelian_structure, VirtAbelianStructure};
use crate::diagram::CoxeterDiagram;
use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::gog::{GraphOfGroups, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitterRecord {
    pub vertex: GenSet,
    pub subset: GenSet,
    pub structure: VirtAbelianStructure,
    /// Components of `Γ − A` meeting the vertex.
    pub parts: Vec<GenSet>,
    pub minimal: bool,
    pub crossing_partners: Vec<GenSet>,
}

impl SplitterRecord {
    pub fn rank(&self) -> usize {
        self.structure.rank
    }

    pub fn e_of_a(&self) -> GenSet {
        self.structure.e_of_a
    }

    pub fn is_crossing(&self) -> bool {
        !self.crossing_partners.is_empty()
    }
}

/// A vertex together with the edge sets incident to it.
#[derive(Debug, Clone)]
pub struct VertexContext {
    pub vertex: GenSet,
    pub incident: Vec<GenSet>,
}

impl VertexContext {
    pub fn new(psi: &GraphOfGroups, v: VertexId) -> Result<Self> {
        Ok(VertexContext {
            vertex: psi.try_vertex_set(v)?,
            incident: psi.incident_edge_sets(v),
        })
    }

    pub fn compatible(&self, d: &CoxeterDiagram, a: GenSet) -> bool {
        self.incident.iter().all(|&e| !d.separates(a, e))
    }

    pub fn candidates(&self, d: &CoxeterDiagram) -> Vec<SplitterRecord> {
        va_subsets(d, self.vertex)
            .into_iter()
            .filter(|&a| d.separates(a, self.vertex) && self.compatible(d, a))
            .map(|a| SplitterRecord {
                vertex: self.vertex,
                subset: a,
                structure: virtually_abelian_structure(d, a).expect("enumerated as virtually abelian"),
                parts: d.parts(a, self.vertex),
                minimal: false,
                crossing_partners: Vec::new(),
            })
            .collect()
    }

    pub fn minimal_splitters(&self, d: &CoxeterDiagram) -> Vec<SplitterRecord> {
        let candidates = self.candidates(d);
        let mut es: Vec<GenSet> = candidates.iter().map(|c| c.e_of_a()).collect();
        es.sort_by_key(|e| e.bits());
        es.dedup();
        let mut out: Vec<SplitterRecord> = candidates
            .into_iter()
            .filter(|c| !es.iter().any(|e| e.is_proper_subset(c.e_of_a())))
            .map(|mut c| {
                c.minimal = true;
                c
            })
            .collect();
        out.sort_by(|x, y| x.rank().cmp(&y.rank()).then(x.subset.cmp(&y.subset)));
        let subsets: Vec<GenSet> = out.iter().map(|r| r.subset).collect();
        for r in &mut out {
            r.crossing_partners = subsets
                .iter()
                .copied()
                .filter(|&b| crosses(d, r.subset, b))
                .collect();
        }
        out
    }
}

/// Whether `a` fits every edge incident to `v` inside a single piece of the
/// split of `v` along `a`.
pub fn is_compatible(d: &CoxeterDiagram, psi: &GraphOfGroups, v: VertexId, a: GenSet) -> Result<bool> {
    let ctx = VertexContext::new(psi, v)?;
    if !a.is_subset(ctx.vertex) {
        return Err(Error::NotSubset);
    }
    if !d.separates(a, ctx.vertex) {
        return Err(Error::NotSeparating);
    }
    Ok(ctx.compatible(d, a))
}

/// Virtually abelian, separating, compatible subsets of `v`, in increasing mask order.
pub fn candidate_splitters(d: &CoxeterDiagram, psi: &GraphOfGroups, v: VertexId) -> Result<Vec<SplitterRecord>> {
    Ok(VertexContext::new(psi, v)?.candidates(d))
}

/// Whether `a` is a minimal splitter of `v`. `a` must be a candidate splitter.
pub fn is_minimal(d: &CoxeterDiagram, psi: &GraphOfGroups, v: VertexId, a: GenSet) -> Result<bool> {
    let ctx = VertexContext::new(psi, v)?;
    let Some(structure) = virtually_abelian_structure(d, a) else {
        return Ok(false);
    };
    let ea = structure.e_of_a;
    Ok(ctx
        .candidates(d)
        .iter()
        .all(|b| !b.e_of_a().is_proper_subset(ea)))
}

/// Mutual separation.
pub fn crosses(d: &CoxeterDiagram, a: GenSet, b: GenSet) -> bool {
    d.separates(a, b) && d.separates(b, a)
}

/// Minimal splitters of `v` sorted by rank then lexicographically, with crossing partners filled in.
pub fn minimal_splitters(d: &CoxeterDiagram, psi: &GraphOfGroups, v: VertexId) -> Result<Vec<SplitterRecord>> {
    Ok(VertexContext::new(psi, v)?.minimal_splitters(d))
}

/// Elements `x ∈ E(A)` such that `A − {x}` still separates `V`.
pub fn removable_euclidean_generators(d: &CoxeterDiagram, vertex: GenSet, record: &SplitterRecord) -> GenSet {
    record
        .e_of_a()
        .iter()
        .filter(|&x| d.separates(record.subset.without(x), vertex))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn trivial_decomposition_is_always_compatible() {
        let d = fixtures::fix_cycle8();
        let psi = GraphOfGroups::trivial(&d);
        let v = psi.vertex_ids().next().unwrap();
        let a = d.subset(&["x", "y"]).unwrap();
        assert_eq!(is_compatible(&d, &psi, v, a), Ok(true));
        assert_eq!(
            is_compatible(&d, &psi, v, d.subset(&["x"]).unwrap()),
            Err(Error::NotSeparating)
        );
    }

    #[test]
    fn compatibility_after_first_split() {
        let d = fixtures::fix_cycle8();
        let s = |n: &[&str]| d.subset(n).unwrap();
        let psi = GraphOfGroups::from_parts(
            &[s(&["a", "b", "x", "y"]), s(&["x", "y", "u", "c", "d", "v"])],
            &[(0, 1, s(&["x", "y"]))],
        )
        .unwrap();
        let v = psi.find_vertex(s(&["x", "y", "u", "c", "d", "v"])).unwrap();
        assert_eq!(is_compatible(&d, &psi, v, s(&["u", "v"])), Ok(true));
        assert_eq!(is_compatible(&d, &psi, v, s(&["x", "v"])), Ok(true));

        let psi = GraphOfGroups::from_parts(
            &[s(&["x", "y", "u", "c", "d", "v"]), s(&["a", "b", "u", "y"])],
            &[(0, 1, s(&["u", "y"]))],
        )
        .unwrap();
        let v = psi.find_vertex(s(&["x", "y", "u", "c", "d", "v"])).unwrap();
        assert_eq!(is_compatible(&d, &psi, v, s(&["x", "v"])), Ok(false));
    }

    #[test]
    fn cycle8_minimal_splitters() {
        let d = fixtures::fix_cycle8();
        let s = |n: &[&str]| d.subset(n).unwrap();
        let psi = GraphOfGroups::trivial(&d);
        let v = psi.vertex_ids().next().unwrap();
        let ms = minimal_splitters(&d, &psi, v).unwrap();
        let mut got: Vec<GenSet> = ms.iter().map(|r| r.subset).collect();
        got.sort();
        let mut want = vec![s(&["x", "y"]), s(&["u", "v"]), s(&["x", "v"]), s(&["u", "y"])];
        want.sort();
        assert_eq!(got, want);
        let xv = ms.iter().find(|r| r.subset == s(&["x", "v"])).unwrap();
        assert_eq!(xv.crossing_partners, vec![s(&["u", "y"])]);
        assert!(crosses(&d, s(&["x", "v"]), s(&["u", "y"])));
        assert!(!crosses(&d, s(&["x", "y"]), s(&["u", "v"])));
        assert!(!crosses(&d, s(&["x", "y"]), s(&["x", "y"])));
    }

    #[test]
    fn star_minimality() {
        let d = fixtures::fix_star();
        let s = |n: &[&str]| d.subset(n).unwrap();
        let psi = GraphOfGroups::trivial(&d);
        let v = psi.vertex_ids().next().unwrap();
        let cands = candidate_splitters(&d, &psi, v).unwrap();
        assert!(cands.iter().any(|c| c.subset == s(&["a", "c"])));
        assert!(cands.iter().any(|c| c.subset == s(&["a", "b", "c", "d"])));
        assert_eq!(is_minimal(&d, &psi, v, s(&["a", "c"])), Ok(true));
        assert_eq!(is_minimal(&d, &psi, v, s(&["a", "b", "c", "d"])), Ok(false));
    }

    #[test]
    fn complete_diagram_has_no_splitters() {
        let d = CoxeterDiagram::from_edges(&["p", "q"], &[("p", "q", 2)]).unwrap();
        let psi = GraphOfGroups::trivial(&d);
        let v = psi.vertex_ids().next().unwrap();
        assert!(candidate_splitters(&d, &psi, v).unwrap().is_empty());
    }
}
