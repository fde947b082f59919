//! Visual graph-of-groups decompositions.
//!
//! Vertices and edges carry generator subsets. Vertex ids are stable for the
//! lifetime of a value and are never reused, so callers can follow a vertex
//! through splits and reductions.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::CoxeterDiagram;
use crate::error::{Error, Result};
use crate::genset::GenSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub(crate) usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub ends: (VertexId, VertexId),
    pub set: GenSet,
}

impl Edge {
    pub fn touches(&self, v: VertexId) -> bool {
        self.ends.0 == v || self.ends.1 == v
    }

    pub fn other(&self, v: VertexId) -> VertexId {
        if self.ends.0 == v {
            self.ends.1
        } else {
            self.ends.0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphOfGroups {
    vertices: BTreeMap<VertexId, GenSet>,
    edges: Vec<Edge>,
    next_id: usize,
}

impl GraphOfGroups {
    /// The one-vertex decomposition with vertex set `S`.
    pub fn trivial(d: &CoxeterDiagram) -> Self {
        let mut g = GraphOfGroups::empty();
        g.add_vertex(d.all());
        g
    }

    pub(crate) fn empty() -> Self {
        GraphOfGroups {
            vertices: BTreeMap::new(),
            edges: Vec::new(),
            next_id: 0,
        }
    }

    /// Builds a decomposition from vertex sets and `(i, j, set)` edges indexed
    /// into `vertices`. Edge sets must lie in both endpoints.
    pub fn from_parts(vertices: &[GenSet], edges: &[(usize, usize, GenSet)]) -> Result<Self> {
        let mut g = GraphOfGroups::empty();
        let ids: Vec<VertexId> = vertices.iter().map(|&s| g.add_vertex(s)).collect();
        for &(i, j, set) in edges {
            let (&a, &b) = (ids.get(i).ok_or(Error::UnknownVertex)?, ids.get(j).ok_or(Error::UnknownVertex)?);
            if !set.is_subset(vertices[i]) || !set.is_subset(vertices[j]) {
                return Err(Error::NotSubset);
            }
            g.add_edge(a, b, set);
        }
        Ok(g)
    }

    pub(crate) fn add_vertex(&mut self, set: GenSet) -> VertexId {
        let id = VertexId(self.next_id);
        self.next_id += 1;
        self.vertices.insert(id, set);
        id
    }

    pub(crate) fn add_edge(&mut self, a: VertexId, b: VertexId, set: GenSet) {
        self.edges.push(Edge { ends: (a, b), set });
    }

    pub(crate) fn remove_vertex(&mut self, v: VertexId) -> Vec<Edge> {
        self.vertices.remove(&v);
        let (gone, kept): (Vec<Edge>, Vec<Edge>) = self.edges.iter().partition(|e| e.touches(v));
        self.edges = kept;
        gone
    }

    pub(crate) fn edges_mut(&mut self) -> &mut Vec<Edge> {
        &mut self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn vertex_set(&self, v: VertexId) -> GenSet {
        self.vertices[&v]
    }

    pub fn try_vertex_set(&self, v: VertexId) -> Result<GenSet> {
        self.vertices.get(&v).copied().ok_or(Error::UnknownVertex)
    }

    /// `(id, set)` pairs ordered by set.
    pub fn vertices_sorted(&self) -> Vec<(VertexId, GenSet)> {
        let mut out: Vec<_> = self.vertices.iter().map(|(&k, &v)| (k, v)).collect();
        out.sort_by_key(|&(id, s)| (s, id));
        out
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn find_vertex(&self, set: GenSet) -> Option<VertexId> {
        self.vertices
            .iter()
            .find(|(_, &s)| s == set)
            .map(|(&id, _)| id)
    }

    pub fn incident_edges(&self, v: VertexId) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.touches(v))
    }

    pub fn incident_edge_sets(&self, v: VertexId) -> Vec<GenSet> {
        self.incident_edges(v).map(|e| e.set).collect()
    }

    pub fn vertex_family(&self) -> BTreeSet<GenSet> {
        self.vertices.values().copied().collect()
    }

    /// Edge sets, sorted, with multiplicity.
    pub fn edge_multiset(&self) -> Vec<GenSet> {
        let mut out: Vec<GenSet> = self.edges.iter().map(|e| e.set).collect();
        out.sort();
        out
    }

    /// Vertex sets plus edges as sorted pairs of endpoint sets.
    pub fn shape_key(&self) -> (Vec<GenSet>, Vec<(GenSet, GenSet, GenSet)>) {
        let mut vs: Vec<GenSet> = self.vertices.values().copied().collect();
        vs.sort();
        let mut es: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (self.vertices[&e.ends.0], self.vertices[&e.ends.1]);
                (a.min(b), a.max(b), e.set)
            })
            .collect();
        es.sort();
        (vs, es)
    }

    pub fn is_tree(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 || self.edges.len() != n - 1 {
            return false;
        }
        let start = *self.vertices.keys().next().expect("nonempty");
        self.reachable(start, |_| true).len() == n
    }

    /// No edge between distinct vertices has edge set equal to an endpoint set.
    pub fn is_reduced(&self) -> bool {
        self.edges.iter().all(|e| {
            e.ends.0 == e.ends.1
                || (e.set != self.vertices[&e.ends.0] && e.set != self.vertices[&e.ends.1])
        })
    }

    fn reachable(&self, start: VertexId, edge_ok: impl Fn(&Edge) -> bool) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for e in self.incident_edges(v).filter(|e| edge_ok(e)) {
                let w = e.other(v);
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Violations of the structural conditions of a visual decomposition:
    /// tree shape, edge sets inside their endpoints, every edge of the
    /// diagram inside some vertex, and for each generator a nonempty connected
    /// subtree of vertices and edges containing it.
    pub fn check_visual(&self, d: &CoxeterDiagram) -> Vec<String> {
        let mut out = Vec::new();
        if !self.is_tree() {
            out.push("underlying graph is not a tree".to_string());
        }
        for e in &self.edges {
            if !e.set.is_subset(self.vertices[&e.ends.0]) || !e.set.is_subset(self.vertices[&e.ends.1]) {
                out.push(format!("edge set {} not inside both endpoints", d.format_set(e.set)));
            }
        }
        for (i, j, _) in d.edges() {
            let pair = GenSet::singleton(i).with(j);
            if !self.vertices.values().any(|v| pair.is_subset(*v)) {
                out.push(format!("diagram edge {}-{} lies in no vertex", d.name(i), d.name(j)));
            }
        }
        for s in d.all() {
            let holders: BTreeSet<VertexId> = self
                .vertices
                .iter()
                .filter(|(_, v)| v.contains(s))
                .map(|(&id, _)| id)
                .collect();
            let Some(&first) = holders.iter().next() else {
                out.push(format!("generator {} lies in no vertex", d.name(s)));
                continue;
            };
            if self.reachable(first, |e| e.set.contains(s)) != holders {
                out.push(format!("vertices containing {} do not form a subtree", d.name(s)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn trivial_is_visual() {
        let d = fixtures::fix_cycle8();
        let g = GraphOfGroups::trivial(&d);
        assert!(g.is_tree());
        assert!(g.is_reduced());
        assert!(g.check_visual(&d).is_empty());
    }

    #[test]
    fn detects_broken_subtree() {
        let d = fixtures::fix_cycle8();
        let s = |n: &[&str]| d.subset(n).unwrap();
        let g = GraphOfGroups::from_parts(
            &[s(&["a", "b", "x", "y"]), s(&["x", "y", "u", "c", "d", "v"])],
            &[(0, 1, s(&["x"]))],
        )
        .unwrap();
        assert!(g.check_visual(&d).iter().any(|m| m.contains("subtree")));
    }
}
