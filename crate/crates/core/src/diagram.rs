//! Coxeter presentation diagrams.
//!
//! Generators are indexed in input order. A pair with a finite label `m >= 2`
//! is an edge of the presentation diagram; a pair without a label is
//! unrelated (`m = ∞`). Separation and components are always taken in the
//! presentation diagram, while the Coxeter graph (edges where `m != 2`) is
//! kept alongside for classification.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::genset::{GenSet, MAX_GENERATORS};

/// An immutable Coxeter presentation diagram.
#[derive(Clone, PartialEq, Eq)]
pub struct CoxeterDiagram {
    names: Vec<String>,
    index: HashMap<String, usize>,
    labels: Vec<Option<u32>>,
    adjacency: Vec<GenSet>,
    coxeter_adjacency: Vec<GenSet>,
}

/// Incremental constructor for [`CoxeterDiagram`].
#[derive(Debug, Default, Clone)]
pub struct DiagramBuilder {
    names: Vec<String>,
    index: HashMap<String, usize>,
    labels: HashMap<(usize, usize), Option<u32>>,
}

impl DiagramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn generator(&mut self, name: &str) -> Result<usize> {
        if self.index.contains_key(name) {
            return Err(Error::DuplicateGenerator(name.to_string()));
        }
        if self.names.len() == MAX_GENERATORS {
            return Err(Error::TooManyGenerators(self.names.len() + 1));
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        Ok(i)
    }

    pub fn generators<'a>(&mut self, names: impl IntoIterator<Item = &'a str>) -> Result<()> {
        for name in names {
            self.generator(name)?;
        }
        Ok(())
    }

    pub fn has_generator(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Sets `m(s,t)`. `None` records the pair as explicitly unrelated.
    pub fn label(&mut self, s: &str, t: &str, m: Option<u32>) -> Result<()> {
        let i = self.lookup(s)?;
        let j = self.lookup(t)?;
        if i == j {
            return Err(Error::SelfPair(s.to_string()));
        }
        if let Some(m) = m {
            if m < 2 {
                return Err(Error::InvalidLabel {
                    s: s.to_string(),
                    t: t.to_string(),
                    label: m,
                });
            }
        }
        let key = (i.min(j), i.max(j));
        match self.labels.get(&key) {
            Some(&old) if old != m => Err(Error::ConflictingLabel {
                s: s.to_string(),
                t: t.to_string(),
            }),
            _ => {
                self.labels.insert(key, m);
                Ok(())
            }
        }
    }

    pub fn edge(&mut self, s: &str, t: &str, m: u32) -> Result<()> {
        self.label(s, t, Some(m))
    }

    pub fn unrelated(&mut self, s: &str, t: &str) -> Result<()> {
        self.label(s, t, None)
    }

    pub fn build(self) -> CoxeterDiagram {
        let n = self.names.len();
        let mut labels = vec![None; n * n];
        for (&(i, j), &m) in &self.labels {
            labels[i * n + j] = m;
            labels[j * n + i] = m;
        }
        CoxeterDiagram::assemble(self.names, self.index, labels)
    }

    fn lookup(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }
}

impl CoxeterDiagram {
    pub fn builder() -> DiagramBuilder {
        DiagramBuilder::new()
    }

    /// Builds a diagram from generator names and finite labels.
    pub fn from_edges(names: &[&str], edges: &[(&str, &str, u32)]) -> Result<Self> {
        let mut b = DiagramBuilder::new();
        b.generators(names.iter().copied())?;
        for &(s, t, m) in edges {
            b.edge(s, t, m)?;
        }
        Ok(b.build())
    }

    fn assemble(names: Vec<String>, index: HashMap<String, usize>, labels: Vec<Option<u32>>) -> Self {
        let n = names.len();
        let mut adjacency = vec![GenSet::EMPTY; n];
        let mut coxeter_adjacency = vec![GenSet::EMPTY; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                match labels[i * n + j] {
                    Some(2) => adjacency[i] = adjacency[i].with(j),
                    Some(_) => {
                        adjacency[i] = adjacency[i].with(j);
                        coxeter_adjacency[i] = coxeter_adjacency[i].with(j);
                    }
                    None => coxeter_adjacency[i] = coxeter_adjacency[i].with(j),
                }
            }
        }
        CoxeterDiagram {
            names,
            index,
            labels,
            adjacency,
            coxeter_adjacency,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn all(&self) -> GenSet {
        GenSet::full(self.len())
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// `m(s,t)` by index; `None` for unrelated pairs, `Some(1)` on the diagonal.
    pub fn label(&self, i: usize, j: usize) -> Option<u32> {
        if i == j {
            Some(1)
        } else {
            self.labels[i * self.len() + j]
        }
    }

    /// Neighbours of `i` in the presentation diagram.
    pub fn neighbors(&self, i: usize) -> GenSet {
        self.adjacency[i]
    }

    /// Neighbours of `i` in the Coxeter graph (`m != 2`, including unrelated pairs).
    pub fn coxeter_neighbors(&self, i: usize) -> GenSet {
        self.coxeter_adjacency[i]
    }

    /// Edges of the presentation diagram as `(i, j, m)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if let Some(m) = self.labels[i * n + j] {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<GenSet> {
        names
            .iter()
            .map(|s| {
                self.index_of(s.as_ref())
                    .ok_or_else(|| Error::UnknownGenerator(s.as_ref().to_string()))
            })
            .collect()
    }

    pub fn names(&self, set: GenSet) -> Vec<&str> {
        set.iter().map(|i| self.name(i)).collect()
    }

    /// `{a,b,c}` rendering of a subset.
    pub fn format_set(&self, set: GenSet) -> String {
        format!("{{{}}}", self.names(set).join(","))
    }

    pub fn is_complete(&self, set: GenSet) -> bool {
        set.iter().all(|i| (set.without(i)).is_subset(self.adjacency[i]))
    }

    /// The diagram on `a` with the labels of `self` restricted to pairs inside `a`.
    pub fn induced_subdiagram(&self, a: GenSet) -> CoxeterDiagram {
        let members: Vec<usize> = a.iter().collect();
        let k = members.len();
        let names: Vec<String> = members.iter().map(|&i| self.names[i].clone()).collect();
        let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut labels = vec![None; k * k];
        for (p, &i) in members.iter().enumerate() {
            for (q, &j) in members.iter().enumerate() {
                if p != q {
                    labels[p * k + q] = self.label(i, j);
                }
            }
        }
        CoxeterDiagram::assemble(names, index, labels)
    }

    /// Connected components of the presentation diagram, ordered by smallest member.
    pub fn components(&self) -> Vec<GenSet> {
        components_in(&self.adjacency, self.all())
    }

    /// Components of the presentation diagram restricted to `within`.
    pub fn components_within(&self, within: GenSet) -> Vec<GenSet> {
        components_in(&self.adjacency, within)
    }

    /// Components of `Γ − a`.
    pub fn components_minus(&self, a: GenSet) -> Vec<GenSet> {
        components_in(&self.adjacency, self.all() - a)
    }

    /// Components of the Coxeter graph restricted to `within`.
    pub fn coxeter_components(&self, within: GenSet) -> Vec<GenSet> {
        components_in(&self.coxeter_adjacency, within)
    }

    /// Whether two elements of `b − a` lie in distinct components of `Γ − a`.
    pub fn separates(&self, a: GenSet, b: GenSet) -> bool {
        let rest = b - a;
        let Some(start) = rest.first() else {
            return false;
        };
        let reach = reach_from(&self.adjacency, self.all() - a, GenSet::singleton(start));
        !rest.is_subset(reach)
    }

    /// Components of `Γ − a` that meet `v`.
    pub fn parts(&self, a: GenSet, v: GenSet) -> Vec<GenSet> {
        self.components_minus(a)
            .into_iter()
            .filter(|k| !k.is_disjoint(v))
            .collect()
    }
}

fn reach_from(adjacency: &[GenSet], within: GenSet, seed: GenSet) -> GenSet {
    let mut seen = seed & within;
    let mut frontier = seen;
    while !frontier.is_empty() {
        let mut next = GenSet::EMPTY;
        for i in frontier {
            next = next | adjacency[i];
        }
        frontier = (next & within) - seen;
        seen = seen | frontier;
    }
    seen
}

fn components_in(adjacency: &[GenSet], within: GenSet) -> Vec<GenSet> {
    let mut out = Vec::new();
    let mut left = within;
    while let Some(i) = left.first() {
        let comp = reach_from(adjacency, within, GenSet::singleton(i));
        out.push(comp);
        left = left - comp;
    }
    out
}

impl fmt::Debug for CoxeterDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterDiagram")
            .field("generators", &self.names)
            .field(
                "edges",
                &self
                    .edges()
                    .into_iter()
                    .map(|(i, j, m)| format!("{}-{}:{}", self.names[i], self.names[j], m))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn builder_rejects_bad_input() {
        let mut b = DiagramBuilder::new();
        b.generators(["p", "q"]).unwrap();
        assert_eq!(b.generator("p"), Err(Error::DuplicateGenerator("p".into())));
        assert!(matches!(b.edge("p", "q", 1), Err(Error::InvalidLabel { .. })));
        assert!(matches!(b.edge("p", "p", 3), Err(Error::SelfPair(_))));
        assert!(matches!(b.edge("p", "r", 3), Err(Error::UnknownGenerator(_))));
        b.edge("p", "q", 3).unwrap();
        b.edge("q", "p", 3).unwrap();
        assert!(matches!(b.edge("q", "p", 4), Err(Error::ConflictingLabel { .. })));
        assert!(matches!(b.unrelated("q", "p"), Err(Error::ConflictingLabel { .. })));
    }

    #[test]
    fn induced_subdiagram_keeps_labels() {
        let d = fixtures::fix_cycle8();
        let a = d.subset(&["x", "y", "u", "v"]).unwrap();
        let sub = d.induced_subdiagram(a);
        let names: Vec<_> = sub
            .edges()
            .into_iter()
            .map(|(i, j, m)| (sub.name(i).to_string(), sub.name(j).to_string(), m))
            .collect();
        assert_eq!(names.len(), 2);
        assert!(names.contains(&("x".into(), "u".into(), 3)));
        assert!(names.contains(&("v".into(), "y".into(), 3)) || names.contains(&("y".into(), "v".into(), 3)));
        assert!(d.induced_subdiagram(GenSet::EMPTY).is_empty());
    }

    #[test]
    fn star_subdiagram() {
        let d = fixtures::fix_star();
        let sub = d.induced_subdiagram(d.subset(&["a", "b", "c"]).unwrap());
        assert_eq!(sub.edges().len(), 2);
        assert_eq!(sub.label(0, 2), None);
        assert_eq!(sub.label(0, 1), Some(2));
        assert_eq!(sub.label(1, 2), Some(2));
    }

    #[test]
    fn components_and_separation() {
        let d = fixtures::fix_cycle8();
        let s = |names: &[&str]| d.subset(names).unwrap();
        assert_eq!(d.components(), vec![d.all()]);
        assert_eq!(
            d.components_minus(s(&["x", "y"])),
            vec![s(&["a", "b"]), s(&["u", "c", "d", "v"])]
        );
        assert_eq!(d.components_minus(GenSet::EMPTY).len(), 1);
        let sub = d.induced_subdiagram(s(&["x", "y", "u", "v"]));
        assert_eq!(sub.components().len(), 2);
        assert!(d.separates(s(&["x", "v"]), s(&["u", "y"])));
        assert!(!d.separates(s(&["x", "v"]), s(&["x", "y"])));
        assert!(d.separates(s(&["x", "y"]), d.all()));

        let pq = CoxeterDiagram::from_edges(&["p", "q"], &[]).unwrap();
        assert_eq!(pq.components(), vec![GenSet::singleton(0), GenSet::singleton(1)]);
    }

    #[test]
    fn star_components_minus_ac() {
        let d = fixtures::fix_star();
        let comps = d.components_minus(d.subset(&["a", "c"]).unwrap());
        assert_eq!(comps.len(), 4);
        assert!(comps.iter().all(|k| k.len() == 1));
    }
}
