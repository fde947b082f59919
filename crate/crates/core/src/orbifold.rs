//! Rigid and orbifold vertices of a final decomposition.
//!
//! An orbifold vertex `V` splits as `⟨T⟩ × ⟨M⟩` where `M` is the common part
//! of a minimal-rank crossing pair of splitters and `T = V − M` is either a
//! single cycle (virtually a surface group) or a disjoint union of paths and
//! points (virtually free).

use std::fmt;

use crate::classify::virtually_abelian_structure;
use crate::diagram::{CoxeterDiagram, DiagramBuilder};
use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::gog::{GraphOfGroups, VertexId};
use crate::splitters::{minimal_splitters, SplitterRecord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Loop(usize),
    /// Each path lists its generators in walk order.
    PathsAndPoints { paths: Vec<Vec<usize>>, points: Vec<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbifoldClass {
    VirtuallySurface,
    VirtuallyFree,
}

impl fmt::Display for OrbifoldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbifoldClass::VirtuallySurface => "virtually surface",
            OrbifoldClass::VirtuallyFree => "virtually free",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldStructure {
    pub vertex: GenSet,
    pub t_part: GenSet,
    pub m_part: GenSet,
    pub shape: Shape,
    pub classification: OrbifoldClass,
    pub free_decomposition: Option<GraphOfGroups>,
    /// The crossing pair `M` was read from.
    pub pair: (GenSet, GenSet),
    /// Distinct `M` values read from other minimal-rank crossing pairs.
    pub alternative_m_parts: Vec<GenSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexKind {
    Rigid,
    Orbifold(OrbifoldStructure),
}

impl VertexKind {
    pub fn is_orbifold(&self) -> bool {
        matches!(self, VertexKind::Orbifold(_))
    }
}

pub fn classify_vertex(d: &CoxeterDiagram, psi: &GraphOfGroups, v: VertexId) -> Result<VertexKind> {
    let records = minimal_splitters(d, psi, v)?;
    if records.iter().any(SplitterRecord::is_crossing) {
        Ok(VertexKind::Orbifold(structure_from(d, psi.vertex_set(v), &records)?))
    } else {
        Ok(VertexKind::Rigid)
    }
}

/// Kinds of every vertex of `psi`, ordered by vertex set.
pub fn classify_all(d: &CoxeterDiagram, psi: &GraphOfGroups) -> Result<Vec<(GenSet, VertexKind)>> {
    psi.vertices_sorted()
        .into_iter()
        .map(|(id, set)| Ok((set, classify_vertex(d, psi, id)?)))
        .collect()
}

pub fn orbifold_structure(d: &CoxeterDiagram, psi: &GraphOfGroups, v: VertexId) -> Result<OrbifoldStructure> {
    let records = minimal_splitters(d, psi, v)?;
    structure_from(d, psi.vertex_set(v), &records)
}

fn fail(msg: impl Into<String>) -> Error {
    Error::OrbifoldVerification(msg.into())
}

/// `A ∩ B` for a crossing pair, after checking `A − B` is an unrelated pair
/// separated by `B` and symmetrically.
fn common_part(d: &CoxeterDiagram, a: GenSet, b: GenSet) -> Result<GenSet> {
    for (x, y) in [(a, b), (b, a)] {
        let pair = x - y;
        let ends: Vec<usize> = pair.iter().collect();
        if ends.len() != 2 {
            return Err(fail(format!(
                "{} minus {} is not a pair",
                d.format_set(x),
                d.format_set(y)
            )));
        }
        if d.label(ends[0], ends[1]).is_some() {
            return Err(fail(format!("{} is not an unrelated pair", d.format_set(pair))));
        }
        if !d.separates(y, pair) {
            return Err(fail(format!(
                "{} does not separate {}",
                d.format_set(y),
                d.format_set(pair)
            )));
        }
    }
    Ok(a & b)
}

fn structure_from(d: &CoxeterDiagram, vertex: GenSet, records: &[SplitterRecord]) -> Result<OrbifoldStructure> {
    let mut pairs: Vec<(usize, GenSet, GenSet)> = Vec::new();
    for r in records {
        for &b in &r.crossing_partners {
            if r.subset < b {
                pairs.push((r.rank(), r.subset, b));
            }
        }
    }
    pairs.sort();
    let &(rank, a, b) = pairs.first().ok_or_else(|| fail("no crossing pair"))?;

    let m_part = common_part(d, a, b)?;
    let t_part = vertex - m_part;

    let mut alternative_m_parts = Vec::new();
    for &(r, x, y) in pairs.iter().skip(1).take_while(|p| p.0 == rank) {
        debug_assert_eq!(r, rank);
        let m = common_part(d, x, y)?;
        if m != m_part && !alternative_m_parts.contains(&m) {
            alternative_m_parts.push(m);
        }
    }

    for t in t_part {
        for m in m_part {
            if d.label(t, m) != Some(2) {
                return Err(fail(format!("{}-{} does not commute", d.name(t), d.name(m))));
            }
        }
    }
    if virtually_abelian_structure(d, m_part).is_none() {
        return Err(fail(format!("{} is not virtually abelian", d.format_set(m_part))));
    }

    let shape = recognize_shape(d, t_part).ok_or_else(|| {
        fail(format!(
            "{} is neither a cycle nor a union of paths",
            d.format_set(t_part)
        ))
    })?;
    let (classification, free_decomposition) = match &shape {
        Shape::Loop(_) => (OrbifoldClass::VirtuallySurface, None),
        Shape::PathsAndPoints { paths, points } => (
            OrbifoldClass::VirtuallyFree,
            Some(free_decomposition(paths, points)),
        ),
    };
    Ok(OrbifoldStructure {
        vertex,
        t_part,
        m_part,
        shape,
        classification,
        free_decomposition,
        pair: (a, b),
        alternative_m_parts,
    })
}

/// A single cycle of length at least 4, or a disjoint union of simple paths
/// and isolated vertices, in the presentation diagram on `t`.
pub fn recognize_shape(d: &CoxeterDiagram, t: GenSet) -> Option<Shape> {
    let deg = |i: usize| (d.neighbors(i) & t).len();
    if t.iter().any(|i| deg(i) > 2) {
        return None;
    }
    let comps = d.components_within(t);
    if comps.len() == 1 && t.len() >= 4 && t.iter().all(|i| deg(i) == 2) {
        return Some(Shape::Loop(t.len()));
    }
    let mut paths = Vec::new();
    let mut points = Vec::new();
    for c in comps {
        if c.len() == 1 {
            points.push(c.first().expect("nonempty"));
            continue;
        }
        let start = c.iter().find(|&i| deg(i) == 1)?;
        paths.push(walk_path(d, t, start));
    }
    Some(Shape::PathsAndPoints { paths, points })
}

fn walk_path(d: &CoxeterDiagram, t: GenSet, start: usize) -> Vec<usize> {
    let mut out = vec![start];
    let mut prev = None;
    let mut cur = start;
    loop {
        let mut next = d.neighbors(cur) & t;
        if let Some(p) = prev {
            next = next.without(p);
        }
        let Some(n) = next.first() else { break };
        out.push(n);
        prev = Some(cur);
        cur = n;
    }
    out
}

/// The visual free-product decomposition of a union of paths and points:
/// each path `s₁…sₖ` becomes the chain `⟨s₁,s₂⟩ ∗_{⟨s₂⟩} ⟨s₂,s₃⟩ ∗ …`,
/// points become `⟨z⟩`, and the components are joined by trivial edges.
pub fn free_decomposition(paths: &[Vec<usize>], points: &[usize]) -> GraphOfGroups {
    let mut g = GraphOfGroups::empty();
    let mut roots = Vec::new();
    for path in paths {
        let mut prev: Option<VertexId> = None;
        for w in path.windows(2) {
            let id = g.add_vertex(GenSet::from_iter([w[0], w[1]]));
            match prev {
                Some(p) => g.add_edge(p, id, GenSet::singleton(w[0])),
                None => roots.push(id),
            }
            prev = Some(id);
        }
    }
    for &z in points {
        roots.push(g.add_vertex(GenSet::singleton(z)));
    }
    for &r in roots.iter().skip(1) {
        g.add_edge(roots[0], r, GenSet::EMPTY);
    }
    g
}

/// A diagram whose decomposition has `⟨T⟩` as its orbifold vertex.
#[derive(Debug, Clone)]
pub struct RealizedOrbifold {
    pub diagram: CoxeterDiagram,
    pub t_part: GenSet,
    /// `Cᵢ = {bᵢ, aᵢ₊₁, xᵢ, yᵢ}`.
    pub blocks: Vec<GenSet>,
    /// `{bᵢ, aᵢ₊₁}`.
    pub edge_sets: Vec<GenSet>,
}

pub fn realize_orbifold(t: &CoxeterDiagram) -> Result<CoxeterDiagram> {
    Ok(realize_orbifold_detailed(t)?.diagram)
}

/// Components `T₀ … Tₙ` of `t` with endpoints `aᵢ, bᵢ` are closed into a
/// cycle through blocks `Cᵢ = {bᵢ, aᵢ₊₁, xᵢ, yᵢ}`, where `bᵢ` and `aᵢ₊₁` stay
/// unrelated and every pair involving `xᵢ` or `yᵢ` commutes.
pub fn realize_orbifold_detailed(t: &CoxeterDiagram) -> Result<RealizedOrbifold> {
    let Some(Shape::PathsAndPoints { .. }) = recognize_shape(t, t.all()).filter(|s| !matches!(s, Shape::Loop(_)))
    else {
        return Err(Error::NotPathUnion);
    };
    let comps = t.components();
    let ends: Vec<(usize, usize)> = comps
        .iter()
        .map(|&c| {
            if c.len() == 1 {
                let z = c.first().expect("nonempty");
                (z, z)
            } else {
                let start = c.iter().find(|&i| (t.neighbors(i) & c).len() == 1).expect("path end");
                let walk = walk_path(t, c, start);
                (walk[0], *walk.last().expect("nonempty"))
            }
        })
        .collect();
    let k = comps.len();
    for i in 0..k {
        let (b, a_next) = (ends[i].1, ends[(i + 1) % k].0);
        if b == a_next || t.label(b, a_next).is_some() {
            return Err(Error::DegenerateOrbifold);
        }
    }

    let mut builder = DiagramBuilder::new();
    for name in t.generator_names() {
        builder.generator(name)?;
    }
    for (i, j, m) in t.edges() {
        builder.edge(t.name(i), t.name(j), m)?;
    }
    let fresh = |builder: &DiagramBuilder, base: String| {
        let mut name = base;
        while builder.has_generator(&name) {
            name.push('\'');
        }
        name
    };
    let mut blocks = Vec::new();
    let mut edge_sets = Vec::new();
    for i in 0..k {
        let (b, a_next) = (ends[i].1, ends[(i + 1) % k].0);
        let x = fresh(&builder, format!("x{i}"));
        let xi = builder.generator(&x)?;
        let y = fresh(&builder, format!("y{i}"));
        let yi = builder.generator(&y)?;
        builder.edge(&x, &y, 2)?;
        for z in [t.name(b), t.name(a_next)] {
            builder.edge(&x, z, 2)?;
            builder.edge(&y, z, 2)?;
        }
        blocks.push(GenSet::from_iter([b, a_next, xi, yi]));
        edge_sets.push(GenSet::from_iter([b, a_next]));
    }
    Ok(RealizedOrbifold {
        diagram: builder.build(),
        t_part: t.all(),
        blocks,
        edge_sets,
    })
}
