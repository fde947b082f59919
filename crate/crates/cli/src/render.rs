//! Text, JSON and DOT renderings of diagrams and decompositions.

use std::fmt::Write as _;

use coxeter_jsj::classify::VirtAbelianStructure;
use coxeter_jsj::splitters::SplitterRecord;
use coxeter_jsj::{CoxeterDiagram, GenSet, GraphOfGroups, OrbifoldStructure, Shape, StageTrace, VertexKind};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct DiagramEdge {
    pub s: String,
    pub t: String,
    pub m: u32,
}

#[derive(Debug, Serialize)]
pub struct StageEdge {
    pub between: [usize; 2],
    pub set: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Stage {
    pub vertices: Vec<Vec<String>>,
    pub edges: Vec<StageEdge>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeJson {
    Loop(usize),
    PathsAndPoints { paths: Vec<Vec<String>>, points: Vec<String> },
}

#[derive(Debug, Serialize)]
pub struct VertexClassification {
    pub vertex: Vec<String>,
    pub kind: &'static str,
    pub t: Option<Vec<String>>,
    pub m: Option<Vec<String>>,
    pub shape: Option<ShapeJson>,
    pub classification: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct FinalStage {
    pub vertices: Vec<Vec<String>>,
    pub edges: Vec<StageEdge>,
    pub vertex_classifications: Vec<VertexClassification>,
}

#[derive(Debug, Serialize)]
pub struct JsjDocument {
    pub generators: Vec<String>,
    pub edges: Vec<DiagramEdge>,
    pub stages: Vec<Stage>,
    #[serde(rename = "final")]
    pub final_stage: FinalStage,
}

pub fn names(d: &CoxeterDiagram, set: GenSet) -> Vec<String> {
    d.names(set).into_iter().map(str::to_owned).collect()
}

pub fn stage(d: &CoxeterDiagram, g: &GraphOfGroups) -> Stage {
    let sorted = g.vertices_sorted();
    let pos = |id| sorted.iter().position(|&(v, _)| v == id).expect("vertex present");
    let mut edges: Vec<StageEdge> = g
        .edges()
        .iter()
        .map(|e| {
            let (i, j) = (pos(e.ends.0), pos(e.ends.1));
            StageEdge { between: [i.min(j), i.max(j)], set: names(d, e.set) }
        })
        .collect();
    edges.sort_by_key(|e| e.between);
    Stage { vertices: sorted.iter().map(|&(_, s)| names(d, s)).collect(), edges }
}

fn shape_json(d: &CoxeterDiagram, shape: &Shape) -> ShapeJson {
    match shape {
        Shape::Loop(n) => ShapeJson::Loop(*n),
        Shape::PathsAndPoints { paths, points } => ShapeJson::PathsAndPoints {
            paths: paths.iter().map(|p| p.iter().map(|&i| d.name(i).to_owned()).collect()).collect(),
            points: points.iter().map(|&i| d.name(i).to_owned()).collect(),
        },
    }
}

pub fn vertex_classification(d: &CoxeterDiagram, set: GenSet, kind: &VertexKind) -> VertexClassification {
    match kind {
        VertexKind::Rigid => VertexClassification {
            vertex: names(d, set),
            kind: "rigid",
            t: None,
            m: None,
            shape: None,
            classification: None,
        },
        VertexKind::Orbifold(o) => VertexClassification {
            vertex: names(d, set),
            kind: "orbifold",
            t: Some(names(d, o.t_part)),
            m: Some(names(d, o.m_part)),
            shape: Some(shape_json(d, &o.shape)),
            classification: Some(o.classification.to_string()),
        },
    }
}

pub fn jsj_document(d: &CoxeterDiagram, trace: &StageTrace, kinds: &[(GenSet, VertexKind)]) -> JsjDocument {
    let last = stage(d, trace.final_stage());
    JsjDocument {
        generators: d.generator_names().to_vec(),
        edges: d
            .edges()
            .into_iter()
            .map(|(s, t, m)| DiagramEdge { s: d.name(s).to_owned(), t: d.name(t).to_owned(), m })
            .collect(),
        stages: trace.stages.iter().map(|g| stage(d, g)).collect(),
        final_stage: FinalStage {
            vertices: last.vertices,
            edges: last.edges,
            vertex_classifications: kinds.iter().map(|(s, k)| vertex_classification(d, *s, k)).collect(),
        },
    }
}

pub fn dot(d: &CoxeterDiagram, g: &GraphOfGroups, name: &str) -> String {
    let st = stage(d, g);
    let mut out = format!("graph {name} {{\n");
    for (i, v) in st.vertices.iter().enumerate() {
        let _ = writeln!(out, "  v{i} [label=\"{}\"];", v.join(","));
    }
    for e in &st.edges {
        let _ = writeln!(out, "  v{} -- v{} [label=\"{}\"];", e.between[0], e.between[1], e.set.join(","));
    }
    out.push_str("}\n");
    out
}

pub fn va_structure(d: &CoxeterDiagram, s: &VirtAbelianStructure) -> String {
    let mut out = format!("virtually abelian, rank {}, E = {}\n", s.rank, d.format_set(s.e_of_a));
    for (c, t) in &s.euclidean_components {
        let _ = writeln!(out, "  {} {t}", d.format_set(*c));
    }
    for (c, t) in &s.finite_components {
        let _ = writeln!(out, "  {} {t}", d.format_set(*c));
    }
    out
}

fn shape_text(d: &CoxeterDiagram, shape: &Shape) -> String {
    match shape {
        Shape::Loop(n) => format!("loop of length {n}"),
        Shape::PathsAndPoints { paths, points } => {
            let mut parts: Vec<String> = paths
                .iter()
                .map(|p| p.iter().map(|&i| d.name(i)).collect::<Vec<_>>().join("-"))
                .collect();
            parts.extend(points.iter().map(|&i| d.name(i).to_owned()));
            format!("paths and points {}", parts.join(" "))
        }
    }
}

pub fn orbifold_text(d: &CoxeterDiagram, o: &OrbifoldStructure) -> String {
    let mut out = format!(
        "orbifold, T = {}, M = {}, {}, {}",
        d.format_set(o.t_part),
        d.format_set(o.m_part),
        shape_text(d, &o.shape),
        o.classification
    );
    if let Some(free) = &o.free_decomposition {
        let factors: Vec<String> = free.vertices_sorted().into_iter().map(|(_, s)| d.format_set(s)).collect();
        let _ = write!(out, ", free factors {}", factors.join(" "));
    }
    out
}

pub fn stage_text(d: &CoxeterDiagram, g: &GraphOfGroups) -> String {
    let st = stage(d, g);
    let mut out = String::new();
    for (i, v) in st.vertices.iter().enumerate() {
        let _ = writeln!(out, "  [{i}] {{{}}}", v.join(","));
    }
    for e in &st.edges {
        let _ = writeln!(out, "  [{}]-[{}] {{{}}}", e.between[0], e.between[1], e.set.join(","));
    }
    out
}

pub fn final_text(d: &CoxeterDiagram, g: &GraphOfGroups, kinds: &[(GenSet, VertexKind)]) -> String {
    let st = stage(d, g);
    let mut out = format!("vertices: {}\n", st.vertices.len());
    for (i, (set, kind)) in kinds.iter().enumerate() {
        let tag = match kind {
            VertexKind::Rigid => "rigid".to_owned(),
            VertexKind::Orbifold(o) => orbifold_text(d, o),
        };
        let _ = writeln!(out, "  [{i}] {}  {tag}", d.format_set(*set));
    }
    let _ = writeln!(out, "edges: {}", st.edges.len());
    for e in &st.edges {
        let _ = writeln!(out, "  [{}]-[{}] {{{}}}", e.between[0], e.between[1], e.set.join(","));
    }
    out
}

pub fn splitter_line(d: &CoxeterDiagram, r: &SplitterRecord) -> String {
    let mut line = format!("  {}  E = {}  rank {}", d.format_set(r.subset), d.format_set(r.e_of_a()), r.rank());
    if !r.crossing_partners.is_empty() {
        let partners: Vec<String> = r.crossing_partners.iter().map(|&b| d.format_set(b)).collect();
        let _ = write!(line, "  crosses {}", partners.join(" "));
    }
    line
}
