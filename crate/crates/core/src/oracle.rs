//! Slow independent verifiers.
//!
//! Everything here recomputes from the label table with its own traversal
//! and the Gram-matrix spectrum instead of the classification tables, so
//! agreement with the main pipeline is meaningful.

use std::collections::{BTreeSet, HashSet};

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{CoxeterDiagram, DiagramBuilder};
use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::gog::{GraphOfGroups, VertexId};
use crate::jsj::{reduce_in_place, split_in_place};

pub const ZERO_TOLERANCE: f64 = 1e-9;
pub const SPLITTER_LIMIT: usize = 16;
pub const JSJ_LIMIT: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumClass {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

/// `−cos(π/m)` off the diagonal, `−1` for unrelated pairs, `1` on the diagonal.
pub fn gram_matrix(d: &CoxeterDiagram, a: GenSet) -> DMatrix<f64> {
    let idx: Vec<usize> = a.iter().collect();
    DMatrix::from_fn(idx.len(), idx.len(), |p, q| {
        if p == q {
            1.0
        } else {
            match d.label(idx[p], idx[q]) {
                Some(m) => -(std::f64::consts::PI / m as f64).cos(),
                None => -1.0,
            }
        }
    })
}

/// Eigenvalues in increasing order.
pub fn gram_spectrum(d: &CoxeterDiagram, a: GenSet) -> Vec<f64> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(gram_matrix(d, a)).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn classify_spectrum(ev: &[f64]) -> SpectrumClass {
    match ev.first() {
        None => SpectrumClass::PositiveDefinite,
        Some(&min) if min > ZERO_TOLERANCE => SpectrumClass::PositiveDefinite,
        Some(&min) if min >= -ZERO_TOLERANCE => SpectrumClass::PositiveSemidefinite,
        _ => SpectrumClass::Indefinite,
    }
}

pub fn gram_spectrum_classify(d: &CoxeterDiagram, a: GenSet) -> SpectrumClass {
    classify_spectrum(&gram_spectrum(d, a))
}

/// Number of eigenvalues within the zero tolerance.
pub fn gram_nullity(d: &CoxeterDiagram, a: GenSet) -> usize {
    gram_spectrum(d, a)
        .iter()
        .filter(|x| x.abs() <= ZERO_TOLERANCE)
        .count()
}

fn closure(within: GenSet, seed: usize, linked: impl Fn(usize, usize) -> bool) -> GenSet {
    let mut seen = GenSet::singleton(seed);
    let mut stack = vec![seed];
    while let Some(i) = stack.pop() {
        for j in within - seen {
            if linked(i, j) {
                seen = seen.with(j);
                stack.push(j);
            }
        }
    }
    seen
}

fn split_into(within: GenSet, linked: impl Fn(usize, usize) -> bool) -> Vec<GenSet> {
    let mut out = Vec::new();
    let mut left = within;
    while let Some(i) = left.first() {
        let c = closure(within, i, &linked);
        out.push(c);
        left = left - c;
    }
    out
}

/// Components of `Γ − a`, by direct label lookups.
pub fn bfs_components_minus(d: &CoxeterDiagram, a: GenSet) -> Vec<GenSet> {
    split_into(d.all() - a, |i, j| d.label(i, j).is_some())
}

pub fn bfs_separates(d: &CoxeterDiagram, a: GenSet, b: GenSet) -> bool {
    let rest = b - a;
    bfs_components_minus(d, a)
        .iter()
        .filter(|k| !k.is_disjoint(rest))
        .count()
        >= 2
}

fn coxeter_pieces(d: &CoxeterDiagram, a: GenSet) -> Vec<GenSet> {
    split_into(a, |i, j| d.label(i, j) != Some(2))
}

pub fn spectral_virtually_abelian(d: &CoxeterDiagram, a: GenSet) -> bool {
    gram_spectrum_classify(d, a) != SpectrumClass::Indefinite
}

/// Union of the Coxeter-graph components of `a` with a singular Gram matrix.
pub fn spectral_euclidean_part(d: &CoxeterDiagram, a: GenSet) -> GenSet {
    coxeter_pieces(d, a)
        .into_iter()
        .filter(|&c| gram_spectrum_classify(d, c) == SpectrumClass::PositiveSemidefinite)
        .fold(GenSet::EMPTY, |acc, c| acc | c)
}

fn check_limit(size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::OracleLimit { size, limit })
    } else {
        Ok(())
    }
}

/// Minimal splitters of `v` by brute force over every subset.
pub fn exhaustive_splitters(d: &CoxeterDiagram, psi: &GraphOfGroups, v: VertexId) -> Result<Vec<GenSet>> {
    let vset = psi.try_vertex_set(v)?;
    check_limit(vset.len(), SPLITTER_LIMIT)?;
    let incident = psi.incident_edge_sets(v);
    splitters_of(d, vset, &incident)
}

fn splitters_of(d: &CoxeterDiagram, vset: GenSet, incident: &[GenSet]) -> Result<Vec<GenSet>> {
    let candidates: Vec<(GenSet, GenSet)> = vset
        .subsets()
        .filter(|&a| {
            bfs_separates(d, a, vset)
                && incident.iter().all(|&e| !bfs_separates(d, a, e))
                && spectral_virtually_abelian(d, a)
        })
        .map(|a| (a, spectral_euclidean_part(d, a)))
        .collect();
    let mut out: Vec<GenSet> = candidates
        .iter()
        .filter(|(_, ea)| !candidates.iter().any(|(_, eb)| eb.is_proper_subset(*ea)))
        .map(|&(a, _)| a)
        .collect();
    out.sort();
    Ok(out)
}

pub fn exhaustive_crosses(d: &CoxeterDiagram, a: GenSet, b: GenSet) -> bool {
    bfs_separates(d, a, b) && bfs_separates(d, b, a)
}

/// Subsets of `S` generating a finite group (positive definite Gram matrix)
/// that separate the diagram.
pub fn finite_separators(d: &CoxeterDiagram) -> Result<Vec<GenSet>> {
    check_limit(d.len(), SPLITTER_LIMIT)?;
    Ok(d.all()
        .subsets()
        .filter(|&a| bfs_separates(d, a, d.all()) && gram_spectrum_classify(d, a) == SpectrumClass::PositiveDefinite)
        .collect())
}

type TreeKey = (Vec<GenSet>, Vec<(GenSet, GenSet, GenSet)>);

/// Final vertex-set families reachable by every order of non-crossing
/// minimal splits at every stage.
pub fn exhaustive_jsj(d: &CoxeterDiagram) -> Result<BTreeSet<Vec<GenSet>>> {
    check_limit(d.len(), JSJ_LIMIT)?;
    let mut finals = BTreeSet::new();
    let mut seen: HashSet<TreeKey> = HashSet::new();
    let mut frontier = vec![GraphOfGroups::trivial(d)];
    while let Some(g) = frontier.pop() {
        if !seen.insert(g.shape_key()) {
            continue;
        }
        for next in all_next_stages(d, &g)? {
            if next.vertex_family() == g.vertex_family() {
                finals.insert(g.vertex_family().into_iter().collect());
            } else {
                frontier.push(next);
            }
        }
    }
    Ok(finals)
}

fn all_next_stages(d: &CoxeterDiagram, psi: &GraphOfGroups) -> Result<Vec<GraphOfGroups>> {
    let mut plan = Vec::new();
    for (id, vset) in psi.vertices_sorted() {
        let incident = psi.incident_edge_sets(id);
        let ms = splitters_of(d, vset, &incident)?;
        let nc: Vec<GenSet> = ms
            .iter()
            .copied()
            .filter(|&a| !ms.iter().any(|&b| exhaustive_crosses(d, a, b)))
            .collect();
        plan.push((id, nc));
    }
    let mut trees = vec![psi.clone()];
    for (id, nc) in plan {
        let mut results: Vec<GraphOfGroups> = Vec::new();
        let mut result_keys = HashSet::new();
        for g in trees {
            let mut visited = HashSet::new();
            refine_all(d, g, BTreeSet::from([id]), &nc, &mut visited, &mut |t| {
                if result_keys.insert(t.shape_key()) {
                    results.push(t);
                }
            })?;
        }
        trees = results;
    }
    Ok(trees)
}

fn refine_all(
    d: &CoxeterDiagram,
    g: GraphOfGroups,
    pieces: BTreeSet<VertexId>,
    nc: &[GenSet],
    visited: &mut HashSet<(TreeKey, Vec<GenSet>)>,
    emit: &mut dyn FnMut(GraphOfGroups),
) -> Result<()> {
    let mut piece_sets: Vec<GenSet> = pieces.iter().map(|&p| g.vertex_set(p)).collect();
    piece_sets.sort();
    if !visited.insert((g.shape_key(), piece_sets)) {
        return Ok(());
    }
    let mut any = false;
    for &p in &pieces {
        let pset = g.vertex_set(p);
        for &a in nc {
            if !a.is_subset(pset) || !bfs_separates(d, a, pset) {
                continue;
            }
            any = true;
            let mut next = g.clone();
            let new_ids = split_in_place(d, &mut next, p, a)?;
            reduce_in_place(&mut next);
            let mut next_pieces = pieces.clone();
            next_pieces.remove(&p);
            next_pieces.extend(new_ids);
            next_pieces.retain(|&id| next.contains_vertex(id));
            refine_all(d, next, next_pieces, nc, visited, emit)?;
        }
    }
    if !any {
        emit(g);
    }
    Ok(())
}

/// A seeded random diagram on generators `s0 … s{n-1}`.
pub fn random_diagram(seed: u64, n: usize) -> CoxeterDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unrelated = rng.gen_range(0.0..0.5);
    let commuting = rng.gen_range(0.3..0.9);
    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut b = DiagramBuilder::new();
    b.generators(names.iter().map(String::as_str)).expect("fresh names");
    for i in 0..n {
        for j in i + 1..n {
            let r: f64 = rng.gen();
            let label = if r < unrelated {
                None
            } else if r < unrelated + (1.0 - unrelated) * commuting {
                Some(2)
            } else {
                Some(*[3, 3, 3, 4, 4, 5, 6].get(rng.gen_range(0..7)).expect("in range"))
            };
            b.label(&names[i], &names[j], label).expect("fresh pair");
        }
    }
    b.build()
}
