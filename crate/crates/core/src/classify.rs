//! Finite, affine and virtually abelian recognition.
//!
//! A subset generates a virtually abelian group exactly when every component
//! of its Coxeter graph is of finite or irreducible affine type. The affine
//! components form `E(A)`, and the rank is the sum of their ranks.

use std::fmt;

use crate::diagram::CoxeterDiagram;
use crate::error::{Error, Result};
use crate::genset::GenSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
}

/// Irreducible affine types, indexed by rank (one less than the number of nodes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AffineType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IrreducibleType {
    Finite(FiniteType),
    Affine(AffineType),
    Indefinite,
}

impl AffineType {
    pub fn rank(self) -> usize {
        match self {
            AffineType::A(n) | AffineType::B(n) | AffineType::C(n) | AffineType::D(n) => n,
            AffineType::E6 => 6,
            AffineType::E7 => 7,
            AffineType::E8 => 8,
            AffineType::F4 => 4,
            AffineType::G2 => 2,
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E6 => write!(f, "E6"),
            FiniteType::E7 => write!(f, "E7"),
            FiniteType::E8 => write!(f, "E8"),
            FiniteType::F4 => write!(f, "F4"),
            FiniteType::H3 => write!(f, "H3"),
            FiniteType::H4 => write!(f, "H4"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineType::A(n) => write!(f, "~A{n}"),
            AffineType::B(n) => write!(f, "~B{n}"),
            AffineType::C(n) => write!(f, "~C{n}"),
            AffineType::D(n) => write!(f, "~D{n}"),
            AffineType::E6 => write!(f, "~E6"),
            AffineType::E7 => write!(f, "~E7"),
            AffineType::E8 => write!(f, "~E8"),
            AffineType::F4 => write!(f, "~F4"),
            AffineType::G2 => write!(f, "~G2"),
        }
    }
}

impl fmt::Display for IrreducibleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrreducibleType::Finite(t) => t.fmt(f),
            IrreducibleType::Affine(t) => t.fmt(f),
            IrreducibleType::Indefinite => f.write_str("indefinite"),
        }
    }
}

/// The direct-product decomposition of a virtually abelian visual subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtAbelianStructure {
    pub subset: GenSet,
    pub finite_part: GenSet,
    pub finite_components: Vec<(GenSet, FiniteType)>,
    pub euclidean_components: Vec<(GenSet, AffineType)>,
    pub e_of_a: GenSet,
    pub rank: usize,
}

/// Components of the Coxeter graph on `a` (edges where `m != 2`, unrelated pairs included).
pub fn coxeter_graph_components(d: &CoxeterDiagram, a: GenSet) -> Vec<GenSet> {
    d.coxeter_components(a)
}

/// Classifies a whole diagram, which must be connected as a Coxeter graph.
pub fn classify_irreducible(d: &CoxeterDiagram) -> Result<IrreducibleType> {
    classify_subset(d, d.all())
}

/// Classifies the visual subgroup on `a`, which must be connected as a Coxeter graph.
pub fn classify_subset(d: &CoxeterDiagram, a: GenSet) -> Result<IrreducibleType> {
    if d.coxeter_components(a).len() != 1 {
        return Err(Error::NotCoxeterConnected);
    }
    Ok(classify_connected(d, a))
}

fn classify_connected(d: &CoxeterDiagram, a: GenSet) -> IrreducibleType {
    use IrreducibleType::{Affine, Finite, Indefinite};

    let nodes: Vec<usize> = a.iter().collect();
    let n = nodes.len();
    if n == 1 {
        return Finite(FiniteType::A(1));
    }
    if n == 2 {
        return match d.label(nodes[0], nodes[1]) {
            Some(m) => Finite(FiniteType::I2(m)),
            None => Affine(AffineType::A(1)),
        };
    }

    let nbrs = |i: usize| d.coxeter_neighbors(i) & a;
    let mut edge_count = 0;
    for &i in &nodes {
        for j in nbrs(i) {
            if i < j {
                if d.label(i, j).is_none() {
                    return Indefinite;
                }
                edge_count += 1;
            }
        }
    }
    let lbl = |i: usize, j: usize| d.label(i, j).expect("finite label");
    let degree = |i: usize| nbrs(i).len();

    if edge_count == n {
        if nodes.iter().all(|&i| degree(i) == 2) && walk_cycle(&nodes, &nbrs).iter().all(|&(i, j)| lbl(i, j) == 3) {
            return Affine(AffineType::A(n - 1));
        }
        return Indefinite;
    }
    if edge_count != n - 1 {
        return Indefinite;
    }

    let branch: Vec<usize> = nodes.iter().copied().filter(|&i| degree(i) >= 3).collect();
    let max_degree = nodes.iter().map(|&i| degree(i)).max().unwrap_or(0);

    if max_degree > 4 {
        return Indefinite;
    }
    if max_degree == 4 {
        let c = branch[0];
        if n == 5 && nbrs(c).iter().all(|j| lbl(c, j) == 3) {
            return Affine(AffineType::D(4));
        }
        return Indefinite;
    }

    match branch.len() {
        0 => classify_path(&path_labels(&nodes, &nbrs, &lbl)),
        1 => classify_fork(branch[0], &nbrs, &lbl, n),
        2 => {
            let all_three = nodes
                .iter()
                .all(|&i| nbrs(i).iter().all(|j| lbl(i, j) == 3));
            let forked = branch
                .iter()
                .all(|&b| nbrs(b).iter().filter(|&j| degree(j) == 1).count() == 2);
            if all_three && forked {
                Affine(AffineType::D(n - 1))
            } else {
                Indefinite
            }
        }
        _ => Indefinite,
    }
}

fn walk_cycle(nodes: &[usize], nbrs: &dyn Fn(usize) -> GenSet) -> Vec<(usize, usize)> {
    let start = nodes[0];
    let mut out = Vec::new();
    let mut prev = start;
    let mut cur = nbrs(start).first().expect("cycle node has neighbours");
    out.push((prev, cur));
    while cur != start {
        let next = (nbrs(cur).without(prev)).first().expect("cycle continues");
        prev = cur;
        cur = next;
        out.push((prev, cur));
    }
    out
}

fn path_labels(
    nodes: &[usize],
    nbrs: &dyn Fn(usize) -> GenSet,
    lbl: &dyn Fn(usize, usize) -> u32,
) -> Vec<u32> {
    let start = *nodes
        .iter()
        .find(|&&i| nbrs(i).len() == 1)
        .expect("path has an end");
    let mut labels = Vec::new();
    let mut prev = None;
    let mut cur = start;
    loop {
        let mut next_set = nbrs(cur);
        if let Some(p) = prev {
            next_set = next_set.without(p);
        }
        let Some(next) = next_set.first() else { break };
        labels.push(lbl(cur, next));
        prev = Some(cur);
        cur = next;
    }
    labels
}

fn classify_path(labels: &[u32]) -> IrreducibleType {
    use IrreducibleType::{Affine, Finite, Indefinite};

    let n = labels.len() + 1;
    let reversed: Vec<u32> = labels.iter().rev().copied().collect();
    let matches = |pattern: &[u32]| labels == pattern || reversed == pattern;
    let inner_threes = |ls: &[u32]| ls.iter().all(|&m| m == 3);

    if inner_threes(labels) {
        return Finite(FiniteType::A(n));
    }
    for ls in [labels, reversed.as_slice()] {
        if ls[0] == 4 && inner_threes(&ls[1..]) {
            return Finite(FiniteType::B(n));
        }
    }
    if labels.len() >= 2
        && labels[0] == 4
        && labels[labels.len() - 1] == 4
        && inner_threes(&labels[1..labels.len() - 1])
    {
        return Affine(AffineType::C(n - 1));
    }
    if matches(&[3, 4, 3]) {
        return Finite(FiniteType::F4);
    }
    if matches(&[3, 3, 4, 3]) {
        return Affine(AffineType::F4);
    }
    if matches(&[5, 3]) {
        return Finite(FiniteType::H3);
    }
    if matches(&[5, 3, 3]) {
        return Finite(FiniteType::H4);
    }
    if matches(&[6, 3]) {
        return Affine(AffineType::G2);
    }
    Indefinite
}

fn classify_fork(
    center: usize,
    nbrs: &dyn Fn(usize) -> GenSet,
    lbl: &dyn Fn(usize, usize) -> u32,
    n: usize,
) -> IrreducibleType {
    use IrreducibleType::{Affine, Finite, Indefinite};

    // Each leg as the labels walked outward from the branch node.
    let mut legs: Vec<Vec<u32>> = nbrs(center)
        .iter()
        .map(|first| {
            let mut labels = vec![lbl(center, first)];
            let mut prev = center;
            let mut cur = first;
            while let Some(next) = nbrs(cur).without(prev).first() {
                labels.push(lbl(cur, next));
                prev = cur;
                cur = next;
            }
            labels
        })
        .collect();
    legs.sort_by_key(|l| l.len());

    let all_three = legs.iter().flatten().all(|&m| m == 3);
    let lens = (legs[0].len(), legs[1].len(), legs[2].len());
    if all_three {
        return match lens {
            (1, 1, r) => Finite(FiniteType::D(r + 3)),
            (1, 2, 2) => Finite(FiniteType::E6),
            (1, 2, 3) => Finite(FiniteType::E7),
            (1, 2, 4) => Finite(FiniteType::E8),
            (2, 2, 2) => Affine(AffineType::E6),
            (1, 3, 3) => Affine(AffineType::E7),
            (1, 2, 5) => Affine(AffineType::E8),
            _ => Indefinite,
        };
    }
    if lens.0 == 1 && lens.1 == 1 {
        let fours: Vec<(usize, usize)> = legs
            .iter()
            .enumerate()
            .flat_map(|(li, leg)| {
                leg.iter()
                    .enumerate()
                    .filter(|(_, &m)| m != 3)
                    .map(move |(pi, _)| (li, pi))
            })
            .collect();
        if let [(li, pi)] = fours.as_slice() {
            let leg = &legs[*li];
            if leg[*pi] == 4 && *pi == leg.len() - 1 && leg.len() == lens.2 {
                return Affine(AffineType::B(n - 1));
            }
        }
    }
    Indefinite
}

/// Decomposes `a` into its finite part and Euclidean components, or `None`
/// when `⟨a⟩` is not virtually abelian.
pub fn virtually_abelian_structure(d: &CoxeterDiagram, a: GenSet) -> Option<VirtAbelianStructure> {
    let mut finite_part = GenSet::EMPTY;
    let mut finite_components = Vec::new();
    let mut euclidean_components = Vec::new();
    let mut e_of_a = GenSet::EMPTY;
    let mut rank = 0;
    for comp in d.coxeter_components(a) {
        match classify_connected(d, comp) {
            IrreducibleType::Finite(t) => {
                finite_part = finite_part | comp;
                finite_components.push((comp, t));
            }
            IrreducibleType::Affine(t) => {
                e_of_a = e_of_a | comp;
                rank += comp.len() - 1;
                euclidean_components.push((comp, t));
            }
            IrreducibleType::Indefinite => return None,
        }
    }
    Some(VirtAbelianStructure {
        subset: a,
        finite_part,
        finite_components,
        euclidean_components,
        e_of_a,
        rank,
    })
}

pub fn is_virtually_abelian(d: &CoxeterDiagram, a: GenSet) -> bool {
    d.coxeter_components(a)
        .into_iter()
        .all(|c| classify_connected(d, c) != IrreducibleType::Indefinite)
}

pub fn is_finite(d: &CoxeterDiagram, a: GenSet) -> bool {
    d.coxeter_components(a)
        .into_iter()
        .all(|c| matches!(classify_connected(d, c), IrreducibleType::Finite(_)))
}

/// Every virtually abelian subset of `within`, the empty set included, in
/// increasing mask order.
pub fn va_subsets(d: &CoxeterDiagram, within: GenSet) -> Vec<GenSet> {
    let members: Vec<usize> = within.iter().collect();
    let mut out = Vec::new();
    extend_va(d, &members, 0, GenSet::EMPTY, &mut out);
    out.sort_by_key(|s| s.bits());
    out
}

fn extend_va(d: &CoxeterDiagram, members: &[usize], from: usize, current: GenSet, out: &mut Vec<GenSet>) {
    out.push(current);
    for (k, &i) in members.iter().enumerate().skip(from) {
        let next = current.with(i);
        if is_virtually_abelian(d, next) {
            extend_va(d, members, k + 1, next, out);
        }
    }
}
