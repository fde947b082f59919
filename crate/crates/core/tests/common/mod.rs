#![allow(dead_code)]

use coxeter_jsj::oracle::random_diagram;
use coxeter_jsj::splitters::VertexContext;
use coxeter_jsj::{CoxeterDiagram, DiagramBuilder, GenSet, GraphOfGroups};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded random diagrams with `min_n..=max_n` generators.
pub fn random_corpus(count: u64, base_seed: u64, min_n: usize, max_n: usize) -> Vec<(String, CoxeterDiagram)> {
    (0..count)
        .map(|k| {
            let seed = base_seed + k;
            let n = min_n + (seed as usize * 7 + 3) % (max_n - min_n + 1);
            (format!("random(seed={seed}, n={n})"), random_diagram(seed, n))
        })
        .collect()
}

/// A disjoint union of at most three simple paths and points on 4..=8 generators.
pub fn random_path_union(seed: u64) -> CoxeterDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = rng.gen_range(4..=8);
    let k = rng.gen_range(1..=3usize).min(total);
    let mut sizes = vec![1usize; k];
    for _ in k..total {
        let i = rng.gen_range(0..k);
        sizes[i] += 1;
    }
    let mut b = DiagramBuilder::new();
    let mut next = 0;
    for size in sizes {
        let names: Vec<String> = (next..next + size).map(|i| format!("t{i}")).collect();
        next += size;
        for name in &names {
            b.generator(name).unwrap();
        }
        for w in names.windows(2) {
            let m = [2, 3, 3, 4, 5, 6][rng.gen_range(0..6)];
            b.edge(&w[0], &w[1], m).unwrap();
        }
    }
    b.build()
}

/// Violations of the crossing-pair structure at every vertex of `psi`:
/// both differences are unrelated pairs with common remainder, equal ranks,
/// and exactly two components of `Γ − B` meet the vertex.
pub fn crossing_structure_violations(d: &CoxeterDiagram, psi: &GraphOfGroups) -> (usize, Vec<String>) {
    let mut pairs = 0;
    let mut out = Vec::new();
    for (id, vset) in psi.vertices_sorted() {
        let records = VertexContext::new(psi, id).unwrap().minimal_splitters(d);
        for ra in &records {
            for &b in &ra.crossing_partners {
                let rb = records.iter().find(|r| r.subset == b).unwrap();
                pairs += 1;
                let tag = format!("{} x {} at {}", d.format_set(ra.subset), d.format_set(b), d.format_set(vset));
                for (x, y) in [(ra.subset, b), (b, ra.subset)] {
                    let diff: Vec<usize> = (x - y).iter().collect();
                    if diff.len() != 2 || d.label(diff[0], diff[1]).is_some() {
                        out.push(format!("{tag}: difference is not an unrelated pair"));
                    }
                }
                if ra.rank() != rb.rank() {
                    out.push(format!("{tag}: ranks differ"));
                }
                if rb.parts.len() != 2 {
                    out.push(format!("{tag}: {} parts meet the vertex", rb.parts.len()));
                }
                if !rb.crossing_partners.contains(&ra.subset) {
                    out.push(format!("{tag}: crossing is not symmetric"));
                }
            }
        }
    }
    (pairs, out)
}

pub fn set(d: &CoxeterDiagram, names: &[&str]) -> GenSet {
    d.subset(names).unwrap()
}
