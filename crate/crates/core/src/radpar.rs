//! Radical parallelism: `p ∥ q` iff every point distant from `p` is distant
//! from `q`. Computed from neighbourhood inclusion; the projection onto
//! `P(R / rad R)` serves as the independent second route.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::projline::{DistantGraph, ProjectiveLine, QuotientLine};
use crate::ring::Ring;

/// `P(R)_p ⊆ P(R)_q`.
#[inline]
pub fn is_parallel_def(graph: &DistantGraph, p: usize, q: usize) -> bool {
    graph.neighbours(p).is_subset(graph.neighbours(q))
}

/// `p̄ = q̄` in `P(R / rad R)`.
#[inline]
pub fn is_parallel_quot(quot: &QuotientLine, p: usize, q: usize) -> bool {
    quot.project(p) == quot.project(q)
}

pub fn is_local_ring(ring: &Ring) -> bool {
    ring.is_local()
}

/// The relation `∥` as a dense boolean matrix, one bitset per row.
pub fn parallel_matrix(graph: &DistantGraph) -> Vec<FixedBitSet> {
    let n = graph.len();
    (0..n)
        .map(|p| {
            let mut row = FixedBitSet::with_capacity(n);
            for q in 0..n {
                if is_parallel_def(graph, p, q) {
                    row.insert(q);
                }
            }
            row
        })
        .collect()
}

/// Reflexive, symmetric and transitive, checked exhaustively.
pub fn is_equivalence(rel: &[FixedBitSet]) -> bool {
    let n = rel.len();
    (0..n).all(|p| rel[p].contains(p))
        && (0..n).all(|p| rel[p].ones().all(|q| rel[q].contains(p)))
        && (0..n).all(|p| rel[p].ones().all(|q| rel[q].is_subset(&rel[p])))
}

/// An ordered pair whose neighbourhoods are properly nested, if any.
pub fn proper_neighbourhood_inclusion(graph: &DistantGraph) -> Option<(usize, usize)> {
    let n = graph.len();
    (0..n)
        .flat_map(|p| (0..n).map(move |q| (p, q)))
        .find(|&(p, q)| {
            graph.neighbours(p).is_subset(graph.neighbours(q)) && graph.neighbours(p) != graph.neighbours(q)
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationComparison {
    /// `∥` equals non-distance (diagonal included on both sides).
    pub coincide: bool,
    /// A non-distant pair that is not radically parallel.
    pub witness: Option<(usize, usize)>,
}

/// Compares `∥` with `≁`. Both relations contain the diagonal since `Δ` is
/// anti-reflexive, so they are compared as full relations.
pub fn compare_relations(graph: &DistantGraph) -> RelationComparison {
    let n = graph.len();
    let mut witness = None;
    let mut coincide = true;
    'outer: for p in 0..n {
        for q in 0..n {
            let par = is_parallel_def(graph, p, q);
            let non_distant = !graph.is_distant(p, q);
            if par != non_distant {
                coincide = false;
                if !par {
                    witness = Some((p, q));
                    break 'outer;
                }
            }
        }
    }
    RelationComparison { coincide, witness }
}

#[derive(Debug, Clone, Serialize)]
pub struct ParallelismReport {
    pub ring: String,
    pub points: usize,
    pub radical_size: usize,
    /// Parallel classes in order of their least point.
    pub classes: Vec<Vec<usize>>,
    /// Common class size, `None` if the classes differ in size.
    pub class_size: Option<usize>,
    pub is_equivalence: bool,
    pub no_proper_inclusion: bool,
    pub relation_equal_to_nondistant: bool,
    pub is_local: bool,
    pub witness: Option<(String, String)>,
}

pub fn parallel_classes(line: &ProjectiveLine, graph: &DistantGraph) -> ParallelismReport {
    let n = line.len();
    let rel = parallel_matrix(graph);
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for p in 0..n {
        if class_of[p] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (p..n)
            .filter(|&q| rel[p].contains(q) && rel[q].contains(p))
            .collect();
        for &q in &members {
            class_of[q] = classes.len();
        }
        classes.push(members);
    }
    let first = classes.first().map_or(0, Vec::len);
    let class_size = classes.iter().all(|c| c.len() == first).then_some(first);
    let cmp = compare_relations(graph);
    ParallelismReport {
        ring: line.ring().descriptor().to_string(),
        points: n,
        radical_size: line.ring().radical().len(),
        classes,
        class_size,
        is_equivalence: is_equivalence(&rel),
        no_proper_inclusion: proper_neighbourhood_inclusion(graph).is_none(),
        relation_equal_to_nondistant: cmp.coincide,
        is_local: line.ring().is_local(),
        witness: cmp.witness.map(|(p, q)| (line.label(p), line.label(q))),
    }
}
