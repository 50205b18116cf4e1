use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{Matrix2, ProjectiveLine};

/// Adjacency of the distant relation on an enumerated line.
#[derive(Debug, Clone)]
pub struct DistantGraph {
    rows: Vec<FixedBitSet>,
}

#[derive(Serialize)]
struct GraphJson<'a> {
    ring: String,
    points: Vec<String>,
    edges: &'a [[usize; 2]],
}

impl DistantGraph {
    /// For each `p` a matrix `γ` with `∞^γ = p` is found once; then
    /// `q Δ p` iff `q·γ⁻¹ Δ ∞`, i.e. iff the second coordinate of `q·γ⁻¹`
    /// is a unit.
    pub fn build(line: &ProjectiveLine) -> Self {
        let n = line.len();
        let ring = line.ring();
        let row = |p: usize| -> FixedBitSet {
            let (a, b) = line.canonical(p);
            let stacked = |q: usize| {
                let (c, d) = line.canonical(q);
                Matrix2::new(a, b, c, d)
            };
            // Pivoted inverses are cheap; the exhaustive search is the fallback.
            let frame_inv = (0..n)
                .find_map(|q| stacked(q).pivot_inverse(ring).flatten())
                .or_else(|| (0..n).find_map(|q| stacked(q).inverse(ring).ok()))
                .expect("every point has a distant point");
            let mut bits = FixedBitSet::with_capacity(n);
            for q in 0..n {
                let (_, y) = frame_inv.act(ring, line.canonical(q));
                if ring.is_unit(y) {
                    bits.insert(q);
                }
            }
            bits
        };

        #[cfg(feature = "parallel")]
        let rows: Vec<FixedBitSet> = {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(row).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let rows: Vec<FixedBitSet> = (0..n).map(row).collect();

        DistantGraph { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    #[inline]
    pub fn is_distant(&self, p: usize, q: usize) -> bool {
        self.rows[p].contains(q)
    }

    /// `P(R)_p`, the neighbourhood of `p`.
    pub fn neighbours(&self, p: usize) -> &FixedBitSet {
        &self.rows[p]
    }

    pub fn degree(&self, p: usize) -> usize {
        self.rows[p].count_ones(..)
    }

    /// Undirected edges `[p, q]` with `p < q`, in lexicographic order.
    pub fn edges(&self) -> Vec<[usize; 2]> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(p, row)| row.ones().filter(move |&q| q > p).map(move |q| [p, q]))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.len()).all(|p| self.rows[p].ones().all(|q| self.rows[q].contains(p)))
    }

    pub fn is_antireflexive(&self) -> bool {
        (0..self.len()).all(|p| !self.rows[p].contains(p))
    }

    pub fn to_dot(&self, line: &ProjectiveLine) -> String {
        let mut out = String::from("graph {\n");
        for p in 0..self.len() {
            writeln!(out, "  {p} [label=\"{}\"];", line.label(p)).unwrap();
        }
        for [p, q] in self.edges() {
            writeln!(out, "  {p} -- {q};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, line: &ProjectiveLine) -> String {
        let edges = self.edges();
        let doc = GraphJson {
            ring: line.ring().descriptor().to_string(),
            points: (0..line.len()).map(|p| line.label(p)).collect(),
            edges: &edges,
        };
        serde_json::to_string(&doc).expect("graph serializes")
    }
}
