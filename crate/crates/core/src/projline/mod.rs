//! The projective line `P(R)`: unit orbits of admissible pairs, the distant
//! relation, neighbourhoods and the projection onto `P(R / I)`.

mod graph;
mod matrix;
mod projection;

pub use graph::DistantGraph;
pub use matrix::{Matrix2, MatrixDisplay};
pub use projection::{project_point, QuotientLine};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

pub type Pair = (Elem, Elem);

/// `(a, b)` is unimodular iff `aa' + bb' = 1` is solvable, i.e. `1 ∈ aR + bR`.
/// For finite rings this coincides with admissibility.
pub fn is_admissible(ring: &Ring, (a, b): Pair) -> bool {
    let mut in_b_r = vec![false; ring.size()];
    for x in ring.elements() {
        in_b_r[ring.mul(b, x).index()] = true;
    }
    ring.elements()
        .any(|x| in_b_r[ring.sub(ring.one(), ring.mul(a, x)).index()])
}

/// Completion oracle: `(a, b)` is the first row of some invertible matrix.
/// Costs `|R|²` invertibility tests, so only usable on small rings.
pub fn is_completable(ring: &Ring, (a, b): Pair) -> bool {
    ring.elements().any(|c| {
        ring.elements()
            .any(|d| Matrix2::new(a, b, c, d).is_invertible(ring))
    })
}

/// A point `R(a, b)`: the orbit `{(ua, ub) : u ∈ R*}` with its
/// lexicographically least member as canonical representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    canonical: Pair,
    orbit: Vec<Pair>,
}

impl Point {
    pub fn canonical(&self) -> Pair {
        self.canonical
    }

    pub fn orbit(&self) -> &[Pair] {
        &self.orbit
    }
}

#[derive(Debug, Clone)]
pub struct ProjectiveLine {
    ring: Arc<Ring>,
    points: Vec<Point>,
    // pair (a, b) at a·|R| + b -> point index, u32::MAX if not admissible
    lookup: Vec<u32>,
}

impl ProjectiveLine {
    /// Enumerates all unit orbits of admissible pairs. Pairs are scanned in
    /// lexicographic order, so the first member met of each orbit is its
    /// canonical representative and points come out sorted.
    pub fn enumerate(ring: Arc<Ring>) -> Self {
        let n = ring.size();
        let units: Vec<Elem> = ring.units().collect();
        let mut lookup = vec![u32::MAX; n * n];
        let mut points = Vec::new();
        for a in ring.elements() {
            for b in ring.elements() {
                if lookup[a.index() * n + b.index()] != u32::MAX || !is_admissible(&ring, (a, b)) {
                    continue;
                }
                let id = points.len() as u32;
                let mut orbit: Vec<Pair> = units
                    .iter()
                    .map(|&u| (ring.mul(u, a), ring.mul(u, b)))
                    .collect();
                orbit.sort_unstable();
                orbit.dedup();
                for &(x, y) in &orbit {
                    lookup[x.index() * n + y.index()] = id;
                }
                points.push(Point {
                    canonical: (a, b),
                    orbit,
                });
            }
        }
        ProjectiveLine {
            ring,
            points,
            lookup,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, p: usize) -> &Point {
        &self.points[p]
    }

    pub fn canonical(&self, p: usize) -> Pair {
        self.points[p].canonical
    }

    pub fn check_point(&self, p: usize) -> Result<usize> {
        if p < self.points.len() {
            Ok(p)
        } else {
            Err(Error::ForeignPoint {
                index: p,
                len: self.points.len(),
            })
        }
    }

    /// Point index of an admissible pair, `None` otherwise.
    #[inline]
    pub fn find(&self, (a, b): Pair) -> Option<usize> {
        let id = self.lookup[a.index() * self.ring.size() + b.index()];
        (id != u32::MAX).then_some(id as usize)
    }

    pub fn point_of(&self, pair: Pair) -> Result<usize> {
        self.ring.check(pair.0)?;
        self.ring.check(pair.1)?;
        self.find(pair)
            .ok_or_else(|| Error::NotAdmissible(self.format_pair(pair)))
    }

    /// `∞ = R(1, 0)`.
    pub fn infinity(&self) -> usize {
        self.find((self.ring.one(), self.ring.zero())).expect("R(1,0) is a point")
    }

    /// `R(0, 1)`.
    pub fn origin(&self) -> usize {
        self.find((self.ring.zero(), self.ring.one())).expect("R(0,1) is a point")
    }

    /// `p Δ q` iff the matrix with rows the representatives is invertible.
    pub fn is_distant(&self, p: usize, q: usize) -> bool {
        let (a, b) = self.canonical(p);
        let (c, d) = self.canonical(q);
        Matrix2::new(a, b, c, d).is_invertible(&self.ring)
    }

    pub fn try_is_distant(&self, p: usize, q: usize) -> Result<bool> {
        Ok(self.is_distant(self.check_point(p)?, self.check_point(q)?))
    }

    /// `{x : x Δ p}` computed directly from the definition.
    pub fn neighbourhood(&self, p: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_distant(x, p)).collect()
    }

    /// `p^γ`: the point of `rep · γ`. The caller guarantees invertibility;
    /// see [`ProjectiveLine::apply_matrix`] for the checked variant.
    #[inline]
    pub fn apply_unchecked(&self, p: usize, m: &Matrix2) -> usize {
        let image = m.act(&self.ring, self.canonical(p));
        self.find(image).expect("invertible matrices map points to points")
    }

    pub fn apply_matrix(&self, p: usize, m: &Matrix2) -> Result<usize> {
        self.check_point(p)?;
        if !m.belongs_to(&self.ring) {
            return Err(Error::RingMismatch);
        }
        if !m.is_invertible(&self.ring) {
            return Err(Error::NotInvertible(m.display(&self.ring).to_string()));
        }
        Ok(self.apply_unchecked(p, m))
    }

    /// The induced permutation of all points.
    pub fn permutation(&self, m: &Matrix2) -> Result<Vec<usize>> {
        if !m.is_invertible(&self.ring) {
            return Err(Error::NotInvertible(m.display(&self.ring).to_string()));
        }
        Ok((0..self.len()).map(|p| self.apply_unchecked(p, m)).collect())
    }

    pub fn format_pair(&self, (a, b): Pair) -> String {
        format!("({},{})", self.ring.label(a), self.ring.label(b))
    }

    pub fn label(&self, p: usize) -> String {
        self.format_pair(self.canonical(p))
    }
}
