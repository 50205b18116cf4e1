use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::transform::transform;
use super::KAlgebra;
use crate::error::{Error, Result};
use crate::projline::Matrix2;
use crate::radpar::is_parallel_def;
use crate::ring::Elem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GroupKind {
    B,
    T,
    N,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::B => "B",
            GroupKind::T => "T",
            GroupKind::N => "N",
        })
    }
}

#[derive(Debug, Clone)]
pub struct MatrixGroup {
    pub kind: GroupKind,
    pub members: Vec<Matrix2>,
}

impl MatrixGroup {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: &Matrix2) -> bool {
        self.members.contains(m)
    }

    /// Closed under products and inverses, exhaustively.
    pub fn is_closed(&self, alg: &KAlgebra) -> bool {
        let r = alg.ring();
        let set: HashSet<Matrix2> = self.members.iter().copied().collect();
        self.members.iter().all(|x| {
            x.inverse(r).is_ok_and(|inv| set.contains(&inv))
                && self.members.iter().all(|y| set.contains(&x.mul(r, y)))
        })
    }

    pub fn is_commutative(&self, alg: &KAlgebra) -> bool {
        let r = alg.ring();
        self.members
            .iter()
            .all(|x| self.members.iter().all(|y| x.mul(r, y) == y.mul(r, x)))
    }
}

/// `B = {[[1, -b], [0, 1]] : b ∈ rad R}`.
pub fn group_b(alg: &KAlgebra) -> MatrixGroup {
    let r = alg.ring();
    MatrixGroup {
        kind: GroupKind::B,
        members: r
            .radical()
            .members()
            .iter()
            .map(|&b| Matrix2::new(r.one(), r.neg(b), r.zero(), r.one()))
            .collect(),
    }
}

/// `T = {[[1, 0], [c, 1]] : c ∈ R}`.
pub fn group_t(alg: &KAlgebra) -> MatrixGroup {
    let r = alg.ring();
    MatrixGroup {
        kind: GroupKind::T,
        members: r
            .elements()
            .map(|c| Matrix2::new(r.one(), r.zero(), c, r.one()))
            .collect(),
    }
}

/// `ann(rad R) ∩ rad R`.
pub fn radical_annihilator(alg: &KAlgebra) -> Vec<Elem> {
    let r = alg.ring();
    let rad = r.radical();
    r.annihilator(rad.members())
        .into_iter()
        .filter(|&x| rad.contains(x))
        .collect()
}

/// `N = {[[1 + n₁, 0], [n₂, 1]] : n₁, n₂ ∈ ann(rad R) ∩ rad R}`.
pub fn group_n(alg: &KAlgebra) -> MatrixGroup {
    let r = alg.ring();
    let a = radical_annihilator(alg);
    let mut members = Vec::with_capacity(a.len() * a.len());
    for &n1 in &a {
        debug_assert_eq!(r.mul(r.add(r.one(), n1), r.sub(r.one(), n1)), r.one());
        for &n2 in &a {
            members.push(Matrix2::new(r.add(r.one(), n1), r.zero(), n2, r.one()));
        }
    }
    MatrixGroup {
        kind: GroupKind::N,
        members,
    }
}

fn require_radical(alg: &KAlgebra, b: Elem) -> Result<()> {
    let r = alg.ring();
    r.check(b)?;
    if r.in_radical(b) {
        Ok(())
    } else {
        Err(Error::NotInRadical(r.label(b).to_string()))
    }
}

/// `bcb = 0`.
pub fn tau_fixes(alg: &KAlgebra, c: Elem, b: Elem) -> Result<bool> {
    require_radical(alg, b)?;
    let r = alg.ring();
    r.check(c)?;
    Ok(r.mul(r.mul(b, c), b) == r.zero())
}

/// `R(1, b)` is fixed by `[[1, 0], [c, 1]]`.
pub fn tau_fixes_geometric(alg: &KAlgebra, c: Elem, b: Elem) -> Result<bool> {
    require_radical(alg, b)?;
    let (r, line) = (alg.ring(), alg.line());
    let tau = Matrix2::checked(r, r.one(), r.zero(), c, r.one())?;
    let p = line.point_of((r.one(), b))?;
    Ok(line.apply_matrix(p, &tau)? == p)
}

/// `νβ = βν` after checking `ν ∈ N` and `β ∈ B`.
pub fn commutes(alg: &KAlgebra, nu: &Matrix2, beta: &Matrix2) -> Result<bool> {
    if !group_n(alg).contains(nu) {
        return Err(Error::NotGroupMember("N".into()));
    }
    if !group_b(alg).contains(beta) {
        return Err(Error::NotGroupMember("B".into()));
    }
    let r = alg.ring();
    Ok(nu.mul(r, beta) == beta.mul(r, nu))
}

/// Every `ν ∈ N` fixes every point parallel to `∞`.
pub fn n_fixes_parallel_class(alg: &KAlgebra) -> bool {
    let (line, graph) = (alg.line(), alg.graph());
    let inf = line.infinity();
    let class: Vec<usize> = (0..line.len())
        .filter(|&p| is_parallel_def(graph, inf, p))
        .collect();
    group_n(alg)
        .members
        .iter()
        .all(|nu| class.iter().all(|&p| line.apply_unchecked(p, nu) == p))
}

/// `∞ ↦ ∞^β` is a bijection `B → {p : p ∥ ∞}`.
pub fn b_acts_regularly(alg: &KAlgebra) -> bool {
    let (line, graph) = (alg.line(), alg.graph());
    let inf = line.infinity();
    let mut class: Vec<usize> = (0..line.len())
        .filter(|&p| is_parallel_def(graph, inf, p))
        .collect();
    let mut images: Vec<usize> = group_b(alg)
        .members
        .iter()
        .map(|beta| line.apply_unchecked(inf, beta))
        .collect();
    images.sort_unstable();
    let distinct = {
        let mut d = images.clone();
        d.dedup();
        d.len() == images.len()
    };
    class.sort_unstable();
    distinct && images == class
}

/// `T'` consists of exactly the translations `z ↦ z + c`, one per `c`.
pub fn t_prime_is_translations(alg: &KAlgebra) -> bool {
    let r = alg.ring();
    let mut shifts = Vec::new();
    for tau in group_t(alg).members {
        let Ok(t) = transform(alg, &tau) else { return false };
        let Some(f) = t.total_table() else { return false };
        let c = f[r.zero().index()];
        if r.elements().any(|z| f[z.index()] != r.add(z, c)) {
            return false;
        }
        shifts.push(c);
    }
    shifts.sort_unstable();
    shifts.dedup();
    shifts.len() == r.size()
}
