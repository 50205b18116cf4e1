use std::sync::Arc;

use super::descriptor::{IdealSpec, RingDescriptor};
use super::{Elem, Ring};
use crate::error::{Error, Result};

/// A two-sided ideal, stored as a sorted member list plus membership mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    members: Vec<Elem>,
    mask: Vec<bool>,
}

impl Ideal {
    /// Validates that `members` is an additive subgroup absorbing
    /// multiplication on both sides.
    pub fn new(ring: &Ring, members: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let mut mask = vec![false; ring.size()];
        for x in members {
            ring.check(x)?;
            mask[x.index()] = true;
        }
        let ideal = Self::from_mask(mask);
        ideal.validate(ring)?;
        Ok(ideal)
    }

    fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| Elem::from_index(i))
            .collect();
        Ideal { members, mask }
    }

    fn validate(&self, ring: &Ring) -> Result<()> {
        if !self.contains(ring.zero()) {
            return Err(Error::NotAnIdeal("does not contain 0".into()));
        }
        for &x in &self.members {
            for &y in &self.members {
                if !self.contains(ring.sub(x, y)) {
                    return Err(Error::NotAnIdeal(format!(
                        "{} - {} escapes the set",
                        ring.label(x),
                        ring.label(y)
                    )));
                }
            }
            for r in ring.elements() {
                if !self.contains(ring.mul(r, x)) || !self.contains(ring.mul(x, r)) {
                    return Err(Error::NotAnIdeal(format!(
                        "not absorbing at {} · {}",
                        ring.label(r),
                        ring.label(x)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Two-sided ideal generated by `gens`: additive closure of all `r g s`.
    pub fn generated(ring: &Ring, gens: &[Elem]) -> Self {
        let mut mask = vec![false; ring.size()];
        mask[ring.zero().index()] = true;
        let mut products = Vec::new();
        for &g in gens {
            for r in ring.elements() {
                let rg = ring.mul(r, g);
                for s in ring.elements() {
                    products.push(ring.mul(rg, s));
                }
            }
        }
        products.sort_unstable();
        products.dedup();
        let mut frontier = vec![ring.zero()];
        while let Some(x) = frontier.pop() {
            for &p in &products {
                let y = ring.add(x, p);
                if !mask[y.index()] {
                    mask[y.index()] = true;
                    frontier.push(y);
                }
            }
        }
        Self::from_mask(mask)
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask.get(x.index()).copied().unwrap_or(false)
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }
}

pub(super) fn jacobson_radical_left(ring: &Ring) -> Ideal {
    radical_by(ring, |a, b| ring.mul(a, b))
}

fn radical_by(ring: &Ring, product: impl Fn(Elem, Elem) -> Elem) -> Ideal {
    let mask = ring
        .elements()
        .map(|b| {
            ring.elements()
                .all(|a| ring.is_unit(ring.sub(ring.one(), product(a, b))))
        })
        .collect();
    Ideal::from_mask(mask)
}

impl Ring {
    /// `{b : 1 - ab ∈ R* for all a}`.
    pub fn jacobson_radical(&self) -> Ideal {
        jacobson_radical_left(self)
    }

    /// `{b : 1 - ba ∈ R* for all a}`.
    pub fn jacobson_radical_right(&self) -> Ideal {
        radical_by(self, |a, b| self.mul(b, a))
    }

    /// `{a : aS = Sa = 0}`.
    pub fn annihilator(&self, set: &[Elem]) -> Vec<Elem> {
        self.elements()
            .filter(|&a| {
                set.iter()
                    .all(|&s| self.mul(a, s) == self.zero() && self.mul(s, a) == self.zero())
            })
            .collect()
    }

    /// Nonunits, i.e. `R \ R*`.
    pub fn nonunits(&self) -> Vec<Elem> {
        self.elements().filter(|&x| !self.is_unit(x)).collect()
    }
}

/// A homomorphism of unital rings given by its value table.
#[derive(Debug, Clone)]
pub struct RingHom {
    source: Arc<Ring>,
    target: Arc<Ring>,
    table: Vec<Elem>,
}

impl RingHom {
    /// Checks that the table preserves 0, 1, + and × exhaustively.
    pub fn new(source: Arc<Ring>, target: Arc<Ring>, table: Vec<Elem>) -> Result<Self> {
        if table.len() != source.size() {
            return Err(Error::InvalidProjection(format!(
                "table has {} entries for a ring of size {}",
                table.len(),
                source.size()
            )));
        }
        for &y in &table {
            target.check(y)?;
        }
        let hom = RingHom {
            source,
            target,
            table,
        };
        hom.verify().map_err(Error::InvalidProjection)?;
        Ok(hom)
    }

    pub fn source(&self) -> &Arc<Ring> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Ring> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x.index()]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn verify(&self) -> std::result::Result<(), String> {
        let (s, t) = (&self.source, &self.target);
        if self.apply(s.zero()) != t.zero() || self.apply(s.one()) != t.one() {
            return Err("0 or 1 not preserved".into());
        }
        for x in s.elements() {
            for y in s.elements() {
                if self.apply(s.add(x, y)) != t.add(self.apply(x), self.apply(y)) {
                    return Err(format!("+ not preserved at ({}, {})", s.label(x), s.label(y)));
                }
                if self.apply(s.mul(x, y)) != t.mul(self.apply(x), self.apply(y)) {
                    return Err(format!("× not preserved at ({}, {})", s.label(x), s.label(y)));
                }
            }
        }
        Ok(())
    }

    pub fn kernel(&self) -> Vec<Elem> {
        self.source
            .elements()
            .filter(|&x| self.apply(x) == self.target.zero())
            .collect()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        for &y in &self.table {
            hit[y.index()] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// Coset tables for `ring / ideal`. Cosets are represented by their
/// minimal-index member and numbered in increasing order of that member.
pub(super) fn quotient_tables(
    ring: &Ring,
    ideal: &Ideal,
    descriptor: RingDescriptor,
) -> Result<(Ring, Vec<Elem>)> {
    ideal.validate(ring)?;
    let reps: Vec<Elem> = ring
        .elements()
        .map(|x| {
            ideal
                .members()
                .iter()
                .map(|&i| ring.add(x, i))
                .min()
                .expect("ideal contains 0")
        })
        .collect();
    let mut distinct: Vec<Elem> = reps.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let mut class_of_rep = vec![usize::MAX; ring.size()];
    for (i, r) in distinct.iter().enumerate() {
        class_of_rep[r.index()] = i;
    }
    let proj: Vec<Elem> = reps
        .iter()
        .map(|r| Elem::from_index(class_of_rep[r.index()]))
        .collect();

    let n = distinct.len();
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for &x in &distinct {
        for &y in &distinct {
            add.push(proj[ring.add(x, y).index()]);
            mul.push(proj[ring.mul(x, y).index()]);
        }
    }
    let labels = distinct.iter().map(|&r| ring.label(r).to_string()).collect();
    let q = Ring::from_tables(
        descriptor,
        labels,
        add,
        mul,
        proj[ring.zero().index()],
        proj[ring.one().index()],
        None,
    );
    Ok((q, proj))
}

/// `R / I` together with the canonical epimorphism `a ↦ a + I`.
pub fn quotient_ring(ring: &Arc<Ring>, ideal: &Ideal) -> Result<(Arc<Ring>, RingHom)> {
    if ideal.contains(ring.one()) {
        return Err(Error::NotAnIdeal(
            "the ideal contains 1, quotient would be the zero ring".into(),
        ));
    }
    let spec = if *ideal == *ring.radical() {
        IdealSpec::Radical
    } else {
        IdealSpec::Generated(
            ideal
                .members()
                .iter()
                .map(|&x| ring.label(x).to_string())
                .collect(),
        )
    };
    let desc = RingDescriptor::Quotient(Box::new(ring.descriptor().clone()), spec);
    let (q, table) = quotient_tables(ring, ideal, desc)?;
    let q = Arc::new(q);
    let hom = RingHom {
        source: Arc::clone(ring),
        target: Arc::clone(&q),
        table,
    };
    Ok((q, hom))
}
