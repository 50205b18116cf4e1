//! Finite unital rings with fully materialized operation tables.
//!
//! Every ring in the catalog is stored as dense element indices `0..size`
//! together with its addition and multiplication tables. All derived data
//! (negation, unit group, inverses, Jacobson radical) is computed by
//! exhaustive search.

mod catalog;
mod descriptor;
mod ideal;

pub use catalog::{build_ring, build_ring_with, catalog, BuildOptions, DEFAULT_MAX_SIZE};
pub use descriptor::{split_top_level, IdealSpec, RingDescriptor};
pub use ideal::{quotient_ring, Ideal, RingHom};

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of a finite ring, identified by its dense index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Elem(u16);

impl Elem {
    #[inline]
    pub const fn from_index(index: usize) -> Self {
        Elem(index as u16)
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// K-algebra structure recorded by the catalog constructions that are
/// built from a field by structure constants (and products thereof).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraStructure {
    pub field: RingDescriptor,
    /// Image of every field element, indexed by field element index.
    pub embedding: Vec<Elem>,
    pub basis: Vec<Elem>,
}

#[derive(Clone)]
pub struct Ring {
    size: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    one: Elem,
    inverse: Vec<Option<Elem>>,
    labels: Vec<String>,
    descriptor: RingDescriptor,
    characteristic: usize,
    structure: Option<AlgebraStructure>,
    radical: OnceLock<Ideal>,
}

impl Ring {
    /// Assembles a ring from raw tables. Negation, characteristic and the
    /// unit group are derived here; the ring axioms themselves are not
    /// checked (see [`Ring::check_axioms`]).
    pub(crate) fn from_tables(
        descriptor: RingDescriptor,
        labels: Vec<String>,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        zero: Elem,
        one: Elem,
        structure: Option<AlgebraStructure>,
    ) -> Self {
        let size = labels.len();
        assert_eq!(add.len(), size * size);
        assert_eq!(mul.len(), size * size);

        let neg = (0..size)
            .map(|x| {
                (0..size)
                    .map(Elem::from_index)
                    .find(|&y| add[x * size + y.index()] == zero)
                    .expect("additive inverse exists")
            })
            .collect();

        // Two-sided inverse search.
        let inverse = (0..size)
            .map(|x| {
                (0..size).map(Elem::from_index).find(|&y| {
                    mul[x * size + y.index()] == one && mul[y.index() * size + x] == one
                })
            })
            .collect();

        let mut characteristic = 1;
        let mut acc = one;
        while acc != zero {
            acc = add[acc.index() * size + one.index()];
            characteristic += 1;
        }

        Ring {
            size,
            add,
            mul,
            neg,
            zero,
            one,
            inverse,
            labels,
            descriptor,
            characteristic,
            structure,
            radical: OnceLock::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.descriptor
    }

    pub fn structure(&self) -> Option<&AlgebraStructure> {
        self.structure.as_ref()
    }

    pub fn characteristic(&self) -> usize {
        self.characteristic
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.size).map(Elem::from_index)
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        x.index() < self.size
    }

    /// Rejects indices that cannot belong to this ring.
    pub fn check(&self, x: Elem) -> Result<Elem> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(Error::ForeignElement {
                index: x.index(),
                size: self.size,
            })
        }
    }

    pub fn element(&self, index: usize) -> Result<Elem> {
        if index < self.size {
            Ok(Elem::from_index(index))
        } else {
            Err(Error::ForeignElement {
                index,
                size: self.size,
            })
        }
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add[x.index() * self.size + y.index()]
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x.index() * self.size + y.index()]
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x.index()]
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn pow(&self, x: Elem, exp: u32) -> Elem {
        (0..exp).fold(self.one, |acc, _| self.mul(acc, x))
    }

    /// `n · 1`, reduced modulo the characteristic.
    pub fn from_int(&self, n: usize) -> Elem {
        (0..n % self.characteristic).fold(self.zero, |acc, _| self.add(acc, self.one))
    }

    #[inline]
    pub fn is_unit(&self, x: Elem) -> bool {
        self.inverse[x.index()].is_some()
    }

    pub fn units(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(|&x| self.is_unit(x))
    }

    pub fn unit_count(&self) -> usize {
        self.inverse.iter().filter(|i| i.is_some()).count()
    }

    /// Checked unit test that rejects foreign indices.
    pub fn try_is_unit(&self, x: Elem) -> Result<bool> {
        self.check(x).map(|x| self.is_unit(x))
    }

    pub fn inverse(&self, x: Elem) -> Result<Elem> {
        self.check(x)?;
        self.inverse[x.index()].ok_or_else(|| Error::NotAUnit(self.label(x).to_string()))
    }

    pub fn is_field(&self) -> bool {
        self.unit_count() == self.size - 1
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x.index()]
    }

    /// Resolves an element token: an exact label (whitespace ignored), `#n`
    /// for a raw index, or a bare integer index when no label matches.
    pub fn parse_element(&self, token: &str) -> Result<Elem> {
        let t: String = token.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(i) = self.labels.iter().position(|l| *l == t) {
            return Ok(Elem::from_index(i));
        }
        let raw = t.strip_prefix('#').unwrap_or(&t);
        match raw.parse::<usize>() {
            Ok(i) if i < self.size => Ok(Elem::from_index(i)),
            Ok(i) => Err(Error::ForeignElement {
                index: i,
                size: self.size,
            }),
            Err(_) => Err(Error::UnknownElement(token.to_string())),
        }
    }

    pub fn format_set<'a>(&self, xs: impl IntoIterator<Item = &'a Elem>) -> String {
        let parts: Vec<&str> = xs.into_iter().map(|&x| self.label(x)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// The Jacobson radical `{b : 1 - ab ∈ R* for all a}`; computed once.
    pub fn radical(&self) -> &Ideal {
        self.radical.get_or_init(|| ideal::jacobson_radical_left(self))
    }

    pub fn in_radical(&self, x: Elem) -> bool {
        self.radical().contains(x)
    }

    /// True iff the nonunits are closed under addition, which for a finite
    /// ring is the same as `R \ R* = rad R`.
    pub fn is_local(&self) -> bool {
        let nonunits: Vec<Elem> = self.elements().filter(|&x| !self.is_unit(x)).collect();
        nonunits
            .iter()
            .all(|&x| nonunits.iter().all(|&y| !self.is_unit(self.add(x, y))))
    }

    /// Minimal `e ≥ 1` with `y^e = 0` for every radical element.
    pub fn nil_exponent(&self) -> u32 {
        let rad = self.radical();
        if rad.len() == 1 {
            return 1;
        }
        rad.members()
            .iter()
            .map(|&y| {
                let mut e = 1;
                let mut acc = y;
                while acc != self.zero {
                    acc = self.mul(acc, y);
                    e += 1;
                }
                e
            })
            .max()
            .unwrap_or(1)
    }

    /// Exhaustive check of the unital ring axioms. Returns a description of
    /// the first violation found.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        if self.zero == self.one {
            return Err("1 = 0".into());
        }
        let name = |x: Elem| self.label(x).to_string();
        for x in self.elements() {
            if self.add(x, self.zero) != x || self.add(self.zero, x) != x {
                return Err(format!("0 is not additive identity at {}", name(x)));
            }
            if self.add(x, self.neg(x)) != self.zero {
                return Err(format!("no additive inverse for {}", name(x)));
            }
            if self.mul(x, self.one) != x || self.mul(self.one, x) != x {
                return Err(format!("1 is not multiplicative identity at {}", name(x)));
            }
            for y in self.elements() {
                if self.add(x, y) != self.add(y, x) {
                    return Err(format!("addition not commutative at ({}, {})", name(x), name(y)));
                }
                for z in self.elements() {
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        return Err(format!("addition not associative at {}", name(x)));
                    }
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                        return Err(format!(
                            "multiplication not associative at ({}, {}, {})",
                            name(x),
                            name(y),
                            name(z)
                        ));
                    }
                    if self.mul(x, self.add(y, z)) != self.add(self.mul(x, y), self.mul(x, z))
                        || self.mul(self.add(y, z), x) != self.add(self.mul(y, x), self.mul(z, x))
                    {
                        return Err(format!(
                            "distributivity fails at ({}, {}, {})",
                            name(x),
                            name(y),
                            name(z)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("descriptor", &self.descriptor.to_string())
            .field("size", &self.size)
            .finish_non_exhaustive()
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.add == other.add
            && self.mul == other.mul
            && self.zero == other.zero
            && self.one == other.one
    }
}

impl Eq for Ring {}
