use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring, RingHom};

/// A 2×2 matrix over a ring, row-major: rows `(a, b)` and `(c, d)`.
/// Points are row vectors and matrices act on the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matrix2 {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub d: Elem,
}

impl Matrix2 {
    pub const fn new(a: Elem, b: Elem, c: Elem, d: Elem) -> Self {
        Matrix2 { a, b, c, d }
    }

    /// Builds a matrix after checking every entry belongs to `ring`.
    pub fn checked(ring: &Ring, a: Elem, b: Elem, c: Elem, d: Elem) -> Result<Self> {
        Ok(Matrix2::new(ring.check(a)?, ring.check(b)?, ring.check(c)?, ring.check(d)?))
    }

    /// Parses `a,b,c,d` where each entry is an element token of `ring`.
    pub fn parse(ring: &Ring, s: &str) -> Result<Self> {
        let parts = crate::ring::split_top_level(s);
        if parts.len() != 4 {
            return Err(Error::UnknownElement(format!(
                "expected four comma-separated entries, got {:?}",
                s
            )));
        }
        let e = parts
            .iter()
            .map(|p| ring.parse_element(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix2::new(e[0], e[1], e[2], e[3]))
    }

    pub fn identity(ring: &Ring) -> Self {
        Matrix2::new(ring.one(), ring.zero(), ring.zero(), ring.one())
    }

    pub fn entries(&self) -> [Elem; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn belongs_to(&self, ring: &Ring) -> bool {
        self.entries().iter().all(|&x| ring.contains(x))
    }

    pub fn mul(&self, ring: &Ring, rhs: &Matrix2) -> Matrix2 {
        let (x, y) = (self, rhs);
        Matrix2::new(
            ring.add(ring.mul(x.a, y.a), ring.mul(x.b, y.c)),
            ring.add(ring.mul(x.a, y.b), ring.mul(x.b, y.d)),
            ring.add(ring.mul(x.c, y.a), ring.mul(x.d, y.c)),
            ring.add(ring.mul(x.c, y.b), ring.mul(x.d, y.d)),
        )
    }

    /// Row vector times matrix: `(x, y) ↦ (xa + yc, xb + yd)`.
    #[inline]
    pub fn act(&self, ring: &Ring, (x, y): (Elem, Elem)) -> (Elem, Elem) {
        (
            ring.add(ring.mul(x, self.a), ring.mul(y, self.c)),
            ring.add(ring.mul(x, self.b), ring.mul(y, self.d)),
        )
    }

    fn preimage(&self, ring: &Ring, target: (Elem, Elem)) -> Option<(Elem, Elem)> {
        ring.elements()
            .flat_map(|x| ring.elements().map(move |y| (x, y)))
            .find(|&v| self.act(ring, v) == target)
    }

    /// The right-action map `R² → R²` is surjective, hence bijective since
    /// `R²` is finite. Surjectivity is decided by finding preimages of the
    /// two standard basis rows.
    pub fn is_invertible(&self, ring: &Ring) -> bool {
        match self.pivot_inverse(ring) {
            Some(inv) => inv.is_some(),
            None => self.left_inverse(ring).is_some(),
        }
    }

    /// Inverse through a unit entry, or `None` when no entry is a unit.
    /// With `a` a unit, `M = L·diag(a, s)·U` for unipotent triangular `L`,
    /// `U` and `s = d - c a⁻¹ b`; the other cases reduce to this one by
    /// swapping rows and/or columns.
    pub(crate) fn pivot_inverse(&self, ring: &Ring) -> Option<Option<Matrix2>> {
        let swap = Matrix2::new(ring.zero(), ring.one(), ring.one(), ring.zero());
        let unit = |x: Elem| ring.is_unit(x);
        if unit(self.a) {
            Some(self.inverse_at_a(ring))
        } else if unit(self.d) {
            let m = swap.mul(ring, self).mul(ring, &swap);
            Some(m.inverse_at_a(ring).map(|x| swap.mul(ring, &x).mul(ring, &swap)))
        } else if unit(self.b) {
            let m = self.mul(ring, &swap);
            Some(m.inverse_at_a(ring).map(|x| swap.mul(ring, &x)))
        } else if unit(self.c) {
            let m = swap.mul(ring, self);
            Some(m.inverse_at_a(ring).map(|x| x.mul(ring, &swap)))
        } else {
            None
        }
    }

    fn inverse_at_a(&self, ring: &Ring) -> Option<Matrix2> {
        let (zero, one) = (ring.zero(), ring.one());
        let ai = ring.inverse(self.a).ok()?;
        let s = ring.sub(self.d, ring.mul(ring.mul(self.c, ai), self.b));
        let si = ring.inverse(s).ok()?;
        let u = Matrix2::new(one, ring.neg(ring.mul(ai, self.b)), zero, one);
        let l = Matrix2::new(one, zero, ring.neg(ring.mul(self.c, ai)), one);
        Some(u.mul(ring, &Matrix2::new(ai, zero, zero, si)).mul(ring, &l))
    }

    fn left_inverse(&self, ring: &Ring) -> Option<Matrix2> {
        let (p, q) = self.preimage(ring, (ring.one(), ring.zero()))?;
        let (r, s) = self.preimage(ring, (ring.zero(), ring.one()))?;
        Some(Matrix2::new(p, q, r, s))
    }

    /// The inverse; for finite rings a left inverse is two-sided.
    pub fn inverse(&self, ring: &Ring) -> Result<Matrix2> {
        if !self.belongs_to(ring) {
            return Err(Error::RingMismatch);
        }
        let inv = match self.pivot_inverse(ring) {
            Some(inv) => inv,
            None => self.left_inverse(ring),
        };
        inv.ok_or_else(|| Error::NotInvertible(self.display(ring).to_string()))
    }

    /// Applies a ring homomorphism entrywise.
    pub fn map(&self, hom: &RingHom) -> Matrix2 {
        Matrix2::new(hom.apply(self.a), hom.apply(self.b), hom.apply(self.c), hom.apply(self.d))
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> MatrixDisplay<'a> {
        MatrixDisplay { m: self, ring }
    }
}

pub struct MatrixDisplay<'a> {
    m: &'a Matrix2,
    ring: &'a Ring,
}

impl fmt::Display for MatrixDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = |x| self.ring.label(x);
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            l(self.m.a),
            l(self.m.b),
            l(self.m.c),
            l(self.m.d)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_ring;

    fn ring(desc: &str) -> Ring {
        build_ring(&desc.parse().unwrap()).unwrap()
    }

    /// Oracle: the induced map on R² hits every vector exactly once.
    fn is_bijective(ring: &Ring, m: &Matrix2) -> bool {
        let n = ring.size();
        let mut seen = vec![false; n * n];
        for x in ring.elements() {
            for y in ring.elements() {
                let (u, v) = m.act(ring, (x, y));
                let k = u.index() * n + v.index();
                if seen[k] {
                    return false;
                }
                seen[k] = true;
            }
        }
        true
    }

    #[test]
    fn identity_and_unitriangular_inverses() {
        let r = ring("dual(gf(3))");
        let id = Matrix2::identity(&r);
        assert!(id.is_invertible(&r));
        assert_eq!(id.inverse(&r).unwrap(), id);
        for b in r.elements() {
            let m = Matrix2::new(r.one(), b, r.zero(), r.one());
            let expected = Matrix2::new(r.one(), r.neg(b), r.zero(), r.one());
            assert_eq!(m.inverse(&r).unwrap(), expected);
        }
    }

    #[test]
    fn radical_criterion_matrices_are_invertible() {
        let r = ring("dual(gf(3))");
        let e = r.parse_element("e").unwrap();
        for a in r.elements() {
            assert!(Matrix2::new(r.one(), e, a, r.one()).is_invertible(&r));
        }
        let d2 = ring("dual(gf(2))");
        let e2 = d2.parse_element("e").unwrap();
        let m = Matrix2::new(e2, d2.zero(), d2.zero(), d2.one());
        assert!(!m.is_invertible(&d2));
        assert!(matches!(m.inverse(&d2), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn factorization_of_the_radical_criterion_matrix() {
        // [[1,b],[0,1]] · [[1-ba,0],[a,1]] = [[1,b],[a,1]] for all a, b
        let r = ring("upper2(gf(2))");
        for a in r.elements() {
            for b in r.elements() {
                let left = Matrix2::new(r.one(), b, r.zero(), r.one());
                let right = Matrix2::new(r.sub(r.one(), r.mul(b, a)), r.zero(), a, r.one());
                assert_eq!(left.mul(&r, &right), Matrix2::new(r.one(), b, a, r.one()));
            }
        }
    }

    #[test]
    fn invertibility_matches_bijectivity_exhaustively() {
        for d in ["dual(gf(2))", "zmod(4)", "product(gf(2),gf(2))", "upper2(gf(2))", "mat2(gf(2))"] {
            let r = ring(d);
            let els: Vec<Elem> = r.elements().collect();
            for &a in &els {
                for &b in &els {
                    for &c in &els {
                        for &dd in &els {
                            let m = Matrix2::new(a, b, c, dd);
                            assert_eq!(m.is_invertible(&r), is_bijective(&r, &m), "{d}");
                            if let Ok(inv) = m.inverse(&r) {
                                let id = Matrix2::identity(&r);
                                assert_eq!(m.mul(&r, &inv), id);
                                assert_eq!(inv.mul(&r, &m), id);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn noncommutative_ring_invertibility() {
        let r = ring("mat2(gf(2))");
        let e11 = r.parse_element("e11").unwrap();
        let e22 = r.parse_element("e22").unwrap();
        // diag(e11, e11) is singular; [[e11, e22], [e22, e11]] is invertible
        assert!(!Matrix2::new(e11, r.zero(), r.zero(), e11).is_invertible(&r));
        let m = Matrix2::new(e11, e22, e22, e11);
        assert!(m.is_invertible(&r));
        assert!(is_bijective(&r, &m));
    }

    #[test]
    fn foreign_entries_are_rejected() {
        let r = ring("zmod(4)");
        let bad = Elem::from_index(7);
        assert!(Matrix2::checked(&r, r.one(), bad, r.zero(), r.one()).is_err());
        assert!(matches!(
            Matrix2::new(bad, bad, bad, bad).inverse(&r),
            Err(Error::RingMismatch)
        ));
        assert!(Matrix2::parse(&r, "1,0,0").is_err());
        assert_eq!(Matrix2::parse(&r, "1, 0, 0, 1").unwrap(), Matrix2::identity(&r));
    }
}
