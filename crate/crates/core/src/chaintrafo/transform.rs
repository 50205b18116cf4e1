use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::KAlgebra;
use crate::error::{Error, Result};
use crate::projline::Matrix2;
use crate::ring::Elem;

/// Seed for the pseudo-random matrix sample used on larger algebras.
pub const DEFAULT_SEED: u64 = 0x5EED_2C0F_FEE5_0001;

/// `γ'` as an explicit partial table on `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformDescriptor {
    pub matrix: Matrix2,
    /// `D_γ`, sorted.
    pub domain: Vec<Elem>,
    /// Indexed by element; `None` outside `D_γ`.
    pub table: Vec<Option<Elem>>,
}

impl TransformDescriptor {
    pub fn is_total(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    pub fn get(&self, z: Elem) -> Option<Elem> {
        self.table.get(z.index()).copied().flatten()
    }

    /// The table of a total map.
    pub fn total_table(&self) -> Option<Vec<Elem>> {
        self.table.iter().copied().collect()
    }
}

fn check_invertible(alg: &KAlgebra, m: &Matrix2) -> Result<()> {
    let r = alg.ring();
    if !m.belongs_to(r) {
        return Err(Error::RingMismatch);
    }
    if !m.is_invertible(r) {
        return Err(Error::NotInvertible(m.display(r).to_string()));
    }
    Ok(())
}

// ι(z)^γ, then ι⁻¹ when the image lies in P(R)_∞.
fn conjugated(alg: &KAlgebra, m: &Matrix2, z: Elem) -> Option<Elem> {
    let line = alg.line();
    let p = line.apply_unchecked(alg.iota(z), m);
    alg.iota_inv(p)
}

/// Builds `γ'` from the action on `P(R)`.
pub fn transform(alg: &KAlgebra, m: &Matrix2) -> Result<TransformDescriptor> {
    check_invertible(alg, m)?;
    let table: Vec<Option<Elem>> = alg.ring().elements().map(|z| conjugated(alg, m, z)).collect();
    let domain = alg
        .ring()
        .elements()
        .filter(|z| table[z.index()].is_some())
        .collect();
    Ok(TransformDescriptor {
        matrix: *m,
        domain,
        table,
    })
}

/// `D_γ = {z : ι(z)^γ Δ ∞}`.
pub fn gamma_domain(alg: &KAlgebra, m: &Matrix2) -> Result<Vec<Elem>> {
    check_invertible(alg, m)?;
    let (line, r) = (alg.line(), alg.ring());
    let inf = line.infinity();
    Ok(r.elements()
        .filter(|&z| line.is_distant(line.apply_unchecked(alg.iota(z), m), inf))
        .collect())
}

/// `γ'(z)`.
pub fn gamma_apply(alg: &KAlgebra, m: &Matrix2, z: Elem) -> Result<Elem> {
    check_invertible(alg, m)?;
    alg.ring().check(z)?;
    conjugated(alg, m, z).ok_or_else(|| Error::OutsideDomain(alg.ring().label(z).to_string()))
}

/// `(zb + d)⁻¹(za + c)` whenever `zb + d` is a unit.
pub fn gamma_formula(alg: &KAlgebra, m: &Matrix2, z: Elem) -> Option<Elem> {
    let r = alg.ring();
    let den = r.add(r.mul(z, m.b), m.d);
    let num = r.add(r.mul(z, m.a), m.c);
    r.inverse(den).ok().map(|inv| r.mul(inv, num))
}

/// `a, d ∈ R*` and `b ∈ rad R`.
pub fn satisfies_total_condition(alg: &KAlgebra, m: &Matrix2) -> bool {
    let r = alg.ring();
    m.belongs_to(r) && r.is_unit(m.a) && r.is_unit(m.d) && r.in_radical(m.b)
}

/// `diag(-1, d) · [[1, -b], [0, 1]] · [[-a + bd⁻¹c, 0], [d⁻¹c, 1]]` for a
/// matrix meeting the total condition; `None` otherwise.
pub fn factorization(alg: &KAlgebra, m: &Matrix2) -> Option<[Matrix2; 3]> {
    if !satisfies_total_condition(alg, m) {
        return None;
    }
    let r = alg.ring();
    let (zero, one) = (r.zero(), r.one());
    let dinv = r.inverse(m.d).ok()?;
    let dinv_c = r.mul(dinv, m.c);
    let schur = r.sub(m.a, r.mul(m.b, dinv_c));
    debug_assert!(r.is_unit(schur));
    Some([
        Matrix2::new(r.neg(one), zero, zero, m.d),
        Matrix2::new(one, r.neg(m.b), zero, one),
        Matrix2::new(r.neg(schur), zero, dinv_c, one),
    ])
}

/// True iff `z ↦ f(z) - f(0)` is `K`-linear.
pub fn is_affine_table(alg: &KAlgebra, f: &[Elem]) -> bool {
    let r = alg.ring();
    let f0 = f[r.zero().index()];
    let g = |z: Elem| r.sub(f[z.index()], f0);
    r.elements()
        .all(|x| r.elements().all(|y| g(r.add(x, y)) == r.add(g(x), g(y))))
        && alg
            .field()
            .elements()
            .all(|k| r.elements().all(|x| g(alg.scale(k, x)) == alg.scale(k, g(x))))
}

pub fn is_affine_map(alg: &KAlgebra, f: impl Fn(Elem) -> Elem) -> bool {
    let table: Vec<Elem> = alg.ring().elements().map(f).collect();
    is_affine_table(alg, &table)
}

/// `(1 + zb + ⋯ + (zb)^s) z`.
pub fn beta_polynomial(alg: &KAlgebra, b: Elem, z: Elem) -> Result<Elem> {
    let r = alg.ring();
    r.check(b)?;
    r.check(z)?;
    if !r.in_radical(b) {
        return Err(Error::NotInRadical(r.label(b).to_string()));
    }
    let zb = r.mul(z, b);
    let mut sum = r.zero();
    let mut power = r.one();
    for _ in 0..=alg.rad_dim() {
        sum = r.add(sum, power);
        power = r.mul(power, zb);
    }
    debug_assert_eq!(power, r.zero());
    Ok(r.mul(sum, z))
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SweepResult {
    pub checked: usize,
    pub invertible: usize,
    pub total: usize,
    /// Matrices where `invertible ∧ D_γ = R` and the entry condition disagree.
    pub mismatches: Vec<Matrix2>,
}

/// Checks `(invertible ∧ D_γ = R) ⟺ (a, d ∈ R*, b ∈ rad R)` on every matrix
/// given. The domain is decided geometrically via `ι` and `Δ`.
pub fn totality_sweep(alg: &KAlgebra, matrices: &[Matrix2]) -> SweepResult {
    // force lazy state before fanning out
    let graph = alg.graph();
    let inf = alg.line().infinity();
    let check = |m: &Matrix2| -> (bool, bool, bool) {
        if !m.is_invertible(alg.ring()) {
            return (false, false, satisfies_total_condition(alg, m));
        }
        let line = alg.line();
        let total = alg
            .ring()
            .elements()
            .all(|z| graph.is_distant(line.apply_unchecked(alg.iota(z), m), inf));
        (true, total, total != satisfies_total_condition(alg, m))
    };

    #[cfg(feature = "parallel")]
    let rows: Vec<(bool, bool, bool)> = {
        use rayon::prelude::*;
        matrices.par_iter().map(check).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<(bool, bool, bool)> = matrices.iter().map(check).collect();

    let mut res = SweepResult {
        checked: matrices.len(),
        ..SweepResult::default()
    };
    for (m, (inv, total, bad)) in matrices.iter().zip(rows) {
        res.invertible += inv as usize;
        res.total += total as usize;
        if bad {
            res.mismatches.push(*m);
        }
    }
    res
}

/// All `|R|⁴` matrices over the ring of `alg`.
pub fn all_matrices(alg: &KAlgebra) -> Vec<Matrix2> {
    let els: Vec<Elem> = alg.ring().elements().collect();
    let mut out = Vec::with_capacity(els.len().pow(4));
    for &a in &els {
        for &b in &els {
            for &c in &els {
                for &d in &els {
                    out.push(Matrix2::new(a, b, c, d));
                }
            }
        }
    }
    out
}

/// `count` matrices with independent uniform entries.
pub fn sample_matrices(alg: &KAlgebra, count: usize, seed: u64) -> Vec<Matrix2> {
    let n = alg.ring().size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = || Elem::from_index(rng.gen_range(0..n));
    (0..count).map(|_| Matrix2::new(e(), e(), e(), e())).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct AffineSummary {
    pub total_matrices: usize,
    pub affine: usize,
    /// Total matrices with `b ≠ 0` inducing an affine map.
    pub affine_with_nonzero_b: Vec<Matrix2>,
    /// Total matrices with `b = 0` inducing a non-affine map.
    pub nonaffine_with_zero_b: Vec<Matrix2>,
    /// Total matrices whose `γ'` is not a bijection of `R`.
    pub non_bijective: Vec<Matrix2>,
}

/// Classifies every matrix meeting the total condition by whether `γ'` is
/// affine, using the full function table.
pub fn affine_classification(alg: &KAlgebra) -> AffineSummary {
    let r = alg.ring();
    let units: Vec<Elem> = r.units().collect();
    let rad = r.radical().members();
    let mut ms = Vec::new();
    for &a in &units {
        for &b in rad {
            for c in r.elements() {
                for &d in &units {
                    ms.push(Matrix2::new(a, b, c, d));
                }
            }
        }
    }
    let classify = |m: &Matrix2| -> (bool, bool) {
        let f: Vec<Elem> = r
            .elements()
            .map(|z| gamma_formula(alg, m, z).expect("total condition gives a total map"))
            .collect();
        let mut seen = vec![false; r.size()];
        for &y in &f {
            seen[y.index()] = true;
        }
        (is_affine_table(alg, &f), seen.into_iter().all(|s| s))
    };

    #[cfg(feature = "parallel")]
    let rows: Vec<(bool, bool)> = {
        use rayon::prelude::*;
        ms.par_iter().map(classify).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<(bool, bool)> = ms.iter().map(classify).collect();

    let mut s = AffineSummary {
        total_matrices: ms.len(),
        affine: 0,
        affine_with_nonzero_b: Vec::new(),
        nonaffine_with_zero_b: Vec::new(),
        non_bijective: Vec::new(),
    };
    for (m, (affine, bijective)) in ms.iter().zip(rows) {
        s.affine += affine as usize;
        let b_zero = m.b == r.zero();
        if affine && !b_zero {
            s.affine_with_nonzero_b.push(*m);
        }
        if !affine && b_zero {
            s.nonaffine_with_zero_b.push(*m);
        }
        if !bijective {
            s.non_bijective.push(*m);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaintrafo::tests::alg;

    fn el(a: &KAlgebra, s: &str) -> Elem {
        a.ring().parse_element(s).unwrap()
    }

    fn mat(a: &KAlgebra, s: &str) -> Matrix2 {
        Matrix2::parse(a.ring(), s).unwrap()
    }

    #[test]
    fn domains() {
        let a = alg("dual(gf(3))@gf(3)");
        let r = a.ring();
        let id = Matrix2::identity(r);
        assert_eq!(gamma_domain(&a, &id).unwrap().len(), 9);
        let swap = mat(&a, "0,1,1,0");
        let units: Vec<Elem> = r.units().collect();
        assert_eq!(gamma_domain(&a, &swap).unwrap(), units);
        assert_eq!(transform(&a, &swap).unwrap().domain, units);
        assert!(matches!(
            gamma_domain(&a, &mat(&a, "e,0,0,1")),
            Err(Error::NotInvertible(_))
        ));
        let m = mat(&a, "2,e,1+e,1+2e");
        assert!(satisfies_total_condition(&a, &m));
        assert_eq!(gamma_domain(&a, &m).unwrap().len(), 9);
    }

    #[test]
    fn apply_examples() {
        let a = alg("dual(gf(3))@gf(3)");
        let r = a.ring();
        for c in r.elements() {
            let tau = Matrix2::new(r.one(), r.zero(), c, r.one());
            for z in r.elements() {
                assert_eq!(gamma_apply(&a, &tau, z).unwrap(), r.add(z, c));
            }
        }
        let b = el(&a, "e");
        let beta = Matrix2::new(r.one(), r.neg(b), r.zero(), r.one());
        for z in r.elements() {
            let expected = r.mul(r.inverse(r.sub(r.one(), r.mul(z, b))).unwrap(), z);
            assert_eq!(gamma_apply(&a, &beta, z).unwrap(), expected);
            assert_eq!(gamma_apply(&a, &Matrix2::identity(r), z).unwrap(), z);
        }
        let swap = mat(&a, "0,1,1,0");
        assert!(matches!(gamma_apply(&a, &swap, el(&a, "e")), Err(Error::OutsideDomain(_))));
        assert_eq!(gamma_apply(&a, &swap, el(&a, "2")).unwrap(), el(&a, "2"));
    }

    #[test]
    fn formula_agrees_with_geometric_action() {
        for d in ["dual(gf(3))@gf(3)", "upper2(gf(2))@gf(2)", "mat2(gf(2))@gf(2)"] {
            let a = alg(d);
            for m in sample_matrices(&a, 400, 7) {
                let Ok(t) = transform(&a, &m) else { continue };
                for z in a.ring().elements() {
                    assert_eq!(t.get(z), gamma_formula(&a, &m, z), "{d}");
                }
            }
        }
    }

    #[test]
    fn total_condition_examples() {
        let a = alg("dual(gf(2))@gf(2)");
        let r = a.ring();
        for c in r.elements() {
            assert!(satisfies_total_condition(&a, &Matrix2::new(r.one(), r.zero(), c, r.one())));
        }
        assert!(!satisfies_total_condition(&a, &mat(&a, "0,1,1,0")));
    }

    #[test]
    fn full_sweeps() {
        for (d, n) in [("dual(gf(2))@gf(2)", 256), ("dual(gf(3))@gf(3)", 6561)] {
            let a = alg(d);
            let res = totality_sweep(&a, &all_matrices(&a));
            assert_eq!(res.checked, n);
            assert!(res.mismatches.is_empty(), "{d}: {:?}", res.mismatches);
            // |GL₂| and the count |R*|²·|rad|·|R| of total-condition matrices
            let r = a.ring();
            assert_eq!(res.total, r.unit_count().pow(2) * r.radical().len() * r.size());
        }
        let a = alg("upper2(gf(3))@gf(3)");
        let res = totality_sweep(&a, &sample_matrices(&a, 2000, DEFAULT_SEED));
        assert!(res.mismatches.is_empty());
    }

    #[test]
    fn factorizations_multiply_back() {
        for d in ["dual(gf(3))@gf(3)", "upper2(gf(2))@gf(2)"] {
            let a = alg(d);
            let r = a.ring();
            let mut n = 0;
            for m in all_matrices(&a) {
                if let Some([x, y, z]) = factorization(&a, &m) {
                    assert_eq!(x.mul(r, &y).mul(r, &z), m);
                    n += 1;
                }
            }
            assert!(n > 0);
        }
    }

    #[test]
    fn affine_iff_b_zero_over_gf3() {
        let a = alg("dual(gf(3))@gf(3)");
        let s = affine_classification(&a);
        assert_eq!(s.total_matrices, 6 * 6 * 3 * 9);
        assert!(s.affine_with_nonzero_b.is_empty());
        assert!(s.nonaffine_with_zero_b.is_empty());
        assert!(s.non_bijective.is_empty());
        assert_eq!(s.affine, 6 * 6 * 9);

        let r = a.ring();
        let b = el(&a, "e");
        let beta = Matrix2::new(r.one(), r.neg(b), r.zero(), r.one());
        let t = transform(&a, &beta).unwrap().total_table().unwrap();
        assert!(!is_affine_table(&a, &t));
        assert!(is_affine_map(&a, |z| r.add(z, el(&a, "1+e"))));
    }

    #[test]
    fn delta_over_dual_gf2() {
        let a = alg("dual(gf(2))@gf(2)");
        let (r, line) = (a.ring(), a.line());
        let delta = mat(&a, "1,e,0,1+e");
        let perm = line.permutation(&delta).unwrap();
        let inf = line.infinity();
        let p = line.point_of((r.one(), el(&a, "e"))).unwrap();
        assert_eq!((perm[inf], perm[p]), (p, inf));
        assert_eq!((0..6).filter(|&x| perm[x] == x).count(), 4);
        let t = transform(&a, &delta).unwrap().total_table().unwrap();
        assert!(r.elements().all(|z| t[z.index()] == z));
        assert!(is_affine_table(&a, &t));
        let s = affine_classification(&a);
        assert!(s.affine_with_nonzero_b.contains(&delta));
    }

    #[test]
    fn polynomial_form_matches_fraction() {
        for d in ["dual(gf(3))@gf(3)", "trunc(gf(3),3)@gf(3)", "upper2(gf(3))@gf(3)", "trunc(gf(2),4)@gf(2)"] {
            let a = alg(d);
            let r = a.ring();
            for &b in r.radical().members() {
                let beta = Matrix2::new(r.one(), r.neg(b), r.zero(), r.one());
                for z in r.elements() {
                    assert_eq!(
                        beta_polynomial(&a, b, z).unwrap(),
                        gamma_apply(&a, &beta, z).unwrap(),
                        "{d}"
                    );
                }
            }
        }
        let a = alg("dual(gf(3))@gf(3)");
        assert_eq!(beta_polynomial(&a, el(&a, "e"), el(&a, "1")).unwrap(), el(&a, "1+e"));
        assert_eq!(beta_polynomial(&a, el(&a, "0"), el(&a, "2+e")).unwrap(), el(&a, "2+e"));
        assert!(matches!(beta_polynomial(&a, el(&a, "1"), el(&a, "1")), Err(Error::NotInRadical(_))));
        let t = alg("trunc(gf(3),3)@gf(3)");
        assert_eq!(beta_polynomial(&t, el(&t, "x"), el(&t, "1")).unwrap(), el(&t, "1+x+x^2"));
    }

    #[test]
    fn seeded_sample_is_reproducible() {
        let a = alg("upper2(gf(3))@gf(3)");
        assert_eq!(sample_matrices(&a, 50, 1), sample_matrices(&a, 50, 1));
        assert_ne!(sample_matrices(&a, 50, 1), sample_matrices(&a, 50, 2));
    }
}
