//! `R` as an algebra over a central subfield `K`: the embedding
//! `ι: z ↦ R(z, 1)`, affine traces, regular lines, the partial maps `γ'`
//! induced by matrices, and the groups `B`, `T`, `N`.

mod groups;
mod transform;

pub use groups::{
    b_acts_regularly, commutes, group_b, group_n, group_t, n_fixes_parallel_class, tau_fixes,
    tau_fixes_geometric, t_prime_is_translations, GroupKind, MatrixGroup,
};
pub use transform::{
    affine_classification, all_matrices, beta_polynomial, factorization, gamma_apply, gamma_domain,
    gamma_formula, is_affine_map, is_affine_table, sample_matrices, satisfies_total_condition,
    totality_sweep, transform, AffineSummary, SweepResult, TransformDescriptor, DEFAULT_SEED,
};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::projline::{DistantGraph, ProjectiveLine};
use crate::ring::{build_ring_with, BuildOptions, Elem, Ring, RingDescriptor, RingHom};

/// `R@K`: a ring descriptor and the descriptor of a catalog field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraDescriptor {
    pub ring: RingDescriptor,
    pub field: RingDescriptor,
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.ring, self.field)
    }
}

impl FromStr for AlgebraDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let Some(at) = s.rfind('@') else {
            return Err(Error::Parse {
                pos: s.len(),
                msg: "expected `ring@field`".into(),
            });
        };
        let ring = s[..at].parse()?;
        let field = s[at + 1..].parse().map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + at + 1, msg },
            other => other,
        })?;
        Ok(AlgebraDescriptor { ring, field })
    }
}

/// A finite ring together with a central subfield `K ≠ R`, a `K`-basis and
/// the coordinate table of every element.
pub struct KAlgebra {
    ring: Arc<Ring>,
    field: Arc<Ring>,
    embedding: RingHom,
    basis: Vec<Elem>,
    // ring element -> K-coordinates over `basis`
    coords: Vec<Vec<Elem>>,
    rad_dim: usize,
    nil_exp: u32,
    line: OnceLock<ProjectiveLine>,
    graph: OnceLock<DistantGraph>,
    // point -> ι-preimage
    iota_inv: OnceLock<Vec<Option<Elem>>>,
}

impl fmt::Debug for KAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KAlgebra")
            .field("ring", &self.ring.descriptor().to_string())
            .field("field", &self.field.descriptor().to_string())
            .field("dim", &self.dim())
            .field("rad_dim", &self.rad_dim)
            .finish()
    }
}

/// Every `K`-combination of `basis`, in little-endian coordinate order.
fn span_table(ring: &Ring, field: &Ring, emb: &RingHom, basis: &[Elem]) -> Vec<(Vec<Elem>, Elem)> {
    let q = field.size();
    let m = basis.len();
    let total = q.checked_pow(m as u32).unwrap_or(usize::MAX);
    (0..total)
        .map(|mut code| {
            let mut cs = Vec::with_capacity(m);
            let mut z = ring.zero();
            for &b in basis {
                let k = Elem::from_index(code % q);
                code /= q;
                cs.push(k);
                z = ring.add(z, ring.mul(emb.apply(k), b));
            }
            (cs, z)
        })
        .collect()
}

pub fn make_algebra(
    ring: Arc<Ring>,
    field: Arc<Ring>,
    embedding: RingHom,
    basis: Vec<Elem>,
) -> Result<KAlgebra> {
    let bad = |msg: String| Err(Error::InvalidAlgebra(msg));
    if !field.is_field() {
        return Err(Error::NotAField(field.descriptor().to_string()));
    }
    if **embedding.source() != *field || **embedding.target() != *ring {
        return bad("embedding does not map the field into the ring".into());
    }
    if embedding.kernel().len() != 1 {
        return bad("embedding is not injective".into());
    }
    if field.size() == ring.size() {
        return bad("K = R; the field must be a proper subring".into());
    }
    for k in field.elements() {
        let x = embedding.apply(k);
        if let Some(y) = ring.elements().find(|&y| ring.mul(x, y) != ring.mul(y, x)) {
            return bad(format!(
                "image {} of {} does not commute with {}",
                ring.label(x),
                field.label(k),
                ring.label(y)
            ));
        }
    }
    for &b in &basis {
        ring.check(b)?;
    }
    let q = field.size();
    let mut size = 1usize;
    for _ in &basis {
        size = size.saturating_mul(q);
    }
    if size != ring.size() {
        return bad(format!(
            "{} basis elements over a field of size {q} cannot span a ring of size {}",
            basis.len(),
            ring.size()
        ));
    }
    let mut coords = vec![Vec::new(); ring.size()];
    for (cs, z) in span_table(&ring, &field, &embedding, &basis) {
        if !coords[z.index()].is_empty() {
            return bad(format!("basis is not free: {} has two coordinate vectors", ring.label(z)));
        }
        coords[z.index()] = cs;
    }
    if basis.is_empty() {
        return bad("empty basis".into());
    }

    let rad = ring.radical().len();
    let mut rad_dim = 0;
    let mut acc = 1;
    while acc < rad {
        acc *= q;
        rad_dim += 1;
    }
    if acc != rad {
        return bad("the radical is not a K-subspace".into());
    }
    let nil_exp = ring.nil_exponent();
    debug_assert!(nil_exp as usize <= rad_dim + 1);
    Ok(KAlgebra {
        ring,
        field,
        embedding,
        basis,
        coords,
        rad_dim,
        nil_exp,
        line: OnceLock::new(),
        graph: OnceLock::new(),
        iota_inv: OnceLock::new(),
    })
}

/// Greedy `GF(p)`-basis of a ring of characteristic `p`.
fn greedy_basis(ring: &Ring, field: &Ring, emb: &RingHom) -> Option<Vec<Elem>> {
    let mut basis = Vec::new();
    let mut span = vec![false; ring.size()];
    span[ring.zero().index()] = true;
    let mut spanned = 1;
    for x in ring.elements() {
        if span[x.index()] {
            continue;
        }
        basis.push(x);
        span = vec![false; ring.size()];
        for (_, z) in span_table(ring, field, emb, &basis) {
            span[z.index()] = true;
        }
        spanned = span.iter().filter(|&&s| s).count();
        if spanned == ring.size() {
            break;
        }
    }
    (spanned == ring.size()).then_some(basis)
}

impl KAlgebra {
    /// Builds `R` over `K`. When `R` was constructed over `K` its
    /// structural basis is used; otherwise `K` must be a prime field
    /// `GF(p)` with `char R = p`, embedded as `k ↦ k·1`.
    pub fn build(desc: &AlgebraDescriptor) -> Result<Self> {
        Self::build_with(desc, BuildOptions::default())
    }

    pub fn build_with(desc: &AlgebraDescriptor, opts: BuildOptions) -> Result<Self> {
        let ring = Arc::new(build_ring_with(&desc.ring, &opts)?);
        let field = Arc::new(build_ring_with(&desc.field, &opts)?);
        if !field.is_field() {
            return Err(Error::NotAField(desc.field.to_string()));
        }
        if let Some(st) = ring.structure().filter(|st| st.field == desc.field).cloned() {
            let emb = RingHom::new(Arc::clone(&field), Arc::clone(&ring), st.embedding)?;
            return make_algebra(ring, field, emb, st.basis);
        }
        let prime = matches!(desc.field, RingDescriptor::Gf(_)) && field.characteristic() == field.size();
        if !prime || ring.characteristic() != field.size() {
            return Err(Error::InvalidAlgebra(format!(
                "{} is not an algebra over {}",
                desc.ring, desc.field
            )));
        }
        let table = field.elements().map(|k| ring.from_int(k.index())).collect();
        let emb = RingHom::new(Arc::clone(&field), Arc::clone(&ring), table)?;
        let basis = greedy_basis(&ring, &field, &emb)
            .ok_or_else(|| Error::InvalidAlgebra("no basis found".into()))?;
        make_algebra(ring, field, emb, basis)
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::build(&s.parse()?)
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        AlgebraDescriptor {
            ring: self.ring.descriptor().clone(),
            field: self.field.descriptor().clone(),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> &Arc<Ring> {
        &self.field
    }

    pub fn embedding(&self) -> &RingHom {
        &self.embedding
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    /// `m = dim_K R`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `s = dim_K rad R`.
    pub fn rad_dim(&self) -> usize {
        self.rad_dim
    }

    pub fn nil_exponent(&self) -> u32 {
        self.nil_exp
    }

    /// The image of `k ∈ K` in `R`.
    #[inline]
    pub fn scalar(&self, k: Elem) -> Elem {
        self.embedding.apply(k)
    }

    /// `k·z`.
    #[inline]
    pub fn scale(&self, k: Elem, z: Elem) -> Elem {
        self.ring.mul(self.scalar(k), z)
    }

    pub fn coords(&self, z: Elem) -> &[Elem] {
        &self.coords[z.index()]
    }

    pub fn from_coords(&self, cs: &[Elem]) -> Result<Elem> {
        if cs.len() != self.dim() {
            return Err(Error::OutOfRange(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                cs.len()
            )));
        }
        let mut z = self.ring.zero();
        for (&k, &b) in cs.iter().zip(&self.basis) {
            self.field.check(k)?;
            z = self.ring.add(z, self.ring.mul(self.scalar(k), b));
        }
        Ok(z)
    }

    pub fn line(&self) -> &ProjectiveLine {
        self.line
            .get_or_init(|| ProjectiveLine::enumerate(Arc::clone(&self.ring)))
    }

    pub fn graph(&self) -> &DistantGraph {
        self.graph.get_or_init(|| DistantGraph::build(self.line()))
    }

    fn iota_inverse_table(&self) -> &[Option<Elem>] {
        self.iota_inv.get_or_init(|| {
            let line = self.line();
            let mut inv = vec![None; line.len()];
            for z in self.ring.elements() {
                inv[self.iota(z)] = Some(z);
            }
            inv
        })
    }

    /// `ι(z) = R(z, 1)`.
    #[inline]
    pub fn iota(&self, z: Elem) -> usize {
        self.line()
            .find((z, self.ring.one()))
            .expect("(z, 1) is admissible")
    }

    /// `ι⁻¹(p)` for `p ∈ P(R)_∞`.
    pub fn iota_inv(&self, p: usize) -> Option<Elem> {
        self.iota_inverse_table().get(p).copied().flatten()
    }

    /// The `ι`-preimage of `points ∩ P(R)_∞`, sorted.
    pub fn affine_trace(&self, points: impl IntoIterator<Item = usize>) -> Vec<Elem> {
        let mut trace: Vec<Elem> = points.into_iter().filter_map(|p| self.iota_inv(p)).collect();
        trace.sort_unstable();
        trace.dedup();
        trace
    }

    /// `Ku + v`, sorted.
    pub fn affine_line(&self, u: Elem, v: Elem) -> Vec<Elem> {
        let mut pts: Vec<Elem> = self
            .field
            .elements()
            .map(|k| self.ring.add(self.scale(k, u), v))
            .collect();
        pts.sort_unstable();
        pts.dedup();
        pts
    }

    fn lines_with_directions(&self, dir: impl Fn(Elem) -> bool) -> Vec<Vec<Elem>> {
        let mut set = BTreeSet::new();
        for u in self.ring.elements().filter(|&u| dir(u)) {
            for v in self.ring.elements() {
                set.insert(self.affine_line(u, v));
            }
        }
        set.into_iter().collect()
    }

    /// All affine lines `Ku + v`, `u ≠ 0`, of the `K`-space `R`.
    pub fn affine_lines(&self) -> Vec<Vec<Elem>> {
        let zero = self.ring.zero();
        self.lines_with_directions(|u| u != zero)
    }

    /// The regular lines `Ku + v` with `u ∈ R*`.
    pub fn regular_lines(&self) -> Vec<Vec<Elem>> {
        self.lines_with_directions(|u| self.ring.is_unit(u))
    }

    /// Affine lines whose direction is a nonunit.
    pub fn nonregular_lines(&self) -> Vec<Vec<Elem>> {
        let zero = self.ring.zero();
        self.lines_with_directions(|u| u != zero && !self.ring.is_unit(u))
    }

    /// `R \ R*`.
    pub fn cone_of_singularity(&self) -> Vec<Elem> {
        self.ring.nonunits()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radpar::is_parallel_def;
    use crate::ring::build_ring;

    pub(crate) fn alg(s: &str) -> KAlgebra {
        KAlgebra::parse(s).unwrap()
    }

    #[test]
    fn descriptor_round_trip() {
        let d: AlgebraDescriptor = "product(gf(3),dual(gf(3)))@gf(3)".parse().unwrap();
        assert_eq!(d.to_string(), "product(gf(3),dual(gf(3)))@gf(3)");
        assert!("dual(gf(3))".parse::<AlgebraDescriptor>().is_err());
        assert!(matches!("dual(gf(3))@gf(".parse::<AlgebraDescriptor>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn dimensions() {
        let a = alg("dual(gf(3))@gf(3)");
        assert_eq!((a.dim(), a.rad_dim(), a.nil_exponent()), (2, 1, 2));
        let a = alg("upper2(gf(3))@gf(3)");
        assert_eq!((a.dim(), a.rad_dim()), (3, 1));
        let labels: Vec<&str> = a.basis().iter().map(|&b| a.ring().label(b)).collect();
        assert_eq!(labels, ["j1", "j2", "e"]);
        let a = alg("trunc(gf(3),3)@gf(3)");
        assert_eq!((a.dim(), a.rad_dim(), a.nil_exponent()), (3, 2, 3));
        let a = alg("dual(gf(4))@gf(2)");
        assert_eq!(a.dim(), 4);
        let a = alg("gf(4)@gf(2)");
        assert_eq!((a.dim(), a.rad_dim()), (2, 0));
    }

    #[test]
    fn rejected_algebras() {
        assert!(matches!(KAlgebra::parse("gf(3)@gf(3)"), Err(Error::InvalidAlgebra(_))));
        assert!(matches!(KAlgebra::parse("gf(4)@gf(4)"), Err(Error::InvalidAlgebra(_))));
        assert!(matches!(KAlgebra::parse("zmod(9)@gf(3)"), Err(Error::InvalidAlgebra(_))));
        assert!(matches!(KAlgebra::parse("dual(gf(3))@gf(2)"), Err(Error::InvalidAlgebra(_))));
        assert!(matches!(KAlgebra::parse("dual(gf(3))@zmod(4)"), Err(Error::NotAField(_))));
    }

    #[test]
    fn make_algebra_checks() {
        let ring = Arc::new(build_ring(&"dual(gf(3))".parse().unwrap()).unwrap());
        let field = Arc::new(build_ring(&"gf(3)".parse().unwrap()).unwrap());
        let emb = RingHom::new(
            Arc::clone(&field),
            Arc::clone(&ring),
            field.elements().map(|k| ring.from_int(k.index())).collect(),
        )
        .unwrap();
        let one = ring.one();
        let e = ring.parse_element("e").unwrap();
        let two = ring.from_int(2);
        assert!(make_algebra(Arc::clone(&ring), Arc::clone(&field), emb.clone(), vec![one, e]).is_ok());
        // {1, 2} is not free
        assert!(make_algebra(Arc::clone(&ring), Arc::clone(&field), emb.clone(), vec![one, two]).is_err());
        assert!(make_algebra(ring, field, emb, vec![one]).is_err());
    }

    #[test]
    fn noncentral_embedding_is_rejected() {
        // GF(2) -> mat2(GF(2)) is always central; build a GF(4) copy inside
        // mat2(GF(2)) that is not.
        let ring = Arc::new(build_ring(&"mat2(gf(2))".parse().unwrap()).unwrap());
        let field = Arc::new(build_ring(&"gf(4)".parse().unwrap()).unwrap());
        // companion matrix of x² + x + 1: [[0,1],[1,1]]
        let w = ring.parse_element("e12+e21+e22").unwrap();
        let w2 = ring.mul(w, w);
        let table = vec![ring.zero(), ring.one(), w, w2];
        let emb = RingHom::new(Arc::clone(&field), Arc::clone(&ring), table).unwrap();
        let err = make_algebra(ring.clone(), field, emb, vec![ring.one(), w]).unwrap_err();
        assert!(matches!(err, Error::InvalidAlgebra(m) if m.contains("commute")));
    }

    #[test]
    fn coordinates_round_trip() {
        for d in ["dual(gf(3))@gf(3)", "upper2(gf(2))@gf(2)", "dual(gf(4))@gf(2)", "mat2(gf(2))@gf(2)"] {
            let a = alg(d);
            for z in a.ring().elements() {
                assert_eq!(a.from_coords(a.coords(z)).unwrap(), z, "{d}");
            }
        }
        let a = alg("dual(gf(3))@gf(3)");
        let z = a.ring().parse_element("1+2e").unwrap();
        let cs: Vec<usize> = a.coords(z).iter().map(|k| k.index()).collect();
        assert_eq!(cs, [1, 2]);
    }

    #[test]
    fn iota_is_a_bijection_onto_the_neighbourhood_of_infinity() {
        for d in ["dual(gf(3))@gf(3)", "upper2(gf(2))@gf(2)", "anormal(gf(3))@gf(3)"] {
            let a = alg(d);
            let line = a.line();
            assert_eq!(a.iota(a.ring().zero()), line.origin());
            let mut image: Vec<usize> = a.ring().elements().map(|z| a.iota(z)).collect();
            image.sort_unstable();
            let before = image.len();
            image.dedup();
            assert_eq!(image.len(), before, "{d}");
            assert_eq!(image, line.neighbourhood(line.infinity()), "{d}");
            for z in a.ring().elements() {
                assert_eq!(a.iota_inv(a.iota(z)), Some(z));
            }
            assert_eq!(a.iota_inv(line.infinity()), None);
        }
    }

    #[test]
    fn affine_traces() {
        for d in ["dual(gf(3))@gf(3)", "upper2(gf(3))@gf(3)", "anormal(gf(3))@gf(3)", "gf(4)@gf(2)"] {
            let a = alg(d);
            let (line, graph, r) = (a.line(), a.graph(), a.ring());
            let o = line.origin();
            let par = a.affine_trace((0..line.len()).filter(|&x| is_parallel_def(graph, x, o)));
            assert_eq!(par, r.radical().members(), "{d}");
            let nd = a.affine_trace((0..line.len()).filter(|&x| !line.is_distant(x, o)));
            assert_eq!(nd, r.nonunits(), "{d}");
            let all = a.affine_trace(line.neighbourhood(line.infinity()));
            assert_eq!(all.len(), r.size());
        }
    }

    #[test]
    fn anormal_nondistant_point_outside_the_image_of_iota() {
        let a = alg("anormal(gf(3))@gf(3)");
        let (r, line) = (a.ring(), a.line());
        let p = line
            .point_of((r.parse_element("1+2j").unwrap(), r.parse_element("1+j").unwrap()))
            .unwrap();
        assert!(!line.is_distant(p, line.origin()));
        assert_eq!(a.iota_inv(p), None);
    }

    #[test]
    fn regular_line_counts() {
        for (d, n) in [("dual(gf(3))@gf(3)", 9), ("dual(gf(2))@gf(2)", 4), ("upper2(gf(3))@gf(3)", 54)] {
            let a = alg(d);
            let lines = a.regular_lines();
            assert_eq!(lines.len(), n, "{d}");
            assert!(lines.iter().all(|l| l.len() == a.field().size()));
        }
        // AG(2,3) has 12 lines; 3 of them are vertical
        let a = alg("dual(gf(3))@gf(3)");
        assert_eq!(a.affine_lines().len(), 12);
        assert_eq!(a.nonregular_lines().len(), 3);
    }

    #[test]
    fn cone_examples() {
        assert_eq!(alg("upper2(gf(3))@gf(3)").cone_of_singularity().len(), 15);
        let a = alg("dual(gf(4))@gf(4)");
        assert_eq!(a.cone_of_singularity(), a.ring().radical().members());
        assert!(alg("gf(4)@gf(2)").cone_of_singularity() == [Elem::from_index(0)]);
    }
}
