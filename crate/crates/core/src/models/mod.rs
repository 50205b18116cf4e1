//! The two non-linear models: dual numbers (parabolas in the plane) and
//! upper triangular matrices (parabolas on a hyperbolic paraboloid).
//! Everything here works with exact `K`-coordinates over the algebra basis.

mod curve;
mod figures;

pub use curve::{classify_planar, classify_surface, image_of_line, interpolate, CurveKind, ModelCurve};
pub use figures::{export_figure_data, FigureRange};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::chaintrafo::{beta_polynomial, gamma_apply, group_n, KAlgebra};
use crate::error::{Error, Result};
use crate::ring::{Elem, Ring, RingDescriptor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Example {
    Dual,
    Ternion,
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Example::Dual => "dual",
            Example::Ternion => "ternion",
        })
    }
}

impl FromStr for Example {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dual" => Ok(Example::Dual),
            "ternion" => Ok(Example::Ternion),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown example {s:?}, expected dual or ternion"),
            }),
        }
    }
}

impl Example {
    /// The ring descriptor of the example over `field`.
    pub fn ring_over(self, field: &RingDescriptor) -> RingDescriptor {
        match self {
            Example::Dual => RingDescriptor::Dual(Box::new(field.clone())),
            Example::Ternion => RingDescriptor::Upper2(Box::new(field.clone())),
        }
    }

    /// `dual(K)@K` or `upper2(K)@K`.
    pub fn algebra(self, field: &RingDescriptor) -> Result<KAlgebra> {
        KAlgebra::build(&crate::chaintrafo::AlgebraDescriptor {
            ring: self.ring_over(field),
            field: field.clone(),
        })
    }

    fn of(alg: &KAlgebra) -> Option<Example> {
        let f = alg.field().descriptor();
        match alg.ring().descriptor() {
            RingDescriptor::Dual(k) if **k == *f => Some(Example::Dual),
            RingDescriptor::Upper2(k) if **k == *f => Some(Example::Ternion),
            _ => None,
        }
    }
}

fn require(alg: &KAlgebra, ex: Example) -> Result<()> {
    if Example::of(alg) == Some(ex) {
        Ok(())
    } else {
        Err(Error::WrongAlgebra(format!(
            "{} is not the {ex} example",
            alg.descriptor()
        )))
    }
}

fn require_t(alg: &KAlgebra, t: Elem) -> Result<()> {
    alg.field().check(t)?;
    if t == alg.field().zero() {
        Err(Error::ZeroParameter)
    } else {
        Ok(())
    }
}

/// The radical direction `ε`: last basis vector of both examples.
fn eps(alg: &KAlgebra) -> Elem {
    *alg.basis().last().expect("nonempty basis")
}

/// `(z₁, z₂) ↦ (z₁, t z₁² + z₂)`.
pub fn dual_beta(alg: &KAlgebra, t: Elem, z: Elem) -> Result<Elem> {
    require(alg, Example::Dual)?;
    let k = alg.field();
    k.check(t)?;
    let c = alg.coords(alg.ring().check(z)?);
    let z2 = k.add(k.mul(t, k.mul(c[0], c[0])), c[1]);
    alg.from_coords(&[c[0], z2])
}

/// `(z₁, z₂) ↦ (z₁, z₁ l₁ + z₂ + l₂)`.
pub fn dual_nu(alg: &KAlgebra, l1: Elem, l2: Elem, z: Elem) -> Result<Elem> {
    require(alg, Example::Dual)?;
    let k = alg.field();
    k.check(l1)?;
    k.check(l2)?;
    let c = alg.coords(alg.ring().check(z)?);
    let z2 = k.add(k.add(k.mul(c[0], l1), c[1]), l2);
    alg.from_coords(&[c[0], z2])
}

/// `(z₁, z₂, z₃) ↦ (z₁, z₂, z₃ + t z₁ z₂)`.
pub fn ternion_beta(alg: &KAlgebra, t: Elem, z: Elem) -> Result<Elem> {
    require(alg, Example::Ternion)?;
    let k = alg.field();
    k.check(t)?;
    let c = alg.coords(alg.ring().check(z)?);
    let z3 = k.add(c[2], k.mul(t, k.mul(c[0], c[1])));
    alg.from_coords(&[c[0], c[1], z3])
}

/// The table of `β'` for `b = tε`, from the polynomial form.
pub fn beta_table(alg: &KAlgebra, t: Elem) -> Result<Vec<Elem>> {
    let b = alg.scale(alg.field().check(t)?, eps(alg));
    alg.ring()
        .elements()
        .map(|z| beta_polynomial(alg, b, z))
        .collect()
}

fn image(table: &[Elem], set: &[Elem]) -> Vec<Elem> {
    let mut out: Vec<Elem> = set.iter().map(|z| table[z.index()]).collect();
    out.sort_unstable();
    out
}

fn translate(ring: &Ring, set: &[Elem], c: Elem) -> Vec<Elem> {
    let mut out: Vec<Elem> = set.iter().map(|&z| ring.add(z, c)).collect();
    out.sort_unstable();
    out
}

/// `R \ R*`.
pub fn cone_of_singularity(alg: &KAlgebra) -> Vec<Elem> {
    alg.cone_of_singularity()
}

/// Lines parallel to the radical direction `Kε`.
pub fn vertical_lines(alg: &KAlgebra) -> Vec<Vec<Elem>> {
    let e = eps(alg);
    let set: BTreeSet<Vec<Elem>> = alg.ring().elements().map(|v| alg.affine_line(e, v)).collect();
    set.into_iter().collect()
}

/// `C`, the `β'`-image of the line `K`.
pub fn standard_parabola(alg: &KAlgebra, t: Elem) -> Result<Vec<Elem>> {
    require_t(alg, t)?;
    let table = beta_table(alg, t)?;
    Ok(image(&table, &alg.affine_line(alg.ring().one(), alg.ring().zero())))
}

/// `{C^{ν'} : ν ∈ N}` as distinct point sets, sorted.
pub fn orbit_n(alg: &KAlgebra, curve: &[Elem]) -> Vec<Vec<Elem>> {
    let set: BTreeSet<Vec<Elem>> = group_n(alg)
        .members
        .iter()
        .map(|nu| {
            let mut img: Vec<Elem> = curve
                .iter()
                .map(|&z| gamma_apply(alg, nu, z).expect("N acts on all of R"))
                .collect();
            img.sort_unstable();
            img
        })
        .collect();
    set.into_iter().collect()
}

/// `{C + c : c ∈ R}` as distinct point sets, sorted.
pub fn orbit_t(alg: &KAlgebra, curve: &[Elem]) -> Vec<Vec<Elem>> {
    let r = alg.ring();
    let set: BTreeSet<Vec<Elem>> = r.elements().map(|c| translate(r, curve, c)).collect();
    set.into_iter().collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitComparison {
    pub field: String,
    pub characteristic: usize,
    pub n_orbit: usize,
    pub t_orbit: usize,
    pub t_subset_of_n: bool,
    pub equal: bool,
    /// Every member of the `N'`-orbit is a parabola with leading
    /// coefficient `t`.
    pub n_members_are_parabolas: bool,
}

pub fn compare_orbits(alg: &KAlgebra, t: Elem) -> Result<OrbitComparison> {
    require(alg, Example::Dual)?;
    let c = standard_parabola(alg, t)?;
    let n = orbit_n(alg, &c);
    let tr = orbit_t(alg, &c);
    let n_set: BTreeSet<&Vec<Elem>> = n.iter().collect();
    let n_members_are_parabolas = n.iter().all(|set| {
        let curve = classify_planar(alg, set);
        curve.kind == CurveKind::Parabola && curve.coefficients.first() == Some(&t)
    });
    Ok(OrbitComparison {
        field: alg.field().descriptor().to_string(),
        characteristic: alg.field().characteristic(),
        n_orbit: n.len(),
        t_orbit: tr.len(),
        t_subset_of_n: tr.iter().all(|s| n_set.contains(s)),
        equal: n == tr,
        n_members_are_parabolas,
    })
}

/// `N'` acts regularly on the regular lines.
pub fn n_acts_regularly_on_regular_lines(alg: &KAlgebra) -> bool {
    let regular: BTreeSet<Vec<Elem>> = alg.regular_lines().into_iter().collect();
    let base = alg.affine_line(alg.ring().one(), alg.ring().zero());
    let images: Vec<Vec<Elem>> = group_n(alg)
        .members
        .iter()
        .map(|nu| {
            let mut img: Vec<Elem> = base.iter().map(|&z| gamma_apply(alg, nu, z).unwrap()).collect();
            img.sort_unstable();
            img
        })
        .collect();
    let distinct: BTreeSet<Vec<Elem>> = images.iter().cloned().collect();
    distinct.len() == images.len() && distinct == regular
}

#[derive(Debug, Clone, Serialize)]
pub struct DualReport {
    pub field: String,
    pub t: String,
    pub vertical_lines_invariant: bool,
    pub cone_fixed: bool,
    pub c_is_parabola: bool,
    /// `β'`-images of the regular lines form `C^{N'}`.
    pub regular_images_are_n_orbit: bool,
    pub n_regular_on_regular_lines: bool,
}

pub fn dual_classify(alg: &KAlgebra, t: Elem) -> Result<DualReport> {
    require(alg, Example::Dual)?;
    require_t(alg, t)?;
    let table = beta_table(alg, t)?;
    let c = standard_parabola(alg, t)?;
    let images: BTreeSet<Vec<Elem>> = alg.regular_lines().iter().map(|l| image(&table, l)).collect();
    let orbit: BTreeSet<Vec<Elem>> = orbit_n(alg, &c).into_iter().collect();
    let curve = image_of_line(alg, |z| table[z.index()], &alg.affine_line(alg.ring().one(), alg.ring().zero()));
    Ok(DualReport {
        field: alg.field().descriptor().to_string(),
        t: alg.field().label(t).to_string(),
        vertical_lines_invariant: vertical_lines(alg).iter().all(|l| image(&table, l) == *l),
        cone_fixed: cone_of_singularity(alg).iter().all(|z| table[z.index()] == *z),
        c_is_parabola: curve.kind == CurveKind::Parabola,
        regular_images_are_n_orbit: images == orbit,
        n_regular_on_regular_lines: n_acts_regularly_on_regular_lines(alg),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TernionReport {
    pub field: String,
    pub t: String,
    pub vertical_lines_invariant: bool,
    pub cone_fixed: bool,
    /// Restriction to every plane `z₁ = const` and `z₂ = const` is a planar
    /// shear fixing the trace of the cone.
    pub planar_shears: bool,
    /// `β'(z₃ = 0) = {z₃ = t z₁ z₂}`.
    pub plane_maps_onto_paraboloid: bool,
    pub paraboloid_points: usize,
    pub plane_image_kind: CurveKind,
    /// Images of regular lines of the plane `z₃ = 0`.
    pub regular_line_images: usize,
    pub regular_images_all_parabolas: bool,
    /// Images of non-regular lines of that plane: rulings of `H`.
    pub ruling_images: usize,
    pub rulings_are_lines_in_h: bool,
    /// Members of `𝒱` other than `C` that are translates of `C`.
    pub v_family: usize,
    pub v_translates_of_c: usize,
    /// Translates of `𝒱` coincide with translates of `C^{N'}`.
    pub v_matches_n_orbit_translates: bool,
}

fn coord_plane(alg: &KAlgebra, axis: usize, value: Elem) -> Vec<Elem> {
    alg.ring()
        .elements()
        .filter(|&z| alg.coords(z)[axis] == value)
        .collect()
}

/// Affine on the plane, maps it to itself, fixes its trace on the cone and
/// moves points only along `Kε`.
fn is_planar_shear(alg: &KAlgebra, table: &[Elem], plane: &[Elem]) -> bool {
    let (r, k) = (alg.ring(), alg.field());
    let f = |z: Elem| table[z.index()];
    let inside: BTreeSet<Elem> = plane.iter().copied().collect();
    plane.iter().all(|&z| inside.contains(&f(z)))
        && plane.iter().all(|&x| {
            plane.iter().all(|&y| {
                k.elements().all(|s| {
                    let p = r.add(x, alg.scale(s, r.sub(y, x)));
                    f(p) == r.add(f(x), alg.scale(s, r.sub(f(y), f(x))))
                })
            })
        })
        && plane
            .iter()
            .filter(|&&z| !r.is_unit(z))
            .all(|&z| f(z) == z)
        && plane.iter().all(|&z| r.in_radical(r.sub(f(z), z)))
}

pub fn ternion_classify(alg: &KAlgebra, t: Elem) -> Result<TernionReport> {
    require(alg, Example::Ternion)?;
    require_t(alg, t)?;
    let (r, k) = (alg.ring(), alg.field());
    let table = beta_table(alg, t)?;
    let f = |z: Elem| table[z.index()];

    let planar_shears = (0..2).all(|axis| {
        k.elements()
            .all(|c| is_planar_shear(alg, &table, &coord_plane(alg, axis, c)))
    });

    let plane = coord_plane(alg, 2, k.zero());
    let h: Vec<Elem> = {
        let mut h: Vec<Elem> = r
            .elements()
            .filter(|&z| {
                let c = alg.coords(z);
                c[2] == k.mul(t, k.mul(c[0], c[1]))
            })
            .collect();
        h.sort_unstable();
        h
    };
    let plane_image = image(&table, &plane);
    let h_set: BTreeSet<Elem> = h.iter().copied().collect();

    let in_plane = |l: &Vec<Elem>| l.iter().all(|z| alg.coords(*z)[2] == k.zero());
    let regular: Vec<Vec<Elem>> = alg.regular_lines().into_iter().filter(in_plane).collect();
    let nonregular: Vec<Vec<Elem>> = alg.nonregular_lines().into_iter().filter(in_plane).collect();
    let curves = |ls: &[Vec<Elem>]| -> Vec<ModelCurve> {
        ls.iter().map(|l| image_of_line(alg, f, l)).collect()
    };
    let reg_curves = curves(&regular);
    let rul_curves = curves(&nonregular);

    // C: image of {(k, k, 0)}, lying in the vertical plane V = K(j1+j2) + Kε
    let basis = alg.basis();
    let diag = r.add(basis[0], basis[1]);
    let c = image(&table, &alg.affine_line(diag, r.zero()));
    let v_plane: Vec<Elem> = {
        let mut v = BTreeSet::new();
        for s in k.elements() {
            for u in k.elements() {
                v.insert(r.add(alg.scale(s, diag), alg.scale(u, eps(alg))));
            }
        }
        v.into_iter().collect()
    };
    let v_family: BTreeSet<Vec<Elem>> = r
        .elements()
        .map(|shift| {
            let mut s: Vec<Elem> = v_plane
                .iter()
                .map(|&z| r.add(z, shift))
                .filter(|z| h_set.contains(z))
                .collect();
            s.sort_unstable();
            s
        })
        .collect();
    let c_translates: BTreeSet<Vec<Elem>> = orbit_t(alg, &c).into_iter().collect();
    let v_translates_of_c = v_family
        .iter()
        .filter(|s| **s != c && c_translates.contains(*s))
        .count();
    let translates_of = |family: &mut dyn Iterator<Item = Vec<Elem>>| -> BTreeSet<Vec<Elem>> {
        family.flat_map(|s| orbit_t(alg, &s)).collect()
    };
    let v_trans = translates_of(&mut v_family.iter().cloned());
    let n_trans = translates_of(&mut orbit_n(alg, &c).into_iter());

    Ok(TernionReport {
        field: k.descriptor().to_string(),
        t: k.label(t).to_string(),
        vertical_lines_invariant: vertical_lines(alg).iter().all(|l| image(&table, l) == *l),
        cone_fixed: cone_of_singularity(alg).iter().all(|&z| f(z) == z),
        planar_shears,
        plane_maps_onto_paraboloid: plane_image == h,
        paraboloid_points: h.len(),
        plane_image_kind: classify_surface(alg, &plane_image).kind,
        regular_line_images: reg_curves.len(),
        regular_images_all_parabolas: reg_curves
            .iter()
            .all(|c| c.kind == CurveKind::Parabola && c.points.iter().all(|z| h_set.contains(z))),
        ruling_images: rul_curves.len(),
        rulings_are_lines_in_h: rul_curves
            .iter()
            .all(|c| c.kind == CurveKind::Line && c.points.iter().all(|z| h_set.contains(z))),
        v_family: v_family.len(),
        v_translates_of_c,
        v_matches_n_orbit_translates: v_trans == n_trans,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineTag {
    Vertical,
    TranslateOfC,
    NOrbitMember,
    NonRegularImage,
}

impl fmt::Display for LineTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineTag::Vertical => "vertical",
            LineTag::TranslateOfC => "translate-of-C",
            LineTag::NOrbitMember => "N-orbit member",
            LineTag::NonRegularImage => "non-regular image",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TaggedLine {
    pub tag: LineTag,
    pub kind: CurveKind,
    pub points: Vec<Elem>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelLineSet {
    pub example: Example,
    pub field: String,
    pub t: String,
    pub lines: Vec<TaggedLine>,
}

impl ModelLineSet {
    pub fn count(&self, tag: LineTag) -> usize {
        self.lines.iter().filter(|l| l.tag == tag).count()
    }

    /// The line set equals `{β'(L) : L an affine line}`.
    pub fn matches_images(&self, alg: &KAlgebra, t: Elem) -> Result<bool> {
        let table = beta_table(alg, t)?;
        let images: BTreeSet<Vec<Elem>> = alg.affine_lines().iter().map(|l| image(&table, l)).collect();
        let ours: BTreeSet<Vec<Elem>> = self.lines.iter().map(|l| l.points.clone()).collect();
        Ok(ours.len() == self.lines.len() && ours == images)
    }

    /// Any two distinct points lie on exactly one line.
    pub fn is_linear_space(&self, points: usize) -> bool {
        let mut count = vec![0u32; points * points];
        for l in &self.lines {
            for &p in &l.points {
                for &q in &l.points {
                    count[p.index() * points + q.index()] += 1;
                }
            }
        }
        (0..points).all(|p| (0..points).all(|q| p == q || count[p * points + q] == 1))
    }

    /// Human-readable listing, one line per member.
    pub fn render(&self, alg: &KAlgebra) -> String {
        let mut out = format!(
            "{} model over {} with t = {}: {} lines\n",
            self.example,
            self.field,
            self.t,
            self.lines.len()
        );
        let mut by_tag: BTreeMap<LineTag, usize> = BTreeMap::new();
        for l in &self.lines {
            *by_tag.entry(l.tag).or_default() += 1;
        }
        for (tag, n) in by_tag {
            out.push_str(&format!("  {tag}: {n}\n"));
        }
        for l in &self.lines {
            out.push_str(&format!(
                "{} [{}] {}\n",
                l.tag,
                l.kind,
                alg.ring().format_set(&l.points)
            ));
        }
        out
    }
}

/// The line set of the parabola model, tagged by provenance.
pub fn model_line_set(alg: &KAlgebra, example: Example, t: Elem) -> Result<ModelLineSet> {
    require(alg, example)?;
    if alg.field().size() == 2 {
        return Err(Error::Gf2Excluded);
    }
    require_t(alg, t)?;
    let (r, k) = (alg.ring(), alg.field());
    let table = beta_table(alg, t)?;
    let f = |z: Elem| table[z.index()];
    let mut seen = BTreeSet::new();
    let mut lines = Vec::new();
    let mut push = |tag: LineTag, kind: CurveKind, set: Vec<Elem>| {
        if seen.insert(set.clone()) {
            lines.push(TaggedLine { tag, kind, points: set });
        }
    };
    match example {
        Example::Dual => {
            for l in vertical_lines(alg) {
                push(LineTag::Vertical, CurveKind::Line, l);
            }
            let c = standard_parabola(alg, t)?;
            let (tag, family) = if k.characteristic() != 2 {
                (LineTag::TranslateOfC, orbit_t(alg, &c))
            } else {
                (LineTag::NOrbitMember, orbit_n(alg, &c))
            };
            for s in family {
                push(tag, classify_planar(alg, &s).kind, s);
            }
        }
        Example::Ternion => {
            for l in alg.nonregular_lines() {
                let kind = image_of_line(alg, f, &l).kind;
                push(LineTag::NonRegularImage, kind, image(&table, &l));
            }
            let in_plane = |l: &Vec<Elem>| l.iter().all(|z| alg.coords(*z)[2] == k.zero());
            for l in alg.regular_lines().into_iter().filter(in_plane) {
                let kind = image_of_line(alg, f, &l).kind;
                let c = image(&table, &l);
                for shift in r.elements() {
                    push(LineTag::TranslateOfC, kind, translate(r, &c, shift));
                }
            }
        }
    }
    Ok(ModelLineSet {
        example,
        field: k.descriptor().to_string(),
        t: k.label(t).to_string(),
        lines,
    })
}
