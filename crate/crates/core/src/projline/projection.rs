use std::sync::Arc;

use super::ProjectiveLine;
use crate::error::{Error, Result};
use crate::ring::{quotient_ring, Ideal, RingHom};

/// `P(R) → P(R/I)`, `R(a, b) ↦ R̄(ā, b̄)`, for an ideal `I ⊆ rad R`.
#[derive(Debug, Clone)]
pub struct QuotientLine {
    hom: RingHom,
    target: ProjectiveLine,
    map: Vec<usize>,
}

fn validate_hom(line: &ProjectiveLine, hom: &RingHom, target: &ProjectiveLine) -> Result<()> {
    if **hom.source() != **line.ring() {
        return Err(Error::InvalidProjection("hom source is not the line's ring".into()));
    }
    if **hom.target() != **target.ring() {
        return Err(Error::InvalidProjection("hom target is not the target line's ring".into()));
    }
    if !hom.is_surjective() {
        return Err(Error::InvalidProjection("hom is not surjective".into()));
    }
    let rad = line.ring().radical();
    if let Some(&k) = hom.kernel().iter().find(|&&k| !rad.contains(k)) {
        return Err(Error::InvalidProjection(format!(
            "kernel element {} is not in the radical",
            line.ring().label(k)
        )));
    }
    Ok(())
}

/// Projects one point. Fails if `hom` is not a quotient map whose kernel
/// lies inside `rad R`.
pub fn project_point(
    line: &ProjectiveLine,
    p: usize,
    hom: &RingHom,
    target: &ProjectiveLine,
) -> Result<usize> {
    line.check_point(p)?;
    validate_hom(line, hom, target)?;
    let (a, b) = line.canonical(p);
    target
        .find((hom.apply(a), hom.apply(b)))
        .ok_or_else(|| Error::InvalidProjection("image pair is not admissible".into()))
}

impl QuotientLine {
    pub fn new(line: &ProjectiveLine, hom: RingHom, target: ProjectiveLine) -> Result<Self> {
        validate_hom(line, &hom, &target)?;
        let map = (0..line.len())
            .map(|p| {
                let (a, b) = line.canonical(p);
                target
                    .find((hom.apply(a), hom.apply(b)))
                    .ok_or_else(|| Error::InvalidProjection("image pair is not admissible".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QuotientLine { hom, target, map })
    }

    /// Projection modulo `ideal`, which must lie in the radical.
    pub fn by_ideal(line: &ProjectiveLine, ideal: &Ideal) -> Result<Self> {
        let (q, hom) = quotient_ring(line.ring(), ideal)?;
        let target = ProjectiveLine::enumerate(Arc::clone(&q));
        Self::new(line, hom, target)
    }

    /// Projection onto `P(R / rad R)`.
    pub fn by_radical(line: &ProjectiveLine) -> Self {
        let rad = line.ring().radical().clone();
        Self::by_ideal(line, &rad).expect("the radical is a proper two-sided ideal")
    }

    pub fn hom(&self) -> &RingHom {
        &self.hom
    }

    pub fn target(&self) -> &ProjectiveLine {
        &self.target
    }

    #[inline]
    pub fn project(&self, p: usize) -> usize {
        self.map[p]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn fibre_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.target.len()];
        for &p in &self.map {
            sizes[p] += 1;
        }
        sizes
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projline::DistantGraph;
    use crate::ring::{build_ring, Elem};

    fn line(desc: &str) -> ProjectiveLine {
        ProjectiveLine::enumerate(Arc::new(build_ring(&desc.parse().unwrap()).unwrap()))
    }

    #[test]
    fn dual_projection_examples() {
        let l = line("dual(gf(3))");
        let ql = QuotientLine::by_radical(&l);
        let r = l.ring();
        let p = l.point_of((r.one(), r.parse_element("e").unwrap())).unwrap();
        assert_eq!(ql.target().label(ql.project(p)), "(1,0)");
        assert_eq!(ql.target().label(ql.project(l.origin())), "(0,1)");
        assert!(ql.fibre_sizes().iter().all(|&s| s == 3));
        assert_eq!(ql.target().len(), 4);
    }

    #[test]
    fn projection_preserves_distance_both_ways() {
        for d in ["zmod(8)", "upper2(gf(2))", "product(dual(gf(2)),gf(3))", "trunc(gf(3),3)"] {
            let l = line(d);
            let ql = QuotientLine::by_radical(&l);
            let g = DistantGraph::build(&l);
            let gq = DistantGraph::build(ql.target());
            for p in 0..l.len() {
                for q in 0..l.len() {
                    assert_eq!(g.is_distant(p, q), gq.is_distant(ql.project(p), ql.project(q)), "{d}");
                }
            }
            let rad = l.ring().radical().len();
            assert!(ql.fibre_sizes().iter().all(|&s| s == rad), "{d}");
        }
    }

    #[test]
    fn sub_radical_ideal_fibres() {
        let l = line("zmod(8)");
        let ideal = Ideal::new(l.ring(), [Elem::from_index(0), Elem::from_index(4)]).unwrap();
        let ql = QuotientLine::by_ideal(&l, &ideal).unwrap();
        assert!(ql.fibre_sizes().iter().all(|&s| s == 2));
        assert_eq!(ql.target().len(), 6);
    }

    #[test]
    fn rejects_kernels_outside_the_radical() {
        let l = line("zmod(6)");
        let ideal = Ideal::new(l.ring(), [0, 2, 4].map(Elem::from_index)).unwrap();
        assert!(matches!(
            QuotientLine::by_ideal(&l, &ideal),
            Err(Error::InvalidProjection(_))
        ));
        let (q, hom) = quotient_ring(l.ring(), &ideal).unwrap();
        let target = ProjectiveLine::enumerate(q);
        assert!(project_point(&l, 0, &hom, &target).is_err());
    }
}
