use std::fmt;

use serde::Serialize;

use crate::chaintrafo::KAlgebra;
use crate::ring::{Elem, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    Line,
    Parabola,
    ParaboloidPatch,
    Other,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveKind::Line => "line",
            CurveKind::Parabola => "parabola",
            CurveKind::ParaboloidPatch => "paraboloid-patch",
            CurveKind::Other => "other",
        })
    }
}

/// A classified point set of the affine space `R`.
///
/// In the plane the coefficients are those of `z₂ = a z₁² + b z₁ + c`,
/// highest degree first (`[c₀]` for a vertical line `z₁ = c₀`). In higher
/// dimension they are the coordinate polynomials of the parametrisation
/// `k ↦ f(v + k u)`, each listed lowest degree first and padded to a common
/// length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelCurve {
    pub kind: CurveKind,
    pub vertical: bool,
    pub coefficients: Vec<Elem>,
    pub points: Vec<Elem>,
}

/// Lagrange interpolation over a field. Returns coefficients lowest degree
/// first with trailing zeros trimmed; the zero polynomial is empty.
pub fn interpolate(field: &Ring, pts: &[(Elem, Elem)]) -> Vec<Elem> {
    let n = pts.len();
    let mut acc = vec![field.zero(); n];
    for (i, &(xi, yi)) in pts.iter().enumerate() {
        // basis polynomial ∏_{j≠i} (X - x_j) / (x_i - x_j)
        let mut basis = vec![field.one()];
        let mut denom = field.one();
        for (j, &(xj, _)) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![field.zero(); basis.len() + 1];
            for (d, &c) in basis.iter().enumerate() {
                next[d + 1] = field.add(next[d + 1], c);
                next[d] = field.sub(next[d], field.mul(c, xj));
            }
            basis = next;
            denom = field.mul(denom, field.sub(xi, xj));
        }
        let scale = field.mul(yi, field.inverse(denom).expect("distinct nodes"));
        for (d, &c) in basis.iter().enumerate() {
            acc[d] = field.add(acc[d], field.mul(scale, c));
        }
    }
    while acc.last() == Some(&field.zero()) {
        acc.pop();
    }
    acc
}

fn degree(p: &[Elem]) -> usize {
    p.len().saturating_sub(1)
}

/// Planar classification from the point set alone.
pub fn classify_planar(alg: &KAlgebra, set: &[Elem]) -> ModelCurve {
    let k = alg.field();
    let mut points = set.to_vec();
    points.sort_unstable();
    points.dedup();
    let xy: Vec<(Elem, Elem)> = points
        .iter()
        .map(|&z| {
            let c = alg.coords(z);
            (c[0], c[1])
        })
        .collect();
    let other = |points| ModelCurve {
        kind: CurveKind::Other,
        vertical: false,
        coefficients: Vec::new(),
        points,
    };
    let Some(&(x0, _)) = xy.first() else { return other(points) };
    if xy.iter().all(|&(x, _)| x == x0) {
        let kind = if points.len() == k.size() { CurveKind::Line } else { CurveKind::Other };
        return ModelCurve {
            kind,
            vertical: true,
            coefficients: vec![x0],
            points,
        };
    }
    let mut xs: Vec<Elem> = xy.iter().map(|&(x, _)| x).collect();
    xs.sort_unstable();
    xs.dedup();
    if xs.len() != k.size() || xy.len() != k.size() {
        return other(points);
    }
    let poly = interpolate(k, &xy);
    let kind = match degree(&poly) {
        0 | 1 => CurveKind::Line,
        2 => CurveKind::Parabola,
        _ => return other(points),
    };
    let width = if kind == CurveKind::Line { 2 } else { 3 };
    let mut coefficients: Vec<Elem> = (0..width)
        .map(|d| poly.get(d).copied().unwrap_or(k.zero()))
        .collect();
    coefficients.reverse();
    ModelCurve {
        kind,
        vertical: false,
        coefficients,
        points,
    }
}

/// Classifies `map(line)`. In the plane the image point set is examined
/// directly; in higher dimension the image is classified by the degrees of
/// its coordinate polynomials along the line's parametrisation.
pub fn image_of_line(alg: &KAlgebra, map: impl Fn(Elem) -> Elem, line: &[Elem]) -> ModelCurve {
    let img: Vec<Elem> = line.iter().map(|&z| map(z)).collect();
    if alg.dim() <= 2 {
        return classify_planar(alg, &img);
    }
    let (r, k) = (alg.ring(), alg.field());
    let mut points = img.clone();
    points.sort_unstable();
    points.dedup();
    let vertical = points.iter().all(|&p| r.in_radical(r.sub(p, points[0])));
    let other = ModelCurve {
        kind: CurveKind::Other,
        vertical,
        coefficients: Vec::new(),
        points: points.clone(),
    };
    if line.len() < 2 || points.len() != line.len() {
        return other;
    }
    let (v, u) = (line[0], r.sub(line[1], line[0]));
    let mut sorted_line = line.to_vec();
    sorted_line.sort_unstable();
    if alg.affine_line(u, v) != sorted_line {
        return other;
    }
    let polys: Vec<Vec<Elem>> = (0..alg.dim())
        .map(|axis| {
            let samples: Vec<(Elem, Elem)> = k
                .elements()
                .map(|s| (s, alg.coords(map(r.add(v, alg.scale(s, u))))[axis]))
                .collect();
            interpolate(k, &samples)
        })
        .collect();
    let deg = polys.iter().map(|p| degree(p)).max().unwrap_or(0);
    let kind = match deg {
        0 | 1 => CurveKind::Line,
        2 => CurveKind::Parabola,
        _ => return other,
    };
    let width = deg + 1;
    let coefficients = polys
        .iter()
        .flat_map(|p| (0..width).map(move |d| p.get(d).copied().unwrap_or(k.zero())))
        .collect();
    ModelCurve {
        kind,
        vertical,
        coefficients,
        points,
    }
}

/// A point set of a 3-space that is the graph `z₃ = a z₁z₂ + b z₁ + c z₂ + d`
/// with `a ≠ 0` is a paraboloid patch with coefficients `[a, b, c, d]`.
pub fn classify_surface(alg: &KAlgebra, set: &[Elem]) -> ModelCurve {
    let k = alg.field();
    let mut points = set.to_vec();
    points.sort_unstable();
    points.dedup();
    let mut other = ModelCurve {
        kind: CurveKind::Other,
        vertical: false,
        coefficients: Vec::new(),
        points,
    };
    if alg.dim() != 3 || other.points.len() != k.size() * k.size() {
        return other;
    }
    let mut g = vec![None; k.size() * k.size()];
    for &z in &other.points {
        let c = alg.coords(z);
        let slot = &mut g[c[0].index() * k.size() + c[1].index()];
        if slot.is_some() {
            return other;
        }
        *slot = Some(c[2]);
    }
    let at = |x: Elem, y: Elem| g[x.index() * k.size() + y.index()].expect("graph is total");
    let (zero, one) = (k.zero(), k.one());
    let d = at(zero, zero);
    let b = k.sub(at(one, zero), d);
    let c = k.sub(at(zero, one), d);
    let a = k.sub(k.sub(k.sub(at(one, one), b), c), d);
    let fits = k.elements().all(|x| {
        k.elements().all(|y| {
            let v = k.add(k.add(k.mul(a, k.mul(x, y)), k.mul(b, x)), k.add(k.mul(c, y), d));
            v == at(x, y)
        })
    });
    if fits && a != zero {
        other.kind = CurveKind::ParaboloidPatch;
        other.coefficients = vec![a, b, c, d];
    }
    other
}

impl ModelCurve {
    /// `z2 = a*z1^2 + b*z1 + c` style rendering of a planar curve.
    pub fn equation(&self, field: &Ring) -> String {
        let l = |x: Elem| field.label(x).to_string();
        match (self.kind, self.vertical, self.coefficients.as_slice()) {
            (CurveKind::Line, true, [c]) => format!("z1 = {}", l(*c)),
            (CurveKind::Line, false, [b, c]) => format!("z2 = {}*z1 + {}", l(*b), l(*c)),
            (CurveKind::Parabola, false, [a, b, c]) => {
                format!("z2 = {}*z1^2 + {}*z1 + {}", l(*a), l(*b), l(*c))
            }
            _ => format!("{} through {} points", self.kind, self.points.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{beta_table, Example};

    fn el(i: usize) -> Elem {
        Elem::from_index(i)
    }

    #[test]
    fn interpolation_recovers_polynomials() {
        let k = crate::ring::build_ring(&"gf(5)".parse().unwrap()).unwrap();
        // 3 + 2x^2
        let pts: Vec<(Elem, Elem)> = (0..5).map(|x| (el(x), el((3 + 2 * x * x) % 5))).collect();
        assert_eq!(interpolate(&k, &pts), [el(3), el(0), el(2)]);
        let zeros: Vec<(Elem, Elem)> = (0..5).map(|x| (el(x), el(0))).collect();
        assert!(interpolate(&k, &zeros).is_empty());
    }

    #[test]
    fn planar_examples() {
        let a = Example::Dual.algebra(&"gf(3)".parse().unwrap()).unwrap();
        let t = a.field().one();
        let table = beta_table(&a, t).unwrap();
        let f = |z: Elem| table[z.index()];
        let (r, one) = (a.ring(), a.ring().one());

        let c = image_of_line(&a, f, &a.affine_line(one, r.zero()));
        assert_eq!((c.kind, c.coefficients.clone()), (CurveKind::Parabola, vec![el(1), el(0), el(0)]));
        assert_eq!(c.equation(a.field()), "z2 = 1*z1^2 + 0*z1 + 0");

        let e = a.basis()[1];
        let vertical = a.affine_line(e, one);
        let v = image_of_line(&a, f, &vertical);
        assert!(v.vertical && v.kind == CurveKind::Line && v.points == vertical);

        let diag = image_of_line(&a, f, &a.affine_line(r.add(one, e), r.zero()));
        assert_eq!(diag.coefficients, [el(1), el(1), el(0)]);

        let id = image_of_line(&a, |z| z, &a.affine_line(r.add(one, e), r.zero()));
        assert_eq!((id.kind, id.coefficients), (CurveKind::Line, vec![el(1), el(0)]));
    }

    #[test]
    fn non_curves_are_other() {
        let a = Example::Dual.algebra(&"gf(3)".parse().unwrap()).unwrap();
        let pts: Vec<Elem> = a.ring().elements().take(4).collect();
        assert_eq!(classify_planar(&a, &pts).kind, CurveKind::Other);
    }
}
