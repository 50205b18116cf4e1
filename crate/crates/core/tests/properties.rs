use std::sync::Arc;

use proptest::prelude::*;
use ringline_core::chaintrafo::{gamma_domain, gamma_formula, transform, KAlgebra};
use ringline_core::projline::{DistantGraph, Matrix2, ProjectiveLine};
use ringline_core::radpar::is_parallel_def;
use ringline_core::ring::build_ring;
use ringline_core::{Elem, Ring};

const RINGS: [&str; 6] = ["zmod(12)", "dual(gf(3))", "upper2(gf(2))", "mat2(gf(2))", "anormal(gf(3))", "trunc(gf(2),3)"];

fn ring(i: usize) -> Arc<Ring> {
    Arc::new(build_ring(&RINGS[i].parse().unwrap()).unwrap())
}

fn matrix(r: &Ring, e: [usize; 4]) -> Matrix2 {
    let x = |i: usize| Elem::from_index(i % r.size());
    Matrix2::new(x(e[0]), x(e[1]), x(e[2]), x(e[3]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_is_two_sided(i in 0..RINGS.len(), e in any::<[usize; 4]>()) {
        let r = ring(i);
        let m = matrix(&r, e);
        let id = Matrix2::identity(&r);
        match m.inverse(&r) {
            Ok(inv) => {
                prop_assert_eq!(m.mul(&r, &inv), id);
                prop_assert_eq!(inv.mul(&r, &m), id);
            }
            Err(_) => prop_assert!(!m.is_invertible(&r)),
        }
    }

    #[test]
    fn invertible_matrices_preserve_distance_and_parallelism(i in 0..RINGS.len(), e in any::<[usize; 4]>()) {
        let r = ring(i);
        let m = matrix(&r, e);
        prop_assume!(m.is_invertible(&r));
        let line = ProjectiveLine::enumerate(Arc::clone(&r));
        let g = DistantGraph::build(&line);
        let perm = line.permutation(&m).unwrap();
        for p in 0..line.len() {
            for q in 0..line.len() {
                prop_assert_eq!(g.is_distant(p, q), g.is_distant(perm[p], perm[q]));
                prop_assert_eq!(is_parallel_def(&g, p, q), is_parallel_def(&g, perm[p], perm[q]));
            }
        }
    }

    #[test]
    fn induced_map_agrees_with_formula(
        alg in prop::sample::select(vec!["dual(gf(3))@gf(3)", "upper2(gf(2))@gf(2)", "trunc(gf(3),3)@gf(3)"]),
        e in any::<[usize; 4]>(),
    ) {
        let a = KAlgebra::parse(alg).unwrap();
        let r = a.ring();
        let m = matrix(r, e);
        prop_assume!(m.is_invertible(r));
        let t = transform(&a, &m).unwrap();
        let dom = gamma_domain(&a, &m).unwrap();
        for z in r.elements() {
            prop_assert_eq!(t.get(z), gamma_formula(&a, &m, z));
            prop_assert_eq!(t.get(z).is_some(), dom.contains(&z));
        }
    }
}
