//! Acceptance suite: one line per criterion, each with its own time budget.
//! Run with `cargo test -p ringline-core --test acceptance`.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use ringline_core::chaintrafo::{
    affine_classification, all_matrices, b_acts_regularly, commutes, group_b, group_n,
    is_affine_table, satisfies_total_condition, t_prime_is_translations, tau_fixes,
    tau_fixes_geometric, totality_sweep, transform, KAlgebra,
};
use ringline_core::models::{compare_orbits, ternion_classify, Example};
use ringline_core::projline::{DistantGraph, Matrix2, ProjectiveLine, QuotientLine};
use ringline_core::radpar::{
    compare_relations, is_equivalence, is_parallel_def, is_parallel_quot, parallel_classes,
    parallel_matrix, proper_neighbourhood_inclusion,
};
use ringline_core::ring::{build_ring, catalog, DEFAULT_MAX_SIZE};
use ringline_core::{Elem, Ring, RingDescriptor};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ring(d: &str) -> Arc<Ring> {
    Arc::new(build_ring(&d.parse().unwrap()).unwrap())
}

fn line_of(r: &Arc<Ring>) -> (ProjectiveLine, DistantGraph) {
    let line = ProjectiveLine::enumerate(Arc::clone(r));
    let graph = DistantGraph::build(&line);
    (line, graph)
}

fn labels(r: &Ring, xs: &[Elem]) -> BTreeSet<String> {
    xs.iter().map(|&x| r.label(x).to_string()).collect()
}

fn set(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1() -> Outcome {
    let eps = [
        ("gf(2)", set(&["0", "e"])),
        ("gf(3)", set(&["0", "e", "2e"])),
        ("gf(4)", set(&["0", "e", "we", "(w+1)e"])),
    ];
    for (k, expected) in &eps {
        for ctor in ["dual", "upper2"] {
            let d = format!("{ctor}({k})");
            let r = ring(&d);
            let got = labels(&r, r.radical().members());
            ensure(&got == expected, || format!("rad {d} = {got:?}"))?;
        }
    }
    for (d, expected) in [("zmod(4)", set(&["0", "2"])), ("zmod(6)", set(&["0"]))] {
        let r = ring(d);
        let got = labels(&r, r.radical().members());
        ensure(got == expected, || format!("rad {d} = {got:?}"))?;
    }
    Ok("8 radicals exact".into())
}

fn ac2() -> Outcome {
    let mut pairs = 0usize;
    let rings = catalog(27);
    for d in &rings {
        let r = Arc::new(build_ring(d).unwrap());
        let (line, graph) = line_of(&r);
        let quot = QuotientLine::by_radical(&line);
        for p in 0..line.len() {
            for q in 0..line.len() {
                ensure(is_parallel_def(&graph, p, q) == is_parallel_quot(&quot, p, q), || {
                    format!("{d}: {} {}", line.label(p), line.label(q))
                })?;
            }
        }
        pairs += line.len() * line.len();
    }
    Ok(format!("{} rings, {pairs} pairs", rings.len()))
}

fn ac3() -> Outcome {
    let rings = catalog(27);
    for d in &rings {
        let r = Arc::new(build_ring(d).unwrap());
        let (line, graph) = line_of(&r);
        ensure(is_equivalence(&parallel_matrix(&graph)), || format!("{d}: not an equivalence"))?;
        let rep = parallel_classes(&line, &graph);
        ensure(rep.class_size == Some(r.radical().len()), || {
            format!("{d}: class size {:?}, #rad {}", rep.class_size, r.radical().len())
        })?;
    }
    for (d, n) in [("dual(gf(2))", 6), ("dual(gf(3))", 12), ("upper2(gf(3))", 48)] {
        let len = line_of(&ring(d)).0.len();
        ensure(len == n, || format!("|P({d})| = {len}, want {n}"))?;
    }
    Ok(format!("{} rings; |P| = 6, 12, 48", rings.len()))
}

fn ac4() -> Outcome {
    let mut lines = 0;
    let mut pairs = 0;
    for d in catalog(64) {
        let r = Arc::new(build_ring(&d).unwrap());
        let (line, graph) = line_of(&r);
        if line.len() > 48 {
            continue;
        }
        if let Some((p, q)) = proper_neighbourhood_inclusion(&graph) {
            return Err(format!("{d}: {} {}", line.label(p), line.label(q)));
        }
        lines += 1;
        pairs += line.len() * line.len();
    }
    Ok(format!("{lines} lines, {pairs} ordered pairs"))
}

fn ac5() -> Outcome {
    let rings = catalog(DEFAULT_MAX_SIZE);
    let (mut local, mut nonlocal) = (0, 0);
    for d in &rings {
        let r = Arc::new(build_ring(d).unwrap());
        let (line, graph) = line_of(&r);
        let cmp = compare_relations(&graph);
        ensure(cmp.coincide == r.is_local(), || format!("{d}: coincide = {}", cmp.coincide))?;
        if r.is_local() {
            local += 1;
        } else {
            let (p, q) = cmp.witness.ok_or_else(|| format!("{d}: no witness"))?;
            ensure(!graph.is_distant(p, q) && !is_parallel_def(&graph, p, q), || {
                format!("{d}: bad witness {} {}", line.label(p), line.label(q))
            })?;
            nonlocal += 1;
        }
    }
    for (d, want) in [
        ("zmod(4)", true),
        ("zmod(9)", true),
        ("dual(gf(3))", true),
        ("trunc(gf(3),3)", true),
        ("zmod(6)", false),
        ("anormal(gf(3))", false),
        ("upper2(gf(3))", false),
        ("mat2(gf(2))", false),
    ] {
        let d: RingDescriptor = d.parse().unwrap();
        ensure(rings.contains(&d), || format!("{d} missing from catalog"))?;
        ensure(ring(&d.to_string()).is_local() == want, || format!("{d}: locality"))?;
    }
    Ok(format!("{} rings: {local} local, {nonlocal} non-local with witnesses", rings.len()))
}

fn ac6() -> Outcome {
    let mut counts = Vec::new();
    for d in ["dual(gf(2))@gf(2)", "dual(gf(3))@gf(3)"] {
        let a = KAlgebra::parse(d).unwrap();
        let all = all_matrices(&a);
        let sweep = totality_sweep(&a, &all);
        ensure(sweep.mismatches.is_empty(), || {
            format!("{d}: {}", sweep.mismatches[0].display(a.ring()))
        })?;
        counts.push(format!("{}/{}", sweep.total, all.len()));
    }

    let a = KAlgebra::parse("dual(gf(3))@gf(3)").unwrap();
    let r = a.ring();
    for m in all_matrices(&a) {
        if !satisfies_total_condition(&a, &m) {
            continue;
        }
        let t = transform(&a, &m).unwrap().total_table().unwrap();
        let mut img = t.clone();
        img.sort_unstable();
        img.dedup();
        let affine = img.len() == r.size() && is_affine_table(&a, &t);
        ensure(affine == (m.b == r.zero()), || format!("gf(3): {}", m.display(r)))?;
    }

    let a = KAlgebra::parse("dual(gf(2))@gf(2)").unwrap();
    let (r, line) = (a.ring(), a.line());
    let e = r.parse_element("e").unwrap();
    let delta = Matrix2::new(r.one(), e, r.zero(), r.add(r.one(), e));
    let t = transform(&a, &delta).unwrap().total_table().ok_or("delta not total")?;
    ensure(r.elements().all(|z| t[z.index()] == z), || "delta' is not the identity".into())?;
    let perm = line.permutation(&delta).unwrap();
    let (inf, p) = (line.infinity(), line.point_of((r.one(), e)).unwrap());
    ensure(perm[inf] == p && perm[p] == inf, || "infinity and R(1,e) not swapped".into())?;
    let fixed = (0..line.len()).filter(|&x| perm[x] == x).count();
    ensure(fixed == 4, || format!("delta fixes {fixed} points"))?;
    let s = affine_classification(&a);
    ensure(s.affine_with_nonzero_b.contains(&delta), || "delta not in census".into())?;
    Ok(format!("total {}; delta' = id, 4 fixed points", counts.join(", ")))
}

fn ac7() -> Outcome {
    for d in ["dual(gf(3))@gf(3)", "trunc(gf(3),3)@gf(3)", "upper2(gf(3))@gf(3)"] {
        let a = KAlgebra::parse(d).unwrap();
        let r = a.ring();
        ensure(b_acts_regularly(&a), || format!("{d}: B not regular"))?;
        ensure(t_prime_is_translations(&a), || format!("{d}: T' not translations"))?;
        let (gb, gn) = (group_b(&a), group_n(&a));
        ensure(gn.is_commutative(&a) && gn.is_closed(&a), || format!("{d}: N"))?;
        for nu in &gn.members {
            for beta in &gb.members {
                ensure(commutes(&a, nu, beta).unwrap(), || {
                    format!("{d}: {} {}", nu.display(r), beta.display(r))
                })?;
            }
        }
        for &b in r.radical().members() {
            for c in r.elements() {
                let alg_side = tau_fixes(&a, c, b).unwrap();
                let geo_side = tau_fixes_geometric(&a, c, b).unwrap();
                let direct = r.mul(r.mul(b, c), b) == r.zero();
                ensure(alg_side == geo_side && alg_side == direct, || {
                    format!("{d}: b = {}, c = {}", r.label(b), r.label(c))
                })?;
            }
        }
    }
    Ok("3 algebras".into())
}

fn ac8() -> Outcome {
    let mut out = Vec::new();
    for (k, t_orbit, n_orbit, equal) in [("gf(3)", 9, 9, true), ("gf(5)", 25, 25, true), ("gf(4)", 4, 16, false)] {
        let a = Example::Dual.algebra(&k.parse().unwrap()).unwrap();
        for t in a.field().elements().skip(1) {
            let c = compare_orbits(&a, t).unwrap();
            ensure(
                c.t_orbit == t_orbit && c.n_orbit == n_orbit && c.equal == equal && c.t_subset_of_n,
                || format!("{k}: {c:?}"),
            )?;
        }
        out.push(format!("{k} {t_orbit}/{n_orbit}"));
    }
    Ok(out.join(", "))
}

fn ac9() -> Outcome {
    let a = Example::Ternion.algebra(&"gf(3)".parse().unwrap()).unwrap();
    for t in [1, 2] {
        let rep = ternion_classify(&a, Elem::from_index(t)).unwrap();
        ensure(rep.vertical_lines_invariant, || format!("t={t}: verticals"))?;
        ensure(rep.cone_fixed, || format!("t={t}: cone"))?;
        ensure(rep.plane_maps_onto_paraboloid, || format!("t={t}: plane image"))?;
        ensure(rep.planar_shears, || format!("t={t}: shears"))?;
        ensure(rep.v_translates_of_c == rep.v_family - 1, || {
            format!("t={t}: {} of {} translates", rep.v_translates_of_c, rep.v_family - 1)
        })?;
    }
    Ok("t = 1, 2".into())
}

fn ac10() -> Outcome {
    let r = ring("anormal(gf(3))");
    let (line, _) = line_of(&r);
    // 1 - j = 1 + 2j over GF(3)
    let p = line
        .point_of((r.parse_element("1+2j").unwrap(), r.parse_element("1+j").unwrap()))
        .map_err(|e| e.to_string())?;
    let origin = line.point_of((r.zero(), r.one())).unwrap();
    ensure(!line.is_distant(p, origin), || "R(1-j,1+j) distant from R(0,1)".into())?;
    ensure(!r.is_unit(r.parse_element("1+j").unwrap()), || "1+j is a unit".into())?;
    let in_image = r.elements().any(|z| line.find((z, r.one())) == Some(p));
    ensure(!in_image, || "R(1-j,1+j) in the image of iota".into())?;
    Ok(format!("{} not in R^iota", line.label(p)))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1 radicals", ac1, 1),
        ("AC2 parallelism definitions agree", ac2, 10),
        ("AC3 equivalence and class sizes", ac3, 5),
        ("AC4 no proper neighbourhood inclusion", ac4, 5),
        ("AC5 locality dichotomy", ac5, 30),
        ("AC6 totality", ac6, 60),
        ("AC7 group laws", ac7, 30),
        ("AC8 dual model orbits", ac8, 5),
        ("AC9 ternion model", ac9, 30),
        ("AC10 anormal counterexample", ac10, 1),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let slow = took > Duration::from_secs(limit);
        let verdict = match (&outcome, slow) {
            (Ok(_), false) => "PASS",
            _ => "FAIL",
        };
        let info = match &outcome {
            Ok(s) => s.clone(),
            Err(e) => e.clone(),
        };
        let over = if slow { " over budget" } else { "" };
        println!("{verdict} {name}: {info} ({:.2}s / {limit}s{over})", took.as_secs_f64());
        if verdict == "FAIL" {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
