//! Theorem suites that run exhaustive checks on one ring, algebra or model
//! and collect the outcome as a serializable report.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::chaintrafo::{
    self, affine_classification, all_matrices, b_acts_regularly, beta_polynomial, factorization,
    gamma_apply, gamma_formula, group_b, group_n, group_t, n_fixes_parallel_class,
    sample_matrices, satisfies_total_condition, t_prime_is_translations, tau_fixes,
    tau_fixes_geometric, totality_sweep, transform, AlgebraDescriptor, KAlgebra,
};
use crate::error::Result;
use crate::models::{self, Example};
use crate::projline::{is_admissible, is_completable, DistantGraph, Matrix2, ProjectiveLine, QuotientLine};
use crate::radpar::{
    compare_relations, is_equivalence, is_parallel_def, is_parallel_quot, parallel_matrix,
    proper_neighbourhood_inclusion,
};
use crate::ring::{build_ring_with, catalog, BuildOptions, Elem, Ideal, Ring, RingDescriptor};

pub const SCHEMA: u32 = 1;

/// Rings up to this size get the full `|R|⁴` matrix sweep.
pub const FULL_SWEEP_MAX: usize = 9;
/// Matrices sampled on larger rings.
pub const SAMPLED_MATRICES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub suite: String,
    pub descriptor: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    fn new(suite: &str, descriptor: impl ToString) -> Self {
        VerificationReport {
            schema: SCHEMA,
            suite: suite.into(),
            descriptor: descriptor.to_string(),
            checks: Vec::new(),
            elapsed_ms: None,
        }
    }

    /// Records a check. The witness is only computed when the check fails.
    fn check(&mut self, name: &str, passed: bool, witness: impl FnOnce() -> String) -> &mut Check {
        self.checks.push(Check {
            name: name.into(),
            passed,
            witness: (!passed).then(witness),
            detail: None,
        });
        self.checks.last_mut().expect("just pushed")
    }

    /// Check whose witness is an optional counterexample.
    fn check_opt(&mut self, name: &str, counterexample: Option<String>) -> &mut Check {
        let passed = counterexample.is_none();
        self.checks.push(Check {
            name: name.into(),
            passed,
            witness: counterexample,
            detail: None,
        });
        self.checks.last_mut().expect("just pushed")
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "[{}] {} {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.descriptor
        );
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!(" ({ms} ms)"));
        }
        out.push('\n');
        for c in &self.checks {
            out.push_str(&format!("  {} {}", if c.passed { "ok  " } else { "FAIL" }, c.name));
            if let Some(d) = &c.detail {
                out.push_str(&format!(": {d}"));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!(" [witness: {w}]"));
            }
            out.push('\n');
        }
        out
    }
}

trait Detail {
    fn detail(&mut self, d: impl Into<String>);
}

impl Detail for Check {
    fn detail(&mut self, d: impl Into<String>) {
        self.detail = Some(d.into());
    }
}

/// Runs `f` and stores its wall time in the report when `timings` is set.
pub fn timed(timings: bool, f: impl FnOnce() -> Result<VerificationReport>) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = f()?;
    if timings {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn ring(desc: &RingDescriptor, opts: &BuildOptions) -> Result<Arc<Ring>> {
    Ok(Arc::new(build_ring_with(desc, opts)?))
}

fn first<T>(mut it: impl Iterator<Item = T>, show: impl FnOnce(T) -> String) -> Option<String> {
    it.next().map(show)
}

pub fn verify_ring(desc: &RingDescriptor, opts: &BuildOptions) -> Result<VerificationReport> {
    let r = ring(desc, opts)?;
    let mut rep = VerificationReport::new("ring", desc);
    rep.check_opt("axioms", r.check_axioms().err());
    let left = r.radical();
    let right = r.jacobson_radical_right();
    rep.check("radical-left-equals-right", left.members() == right.members(), || {
        format!("{} vs {}", r.format_set(left.members()), r.format_set(right.members()))
    })
    .detail(format!("rad = {}", r.format_set(left.members())));
    rep.check_opt(
        "radical-is-two-sided-ideal",
        Ideal::new(&r, left.members().iter().copied()).err().map(|e| e.to_string()),
    );
    let e = r.nil_exponent();
    rep.check_opt(
        "radical-is-nil",
        first(
            left.members().iter().filter(|&&y| r.pow(y, e) != r.zero()),
            |y| r.label(*y).to_string(),
        ),
    );
    let nonunits = r.nonunits();
    let local = r.is_local();
    rep.check("locality-criterion", local == (nonunits == left.members()), || {
        format!("nonunits {}", r.format_set(&nonunits))
    })
    .detail(format!("local: {local}"));
    rep.check_opt(
        "inverses-two-sided",
        first(
            r.units().filter(|&u| {
                let v = r.inverse(u).expect("unit");
                r.mul(u, v) != r.one() || r.mul(v, u) != r.one()
            }),
            |u| r.label(u).to_string(),
        ),
    );
    Ok(rep)
}

pub fn verify_projline(desc: &RingDescriptor, opts: &BuildOptions, seed: u64) -> Result<VerificationReport> {
    let r = ring(desc, opts)?;
    let line = ProjectiveLine::enumerate(Arc::clone(&r));
    let graph = DistantGraph::build(&line);
    let mut rep = VerificationReport::new("projline", desc);
    let admissible = r
        .elements()
        .flat_map(|a| r.elements().map(move |b| (a, b)))
        .filter(|&p| is_admissible(&r, p))
        .count();
    let covered: usize = line.points().iter().map(|p| p.orbit().len()).sum();
    rep.check("orbits-partition-admissible-pairs", covered == admissible, || {
        format!("{covered} pairs in orbits, {admissible} admissible")
    })
    .detail(format!("{} points", line.len()));
    if r.size() <= 16 {
        rep.check_opt(
            "unimodular-equals-completable",
            first(
                r.elements()
                    .flat_map(|a| r.elements().map(move |b| (a, b)))
                    .filter(|&p| is_admissible(&r, p) != is_completable(&r, p)),
                |p| line.format_pair(p),
            ),
        );
    }
    rep.check("distant-symmetric", graph.is_symmetric(), String::new);
    rep.check("distant-antireflexive", graph.is_antireflexive(), String::new);
    rep.check_opt(
        "degree-equals-ring-size",
        first((0..line.len()).filter(|&p| graph.degree(p) != r.size()), |p| line.label(p)),
    );
    let shim = KAlgebraFree { ring: &r };
    let gammas: Vec<Matrix2> = shim
        .sample(200, seed)
        .into_iter()
        .filter(|m| m.is_invertible(&r))
        .take(20)
        .collect();
    let mut bad = None;
    'outer: for g in &gammas {
        let perm = line.permutation(g)?;
        for p in 0..line.len() {
            for q in 0..line.len() {
                if graph.is_distant(p, q) != graph.is_distant(perm[p], perm[q]) {
                    bad = Some(format!("{} on {}, {}", g.display(&r), line.label(p), line.label(q)));
                    break 'outer;
                }
            }
        }
    }
    rep.check_opt("gl2-preserves-distance", bad)
        .detail(format!("{} sampled matrices", gammas.len()));
    Ok(rep)
}

// Matrix sampling for plain rings without an algebra structure.
struct KAlgebraFree<'a> {
    ring: &'a Ring,
}

impl KAlgebraFree<'_> {
    fn sample(&self, count: usize, seed: u64) -> Vec<Matrix2> {
        use rand::{Rng as _, SeedableRng};
        let n = self.ring.size();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut e = || Elem::from_index(rng.gen_range(0..n));
        (0..count).map(|_| Matrix2::new(e(), e(), e(), e())).collect()
    }
}

pub fn verify_parallelism(desc: &RingDescriptor, opts: &BuildOptions) -> Result<VerificationReport> {
    let r = ring(desc, opts)?;
    let line = ProjectiveLine::enumerate(Arc::clone(&r));
    let graph = DistantGraph::build(&line);
    let quot = QuotientLine::by_radical(&line);
    let mut rep = VerificationReport::new("parallelism", desc);
    let n = line.len();
    let pairs = || (0..n).flat_map(|p| (0..n).map(move |q| (p, q)));
    rep.check_opt(
        "definition-equals-quotient",
        first(
            pairs().filter(|&(p, q)| is_parallel_def(&graph, p, q) != is_parallel_quot(&quot, p, q)),
            |(p, q)| format!("{} {}", line.label(p), line.label(q)),
        ),
    );
    let rel = parallel_matrix(&graph);
    rep.check("equivalence-relation", is_equivalence(&rel), String::new);
    let report = crate::radpar::parallel_classes(&line, &graph);
    let rad = r.radical().len();
    rep.check("class-size-equals-radical", report.class_size == Some(rad), || {
        format!("class sizes {:?}", report.classes.iter().map(Vec::len).collect::<Vec<_>>())
    })
    .detail(format!("{} classes of size {rad}", report.classes.len()));
    rep.check_opt(
        "no-proper-neighbourhood-inclusion",
        proper_neighbourhood_inclusion(&graph).map(|(p, q)| format!("{} {}", line.label(p), line.label(q))),
    );
    let inf = line.infinity();
    let mut class: Vec<usize> = (0..n).filter(|&x| is_parallel_def(&graph, inf, x)).collect();
    let mut coord: Vec<usize> = r
        .radical()
        .members()
        .iter()
        .map(|&b| line.find((r.one(), b)).expect("(1, b) is admissible"))
        .collect();
    class.sort_unstable();
    coord.sort_unstable();
    rep.check("class-of-infinity-is-(1,rad)", class == coord, || {
        format!("{} points vs {}", class.len(), coord.len())
    });
    rep.check_opt(
        "parallel-implies-nondistant",
        first(
            pairs().filter(|&(p, q)| p != q && is_parallel_def(&graph, p, q) && graph.is_distant(p, q)),
            |(p, q)| format!("{} {}", line.label(p), line.label(q)),
        ),
    );
    let cmp = compare_relations(&graph);
    let local = r.is_local();
    let verdict = match cmp.witness {
        Some((p, q)) => format!(
            "relations differ; non-distant, non-parallel pair {} {}",
            line.label(p),
            line.label(q)
        ),
        None => "relations coincide".into(),
    };
    let witness_ok = cmp.coincide || cmp.witness.is_some();
    rep.check("coincide-iff-local", cmp.coincide == local && witness_ok, || {
        format!("local = {local}, coincide = {}", cmp.coincide)
    })
    .detail(format!("local: {local}; {verdict}"));
    Ok(rep)
}

fn matrix_pool(alg: &KAlgebra, seed: u64) -> (Vec<Matrix2>, String) {
    if alg.ring().size() <= FULL_SWEEP_MAX {
        let all = all_matrices(alg);
        let note = format!("all {} matrices", all.len());
        (all, note)
    } else {
        let mut pool: Vec<Matrix2> = group_b(alg)
            .members
            .into_iter()
            .chain(group_t(alg).members)
            .chain(group_n(alg).members)
            .collect();
        let groups = pool.len();
        pool.extend(sample_matrices(alg, SAMPLED_MATRICES, seed));
        (pool, format!("{groups} group members + {SAMPLED_MATRICES} sampled (seed {seed:#x})"))
    }
}

pub fn verify_trafo(desc: &AlgebraDescriptor, opts: &BuildOptions, seed: u64) -> Result<VerificationReport> {
    let alg = KAlgebra::build_with(desc, *opts)?;
    let (r, k) = (alg.ring(), alg.field());
    let line = alg.line();
    let graph = alg.graph();
    let mut rep = VerificationReport::new("trafo", desc);

    let inf = line.infinity();
    let mut image: Vec<usize> = r.elements().map(|z| alg.iota(z)).collect();
    image.sort_unstable();
    let nbh: Vec<usize> = graph.neighbours(inf).ones().collect();
    rep.check("iota-bijective-onto-neighbourhood", image == nbh, String::new);
    let o = line.origin();
    let trace = alg.affine_trace((0..line.len()).filter(|&x| is_parallel_def(graph, x, o)));
    rep.check("trace-of-parallel-class-is-radical", trace == r.radical().members(), || {
        r.format_set(&trace)
    });
    let trace = alg.affine_trace((0..line.len()).filter(|&x| !graph.is_distant(x, o)));
    rep.check("trace-of-nondistant-is-nonunits", trace == r.nonunits(), || r.format_set(&trace));

    let (pool, note) = matrix_pool(&alg, seed);
    let sweep = totality_sweep(&alg, &pool);
    rep.check("totality-iff-entry-condition", sweep.mismatches.is_empty(), || {
        sweep.mismatches[0].display(r).to_string()
    })
    .detail(format!("{note}; {} invertible, {} total", sweep.invertible, sweep.total));

    let total: Vec<Matrix2> = pool
        .iter()
        .copied()
        .filter(|m| satisfies_total_condition(&alg, m))
        .collect();
    rep.check_opt(
        "factorization",
        first(
            total.iter().filter(|m| match factorization(&alg, m) {
                Some([x, y, z]) => x.mul(r, &y).mul(r, &z) != **m,
                None => true,
            }),
            |m| m.display(r).to_string(),
        ),
    );
    let invertible: Vec<&Matrix2> = pool.iter().filter(|m| m.is_invertible(r)).take(500).collect();
    rep.check_opt(
        "formula-equals-action",
        first(
            invertible.iter().filter(|m| {
                let t = transform(&alg, m).expect("invertible");
                r.elements().any(|z| t.get(z) != gamma_formula(&alg, m, z))
            }),
            |m| m.display(r).to_string(),
        ),
    );

    if r.size() <= 27 {
        let s = affine_classification(&alg);
        rep.check("total-maps-bijective", s.non_bijective.is_empty(), || {
            s.non_bijective[0].display(r).to_string()
        });
        rep.check("b-zero-maps-affine", s.nonaffine_with_zero_b.is_empty(), || {
            s.nonaffine_with_zero_b[0].display(r).to_string()
        });
        if k.size() != 2 {
            rep.check("b-nonzero-maps-nonaffine", s.affine_with_nonzero_b.is_empty(), || {
                s.affine_with_nonzero_b[0].display(r).to_string()
            });
        } else {
            rep.check("gf2-affine-census", true, String::new).detail(format!(
                "{} of {} total-condition matrices induce affine maps; {} of them have b != 0",
                s.affine,
                s.total_matrices,
                s.affine_with_nonzero_b.len()
            ));
        }
    }

    let mut poly_bad = None;
    'outer: for &b in r.radical().members() {
        let beta = Matrix2::new(r.one(), r.neg(b), r.zero(), r.one());
        for z in r.elements() {
            if beta_polynomial(&alg, b, z)? != gamma_apply(&alg, &beta, z)? {
                poly_bad = Some(format!("b = {}, z = {}", r.label(b), r.label(z)));
                break 'outer;
            }
        }
    }
    rep.check_opt("polynomial-form", poly_bad);

    let (gb, gt, gn) = (group_b(&alg), group_t(&alg), group_n(&alg));
    for g in [&gb, &gt, &gn] {
        let closed = g.is_closed(&alg);
        let comm = g.is_commutative(&alg);
        rep.check(&format!("group-{}-closed-commutative", g.kind), closed && comm, || {
            format!("closed = {closed}, commutative = {comm}")
        })
        .detail(format!("|{}| = {}", g.kind, g.len()));
    }
    rep.check("b-regular-on-class-of-infinity", b_acts_regularly(&alg), String::new);
    rep.check("t-prime-is-all-translations", t_prime_is_translations(&alg), String::new);
    rep.check_opt(
        "n-commutes-with-b",
        first(
            gn.members
                .iter()
                .flat_map(|nu| gb.members.iter().map(move |beta| (nu, beta)))
                .filter(|(nu, beta)| !chaintrafo::commutes(&alg, nu, beta).unwrap_or(false)),
            |(nu, beta)| format!("{} {}", nu.display(r), beta.display(r)),
        ),
    );
    rep.check("n-fixes-class-of-infinity", n_fixes_parallel_class(&alg), String::new);
    let mut law_bad = None;
    'law: for &b in r.radical().members() {
        for c in r.elements() {
            if tau_fixes(&alg, c, b)? != tau_fixes_geometric(&alg, c, b)? {
                law_bad = Some(format!("b = {}, c = {}", r.label(b), r.label(c)));
                break 'law;
            }
        }
    }
    rep.check_opt("fixed-point-law-bcb", law_bad);
    Ok(rep)
}

pub fn verify_model(example: Example, field: &RingDescriptor, t: Elem) -> Result<VerificationReport> {
    let alg = example.algebra(field)?;
    let k = alg.field();
    let label = format!("{}({field}) t={}", example, k.label(t));
    let mut rep = VerificationReport::new("model", label);
    match example {
        Example::Dual => {
            let d = models::dual_classify(&alg, t)?;
            rep.check("vertical-lines-invariant", d.vertical_lines_invariant, String::new);
            rep.check("cone-fixed", d.cone_fixed, String::new);
            rep.check("image-of-K-is-parabola", d.c_is_parabola, String::new);
            rep.check("regular-images-are-N-orbit", d.regular_images_are_n_orbit, String::new);
            rep.check("N-regular-on-regular-lines", d.n_regular_on_regular_lines, String::new);
            let c = models::compare_orbits(&alg, t)?;
            let expect_equal = k.characteristic() != 2;
            rep.check("T-orbit-in-N-orbit", c.t_subset_of_n, String::new);
            rep.check("orbits-equal-iff-odd-char", c.equal == expect_equal, || {
                format!("char {}, equal = {}", c.characteristic, c.equal)
            })
            .detail(format!("|C^T'| = {}, |C^N'| = {}", c.t_orbit, c.n_orbit));
            rep.check("N-orbit-parabolas", c.n_members_are_parabolas, String::new);
        }
        Example::Ternion => {
            let d = models::ternion_classify(&alg, t)?;
            rep.check("vertical-lines-invariant", d.vertical_lines_invariant, String::new);
            rep.check("cone-fixed", d.cone_fixed, String::new);
            rep.check("planar-shears", d.planar_shears, String::new);
            rep.check("plane-onto-paraboloid", d.plane_maps_onto_paraboloid, String::new)
                .detail(format!("{} points, {}", d.paraboloid_points, d.plane_image_kind));
            rep.check("regular-images-parabolas-in-H", d.regular_images_all_parabolas, String::new)
                .detail(format!("{} regular lines in z3 = 0", d.regular_line_images));
            rep.check("ruling-images-lines-in-H", d.rulings_are_lines_in_h, String::new)
                .detail(format!("{} non-regular lines in z3 = 0", d.ruling_images));
            let odd = k.characteristic() != 2;
            let others = d.v_family - 1;
            let ok = if odd { d.v_translates_of_c == others } else { d.v_translates_of_c == 0 };
            rep.check("V-translate-dichotomy", ok, || {
                format!("{} of {others} members are translates of C", d.v_translates_of_c)
            });
            rep.check("V-matches-N-orbit-translates", d.v_matches_n_orbit_translates, String::new);
        }
    }
    if k.size() != 2 {
        let m = models::model_line_set(&alg, example, t)?;
        rep.check("line-set-equals-images", m.matches_images(&alg, t)?, String::new)
            .detail(format!("{} lines", m.lines.len()));
        rep.check("line-set-is-linear-space", m.is_linear_space(alg.ring().size()), String::new);
    }
    Ok(rep)
}

/// Algebras `R@K` for catalog rings built over a proper subfield.
pub fn catalog_algebras(max_size: usize) -> Vec<AlgebraDescriptor> {
    catalog(max_size)
        .into_iter()
        .filter_map(|d| {
            let field = match &d {
                RingDescriptor::Dual(k)
                | RingDescriptor::Anormal(k)
                | RingDescriptor::Trunc(k, _)
                | RingDescriptor::Upper2(k)
                | RingDescriptor::Mat2(k) => (**k).clone(),
                _ => return None,
            };
            Some(AlgebraDescriptor { ring: d, field })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub enum SuiteItem {
    Ring(RingDescriptor),
    Projline(RingDescriptor),
    Parallelism(RingDescriptor),
    Trafo(AlgebraDescriptor),
    Model(Example, RingDescriptor, usize),
}

/// Every suite over the catalog, in canonical order.
pub fn plan_all(max_size: usize) -> Vec<SuiteItem> {
    let rings = catalog(max_size);
    let mut items: Vec<SuiteItem> = rings.iter().cloned().map(SuiteItem::Ring).collect();
    items.extend(rings.iter().cloned().map(SuiteItem::Projline));
    items.extend(rings.iter().cloned().map(SuiteItem::Parallelism));
    items.extend(catalog_algebras(max_size).into_iter().map(SuiteItem::Trafo));
    for (ex, size) in [(Example::Dual, 2), (Example::Ternion, 3)] {
        for f in ["gf(3)", "gf(4)", "gf(5)"] {
            let field: RingDescriptor = f.parse().expect("catalog field");
            let q = field_size(&field);
            if q.pow(size) <= max_size {
                for t in 1..q {
                    items.push(SuiteItem::Model(ex, field.clone(), t));
                }
            }
        }
    }
    items
}

fn field_size(f: &RingDescriptor) -> usize {
    match f {
        RingDescriptor::Gf(p) => *p as usize,
        RingDescriptor::Gf4 => 4,
        _ => 0,
    }
}

pub fn run_item(item: &SuiteItem, opts: &BuildOptions, seed: u64, timings: bool) -> Result<VerificationReport> {
    timed(timings, || match item {
        SuiteItem::Ring(d) => verify_ring(d, opts),
        SuiteItem::Projline(d) => verify_projline(d, opts, seed),
        SuiteItem::Parallelism(d) => verify_parallelism(d, opts),
        SuiteItem::Trafo(d) => verify_trafo(d, opts, seed),
        SuiteItem::Model(ex, f, t) => verify_model(*ex, f, Elem::from_index(*t)),
    })
}

/// Runs the items (in parallel when enabled) and returns the reports in
/// the order given.
pub fn run_items(items: &[SuiteItem], opts: &BuildOptions, seed: u64, timings: bool) -> Vec<Result<VerificationReport>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(|i| run_item(i, opts, seed, timings)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(|i| run_item(i, opts, seed, timings)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaintrafo::DEFAULT_SEED;

    fn opts() -> BuildOptions {
        BuildOptions::default()
    }

    #[test]
    fn suites_pass_on_examples() {
        for d in ["zmod(6)", "dual(gf(3))", "upper2(gf(2))", "mat2(gf(2))"] {
            let d: RingDescriptor = d.parse().unwrap();
            for rep in [
                verify_ring(&d, &opts()).unwrap(),
                verify_projline(&d, &opts(), DEFAULT_SEED).unwrap(),
                verify_parallelism(&d, &opts()).unwrap(),
            ] {
                assert!(rep.passed(), "{}", rep.render());
            }
        }
        for d in ["dual(gf(2))@gf(2)", "trunc(gf(3),3)@gf(3)"] {
            let rep = verify_trafo(&d.parse().unwrap(), &opts(), DEFAULT_SEED).unwrap();
            assert!(rep.passed(), "{}", rep.render());
        }
        let rep = verify_model(Example::Dual, &"gf(4)".parse().unwrap(), Elem::from_index(2)).unwrap();
        assert!(rep.passed(), "{}", rep.render());
    }

    #[test]
    fn report_shape() {
        let rep = verify_parallelism(&"zmod(6)".parse().unwrap(), &opts()).unwrap();
        let json: serde_json::Value = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["schema"], 1);
        assert_eq!(json["suite"], "parallelism");
        assert!(json.get("elapsed_ms").is_none());
        let verdict = rep.checks.iter().find(|c| c.name == "coincide-iff-local").unwrap();
        assert!(verdict.detail.as_ref().unwrap().contains("non-parallel pair"));
        let timed = timed(true, || verify_ring(&"zmod(4)".parse().unwrap(), &opts())).unwrap();
        assert!(timed.elapsed_ms.is_some());
    }

    #[test]
    fn failed_checks_carry_witnesses() {
        let mut rep = VerificationReport::new("x", "y");
        rep.check("a", false, || "w".into());
        rep.check("b", true, || unreachable!());
        rep.check_opt("c", Some("pair".into()));
        assert!(!rep.passed());
        assert!(rep.failures().all(|c| c.witness.is_some()));
        assert!(rep.render().contains("FAIL c [witness: pair]"));
    }

    #[test]
    fn plan_is_deterministic() {
        let names = |v: Vec<SuiteItem>| format!("{v:?}");
        assert_eq!(names(plan_all(27)), names(plan_all(27)));
        let algebras: Vec<String> = catalog_algebras(9).iter().map(|a| a.to_string()).collect();
        assert!(algebras.contains(&"dual(gf(3))@gf(3)".to_string()));
    }
}
