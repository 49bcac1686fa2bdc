//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Every input is generated from fixed seeds.

mod common;

use std::time::{Duration, Instant};

use hsl_core::admissible::Classifier;
use hsl_core::generate::{random_domain_1d, random_hierarchy, random_line, random_manifold_domain};
use hsl_core::hierarchy::{
    check_basis_conditions_with, check_pou_conditions_with, check_support_nesting, pou_weights,
    PouOutcome,
};
use hsl_core::splinebasis::rat;
use hsl_core::*;
use rand::Rng;

use common::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

const DEGREES: [(u32, u32); 9] = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)];

/// Formula, B-spline count and rank oracle agree on admissible domains.
fn dimension_triangle() -> Outcome {
    let start = Instant::now();
    let grid = Grid2::uniform(10, 10, rat(1));
    let mut classifier = Classifier::new();
    let mut failures = Vec::new();
    let mut tested = 0;
    for (idx, &(m, n)) in DEGREES.iter().enumerate() {
        let mut r = rng(1000 + idx as u64);
        let mut found = 0;
        let mut drawn = 0;
        while found < 200 && drawn < 200_000 {
            drawn += 1;
            let dom = random_manifold_domain(&mut r, 10);
            if !classifier.in_class_a2(&dom, m - 1, n - 1, Route::A).unwrap() {
                continue;
            }
            found += 1;
            let formula = dim_formula(m, n, &face_counts(&dom));
            let count = effective_bsplines_2d(m, n, &dom, &grid, 0).unwrap().len() as i64;
            let oracle = dim_oracle(&unit_mesh(&dom), m, n).unwrap();
            if formula != count || count != oracle {
                failures.push(format!("({m},{n}) {:?}: {formula}/{count}/{oracle}", dom.cells()));
            }
        }
        tested += found;
        if found < 200 {
            failures.push(format!("({m},{n}): only {found} admissible domains generated"));
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(15 * 60);
    outcome(
        pass,
        format!(
            "{tested} domains over 9 degree pairs, {} failures, {:.1?}{}",
            failures.len(),
            elapsed,
            failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    )
}

/// The gap-1 fixtures separate the B-spline count from the dimension.
fn negative_controls() -> Outcome {
    let d1 = hsl_core::fixtures::gap1_domain_1d();
    let n1 = effective_bsplines_1d(2, &d1).len();
    let f1 = dim_spline_1d(2, &d1);
    let d2 = hsl_core::fixtures::gap1_domain();
    let grid = Grid2::uniform(3, 2, rat(1));
    let n2 = effective_bsplines_2d(2, 1, &d2, &grid, 0).unwrap().len() as i64;
    let oracle = dim_oracle(&unit_mesh(&d2), 2, 1).unwrap();
    let formula = dim_formula(2, 1, &face_counts(&d2));
    let report = verify_basis(&hsl_core::fixtures::gap1_mesh(), 2, 1).unwrap();
    let pass = n1 == 5 && f1 == 6 && n2 != oracle && (report.rank as i64) < formula;
    outcome(
        pass,
        format!(
            "1D: N={n1} formula={f1}; 2D: B-splines={n2} oracle={oracle} formula={formula} restricted rank={}",
            report.rank
        ),
    )
}

fn fuzz_domains(seed: u64, count: usize) -> Vec<Domain2D> {
    let mut r = rng(seed);
    (0..count).map(|_| random_manifold_domain(&mut r, 10)).collect()
}

/// Both recursion routes of the class definition agree.
fn route_coherence(domains: &[Domain2D]) -> Outcome {
    let mut classifier = Classifier::new();
    let mut disagreements = 0;
    let mut queries = 0;
    for dom in domains {
        for k1 in 0..=4u32 {
            for k2 in 0..=4 - k1 {
                queries += 1;
                if classifier.classify(dom, k1, k2, Route::Both).is_err() {
                    disagreements += 1;
                }
            }
        }
    }
    outcome(
        disagreements == 0,
        format!("{} domains, {queries} class queries, {disagreements} disagreements", domains.len()),
    )
}

/// Closed-form dilated counts equal direct counts on admissible domains.
fn dilated_counts(domains: &[Domain2D]) -> Outcome {
    let mut classifier = Classifier::new();
    let mut checked = 0;
    let mut bad = 0;
    for dom in domains {
        let base = face_counts(dom);
        for k1 in 0..=4u32 {
            for k2 in 0..=4 - k1 {
                if !classifier.in_class_a2(dom, k1, k2, Route::A).unwrap() {
                    continue;
                }
                checked += 1;
                let p = dilated_face_counts(&base, k1, k2);
                let a = face_counts(&dilate_2d(dom, k1, k2).unwrap());
                if (p.f2, p.f1h, p.f1v, p.f0) != (a.f2, a.f1h, a.f1v, a.f0) {
                    bad += 1;
                }
            }
        }
    }
    outcome(
        bad == 0 && checked > 0,
        format!("{checked} admissible (domain, k1, k2) cases, {bad} mismatches"),
    )
}

/// Random hierarchies satisfying `accept`, with random degrees up to 3.
fn hierarchies<F>(seed: u64, wanted: usize, max_draws: usize, mut accept: F) -> Vec<(HierarchicalMesh, u32, u32)>
where
    F: FnMut(&HierarchicalMesh, u32, u32) -> bool,
{
    let mut r = rng(seed);
    let mut out = Vec::new();
    for _ in 0..max_draws {
        if out.len() == wanted {
            break;
        }
        let depth = r.random_range(2..=3);
        let (m, n) = (r.random_range(1..=3), r.random_range(1..=3));
        let base = if depth == 3 { 6 } else { 8 };
        let Some(h) = random_hierarchy(&mut r, depth, base) else { continue };
        if validate_hierarchy(&h).is_ok() && accept(&h, m, n) {
            out.push((h, m, n));
        }
    }
    out
}

/// Line insertion preserves class membership and the basis conditions.
fn line_insertion() -> Outcome {
    let mut r = rng(5000);
    let mut classifier = Classifier::new();
    let mut broken = 0;
    let mut pairs = 0;
    while pairs < 500 {
        let dom = random_manifold_domain(&mut r, 10);
        let (k1, k2) = (r.random_range(0..=3), r.random_range(0..=3));
        let tilde = r.random_bool(0.5);
        let member = |c: &mut Classifier, d: &Domain2D| {
            if tilde {
                c.in_class_a2_tilde(d, k1, k2).unwrap()
            } else {
                c.in_class_a2(d, k1, k2, Route::A).unwrap()
            }
        };
        if !member(&mut classifier, &dom) {
            continue;
        }
        pairs += 1;
        let axis = if r.random_bool(0.5) { Axis::X } else { Axis::Y };
        let split = dom.split_line(axis, r.random_range(-1..=10));
        if !member(&mut classifier, &split) {
            broken += 1;
        }
    }
    let meshes = hierarchies(5001, 100, 20_000, |h, m, n| {
        check_basis_conditions_with(h, m, n, &mut classifier).unwrap().iter().all(|&b| b)
    });
    let mut r = rng(5002);
    let mut mesh_broken = 0;
    for (h, m, n) in &meshes {
        let level = r.random_range(0..h.depth());
        let (axis, coord) = random_line(&mut r, h, level);
        let refined = refine(h, axis, &coord, level).unwrap();
        if !check_basis_conditions_with(&refined, *m, *n, &mut classifier).unwrap().iter().all(|&b| b) {
            mesh_broken += 1;
        }
    }
    outcome(
        broken == 0 && mesh_broken == 0 && meshes.len() == 100,
        format!(
            "{pairs} (domain, line) pairs, {broken} lost membership; {} (hierarchy, line, level) triples, {mesh_broken} lost the basis conditions",
            meshes.len()
        ),
    )
}

/// Kraft selection is a basis under the ring conditions.
fn hierarchical_basis() -> Outcome {
    let start = Instant::now();
    let demo = verify_basis(&hsl_core::fixtures::demo2(), 2, 2).unwrap();
    let demo_ok = demo.selected == 132 && demo.certified();
    let mut classifier = Classifier::new();
    let meshes = hierarchies(6000, 25, 20_000, |h, m, n| {
        check_basis_conditions_with(h, m, n, &mut classifier).unwrap().iter().all(|&b| b)
    });
    let mut uncertified = Vec::new();
    for (h, m, n) in &meshes {
        let report = verify_basis(h, *m, *n).unwrap();
        if !report.certified() {
            uncertified.push(format!("({m},{n}) {report:?}"));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        demo_ok && uncertified.is_empty() && meshes.len() >= 25 && elapsed < Duration::from_secs(600),
        format!(
            "demo2 |K|={} rank={} dim={}; {} fuzzed hierarchies ({} with every level active), {} uncertified; {:.1?}",
            demo.selected,
            demo.rank,
            demo.dim,
            meshes.len(),
            all_levels_active(&meshes),
            uncertified.len(),
            elapsed
        ),
    )
}

/// Hierarchies in which every level contributes selected functions.
fn all_levels_active(meshes: &[(HierarchicalMesh, u32, u32)]) -> usize {
    meshes
        .iter()
        .filter(|(h, m, n)| kraft_select(h, *m, *n).unwrap().levels.iter().all(|l| !l.is_empty()))
        .count()
}

fn pou_meshes() -> Vec<(HierarchicalMesh, u32, u32)> {
    let mut classifier = Classifier::new();
    hierarchies(7000, 10, 50_000, |h, m, n| {
        check_pou_conditions_with(h, m, n, &mut classifier).unwrap().hold()
    })
}

fn pou_certified(h: &HierarchicalMesh, m: u32, n: u32) -> bool {
    let sel = kraft_select(h, m, n).unwrap();
    pou_weights(h, m, n, &sel).unwrap().certified()
}

/// Positive partition of unity under the stronger conditions.
fn positive_pou(meshes: &[(HierarchicalMesh, u32, u32)]) -> Outcome {
    let demo = hsl_core::fixtures::demo2();
    let sel = kraft_select(&demo, 2, 2).unwrap();
    let demo_ok = match pou_weights(&demo, 2, 2, &sel).unwrap() {
        PouOutcome::Weights { weights, positive, residual_zero } => {
            weights.len() == 132 && positive && residual_zero
        }
        _ => false,
    };
    let failed = meshes.iter().filter(|(h, m, n)| !pou_certified(h, *m, *n)).count();
    outcome(
        demo_ok && failed == 0 && meshes.len() >= 10,
        format!(
            "demo2 certified: {demo_ok}; {} fuzzed hierarchies ({} with every level active), {failed} without positive exact weights",
            meshes.len(),
            all_levels_active(meshes)
        ),
    )
}

/// Refinement keeps supports nested and the partition of unity positive.
fn support_nesting(meshes: &[(HierarchicalMesh, u32, u32)]) -> Outcome {
    let mut r = rng(8000);
    let mut refinements = 0;
    let mut problems = Vec::new();
    let mut candidates: Vec<(HierarchicalMesh, u32, u32)> = vec![(hsl_core::fixtures::demo2(), 2, 2)];
    candidates.extend(meshes.iter().cloned());
    for (h, m, n) in &candidates {
        for _ in 0..3 {
            let level = r.random_range(0..h.depth());
            let (axis, coord) = random_line(&mut r, h, level);
            let refined = refine(h, axis, &coord, level).unwrap();
            refinements += 1;
            let nesting = check_support_nesting(h, &refined, *m, *n, level).unwrap();
            if !nesting.holds {
                problems.push(format!("nesting fails at {:?}", nesting.counterexample));
            }
            if !pou_certified(&refined, *m, *n) {
                problems.push(format!("({m},{n}) refined at level {level} by {axis} = {coord} loses positivity"));
            }
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "{refinements} refinements of {} POU-certified hierarchies, {} failures{}",
            candidates.len(),
            problems.len(),
            problems.first().map(|p| format!("; first: {p}")).unwrap_or_default()
        ),
    )
}

/// Univariate statements, 1000 cases each.
fn univariate() -> Outcome {
    let mut r = rng(9000);
    let mut failures = Vec::new();
    // union commutes with dilatation
    for _ in 0..1000 {
        let (a, b) = (random_domain_1d(&mut r, 40, 0), random_domain_1d(&mut r, 40, 0));
        let k = r.random_range(0..=6);
        if dilate_1d(&a.union(&b), k).unwrap() != dilate_1d(&a, k).unwrap().union(&dilate_1d(&b, k).unwrap()) {
            failures.push("union");
        }
    }
    // intersection commutes with a unit dilatation when both sides are cell unions
    let mut inter_cases = 0;
    while inter_cases < 1000 {
        let (a, b) = (random_domain_1d(&mut r, 20, 0), random_domain_1d(&mut r, 20, 0));
        let (da, db) = (dilate_1d(&a, 1).unwrap(), dilate_1d(&b, 1).unwrap());
        if !intersection_is_cell_union(&a, &b) || !intersection_is_cell_union(&da, &db) {
            continue;
        }
        inter_cases += 1;
        if da.intersection(&db) != dilate_1d(&a.intersection(&b), 1).unwrap() {
            failures.push("intersection dilatation");
        }
    }
    // intersections of A¹₁ domains stay in A¹₁
    let mut class_cases = 0;
    while class_cases < 1000 {
        let (a, b) = (random_domain_1d(&mut r, 30, 0), random_domain_1d(&mut r, 30, 0));
        if !in_class_a1(&a, 1) || !in_class_a1(&b, 1) || !intersection_is_cell_union(&a, &b) {
            continue;
        }
        class_cases += 1;
        if !in_class_a1(&a.intersection(&b), 1) {
            failures.push("intersection class");
        }
    }
    // dimension formula = B-spline count on A¹_{m-1}, with a rank cross-check
    let mut dim_cases = 0;
    while dim_cases < 1000 {
        let m = r.random_range(1..=4);
        let dom = random_domain_1d(&mut r, 30, 0);
        if !in_class_a1(&dom, m - 1) {
            continue;
        }
        dim_cases += 1;
        let formula = dim_spline_1d(m, &dom);
        if formula != effective_bsplines_1d(m, &dom).len() as i64 {
            failures.push("count");
        }
        if dim_cases % 5 == 0 && formula != spline_dim_1d_oracle(m, &dom) {
            failures.push("rank");
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "1000 union, {inter_cases} intersection, {class_cases} class, {dim_cases} dimension cases; {} failures{}",
            failures.len(),
            failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
        ),
    )
}

fn main() {
    let start = Instant::now();
    let mut all_pass = true;
    let mut run = |id: u32, title: &str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let o = f();
        report(id, title, o.pass, &format!("{} [{:.1?}]", o.detail, t.elapsed()));
        all_pass &= o.pass;
    };
    let domains = fuzz_domains(3000, 2000);
    let pou = pou_meshes();
    run(1, "dimension triangle", &mut dimension_triangle);
    run(2, "negative controls", &mut negative_controls);
    run(3, "route coherence", &mut || route_coherence(&domains));
    run(4, "dilated face counts", &mut || dilated_counts(&domains));
    run(5, "line-insertion stability", &mut line_insertion);
    run(6, "hierarchical basis", &mut hierarchical_basis);
    run(7, "positive partition of unity", &mut || positive_pou(&pou));
    run(8, "support nesting under refinement", &mut || support_nesting(&pou));
    run(9, "univariate suite", &mut univariate);
    println!("acceptance finished in {:.1?}", start.elapsed());
    if !all_pass {
        std::process::exit(1);
    }
}
