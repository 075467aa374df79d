//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::{existence_family, named_cases, random_cases, Case};
use qpsurf::algebra::oracle::default_truncation;
use qpsurf::algebra::{truncated_quotient, TruncatedAlgebra};
use qpsurf::cli::{run_args, EXIT_HYPOTHESES};
use qpsurf::invariants::{self, algebra_dimension, basis_count, cartan_matrix};
use qpsurf::path::ScalarAssignment;
use qpsurf::quiver::{adjacency_quiver, OrbitKind, Quiver};
use qpsurf::surface::{nice_triangulation, sphere_base, Triangulation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const RANDOM_SEED: u64 = 2026;

struct Built {
    name: String,
    t: Triangulation,
    a: TruncatedAlgebra,
    elapsed: Duration,
}

fn build(case: &Case) -> Built {
    let start = Instant::now();
    let q = adjacency_quiver(&case.triangulation).unwrap();
    let c = match case.scalars {
        Some(s) => ScalarAssignment::parse(s).unwrap(),
        None => ScalarAssignment::default_for(&q),
    };
    let a = truncated_quotient(&q, &c, default_truncation(&q)).unwrap();
    Built { name: case.name.clone(), t: case.triangulation.clone(), a, elapsed: start.elapsed() }
}

fn report(results: &mut Vec<bool>, n: usize, title: &str, failures: &[String], summary: String) {
    let pass = failures.is_empty();
    println!("criterion {n} [{}] {title}: {summary}", if pass { "PASS" } else { "FAIL" });
    for f in failures {
        println!("    {f}");
    }
    results.push(pass);
}

/// f³ = id, bar identities, f²(a) = g^(n-1)(bar a) with n = n(bar a),
/// xy-transitivity, Σ n_p = 2·arcs, arcs = 6g-6+3P, basis count.
fn structural_failures(name: &str, t: &Triangulation, q: &Quiver) -> Vec<String> {
    let mut out = Vec::new();
    let mut fail = |what: &str| out.push(format!("{name}: {what}"));
    for a in q.arrows() {
        let b = q.bar(a);
        if q.f(q.f(q.f(a))) != a {
            fail("f³ ≠ id");
        }
        if q.bar(b) != a || b == a || q.source(b) != q.source(a) {
            fail("bar is not a fixed-point-free involution preserving sources");
        }
        if q.g(q.f_inv(a)) != b {
            fail("bar(a) ≠ g(f⁻¹(a))");
        }
        if q.f(q.f(a)) != q.g_pow(b, q.n(b) - 1) {
            fail("f²(a) ≠ g^(n-1)(bar a)");
        }
    }
    if q.orbit_partition(OrbitKind::F).classes.iter().any(|c| c.len() != 3) {
        fail("f-orbit of size ≠ 3");
    }
    if !q.xy_transitivity() {
        fail("xy-transitivity");
    }
    let cycles = t.puncture_cycles();
    if cycles.iter().map(|p| p.n_p).sum::<usize>() != 2 * t.arc_count() {
        fail("Σ n_p ≠ 2·arcs");
    }
    let s = t.surface().unwrap();
    if 6 * s.genus + 3 * s.punctures != t.arc_count() + 6 {
        fail("arcs ≠ 6g-6+3P");
    }
    let square_sum: usize = cycles.iter().map(|p| p.n_p * p.n_p).sum();
    if basis_count(q) != square_sum {
        fail("2|Q0| + Σ(n_a - 1) ≠ Σ n_p²");
    }
    out
}

fn main() {
    let mut results = Vec::new();
    let named: Vec<Built> = named_cases().iter().map(build).collect();
    let randoms: Vec<Built> = random_cases(25, RANDOM_SEED).iter().map(build).collect();
    let all_cases: Vec<&Built> = named.iter().chain(&randoms).collect();

    // 1
    let expected = [36, 36, 66, 96];
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    for (b, &want) in named.iter().zip(&expected) {
        let q = b.a.quiver();
        let max_n = q.arrows().map(|x| q.n(x)).max().unwrap();
        let tail_zero = b.a.dims_per_degree().iter().skip(max_n + 1).all(|&d| d == 0);
        if b.a.dimension() != want || algebra_dimension(&b.t) != want || !tail_zero || b.elapsed.as_secs_f64() >= 60.0 {
            failures.push(format!(
                "{}: oracle {} formula {} tail_zero {} in {:.2?}",
                b.name,
                b.a.dimension(),
                algebra_dimension(&b.t),
                tail_zero,
                b.elapsed
            ));
        }
        parts.push(format!("{} {} ({:.2?})", b.name, b.a.dimension(), b.elapsed));
    }
    report(&mut results, 1, "dimension formula", &failures, parts.join(", "));

    // 2
    let mut failures = Vec::new();
    for b in &all_cases {
        match invariants::jacobian_basis(&b.t, &b.a) {
            Ok(jb) if jb.pass => {}
            Ok(jb) => failures.push(format!(
                "{}: independent {} spans {} agree {} count {}/{}",
                b.name, jb.independent, jb.spans, jb.normal_forms_agree, jb.count, jb.expected_count
            )),
            Err(e) => failures.push(format!("{}: {e}", b.name)),
        }
    }
    let max_arcs = randoms.iter().map(|b| b.t.arc_count()).max().unwrap();
    report(
        &mut results,
        2,
        "explicit basis",
        &failures,
        format!("{} cases (4 named, {} random, max {max_arcs} arcs)", all_cases.len(), randoms.len()),
    );

    // 3
    let mut failures = Vec::new();
    for b in &all_cases {
        let cm = cartan_matrix(&b.t);
        let matches = invariants::cartan_vs_algebra(&b.t, &b.a).unwrap_or(false);
        if !(cm.pass() && matches) {
            failures.push(format!(
                "{}: entries_ok {} rank {} ≤ {} det {} matches_oracle {}",
                b.name, cm.entries_ok, cm.rank, cm.punctures, cm.determinant, matches
            ));
        }
    }
    report(&mut results, 3, "Cartan matrix", &failures, format!("{} cases", all_cases.len()));

    // 4
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    for b in &named {
        let start = Instant::now();
        let cert = invariants::symmetry_check(&b.a, 4, &mut ChaCha8Rng::seed_from_u64(RANDOM_SEED));
        let elapsed = start.elapsed() + b.elapsed;
        match cert {
            Ok(c) if c.verdict && elapsed.as_secs_f64() < 120.0 => {
                parts.push(format!("{} {} pairs ({:.2?})", b.name, c.pairs.len(), elapsed))
            }
            Ok(c) => failures.push(format!(
                "{}: {} failing pairs, case table {}, f-completion {}, random {} in {:.2?}",
                b.name, c.failed_pairs, c.socle_case_table, c.f_completion, c.random_trials_pass, elapsed
            )),
            Err(e) => failures.push(format!("{}: {e}", b.name)),
        }
    }
    report(&mut results, 4, "symmetry", &failures, parts.join(", "));

    // 5
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    for b in &named {
        match invariants::center_basis(&b.a) {
            Ok(cd) if cd.pass => parts.push(format!("{} {}", b.name, cd.dimension)),
            Ok(cd) => failures.push(format!(
                "{}: dimension {} (want {}), products vanish {}",
                b.name, cd.dimension, cd.expected_dimension, cd.products_vanish
            )),
            Err(e) => failures.push(format!("{}: {e}", b.name)),
        }
    }
    report(&mut results, 5, "center", &failures, parts.join(", "));

    // 6
    let mut failures = Vec::new();
    for b in &all_cases {
        match invariants::nonrigidity_check(&b.a) {
            Ok(r) if r.pass => {}
            Ok(r) => failures.push(format!("{}: {:?}", b.name, r.failures)),
            Err(e) => failures.push(format!("{}: {e}", b.name)),
        }
    }
    report(&mut results, 6, "non-rigidity", &failures, format!("{} cases", all_cases.len()));

    // 7
    let mut failures = Vec::new();
    let path = std::env::temp_dir().join(format!("qpsurf-acceptance-sphere4-{}.json", std::process::id()));
    std::fs::write(&path, sphere_base(4).unwrap().to_json()).unwrap();
    let out = run_args(["qpsurf", "verify", "--input", path.to_str().unwrap(), "--scalars", "1,1,1,1"]);
    let _ = std::fs::remove_file(&path);
    if out.code != EXIT_HYPOTHESES {
        failures.push(format!("exit code {}", out.code));
    }
    if out.report.as_deref().unwrap_or("").contains("\"verified\"") {
        failures.push("report carries a verdict".into());
    }
    let diag = out.diagnostic.unwrap_or_default();
    if !diag.contains("hypotheses not met: product of scalars equals 1") {
        failures.push(format!("diagnostic {diag:?}"));
    }
    let q = adjacency_quiver(&sphere_base(4).unwrap()).unwrap();
    let ones = ScalarAssignment::parse("1,1,1,1").unwrap();
    let a = truncated_quotient(&q, &ones, 12).unwrap();
    let dims = a.dims_per_degree().to_vec();
    let informational = if dims.iter().all(|&d| d > 0) { "nonzero" } else { "has zeros" };
    report(
        &mut results,
        7,
        "hypothesis gating",
        &failures,
        format!("exit {}, oracle dims up to N = 12 {informational}: {dims:?}", out.code),
    );

    // 8
    let mut failures = Vec::new();
    let family = existence_family();
    let mut generated: Vec<(String, Triangulation)> = Vec::new();
    for s in &family {
        let name = format!("g{}p{}", s.genus, s.punctures);
        match nice_triangulation(*s) {
            Ok(t) => {
                let valid = t.validate().is_valid() && t.surface().ok() == Some(*s);
                let cr = t.condition_report();
                let want = match (s.genus, s.punctures) {
                    (0, 4) => (true, false, false),
                    (0, 5) => (true, true, false),
                    _ => (true, true, true),
                };
                if !valid || (cr.t3, cr.t3half, cr.t4) != want {
                    failures.push(format!("{name}: valid {valid}, conditions {cr:?}, expected {want:?}"));
                }
                generated.push((name, t));
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    report(&mut results, 8, "nice triangulations", &failures, format!("{} surfaces", family.len()));

    // 9
    let mut failures = Vec::new();
    for b in &all_cases {
        failures.extend(structural_failures(&b.name, &b.t, b.a.quiver()));
    }
    for (name, t) in &generated {
        match adjacency_quiver(t) {
            Ok(q) => failures.extend(structural_failures(name, t, &q)),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    report(
        &mut results,
        9,
        "structural invariants",
        &failures,
        format!("{} triangulations", all_cases.len() + generated.len()),
    );

    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
