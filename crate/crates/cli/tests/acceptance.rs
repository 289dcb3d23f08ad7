//! Acceptance suite: every criterion runs end to end at its stated
//! tolerance and prints one pass/fail line (visible with --nocapture).
//!
//! Expected values are frozen from independent derivations: hand
//! enumeration for the small catalogs, the brute-force subset oracle in
//! this file for the A2 lattice, and the syzygy oracle for global
//! dimensions.

use std::process::Command;
use std::sync::Arc;
use std::time::Instant;
use taufold_core::algebra::parse_algebra;
use taufold_core::catalog::{build_catalog, IndecCatalog};
use taufold_core::hom::{ext_dim, hom_basis, minimal_approximation, tau, ApproxSide};
use taufold_core::rep::{submodule_lattice, Representation};
use taufold_core::subcat::{members, multiset_in, ClassSide, Engine};
use taufold_core::tau::{
    check_star, cok1, enumerate_rigid, enumerate_tau_rigid, ext_progenerator_ftors, phi,
    progenerator_of_cok1, star_classes, support_tau_tilting, torsion_lattice_bits,
    two_fold_torsion_pair, verify_bijection, verify_diagram, BijectionKind, TauRigidModule,
};

fn algebra_path(name: &str) -> String {
    format!("{}/../../algebras/{name}.alg", env!("CARGO_MANIFEST_DIR"))
}

fn engine(name: &str) -> Engine {
    let text = std::fs::read_to_string(algebra_path(name)).unwrap();
    let alg = Arc::new(parse_algebra(&text).unwrap());
    Engine::new(Arc::new(build_catalog(&alg).unwrap()))
}

fn label_set(cat: &IndecCatalog, bits: u64) -> Vec<String> {
    let mut v: Vec<String> = members(bits).iter().map(|&i| cat.labels[i].clone()).collect();
    v.sort();
    v
}

fn bits_of(e: &Engine, labels: &[&str]) -> u64 {
    labels
        .iter()
        .map(|l| e.cat.label_index(l).unwrap())
        .fold(0, |acc, i| acc | 1 << i)
}

fn cli(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_taufold"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).to_string(),
        out.status.code().unwrap_or(-1),
    )
}

fn pass(criterion: &str, detail: &str) {
    println!("acceptance {criterion}: PASS ({detail})");
}

#[test]
fn criterion_01_table1_reproduction() {
    let t0 = Instant::now();
    let e = engine("ex73");
    let tau_rigid = enumerate_tau_rigid(&e);
    assert_eq!(tau_rigid.len(), 16, "tau-rigid census");
    let two_fold = e.enumerate_nfold(2, ClassSide::Tors).unwrap();
    assert_eq!(two_fold.len(), 17, "2-fold torsion class census");

    // Table 1, frozen: basic tau-rigid module -> its 2-fold torsion class
    let table: Vec<(Vec<&str>, Vec<&str>)> = vec![
        (vec![], vec![]),
        (vec!["P1"], vec!["P1"]),
        (vec!["S2"], vec!["S2"]),
        (vec!["S3"], vec!["S3"]),
        (vec!["P2"], vec!["P2"]),
        (vec!["P3"], vec!["P3"]),
        (vec!["P1", "P2"], vec!["P1", "P2", "S2"]),
        (vec!["P1", "P3"], vec!["P1", "P3"]),
        (vec!["P1", "S3"], vec!["P1", "S3"]),
        (vec!["P2", "S2"], vec!["P2", "S2"]),
        (vec!["P3", "S2"], vec!["P3", "S2", "S3"]),
        (vec!["P3", "S3"], vec!["P3", "S3"]),
        (vec!["P2", "P3"], vec!["P2", "P3", "S3"]),
        (vec!["P1", "P3", "S3"], vec!["P1", "P3", "S3"]),
        (vec!["P1", "P2", "P3"], vec!["P1", "P2", "P3", "S2", "S3"]),
        (vec!["P2", "P3", "S2"], vec!["P2", "P3", "S2", "S3"]),
    ];
    assert_eq!(table.len(), 16);
    let mut computed: Vec<(Vec<String>, Vec<String>)> = Vec::new();
    for u in &tau_rigid {
        let c = cok1(&e, *u).unwrap();
        computed.push((label_set(&e.cat, u.0), label_set(&e.cat, c)));
    }
    for (u_labels, c_labels) in &table {
        let u: Vec<String> = u_labels.iter().map(|s| s.to_string()).collect();
        let c: Vec<String> = c_labels.iter().map(|s| s.to_string()).collect();
        assert!(
            computed.contains(&(u.clone(), c.clone())),
            "missing Table 1 row {u:?} -> {c:?}"
        );
    }
    assert_eq!(computed.len(), table.len());

    // the CLI front end agrees
    let (out, code) = cli(&[&algebra_path("ex73"), "tau-rigid"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("16 basic tau-rigid modules"), "{out}");
    let (out, code) = cli(&[&algebra_path("ex73"), "tors", "--fold", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("17 2-fold torsion classes"), "{out}");
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs() < 10, "budget exceeded: {elapsed:?}");
    pass("criterion 1 (Table 1)", &format!("16 modules, 17 classes, {elapsed:.2?}"));
}

#[test]
fn criterion_02_the_class_outside_the_image() {
    let t0 = Instant::now();
    let e = engine("ex73");
    let c = bits_of(&e, &["P2", "S3"]);
    let (ok, witness) = check_star(&e, c).unwrap();
    assert!(!ok);
    let (member, source) = witness.unwrap();
    assert_eq!(e.cat.labels[member], "S3");
    assert_eq!(label_set(&e.cat, source), vec!["P3"]);

    // it is the unique 2-fold torsion class outside the image of cok_1
    let two_fold = e.enumerate_nfold(2, ClassSide::Tors).unwrap();
    let image: std::collections::BTreeSet<u64> = enumerate_tau_rigid(&e)
        .iter()
        .map(|u| cok1(&e, *u).unwrap())
        .collect();
    let outside: Vec<u64> = two_fold.iter().copied().filter(|x| !image.contains(x)).collect();
    assert_eq!(outside, vec![c]);

    let (out, code) = cli(&[&algebra_path("ex73"), "star", "--subcat", "P2+S3"]);
    assert_eq!(code, 0);
    assert!(out.contains("false"), "{out}");
    assert!(out.contains("P3 -> S3"), "{out}");
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs() < 5, "budget exceeded: {elapsed:?}");
    pass("criterion 2 (the excluded class)", &format!("witness (S3, P3), {elapsed:.2?}"));
}

#[test]
fn criterion_03_main_bijection_round_trips() {
    let e = engine("ex73");
    let tau_rigid = enumerate_tau_rigid(&e);
    let star = star_classes(&e).unwrap();
    assert_eq!(tau_rigid.len(), 16);
    assert_eq!(star.len(), 16);
    for u in &tau_rigid {
        let c = cok1(&e, *u).unwrap();
        assert_eq!(phi(&e, c).unwrap(), u.0, "Phi(cok_1 U) != U");
    }
    for &c in &star {
        let u = phi(&e, c).unwrap();
        assert_eq!(cok1(&e, TauRigidModule(u)).unwrap(), c, "cok_1(Phi(C)) != C");
    }
    pass("criterion 3 (main bijection)", "16 round trips each way, zero failures");
}

#[test]
fn criterion_04_commuting_diagram() {
    for name in ["ex73", "a2"] {
        let e = engine(name);
        let failures = verify_diagram(&e).unwrap();
        assert!(failures.is_empty(), "{name}: {failures:?}");
    }
    pass("criterion 4 (commuting diagram)", "all legs verified on ex73 and a2");
}

/// Brute-force torsion-class oracle: a subset is a torsion class iff for
/// every assembly (multiplicity <= 2) every quotient stays inside, and
/// gluing two inside-parts never leaves. Runs on submodule lattices only,
/// independently of the closure engine.
fn oracle_torsion_classes(cat: &Arc<IndecCatalog>) -> Vec<u64> {
    let n = cat.len();
    let assemblies: Vec<(Vec<usize>, Representation)> = {
        let mut out = Vec::new();
        let mut counters = vec![0usize; n];
        'odometer: loop {
            let mut k = 0;
            loop {
                if k == n {
                    break 'odometer;
                }
                counters[k] += 1;
                if counters[k] <= 2 {
                    break;
                }
                counters[k] = 0;
                k += 1;
            }
            out.push((counters.clone(), cat.assemble(&counters)));
        }
        out
    };
    let mut classes = Vec::new();
    'subsets: for s in 0..(1u64 << n) {
        for (mults, a) in &assemblies {
            let inside = multiset_in(mults, s);
            for w in submodule_lattice(a).unwrap() {
                let (sub, _) = taufold_core::hom::sub_representation(a, &w);
                let q = taufold_core::rep::quotient(a, &w);
                let sub_m = cat.decompose(&sub).unwrap();
                let q_m = cat.decompose(&q).unwrap();
                // quotient-closed
                if inside && !multiset_in(&q_m, s) {
                    continue 'subsets;
                }
                // extension-closed
                if multiset_in(&sub_m, s) && multiset_in(&q_m, s) && !multiset_in(mults, s) {
                    continue 'subsets;
                }
            }
        }
        classes.push(s);
    }
    classes
}

#[test]
fn criterion_05_air_consistency() {
    for name in ["ex73", "a2", "nak4"] {
        let e = engine(name);
        let report = verify_bijection(&e, BijectionKind::Air).unwrap();
        assert!(report.ok(), "{name}: {:?}", report.failures);
        // the approximation route equals the pairing for every class and
        // carries disjoint T0/T1 parts (checked inside)
        for &t in &torsion_lattice_bits(&e).unwrap() {
            let p = ext_progenerator_ftors(&e, t).unwrap();
            assert!(support_tau_tilting(&e).unwrap().iter().any(|u| u.0 == p));
        }
    }
    // the a2 lattice against the brute-force subset oracle
    let e = engine("a2");
    let oracle = oracle_torsion_classes(&e.cat);
    assert_eq!(oracle.len(), 5, "A2 has five torsion classes");
    let mut lattice = torsion_lattice_bits(&e).unwrap();
    lattice.sort();
    assert_eq!(lattice, oracle);
    pass("criterion 5 (AIR)", "ex73, a2, nak4 verified; a2 lattice = oracle (5 members)");
}

#[test]
fn criterion_06_progenerator_of_cok1() {
    let t0 = Instant::now();
    let e = engine("ex73");
    for u in enumerate_tau_rigid(&e) {
        // agreement of the two routes and summand-disjointness are hard
        // failures inside; surface them here
        progenerator_of_cok1(&e, u).unwrap();
    }
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs() < 20, "budget exceeded: {elapsed:?}");
    pass("criterion 6 (progenerator of cok_1)", &format!("16 modules cross-checked, {elapsed:.2?}"));
}

/// Independent syzygy oracle for the projective dimension: iterate
/// projective-cover kernels until they vanish.
fn syzygy_pd(m: &Representation) -> usize {
    let mut cur = m.clone();
    let mut d = 0;
    loop {
        let next = taufold_core::hom::syzygy(&cur);
        if next.is_zero() {
            return d;
        }
        cur = next;
        d += 1;
    }
}

#[test]
fn criterion_07_nakayama_family() {
    for m in [3usize, 4] {
        let e = engine(&format!("nak{m}"));
        let target: u64 = (2..=m)
            .map(|v| 1u64 << e.cat.label_index(&format!("P{v}")).unwrap())
            .sum();
        let in_m = e.enumerate_nfold(m, ClassSide::Torf).unwrap();
        let in_m1 = e.enumerate_nfold(m - 1, ClassSide::Torf).unwrap();
        assert!(in_m.contains(&target), "nak{m}: target must be {m}-fold torsion-free");
        assert!(!in_m1.contains(&target), "nak{m}: target must not be {}-fold", m - 1);
        // the kernel witness is the projective chain down to P1
        let cne = e.is_cne_closed(target, m - 2, ClassSide::Torf).unwrap();
        assert!(!cne.closed);
        assert!(cne.witness.unwrap().description.contains("P1"));
        // global dimension m-1, against the syzygy oracle
        let oracle: usize = (0..e.cat.algebra.vertex_count())
            .map(|v| {
                syzygy_pd(&taufold_core::rep::structural_module(
                    &e.cat.algebra,
                    taufold_core::rep::StructuralKind::Simple,
                    v,
                ))
            })
            .max()
            .unwrap();
        assert_eq!(oracle, m - 1);
        assert_eq!(taufold_core::hom::global_dimension(&e.cat.algebra), Some(m - 1));
    }
    pass("criterion 7 (Nakayama family)", "m in {3,4}: m-fold yes, (m-1)-fold no, gldim = m-1");
}

#[test]
fn criterion_08_kernel_closure_theorem() {
    let t0 = Instant::now();
    let e = engine("ex73");
    for bits in 0..(1u64 << e.n()) {
        let suite = e.kernel_closure_suite(bits).unwrap();
        assert!(suite.all_equal, "kernel closures differ on {bits:#b}");
        let dual = e.cokernel_closure_suite(bits).unwrap();
        assert!(dual.all_equal, "cokernel closures differ on {bits:#b}");
    }
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs() < 60, "budget exceeded: {elapsed:?}");
    pass("criterion 8 (kernel closures)", &format!("3 routes agree on all 32 subcats both ways, {elapsed:.2?}"));
}

#[test]
fn criterion_09_hereditary_suite() {
    let t0 = Instant::now();
    for name in ["a2", "a3", "a4"] {
        let e = engine(name);
        let rigid = enumerate_rigid(&e);
        let tau_rigid: Vec<u64> = enumerate_tau_rigid(&e).iter().map(|u| u.0).collect();
        assert_eq!(rigid, tau_rigid, "{name}: rigid = tau-rigid");
        let report = verify_bijection(&e, BijectionKind::Hereditary).unwrap();
        assert!(report.ok(), "{name}: {:?}", report.failures);
        let two = e.enumerate_nfold(2, ClassSide::Tors).unwrap();
        let three = e.enumerate_nfold(3, ClassSide::Tors).unwrap();
        assert_eq!(two, three, "{name}: 3-fold = 2-fold");
        let two_f = e.enumerate_nfold(2, ClassSide::Torf).unwrap();
        let three_f = e.enumerate_nfold(3, ClassSide::Torf).unwrap();
        assert_eq!(two_f, three_f, "{name}: 3-fold = 2-fold (torsion-free)");
    }
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs() < 120, "budget exceeded: {elapsed:?}");
    pass("criterion 9 (hereditary)", &format!("a2, a3, a4 verified, {elapsed:.2?}"));
}

#[test]
fn criterion_10_property_suites() {
    use crate::rand_like::Lcg;

    // Wakamatsu on ex73: exhaustive over extension-closed subcats
    let e = engine("ex73");
    for s in 0..(1u64 << e.n()) {
        if e.conflation_violation(s, e.full_bits()).unwrap().is_some() {
            continue;
        }
        let addset: Vec<Representation> =
            members(s).iter().map(|&i| e.cat.indecs[i].clone()).collect();
        if addset.is_empty() {
            continue;
        }
        for m in &e.cat.indecs {
            let approx = minimal_approximation(ApproxSide::Right, m, &addset);
            let ker = approx.map.kernel().0;
            for &i in &members(s) {
                assert_eq!(
                    ext_dim(&e.cat.indecs[i], &ker, 1),
                    0,
                    "Wakamatsu fails for subcat {s:#b}"
                );
            }
        }
    }

    // tau-rigidity double route, exhaustive on ex73 and a2 (nak4 added
    // for tau coverage on longer strings)
    for name in ["ex73", "a2", "nak4"] {
        let e = engine(name);
        for (mi, m) in e.cat.indecs.iter().enumerate() {
            let fac = e.fac_closure(1 << mi);
            for n in e.cat.indecs.iter() {
                let hom_route = hom_basis(m, &tau(n)).dim() == 0;
                let ext_route = members(fac)
                    .iter()
                    .all(|&x| ext_dim(n, &e.cat.indecs[x], 1) == 0);
                assert_eq!(hom_route, ext_route, "{name}: the two tau-rigidity routes differ");
            }
        }
    }

    // kernel of the right minimal cok1-approximation lands in F2, and
    // both-sided approximations exist, exhaustively over ex73
    let e = engine("ex73");
    for u in enumerate_tau_rigid(&e) {
        let (_, _, f2, _) = two_fold_torsion_pair(&e, u).unwrap();
        let c = cok1(&e, u).unwrap();
        let addset: Vec<Representation> =
            members(c).iter().map(|&i| e.cat.indecs[i].clone()).collect();
        for m in &e.cat.indecs {
            if addset.is_empty() {
                continue;
            }
            let right = minimal_approximation(ApproxSide::Right, m, &addset);
            let ker = right.map.kernel().0;
            let ker_mults = e.cat.decompose(&ker).unwrap();
            assert!(multiset_in(&ker_mults, f2), "kernel escapes F2");
            // explicit factorization re-check on both sides
            for x in &addset {
                let into = hom_basis(x, m);
                for k in 0..into.dim() {
                    assert!(
                        factors_through_right(&into.basis_map(k), &right.map),
                        "right approximation misses a map"
                    );
                }
            }
            let left = minimal_approximation(ApproxSide::Left, m, &addset);
            for x in &addset {
                let from = hom_basis(m, x);
                for k in 0..from.dim() {
                    assert!(
                        factors_through_left(&from.basis_map(k), &left.map),
                        "left approximation misses a map"
                    );
                }
            }
        }
    }

    // closure laws and decompose round trips: exhaustive on ex73 via the
    // unit tests; sampled with a fixed seed on nak4 and a4 here
    for (name, samples) in [("nak4", 200usize), ("a4", 200)] {
        let e = engine(name);
        let mut rng = Lcg::new(0x5eed);
        for _ in 0..samples {
            let bits = rng.next() & e.full_bits();
            let f = e.fac_closure(bits);
            assert!(f & bits == bits && e.fac_closure(f) == f);
            let s = e.sub_closure(bits);
            assert!(s & bits == bits && e.sub_closure(s) == s);
            let t = e.smallest_tors(bits);
            assert!(e.is_torsion_class(t, ClassSide::Tors).unwrap().0);
            let other = rng.next() & e.full_bits();
            if bits & other == bits {
                assert!(f & e.fac_closure(other) == f, "monotonicity");
            }
            // decompose round trip on a random assembly
            let mults: Vec<usize> = (0..e.n()).map(|_| (rng.next() % 3) as usize).collect();
            let m = e.cat.assemble(&mults);
            if m.total_dim() <= 16 {
                assert_eq!(e.cat.decompose(&m).unwrap(), mults);
            }
        }
    }
    pass("criterion 10 (property suites)", "Wakamatsu, double route, F2 membership, closure laws");
}

fn factors_through_right(
    v: &taufold_core::hom::ModuleMap,
    g: &taufold_core::hom::ModuleMap,
) -> bool {
    // v: X -> M factors through g: S -> M iff v is in the image of
    // Hom(X, S) -> Hom(X, M)
    let homxs = hom_basis(&v.source, &g.source);
    let span: Vec<taufold_core::hom::ModuleMap> =
        (0..homxs.dim()).map(|k| g.compose(&homxs.basis_map(k))).collect();
    in_span(v, &span)
}

fn factors_through_left(
    v: &taufold_core::hom::ModuleMap,
    g: &taufold_core::hom::ModuleMap,
) -> bool {
    let homsx = hom_basis(&g.target, &v.target);
    let span: Vec<taufold_core::hom::ModuleMap> =
        (0..homsx.dim()).map(|k| homsx.basis_map(k).compose(g)).collect();
    in_span(v, &span)
}

fn in_span(v: &taufold_core::hom::ModuleMap, span: &[taufold_core::hom::ModuleMap]) -> bool {
    use taufold_core::linalg::{solve, Matrix};
    let p = v.source.modulus();
    let flat = |m: &taufold_core::hom::ModuleMap| -> Vec<u64> {
        let mut out = Vec::new();
        for mat in &m.mats {
            for r in 0..mat.rows() {
                out.extend_from_slice(mat.row(r));
            }
        }
        out
    };
    let target = flat(v);
    let mut sys = Matrix::zero(target.len(), span.len(), p);
    for (c, s) in span.iter().enumerate() {
        for (r, &x) in flat(s).iter().enumerate() {
            sys.set(r, c, x);
        }
    }
    solve(&sys, &target).is_some()
}

/// Small deterministic generator so the sampled suites are reproducible
/// without pulling a crate into the test.
mod rand_like {
    pub struct Lcg(u128);
    impl Lcg {
        pub fn new(seed: u64) -> Self {
            Lcg(seed as u128 | 1)
        }
        pub fn next(&mut self) -> u64 {
            self.0 = self.0.wrapping_mul(0x2d99787926d46932a4c1f32680f70c55) + 1;
            (self.0 >> 64) as u64
        }
    }
}
