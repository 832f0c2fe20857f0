//! Acceptance criteria. Runs as a plain binary so every criterion prints one
//! `PASS`/`FAIL` line; the process exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;

use itertools::Itertools;

use gyrocay::analysis::{
    components_equal_partition, find_automorphism, is_automorphism, is_cycle, is_perfect_matching,
    is_vertex_transitive, vertex_transitivity,
};
use gyrocay::cayley::{
    build_lcay, build_rcay, check_gyr_condition, connected_components, is_symmetric_set, is_undirected, one_way_arc,
    GyrCondition,
};
use gyrocay::gyrogroup::{check_identities, derive_gyrations, verify_axioms, Law};
use gyrocay::io::{builtin, builtin_text, parse_cycles, parse_table_file, BUILTIN_NAMES};
use gyrocay::subgyro::{
    all_subgyrogroups, is_l_subgyrogroup, left_cosets, right_closure, verify_lagrange, ElementSet, GenSet,
    Subgyrogroup, DEFAULT_ENUMERATION_BOUND,
};
use gyrocay::theorems::{check_theorem, search_counterexamples, SearchConfig, TheoremId};
use gyrocay::{Gyrogroup, Permutation};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn g(name: &str) -> &'static Gyrogroup {
    builtin(name).expect("builtin present")
}

fn gens(g: &Gyrogroup, xs: &[usize]) -> GenSet {
    GenSet::new(g, xs.iter().copied()).expect("valid generators")
}

fn set(xs: &[usize]) -> ElementSet {
    xs.iter().copied().collect()
}

/// All identity-free generating sets of size at most `k`, optionally symmetric only.
fn generating_sets(g: &Gyrogroup, k: usize, symmetric_only: bool) -> Vec<GenSet> {
    let pool: Vec<usize> = g.elements().filter(|&x| x != g.identity()).collect();
    (0..=k)
        .flat_map(|size| pool.iter().copied().combinations(size))
        .map(|c| gens(g, &c))
        .filter(|s| !symmetric_only || is_symmetric_set(g, s).unwrap())
        .collect()
}

fn axiom_suite() -> Outcome {
    for name in BUILTIN_NAMES {
        let gg = g(name);
        let (report, _) = verify_axioms(gg.table(), Some(gg.gyrations()));
        ensure!(report.passed, "{name}: {report}");
    }
    let base = g("g15").table();
    let n = base.order();
    let mut mutants = 0;
    for (a, b) in (0..n).cartesian_product(0..n) {
        for value in (0..n).filter(|&v| v != base.get(a, b)) {
            let mutated = base.with_entry(a, b, value).map_err(|e| e.to_string())?;
            let (report, group) = verify_axioms(&mutated, None);
            ensure!(!report.passed && group.is_none(), "mutant ({a},{b})={value} passed");
            let located = report.violations.iter().any(|v| match v.law {
                Law::LatinRow => v.witness[0] == a && v.witness[1..].contains(&b),
                Law::LatinColumn => v.witness[0] == b && v.witness[1..].contains(&a),
                _ => false,
            });
            ensure!(
                located,
                "mutant ({a},{b})={value}: witness does not locate the entry: {report}"
            );
            mutants += 1;
        }
    }
    ensure!(mutants == 15 * 15 * 14, "expected 3150 mutants, ran {mutants}");
    Ok(())
}

fn gyration_derivation() -> Outcome {
    let expected: [(&str, &[&str]); 3] = [
        (
            "g15",
            &[
                "(1 7 5 10 6)(2 3 8 11 14)",
                "(1 6 10 5 7)(2 14 11 8 3)",
                "(1 10 7 6 5)(2 11 3 14 8)",
                "(1 5 6 7 10)(2 8 14 3 11)",
            ],
        ),
        ("g8", &["(1 6)(2 5)"]),
        ("g16", &["(8 9)(10 11)(12 13)(14 15)"]),
    ];
    for (name, cycles) in expected {
        let file = parse_table_file(builtin_text(name).unwrap()).map_err(|e| e.to_string())?;
        let stored = file.gyrations.as_ref().ok_or(format!("{name}: no stored gyrations"))?;
        let derived = derive_gyrations(&file.table).map_err(|e| e.to_string())?;
        let n = file.table.order();
        for (a, b) in (0..n).cartesian_product(0..n) {
            ensure!(
                derived.get(a, b) == stored.get(a, b),
                "{name}: gyr[{a},{b}] differs from the stored table"
            );
        }
        let want: BTreeSet<Permutation> = cycles.iter().map(|c| parse_cycles(c, n).unwrap()).collect();
        let got: BTreeSet<Permutation> = (0..n)
            .cartesian_product(0..n)
            .filter_map(|(a, b)| derived.permutation(a, b))
            .filter(|p| !p.is_identity())
            .collect();
        ensure!(got == want, "{name}: nonidentity gyrations {got:?}, expected {want:?}");
    }
    Ok(())
}

fn identity_suite() -> Outcome {
    for name in BUILTIN_NAMES {
        let report = check_identities(g(name));
        ensure!(report.passed, "{name}: {report}");
    }
    Ok(())
}

fn g8_cycle_and_non_transitive() -> Outcome {
    let g8 = g("g8");
    let cyc = build_lcay(g8, &gens(g8, &[1, 3])).unwrap();
    ensure!(is_undirected(&cyc), "LCay(g8,{{1,3}}) is directed");
    ensure!(
        connected_components(&cyc).is_connected(),
        "LCay(g8,{{1,3}}) is disconnected"
    );
    ensure!(is_cycle(&cyc), "LCay(g8,{{1,3}}) is not a cycle");
    ensure!(is_vertex_transitive(&cyc), "LCay(g8,{{1,3}}) is not vertex-transitive");
    let other = build_lcay(g8, &gens(g8, &[1, 2, 3])).unwrap();
    ensure!(is_undirected(&other), "LCay(g8,{{1,2,3}}) is directed");
    ensure!(!is_vertex_transitive(&other), "LCay(g8,{{1,2,3}}) is vertex-transitive");
    Ok(())
}

fn g16_left_complete_blocks() -> Outcome {
    let g16 = g("g16");
    let graph = build_lcay(g16, &gens(g16, &[1, 2, 3])).unwrap();
    let comps = connected_components(&graph);
    ensure!(comps.count() == 4, "{} components", comps.count());
    for block in &comps.blocks {
        ensure!(block.len() == 4, "block {block:?} does not have 4 vertices");
        for (&u, &v) in block.iter().tuple_combinations() {
            ensure!(
                graph.has_arc(u, v) && graph.has_arc(v, u),
                "edge {u}-{v} missing in block {block:?}"
            );
        }
    }
    ensure!(
        graph.arc_count() == 4 * 6 * 2,
        "unexpected arc count {}",
        graph.arc_count()
    );
    ensure!(is_vertex_transitive(&graph), "not vertex-transitive");
    let perm = find_automorphism(&graph, 1, 7)
        .unwrap()
        .ok_or("no automorphism 1 -> 7")?;
    ensure!(
        perm.apply(1) == 7 && is_automorphism(&graph, &perm),
        "bad automorphism {perm}"
    );
    Ok(())
}

fn g16_right_directed() -> Outcome {
    let g16 = g("g16");
    for s in [&[8][..], &[1, 8]] {
        let graph = build_rcay(g16, &gens(g16, s)).unwrap();
        ensure!(!is_undirected(&graph), "RCay(g16,{s:?}) is undirected");
        let (u, v) = one_way_arc(&graph).ok_or(format!("RCay(g16,{s:?}) has no one-way arc"))?;
        ensure!(graph.has_arc(u, v) && !graph.has_arc(v, u), "({u},{v}) is not one-way");
    }
    Ok(())
}

fn g16_right_cosets_of_four() -> Outcome {
    let g16 = g("g16");
    let s = gens(g16, &[8, 9]);
    let graph = build_rcay(g16, &s).unwrap();
    ensure!(is_undirected(&graph), "RCay(g16,{{8,9}}) is directed");
    let h = right_closure(g16, &s);
    ensure!(h == set(&[0, 1, 8, 9]), "right closure {h:?}");
    ensure!(
        is_l_subgyrogroup(g16, &h).unwrap(),
        "{{0,1,8,9}} is not an L-subgyrogroup"
    );
    let sub = Subgyrogroup::new(g16, h).unwrap();
    let cosets = left_cosets(g16, &sub).unwrap();
    ensure!(
        components_equal_partition(&graph, &cosets).unwrap(),
        "components differ from cosets"
    );
    let blocks: BTreeSet<ElementSet> = cosets.blocks().iter().cloned().collect();
    let want: BTreeSet<ElementSet> = [[0, 1, 8, 9], [2, 3, 10, 11], [4, 5, 14, 15], [6, 7, 12, 13]]
        .iter()
        .map(|b| set(b))
        .collect();
    ensure!(blocks == want, "cosets {blocks:?}");
    let comps: BTreeSet<ElementSet> = connected_components(&graph)
        .blocks
        .iter()
        .map(|b| b.iter().copied().collect())
        .collect();
    ensure!(comps == want, "components {comps:?}");
    let lagrange = verify_lagrange(g16, &sub).unwrap();
    ensure!(
        lagrange.holds && lagrange.order == 16 && lagrange.subgroup_order == 4 && lagrange.index == 4,
        "{lagrange:?}"
    );
    Ok(())
}

fn g16_right_two_components() -> Outcome {
    let g16 = g("g16");
    let s = gens(g16, &[8, 9, 10, 11]);
    let graph = build_rcay(g16, &s).unwrap();
    ensure!(is_undirected(&graph), "directed");
    ensure!(is_vertex_transitive(&graph), "not vertex-transitive");
    let comps = connected_components(&graph);
    ensure!(comps.count() == 2, "{} components", comps.count());
    let h = right_closure(g16, &s);
    ensure!(h == set(&[0, 1, 2, 3, 8, 9, 10, 11]), "right closure {h:?}");
    let cosets = left_cosets(g16, &Subgyrogroup::new(g16, h).unwrap()).unwrap();
    ensure!(
        components_equal_partition(&graph, &cosets).unwrap(),
        "components differ from cosets"
    );
    let perm = find_automorphism(&graph, 15, 0)
        .unwrap()
        .ok_or("no automorphism 15 -> 0")?;
    ensure!(
        perm.apply(15) == 0 && is_automorphism(&graph, &perm),
        "bad automorphism {perm}"
    );
    Ok(())
}

fn biconditionals() -> Outcome {
    let g8 = g("g8");
    let mut symmetric = 0;
    for s in generating_sets(g8, 3, false) {
        let r = check_theorem(g8, &s, TheoremId::LUndirected, None).unwrap();
        ensure!(r.hypothesis == r.conclusion, "{r}");
        if !s.is_empty() && is_symmetric_set(g8, &s).unwrap() {
            let r = check_theorem(g8, &s, TheoremId::LConnected, None).unwrap();
            ensure!(r.applicable && r.hypothesis == r.conclusion, "{r}");
            symmetric += 1;
        }
    }
    ensure!(symmetric > 0, "no symmetric sets examined");
    Ok(())
}

fn order_two() -> Outcome {
    for name in BUILTIN_NAMES {
        let gg = g(name);
        for s in gg.elements().filter(|&s| s != gg.identity() && gg.neg(s) == s) {
            let graph = build_lcay(gg, &gens(gg, &[s])).unwrap();
            ensure!(
                is_perfect_matching(&graph),
                "{name}: LCay({{{s}}}) is not a perfect matching"
            );
            ensure!(
                graph.arc_count() == gg.order(),
                "{name}: {s}: {} arcs",
                graph.arc_count()
            );
            let t = vertex_transitivity(&graph);
            ensure!(t.transitive, "{name}: {s}: not transitive, witness {:?}", t.witness);
        }
    }
    Ok(())
}

fn sweep_config(symmetric: bool) -> SearchConfig {
    SearchConfig {
        max_set_size: 3,
        require_symmetric: symmetric,
        ..SearchConfig::default()
    }
}

fn theorem_sweep() -> Outcome {
    for (name, symmetric) in [("g8", false), ("g15", true), ("g16", true)] {
        let out = search_counterexamples(g(name), &sweep_config(symmetric)).unwrap();
        ensure!(out.examined > 0, "{name}: nothing examined");
        ensure!(out.violations.is_empty(), "{name}: violation {}", out.violations[0]);
        if name == "g8" {
            let found = out
                .converse_failures
                .iter()
                .any(|c| c.generators == [1, 3] && c.theorem == TheoremId::LTransitive);
            ensure!(found, "g8: ({{1,3}}, L_TRANSITIVE) not reported as a converse failure");
        }
    }
    Ok(())
}

fn r_undirected_converse() -> Outcome {
    let mut undirected = 0;
    for (name, symmetric) in [("g8", false), ("g15", true), ("g16", true)] {
        let gg = g(name);
        for s in generating_sets(gg, 3, symmetric) {
            if is_undirected(&build_rcay(gg, &s).unwrap()) {
                undirected += 1;
                ensure!(
                    check_gyr_condition(gg, &s, &GyrCondition::PointInS).unwrap(),
                    "{name}: S={:?} has undirected RCay but gyr(g,s)(s) leaves S",
                    s.as_slice()
                );
            }
        }
    }
    ensure!(undirected > 0, "no undirected right Cayley graphs examined");
    Ok(())
}

fn subgyrogroup_enumeration() -> Outcome {
    let g16 = g("g16");
    let all = all_subgyrogroups(g16, false, DEFAULT_ENUMERATION_BOUND).unwrap();
    let flag = |h: &[usize]| all.iter().find(|s| s.carrier() == &set(h)).map(|s| s.is_l());
    ensure!(
        flag(&[0, 1, 8, 9]) == Some(true),
        "{{0,1,8,9}}: {:?}",
        flag(&[0, 1, 8, 9])
    );
    ensure!(flag(&[0, 8]) == Some(false), "{{0,8}}: {:?}", flag(&[0, 8]));
    for s in all.iter().filter(|s| s.is_l()) {
        ensure!(
            16usize.is_multiple_of(s.len()),
            "L-subgyrogroup of size {} found",
            s.len()
        );
    }
    ensure!(all.len() == 19, "{} subgyrogroups, expected 19", all.len());
    ensure!(
        all.iter().filter(|s| s.is_l()).count() == 11,
        "expected 11 L-subgyrogroups"
    );
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("axiom suite on builtins and g15 single-entry mutants", axiom_suite),
        ("gyration derivation matches stored tables", gyration_derivation),
        ("six derived identities hold on every builtin", identity_suite),
        ("LCay(g8,{1,3}) cycle vs LCay(g8,{1,2,3})", g8_cycle_and_non_transitive),
        ("LCay(g16,{1,2,3}) four complete blocks", g16_left_complete_blocks),
        ("RCay(g16,{8}) and RCay(g16,{1,8}) are directed", g16_right_directed),
        ("RCay(g16,{8,9}) components are left cosets", g16_right_cosets_of_four),
        (
            "RCay(g16,{8,9,10,11}) two components, 15 -> 0",
            g16_right_two_components,
        ),
        ("L_UNDIRECTED and L_CONNECTED biconditionals on g8", biconditionals),
        ("order-2 generators give transitive perfect matchings", order_two),
        ("theorem sweep has no violations", theorem_sweep),
        ("undirected RCay implies gyr(g,s)(s) in S", r_undirected_converse),
        ("subgyrogroup enumeration on g16", subgyrogroup_enumeration),
    ];
    let mut failed = 0;
    for (i, (label, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(()) => println!("PASS  criterion {:>2}: {label}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {:>2}: {label}: {why}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
