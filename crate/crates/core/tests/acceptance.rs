//! Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on
//! any failure. All tolerances are exact integer equality or inequality.

mod common;

use std::time::{Duration, Instant};

use common::checks::{normalize_checked, shorten_checked, transform_c, Check};
use tmd_core::bounds::{structural_lower_bound, worst_case_lower_bound};
use tmd_core::construct::{build_optimal, contract_sensor_paths, optimal_size, pair_attraction_max};
use tmd_core::resolution::is_resolving;
use tmd_core::solver::{brute_force_tmd, greedy_resolving_set, sweep};
use tmd_core::transforms::{check_conditions, grow_to_optimal, normalize_attractions, shorten_weak_paths};
use tmd_core::tree::{enumerate_trees, random_tree};
use tmd_core::Tree;

struct Outcome {
    detail: String,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { detail: String::new(), failures: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn check<T>(&mut self, res: Check<T>, ctx: impl FnOnce() -> String) -> Option<T> {
        match res {
            Ok(v) => Some(v),
            Err(e) => {
                self.failures.push(format!("{}: {e}", ctx()));
                None
            }
        }
    }
}

fn skeletons(m: usize) -> Vec<(&'static str, Tree)> {
    let mut out = vec![("path", Tree::path(m).unwrap())];
    if m >= 3 {
        out.push(("star", Tree::star(m - 1).unwrap()));
    }
    out
}

fn sharpness() -> Outcome {
    let mut o = Outcome::new();
    for m in 1..=4 {
        for k in 1..=6 {
            let size = (k + 1) * m + (m - 1) * pair_attraction_max(k);
            let (t, s) = build_optimal(m, k, None).unwrap();
            o.require(optimal_size(m, k) == size && t.vertex_count() == size, || {
                format!("m={m} k={k}: {} vertices, expected {size}", t.vertex_count())
            });
            o.require(s.len() == m && is_resolving(&t, &s).unwrap().is_ok(), || format!("m={m} k={k}: not resolving"));
            let wc = worst_case_lower_bound(size, k).unwrap();
            o.require(wc == m, || format!("m={m} k={k}: worst-case bound {wc}"));
        }
    }
    o.detail = "24 (m,k) pairs: size, resolution, bound = m".into();
    o
}

fn brute_force_maximality() -> Outcome {
    let mut o = Outcome::new();
    let (t, _) = build_optimal(2, 1, None).unwrap();
    let tmd = brute_force_tmd(&t, 1).unwrap().tmd;
    o.require(tmd == 2, || format!("build_optimal(2,1) has Tmd_1 = {tmd}"));

    let start = Instant::now();
    let mut labeled = 0;
    for tree in enumerate_trees(6, false).unwrap() {
        labeled += 1;
        let tmd = brute_force_tmd(&tree, 1).unwrap().tmd;
        o.require(tmd >= 3, || format!("6-vertex tree {:?} has Tmd_1 = {tmd}", tree.edges()));
    }
    let six = start.elapsed();
    o.require(labeled == 1296, || format!("{labeled} labeled 6-vertex trees"));
    o.require(six < Duration::from_secs(10), || format!("6-vertex check took {six:?}"));

    let start = Instant::now();
    let mut classes = 0;
    let nine = optimal_size(2, 2) + 1;
    for tree in enumerate_trees(nine, true).unwrap() {
        classes += 1;
        let tmd = brute_force_tmd(&tree, 2).unwrap().tmd;
        o.require(tmd >= 3, || format!("{nine}-vertex tree {:?} has Tmd_2 = {tmd}", tree.edges()));
    }
    let nine_time = start.elapsed();
    o.require(nine == 9 && classes == 47, || format!("{classes} classes on {nine} vertices"));
    o.require(nine_time < Duration::from_secs(300), || format!("9-vertex check took {nine_time:?}"));
    o.detail = format!("(2,1) optimum 2; {labeled} labeled n=6 trees Tmd_1>=3 in {six:.2?}; {classes} n=9 classes Tmd_2>=3 in {nine_time:.2?}");
    o
}

fn k_one_identity() -> Outcome {
    let mut o = Outcome::new();
    for n in 1..=100 {
        let got = worst_case_lower_bound(n, 1).unwrap();
        o.require(got == (n + 1).div_ceil(3), || format!("n={n}: {got}"));
    }
    o.detail = "n = 1..100 against ceil((n+1)/3)".into();
    o
}

fn bound_validity() -> Outcome {
    let mut o = Outcome::new();
    match sweep(8, &[1, 2, 3]) {
        Ok(rows) => {
            for r in &rows {
                o.require(r.worst_bound <= r.tmd && r.structural_bound <= r.tmd, || {
                    format!("n={} k={} {}: tmd {} bounds {}/{}", r.n, r.k, r.canonical_id, r.tmd, r.worst_bound, r.structural_bound)
                });
            }
            let classes: usize = (1..=8).map(|n| enumerate_trees(n, true).unwrap().count()).sum();
            o.require(rows.len() == 3 * classes, || format!("{} rows for {classes} classes", rows.len()));
            o.detail = format!("{} (class, k) rows, n <= 8, k in 1..3, zero violations", rows.len());
        }
        Err(e) => o.failures.push(e.to_string()),
    }
    o
}

fn structural_sharpness() -> Outcome {
    let mut o = Outcome::new();
    for (name, tree, k, expect, wc_expect) in [
        ("K_{1,4}", Tree::star(4).unwrap(), 2, 3, Some(2)),
        ("spider(2,2,2)", Tree::spider(&[2, 2, 2]).unwrap(), 1, 3, None),
    ] {
        let sb = structural_lower_bound(&tree, k).unwrap();
        let tmd = brute_force_tmd(&tree, k).unwrap().tmd;
        o.require(sb.structural_bound == expect && tmd == expect, || {
            format!("{name} k={k}: structural {} tmd {tmd}", sb.structural_bound)
        });
        if let Some(wc) = wc_expect {
            o.require(sb.worst_case_bound == wc, || format!("{name}: worst-case {}", sb.worst_case_bound));
        }
    }
    o.detail = "K_{1,4} k=2: 3 = Tmd (worst-case 2); spider(2,2,2) k=1: 3 = Tmd".into();
    o
}

fn pair_attraction_oracle() -> Outcome {
    let mut o = Outcome::new();
    for k in 1..=30i64 {
        let oracle = (1..=k + 1)
            .map(|d| (1..=d).map(|i| 1 + (k - i).min(k - (d + 1 - i))).sum::<i64>())
            .max()
            .unwrap();
        let closed = pair_attraction_max(k as usize) as i64;
        o.require(oracle == closed, || format!("k={k}: closed form {closed}, maximum {oracle}"));
    }
    o.detail = "k = 1..30, closed form = maximized sum".into();
    o
}

fn transformation_a() -> Outcome {
    let mut o = Outcome::new();
    let mut counts = [0usize; 3];
    let mut applications = 0;
    for k in 1..=3 {
        for seed in 0..500u64 {
            let n = 2 + (seed as usize % 19);
            let t = random_tree(n, seed).unwrap();
            let s = greedy_resolving_set(&t, k, seed).unwrap();
            if let Some((_, changed)) = o.check(normalize_checked(&t, &s), || format!("k={k} seed={seed}")) {
                applications += changed;
            }
            counts[k - 1] += 1;
        }
    }
    o.require(counts.iter().all(|&c| c >= 500), || format!("instance counts {counts:?}"));
    o.detail = format!("{counts:?} instances for k=1,2,3 (n <= 20), {applications} non-identity rewrites");
    o
}

fn transformation_b() -> Outcome {
    let mut o = Outcome::new();
    let (mut instances, mut steps, mut multi) = (0, 0, 0);
    for k in 1..=5 {
        for seed in 0..3000u64 {
            let Some((t, s)) = common::planted_weak_path(k, seed) else { continue };
            let Ok(t) = normalize_attractions(&t, &s) else { continue };
            let c = check_conditions(&t, &s).unwrap();
            if !(c.attractions_are_leaf_paths && c.strong_paths_edge_disjoint && c.weak_path_exists) {
                continue;
            }
            instances += 1;
            let ctx = || format!("k={k} seed={seed}");
            let Some((out, n)) = o.check(shorten_checked(&t, &s), ctx) else { continue };
            steps += n;
            multi += usize::from(n > 1);
            match shorten_weak_paths(&t, &s) {
                Ok(d) => {
                    o.require(d.tree == out && d.steps == n, || format!("k={k} seed={seed}: driver disagrees"));
                    o.require(d.sums.windows(2).all(|w| w[1] < w[0]), || format!("k={k} seed={seed}: sums {:?}", d.sums));
                }
                Err(e) => o.failures.push(format!("k={k} seed={seed}: driver {e}")),
            }
        }
    }
    o.require(instances >= 200, || format!("only {instances} instances"));
    o.detail = format!("{instances} planted instances, k = 1..5, {steps} checked steps, {multi} multi-step runs");
    o
}

fn transformation_c() -> Outcome {
    let mut o = Outcome::new();
    let mut instances = 0;
    for k in 1..=5 {
        for seed in 0..3000u64 {
            let gen = if seed % 2 == 0 { common::random_sensor_tree(k, seed) } else { common::planted_weak_path(k, seed) };
            let Some((t, s)) = gen else { continue };
            let Ok(t) = normalize_attractions(&t, &s) else { continue };
            let c = check_conditions(&t, &s).unwrap();
            if !c.attractions_are_leaf_paths {
                continue;
            }
            let t = if !c.strong_paths_edge_disjoint {
                t
            } else if c.weak_path_exists {
                match o.check(shorten_checked(&t, &s), || format!("k={k} seed={seed} shortening")) {
                    Some((t, _)) => t,
                    None => continue,
                }
            } else {
                continue;
            };
            instances += 1;
            o.check(transform_c(&t, &s), || format!("k={k} seed={seed}"));
        }
    }
    o.require(instances >= 200, || format!("only {instances} instances"));
    o.detail = format!("{instances} overlapping instances, k = 1..5: +1 vertex, resolving, |A*| bound");
    o
}

fn contraction() -> Outcome {
    let mut o = Outcome::new();
    let mut runs = 0;
    for m in 1..=5 {
        for k in 1..=6 {
            for (name, skeleton) in skeletons(m) {
                runs += 1;
                let (t, s) = build_optimal(m, k, Some(skeleton.clone())).unwrap();
                let back = contract_sensor_paths(&t, &s).unwrap();
                o.require(back == skeleton && back.edge_count() == m.saturating_sub(1), || {
                    format!("m={m} k={k} {name}: contracted to {:?}", back.edges())
                });
            }
        }
    }
    o.detail = format!("{runs} constructions, m <= 5, k <= 6, path and star skeletons");
    o
}

fn fixed_point() -> Outcome {
    let mut o = Outcome::new();
    let mut runs = 0;
    for m in 1..=4 {
        for k in 1..=6 {
            for (name, skeleton) in skeletons(m) {
                runs += 1;
                let (t, s) = build_optimal(m, k, Some(skeleton)).unwrap();
                match grow_to_optimal(&t, &s, None) {
                    Ok(g) => o.require(g.rewrites == 0 && g.tree == t, || {
                        format!("m={m} k={k} {name}: {} rewrites {:?}", g.rewrites, g.history)
                    }),
                    Err(e) => o.failures.push(format!("m={m} k={k} {name}: {e}")),
                }
            }
        }
    }
    o.detail = format!("{runs} constructions, zero rewrites");
    o
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 11] = [
        ("sharpness of the worst-case bound", sharpness, Some(Duration::from_secs(5))),
        ("brute-force maximality", brute_force_maximality, Some(Duration::from_secs(310))),
        ("k=1 closed form", k_one_identity, None),
        ("bound validity sweep", bound_validity, Some(Duration::from_secs(120))),
        ("structural bound sharpness", structural_sharpness, None),
        ("pair attraction oracle", pair_attraction_oracle, None),
        ("transformation A suite", transformation_a, Some(Duration::from_secs(120))),
        ("transformation B suite", transformation_b, None),
        ("transformation C suite", transformation_c, None),
        ("sensor-path contraction", contraction, None),
        ("fixed point of growth", fixed_point, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            outcome.require(elapsed < *limit, || format!("took {elapsed:.2?}, limit {limit:?}"));
        }
        let status = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} [{:>2}] {name}: {} (exact, {elapsed:.2?})", i + 1, outcome.detail);
        for f in outcome.failures.iter().take(5) {
            println!("       {f}");
        }
        if !outcome.failures.is_empty() {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
