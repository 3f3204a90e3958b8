//! Acceptance checks. Prints one PASS/FAIL line per check and exits nonzero
//! if any check fails.

mod common;

use std::time::{Duration, Instant};

use activegraph::brute::{brute_f_lambda, brute_psi, brute_seeded_min};
use activegraph::flow::{hypergraph_flow, min_st_cut, seeded_min_cut, strength_network};
use activegraph::io::{ratings_to_hypergraph, read_ratings};
use activegraph::predict::{optimality_residual, propagate};
use activegraph::select::select_target;
use activegraph::{
    adversarial_labeling, compute_psi, eval_f_lambda, label_prop_predict, mincut_predict, phi, run_experiment,
    select_budget, ExperimentData, ExperimentSpec, LabelPropParams, Labeling, Method, NodeSet, Oracle, Predictor,
    Rational, RealGraph, Strength, WeightedGraph,
};
use common::*;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Wall-clock budget for the strength equivalence check.
const PSI_EQUIVALENCE_BUDGET: Duration = Duration::from_secs(60);
/// Label propagation optimality residual bound (max norm).
const LABELPROP_RESIDUAL: f64 = 1e-8;
/// Trials per label count when comparing selection with the random baseline.
const BASELINE_TRIALS: usize = 200;

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

type Check<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

struct Instance {
    oracle: Oracle,
    sets: Vec<NodeSet>,
}

fn instances() -> (Vec<Instance>, Vec<Instance>) {
    let mut rng = ChaCha8Rng::seed_from_u64(20240501);
    let sets = |rng: &mut ChaCha8Rng, n: usize| -> Vec<NodeSet> {
        (0..20)
            .map(|_| {
                let p = rng.gen_range(0.0..0.7);
                random_set(rng, n, p)
            })
            .collect()
    };
    let graphs = (0..200)
        .map(|_| {
            let n = rng.gen_range(2..=12);
            let p = rng.gen_range(0.15..0.7);
            let w = rng.gen_range(1..=4);
            let g = random_graph(&mut rng, n, p, w);
            Instance {
                oracle: g.into(),
                sets: sets(&mut rng, n),
            }
        })
        .collect();
    let hypers = (0..50)
        .map(|_| {
            let n = rng.gen_range(2..=8);
            let m = rng.gen_range(1..=10);
            let size = rng.gen_range(2..=4);
            let w = rng.gen_range(1..=3);
            let h = random_hypergraph(&mut rng, n, m, size, w);
            Instance {
                oracle: h.into(),
                sets: sets(&mut rng, n),
            }
        })
        .collect();
    (graphs, hypers)
}

fn psi_equivalence(graphs: &[Instance], hypers: &[Instance]) -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for inst in graphs.iter().chain(hypers) {
        for s in &inst.sets {
            let fast = compute_psi(&inst.oracle, s).unwrap().psi;
            let slow = brute_psi(&inst.oracle, s).unwrap();
            checked += 1;
            if fast != slow {
                mismatches.push(format!("{s:?}: {fast} vs {slow}"));
            }
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{checked} sets on {} graphs and {} hypergraphs, {} mismatches, {:.1} s",
        graphs.len(),
        hypers.len(),
        mismatches.len(),
        elapsed.as_secs_f64()
    );
    if mismatches.is_empty() && elapsed < PSI_EQUIVALENCE_BUDGET {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(format!("{detail}; first: {:?}", mismatches.first()))
    }
}

fn error_bound_exhaustive() -> Verdict {
    let mut checks = 0u64;
    let mut violations = Vec::new();
    let suite = connected_suite();
    for (name, g) in &suite {
        let n = g.node_count();
        let oracle: Oracle = g.clone().into();
        let phis: Vec<i64> = (0u32..1 << n)
            .map(|mask| phi(&oracle, &bits(n, mask)).unwrap())
            .collect();
        for l in all_subsets(n).filter(|l| !l.is_empty()) {
            let psi = compute_psi(&oracle, &l).unwrap().psi;
            if psi.is_zero() {
                continue;
            }
            let lv = l.to_vec();
            for seeds in 0u32..1 << lv.len() {
                let y_l = Labeling::partial(n, lv.iter().enumerate().map(|(i, &v)| (v, seeds >> i & 1 == 1))).unwrap();
                let prediction = mincut_predict(&oracle, &l, &y_l).unwrap();
                let pred_mask = mask_of(&prediction);
                for mask in 0u32..1 << n {
                    if lv.iter().enumerate().any(|(i, &v)| (mask >> v & 1) != (seeds >> i & 1)) {
                        continue;
                    }
                    checks += 1;
                    let wrong = (mask ^ pred_mask).count_ones() as i64;
                    let ok = match psi {
                        Strength::Infinite => wrong == 0,
                        Strength::Finite(r) => {
                            Rational::from_integer(wrong) * r <= Rational::from_integer(2 * phis[mask as usize])
                                && Rational::from_integer(wrong) * r
                                    <= Rational::from_integer(phis[mask as usize] + phis[pred_mask as usize])
                        }
                    };
                    if !ok {
                        violations.push(format!("{name}: L={l:?} y={mask:b}"));
                    }
                }
            }
        }
    }
    let detail = format!(
        "{} graphs, {checks} (L, y) pairs, {} violations",
        suite.len(),
        violations.len()
    );
    if violations.is_empty() {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(format!("{detail}; first: {}", violations[0]))
    }
}

fn bits(n: usize, mask: u32) -> Labeling {
    Labeling::total((0..n).map(|i| mask >> i & 1 == 1).collect())
}

fn mask_of(y: &Labeling) -> u32 {
    y.iter()
        .enumerate()
        .fold(0, |m, (i, b)| if b == Some(true) { m | 1 << i } else { m })
}

fn adversarial_tightness() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut found = 0;
    let mut failures = Vec::new();
    while found < 100 {
        let n = rng.gen_range(3..=12);
        let (p, w) = (rng.gen_range(0.2..0.8), rng.gen_range(1..=5));
        let g = random_graph(&mut rng, n, p, w);
        let oracle: Oracle = g.into();
        let p = rng.gen_range(0.1..0.6);
        let l = random_set(&mut rng, n, p);
        let psi = compute_psi(&oracle, &l).unwrap().psi;
        let Strength::Finite(r) = psi else { continue };
        if r.is_zero() {
            continue;
        }
        found += 1;
        let (y, yp) = adversarial_labeling(&oracle, &l).unwrap();
        let agree_on_l = l.iter().all(|v| y.get(v) == yp.get(v));
        let dist = y.disagreements(&yp).unwrap() as i64;
        let total = phi(&oracle, &y).unwrap() + phi(&oracle, &yp).unwrap();
        if !agree_on_l || dist == 0 || Rational::new(total, dist) != r {
            failures.push(format!("n={n} L={l:?} psi={r}"));
        }
    }
    let detail = format!("{found} (graph, L) pairs, {} not tight", failures.len());
    if failures.is_empty() {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(format!("{detail}; first: {}", failures[0]))
    }
}

/// Smallest `|S|` with `Ψ(S) ≥ λ`, by a subset-closure table over `V`.
fn optimum_size(oracle: &Oracle, lambda: i64) -> usize {
    let n = oracle.universe();
    let full = (1usize << n) - 1;
    let mut bad = vec![false; 1 << n];
    for mask in 1..=full {
        let t = NodeSet::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1)).unwrap();
        bad[mask] = oracle.eval(&t).unwrap() < lambda * t.len() as i64
            || (0..n).any(|i| mask >> i & 1 == 1 && bad[mask & !(1 << i)]);
    }
    (0..=full)
        .filter(|&s| !bad[full & !s])
        .map(|s| s.count_ones() as usize)
        .min()
        .expect("the full set is always feasible")
}

fn greedy_factor(graphs: &[Instance], hypers: &[Instance]) -> Verdict {
    let mut checked = 0;
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for inst in graphs.iter().chain(hypers) {
        let n = inst.oracle.universe();
        for lambda in 1..=3 {
            let opt = optimum_size(&inst.oracle, lambda);
            let target = Rational::from_integer(lambda);
            let got = select_target(&inst.oracle, &target).unwrap();
            let feasible = compute_psi(&inst.oracle, &got.chosen).unwrap().psi.at_least(&target);
            let bound = (1.0 + (lambda as f64 * n as f64).ln()) * opt as f64;
            checked += 1;
            worst = worst.max(got.chosen.len() as f64 / opt as f64);
            if !feasible || got.chosen.len() as f64 > bound {
                failures.push(format!(
                    "n={n} lambda={lambda}: greedy {} vs optimum {opt}",
                    got.chosen.len()
                ));
            }
        }
    }
    let detail = format!(
        "{checked} (instance, lambda) pairs, worst greedy/optimum {worst:.3}, {} failures",
        failures.len()
    );
    if failures.is_empty() {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(format!("{detail}; first: {}", failures[0]))
    }
}

fn f_lambda_laws(graphs: &[Instance], hypers: &[Instance]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5150);
    let pool: Vec<&Instance> = graphs
        .iter()
        .chain(hypers)
        .filter(|i| i.oracle.universe() >= 2)
        .collect();
    let mut violations = Vec::new();
    let samples = 10_000;
    for _ in 0..samples {
        let oracle = &pool[rng.gen_range(0..pool.len())].oracle;
        let n = oracle.universe();
        let lambda = Rational::new(rng.gen_range(0..=12), rng.gen_range(1..=4));
        let s = rng.gen_range(0..n);
        let p = rng.gen_range(0.0..0.8);
        let mut b = random_set(&mut rng, n, p);
        b.remove(s);
        let a = NodeSet::from_indices(n, b.iter().filter(|_| rng.gen_bool(0.5))).unwrap();
        let f = |x: &NodeSet| eval_f_lambda(oracle, x, &lambda).unwrap().value;
        let (fa, fb, fas, fbs) = (f(&a), f(&b), f(&a.with(s)), f(&b.with(s)));
        let zero_iff = (fa.is_zero()) == compute_psi(oracle, &a).unwrap().psi.at_least(&lambda);
        let nonpositive = fa <= Rational::zero();
        let monotone = fa <= fb && fa <= fas;
        let diminishing = fas - fa >= fbs - fb;
        if !(zero_iff && nonpositive && monotone && diminishing) {
            violations.push(format!(
                "n={n} lambda={lambda} A={a:?} B={b:?} s={s}: zero_iff={zero_iff} monotone={monotone} diminishing={diminishing}"
            ));
        }
    }
    let detail = format!("{samples} samples, {} violations", violations.len());
    if violations.is_empty() {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(format!("{detail}; first: {}", violations[0]))
    }
}

fn cubic_vertex_covers() -> Verdict {
    let three = Rational::from_integer(3);
    let suite = cubic_suite();
    let mut mismatches = Vec::new();
    let mut sets = 0;
    for (name, g) in &suite {
        let oracle: Oracle = g.clone().into();
        for s in all_subsets(g.node_count()) {
            sets += 1;
            let strong = compute_psi(&oracle, &s).unwrap().psi.at_least(&three);
            if strong != is_vertex_cover(g, &s) {
                mismatches.push(format!("{name}: {s:?}"));
            }
        }
    }
    let detail = format!(
        "{} cubic graphs, {sets} sets, {} mismatches",
        suite.len(),
        mismatches.len()
    );
    if mismatches.is_empty() {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(format!("{detail}; first: {}", mismatches[0]))
    }
}

fn flow_reductions(graphs: &[Instance], hypers: &[Instance]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checks = 0;
    let mut mismatches = Vec::new();
    for inst in graphs.iter().chain(hypers) {
        let structure = inst.oracle.flow_structure().expect("cut oracles have a flow form");
        let n = inst.oracle.universe();
        for s in &inst.sets {
            let lambda = Rational::new(rng.gen_range(0..=10), rng.gen_range(1..=3));
            let (value, t) = strength_network(structure, s, lambda).unwrap().solve().unwrap();
            let expected = brute_f_lambda(&inst.oracle, s, &lambda).unwrap();
            let attained =
                Rational::from_integer(inst.oracle.eval(&t).unwrap()) - lambda * Rational::from_integer(t.len() as i64);
            checks += 1;
            if value != expected || attained != value || !t.is_disjoint(s) {
                mismatches.push(format!("strength network, S={s:?} lambda={lambda}"));
            }

            let pos = random_set(&mut rng, n, 0.3);
            let neg = random_set(&mut rng, n, 0.3).difference(&pos);
            let seeded = seeded_min_cut(structure, &pos, &neg).unwrap();
            checks += 1;
            if seeded.value != brute_seeded_min(&inst.oracle, &pos, &neg).unwrap()
                || inst.oracle.eval(&seeded.one_side).unwrap() != seeded.value
                || !pos.is_subset(&seeded.one_side)
                || !seeded.one_side.is_disjoint(&neg)
            {
                mismatches.push(format!("seeded cut, pos={pos:?} neg={neg:?}"));
            }
        }
        if let Oracle::Hypergraph(h) = &inst.oracle {
            for s in all_subsets(n) {
                let mut net = hypergraph_flow(h).unwrap().network;
                let (src, snk) = (net.source(), net.sink());
                for v in 0..n {
                    if s.contains(v) {
                        net.add_infinite_arc(src, v).unwrap();
                    } else {
                        net.add_infinite_arc(v, snk).unwrap();
                    }
                }
                checks += 1;
                if min_st_cut(&net).unwrap().value != h.cut(&s).unwrap() {
                    mismatches.push(format!("hypergraph gadget, S={s:?}"));
                }
            }
        }
    }
    let detail = format!("{checks} flow computations, {} mismatches", mismatches.len());
    if mismatches.is_empty() {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(format!("{detail}; first: {}", mismatches[0]))
    }
}

fn path_numbers() -> Verdict {
    let oracle: Oracle = path(4).into();
    let set = |v: &[usize]| NodeSet::from_indices(4, v.iter().copied()).unwrap();
    let psi = |v: &[usize]| compute_psi(&oracle, &set(v)).unwrap().psi;
    let target = select_target(&oracle, &Rational::from_integer(1)).unwrap();
    let budget = select_budget(&oracle, 1, &activegraph::select::default_rel_gap()).unwrap();
    let checks = [
        ("psi({0}) = 1/3", psi(&[0]) == Strength::new(1, 3)),
        ("psi({0,3}) = 1", psi(&[0, 3]) == Strength::new(1, 1)),
        ("target 1 selects {1,2}", target.chosen == set(&[1, 2])),
        ("budget 1 selects {1}", budget.chosen == set(&[1])),
        ("budget 1 certifies 1/2", budget.achieved_psi == Strength::new(1, 2)),
    ];
    let failed: Vec<_> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    if failed.is_empty() {
        Verdict::Pass("path on 4 nodes (0-based): all 5 values exact".into())
    } else {
        Verdict::Fail(format!("wrong: {failed:?}"))
    }
}

fn block_truth(n: usize, ones_from: usize) -> Labeling {
    Labeling::total((0..n).map(|v| v >= ones_from).collect())
}

fn selection_beats_random() -> Verdict {
    let two_triangles = unit_graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
    let cases: Vec<(&str, WeightedGraph<i64>, Labeling, Vec<usize>)> = vec![
        (
            "bridged 5-cliques",
            bridged_cliques(5),
            block_truth(10, 5),
            vec![1, 2, 3, 4],
        ),
        ("two triangles", two_triangles, block_truth(6, 3), vec![2, 3, 4]),
    ];
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for (name, g, truth, ks) in cases {
        let real: RealGraph = g.map_weights(|w| w as f64);
        let data = ExperimentData::new(g.into(), Some(real), truth).unwrap();
        for predictor in [Predictor::Mincut, Predictor::LabelProp] {
            let spec = ExperimentSpec {
                methods: vec![Method::PsiMax, Method::Random],
                predictor,
                label_counts: ks.clone(),
                trials: BASELINE_TRIALS,
                seed: 2024,
            };
            let rows = run_experiment(&data, &spec).unwrap();
            for &k in &ks {
                let mean = |m: &str| rows.iter().find(|r| r.method == m && r.k == k).unwrap().mean_error;
                let (ours, baseline) = (mean("psi-max"), mean("random"));
                lines.push(format!("{name}/{predictor}/k={k}: {ours:.3} vs {baseline:.3}"));
                if ours > baseline {
                    failures.push(lines.last().unwrap().clone());
                }
            }
        }
    }
    let detail = format!("{BASELINE_TRIALS} trials each; {}", lines.join("; "));
    if failures.is_empty() {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(format!("psi-max worse at {failures:?}; {detail}"))
    }
}

fn ratings_pipeline() -> Verdict {
    let Ok(path) = std::env::var("MOVIELENS_RATINGS") else {
        return Verdict::Skip("set MOVIELENS_RATINGS to the MovieLens-1M ratings.dat to run".into());
    };
    let file = match std::fs::File::open(&path) {
        Ok(f) => std::io::BufReader::new(f),
        Err(e) => return Verdict::Fail(format!("{path}: {e}")),
    };
    let ratings = match read_ratings(file) {
        Ok(r) => r,
        Err(e) => return Verdict::Fail(format!("{path}: {e}")),
    };
    let built = ratings_to_hypergraph::<i64>(&ratings, 10).unwrap();
    let (nodes, edges) = (built.hypergraph.node_count(), built.hypergraph.edges().len());
    if (nodes, edges) != (3233, 11479) {
        return Verdict::Fail(format!("{nodes} items and {edges} hyperedges"));
    }
    let oracle: Oracle = built.hypergraph.into();
    let target = Rational::new(5, 2);
    let chosen = select_target(&oracle, &target).unwrap().chosen;
    let psi = compute_psi(&oracle, &chosen).unwrap().psi;
    let detail = format!(
        "{nodes} items, {edges} hyperedges, {} selected with strength {psi}",
        chosen.len()
    );
    if psi.at_least(&target) {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn label_propagation() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(31337);
    let params = LabelPropParams::default();
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for trial in 0..60 {
        let n = rng.gen_range(2..=50);
        let mut g = RealGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.15) {
                    g.add_edge(u, v, rng.gen_range(0.05..3.0)).unwrap();
                }
            }
        }
        let targets: Vec<Option<f64>> = (0..n)
            .map(|_| rng.gen_bool(0.3).then(|| if rng.gen_bool(0.5) { 1.0 } else { 0.0 }))
            .collect();
        let out = propagate(&g, &targets, &params).unwrap();
        let recomputed = optimality_residual(&g, &targets, &out.scores, &params);
        worst = worst.max(recomputed);
        if recomputed > LABELPROP_RESIDUAL {
            failures.push(format!("trial {trial}: residual {recomputed:e}"));
        }
    }

    let mut cliques = RealGraph::new(10);
    for base in [0, 5] {
        for i in 0..5 {
            for j in i + 1..5 {
                cliques.add_edge(base + i, base + j, 1.0).unwrap();
            }
        }
    }
    let l = NodeSet::from_indices(10, [2, 3, 7]).unwrap();
    let y_l = Labeling::partial(10, [(2, true), (3, true), (7, false)]).unwrap();
    let y = label_prop_predict(&cliques, &l, &y_l, &params).unwrap();
    if y != block_truth(10, 5).flip() {
        failures.push(format!("disconnected cliques predicted {y:?}"));
    }

    let detail =
        format!("60 random graphs, worst residual {worst:.2e} (bound {LABELPROP_RESIDUAL:e}); cliques block-constant");
    if failures.is_empty() {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(format!("{detail}; {failures:?}"))
    }
}

fn main() {
    let (graphs, hypers) = instances();
    let checks: Vec<Check<'_>> = vec![
        (
            "strength matches exhaustive search",
            Box::new(|| psi_equivalence(&graphs, &hypers)),
        ),
        ("mincut error bound, exhaustive", Box::new(error_bound_exhaustive)),
        ("adversarial pair is tight", Box::new(adversarial_tightness)),
        (
            "greedy within the logarithmic factor",
            Box::new(|| greedy_factor(&graphs, &hypers)),
        ),
        (
            "F_lambda zero set, monotone, diminishing returns",
            Box::new(|| f_lambda_laws(&graphs, &hypers)),
        ),
        (
            "cubic graphs: strength >= 3 iff vertex cover",
            Box::new(cubic_vertex_covers),
        ),
        (
            "flow reductions match exhaustive search",
            Box::new(|| flow_reductions(&graphs, &hypers)),
        ),
        ("path worked numbers", Box::new(path_numbers)),
        (
            "psi-max no worse than random on synthetic graphs",
            Box::new(selection_beats_random),
        ),
        ("MovieLens pipeline counts and certificate", Box::new(ratings_pipeline)),
        ("label propagation residual and blocks", Box::new(label_propagation)),
    ];
    let ids = ["1", "2", "3", "4", "5", "6", "7", "8", "9a", "9b", "10"];
    let mut failed = 0;
    for (id, (name, check)) in ids.iter().zip(&checks) {
        let start = Instant::now();
        let verdict = check();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Verdict::Pass(d) => println!("PASS [{id}] {name}: {d} ({secs:.1} s)"),
            Verdict::Skip(d) => println!("SKIP [{id}] {name}: {d}"),
            Verdict::Fail(d) => {
                failed += 1;
                println!("FAIL [{id}] {name}: {d} ({secs:.1} s)");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance check(s) failed");
        std::process::exit(1);
    }
    println!("all acceptance checks passed");
}
