//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::time::Instant;

use covline::commands::{bench, mean_doubling_ratio, BenchParams};
use covline_core::couples::{baseline_couples, baseline_couples_curves, sweep_couples, sweep_couples_curves};
use covline_core::gen::{generate, Family, GenParams};
use covline_core::geom::count_intersecting_pairs;
use covline_core::halfplane::{
    count_crossing_lines, count_pairs_above, lower_curves, separated_curves, solve_lower_only,
};
use covline_core::oracle::{brute_force_cover, element_uniqueness_instance, oracle_a_indices, oracle_couples};
use covline_core::problem::{Algorithm, Problem};
use covline_core::reduce::{a_indices_l1, a_indices_unit};
use covline_core::solve1d::solve_1d;
use covline_core::{normalize, Instance, Solution, SweepConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: &[String], summary: String) -> Self {
        let detail = match failures.first() {
            None => summary,
            Some(f) => format!("{summary}; {} failure(s), first: {f}", failures.len()),
        };
        Outcome { ok: failures.is_empty(), detail }
    }
}

/// Bound checks gathered from every instance the other criteria touch.
#[derive(Default)]
struct Bounds {
    instances: usize,
    failures: Vec<String>,
}

impl Bounds {
    fn check(&mut self, tag: &str, (n, m): (usize, usize), couples: usize, violations: u64, kappa: u64, squares: bool) {
        self.instances += 1;
        let bound = 2 * (n + m) + if squares { 0 } else { kappa as usize };
        if couples > bound {
            self.failures.push(format!("{tag}: {couples} couples > {bound}"));
        }
        if violations > kappa {
            self.failures.push(format!("{tag}: {violations} order violations > kappa {kappa}"));
        }
    }
}

fn sizes(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> (usize, usize) {
    (rng.gen_range(1..=max_n), rng.gen_range(1..=max_m))
}

fn disk_instance(problem: &Problem) -> Instance {
    match problem {
        Problem::Disks { metric, points, disks } => normalize(points.clone(), disks.clone(), *metric).unwrap(),
        _ => unreachable!(),
    }
}

const PER_METRIC: u64 = 1000;

fn criterion_1(bounds: &mut Bounds, a_tables: &mut Vec<String>) -> Outcome {
    let families =
        [Family::OneD, Family::Unit, Family::L1, Family::Linf, Family::L2, Family::Separable, Family::LowerHalfPlanes];
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for family in families {
        for seed in 0..PER_METRIC {
            let (n, m) = sizes(&mut rng, 20, 14);
            let tag = format!("{} seed {seed} n {n} m {m}", family.name());
            let problem = generate(&GenParams::new(family, n, m, 10_000 + seed)).unwrap();
            let (cm, ids) = problem.coverage();
            let (best, _) = brute_force_cover(&cm).unwrap();
            let sol: Solution = match &problem {
                Problem::HalfPlanes { points, planes } => solve_lower_only(points, planes).unwrap(),
                _ => problem.solve(Algorithm::Sweep, SweepConfig::default()).unwrap(),
            };
            let positions: Vec<usize> = sol.chosen.iter().map(|id| ids.iter().position(|x| x == id).unwrap()).collect();
            if sol.weight != best || !cm.is_cover(&positions) || cm.weight_of(&positions) != best {
                failures.push(format!("{tag}: got {} ({:?}), optimum {best}", sol.weight, sol.chosen));
            }
            match family {
                Family::Linf | Family::L2 => {
                    let s = sol.stats;
                    bounds.check(&tag, (n, m), s.couples, s.order_violations, s.kappa, family == Family::Linf);
                }
                Family::Unit | Family::L1 => {
                    let inst = disk_instance(&problem);
                    let fast = if family == Family::Unit { a_indices_unit(&inst) } else { a_indices_l1(&inst) };
                    if fast.unwrap() != oracle_a_indices(&inst) {
                        a_tables.push(tag);
                    }
                }
                _ => {}
            }
        }
    }
    Outcome::new(
        &failures,
        format!("{} instances over {} solvers, exact weight equality", 7 * PER_METRIC, families.len()),
    )
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let count = 300;
    for seed in 0..count {
        let (n, m) = sizes(&mut rng, 10, 10);
        let problem = generate(&GenParams::new(Family::HalfPlanes, n, m, 20_000 + seed)).unwrap();
        let (best, _) = brute_force_cover(&problem.coverage().0).unwrap();
        let sol = problem.solve(Algorithm::Sweep, SweepConfig::default()).unwrap();
        if sol.weight != best {
            failures.push(format!("seed {seed} n {n} m {m}: got {}, optimum {best}", sol.weight));
        }
    }
    Outcome::new(&failures, format!("{count} instances with n, m <= 10"))
}

fn criterion_3(bounds: &mut Bounds) -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut total = 0;
    for family in [Family::Linf, Family::L2] {
        for seed in 0..PER_METRIC {
            let (n, m) = sizes(&mut rng, 64, 64);
            let tag = format!("{} seed {seed} n {n} m {m}", family.name());
            let inst = disk_instance(&generate(&GenParams::new(family, n, m, 30_000 + seed)).unwrap());
            let (sweep, stats) = sweep_couples(&inst, SweepConfig::default());
            let base = baseline_couples(&inst);
            let def = oracle_couples(&inst);
            total += sweep.len();
            if sweep.triples() != base.triples() || base.triples() != def.triples() {
                failures.push(format!(
                    "{tag}: sweep {} / baseline {} / definition {} couples",
                    sweep.len(),
                    base.len(),
                    def.len()
                ));
            }
            let kappa = count_intersecting_pairs(&inst.disks, inst.metric, false);
            bounds.check(&tag, (n, m), sweep.len(), stats.order_violations, kappa, family == Family::Linf);
        }
    }
    Outcome::new(&failures, format!("{} instances per metric (linf, l2), {total} couples compared", PER_METRIC))
}

fn criterion_5(earlier: Vec<String>) -> Outcome {
    // tables from criterion 1, plus larger instances
    let mut failures = earlier;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..300 {
        let (n, m) = sizes(&mut rng, 120, 80);
        for family in [Family::Unit, Family::L1] {
            let inst = disk_instance(&generate(&GenParams::new(family, n, m, 50_000 + seed)).unwrap());
            let fast = if family == Family::Unit { a_indices_unit(&inst) } else { a_indices_l1(&inst) };
            if fast.unwrap() != oracle_a_indices(&inst) {
                failures.push(format!("{} seed {seed} n {n} m {m}", family.name()));
            }
        }
    }
    Outcome::new(&failures, format!("{} unit/l1 instances", 2 * PER_METRIC + 600))
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut distinct_sets = 0;
    for t in 0..100 {
        let len = rng.gen_range(1..=40);
        // a value range near `len` gives both outcomes often
        let range = rng.gen_range(len..=len * 40);
        let xs: Vec<f64> = (0..len).map(|_| rng.gen_range(0..range) as f64 * 0.5).collect();
        let mut sorted = xs.clone();
        sorted.sort_by(f64::total_cmp);
        sorted.dedup();
        let distinct = sorted.len() == xs.len();
        distinct_sets += distinct as usize;
        let (points, segments) = element_uniqueness_instance(&xs);
        let sol = solve_1d(&points, &segments).unwrap();
        if (sol.weight == xs.len() as f64) != distinct {
            failures.push(format!(
                "multiset {t}: weight {} for {} values, distinct = {distinct}",
                sol.weight,
                xs.len()
            ));
        }
    }
    Outcome::new(&failures, format!("100 multisets, {distinct_sets} with distinct values"))
}

fn criterion_7() -> Outcome {
    let sparse: Vec<usize> = (10..=17).map(|k| 1 << k).collect();
    let dense: Vec<usize> = (10..=14).map(|k| 1 << k).collect();
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    let run = |family, algorithm, dense_mode, sizes: &[usize]| {
        let params = BenchParams { family, algorithm, seed: 7, dense: dense_mode, spread: 1.0, repeats: 3 };
        mean_doubling_ratio(&bench(params, sizes).unwrap())
    };
    for family in [Family::Linf, Family::L2] {
        let ratio = run(family, Algorithm::Sweep, false, &sparse);
        parts.push(format!("{} sweep {ratio:.2}", family.name()));
        if ratio > 2.5 {
            failures.push(format!("{} sweep ratio {ratio:.3} > 2.5", family.name()));
        }
    }
    let ratio = run(Family::Linf, Algorithm::Baseline, true, &dense);
    parts.push(format!("dense linf baseline {ratio:.2}"));
    if ratio < 3.5 {
        failures.push(format!("dense baseline ratio {ratio:.3} < 3.5"));
    }
    Outcome::new(&failures, format!("mean time ratio per doubling: {}", parts.join(", ")))
}

fn criterion_8() -> Outcome {
    std::env::set_var(SweepConfig::AUDIT_ENV, "1");
    let cfg = SweepConfig::from_env();
    std::env::remove_var(SweepConfig::AUDIT_ENV);
    let mut failures = Vec::new();
    let mut checks = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    if !cfg.audits {
        failures.push("audits not enabled by the environment".into());
    }
    for seed in 0..200 {
        let (n, m) = sizes(&mut rng, 32, 32);
        for family in [Family::Linf, Family::L2, Family::Unit, Family::Separable, Family::LowerHalfPlanes] {
            let tag = format!("{} seed {seed} n {n} m {m}", family.name());
            let problem = generate(&GenParams::new(family, n, m, 80_000 + seed)).unwrap();
            let (ci, kappa) = match &problem {
                Problem::Disks { .. } => {
                    let inst = disk_instance(&problem);
                    let k = count_intersecting_pairs(&inst.disks, inst.metric, false);
                    (covline_core::curves::CurveInstance::from_instance(&inst), k)
                }
                Problem::Separated(s) => (separated_curves(s).unwrap(), count_pairs_above(&s.disks, s.separator_y)),
                Problem::HalfPlanes { points, planes } => {
                    (lower_curves(points, planes).unwrap(), count_crossing_lines(planes))
                }
                Problem::Segments { .. } => unreachable!(),
            };
            let (sweep, stats) = sweep_couples_curves(&ci, cfg);
            checks += stats.audit_checks;
            if stats.audit_failures > 0 {
                failures.push(format!("{tag}: {} audit failures", stats.audit_failures));
            }
            if stats.audit_checks == 0 {
                failures.push(format!("{tag}: no audits ran"));
            }
            if sweep.triples() != baseline_couples_curves(&ci).triples() {
                failures.push(format!("{tag}: couples differ under audits"));
            }
            if stats.order_violations > kappa {
                failures.push(format!("{tag}: order violations over kappa"));
            }
        }
    }
    Outcome::new(&failures, format!("1000 instances, {checks} audit checks"))
}

fn main() {
    let start = Instant::now();
    let mut bounds = Bounds::default();
    let mut a_tables = Vec::new();
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    results.push((1, "oracle optimality, all solvers", criterion_1(&mut bounds, &mut a_tables)));
    results.push((2, "general half-plane optimality", criterion_2()));
    results.push((3, "couple-set equivalence", criterion_3(&mut bounds)));
    let summary = format!("{} instances", bounds.instances);
    results.push((4, "combinatorial bounds", Outcome::new(&bounds.failures, summary)));
    results.push((5, "a-index tables", criterion_5(a_tables)));
    results.push((6, "element-uniqueness reduction", criterion_6()));
    results.push((7, "scaling sanity", criterion_7()));
    results.push((8, "structure audits", criterion_8()));
    results.sort_by_key(|r| r.0);
    let mut all = true;
    for (id, name, outcome) in &results {
        let verdict = if outcome.ok { "PASS" } else { "FAIL" };
        println!("criterion {id} {name}: {verdict} ({})", outcome.detail);
        all &= outcome.ok;
    }
    println!("acceptance: {} in {:.1}s", if all { "PASS" } else { "FAIL" }, start.elapsed().as_secs_f64());
    if !all {
        std::process::exit(1);
    }
}
