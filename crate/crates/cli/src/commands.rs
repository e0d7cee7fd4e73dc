//! The subcommands, as functions returning their output and exit code.

use std::time::Instant;

use anyhow::bail;
use covline_core::couples::{
    baseline_couples, baseline_couples_curves, sweep_couples, sweep_couples_curves, CoupleSet,
};
use covline_core::curves::CurveInstance;
use covline_core::gen::{generate, Family, GenParams};
use covline_core::geom::count_intersecting_pairs;
use covline_core::halfplane::{count_crossing_lines, count_pairs_above, lower_curves, separated_curves};
use covline_core::oracle::{oracle_a_indices, oracle_couples, MAX_SETS};
use covline_core::problem::{Algorithm, Problem};
use covline_core::reduce::{a_indices_l1, a_indices_unit};
use covline_core::{normalize, Error, Metric, Solution, Stats, SweepConfig};
use serde::Serialize;

use crate::io::{InstanceFile, SolutionFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

fn is_infeasible(e: &Error) -> bool {
    matches!(e, Error::Infeasible | Error::InfeasibleInstance { .. })
}

/// Solves `problem`; the exit code tells solved, infeasible or bad input.
pub fn solve(problem: &Problem, algorithm: Algorithm, cfg: SweepConfig) -> (Option<SolutionFile>, i32, Option<String>) {
    let t = Instant::now();
    let res = problem.solve(algorithm, cfg);
    let ms = t.elapsed().as_secs_f64() * 1e3;
    match res {
        Ok(sol) => (Some(SolutionFile::solved(&sol, ms)), EXIT_OK, None),
        Err(e) if is_infeasible(&e) => (Some(SolutionFile::infeasible(ms)), EXIT_INFEASIBLE, Some(e.to_string())),
        Err(e) => (None, EXIT_INPUT, Some(e.to_string())),
    }
}

pub fn gen(family: Family, n: usize, m: usize, seed: u64, spread: f64) -> anyhow::Result<InstanceFile> {
    if n == 0 || m == 0 {
        bail!("--n and --m must be at least 1");
    }
    if !(spread.is_finite() && spread > 0.0) {
        bail!("--spread must be positive");
    }
    let problem = generate(&GenParams { family, n, m, seed, spread })?;
    Ok(InstanceFile::from_problem(&problem))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub ok: bool,
    pub checks: Vec<CheckLine>,
    #[serde(skip)]
    pub exit: i32,
}

struct Checks(Vec<CheckLine>);

impl Checks {
    fn push(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.0.push(CheckLine { name: name.into(), ok, detail: detail.into() });
    }
}

/// Entries present in exactly one of the two sets, at most a few.
fn couple_diff(a: &CoupleSet, b: &CoupleSet) -> String {
    let ta = a.triples();
    let tb = b.triples();
    let only_a: Vec<_> = ta.iter().filter(|t| !tb.contains(t)).take(5).collect();
    let only_b: Vec<_> = tb.iter().filter(|t| !ta.contains(t)).take(5).collect();
    format!("{} vs {} couples; only first: {only_a:?}; only second: {only_b:?}", ta.len(), tb.len())
}

fn same_couples(a: &CoupleSet, b: &CoupleSet) -> bool {
    a.iter().map(|c| (c.i, c.j, c.kind, c.w)).eq(b.iter().map(|c| (c.i, c.j, c.kind, c.w)))
}

/// Compares couple sets and checks the size and counter bounds.
fn check_curves(
    checks: &mut Checks,
    ci: &CurveInstance,
    reference: Option<&CoupleSet>,
    kappa: u64,
    squares: bool,
    cfg: SweepConfig,
) {
    let (sweep, stats) = sweep_couples_curves(ci, cfg);
    let base = baseline_couples_curves(ci);
    checks.push("couples sweep = baseline", same_couples(&sweep, &base), couple_diff(&sweep, &base));
    if let Some(def) = reference {
        checks.push("couples baseline = definition", same_couples(&base, def), couple_diff(&base, def));
    }
    let (n, m) = (ci.n(), ci.m());
    let bound = 2 * (n + m) + if squares { 0 } else { kappa as usize };
    checks.push("couple count bound", sweep.len() <= bound, format!("{} <= {bound}", sweep.len()));
    checks.push(
        "order violations bound",
        stats.order_violations <= kappa,
        format!("{} <= {kappa}", stats.order_violations),
    );
    if cfg.audits {
        checks.push(
            "sweep audits",
            stats.audit_failures == 0,
            format!("{} failures in {} checks", stats.audit_failures, stats.audit_checks),
        );
    }
}

fn structural_checks(problem: &Problem, checks: &mut Checks, cfg: SweepConfig) -> covline_core::Result<()> {
    match problem {
        Problem::Segments { .. } => {}
        Problem::Disks { metric, points, disks } => {
            let inst = normalize(points.clone(), disks.clone(), *metric)?;
            match metric {
                Metric::Unit | Metric::L1 => {
                    let fast = if *metric == Metric::Unit { a_indices_unit(&inst)? } else { a_indices_l1(&inst)? };
                    let ok = fast == oracle_a_indices(&inst);
                    checks.push("a-indices sweep = scan", ok, format!("{} disks", inst.m()));
                }
                _ => {}
            }
            if matches!(metric, Metric::Unit | Metric::L2 | Metric::Linf) {
                let ci = CurveInstance::from_instance(&inst);
                let kappa = count_intersecting_pairs(&inst.disks, *metric, false);
                check_curves(checks, &ci, Some(&oracle_couples(&inst)), kappa, *metric == Metric::Linf, cfg);
                // the public entry point must agree with the curve path
                let (direct, _) = sweep_couples(&inst, SweepConfig::default());
                let base = baseline_couples(&inst);
                checks.push(
                    "instance couples sweep = baseline",
                    same_couples(&direct, &base),
                    couple_diff(&direct, &base),
                );
            }
        }
        Problem::Separated(s) => {
            let ci = separated_curves(s)?;
            check_curves(checks, &ci, None, count_pairs_above(&s.disks, s.separator_y), false, cfg);
        }
        Problem::HalfPlanes { points, planes } => {
            if planes.iter().all(|h| h.is_lower()) {
                let ci = lower_curves(points, planes)?;
                check_curves(checks, &ci, None, count_crossing_lines(planes), false, cfg);
            }
        }
    }
    Ok(())
}

/// Runs every applicable algorithm and cross-checks them.
pub fn check(problem: &Problem, expect: Option<&SolutionFile>, cfg: SweepConfig) -> CheckReport {
    let mut algorithms = vec![Algorithm::Sweep, Algorithm::Baseline];
    if problem.m() <= MAX_SETS {
        algorithms.push(Algorithm::Oracle);
    }
    let results: Vec<(Algorithm, covline_core::Result<Solution>)> = std::thread::scope(|s| {
        let handles: Vec<_> = algorithms.iter().map(|&a| (a, s.spawn(move || problem.solve(a, cfg)))).collect();
        handles.into_iter().map(|(a, h)| (a, h.join().expect("solver thread panicked"))).collect()
    });
    let mut checks = Checks(Vec::new());
    if problem.m() > MAX_SETS {
        checks.push("oracle", true, format!("skipped, m = {} > {MAX_SETS}", problem.m()));
    }

    let input_errors: Vec<String> = results
        .iter()
        .filter_map(|(a, r)| match r {
            Err(e) if !is_infeasible(e) => Some(format!("{}: {e}", a.name())),
            _ => None,
        })
        .collect();
    if !input_errors.is_empty() {
        checks.push("input", false, input_errors.join("; "));
        return CheckReport { ok: false, checks: checks.0, exit: EXIT_INPUT };
    }

    let infeasible: Vec<bool> = results.iter().map(|(_, r)| r.is_err()).collect();
    let all_infeasible = infeasible.iter().all(|&b| b);
    let agree = all_infeasible || infeasible.iter().all(|&b| !b);
    let summary: Vec<String> = results
        .iter()
        .map(|(a, r)| match r {
            Ok(s) => format!("{}={}", a.name(), s.weight),
            Err(_) => format!("{}=infeasible", a.name()),
        })
        .collect();
    checks.push("feasibility agrees", agree, summary.join(" "));
    let (cm, ids) = problem.coverage();
    let weights: Vec<f64> = results.iter().filter_map(|(_, r)| r.as_ref().ok().map(|s| s.weight)).collect();
    if agree && !all_infeasible {
        checks.push("weights equal", weights.windows(2).all(|w| w[0] == w[1]), summary.join(" "));
        for (a, r) in &results {
            let sol = r.as_ref().unwrap();
            let positions: Vec<usize> = sol.chosen.iter().filter_map(|id| ids.iter().position(|x| x == id)).collect();
            let sum = cm.weight_of(&positions);
            let ok = positions.len() == sol.chosen.len()
                && cm.is_cover(&positions)
                && (sum - sol.weight).abs() <= 1e-9 * sol.weight.abs().max(1.0);
            checks.push(&format!("{} solution covers", a.name()), ok, format!("chosen {:?}, sum {sum}", sol.chosen));
        }
        if let Err(e) = structural_checks(problem, &mut checks, cfg) {
            checks.push("structure", false, e.to_string());
        }
    }

    if let Some(exp) = expect {
        let (got_w, got_c, feasible) = match &results[0].1 {
            Ok(s) => (s.weight, s.chosen.clone(), true),
            Err(_) => (0.0, vec![], false),
        };
        let ok = exp.feasible == feasible && exp.weight == got_w && exp.chosen == got_c;
        checks.push(
            "expected solution",
            ok,
            format!("expected weight {} chosen {:?}; got weight {got_w} chosen {got_c:?}", exp.weight, exp.chosen),
        );
    }

    let ok = checks.0.iter().all(|c| c.ok);
    let exit = if !ok {
        EXIT_MISMATCH
    } else if all_infeasible {
        EXIT_INFEASIBLE
    } else {
        EXIT_OK
    };
    CheckReport { ok, checks: checks.0, exit }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub metric: String,
    pub algorithm: String,
    pub n_plus_m: usize,
    pub elapsed_ms: f64,
    pub events: u64,
    pub couples: usize,
    pub kappa: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchParams {
    pub family: Family,
    pub algorithm: Algorithm,
    pub seed: u64,
    /// Keep the x-range fixed, so every disk overlaps almost every other.
    pub dense: bool,
    pub spread: f64,
    pub repeats: usize,
}

/// Width of the x-range used by dense benchmark instances.
pub const DENSE_WIDTH: f64 = 4.0;

/// One row per total size; `n` and `m` are half of it each. Times are the
/// best of `repeats` runs and exclude generation.
pub fn bench(params: BenchParams, sizes: &[usize]) -> anyhow::Result<Vec<BenchRow>> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let (n, m) = (size / 2, size - size / 2);
        let spread = if params.dense { DENSE_WIDTH / size as f64 } else { params.spread };
        let problem = generate(&GenParams { family: params.family, n, m, seed: params.seed, spread })?;
        let mut best: Option<(f64, Stats)> = None;
        for _ in 0..params.repeats.max(1) {
            let t = Instant::now();
            let sol = problem.solve(params.algorithm, SweepConfig::default())?;
            let ms = t.elapsed().as_secs_f64() * 1e3;
            if best.is_none_or(|(b, _)| ms < b) {
                best = Some((ms, sol.stats));
            }
        }
        let (elapsed_ms, stats) = best.unwrap();
        rows.push(BenchRow {
            metric: params.family.name().into(),
            algorithm: params.algorithm.name().into(),
            n_plus_m: size,
            elapsed_ms,
            events: stats.events,
            couples: stats.couples,
            kappa: stats.kappa,
        });
    }
    Ok(rows)
}

/// Geometric mean of the time ratios between consecutive rows.
pub fn mean_doubling_ratio(rows: &[BenchRow]) -> f64 {
    let logs: Vec<f64> = rows.windows(2).map(|w| (w[1].elapsed_ms / w[0].elapsed_ms).ln()).collect();
    if logs.is_empty() {
        return 1.0;
    }
    (logs.iter().sum::<f64>() / logs.len() as f64).exp()
}
