//! Sweep-built couple sets against the quadratic builder and the
//! definitional scan, plus size bounds, a-index tables and audits.

use covline_core::couples::{
    baseline_couples, baseline_couples_curves, sweep_couples, sweep_couples_curves, CoupleSet,
};
use covline_core::curves::{Curve, CurveInstance, Shape};
use covline_core::gen::{generate, Family, GenParams};
use covline_core::geom::count_intersecting_pairs;
use covline_core::halfplane::count_pairs_above;
use covline_core::oracle::{oracle_a_indices, oracle_couples};
use covline_core::problem::Problem;
use covline_core::reduce::{a_indices_l1, a_indices_unit};
use covline_core::{normalize, Instance, Metric, PointP, SweepConfig};

fn instance(family: Family, n: usize, m: usize, seed: u64) -> Instance {
    match generate(&GenParams::new(family, n, m, seed)).unwrap() {
        Problem::Disks { metric, points, disks } => normalize(points, disks, metric).unwrap(),
        _ => unreachable!(),
    }
}

fn full(set: &CoupleSet) -> Vec<(usize, usize, String, f64)> {
    set.iter().map(|c| (c.i, c.j, c.kind.to_string(), c.w)).collect()
}

fn check_disks(family: Family, seeds: u64, cfg: SweepConfig, max: usize) {
    for seed in 0..seeds {
        let n = 1 + (seed as usize * 7) % max;
        let m = 1 + (seed as usize * 5) % max;
        let inst = instance(family, n, m, seed);
        let (sweep, stats) = sweep_couples(&inst, cfg);
        let base = baseline_couples(&inst);
        let def = oracle_couples(&inst);
        let tag = format!("{} seed {seed} n {n} m {m}", family.name());
        assert_eq!(full(&sweep), full(&base), "{tag}");
        assert_eq!(full(&base), full(&def), "{tag}");
        let kappa = count_intersecting_pairs(&inst.disks, inst.metric, false);
        let bound = 2 * (n + m) + if inst.metric == Metric::Linf { 0 } else { kappa as usize };
        assert!(sweep.len() <= bound, "{tag}: {} couples", sweep.len());
        assert!(stats.order_violations <= kappa, "{tag}");
        assert_eq!(stats.audit_failures, 0, "{tag}");
        if cfg.audits {
            assert!(stats.audit_checks > 0);
        }
    }
}

#[test]
fn linf_couples_agree() {
    check_disks(Family::Linf, 300, SweepConfig::default(), 64);
}

#[test]
fn l2_couples_agree() {
    check_disks(Family::L2, 300, SweepConfig::default(), 64);
}

#[test]
fn unit_couples_agree() {
    check_disks(Family::Unit, 100, SweepConfig::default(), 64);
}

#[test]
fn audits_pass_on_small_instances() {
    check_disks(Family::Linf, 60, SweepConfig::with_audits(), 32);
    check_disks(Family::L2, 60, SweepConfig::with_audits(), 32);
}

fn curve_instance(problem: &Problem) -> (CurveInstance, u64) {
    match problem {
        Problem::Separated(s) => {
            let mut points = s.points.clone();
            points.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.id.cmp(&b.id)));
            let curves = s
                .disks
                .iter()
                .map(|d| Curve { shape: Shape::Circle { cx: d.cx, cy: d.cy, r: d.r }, w: d.w, id: d.id })
                .filter(|c| c.shape.extent().is_some())
                .collect();
            (CurveInstance::new(points, curves), count_pairs_above(&s.disks, 0.0))
        }
        Problem::HalfPlanes { points, planes } => {
            let mut points: Vec<PointP> = points.clone();
            points.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.id.cmp(&b.id)));
            let curves = planes
                .iter()
                .map(|h| Curve { shape: Shape::Line { a: h.a, b: h.b, c: h.c }, w: h.w, id: h.id })
                .collect();
            let m = planes.len() as u64;
            (CurveInstance::new(points, curves), m * (m - 1) / 2)
        }
        _ => unreachable!(),
    }
}

#[test]
fn curve_families_agree() {
    for family in [Family::Separable, Family::LowerHalfPlanes] {
        for seed in 0..150 {
            let (n, m) = (1 + seed as usize % 40, 1 + seed as usize % 23);
            let problem = generate(&GenParams::new(family, n, m, seed)).unwrap();
            let (ci, kappa) = curve_instance(&problem);
            let cfg = SweepConfig { audits: seed % 5 == 0 };
            let (sweep, stats) = sweep_couples_curves(&ci, cfg);
            let base = baseline_couples_curves(&ci);
            assert_eq!(full(&sweep), full(&base), "{} seed {seed}", family.name());
            assert!(sweep.len() <= 2 * (n + m) + kappa as usize);
            assert!(stats.order_violations <= kappa);
            assert_eq!(stats.audit_failures, 0, "{} seed {seed}", family.name());
        }
    }
}

#[test]
fn a_index_tables_match_scan() {
    for seed in 0..300 {
        let (n, m) = (1 + seed as usize % 50, 1 + seed as usize % 31);
        let unit = instance(Family::Unit, n, m, seed);
        assert_eq!(a_indices_unit(&unit).unwrap(), oracle_a_indices(&unit), "unit seed {seed}");
        let l1 = instance(Family::L1, n, m, seed);
        assert_eq!(a_indices_l1(&l1).unwrap(), oracle_a_indices(&l1), "l1 seed {seed}");
    }
}
