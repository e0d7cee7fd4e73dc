use covline_core::oracle::{brute_force_cover, element_uniqueness_instance, CoverageMatrix};
use covline_core::solve1d::{solve_1d, WeightedSegment};
use covline_core::{normalize, Disk, Error, Metric, PointP};
use proptest::prelude::*;

fn segment() -> impl Strategy<Value = WeightedSegment> {
    // coarse grid so that shared endpoints and zero-length segments show up
    (0i32..20, 0i32..8, 1i32..20).prop_map(|(l, len, w)| WeightedSegment::new(l as f64, (l + len) as f64, w as f64))
}

proptest! {
    #[test]
    fn one_d_matches_brute_force(
        points in prop::collection::vec(0i32..28, 0..16),
        segments in prop::collection::vec(segment(), 1..12),
    ) {
        let points: Vec<f64> = points.into_iter().map(f64::from).collect();
        let cm = CoverageMatrix::from_segments(&points, &segments);
        match brute_force_cover(&cm) {
            Ok((best, _)) => {
                let sol = solve_1d(&points, &segments).unwrap();
                prop_assert_eq!(sol.weight, best);
                prop_assert!(cm.is_cover(&sol.chosen));
                prop_assert_eq!(cm.weight_of(&sol.chosen), best);
            }
            Err(e) => {
                prop_assert_eq!(e, Error::Infeasible);
                prop_assert!(solve_1d(&points, &segments).is_err());
            }
        }
    }

    #[test]
    fn uniqueness_reduction(xs in prop::collection::vec(0i32..40, 1..30)) {
        let xs: Vec<f64> = xs.into_iter().map(f64::from).collect();
        let (points, segments) = element_uniqueness_instance(&xs);
        let sol = solve_1d(&points, &segments).unwrap();
        let mut sorted = xs.clone();
        sorted.sort_by(f64::total_cmp);
        sorted.dedup();
        prop_assert_eq!(sol.weight == xs.len() as f64, sorted.len() == xs.len());
    }

    #[test]
    fn normalize_sorts_and_reflects(
        pts in prop::collection::vec((-10i32..10, -5i32..5), 1..20),
        metric in prop_oneof![Just(Metric::L1), Just(Metric::L2), Just(Metric::Linf)],
    ) {
        let points: Vec<PointP> = pts.iter().enumerate().map(|(i, &(x, y))| PointP::new(x as f64, y as f64, i)).collect();
        let disks = vec![Disk::new(0.0, 100.0, 1.0, 0)];
        let inst = normalize(points, disks, metric).unwrap();
        prop_assert!(inst.points.iter().all(|p| p.y >= 0.0));
        prop_assert!(inst.points.windows(2).all(|w| (w[0].x, w[0].id) < (w[1].x, w[1].id)));
        prop_assert!(inst.left_sentinel < inst.points[0].x);
        prop_assert!(inst.right_sentinel > inst.points.last().unwrap().x);
    }
}
