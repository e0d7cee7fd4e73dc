//! Every solver against exhaustive search on small generated instances.

use covline_core::gen::{generate, Family, GenParams};
use covline_core::halfplane::{solve_lower_only, HalfPlane};
use covline_core::oracle::brute_force_cover;
use covline_core::problem::{Algorithm, Problem};
use covline_core::SweepConfig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sizes(seed: u64, max_n: usize, max_m: usize) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    (rng.gen_range(1..=max_n), rng.gen_range(1..=max_m))
}

fn agree(family: Family, seeds: u64, max_n: usize, max_m: usize) {
    for seed in 0..seeds {
        let (n, m) = sizes(seed, max_n, max_m);
        let problem = generate(&GenParams::new(family, n, m, seed)).unwrap();
        let (cm, ids) = problem.coverage();
        let (best, _) = brute_force_cover(&cm).unwrap();
        for alg in [Algorithm::Sweep, Algorithm::Baseline, Algorithm::Oracle] {
            let sol = problem.solve(alg, SweepConfig::default()).unwrap();
            assert_eq!(sol.weight, best, "{} {} seed {seed}", family.name(), alg.name());
            let positions: Vec<usize> = sol.chosen.iter().map(|id| ids.iter().position(|x| x == id).unwrap()).collect();
            assert!(cm.is_cover(&positions), "{} {} seed {seed}: not a cover", family.name(), alg.name());
            assert_eq!(cm.weight_of(&positions), best);
        }
    }
}

#[test]
fn one_d() {
    agree(Family::OneD, 150, 20, 14);
}

#[test]
fn unit() {
    agree(Family::Unit, 150, 20, 14);
}

#[test]
fn l1() {
    agree(Family::L1, 150, 20, 14);
}

#[test]
fn linf() {
    agree(Family::Linf, 150, 20, 14);
}

#[test]
fn l2() {
    agree(Family::L2, 150, 20, 14);
}

#[test]
fn separable() {
    agree(Family::Separable, 150, 20, 14);
}

#[test]
fn lower_half_planes() {
    agree(Family::LowerHalfPlanes, 150, 20, 14);
    // the dedicated entry point, too
    for seed in 0..30 {
        let Problem::HalfPlanes { points, planes } =
            generate(&GenParams::new(Family::LowerHalfPlanes, 12, 8, seed)).unwrap()
        else {
            unreachable!()
        };
        let (best, _) =
            brute_force_cover(&Problem::HalfPlanes { points: points.clone(), planes: planes.clone() }.coverage().0)
                .unwrap();
        assert_eq!(solve_lower_only(&points, &planes).unwrap().weight, best);
    }
}

#[test]
fn general_half_planes() {
    agree(Family::HalfPlanes, 40, 8, 8);
}

#[test]
fn vertical_half_planes() {
    for seed in 0..20 {
        let Problem::HalfPlanes { points, mut planes } =
            generate(&GenParams::new(Family::HalfPlanes, 7, 6, seed)).unwrap()
        else {
            unreachable!()
        };
        // turn two half-planes vertical, keeping their weights
        let xs: Vec<f64> = points.iter().map(|p| p.x).collect();
        let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mid = 0.5 * (lo + hi) + 0.01234;
        planes[0] = HalfPlane::new(1.0, 0.0, mid, planes[0].w, planes[0].id);
        planes[1] = HalfPlane::new(-1.0, 0.0, -mid + 0.5, planes[1].w, planes[1].id);
        let problem = Problem::HalfPlanes { points, planes };
        let Ok((best, _)) = brute_force_cover(&problem.coverage().0) else { continue };
        let sol = problem.solve(Algorithm::Sweep, SweepConfig::default()).unwrap();
        assert_eq!(sol.weight, best, "seed {seed}");
    }
}
