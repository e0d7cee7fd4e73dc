//! One type for every supported input family, with solver dispatch.

use crate::couples::{solve_general_with, Builder};
use crate::error::Result;
use crate::geom::{normalize, Disk, Metric, PointP};
use crate::halfplane::{solve_halfplane_general_with, solve_line_separable_with, HalfPlane, SeparatedInstance};
use crate::oracle::{brute_force_cover, oracle_a_indices, CoverageMatrix};
use crate::reduce::{solve_from_a_indices, solve_l1, solve_unit};
use crate::solution::{Solution, Stats, SweepConfig};
use crate::solve1d::{solve_1d, WeightedSegment};

#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    /// Points on a line and weighted closed intervals.
    Segments {
        points: Vec<f64>,
        segments: Vec<WeightedSegment>,
    },
    /// Disks centered on the x-axis. Unnormalized: any point order, any sign of y.
    Disks {
        metric: Metric,
        points: Vec<PointP>,
        disks: Vec<Disk>,
    },
    Separated(SeparatedInstance),
    HalfPlanes {
        points: Vec<PointP>,
        planes: Vec<HalfPlane>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// The near-linear solvers.
    Sweep,
    /// Quadratic couple construction (or a-index scan) feeding the same DP.
    Baseline,
    /// Exhaustive search over subsets.
    Oracle,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Sweep => "sweep",
            Algorithm::Baseline => "baseline",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl Problem {
    pub fn n(&self) -> usize {
        match self {
            Problem::Segments { points, .. } => points.len(),
            Problem::Disks { points, .. } | Problem::HalfPlanes { points, .. } => points.len(),
            Problem::Separated(s) => s.points.len(),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            Problem::Segments { segments, .. } => segments.len(),
            Problem::Disks { disks, .. } => disks.len(),
            Problem::Separated(s) => s.disks.len(),
            Problem::HalfPlanes { planes, .. } => planes.len(),
        }
    }

    /// Weight of each covering object by id.
    pub fn weights(&self) -> Vec<(usize, f64)> {
        match self {
            Problem::Segments { segments, .. } => segments.iter().enumerate().map(|(k, s)| (k, s.w)).collect(),
            Problem::Disks { disks, .. } => disks.iter().map(|d| (d.id, d.w)).collect(),
            Problem::Separated(s) => s.disks.iter().map(|d| (d.id, d.w)).collect(),
            Problem::HalfPlanes { planes, .. } => planes.iter().map(|h| (h.id, h.w)).collect(),
        }
    }

    /// Coverage table with sets in input order, plus the id of each set.
    pub fn coverage(&self) -> (CoverageMatrix, Vec<usize>) {
        match self {
            Problem::Segments { points, segments } => {
                (CoverageMatrix::from_segments(points, segments), (0..segments.len()).collect())
            }
            Problem::Disks { metric, points, disks } => {
                let w = disks.iter().map(|d| d.w).collect();
                let cm = CoverageMatrix::from_fn(points.len(), w, |k, i| {
                    crate::geom::covers(&disks[k], &points[i], *metric)
                });
                (cm, disks.iter().map(|d| d.id).collect())
            }
            Problem::Separated(s) => (CoverageMatrix::from_separated(s), s.disks.iter().map(|d| d.id).collect()),
            Problem::HalfPlanes { points, planes } => {
                (CoverageMatrix::from_halfplanes(points, planes), planes.iter().map(|h| h.id).collect())
            }
        }
    }

    pub fn solve(&self, algorithm: Algorithm, cfg: SweepConfig) -> Result<Solution> {
        let builder = match algorithm {
            Algorithm::Oracle => return self.solve_oracle(),
            Algorithm::Sweep => Builder::Sweep,
            Algorithm::Baseline => Builder::Baseline,
        };
        match self {
            Problem::Segments { points, segments } => solve_1d(points, segments),
            Problem::Disks { metric, points, disks } => {
                let inst = normalize(points.clone(), disks.clone(), *metric)?;
                match (metric, algorithm) {
                    (Metric::Unit, Algorithm::Sweep) => solve_unit(&inst),
                    (Metric::L1, Algorithm::Sweep) => solve_l1(&inst),
                    (Metric::Unit | Metric::L1, _) => solve_from_a_indices(&inst, &oracle_a_indices(&inst)),
                    _ => solve_general_with(&inst, builder, cfg),
                }
            }
            Problem::Separated(s) => solve_line_separable_with(s, builder, cfg),
            Problem::HalfPlanes { points, planes } => solve_halfplane_general_with(points, planes, builder, cfg),
        }
    }

    fn solve_oracle(&self) -> Result<Solution> {
        if let Problem::Disks { metric, points, disks } = self {
            // same input validation as the fast paths
            normalize(points.clone(), disks.clone(), *metric)?;
        }
        let (cm, ids) = self.coverage();
        let (weight, sets) = brute_force_cover(&cm)?;
        let mut chosen: Vec<usize> = sets.iter().map(|&k| ids[k]).collect();
        chosen.sort_unstable();
        Ok(Solution { weight, chosen, stats: Stats::default() })
    }
}
