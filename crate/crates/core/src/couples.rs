//! Bounding couples and the general reduction to 1D.
//!
//! Walk a disk's window from `p_l` (last point left of it) to `p_r` (first
//! point right of it) and keep only the points it misses. Each pair of
//! consecutive kept points is a bounding couple; the points strictly between
//! them are a maximal run the disk covers. Over all disks these runs are the
//! only segments a 1D solver needs.

use std::collections::BTreeMap;
use std::fmt;

use crate::curves::CurveInstance;
use crate::error::{Error, Result};
use crate::geom::{count_intersecting_pairs, Disk, Instance, Metric, PointP};
use crate::solution::{Solution, Stats, SweepConfig};
use crate::solve1d::{solve_1d, WeightedSegment};
use crate::sweep::left_right_couples;
use crate::{sweep_l2, sweep_linf};

/// Which ends of a window a couple touches. A couple spanning the whole
/// window is both `LEFT` and `RIGHT`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CoupleKind(u8);

impl CoupleKind {
    pub const LEFT: CoupleKind = CoupleKind(1);
    pub const MIDDLE: CoupleKind = CoupleKind(2);
    pub const RIGHT: CoupleKind = CoupleKind(4);

    pub fn union(self, other: CoupleKind) -> CoupleKind {
        CoupleKind(self.0 | other.0)
    }

    pub fn contains(self, other: CoupleKind) -> bool {
        self.0 & other.0 == other.0
    }

    /// Kind of the couple `(i, j)` inside the window `[p_l, p_r]`.
    pub fn classify(i: usize, j: usize, p_l: usize, p_r: usize) -> CoupleKind {
        let mut k = CoupleKind::default();
        if i == p_l {
            k = k.union(CoupleKind::LEFT);
        }
        if j == p_r {
            k = k.union(CoupleKind::RIGHT);
        }
        if k == CoupleKind::default() {
            CoupleKind::MIDDLE
        } else {
            k
        }
    }
}

impl fmt::Display for CoupleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (flag, name) in [(Self::LEFT, "left"), (Self::MIDDLE, "middle"), (Self::RIGHT, "right")] {
            if self.contains(flag) {
                parts.push(name);
            }
        }
        f.write_str(&parts.join("+"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingCouple {
    pub i: usize,
    pub j: usize,
    pub kind: CoupleKind,
    pub w: f64,
    /// Position of the cheapest defining disk (lowest position on ties).
    pub origin: usize,
}

/// Couples keyed by `(i, j)`, keeping the cheapest definer.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CoupleSet {
    map: BTreeMap<(usize, usize), BoundingCouple>,
}

impl CoupleSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn offer(&mut self, i: usize, j: usize, kind: CoupleKind, w: f64, origin: usize) {
        debug_assert!(i < j, "couple ({i}, {j}) is not ordered");
        self.map
            .entry((i, j))
            .and_modify(|c| {
                c.kind = c.kind.union(kind);
                if (w, origin) < (c.w, c.origin) {
                    c.w = w;
                    c.origin = origin;
                }
            })
            .or_insert(BoundingCouple { i, j, kind, w, origin });
    }

    pub fn extend(&mut self, other: &CoupleSet) {
        for c in other.iter() {
            self.offer(c.i, c.j, c.kind, c.w, c.origin);
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&BoundingCouple> {
        self.map.get(&(i, j))
    }

    /// Couples in `(i, j)` order.
    pub fn iter(&self) -> impl Iterator<Item = &BoundingCouple> {
        self.map.values()
    }

    /// `(i, j, weight)` triples in order, the form couple sets are compared in.
    pub fn triples(&self) -> Vec<(usize, usize, f64)> {
        self.iter().map(|c| (c.i, c.j, c.w)).collect()
    }
}

/// Maximal runs `[i, j]` (1-based, inclusive) of consecutive points inside
/// `disk`, by one linear scan. `points` must be sorted.
pub fn maximal_subsequences(disk: &Disk, points: &[PointP], metric: Metric) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut run: Option<usize> = None;
    for (pos, p) in points.iter().enumerate() {
        let inside = crate::geom::covers(disk, p, metric);
        match (inside, run) {
            (true, None) => run = Some(pos + 1),
            (false, Some(start)) => {
                out.push((start, pos));
                run = None;
            }
            _ => {}
        }
    }
    if let Some(start) = run {
        out.push((start, points.len()));
    }
    out
}

/// Couples of every curve by scanning its window directly; `O(nm)`.
pub fn baseline_couples_curves(ci: &CurveInstance) -> CoupleSet {
    let mut set = CoupleSet::new();
    for k in 0..ci.m() {
        let (p_l, p_r) = (ci.p_l[k], ci.p_r[k]);
        let w = ci.curves[k].w;
        let mut prev = p_l;
        for i in p_l + 1..p_r {
            if !ci.covers(k, i) {
                set.offer(prev, i, CoupleKind::classify(prev, i, p_l, p_r), w, k);
                prev = i;
            }
        }
        set.offer(prev, p_r, CoupleKind::classify(prev, p_r, p_l, p_r), w, k);
    }
    set
}

pub fn baseline_couples(inst: &Instance) -> CoupleSet {
    baseline_couples_curves(&CurveInstance::from_instance(inst))
}

/// Each couple `(i, j)` with `j > i + 1` becomes the rank interval
/// `[i + 1, j - 1]` (point ranks are the 1D coordinates).
pub fn couples_to_segments(couples: &CoupleSet) -> Vec<WeightedSegment> {
    couples
        .iter()
        .filter(|c| c.j > c.i + 1)
        .map(|c| WeightedSegment::with_origin((c.i + 1) as f64, (c.j - 1) as f64, c.w, c.origin))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builder {
    Sweep,
    Baseline,
}

impl Builder {
    pub fn name(self) -> &'static str {
        match self {
            Builder::Sweep => "sweep",
            Builder::Baseline => "baseline",
        }
    }
}

/// Couples of a curve instance via the sweeps: left/right couples plus the
/// middle couples of the matching middle sweep.
pub fn sweep_couples_curves(ci: &CurveInstance, cfg: SweepConfig) -> (CoupleSet, Stats) {
    let (mut set, mut stats) = left_right_couples(ci, cfg);
    let squares = ci.curves.iter().all(|c| matches!(c.shape, crate::curves::Shape::Square { .. }));
    let (middle, mstats) =
        if squares { sweep_linf::middle_couples_curves(ci, cfg) } else { sweep_l2::middle_couples_curves(ci, cfg) };
    set.extend(&middle);
    stats.absorb(&mstats);
    (set, stats)
}

/// Solves a curve instance through its couples. `chosen` holds curve ids.
pub fn solve_curves(ci: &CurveInstance, builder: Builder, cfg: SweepConfig) -> Result<Solution> {
    let (couples, mut stats) = match builder {
        Builder::Sweep => sweep_couples_curves(ci, cfg),
        Builder::Baseline => (baseline_couples_curves(ci), Stats::default()),
    };
    stats.couples = couples.len();
    let segments = couples_to_segments(&couples);
    let points: Vec<f64> = (1..=ci.n()).map(|i| i as f64).collect();
    let sol = solve_1d(&points, &segments)?;
    stats.events += sol.stats.events;
    let mut origins: Vec<usize> = sol.chosen.iter().map(|&s| segments[s].origin.unwrap()).collect();
    origins.sort_unstable();
    let before = origins.len();
    origins.dedup();
    // an optimum never needs two runs of the same disk
    debug_assert_eq!(before, origins.len(), "one disk was chosen twice");
    let mut chosen: Vec<usize> = origins.iter().map(|&k| ci.curves[k].id).collect();
    chosen.sort_unstable();
    Ok(Solution { weight: sol.weight, chosen, stats })
}

/// Optimal cover for L∞ and L2 instances (unit disks are accepted as L2).
pub fn solve_general(inst: &Instance, builder: Builder) -> Result<Solution> {
    solve_general_with(inst, builder, SweepConfig::from_env())
}

pub fn solve_general_with(inst: &Instance, builder: Builder, cfg: SweepConfig) -> Result<Solution> {
    if !matches!(inst.metric, Metric::Linf | Metric::L2 | Metric::Unit) {
        return Err(Error::MetricMismatch { expected: "linf or l2".into(), found: inst.metric.to_string() });
    }
    let ci = CurveInstance::from_instance(inst);
    let mut sol = solve_curves(&ci, builder, cfg)?;
    sol.stats.kappa = count_intersecting_pairs(&inst.disks, inst.metric, false);
    Ok(sol)
}

/// Sweep-built couple set of a disk instance, with the sweep counters.
pub fn sweep_couples(inst: &Instance, cfg: SweepConfig) -> (CoupleSet, Stats) {
    sweep_couples_curves(&CurveInstance::from_instance(inst), cfg)
}
