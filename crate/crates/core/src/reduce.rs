//! Unit-disk and L1 instances reduce directly to 1D: a disk only ever needs to
//! cover the run of points between the nearest uncovered point left of its
//! center (`a_l`) and the nearest uncovered point right of it (`a_r`).
//!
//! A point exactly above a center counts as right of it.

use crate::aggregate::{Forest, Tree};
use crate::error::{Error, Result};
use crate::geom::{covers, Disk, Instance, Metric, PointP};
use crate::solution::{Solution, Stats};
use crate::solve1d::{solve_1d, WeightedSegment};

/// Per disk (sorted position): `a_l` in `0..=n`, `a_r` in `1..=n+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AIndexTable {
    pub a_l: Vec<usize>,
    pub a_r: Vec<usize>,
}

impl AIndexTable {
    pub fn is_useful(&self, k: usize) -> bool {
        self.a_l[k] + 1 < self.a_r[k]
    }
}

fn expect_metric(inst: &Instance, metric: Metric) -> Result<()> {
    if inst.metric == metric {
        Ok(())
    } else {
        Err(Error::MetricMismatch { expected: metric.to_string(), found: inst.metric.to_string() })
    }
}

/// Mirror image about the y-axis with reversed index order, so that
/// position `k` here is position `len - 1 - k` in the original.
fn mirrored(points: &[PointP], disks: &[Disk]) -> (Vec<PointP>, Vec<Disk>) {
    let p = points.iter().rev().map(|p| PointP { x: -p.x, ..*p }).collect();
    let d = disks.iter().rev().map(|d| Disk { cx: -d.cx, ..*d }).collect();
    (p, d)
}

/// Where pending disks wait for their first uncovered point.
trait Pending {
    fn push(&mut self, k: usize, d: &Disk);
    /// Next disk to test against the current point.
    fn front(&self) -> Option<usize>;
    fn pop_front(&mut self);
}

/// Equal radii: among centers left of a point, the leftmost is the first
/// to lose it, so arrival order is the right order.
struct Fifo(std::collections::VecDeque<usize>);

impl Pending for Fifo {
    fn push(&mut self, k: usize, _: &Disk) {
        self.0.push_back(k);
    }
    fn front(&self) -> Option<usize> {
        self.0.front().copied()
    }
    fn pop_front(&mut self) {
        self.0.pop_front();
    }
}

/// Diamonds: right of its center, a diamond covers `(x, y)` iff
/// `x + y <= cx + r`, so the smallest rightmost vertex loses points first.
struct ByRightVertex {
    forest: Forest,
    tree: Tree,
    key: Vec<f64>,
}

impl Pending for ByRightVertex {
    fn push(&mut self, k: usize, d: &Disk) {
        let kk = d.cx + d.r;
        self.key[k] = kk;
        let key = &self.key;
        self.tree = self
            .forest
            .insert(self.tree, k, 0.0, |e| key[e].total_cmp(&kk).then(e.cmp(&k)) == std::cmp::Ordering::Greater);
    }
    fn front(&self) -> Option<usize> {
        self.forest.first(self.tree)
    }
    fn pop_front(&mut self) {
        let k = self.forest.first(self.tree).unwrap();
        self.tree = self.forest.remove(k);
    }
}

/// `a_r` for every disk: the first point (1-based) at or right of the center
/// (strictly right if `!inclusive`) that the disk misses, else `n + 1`.
fn a_right<Q: Pending>(
    points: &[PointP],
    disks: &[Disk],
    metric: Metric,
    inclusive: bool,
    mut queue: Q,
    events: &mut u64,
) -> Vec<usize> {
    let n = points.len();
    let mut out = vec![n + 1; disks.len()];
    let mut next_disk = 0;
    for (pos, p) in points.iter().enumerate() {
        while next_disk < disks.len() && (disks[next_disk].cx < p.x || (inclusive && disks[next_disk].cx == p.x)) {
            queue.push(next_disk, &disks[next_disk]);
            next_disk += 1;
            *events += 1;
        }
        *events += 1;
        while let Some(k) = queue.front() {
            if covers(&disks[k], p, metric) {
                break;
            }
            out[k] = pos + 1;
            queue.pop_front();
        }
    }
    *events += (disks.len() - next_disk) as u64;
    out
}

fn a_indices_with<Q: Pending>(inst: &Instance, make: impl Fn() -> Q, events: &mut u64) -> AIndexTable {
    let (n, m) = (inst.n(), inst.m());
    let a_r = a_right(&inst.points, &inst.disks, inst.metric, true, make(), events);
    let (mp, md) = mirrored(&inst.points, &inst.disks);
    let mirrored_r = a_right(&mp, &md, inst.metric, false, make(), events);
    let a_l = (0..m).map(|k| n + 1 - mirrored_r[m - 1 - k]).collect();
    AIndexTable { a_l, a_r }
}

pub fn a_indices_unit(inst: &Instance) -> Result<AIndexTable> {
    expect_metric(inst, Metric::Unit)?;
    Ok(a_indices_with(inst, || Fifo(Default::default()), &mut 0))
}

pub fn a_indices_l1(inst: &Instance) -> Result<AIndexTable> {
    expect_metric(inst, Metric::L1)?;
    let m = inst.m();
    let make = || ByRightVertex { forest: Forest::with_capacity(m), tree: Tree::EMPTY, key: vec![0.0; m] };
    Ok(a_indices_with(inst, make, &mut 0))
}

/// Points become their ranks `1..=n`; each useful disk becomes the rank
/// interval `[a_l + 1, a_r - 1]`. Ranks order exactly like the sorted
/// points, ties included.
pub fn build_1d_from_a(inst: &Instance, table: &AIndexTable) -> (Vec<f64>, Vec<WeightedSegment>) {
    let points = (1..=inst.n()).map(|i| i as f64).collect();
    let segments = (0..inst.m())
        .filter(|&k| table.is_useful(k))
        .map(|k| {
            let l = (table.a_l[k] + 1) as f64;
            let r = (table.a_r[k] - 1) as f64;
            WeightedSegment::with_origin(l, r, inst.disks[k].w, k)
        })
        .collect();
    (points, segments)
}

/// Solves through a precomputed a-index table.
pub fn solve_from_a_indices(inst: &Instance, table: &AIndexTable) -> Result<Solution> {
    solve_reduced(inst, table, 0)
}

fn solve_reduced(inst: &Instance, table: &AIndexTable, events: u64) -> Result<Solution> {
    let (points, segments) = build_1d_from_a(inst, table);
    let sol = solve_1d(&points, &segments)?;
    let positions: Vec<usize> = sol.chosen.iter().map(|&j| segments[j].origin.unwrap()).collect();
    Ok(Solution {
        weight: sol.weight,
        chosen: inst.original_ids(&positions),
        stats: Stats { events: events + sol.stats.events, ..Stats::default() },
    })
}

pub fn solve_unit(inst: &Instance) -> Result<Solution> {
    expect_metric(inst, Metric::Unit)?;
    let mut events = 0;
    let table = a_indices_with(inst, || Fifo(Default::default()), &mut events);
    solve_reduced(inst, &table, events)
}

pub fn solve_l1(inst: &Instance) -> Result<Solution> {
    expect_metric(inst, Metric::L1)?;
    let m = inst.m();
    let mut events = 0;
    let make = || ByRightVertex { forest: Forest::with_capacity(m), tree: Tree::EMPTY, key: vec![0.0; m] };
    let table = a_indices_with(inst, make, &mut events);
    solve_reduced(inst, &table, events)
}
