//! Event queue shared by the sweeps, and the left/right couple sweep.
//!
//! Events at equal x run in the order: curve starts, crossings, points (by
//! index), curve ends (by index). Starts before points and ends after them
//! make boundary contact count as coverage.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};

use crate::aggregate::{Forest, Tree};
use crate::couples::{CoupleKind, CoupleSet};
use crate::curves::CurveInstance;
use crate::solution::{Stats, SweepConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Event {
    Start(usize),
    Cross(usize, usize),
    Point(usize),
    End(usize),
}

impl Event {
    fn rank(&self) -> (u8, usize, usize) {
        match *self {
            Event::Start(k) => (0, k, 0),
            Event::Cross(a, b) => (1, a, b),
            Event::Point(i) => (2, i, 0),
            Event::End(k) => (3, k, 0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Timed(f64, Event);

impl Eq for Timed {}

impl Ord for Timed {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then_with(|| self.1.rank().cmp(&other.1.rank()))
    }
}

impl PartialOrd for Timed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Static events in sorted order merged with crossings discovered on the
/// way. Each unordered curve pair is tested for a crossing at most once.
pub struct EventQueue {
    fixed: Vec<Timed>,
    next: usize,
    crossings: BinaryHeap<Reverse<Timed>>,
    tested: HashSet<(usize, usize)>,
    pub now: f64,
    pub processed: u64,
}

impl EventQueue {
    /// All starts, points and ends of `ci`.
    pub fn new(ci: &CurveInstance) -> Self {
        let mut fixed = Vec::with_capacity(ci.n() + 2 * ci.m());
        for k in 0..ci.m() {
            fixed.push(Timed(ci.start[k], Event::Start(k)));
            fixed.push(Timed(ci.end[k], Event::End(k)));
        }
        for (i, p) in ci.points.iter().enumerate() {
            fixed.push(Timed(p.x, Event::Point(i + 1)));
        }
        fixed.sort_unstable();
        EventQueue {
            fixed,
            next: 0,
            crossings: BinaryHeap::new(),
            tested: HashSet::new(),
            now: f64::NEG_INFINITY,
            processed: 0,
        }
    }

    pub fn pop(&mut self) -> Option<(f64, Event)> {
        let take_fixed = match (self.fixed.get(self.next), self.crossings.peek()) {
            (Some(f), Some(Reverse(c))) => f < c,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => return None,
        };
        let Timed(x, e) = if take_fixed {
            self.next += 1;
            self.fixed[self.next - 1]
        } else {
            self.crossings.pop().unwrap().0
        };
        self.now = x;
        self.processed += 1;
        Some((x, e))
    }

    /// Schedules the crossing of two curves that just became neighbours,
    /// if it lies ahead of the sweep line.
    pub fn watch(&mut self, ci: &CurveInstance, a: usize, b: usize) {
        let key = (a.min(b), a.max(b));
        if !self.tested.insert(key) {
            return;
        }
        if let Some(x) = ci.crossing(a, b) {
            if x > self.now {
                self.crossings.push(Reverse(Timed(x, Event::Cross(key.0, key.1))));
            }
        }
    }

    /// Watches `item` against both its neighbours in `tree`'s forest.
    pub fn watch_neighbours(&mut self, ci: &CurveInstance, forest: &Forest, item: usize) {
        if let Some(p) = forest.pred(item) {
            self.watch(ci, p, item);
        }
        if let Some(s) = forest.succ(item) {
            self.watch(ci, item, s);
        }
    }
}

/// For each curve, the first point of its window that it does not cover, or
/// `p_r` if it covers the whole window. Curves that have not yet missed a
/// point wait in a status tree ordered by height; at a point event the
/// lowest ones are the only candidates to miss it.
fn first_uncovered(ci: &CurveInstance, cfg: SweepConfig, stats: &mut Stats) -> Vec<usize> {
    let mut out = ci.p_r.clone();
    let mut forest = Forest::with_capacity(ci.m());
    let mut status = Tree::EMPTY;
    let mut queue = EventQueue::new(ci);
    while let Some((x, ev)) = queue.pop() {
        match ev {
            Event::Start(k) => {
                status = forest.insert(status, k, ci.curves[k].w, |e| ci.cmp_at(k, e, x) == Ordering::Less);
                queue.watch_neighbours(ci, &forest, k);
            }
            Event::Cross(a, b) => {
                if forest.contains(a) && forest.contains(b) {
                    if cfg.audits {
                        stats.audit_checks += 1;
                    }
                    if forest.swap_adjacent(a, b).is_err() {
                        stats.audit_failures += 1;
                        continue;
                    }
                    // the lower of the two after the swap
                    let (lo, hi) = if forest.succ(b) == Some(a) { (b, a) } else { (a, b) };
                    if let Some(p) = forest.pred(lo) {
                        queue.watch(ci, p, lo);
                    }
                    if let Some(s) = forest.succ(hi) {
                        queue.watch(ci, hi, s);
                    }
                    status = forest.tree_of(lo);
                }
            }
            Event::Point(i) => {
                while let Some(k) = forest.first(status) {
                    if ci.covers(k, i) {
                        break;
                    }
                    out[k] = i;
                    status = forest.remove(k);
                }
            }
            Event::End(k) => {
                if forest.contains(k) {
                    let (p, s) = (forest.pred(k), forest.succ(k));
                    status = forest.remove(k);
                    if let (Some(p), Some(s)) = (p, s) {
                        queue.watch(ci, p, s);
                    }
                }
            }
        }
        if cfg.audits {
            audit_status(ci, &forest, status, x, stats);
        }
    }
    stats.events += queue.processed;
    out
}

/// The status tree must be a valid treap listing its curves bottom to top.
fn audit_status(ci: &CurveInstance, forest: &Forest, status: Tree, x: f64, stats: &mut Stats) {
    stats.audit_checks += 1;
    let items = forest.items(status);
    let sorted = items.windows(2).all(|w| ci.cmp_at(w[0], w[1], x) != Ordering::Greater);
    if !forest.check_invariants(status) || !sorted {
        stats.audit_failures += 1;
    }
}

/// Left couples `(p_l, first uncovered)` and right couples
/// `(last uncovered, p_r)` of every curve.
pub fn left_right_couples(ci: &CurveInstance, cfg: SweepConfig) -> (CoupleSet, Stats) {
    let mut stats = Stats::default();
    let mut set = CoupleSet::new();
    let first = first_uncovered(ci, cfg, &mut stats);
    for (k, &j) in first.iter().enumerate() {
        set.offer(ci.p_l[k], j, CoupleKind::LEFT, ci.curves[k].w, k);
    }
    let mirror = ci.mirrored();
    let last = first_uncovered(&mirror, cfg, &mut stats);
    let n = ci.n();
    for (k, &j) in last.iter().enumerate() {
        set.offer(n + 1 - j, ci.p_r[k], CoupleKind::RIGHT, ci.curves[k].w, k);
    }
    (set, stats)
}
