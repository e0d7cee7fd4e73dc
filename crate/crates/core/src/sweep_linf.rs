//! Bounding couples for square (L∞) disks.
//!
//! Squares never cross, so their top edges keep one vertical order for the
//! whole sweep. Middle couples come from a sweep that keeps, for each
//! recently seen point, the set of alive squares lying under it that have
//! covered every point since. A new point above some of those squares closes
//! a couple with each such point, with the cheapest square of the set as its
//! weight.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::aggregate::{Forest, Tree};
use crate::couples::{CoupleKind, CoupleSet};
use crate::curves::CurveInstance;
use crate::geom::{Instance, Metric};
use crate::solution::{Stats, SweepConfig};
use crate::sweep::{left_right_couples, Event, EventQueue};

/// Orders `f64` keys totally.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Height(f64);

impl Eq for Height {}

impl Ord for Height {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl PartialOrd for Height {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Set 0 is the pool of squares not yet under any active point; set `i`
/// belongs to point `i` while it is active.
struct State<'a> {
    ci: &'a CurveInstance,
    forest: Forest,
    sets: Vec<Tree>,
    owner: Vec<usize>,
    /// Active points keyed by `(y, index)`; x grows as y falls.
    active: BTreeSet<(Height, usize)>,
    out: CoupleSet,
    stats: Stats,
    alive: Vec<bool>,
    done: usize,
}

impl<'a> State<'a> {
    fn new(ci: &'a CurveInstance) -> Self {
        State {
            ci,
            forest: Forest::with_capacity(ci.m()),
            sets: vec![Tree::EMPTY; ci.n() + 1],
            owner: vec![0; ci.m()],
            active: BTreeSet::new(),
            out: CoupleSet::new(),
            stats: Stats::default(),
            alive: vec![false; ci.m()],
            done: 0,
        }
    }

    fn store(&mut self, set: usize, tree: Tree) {
        self.sets[set] = tree;
        if let Some(r) = self.forest.root_item(tree) {
            self.owner[r] = set;
        }
    }

    fn insert(&mut self, tree: Tree, k: usize) -> Tree {
        let ci = self.ci;
        self.forest.insert(tree, k, ci.curves[k].w, |e| ci.cmp_at(k, e, 0.0) == Ordering::Less)
    }

    fn key(&self, i: usize) -> (Height, usize) {
        (Height(self.ci.point(i).y), i)
    }

    fn report(&mut self, i: usize, h: usize, agg: (f64, usize)) {
        self.out.offer(i, h, CoupleKind::MIDDLE, agg.0, agg.1);
        self.stats.middle_reports += 1;
    }

    fn start(&mut self, k: usize) {
        self.alive[k] = true;
        let pool = self.insert(self.sets[0], k);
        self.store(0, pool);
    }

    fn end(&mut self, k: usize) {
        self.alive[k] = false;
        let root = self.forest.tree_of(k);
        let set = self.owner[self.forest.root_item(root).unwrap()];
        let rest = self.forest.remove(k);
        self.store(set, rest);
        if set > 0 && rest.is_empty() {
            self.active.remove(&self.key(set));
            self.stats.pl_removals += 1;
        }
    }

    fn point(&mut self, h: usize) {
        let ci = self.ci;
        let p = *ci.point(h);
        let mut built = Tree::EMPTY;

        // Active points not above p: every square under them is under p too.
        // Lowest first, so each set lands on top of the previous ones.
        let whole: Vec<(Height, usize)> = self.active.range(..=(Height(p.y), usize::MAX)).copied().collect();
        for key in whole {
            let i = key.1;
            let agg = self.forest.aggregate(self.sets[i]).expect("active point with empty set");
            self.report(i, h, agg);
            built = self.forest.merge(built, self.sets[i]);
            self.sets[i] = Tree::EMPTY;
            self.active.remove(&key);
            self.stats.pl_removals += 1;
        }

        // The next active point up keeps the squares p is not under.
        if let Some(&key) = self.active.range((Height(p.y), usize::MAX)..).next() {
            let i = key.1;
            let (under, rest) = self.forest.split_at(self.sets[i], |k| !ci.curves[k].shape.covers_point(&p));
            if let Some(agg) = self.forest.aggregate(under) {
                self.report(i, h, agg);
                built = self.forest.merge(built, under);
            }
            self.store(i, rest);
            if rest.is_empty() {
                self.active.remove(&key);
                self.stats.pl_removals += 1;
            }
        }

        // Squares from the pool that p lies above, lowest first.
        while let Some(k) = self.forest.first(self.sets[0]) {
            if ci.curves[k].shape.covers_point(&p) {
                break;
            }
            let pool = self.forest.remove(k);
            self.store(0, pool);
            built = self.insert(built, k);
            self.stats.drained += 1;
        }

        if !built.is_empty() {
            self.active.insert(self.key(h));
            self.store(h, built);
        }
        self.done = h;
    }

    /// Rechecks every structural invariant from scratch.
    fn audit(&mut self) {
        self.stats.audit_checks += 1;
        if !self.audit_ok() {
            self.stats.audit_failures += 1;
        }
    }

    fn audit_ok(&self) -> bool {
        let ci = self.ci;
        let mut seen = vec![false; ci.m()];
        for (set, &tree) in self.sets.iter().enumerate() {
            if tree.is_empty() {
                if set > 0 && self.active.contains(&self.key(set)) {
                    return false;
                }
                continue;
            }
            if !self.forest.check_invariants(tree) {
                return false;
            }
            if self.owner[self.forest.root_item(tree).unwrap()] != set {
                return false;
            }
            if set > 0 && !self.active.contains(&self.key(set)) {
                return false;
            }
            let items = self.forest.items(tree);
            if items.windows(2).any(|w| ci.cmp_at(w[0], w[1], 0.0) != Ordering::Less) {
                return false;
            }
            for &k in &items {
                if seen[k] || !self.alive[k] {
                    return false;
                }
                seen[k] = true;
                if set > 0 && ci.covers(k, set) {
                    return false;
                }
                // every point seen since (the owner, or since the square
                // started for the pool) lies under the square
                let from = if set > 0 { set + 1 } else { ci.p_l[k] + 1 };
                if (from..=self.done).any(|q| !ci.covers(k, q)) {
                    return false;
                }
            }
        }
        if (0..ci.m()).any(|k| self.alive[k] != seen[k]) {
            return false;
        }
        // active points run north-west to south-east
        let xs: Vec<usize> = self.active.iter().map(|k| k.1).collect();
        xs.windows(2).all(|w| w[0] > w[1])
    }
}

/// Middle couples of an all-square curve instance.
pub fn middle_couples_curves(ci: &CurveInstance, cfg: SweepConfig) -> (CoupleSet, Stats) {
    let mut st = State::new(ci);
    let mut queue = EventQueue::new(ci);
    while let Some((_, ev)) = queue.pop() {
        match ev {
            Event::Start(k) => st.start(k),
            Event::End(k) => st.end(k),
            Event::Point(h) => st.point(h),
            Event::Cross(..) => unreachable!("squares never cross"),
        }
        if cfg.audits {
            st.audit();
        }
    }
    st.stats.events += queue.processed;
    (st.out, st.stats)
}

fn expect_linf(inst: &Instance) {
    assert_eq!(inst.metric, Metric::Linf, "L∞ sweep on a {} instance", inst.metric);
}

/// Left and right couples of an L∞ instance.
pub fn left_right_couples_linf(inst: &Instance) -> CoupleSet {
    expect_linf(inst);
    left_right_couples(&CurveInstance::from_instance(inst), SweepConfig::default()).0
}

/// Middle couples of an L∞ instance.
pub fn middle_couples_linf(inst: &Instance) -> CoupleSet {
    expect_linf(inst);
    middle_couples_curves(&CurveInstance::from_instance(inst), SweepConfig::default()).0
}
